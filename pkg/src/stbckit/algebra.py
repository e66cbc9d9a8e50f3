"""Crossed-product data and the linear space-time block codes it induces.

An :class:`AlgebraSpec` is a purely numerical description of a crossed
product: a finite group acting on a field basis, together with a cocycle
that twists the multiplication. Codewords come from the left regular
representation, which turns each group element into a generalized
permutation matrix and each basis element into a diagonal matrix.

Conventions used throughout:

* Group elements are indexed ``0 .. n-1`` and index 0 is the identity.
  Any fixed order works as long as it is used consistently.
* ``group_table[i, j]`` is the index of element i composed with element j.
* ``cocycle[i, j]`` is the twist value for the pair (element i, element j).
  Values must be fixed by every group action as represented; all catalog
  constructions satisfy this because the values live in the fixed field.
* ``basis_embeddings[j, i]`` is group element j applied to basis element i,
  so row 0 holds the basis itself.
* Weight matrices are flattened as ``idx = j * n + i`` (basis index i varies
  fastest) to match the column order of the full-rate criterion.
"""

from __future__ import annotations

from dataclasses import dataclass, field
import math

import numpy as np

from .matrixops import DEFAULT_TOL


def _pairs(m: np.ndarray) -> list:
    """Encode a complex matrix as nested lists of [re, im] pairs."""
    return [[[float(z.real), float(z.imag)] for z in row] for row in np.asarray(m)]


def _from_pairs(rows) -> np.ndarray:
    return np.array([[complex(re, im) for re, im in row] for row in rows], dtype=np.complex128)


@dataclass
class AlgebraSpec:
    """Numerical crossed-product data.

    Attributes
    ----------
    group_table : (n, n) int array
        Composition table; entry (i, j) is the index of element i after j.
    cocycle : (n, n) complex array
        Twist values for each ordered pair of group elements.
    basis_embeddings : (n, n) complex array
        Entry (j, i) is group element j applied to basis element i.
    """

    group_table: np.ndarray
    cocycle: np.ndarray
    basis_embeddings: np.ndarray

    def __post_init__(self):
        self.group_table = np.array(self.group_table, dtype=np.int64)
        self.cocycle = np.array(self.cocycle, dtype=np.complex128)
        self.basis_embeddings = np.array(self.basis_embeddings, dtype=np.complex128)
        n = self.group_table.shape[0]
        for name in ("group_table", "cocycle", "basis_embeddings"):
            arr = getattr(self, name)
            if arr.shape != (n, n):
                raise ValueError(f"{name} must be {n}x{n}, got {arr.shape}")
        if not np.isfinite(self.cocycle).all() or not np.isfinite(self.basis_embeddings).all():
            raise ValueError("cocycle and basis embeddings must be finite")
        # Freeze the arrays; instances are safe to share between threads.
        for name in ("group_table", "cocycle", "basis_embeddings"):
            getattr(self, name).setflags(write=False)

    @property
    def n(self) -> int:
        return self.group_table.shape[0]


@dataclass
class ValidationReport:
    """Outcome of :func:`validate`. An empty violation list means valid."""

    violations: list[str] = field(default_factory=list)
    cocycle_residual: float = 0.0
    tol: float = DEFAULT_TOL

    @property
    def ok(self) -> bool:
        return not self.violations


def validate(spec: AlgebraSpec, tol: float = DEFAULT_TOL) -> ValidationReport:
    """Check the group laws and the cocycle identity numerically.

    Group checks are exact (integer table); the cocycle identity
    ``c(i, jl) * c(j, l) == c(ij, l) * c(i, j)`` is checked to within tol,
    using the convention that cocycle values are fixed by the group actions.
    Never raises; problems are listed in the report.
    """
    violations: list[str] = []
    t = spec.group_table
    n = spec.n
    ident = np.arange(n)

    if t.min() < 0 or t.max() >= n:
        violations.append("not a group: table entries out of range")
        return ValidationReport(violations, float("inf"), tol)

    if not np.all(np.sort(t, axis=1) == ident[None, :]):
        violations.append("not a group: some row is not a permutation")
    if not np.all(np.sort(t, axis=0) == ident[:, None]):
        violations.append("not a group: some column is not a permutation")
    if not (np.array_equal(t[0], ident) and np.array_equal(t[:, 0], ident)):
        violations.append("not a group: index 0 is not a two-sided identity")
    if not np.array_equal(t[t, :], t[:, t]):
        violations.append("not a group: composition is not associative")
    if not (np.all((t == 0).any(axis=1)) and np.all((t == 0).any(axis=0))):
        violations.append("not a group: some element has no two-sided inverse")

    c = spec.cocycle
    if np.any(c == 0):
        violations.append("cocycle values must be nonzero")
    # lhs[i, j, l] = c(i, j*l) * c(j, l); rhs[i, j, l] = c(i*j, l) * c(i, j)
    lhs = c[:, t] * c[None, :, :]
    rhs = c[t] * c[:, :, None]
    residual = float(np.max(np.abs(lhs - rhs)))
    if residual > tol:
        violations.append(f"cocycle identity violated (max residual {residual:.3e})")

    return ValidationReport(violations, residual, tol)


def permutation_matrix(spec: AlgebraSpec, j: int) -> np.ndarray:
    """Generalized permutation matrix of group element j.

    Column l carries the cocycle value ``cocycle[j, l]`` in the row given by
    ``group_table[j, l]``; every other entry is zero.
    """
    n = spec.n
    if not 0 <= j < n:
        raise IndexError(f"group index {j} out of range for n={n}")
    p = np.zeros((n, n), dtype=np.complex128)
    p[spec.group_table[j], np.arange(n)] = spec.cocycle[j]
    return p


def diagonal_matrix(spec: AlgebraSpec, i: int) -> np.ndarray:
    """Diagonal matrix of basis element i under all group actions."""
    n = spec.n
    if not 0 <= i < n:
        raise IndexError(f"basis index {i} out of range for n={n}")
    return np.diag(spec.basis_embeddings[:, i])


@dataclass
class LinearSTBC:
    """A linear code: codewords are linear combinations of fixed weights.

    ``weights`` has shape (k, n, n); symbol ``idx = j * n + i`` multiplies the
    weight built from group element j and basis element i. ``alpha`` is the
    power normalization already divided out of the stored weights.
    """

    n: int
    k: int
    alpha: float
    weights: np.ndarray

    def __post_init__(self):
        self.weights = np.array(self.weights, dtype=np.complex128)
        if self.weights.shape != (self.k, self.n, self.n):
            raise ValueError(
                f"weights must have shape ({self.k}, {self.n}, {self.n}), got {self.weights.shape}"
            )
        if not np.isfinite(self.weights).all():
            raise ValueError("weights must be finite")
        if not self.alpha > 0:
            raise ValueError("alpha must be positive")
        self.weights.setflags(write=False)


def build_stbc(spec: AlgebraSpec, tol: float = DEFAULT_TOL) -> LinearSTBC:
    """Build the full-rate code (k = n^2) from validated crossed-product data.

    Weight ``idx = j * n + i`` is the product of the permutation matrix of
    group element j and the diagonal matrix of basis element i, scaled by
    1/sqrt(alpha) where alpha is the mean squared Frobenius norm of the
    unscaled weights. For unit-modulus data alpha equals n.
    """
    report = validate(spec, tol)
    if not report.ok:
        raise ValueError("invalid crossed-product data: " + "; ".join(report.violations))
    n = spec.n
    perms = [permutation_matrix(spec, j) for j in range(n)]
    diags = [diagonal_matrix(spec, i) for i in range(n)]
    mats = np.empty((n * n, n, n), dtype=np.complex128)
    for j in range(n):
        for i in range(n):
            mats[j * n + i] = perms[j] @ diags[i]
    alpha = float(np.sum(np.abs(mats) ** 2) / (n * n))
    return LinearSTBC(n=n, k=n * n, alpha=alpha, weights=mats / math.sqrt(alpha))


def assemble(code: LinearSTBC, symbols) -> np.ndarray:
    """Codeword matrix for one frame of k complex symbols."""
    s = np.asarray(symbols, dtype=np.complex128).ravel()
    if s.size != code.k:
        raise ValueError(f"expected {code.k} symbols, got {s.size}")
    return np.einsum("k,kij->ij", s, code.weights)


def algebra_to_json(spec: AlgebraSpec) -> dict:
    """JSON-ready dict with complex entries encoded as [re, im] pairs."""
    return {
        "n": spec.n,
        "group_table": spec.group_table.tolist(),
        "cocycle": _pairs(spec.cocycle),
        "basis_embeddings": _pairs(spec.basis_embeddings),
    }


def algebra_from_json(doc: dict) -> AlgebraSpec:
    spec = AlgebraSpec(
        group_table=np.array(doc["group_table"], dtype=np.int64),
        cocycle=_from_pairs(doc["cocycle"]),
        basis_embeddings=_from_pairs(doc["basis_embeddings"]),
    )
    if spec.n != int(doc["n"]):
        raise ValueError(f"inconsistent document: n={doc['n']} but tables are {spec.n}x{spec.n}")
    return spec


def stbc_to_json(code: LinearSTBC) -> dict:
    return {
        "n": code.n,
        "k": code.k,
        "alpha": code.alpha,
        "weights": [_pairs(w) for w in code.weights],
    }


def stbc_from_json(doc: dict) -> LinearSTBC:
    weights = np.array([_from_pairs(w) for w in doc["weights"]])
    return LinearSTBC(n=int(doc["n"]), k=int(doc["k"]), alpha=float(doc["alpha"]), weights=weights)
