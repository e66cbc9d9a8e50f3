"""Numerical checks for MMSE optimality and full diversity.

A full-rate linear code with unit-variance symbols attains the minimum MMSE
per symbol exactly when every weight matrix is scaled-unitary with scale n/k
and distinct weights are trace-orthogonal. For full rate (k = n^2) the two
trace conditions combine into a single Gram identity on the matrix whose
columns are the vectorized weights. Full diversity is a separate property,
certified here by brute force over constellation difference vectors.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import AlgebraSpec, LinearSTBC
from .matrixops import DEFAULT_TOL

# Hard cap on exhaustive difference enumeration.
ENUMERATION_BUDGET = 10_000_000
_CHUNK = 65536


@dataclass
class OptimalityReport:
    """Residuals and verdicts from the optimality checks.

    ``phi_residual`` is None when the code is not full rate, and the two
    construction-level residuals are None when no crossed-product data was
    supplied. Verdicts are derived as residual <= tol, skipping absent checks.
    """

    tol: float
    scale: float
    unitary_residuals: np.ndarray
    trace_orthogonality_residual: float
    phi_residual: float | None = None
    thm1_modulus_residual: float | None = None
    thm1_basis_orthogonality_residual: float | None = None

    @property
    def verdicts(self) -> dict[str, bool]:
        out = {
            "scaled_unitary": bool(np.max(self.unitary_residuals) <= self.tol),
            "trace_orthogonality": self.trace_orthogonality_residual <= self.tol,
        }
        if self.phi_residual is not None:
            out["gram_identity"] = self.phi_residual <= self.tol
        if self.thm1_modulus_residual is not None:
            out["unit_modulus"] = self.thm1_modulus_residual <= self.tol
        if self.thm1_basis_orthogonality_residual is not None:
            out["basis_orthogonality"] = self.thm1_basis_orthogonality_residual <= self.tol
        return out

    @property
    def ok(self) -> bool:
        return all(self.verdicts.values())

    def to_json(self) -> dict:
        return {
            "tol": self.tol,
            "scale": self.scale,
            "unitary_residuals": [float(r) for r in self.unitary_residuals],
            "trace_orthogonality_residual": float(self.trace_orthogonality_residual),
            "phi_residual": None if self.phi_residual is None else float(self.phi_residual),
            "thm1_modulus_residual": (
                None if self.thm1_modulus_residual is None else float(self.thm1_modulus_residual)
            ),
            "thm1_basis_orthogonality_residual": (
                None
                if self.thm1_basis_orthogonality_residual is None
                else float(self.thm1_basis_orthogonality_residual)
            ),
            "verdicts": self.verdicts,
            "ok": self.ok,
        }


@dataclass
class DiversityReport:
    """Minimum determinant modulus over nonzero symbol-difference vectors."""

    min_det_modulus: float
    argmin_difference: np.ndarray
    pairs_examined: int

    @property
    def fully_diverse(self) -> bool:
        return self.min_det_modulus > 0.0

    def to_json(self) -> dict:
        return {
            "min_det_modulus": float(self.min_det_modulus),
            "argmin_difference": [[float(z.real), float(z.imag)] for z in self.argmin_difference],
            "pairs_examined": int(self.pairs_examined),
            "fully_diverse": self.fully_diverse,
        }


def check_definition1(code: LinearSTBC, tol: float = DEFAULT_TOL) -> OptimalityReport:
    """Per-weight scaled-unitarity (scale n/k) and pairwise trace orthogonality."""
    w = code.weights
    scale = code.n / code.k
    eye = np.eye(code.n)
    prods = w @ np.conj(np.transpose(w, (0, 2, 1)))
    unitary_residuals = np.linalg.norm(prods - scale * eye, axis=(1, 2))
    gram = np.einsum("aij,bij->ab", w.conj(), w)
    off = gram - np.diag(np.diag(gram))
    trace_residual = float(np.max(np.abs(off))) if code.k > 1 else 0.0
    return OptimalityReport(
        tol=tol,
        scale=scale,
        unitary_residuals=unitary_residuals,
        trace_orthogonality_residual=trace_residual,
    )


def check_phi(code: LinearSTBC) -> float:
    """Gram identity for full-rate codes.

    Stacks the vectorized weights, scaled by sqrt(n), as the columns of an
    n^2 x n^2 matrix (basis index fastest, matching the weight flattening)
    and returns the Frobenius distance of its outer Gram product from n
    times the identity. Zero exactly when the weights are trace-orthogonal
    with unit Frobenius norm. Requires k = n^2.
    """
    n, k = code.n, code.k
    if k != n * n:
        raise ValueError(f"gram identity requires full rate k = n^2, got k={k}, n={n}")
    # Row c of `cols` is the column-stacked weight c.
    cols = np.transpose(code.weights, (0, 2, 1)).reshape(k, n * n)
    phi = np.sqrt(n) * cols.T
    gram = phi @ phi.conj().T
    return float(np.linalg.norm(gram - n * np.eye(n * n)))


def check_theorem1(spec: AlgebraSpec) -> tuple[float, float]:
    """Sufficient conditions on the crossed-product data itself.

    Returns (modulus_residual, basis_orthogonality_residual): the largest
    deviation of any basis embedding or cocycle value from unit modulus, and
    the largest off-diagonal entry of the Gram matrix of the embedding rows.
    Both zero implies the built code passes every code-level check.
    """
    b = spec.basis_embeddings
    modulus = max(
        float(np.max(np.abs(np.abs(b) - 1.0))),
        float(np.max(np.abs(np.abs(spec.cocycle) - 1.0))),
    )
    gram = b @ b.conj().T
    off = gram - np.diag(np.diag(gram))
    return modulus, float(np.max(np.abs(off)))


def verify_code(
    code: LinearSTBC, spec: AlgebraSpec | None = None, tol: float = DEFAULT_TOL
) -> OptimalityReport:
    """Run every applicable optimality check and collect one report."""
    report = check_definition1(code, tol)
    if code.k == code.n * code.n:
        report.phi_residual = check_phi(code)
    if spec is not None:
        modulus, basis_orth = check_theorem1(spec)
        report.thm1_modulus_residual = modulus
        report.thm1_basis_orthogonality_residual = basis_orth
    return report


def min_det_diversity(
    code: LinearSTBC,
    constellation,
    budget: int = ENUMERATION_BUDGET,
    chunk_size: int = _CHUNK,
) -> DiversityReport:
    """Exhaustive minimum determinant over symbol-difference vectors.

    Enumerates every nonzero vector whose entries come from the difference
    set of the constellation, assembles the difference codeword, and tracks
    the smallest determinant modulus. The difference set of d values yields
    d^k vectors; anything above ``budget`` raises with advice to sample
    difference vectors instead. Ties resolve to the lexicographically first
    vector in enumeration order.
    """
    pts = np.asarray(constellation, dtype=np.complex128).ravel()
    if pts.size < 2:
        raise ValueError("constellation needs at least two points")
    diffs = np.unique((pts[:, None] - pts[None, :]).ravel())
    d = int(diffs.size)
    total = d ** code.k
    if total > budget:
        raise ValueError(
            f"difference enumeration needs {total} vectors, over the budget of {budget}; "
            "reduce the constellation or sample random difference vectors instead"
        )
    radix = d ** np.arange(code.k - 1, -1, -1, dtype=np.int64)
    best = np.inf
    best_delta: np.ndarray | None = None
    examined = 0
    for start in range(0, total, chunk_size):
        ids = np.arange(start, min(start + chunk_size, total), dtype=np.int64)
        digits = (ids[:, None] // radix[None, :]) % d
        delta = diffs[digits]
        live = (delta != 0).any(axis=1)
        if not live.any():
            continue
        delta = delta[live]
        mats = np.einsum("ck,kij->cij", delta, code.weights)
        dets = np.abs(np.linalg.det(mats))
        examined += int(live.sum())
        pos = int(np.argmin(dets))
        if dets[pos] < best:
            best = float(dets[pos])
            best_delta = delta[pos].copy()
    assert best_delta is not None
    return DiversityReport(min_det_modulus=best, argmin_difference=best_delta, pairs_examined=examined)
