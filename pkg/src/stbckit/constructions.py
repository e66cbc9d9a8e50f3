"""Catalog of concrete code constructions.

Two crossed-product families (a cyclic one for any n >= 2 and a biquadratic
one at n = 4) plus the golden code given directly by its weight matrices.
String ids used by the command line and the simulator:

* ``cyclic``        cyclic group of order n, twist delta on the unit circle
* ``cyclic-delta1`` same with delta fixed to 1 (a known earlier family;
                    MMSE-optimal but not guaranteed fully diverse)
* ``biquadratic``   Klein four-group acting on two independent square roots
* ``golden``        the golden code, which is fully diverse but fails the
                    scaled-unitary condition (useful as a negative control)
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import AlgebraSpec, LinearSTBC, build_stbc

KNOWN_CODE_IDS = ("cyclic", "cyclic-delta1", "biquadratic", "golden")

_UNIT_MODULUS_TOL = 1e-12


@dataclass(frozen=True)
class CyclicParams:
    """Parameters of the cyclic construction.

    ``t`` must be unit modulus (required for MMSE-optimal builds); ``delta``
    must be nonzero, and unit modulus if the build is to be MMSE optimal.
    """

    n: int
    t: complex
    delta: complex


@dataclass(frozen=True)
class BiquadraticParams:
    """Parameters of the biquadratic construction; all unit modulus."""

    x: complex
    y: complex
    delta1: complex
    delta2: complex


def default_transcendentals(n: int) -> CyclicParams:
    """Deterministic unit-circle defaults: t = e^(1j), delta = e^(1j*sqrt(5))."""
    return CyclicParams(n=n, t=np.exp(1j), delta=np.exp(1j * np.sqrt(5.0)))


def default_biquadratic() -> BiquadraticParams:
    """Deterministic unit-circle defaults for the biquadratic construction."""
    return BiquadraticParams(
        x=np.exp(1j),
        y=np.exp(1j * np.sqrt(2.0)),
        delta1=np.exp(1j * np.sqrt(3.0)),
        delta2=np.exp(1j * np.sqrt(5.0)),
    )


def cyclic_spec(params: CyclicParams) -> AlgebraSpec:
    """Crossed-product data of the cyclic construction.

    The group is Z_n with generator sigma acting on the principal n-th root
    t_n of t by multiplication with the primitive root of unity, and the
    cocycle equals 1 when the exponents fit below n and delta on wrap-around.
    Basis element i is t_n^i.
    """
    n, t, delta = params.n, complex(params.t), complex(params.delta)
    if n < 2:
        raise ValueError("cyclic construction needs n >= 2")
    if abs(abs(t) - 1.0) > _UNIT_MODULUS_TOL:
        raise ValueError(f"|t| must be 1, got {abs(t)}")
    if delta == 0:
        raise ValueError("delta must be nonzero")
    idx = np.arange(n)
    table = (idx[:, None] + idx[None, :]) % n
    cocycle = np.where(idx[:, None] + idx[None, :] >= n, delta, 1.0 + 0.0j)
    # Principal branch of the n-th root.
    t_n = np.exp(1j * np.angle(t) / n)
    omega = np.exp(2j * np.pi / n)
    embeddings = omega ** (idx[:, None] * idx[None, :]) * t_n ** idx[None, :]
    return AlgebraSpec(group_table=table, cocycle=cocycle, basis_embeddings=embeddings)


def biquadratic_spec(params: BiquadraticParams) -> AlgebraSpec:
    """Crossed-product data of the biquadratic construction at n = 4.

    The Klein four-group flips the signs of sqrt(x) and sqrt(y)
    independently. Group and basis index bits: bit 0 is the x component,
    bit 1 the y component, so the order is (1, sx, sy, sx*sy) with
    sx = sqrt(x) and sy = sqrt(y). The cocycle value for elements i, j is
    delta1^(ix*jx) * delta2^(iy*jy).
    """
    vals = {
        "x": complex(params.x),
        "y": complex(params.y),
        "delta1": complex(params.delta1),
        "delta2": complex(params.delta2),
    }
    for name, v in vals.items():
        if abs(abs(v) - 1.0) > _UNIT_MODULUS_TOL:
            raise ValueError(f"|{name}| must be 1, got {abs(v)}")
    x, y, d1, d2 = vals["x"], vals["y"], vals["delta1"], vals["delta2"]
    idx = np.arange(4)
    table = idx[:, None] ^ idx[None, :]
    bx, by = idx & 1, (idx >> 1) & 1
    cocycle = d1 ** (bx[:, None] * bx[None, :]) * d2 ** (by[:, None] * by[None, :])
    sx = np.exp(1j * np.angle(x) / 2)
    sy = np.exp(1j * np.angle(y) / 2)
    # Basis element with bits (bx, by) is sx^bx * sy^by; group element j
    # multiplies it by (-1)^(jx*bx + jy*by).
    basis = sx ** bx * sy ** by
    signs = (-1.0) ** (bx[:, None] * bx[None, :] + by[:, None] * by[None, :])
    embeddings = signs * basis[None, :]
    return AlgebraSpec(group_table=table, cocycle=cocycle.astype(np.complex128), basis_embeddings=embeddings)


def golden_code() -> LinearSTBC:
    """The golden code by its explicit weight matrices.

    All four weights are trace-orthogonal with unit Frobenius norm, but none
    is scaled-unitary, so the code is fully diverse yet not MMSE optimal.
    """
    s5 = np.sqrt(5.0)
    theta = (1.0 + s5) / 2.0
    theta_bar = (1.0 - s5) / 2.0
    a = 1.0 + 1j * (1.0 - theta)
    a_bar = 1.0 + 1j * (1.0 - theta_bar)
    weights = np.array(
        [
            [[a, 0.0], [0.0, a_bar]],
            [[a * theta, 0.0], [0.0, a_bar * theta_bar]],
            [[0.0, a], [1j * a_bar, 0.0]],
            [[0.0, a * theta], [1j * a_bar * theta_bar, 0.0]],
        ],
        dtype=np.complex128,
    ) / s5
    return LinearSTBC(n=2, k=4, alpha=5.0, weights=weights)


def build_code(
    code_id: str,
    n: int | None = None,
    t: complex | None = None,
    delta: complex | None = None,
    x: complex | None = None,
    y: complex | None = None,
    delta1: complex | None = None,
    delta2: complex | None = None,
) -> tuple[LinearSTBC, AlgebraSpec | None]:
    """Build a catalog code by id, returning (code, crossed-product data).

    The data component is None for the golden code, which is defined by its
    weights alone. Parameters that do not apply to the requested id are
    rejected rather than ignored.
    """
    if code_id in ("cyclic", "cyclic-delta1"):
        _reject(code_id, x=x, y=y, delta1=delta1, delta2=delta2)
        nn = 2 if n is None else int(n)
        base = default_transcendentals(nn)
        if code_id == "cyclic-delta1":
            if delta is not None:
                raise ValueError("cyclic-delta1 fixes delta to 1; use --code cyclic to vary it")
            delta = 1.0
        params = CyclicParams(
            n=nn,
            t=base.t if t is None else t,
            delta=base.delta if delta is None else delta,
        )
        spec = cyclic_spec(params)
        return build_stbc(spec), spec
    if code_id == "biquadratic":
        _reject(code_id, t=t, delta=delta)
        if n is not None and n != 4:
            raise ValueError("biquadratic construction is fixed at n=4")
        base = default_biquadratic()
        params = BiquadraticParams(
            x=base.x if x is None else x,
            y=base.y if y is None else y,
            delta1=base.delta1 if delta1 is None else delta1,
            delta2=base.delta2 if delta2 is None else delta2,
        )
        spec = biquadratic_spec(params)
        return build_stbc(spec), spec
    if code_id == "golden":
        _reject(code_id, n=n, t=t, delta=delta, x=x, y=y, delta1=delta1, delta2=delta2)
        return golden_code(), None
    raise ValueError(f"unknown code id {code_id!r}; known ids: {', '.join(KNOWN_CODE_IDS)}")


def _reject(code_id: str, **params):
    extra = [name for name, value in params.items() if value is not None]
    if extra:
        raise ValueError(f"parameters not supported by {code_id!r}: {', '.join(extra)}")
