"""Monte Carlo link simulation with a linear MMSE symbol-by-symbol receiver.

One trial sends one codeword over a quasi-static channel: H and the noise
have i.i.d. standard complex Gaussian entries, the constellation is scaled
to mean symbol energy rho against unit-variance noise, so the SNR in dB is
10*log10(rho). The receiver applies the MMSE filter once per channel and
reads each symbol off its own weight matrix, so decoding cost is linear in
the signal set size.

Reproducibility contract: trial t of SNR point s draws its randomness from a
generator seeded with (seed, s, t), in the fixed order bits, channel, noise.
Results therefore do not depend on chunking or on how trials are spread
across worker processes, and repeated runs give byte-identical CSV output.
"""

from __future__ import annotations

import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .algebra import LinearSTBC, assemble
from .constructions import build_code
from .matrixops import as_cmatrix, solve_hermitian_positive

CSV_HEADER = "snr_db,ber,ser,bit_errors,bits,stderr"
_SQRT_HALF = math.sqrt(0.5)
_TRIALS_PER_CHUNK = 4096


@dataclass(frozen=True)
class Constellation:
    """Unit-mean-energy signal set with its bit labeling.

    ``points[v]`` is the point whose label is the bit pattern of v (most
    significant bit first) and ``labels[v]`` spells out those bits.
    """

    name: str
    points: np.ndarray
    labels: np.ndarray

    @property
    def order(self) -> int:
        return self.points.size

    @property
    def bits_per_symbol(self) -> int:
        return self.labels.shape[1]


def _gray_to_binary(g: int) -> int:
    b = 0
    while g:
        b ^= g
        g >>= 1
    return b


def make_constellation(name: str, order: int | None = None) -> Constellation:
    """Build a named constellation.

    ``qpsk`` uses the fixed Gray map 00 -> 1+1j, 01 -> -1+1j, 11 -> -1-1j,
    10 -> 1-1j (before scaling). ``qam`` takes a square order (16 or 64) and
    applies an independent Gray code per axis.
    """
    name = name.lower()
    if name == "qpsk":
        if order not in (None, 4):
            raise ValueError("qpsk has order 4")
        points = np.array([1 + 1j, -1 + 1j, 1 - 1j, -1 - 1j], dtype=np.complex128) * _SQRT_HALF
        labels = np.array([[v >> 1 & 1, v & 1] for v in range(4)], dtype=np.int8)
        return Constellation("qpsk", points, labels)
    if name == "qam":
        if order not in (16, 64):
            raise ValueError("qam supports orders 16 and 64")
        bps = order.bit_length() - 1
        half = bps // 2
        side = 1 << half
        amplitudes = 2 * np.arange(side) - (side - 1)
        points = np.empty(order, dtype=np.complex128)
        for v in range(order):
            re = amplitudes[_gray_to_binary(v >> half)]
            im = amplitudes[_gray_to_binary(v & (side - 1))]
            points[v] = re + 1j * im
        points /= np.sqrt(np.mean(np.abs(points) ** 2))
        labels = np.array([[v >> (bps - 1 - b) & 1 for b in range(bps)] for v in range(order)], dtype=np.int8)
        return Constellation(f"qam{order}", points, labels)
    raise ValueError(f"unknown constellation {name!r}; use qpsk or qam")


@dataclass(frozen=True)
class SymbolFrame:
    """One frame of k data symbols together with the bits that produced them."""

    symbols: np.ndarray
    bit_labels: np.ndarray


@dataclass(frozen=True)
class ChannelRealization:
    """One quasi-static channel draw: an m x n matrix plus m x n noise."""

    h: np.ndarray
    noise: np.ndarray

    def __post_init__(self):
        h = as_cmatrix(self.h)
        noise = as_cmatrix(self.noise)
        if h.shape != noise.shape:
            raise ValueError(f"channel {h.shape} and noise {noise.shape} shapes differ")
        if h.shape[0] < h.shape[1]:
            raise ValueError(
                f"need m >= n receive antennas, got m={h.shape[0]}, n={h.shape[1]}; "
                "fewer causes an error floor under the linear MMSE receiver"
            )
        object.__setattr__(self, "h", h)
        object.__setattr__(self, "noise", noise)


def sample_channel(rng: np.random.Generator, m: int, n: int) -> ChannelRealization:
    """Draw H then noise, each with i.i.d. standard complex Gaussian entries."""
    g = rng.standard_normal((2, m, n))
    h = (g[0] + 1j * g[1]) * _SQRT_HALF
    g = rng.standard_normal((2, m, n))
    noise = (g[0] + 1j * g[1]) * _SQRT_HALF
    return ChannelRealization(h=h, noise=noise)


def map_bits(bits, constellation: Constellation, rho: float) -> SymbolFrame:
    """Map a flat bit array onto constellation symbols with mean energy rho."""
    bits = np.asarray(bits, dtype=np.int8).ravel()
    bps = constellation.bits_per_symbol
    if bits.size == 0 or bits.size % bps:
        raise ValueError(f"bit count {bits.size} is not a positive multiple of {bps}")
    if np.any((bits != 0) & (bits != 1)):
        raise ValueError("bits must be 0 or 1")
    weights = 1 << np.arange(bps - 1, -1, -1)
    values = (bits.reshape(-1, bps) * weights).sum(axis=1)
    symbols = math.sqrt(rho) * constellation.points[values]
    return SymbolFrame(symbols=symbols, bit_labels=bits.copy())


def transmit(code: LinearSTBC, frame: SymbolFrame, chan: ChannelRealization) -> np.ndarray:
    """Received block Y = H X + N for one frame."""
    if chan.h.shape[1] != code.n:
        raise ValueError(f"channel has {chan.h.shape[1]} transmit antennas, code needs {code.n}")
    return chan.h @ assemble(code, frame.symbols) + chan.noise


def mmse_filter(h, rho: float) -> np.ndarray:
    """Linear MMSE receive filter (H^H H + I/rho)^(-1) H^H via an HPD solve."""
    h = as_cmatrix(h)
    m, n = h.shape
    if m < n:
        raise ValueError(f"need m >= n, got m={m}, n={n}; fewer receive antennas causes an error floor")
    if rho <= 0:
        raise ValueError("rho must be positive")
    hh = h.conj().T
    return solve_hermitian_positive(hh @ h + np.eye(n) / rho, hh)


def decode(
    code: LinearSTBC,
    filt: np.ndarray,
    y: np.ndarray,
    constellation: Constellation,
    rho: float = 1.0,
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Symbol-by-symbol decode of one received block.

    Soft estimate idx is the trace inner product of weight idx with the
    filtered block. Returns (estimates, hard point indices, hard bits); the
    hard decision is the nearest scaled constellation point, ties to the
    lowest index.
    """
    z = as_cmatrix(filt) @ as_cmatrix(y)
    estimates = np.einsum("kij,ij->k", code.weights.conj(), z)
    scaled = math.sqrt(rho) * constellation.points
    hard = np.abs(estimates[:, None] - scaled[None, :]).argmin(axis=1)
    bits = constellation.labels[hard].reshape(-1).copy()
    return estimates, hard, bits


@dataclass(frozen=True)
class BerPoint:
    """Error counts for one SNR point; rates derive from the counts."""

    snr_db: float
    bit_errors: int
    bits: int
    symbol_errors: int
    symbols: int

    @property
    def ber(self) -> float:
        return self.bit_errors / self.bits

    @property
    def ser(self) -> float:
        return self.symbol_errors / self.symbols

    @property
    def stderr(self) -> float:
        p = self.ber
        return math.sqrt(p * (1.0 - p) / self.bits)


@dataclass
class SimConfig:
    """Everything a BER run depends on; serializes to and from plain JSON."""

    code: str
    code_params: dict = field(default_factory=dict)
    m: int = 4
    constellation: str = "qpsk"
    order: int = 4
    snr_grid_db: tuple[float, ...] = (0.0, 4.0, 8.0, 12.0, 16.0, 20.0, 24.0)
    trials_per_point: int = 10_000
    seed: int = 0
    slope_fit_points: int = 3

    def __post_init__(self):
        self.snr_grid_db = tuple(float(s) for s in self.snr_grid_db)
        if not self.snr_grid_db:
            raise ValueError("snr grid is empty")
        if any(b <= a for a, b in zip(self.snr_grid_db, self.snr_grid_db[1:])):
            raise ValueError("snr grid must be strictly increasing")
        if self.trials_per_point < 1:
            raise ValueError("trials_per_point must be at least 1")
        if self.m < 1:
            raise ValueError("m must be at least 1")
        if not 0 <= int(self.seed) < 2**64:
            raise ValueError("seed must fit in an unsigned 64-bit integer")
        if self.slope_fit_points < 2:
            raise ValueError("slope_fit_points must be at least 2")

    def to_json(self) -> dict:
        return {
            "code": self.code,
            "code_params": dict(self.code_params),
            "m": self.m,
            "constellation": self.constellation,
            "order": self.order,
            "snr_grid_db": list(self.snr_grid_db),
            "trials_per_point": self.trials_per_point,
            "seed": self.seed,
            "slope_fit_points": self.slope_fit_points,
        }

    @classmethod
    def from_json(cls, doc: dict) -> "SimConfig":
        known = {f for f in cls.__dataclass_fields__}
        extra = set(doc) - known
        if extra:
            raise ValueError(f"unknown config keys: {', '.join(sorted(extra))}")
        if "code" not in doc:
            raise ValueError("config needs a 'code' entry")
        kwargs = dict(doc)
        if "snr_grid_db" in kwargs:
            kwargs["snr_grid_db"] = tuple(kwargs["snr_grid_db"])
        return cls(**kwargs)


def resolve_code_params(params: dict) -> dict:
    """Turn JSON-friendly *_re/*_im and *_arg entries into complex values."""
    out: dict = {}
    plain = dict(params)
    if "n" in plain:
        out["n"] = int(plain.pop("n"))
    for name in ("t", "delta", "x", "y", "delta1", "delta2"):
        arg_key, re_key, im_key = f"{name}_arg", f"{name}_re", f"{name}_im"
        if arg_key in plain and (re_key in plain or im_key in plain):
            raise ValueError(f"give {name} either as {arg_key} or as {re_key}/{im_key}, not both")
        if arg_key in plain:
            out[name] = complex(np.exp(1j * float(plain.pop(arg_key))))
        elif re_key in plain or im_key in plain:
            if re_key not in plain or im_key not in plain:
                raise ValueError(f"{re_key} and {im_key} must be given together")
            out[name] = complex(float(plain.pop(re_key)), float(plain.pop(im_key)))
        elif name in plain:
            out[name] = complex(plain.pop(name))
    if plain:
        raise ValueError(f"unknown code parameters: {', '.join(sorted(plain))}")
    return out


def _chunk_counts(task) -> tuple[int, int, int]:
    """Error counts for trials [start, stop) of one SNR point.

    Randomness is drawn per trial from a generator seeded by the triple
    (seed, snr_index, trial_index), so the result only depends on the task
    contents, never on which process or chunk handled the trial.
    """
    weights, m, points, labels, seed, snr_index, rho, start, stop = task
    k, n = weights.shape[0], weights.shape[1]
    bps = labels.shape[1]
    count = stop - start
    bits = np.empty((count, k * bps), dtype=np.int8)
    h = np.empty((count, m, n), dtype=np.complex128)
    noise = np.empty((count, m, n), dtype=np.complex128)
    for row, trial in enumerate(range(start, stop)):
        rng = np.random.default_rng((seed, snr_index, trial))
        bits[row] = rng.integers(0, 2, size=k * bps)
        g = rng.standard_normal((2, m, n))
        h[row] = (g[0] + 1j * g[1]) * _SQRT_HALF
        g = rng.standard_normal((2, m, n))
        noise[row] = (g[0] + 1j * g[1]) * _SQRT_HALF

    weights_msb = 1 << np.arange(bps - 1, -1, -1)
    values = (bits.reshape(count, k, bps) * weights_msb).sum(axis=2)
    scaled = math.sqrt(rho) * points
    x = np.einsum("ck,kij->cij", scaled[values], weights)
    y = h @ x + noise
    hh = np.conj(np.transpose(h, (0, 2, 1)))
    gram = hh @ h + np.eye(n) / rho
    filt = np.linalg.solve(gram, hh)
    est = np.einsum("kij,cij->ck", weights.conj(), filt @ y)
    hard = np.abs(est[:, :, None] - scaled[None, None, :]).argmin(axis=2)
    symbol_errors = int((hard != values).sum())
    bit_errors = int((labels[hard] != bits.reshape(count, k, bps)).sum())
    return snr_index, bit_errors, symbol_errors


def run_ber(cfg: SimConfig, workers: int = 1) -> list[BerPoint]:
    """Simulate the whole SNR grid and return one point per grid entry.

    ``workers`` > 1 spreads trial chunks over processes; the per-trial
    seeding makes the outcome identical to a serial run.
    """
    code, _ = build_code(cfg.code, **resolve_code_params(cfg.code_params))
    if cfg.m < code.n:
        raise ValueError(
            f"m={cfg.m} receive antennas with n={code.n} transmit antennas hits an "
            "error floor under the linear MMSE receiver; use m >= n"
        )
    constellation = make_constellation(cfg.constellation, cfg.order)
    trials = cfg.trials_per_point
    tasks = []
    for snr_index, snr_db in enumerate(cfg.snr_grid_db):
        rho = 10.0 ** (snr_db / 10.0)
        for start in range(0, trials, _TRIALS_PER_CHUNK):
            stop = min(start + _TRIALS_PER_CHUNK, trials)
            tasks.append(
                (
                    code.weights,
                    cfg.m,
                    constellation.points,
                    constellation.labels,
                    int(cfg.seed),
                    snr_index,
                    rho,
                    start,
                    stop,
                )
            )

    bit_errors = [0] * len(cfg.snr_grid_db)
    symbol_errors = [0] * len(cfg.snr_grid_db)
    if workers <= 1:
        results = [_chunk_counts(t) for t in tasks]
    else:
        with ProcessPoolExecutor(max_workers=workers) as executor:
            results = list(executor.map(_chunk_counts, tasks))
    for snr_index, berr, serr in results:
        bit_errors[snr_index] += berr
        symbol_errors[snr_index] += serr

    symbols = trials * code.k
    bits = symbols * constellation.bits_per_symbol
    return [
        BerPoint(
            snr_db=snr_db,
            bit_errors=bit_errors[i],
            bits=bits,
            symbol_errors=symbol_errors[i],
            symbols=symbols,
        )
        for i, snr_db in enumerate(cfg.snr_grid_db)
    ]


def diversity_slope(points: list[BerPoint], fit_count: int = 3) -> float:
    """Least squares slope of -log10(BER) against SNR/10 dB.

    Uses the last ``fit_count`` points that saw at least one bit error;
    raises when fewer are available.
    """
    usable = [p for p in points if p.bit_errors > 0]
    if len(usable) < fit_count:
        raise ValueError(
            f"need {fit_count} points with nonzero error counts, have {len(usable)}"
        )
    tail = usable[-fit_count:]
    x = np.array([p.snr_db / 10.0 for p in tail])
    y = np.array([-math.log10(p.ber) for p in tail])
    return float(np.polyfit(x, y, 1)[0])


def _point_row(p: BerPoint) -> str:
    return f"{p.snr_db!r},{p.ber!r},{p.ser!r},{p.bit_errors},{p.bits},{p.stderr!r}"


def write_ber_csv(points: list[BerPoint], path) -> None:
    lines = [CSV_HEADER] + [_point_row(p) for p in points]
    Path(path).write_text("\n".join(lines) + "\n")


def write_sweep_csv(rows: list[tuple[str, BerPoint]], path) -> None:
    lines = ["code," + CSV_HEADER] + [f"{code_id},{_point_row(p)}" for code_id, p in rows]
    Path(path).write_text("\n".join(lines) + "\n")


def point_to_json(p: BerPoint) -> dict:
    return {
        "snr_db": p.snr_db,
        "ber": p.ber,
        "ser": p.ser,
        "bit_errors": p.bit_errors,
        "bits": p.bits,
        "symbol_errors": p.symbol_errors,
        "symbols": p.symbols,
        "stderr": p.stderr,
    }


def write_sidecar(cfg: SimConfig, slope, path) -> None:
    """Config echo plus slope estimate next to a CSV file.

    ``slope`` is a float, None when no fit was possible, or a dict keyed by
    code id for sweeps.
    """
    doc = {"config": cfg.to_json(), "diversity_slope": slope}
    Path(path).write_text(json.dumps(doc, indent=2) + "\n")
