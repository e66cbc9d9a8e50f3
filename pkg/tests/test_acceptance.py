"""End-to-end acceptance checks for the whole package.

One test per criterion, each printing a single verdict line so a verbose
run reads as a checklist. The tolerances, counts, and runtime bounds
asserted here are the product contract; loosening them to turn a red build
green defeats their purpose.
"""

import itertools
import math
import time

import numpy as np

from stbckit.algebra import assemble, build_stbc, validate
from stbckit.cli import main
from stbckit.constructions import (
    biquadratic_spec,
    build_code,
    default_biquadratic,
    golden_code,
)
from stbckit.optimality import check_definition1, check_phi, min_det_diversity, verify_code
from stbckit.simulate import SimConfig, decode, diversity_slope, make_constellation, map_bits, run_ber

QPSK = make_constellation("qpsk")


def _verdict(capsys, num, ok, detail):
    with capsys.disabled():
        print(f"\n[criterion {num}] {'PASS' if ok else 'FAIL'}: {detail}", flush=True)
    assert ok, f"criterion {num}: {detail}"


def test_criterion_1_cyclic_family_is_mmse_optimal(capsys):
    start = time.monotonic()
    worst_def1 = 0.0
    worst_gram = 0.0
    for n in (2, 3, 4, 5, 8):
        code, _ = build_code("cyclic", n=n)
        report = check_definition1(code)
        worst_def1 = max(
            worst_def1,
            float(np.max(report.unitary_residuals)),
            report.trace_orthogonality_residual,
        )
        worst_gram = max(worst_gram, check_phi(code))
    elapsed = time.monotonic() - start
    ok = worst_def1 <= 1e-9 and worst_gram <= 1e-9 and elapsed < 1.0
    _verdict(
        capsys,
        1,
        ok,
        f"cyclic n in (2,3,4,5,8): max condition residual {worst_def1:.2e}, "
        f"max gram residual {worst_gram:.2e}, {elapsed:.2f}s",
    )


def test_criterion_2_golden_code_negative_control(capsys):
    report = check_definition1(golden_code())
    weight0 = float(report.unitary_residuals[0])
    trace = report.trace_orthogonality_residual
    ok = abs(weight0 - 0.3162) <= 1e-3 and trace <= 1e-12
    _verdict(
        capsys,
        2,
        ok,
        f"scaled-unitarity residual (weight 0) {weight0:.6f} vs 0.3162 +/- 1e-3, "
        f"trace residual {trace:.1e} <= 1e-12",
    )


def test_criterion_3_biquadratic_code_is_valid_and_optimal(capsys):
    spec = biquadratic_spec(default_biquadratic())
    report = validate(spec)
    code = build_stbc(spec)
    opt = verify_code(code, spec)
    ok = report.ok and report.cocycle_residual <= 1e-12 and opt.ok
    _verdict(
        capsys,
        3,
        ok,
        f"cocycle residual {report.cocycle_residual:.1e} <= 1e-12, "
        f"optimality verdicts {opt.verdicts}",
    )


def test_criterion_4_full_diversity_by_enumeration(capsys):
    code, _ = build_code("cyclic", n=2)
    start = time.monotonic()
    cyclic_report = min_det_diversity(code, QPSK.points)
    t_cyclic = time.monotonic() - start

    start = time.monotonic()
    golden_report = min_det_diversity(golden_code(), QPSK.points)
    t_golden = time.monotonic() - start

    ok = (
        cyclic_report.pairs_examined == 6560
        and golden_report.pairs_examined == 6560
        and cyclic_report.min_det_modulus > 0.0
        and golden_report.min_det_modulus > 0.0
        and t_cyclic < 10.0
        and t_golden < 10.0
    )
    _verdict(
        capsys,
        4,
        ok,
        f"min |det| over 6560 difference vectors: {cyclic_report.min_det_modulus:.6f} "
        f"({t_cyclic:.2f}s) and {golden_report.min_det_modulus:.6f} ({t_golden:.2f}s), both > 0",
    )


def test_criterion_5_noiseless_identity_round_trip(capsys):
    catalog = [
        ("cyclic", build_code("cyclic", n=2)[0]),
        ("cyclic-delta1", build_code("cyclic-delta1", n=2)[0]),
        ("biquadratic", build_code("biquadratic")[0]),
        ("golden", golden_code()),
    ]
    eligible = [
        (cid, code) for cid, code in catalog if code.k == 4 and check_definition1(code).ok
    ]
    eye = np.eye(2)
    worst = 0.0
    frames_exact = True
    for _, code in eligible:
        for bits in itertools.product((0, 1), repeat=8):
            frame = map_bits(bits, QPSK, rho=1.0)
            y = assemble(code, frame.symbols)
            estimates, _, decoded = decode(code, eye, y, QPSK, rho=1.0)
            worst = max(worst, float(np.max(np.abs(estimates - frame.symbols))))
            frames_exact = frames_exact and np.array_equal(decoded, np.array(bits, dtype=np.int8))
    ok = (
        [cid for cid, _ in eligible] == ["cyclic", "cyclic-delta1"]
        and frames_exact
        and worst <= 1e-10
    )
    _verdict(
        capsys,
        5,
        ok,
        f"codes {[cid for cid, _ in eligible]}, 256 frames each, all bits recovered, "
        f"worst soft-estimate error {worst:.1e} <= 1e-10",
    )


def test_criterion_6_desk_scale_ber_experiment(capsys):
    grid = (0.0, 4.0, 8.0, 12.0, 16.0, 20.0, 24.0)
    start = time.monotonic()
    results = {}
    for cid in ("cyclic", "cyclic-delta1"):
        cfg = SimConfig(
            code=cid,
            code_params={"n": 2},
            m=4,
            snr_grid_db=grid,
            trials_per_point=100_000,
            seed=2,
        )
        results[cid] = run_ber(cfg, workers=1)
    elapsed = time.monotonic() - start

    twisted = results["cyclic"]
    untwisted = results["cyclic-delta1"]

    # (a) non-increasing everywhere, strictly decreasing while errors occur
    monotone = all(q.ber <= p.ber for p, q in zip(twisted, twisted[1:]))
    nonzero = [p.ber for p in twisted if p.bit_errors > 0]
    monotone = monotone and all(q < p for p, q in zip(nonzero, nonzero[1:]))

    # (b) fitted slope against the expected diversity order 3 of a 2x4 link
    slope = diversity_slope(twisted, 3)
    slope_ok = 2.2 <= slope <= 3.8

    # (c) both codes statistically indistinguishable point by point
    paired = all(
        abs(p.ber - q.ber) <= 3.0 * math.hypot(p.stderr, q.stderr)
        for p, q in zip(twisted, untwisted)
    )

    ok = monotone and slope_ok and paired and elapsed < 300.0
    _verdict(
        capsys,
        6,
        ok,
        f"monotone={monotone}, slope={slope:.2f} in [2.2, 3.8], paired 3-sigma match={paired}, "
        f"{elapsed:.0f}s < 300s (2x4 QPSK, 7 points, 100000 frames each)",
    )


def test_criterion_7_byte_identical_csv_serial_vs_parallel(tmp_path, capsys):
    args = [
        "simulate", "--code", "cyclic", "--n", "2", "--m", "4",
        "--trials", "9000", "--seed", "7",
        "--snr-start", "0", "--snr-stop", "12", "--snr-step", "4",
    ]
    serial = tmp_path / "serial.csv"
    parallel = tmp_path / "parallel.csv"
    repeat = tmp_path / "repeat.csv"
    assert main(args + ["--workers", "1", "--out", str(serial)]) == 0
    assert main(args + ["--workers", "3", "--out", str(parallel)]) == 0
    assert main(args + ["--workers", "1", "--out", str(repeat)]) == 0

    serial_bytes = serial.read_bytes()
    ok = serial_bytes == parallel.read_bytes() and serial_bytes == repeat.read_bytes()
    _verdict(
        capsys,
        7,
        ok,
        f"{len(serial_bytes)} CSV bytes identical across serial run, 3-worker run, and rerun",
    )
