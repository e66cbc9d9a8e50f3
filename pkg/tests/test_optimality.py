import itertools
import json

import numpy as np
import pytest

from stbckit.algebra import AlgebraSpec, LinearSTBC, assemble, build_stbc
from stbckit.constructions import (
    biquadratic_spec,
    build_code,
    cyclic_spec,
    default_biquadratic,
    default_transcendentals,
    golden_code,
)
from stbckit.optimality import (
    check_definition1,
    check_phi,
    check_theorem1,
    min_det_diversity,
    verify_code,
)
from stbckit.simulate import make_constellation

QPSK = make_constellation("qpsk").points


def test_definition1_cyclic_code_passes():
    code, _ = build_code("cyclic", n=2)
    report = check_definition1(code)
    assert report.ok
    assert np.max(report.unitary_residuals) <= 1e-12
    assert report.trace_orthogonality_residual <= 1e-12
    assert report.scale == pytest.approx(0.5)


def test_definition1_golden_code_fails_only_scaled_unitarity():
    report = check_definition1(golden_code())
    assert not report.verdicts["scaled_unitary"]
    assert report.verdicts["trace_orthogonality"]
    assert np.allclose(report.unitary_residuals, 0.31622776601683794, atol=1e-12)
    assert report.trace_orthogonality_residual <= 1e-12


def test_definition1_doubled_weights_residual():
    code, _ = build_code("cyclic", n=2)
    doubled = LinearSTBC(n=2, k=4, alpha=code.alpha, weights=2.0 * code.weights)
    report = check_definition1(doubled)
    # each product becomes 4x the target 0.5*I, so the miss is 1.5*sqrt(2)
    assert np.allclose(report.unitary_residuals, 1.5 * np.sqrt(2.0), atol=1e-12)


def test_phi_residuals_on_catalog():
    code, _ = build_code("cyclic", n=2)
    assert check_phi(code) <= 1e-12

    # the golden code keeps trace orthogonality and unit weight norms, which
    # is all the stacked-column Gram identity measures; only the per-weight
    # scaled-unitarity check separates it from the optimal codes
    assert check_phi(golden_code()) <= 1e-12

    biq, _ = build_code("biquadratic")
    assert check_phi(biq) <= 1e-11


def test_phi_gram_diagonal_equals_n():
    for n in (2, 3):
        code, _ = build_code("cyclic", n=n)
        cols = np.transpose(code.weights, (0, 2, 1)).reshape(code.k, n * n)
        phi = np.sqrt(n) * cols.T
        gram = phi @ phi.conj().T
        assert np.allclose(np.diag(gram).real, n, atol=1e-12)


def test_phi_requires_full_rate():
    code, _ = build_code("cyclic", n=2)
    partial = LinearSTBC(n=2, k=2, alpha=code.alpha, weights=code.weights[:2])
    with pytest.raises(ValueError, match="full rate"):
        check_phi(partial)


def test_phi_zero_iff_trace_orthogonal_with_unit_norms():
    base, _ = build_code("cyclic", n=2)

    def properties(code):
        phi = check_phi(code)
        gram = np.einsum("aij,bij->ab", code.weights.conj(), code.weights)
        off = np.max(np.abs(gram - np.diag(np.diag(gram))))
        norms_ok = np.allclose(np.diag(gram).real, 1.0, atol=1e-10)
        return phi, off, norms_ok

    for code in (base, golden_code()):
        phi, off, norms_ok = properties(code)
        assert phi <= 1e-10 and off <= 1e-10 and norms_ok

    # break the norm condition: phi must detect it
    scaled = np.array(base.weights)
    scaled[0] = 1.1 * scaled[0]
    phi, off, norms_ok = properties(LinearSTBC(n=2, k=4, alpha=2.0, weights=scaled))
    assert off <= 1e-10 and not norms_ok and phi > 1e-6

    # break trace orthogonality while keeping unit norms
    mixed = np.array(base.weights)
    mixed[0] = (base.weights[0] + base.weights[1]) / np.linalg.norm(
        base.weights[0] + base.weights[1]
    )
    phi, off, norms_ok = properties(LinearSTBC(n=2, k=4, alpha=2.0, weights=mixed))
    assert off > 1e-6 and norms_ok and phi > 1e-6


def test_theorem1_sufficient_conditions():
    for n in (2, 3, 5):
        spec = cyclic_spec(default_transcendentals(n))
        modulus, basis_orth = check_theorem1(spec)
        assert modulus <= 1e-12
        assert basis_orth <= 1e-11

    modulus, basis_orth = check_theorem1(biquadratic_spec(default_biquadratic()))
    assert modulus <= 1e-12
    assert basis_orth <= 1e-12


def test_theorem1_repeated_basis_rows():
    spec = AlgebraSpec(
        group_table=[[0, 1], [1, 0]],
        cocycle=np.ones((2, 2)),
        basis_embeddings=np.ones((2, 2)),
    )
    modulus, basis_orth = check_theorem1(spec)
    assert modulus == pytest.approx(0.0, abs=1e-15)
    assert basis_orth == pytest.approx(2.0)


def test_theorem1_pass_implies_definition1_pass():
    specs = [cyclic_spec(default_transcendentals(n)) for n in range(2, 7)]
    specs.append(biquadratic_spec(default_biquadratic()))
    for spec in specs:
        modulus, basis_orth = check_theorem1(spec)
        if modulus <= 1e-9 and basis_orth <= 1e-9:
            assert check_definition1(build_stbc(spec)).ok


def test_definition1_invariant_under_left_unitary():
    rng = np.random.default_rng(21)
    code, _ = build_code("cyclic", n=3)
    z = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
    u, _ = np.linalg.qr(z)
    rotated = LinearSTBC(n=3, k=9, alpha=code.alpha, weights=u[None] @ code.weights)
    before = check_definition1(code)
    after = check_definition1(rotated)
    assert np.allclose(before.unitary_residuals, after.unitary_residuals, atol=1e-10)
    assert after.trace_orthogonality_residual <= before.trace_orthogonality_residual + 1e-10


def test_verify_code_composes_all_checks():
    code, spec = build_code("cyclic", n=2)
    report = verify_code(code, spec)
    assert set(report.verdicts) == {
        "scaled_unitary",
        "trace_orthogonality",
        "gram_identity",
        "unit_modulus",
        "basis_orthogonality",
    }
    assert report.ok
    doc = json.loads(json.dumps(report.to_json()))
    assert doc["ok"] is True
    assert doc["phi_residual"] <= 1e-12

    golden_report = verify_code(golden_code())
    assert golden_report.thm1_modulus_residual is None
    assert not golden_report.ok


def brute_force_min_det(code, points):
    diffs = np.unique((points[:, None] - points[None, :]).ravel())
    best = np.inf
    best_delta = None
    count = 0
    for digits in itertools.product(range(diffs.size), repeat=code.k):
        delta = diffs[list(digits)]
        if not delta.any():
            continue
        count += 1
        d = abs(np.linalg.det(assemble(code, delta)))
        if d < best:
            best = d
            best_delta = delta
    return best, best_delta, count


def test_min_det_matches_brute_force_oracle():
    code, _ = build_code("cyclic", n=2)
    points = np.array([1.0 + 0j, -1.0 + 0j])
    report = min_det_diversity(code, points)
    oracle_min, oracle_delta, oracle_count = brute_force_min_det(code, points)
    assert report.pairs_examined == oracle_count == 3**4 - 1
    assert report.min_det_modulus == pytest.approx(oracle_min, rel=1e-12)
    assert np.allclose(report.argmin_difference, oracle_delta)


def test_min_det_qpsk_values():
    code, _ = build_code("cyclic", n=2)
    report = min_det_diversity(code, QPSK)
    assert report.pairs_examined == 9**4 - 1
    assert report.fully_diverse
    assert report.min_det_modulus == pytest.approx(0.0944401925087195, abs=1e-10)

    golden_report = min_det_diversity(golden_code(), QPSK)
    assert golden_report.fully_diverse
    assert golden_report.min_det_modulus == pytest.approx(2.0 / np.sqrt(5.0), abs=1e-9)


def test_min_det_delta_one_code_not_fully_diverse():
    code, _ = build_code("cyclic-delta1", n=2)
    report = min_det_diversity(code, QPSK)
    assert report.min_det_modulus == 0.0
    assert not report.fully_diverse
    # the reported difference vector really is singular and nonzero
    assert np.any(report.argmin_difference != 0)
    assert abs(np.linalg.det(assemble(code, report.argmin_difference))) <= 1e-12


def test_min_det_negation_symmetry():
    code, _ = build_code("cyclic", n=2)
    rng = np.random.default_rng(17)
    for _ in range(10):
        delta = rng.standard_normal(4) + 1j * rng.standard_normal(4)
        d_plus = abs(np.linalg.det(assemble(code, delta)))
        d_minus = abs(np.linalg.det(assemble(code, -delta)))
        assert d_plus == pytest.approx(d_minus, rel=1e-12)


def test_min_det_budget_guard():
    code, _ = build_code("biquadratic")
    with pytest.raises(ValueError, match="sample"):
        min_det_diversity(code, QPSK)
    with pytest.raises(ValueError, match="two points"):
        min_det_diversity(code, np.array([1.0 + 0j]))


def test_diversity_report_json():
    code, _ = build_code("cyclic", n=2)
    report = min_det_diversity(code, np.array([1.0 + 0j, -1.0 + 0j]))
    doc = json.loads(json.dumps(report.to_json()))
    assert doc["fully_diverse"] is True
    assert doc["pairs_examined"] == 80
    assert len(doc["argmin_difference"]) == 4
