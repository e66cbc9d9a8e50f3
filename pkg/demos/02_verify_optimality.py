"""Run the optimality checks across the catalog and print a report table.

The interesting contrast is the golden code: its weights all fail the
scaled-unitarity condition with the same residual sqrt(0.1) ~ 0.316, yet
the stacked-column gram test still comes out clean, because that test
only constrains column norms and pairwise traces.
"""

import numpy as np

from stbckit import build_code, check_phi, verify_code

CASES = [
    ("cyclic n=2", "cyclic", 2),
    ("cyclic n=3", "cyclic", 3),
    ("cyclic n=4", "cyclic", 4),
    ("cyclic-delta1 n=2", "cyclic-delta1", 2),
    ("biquadratic", "biquadratic", None),
    ("golden", "golden", None),
]

print(f"{'code':<20} {'unitary':>10} {'trace':>10} {'gram':>10}  verdict")
for label, code_id, n in CASES:
    code, spec = build_code(code_id, n=n)
    report = verify_code(code, spec)
    unitary = float(np.max(report.unitary_residuals))
    gram = check_phi(code)
    flag = "ok" if report.ok else "FAILS"
    print(
        f"{label:<20} {unitary:>10.2e} {report.trace_orthogonality_residual:>10.2e} "
        f"{gram:>10.2e}  {flag}"
    )

print()
code, _ = build_code("golden")
report = verify_code(code)
print("golden per-weight scaled-unitarity residuals:", np.round(report.unitary_residuals, 6))
print("all equal sqrt(0.1) =", np.sqrt(0.1))
