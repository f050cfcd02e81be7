"""Large-weight behavior of the excess component, in floating point.

The excess component of the surface series, evaluated at a numeric weight v,
admits an asymptotic expansion in 1/v whose coefficients are themselves
convergent double sums.  Along the half-shifted sequence v_l = (l + 1/2) z
the normalized remainder ratio tends to 1, at rate 1/v_l.  This script
tabulates the ratio, fits the rate constant on small l, and confirms the
bound further out — the one floating-point corner of an otherwise exact
package (the evaluators themselves are cross-checked against the exact
series modules to 1e-10 in the tests).

Run:  python3 demos/04_asymptotic_series.py
"""

from ocmirror.asymptotics import (
    NumericParams,
    eval_I2,
    eval_phi_k,
    fitted_error_constant,
    ratio_table,
)

params = NumericParams()  # q0 = 1, q1 = q2 = 1/4, z = 1

# the direct value and the first few asymptotic scale coefficients
print("excess component at a few weights:")
for v in (3.5, 10.5, 100.5):
    print(f"  I(v={v:6.1f}) = {eval_I2(params, v):+.12f}")
print("scale coefficients:")
for k in range(4):
    print(f"  phi_{k} = {eval_phi_k(params, k):+.12f}")

# the ratio table: (I(v_l) - phi_0) / (phi_1 / v_l) should approach 1
print("\nfirst-order remainder ratio along v_l = l + 1/2:")
rows = ratio_table(params, 1, [50, 100, 200, 400, 800])
for l, v_l, n, ratio, abs_error in rows:
    print(f"  l={l:4d}  v_l={v_l:6.1f}  ratio={ratio:.10f}  |ratio-1|={abs_error:.3e}")

# fit the decay constant on the first two rows, verify it bounds the rest
constant = fitted_error_constant(params, 1, [50, 100])
print(f"\nfitted decay constant C = {constant:.6f}  (|ratio-1| <= C / v_l)")
for l, v_l, _, _, abs_error in rows[2:]:
    margin = constant / v_l - abs_error
    assert margin >= 0, l
    print(f"  l={l:4d}: bound {constant / v_l:.3e} vs actual {abs_error:.3e}  ok")
