"""The characteristic variety: an elliptic curve, four points and the map sigma.

Run: python3 demos/elliptic_curve.py
"""

from ncsphere import geometry as geo
from ncsphere.sphere import GENERIC_SAMPLES, ModuliParams

sym = ModuliParams.symbolic()

ok, sign = geo.verify_det_1245(sym)
print("det(rows 1,2,4,5) = sign * factorized form:", ok, "sign", sign)
print("block minors carry both quadrics:", geo.block_minor_factors(sym)["ok"])
rep = geo.minors_in_ideal(sym)
print("all", len(rep["minors"]), "minors vanish on q1 = q2 = 0:", rep["ok"])

p = GENERIC_SAMPLES[0]
print("\nat lambda =", p)
for e in geo.special_point_report(p):
    print(f"  {e['label']:4s} on E: {e['in_E']}  fixed by sigma: {e['sigma_fixed']}")

sc = geo.scaled_checks(p)
print("sigma maps the curve to itself:", sc["sigma_on_curve"])
print("sigma = I o I0:", sc["sigma_equals_I_I0"])
rc = geo.reality_checks(p)
print("j sigma = sigma^-1 j:", rc["j_sigma_equals_sigma_inverse_j"])

ci = geo.curve_identification(sym)
print("\nB1 : B2 = a1 : a2 identically:", ci["ratio_B1_B2_equals_a1_a2"])
print("M is an involution:", ci["M_squared_identity"])
print("M with a sign slip in row 3 is singular:", ci["degenerate_M_singular"])

for k in (1, 2, 3):
    r = geo.central_form_check(p, k)
    print(f"central form Q{k}: identity holds for all six relations: {r['ok']}")
