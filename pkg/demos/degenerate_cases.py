"""What happens when some lambda_mu^2 coincide.

Run: python3 demos/degenerate_cases.py
"""

from ncsphere.chern import fuzzy_casimir
from ncsphere.freealg import FreeElt
from ncsphere.geometry import classify_variety
from ncsphere.rewrite import complete, is_central
from ncsphere.sphere import PRESETS, classify_case, normalize_moduli, relation_sextet, relation_span_dim

for name, p in PRESETS.items():
    tag = classify_case(p)
    canon, _ = normalize_moduli(p)
    v = classify_variety(p)
    print(f"{name:16s} case={tag.name:16s} relations={relation_span_dim(p)}  canonical {canon}")
    for c in v["components"]:
        print("      ", c)

# three equal lambdas: z0 becomes central
p = PRESETS["plane"]
print("\nz0 central in the plane case:", is_central(FreeElt.gen(0), complete(relation_sextet(p), 3))[0])

# its finite quotients are fuzzy spheres
for n in (1, 2, 3):
    print(f"n={n}: z1^2 + z2^2 + z3^2 = (n^2 - 1) z0^2 holds:", fuzzy_casimir(n)["casimir_holds"])
