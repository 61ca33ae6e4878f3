"""From a 2x2 unitary to six quadratic relations and two central elements.

Run: python3 demos/relations_tour.py
"""

from ncsphere.freealg import mat_mul, pauli_expand
from ncsphere.linalg import row_space_equal
from ncsphere.rewrite import complete, is_central
from ncsphere.sphere import (
    PRESETS,
    ModuliParams,
    casimir,
    central_elements_z,
    relation_sextet,
    rescale_sklyanin,
    skly_relations,
    unitary_matrices,
    unitarity_relations,
)

lam = PRESETS["generic-sample"]
print("lambda =", lam)

# U = z0 + i sum z_j sigma_j, and z*_mu = lambda_mu z_mu
U, Us = unitary_matrices(lam)
print("UU* on the identity:", pauli_expand(mat_mul(U, Us))[0])

# the sigma components of UU* - U*U are the relations
pres = unitarity_relations(lam)
same = row_space_equal([r.to_vector() for r in pres.homogeneous_relations],
                       [r.to_vector() for r in relation_sextet(lam)])
print("Pauli expansion spans the sextet:", same)
for i, r in enumerate(relation_sextet(lam), 1):
    print(f"  r{i} = {r}")

# with symbolic lambda the same holds identically
sym = ModuliParams.symbolic()
sp = unitarity_relations(sym)
print("symbolic:", row_space_equal([r.to_vector() for r in sp.homogeneous_relations],
                                   [r.to_vector() for r in relation_sextet(sym)]))

# after rescaling z_mu -> Z_mu only a1:a2:a3 is left
sk = rescale_sklyanin(lam)
print("a =", ", ".join(str(x) for x in sk.a))
for r in skly_relations(sk)[3:]:
    print("  ", r)

# C and Q1, Q2, Q3 commute with every generator up to degree 4
rs = complete(relation_sextet(lam), 4)
print("rules in the completed system:", len(rs.rules))
print("C central:", is_central(casimir(lam), rs)[0])
for k, q in enumerate(central_elements_z(sk), 1):
    print(f"Q{k} central:", is_central(q, rs)[0])
