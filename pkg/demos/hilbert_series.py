"""Counting normal words, and checking the count with plain linear algebra.

Run: python3 demos/hilbert_series.py
"""

import time

from ncsphere.rewrite import commutative_dims, complete, normal_word_counts, oracle_dimension
from ncsphere.sphere import GENERIC_SAMPLES, PRESETS, casimir, classify_case, relation_sextet

print("polynomial ring in 4 variables:", commutative_dims(5))

for name in ("commutative", "generic-sample", "two-conics", "plane", "three-relations", "coarse"):
    p = PRESETS[name]
    rels = relation_sextet(p)
    t0 = time.perf_counter()
    rw = normal_word_counts(complete(rels, 4), 4)
    orc = [oracle_dimension(rels, n) for n in range(5)]
    withc = normal_word_counts(complete(rels + [casimir(p)], 4), 4)
    dt = time.perf_counter() - t0
    print(f"{name:16s} {classify_case(p).name:16s} {rw}  oracle agrees: {rw == orc}  with C: {withc}"
          f"  ({dt:.2f}s)")

# the generic samples all behave like the polynomial ring
print(all(normal_word_counts(complete(relation_sextet(p), 4), 4) == commutative_dims(4)
          for p in GENERIC_SAMPLES))
