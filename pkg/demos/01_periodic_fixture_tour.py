"""Tour of the core fixture: the 1-periodic complex of free modules over
F_2[x]/(x^2) with differential x.

Walks through exactness, model-structure membership, and null-homotopy
decisions, printing what each verdict means along the way.
"""

import numpy as np

from singeq import complexes, fixtures, homotopy, modelcat, modules, solver
from singeq.complexes import chain_map_from_callable, identity_chain_map

D2 = fixtures.D2()
T = fixtures.t_per()

print("Algebra: F_2[x]/(x^2), dimension", D2.dim)
print("Complex T: 1-periodic, every term the regular module A (dim 2),")
print("every differential multiplication by x.\n")

print("Exactness: homology dimension in degrees -2..2:",
      [complexes.homology(T, n).dim for n in range(-2, 3)])
flags = modelcat.membership_flags(T)
print("Membership: exact-with-projective-terms =", flags.in_exP,
      "| exact-with-injective-terms =", flags.in_exI)
print("T is not contractible: identity null-homotopy verdict =",
      homotopy.null_homotopy(identity_chain_map(T)).verdict, "\n")

x = np.array([[0, 0], [1, 0]], dtype=np.int64)
xf = chain_map_from_callable(T, T, 0, 0, lambda n: x, 1, 1)
res = homotopy.null_homotopy(xf)
print("x . id_T is null-homotopic:", res.verdict,
      "(strategy:", res.strategy + ")")
print("  a 1-periodic homotopy does not exist, a 2-periodic one does:")
for m in (1, 2):
    found = homotopy.search_periodic_homotopy(xf, m)
    print(f"  period {m} ->", "found" if found is not None else "none")

hom, complete = solver.chain_map_space_basis(T, T)
print("\nEndomorphism hom-space: dimension", len(hom),
      "(complete:", str(complete) + ")")
classes = sum(0 if homotopy.stably_zero(f) else 1 for f in hom)
print("Basis elements that are stably nontrivial:", classes,
      "-- the homotopy-class space is 1-dimensional, generated by id.")
