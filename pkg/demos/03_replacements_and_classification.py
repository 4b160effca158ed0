"""Cofibrant/fibrant replacement of module stalks, and map classification.

The stalk of the simple module k over F_2[x]/(x^2) is neither cofibrant nor
fibrant in the two singular model structures; its replacements are the
complete resolution (projective side) and the complete injective resolution
(injective side).  The counit of the adjunction is then classified as a
trivial cofibration in the coderived-type structure.
"""

from singeq import approx, fixtures, functors, modelcat

k = fixtures.simple_k()
S = functors.stalk(k)
fam = modelcat.default_family(fixtures.D2())

flags = modelcat.membership_flags(S)
print("stalk(k) membership flags:", flags, "\n")

rep = approx.stalk_replacement(S, "cofibrant_ctr", fam)
print("Cofibrant replacement q: T -> stalk(k):", rep.verdict)
print("  T is an exact complex of projectives:",
      modelcat.membership_flags(rep.object).in_exP)
print("  truncation pieces orthogonal to exact injectives:",
      rep.upper.verdict, "/", rep.lower.verdict)

rep = approx.stalk_replacement(S, "fibrant_co", fam)
print("Fibrant replacement j: stalk(k) -> I:", rep.verdict)
print("  I is an exact complex of injectives:",
      modelcat.membership_flags(rep.object).in_exI, "\n")

eps = functors.counit(fixtures.t_per())
cls = modelcat.classify_map(eps, "co", fam)
print("Counit GF(T) -> T classified in the co-structure:")
print("  cofibration:", cls.cofibration.verdict,
      "| trivial cofibration:", cls.trivial_cofibration.verdict)
wk = modelcat.is_weak_equivalence(eps, "co", fam)
print("  weak equivalence:", wk.verdict)
