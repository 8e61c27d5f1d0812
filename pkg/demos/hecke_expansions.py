"""Bott-Samelson elements in the standard basis, two ways.

Run: python demos/hecke_expansions.py
"""
from heckegrade.coxeter import CoxeterSystem, all_subexpressions
from heckegrade.grading import build_bigrading
from heckegrade.hecke import HeckeAlgebra, ParameterMap, bott_samelson, deodhar_expand, hom_graded_rank

W = CoxeterSystem.dihedral("inf")
alg = HeckeAlgebra(ParameterMap.free(W))
expr = (0, 1, 0)

print("b_s1 b_s2 b_s1 in the infinite dihedral group, one parameter per color:")
h = bott_samelson(alg, expr)
for w, c in h.sorted_terms():
    print(f"  {W.word_string(w) or 'e':<10} {c.format()}")
print("Subexpression sum agrees:", deodhar_expand(alg, expr) == h)

print("\nLabels of the subexpressions of (s1, s1):")
for lab in all_subexpressions(W, (0, 0)):
    print(f"  bits={lab.bits} labels={lab.labels} endpoint={W.word_string(lab.endpoint) or 'e'}")

W4 = CoxeterSystem.dihedral(4)
spec = build_bigrading([0, 1])
print("\nGraded rank of Hom(b_s1 b_s2, b_s1 b_s2) under the bigrading:")
print(" ", hom_graded_rank(W4, (0, 1), (0, 1), spec).format())
