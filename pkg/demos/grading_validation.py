"""Checking whether a grading on the generators extends.

Run: python demos/grading_validation.py
"""
from fractions import Fraction

from heckegrade.grading import (CartanSpec, CoxeterMatrix, GradingGroup, GradingSpec, build_bigrading,
                                build_p_adapted_grading, validate)

m4 = CoxeterMatrix.dihedral(4)
generic = CartanSpec({(0, 1): Fraction(-1), (1, 0): Fraction(-2)})
print("Bigrading on I2(4):")
print("\n".join("  " + line for line in validate(build_bigrading([0, 1]), m4, generic).lines()))

zero = CartanSpec({(0, 1): Fraction(0), (1, 0): Fraction(0)}, characteristic=2)
spec = build_p_adapted_grading(m4, 2)
print("\nOne grading per color on I2(4) in characteristic 2 (vanishing pairings):")
print("\n".join("  " + line for line in validate(spec, m4, zero).lines()))

grp = GradingGroup(2)
unbalanced = GradingSpec(grp, {0: grp.element([1, 0]), 1: grp.element([1, 0])},
                         {0: grp.element([0, 1]), 1: grp.element([0, 2])},
                         {0: grp.element([1, 1]), 1: grp.element([1, 2])})
m3 = CoxeterMatrix.dihedral(3)
print("\nUnequal root degrees on I2(3) with a nonzero pairing:")
print("\n".join("  " + line for line in validate(unbalanced, m3, CartanSpec({(0, 1): -1, (1, 0): -1})).lines()))
