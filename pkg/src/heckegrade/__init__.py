"""Exact computations for graded Hecke categories: Temperley-Lieb algebras at
δ=0, Jones-Wenzl projectors, grading groups, unequal-parameter Hecke algebras
and the infinite-dihedral double-0 basis."""

__version__ = "0.1.0"
