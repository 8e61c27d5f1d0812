"""The double-0 basis of the infinite dihedral group and its cells.

Run: python demos/double0_basis.py
"""
from heckegrade.dihedral_double0 import compute_basis, compute_cells, structure_constant_check, verify_closed_form

basis = compute_basis(12)
system = basis.algebra.system
for w in basis.ordered()[:7]:
    print(f"b_{system.word_string(w) or 'e'} =")
    for y, c in basis.elements[w].sorted_terms():
        print(f"    {c.format():<24} δ_{system.word_string(y) or 'e'}")

closed = verify_closed_form(basis)
consts = structure_constant_check(basis)
print(f"\nclosed-form checks: {len(closed.checks)} ({'pass' if closed.passed else 'FAIL'})")
print(f"structure constants: {len(consts.checks)} ({'pass' if consts.passed else 'FAIL'})")

print()
print("\n".join(compute_cells(basis, 12).lines(system)))
