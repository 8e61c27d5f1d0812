"""Quantum binomials at δ=0 and the Jones-Wenzl projectors they control.

Run: python demos/binomials_and_projectors.py
"""
from heckegrade import arith
from heckegrade import temperley_lieb as tl
from heckegrade.errors import NonIntegralAtP, PoleAtZero

print("δ=0 values of [n choose k], n <= 8")
table = arith.binom_spec_table(8)
for n in range(9):
    print(f"  n={n}:", " ".join(f"{table[(n, k)]:>3}" for k in range(n + 1)))

print("\nJW_n at δ=0 in characteristic 0")
for n in range(1, 8):
    try:
        J = tl.jw_at_zero(n)
        print(f"  n={n}: {len(J)} diagrams, idempotent={tl.is_idempotent(J)}")
    except PoleAtZero:
        print(f"  n={n}: no projector (pole at δ=0)")

print("\nJW_3 at δ=0:")
for D, c in tl.jw_at_zero(3).sorted_terms():
    print(f"  {str(c):>3}  {D}")

print("\nPositive characteristic: existence and rotation invariance")
for n, p in [(3, 2), (5, 3), (5, 5), (7, 3)]:
    try:
        J = tl.jw_at_zero(n, p)
        print(f"  n={n}, p={p}: exists, rotation-invariant={tl.is_rotation_invariant(J)}")
    except NonIntegralAtP:
        print(f"  n={n}, p={p}: coefficients not integral at p")

print("\nThe two-step recursion reproduces the projectors:")
chain = tl.jw_two_step(9, return_chain=True)
for n in (3, 5, 7, 9):
    print(f"  n={n}: matches specialization = {chain[n] == tl.jw_at_zero(n)}")
