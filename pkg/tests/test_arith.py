from fractions import Fraction
from math import comb

import pytest
import sympy
from hypothesis import given, strategies as st

from heckegrade.arith import (
    GF, DeltaPoly, DeltaRational, binom_at_zero_formula, binom_spec_table,
    format_scalar, gaussian_binom_at_i, is_prime, parse_rational, poly_gcd,
    quantum_binom, quantum_int, reduce_mod_p,
)
from heckegrade.errors import FieldMismatch, NonIntegralAtP

d = sympy.Symbol("d")

polys = st.lists(st.integers(-20, 20), max_size=6).map(DeltaPoly)
nonzero_polys = polys.filter(lambda p: not p.is_zero())


def to_sympy(p: DeltaPoly):
    return sum(c * d**i for i, c in enumerate(p.coefficients))


def test_prime_check():
    assert [n for n in range(30) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]


def test_quantum_int_base_cases():
    assert quantum_int(0).is_zero()
    assert quantum_int(1) == DeltaPoly.const(1)
    assert quantum_int(2) == DeltaPoly.delta()


def test_quantum_int_at_zero():
    assert quantum_int(6)(0) == 0
    assert quantum_int(5)(0) == 1
    assert quantum_int(3)(0) == -1


@pytest.mark.parametrize("n", range(1, 41))
def test_chebyshev_recursion(n):
    lhs = DeltaPoly.delta() * quantum_int(n)
    assert lhs == quantum_int(n + 1) + quantum_int(n - 1)


def test_quantum_int_matches_chebyshev_u():
    # [n] = U_{n-1}(δ/2)
    for n in range(1, 15):
        ref = sympy.expand(sympy.chebyshevu(n - 1, d / 2))
        assert sympy.expand(to_sympy(quantum_int(n)) - ref) == 0


def test_binom_examples():
    assert quantum_binom(8, 4)(0) == 6
    assert quantum_binom(7, 0) == DeltaPoly.const(1)
    assert quantum_binom(4, 1)(0) == 0
    assert quantum_binom(5, 3)(0) == -2
    assert quantum_binom(6, 2)(0) == 3
    assert quantum_binom(0, 0)(0) == 1


@pytest.mark.parametrize("n", range(21))
def test_binom_symmetry(n):
    for k in range(n + 1):
        assert quantum_binom(n, k) == quantum_binom(n, n - k)


def test_binom_against_sympy_quotient():
    for n in range(9):
        for k in range(n + 1):
            num = sympy.prod([to_sympy(quantum_int(n - i)) for i in range(k)])
            den = sympy.prod([to_sympy(quantum_int(k - i)) for i in range(k)])
            q, r = sympy.div(sympy.expand(num), sympy.expand(den), d)
            assert r == 0
            assert sympy.expand(q - to_sympy(quantum_binom(n, k))) == 0


def test_spec_table_matches_formula_and_q_equals_i():
    table = binom_spec_table(24)
    for n in range(25):
        oracle = gaussian_binom_at_i(n)
        for k in range(n + 1):
            assert table[(n, k)] == binom_at_zero_formula(n, k) == oracle[k]


def test_even_quantum_ratio_at_zero():
    for a in range(1, 21):
        for b in range(1, a + 1):
            if a % b:
                continue
            r = DeltaRational(quantum_int(2 * a), quantum_int(2 * b))
            assert r.is_polynomial()
            assert r.at_zero() == (-1) ** (a - b) * Fraction(a, b)


def test_spec_table_even_even_is_ordinary_binomial():
    table = binom_spec_table(20)
    for a in range(11):
        for b in range(a + 1):
            assert table[(2 * a, 2 * b)] == comb(a, b)


@given(polys, polys)
def test_poly_ring_matches_sympy(a, b):
    assert sympy.expand(to_sympy(a * b) - to_sympy(a) * to_sympy(b)) == 0
    assert sympy.expand(to_sympy(a + b) - to_sympy(a) - to_sympy(b)) == 0


@given(nonzero_polys, nonzero_polys)
def test_gcd_divides_both(a, b):
    g = poly_gcd(a, b)
    ref = sympy.gcd(to_sympy(a), to_sympy(b))
    assert sympy.simplify(to_sympy(g) / ref).is_number


def test_trailing_zeros_trimmed():
    assert DeltaPoly([1, 2, 0, 0]).coefficients == [1, 2]
    assert DeltaPoly([0, 0]).coefficients == []


rationals = st.tuples(polys, nonzero_polys).map(lambda t: DeltaRational(*t))


@given(rationals, rationals)
def test_rational_add_sub_roundtrip(a, b):
    assert (a + b) - b == a


@given(rationals)
def test_rational_inverse(a):
    if a.num.is_zero():
        return
    assert a * a.inverse() == DeltaRational(1)


@given(rationals)
def test_rational_normal_form(a):
    assert a.den.lc() > 0
    assert poly_gcd(a.num, a.den).degree <= 0 or a.num.is_zero()


@given(st.fractions(), st.fractions())
def test_rational_constants_match_fraction(x, y):
    a, b = DeltaRational.from_fraction(x), DeltaRational.from_fraction(y)
    assert (a + b).at_zero() == x + y
    assert (a * b).at_zero() == x * y


def test_reduce_mod_p_examples():
    assert reduce_mod_p(6, 3) == GF(0, 3)
    r = reduce_mod_p(Fraction(-3, 2), 5)
    assert r == GF(1, 5)
    assert (GF(2, 5) * r) == GF(-3, 5)
    with pytest.raises(NonIntegralAtP):
        reduce_mod_p(Fraction(1, 3), 3)


def test_prime_field_mismatch():
    with pytest.raises(FieldMismatch):
        GF(1, 3) + GF(1, 5)
    with pytest.raises(FieldMismatch):
        reduce_mod_p(GF(1, 3), 5)


@given(st.integers(1, 1000), st.sampled_from([2, 3, 5, 7, 11, 101]))
def test_prime_field_inverse(v, p):
    x = GF(v, p)
    if not x:
        return
    assert x * x.inverse() == GF(1, p)
    assert x ** (p - 1) == GF(1, p)


def test_poly_reduction():
    r = reduce_mod_p(DeltaPoly([3, 4, 6]), 3)
    assert r.c == (0, 1)


def test_scalar_text_roundtrip():
    for x in [Fraction(3, 7), Fraction(-2), Fraction(0)]:
        assert parse_rational(format_scalar(x)) == x
