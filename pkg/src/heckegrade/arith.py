"""Exact scalars: rationals, prime fields, polynomials and rational functions in δ.

Rationals are the stdlib :class:`fractions.Fraction`.  Polynomials in δ have
integer coefficients; rational functions are kept in a canonical reduced form so
that equality is structural.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb, gcd
from typing import Iterable, Union

from .errors import FieldMismatch, NonIntegralAtP, NonPolynomialQuotient, PoleAtZero

Rational = Fraction


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


class GF:
    """Element of the prime field GF(p)."""

    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        self.v = v % p
        self.p = p

    def _coerce(self, other) -> "GF":
        if isinstance(other, GF):
            if other.p != self.p:
                raise FieldMismatch(f"GF({self.p}) vs GF({other.p})")
            return other
        if isinstance(other, int):
            return GF(other, self.p)
        if isinstance(other, Fraction):
            return reduce_mod_p(other, self.p)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return GF(self.v + o.v, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return GF(self.v - o.v, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return GF(o.v - self.v, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return GF(self.v * o.v, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return GF(-self.v, self.p)

    def inverse(self) -> "GF":
        if self.v == 0:
            raise ZeroDivisionError("inverse of zero in GF(p)")
        return GF(pow(self.v, -1, self.p), self.p)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return GF(pow(self.v, e, self.p), self.p)

    def __eq__(self, other):
        if isinstance(other, GF):
            if other.p != self.p:
                raise FieldMismatch(f"GF({self.p}) vs GF({other.p})")
            return self.v == other.v
        if isinstance(other, (int, Fraction)):
            try:
                return self.v == reduce_mod_p(other, self.p).v
            except NonIntegralAtP:
                return False
        return NotImplemented

    def __hash__(self):
        return hash((self.v, self.p))

    def __bool__(self):
        return self.v != 0

    def __repr__(self):
        return f"GF({self.v}, {self.p})"

    def __str__(self):
        return str(self.v)


# ---------------------------------------------------------------- polynomials

def _trim(c: Iterable[int]) -> tuple:
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


class DeltaPoly:
    """Polynomial in δ with integer coefficients, lowest degree first."""

    __slots__ = ("c",)

    def __init__(self, coefficients: Iterable[int] = ()):
        self.c = _trim(coefficients)

    @classmethod
    def const(cls, a: int) -> "DeltaPoly":
        return cls((a,))

    @classmethod
    def delta(cls) -> "DeltaPoly":
        return cls((0, 1))

    @property
    def coefficients(self) -> list:
        return list(self.c)

    @property
    def degree(self) -> int:
        return len(self.c) - 1

    def is_zero(self) -> bool:
        return not self.c

    def lc(self) -> int:
        return self.c[-1]

    def content(self) -> int:
        g = 0
        for a in self.c:
            g = gcd(g, a)
        return g

    def __add__(self, other):
        if isinstance(other, int):
            other = DeltaPoly.const(other)
        if not isinstance(other, DeltaPoly):
            return NotImplemented
        a, b = self.c, other.c
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, x in enumerate(b):
            out[i] += x
        return DeltaPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return DeltaPoly(-x for x in self.c)

    def __sub__(self, other):
        if isinstance(other, int):
            other = DeltaPoly.const(other)
        if not isinstance(other, DeltaPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return DeltaPoly(x * other for x in self.c)
        if not isinstance(other, DeltaPoly):
            return NotImplemented
        a, b = self.c, other.c
        if not a or not b:
            return DeltaPoly()
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return DeltaPoly(out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        out = DeltaPoly.const(1)
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, int):
            other = DeltaPoly.const(other)
        if isinstance(other, DeltaPoly):
            return self.c == other.c
        return NotImplemented

    def __hash__(self):
        return hash(("DeltaPoly", self.c))

    def __bool__(self):
        return bool(self.c)

    def __call__(self, x):
        acc = 0
        for a in reversed(self.c):
            acc = acc * x + a
        return acc

    evaluate = __call__

    def valuation(self) -> int:
        """Order of vanishing at δ=0 (the zero polynomial has order -1 by convention)."""
        for i, a in enumerate(self.c):
            if a:
                return i
        return -1

    def exact_div_int(self, k: int) -> "DeltaPoly":
        return DeltaPoly(x // k for x in self.c)

    def primitive(self) -> "DeltaPoly":
        g = self.content()
        if g == 0:
            return self
        if self.c[-1] < 0:
            g = -g
        return self.exact_div_int(g)

    def divmod_exact(self, other: "DeltaPoly") -> "DeltaPoly":
        """Quotient over ℤ; raises if the division leaves a remainder."""
        if other.c and abs(other.c[-1]) == 1:
            return _divmod_unit(self, other)
        q, r = _divmod_q(self, other)
        if r or any(x.denominator != 1 for x in q):
            raise NonPolynomialQuotient(f"{self} is not divisible by {other}")
        return DeltaPoly(int(x) for x in q)

    def __repr__(self):
        return f"DeltaPoly({list(self.c)})"

    def __str__(self):
        if not self.c:
            return "0"
        terms = []
        for i in range(len(self.c) - 1, -1, -1):
            a = self.c[i]
            if not a:
                continue
            mono = "" if i == 0 else ("d" if i == 1 else f"d^{i}")
            if mono and abs(a) == 1:
                coef = "-" if a < 0 else ""
            else:
                coef = str(a) + ("*" if mono else "")
            terms.append(coef + mono)
        return " + ".join(terms).replace("+ -", "- ")


def _divmod_q(a: DeltaPoly, b: DeltaPoly):
    if not b.c:
        raise ZeroDivisionError("polynomial division by zero")
    r = [Fraction(x) for x in a.c]
    db = b.degree
    lb = b.c[-1]
    if len(r) - 1 < db:
        return [], any(r)
    q = [Fraction(0)] * (len(r) - db)
    for i in range(len(r) - 1, db - 1, -1):
        coef = r[i] / lb
        q[i - db] = coef
        if coef:
            for j, y in enumerate(b.c):
                r[i - db + j] -= coef * y
    return q, any(r[:db])


def _divmod_unit(a: DeltaPoly, b: DeltaPoly) -> DeltaPoly:
    r = list(a.c)
    db = len(b.c) - 1
    lb = b.c[-1]
    if len(r) - 1 < db:
        if r:
            raise NonPolynomialQuotient(f"{a} is not divisible by {b}")
        return DeltaPoly()
    q = [0] * (len(r) - db)
    for i in range(len(r) - 1, db - 1, -1):
        coef = r[i] * lb
        q[i - db] = coef
        if coef:
            for j, y in enumerate(b.c):
                r[i - db + j] -= coef * y
    if any(r[:db]):
        raise NonPolynomialQuotient(f"{a} is not divisible by {b}")
    return DeltaPoly(q)


def _prem(a: tuple, b: tuple) -> tuple:
    """Pseudo-remainder of integer coefficient tuples (deg a >= deg b)."""
    r = list(a)
    db = len(b) - 1
    lb = b[-1]
    while len(r) - 1 >= db and r:
        lr = r[-1]
        shift = len(r) - 1 - db
        r = [x * lb for x in r]
        for j, y in enumerate(b):
            r[shift + j] -= lr * y
        while r and r[-1] == 0:
            r.pop()
    return tuple(r)


def poly_gcd(a: DeltaPoly, b: DeltaPoly) -> DeltaPoly:
    """Primitive gcd over ℤ[δ] with positive leading coefficient."""
    if not a.c:
        return b.primitive() if b.c else DeltaPoly()
    if not b.c:
        return a.primitive()
    x, y = a.primitive().c, b.primitive().c
    if len(x) < len(y):
        x, y = y, x
    while y:
        if len(y) == 1:
            return DeltaPoly.const(1)
        r = _prem(x, y)
        if r:
            g = 0
            for t in r:
                g = gcd(g, t)
            r = tuple(t // g for t in r)
        x, y = y, r
    out = DeltaPoly(x)
    return out.primitive()


class DeltaRational:
    """Element of ℚ(δ) in canonical form.

    numerator/denominator are coprime over ℚ[δ], their integer contents are
    coprime and the denominator has positive leading coefficient.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, _reduced: bool = False):
        if isinstance(num, int):
            num = DeltaPoly.const(num)
        if den is None:
            den = DeltaPoly.const(1)
        elif isinstance(den, int):
            den = DeltaPoly.const(den)
        if not den.c:
            raise ZeroDivisionError("zero denominator")
        if not _reduced:
            num, den = _normalize(num, den)
        self.num = num
        self.den = den

    @classmethod
    def from_fraction(cls, x) -> "DeltaRational":
        x = Fraction(x)
        return cls(DeltaPoly.const(x.numerator), DeltaPoly.const(x.denominator), _reduced=True)

    @classmethod
    def delta(cls) -> "DeltaRational":
        return cls(DeltaPoly.delta(), DeltaPoly.const(1), _reduced=True)

    def _coerce(self, other):
        if isinstance(other, DeltaRational):
            return other
        if isinstance(other, (int, Fraction)):
            return DeltaRational.from_fraction(other)
        if isinstance(other, DeltaPoly):
            return DeltaRational(other, DeltaPoly.const(1), _reduced=True)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if not o.num.c:
            return self
        if not self.num.c:
            return o
        if self.den == o.den:
            return DeltaRational(self.num + o.num, self.den)
        return DeltaRational(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return DeltaRational(-self.num, self.den, _reduced=True)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if not self.num.c or not o.num.c:
            return DeltaRational(DeltaPoly(), DeltaPoly.const(1), _reduced=True)
        return DeltaRational(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def inverse(self) -> "DeltaRational":
        if not self.num.c:
            raise ZeroDivisionError("inverse of zero")
        return DeltaRational(self.den, self.num)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        out = DeltaRational(1)
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash(("DeltaRational", self.num.c, self.den.c))

    def __bool__(self):
        return bool(self.num.c)

    def is_polynomial(self) -> bool:
        return self.den.degree == 0 and abs(self.den.c[0]) == 1

    def to_poly(self) -> DeltaPoly:
        if not self.is_polynomial():
            raise NonPolynomialQuotient(f"{self} is not a polynomial")
        return self.num * self.den.c[0]

    def valuation(self) -> int:
        if not self.num.c:
            raise ValueError("valuation of zero")
        return self.num.valuation() - self.den.valuation()

    def evaluate(self, x) -> Fraction:
        d = self.den(x)
        if d == 0:
            raise PoleAtZero(f"{self} has a pole at δ={x}")
        return Fraction(self.num(x)) / d

    def at_zero(self) -> Fraction:
        return self.evaluate(0)

    def __repr__(self):
        return f"DeltaRational({self.num!r}, {self.den!r})"

    def __str__(self):
        if self.den == DeltaPoly.const(1):
            return str(self.num)
        return f"({self.num})/({self.den})"


def _normalize(num: DeltaPoly, den: DeltaPoly):
    if not num.c:
        return DeltaPoly(), DeltaPoly.const(1)
    if den.degree > 0 and num.degree > 0:
        g = poly_gcd(num, den)
        if g.degree > 0:
            num = num.divmod_exact(g)
            den = den.divmod_exact(g)
    h = gcd(num.content(), den.content())
    if den.c[-1] < 0:
        h = -h
    if h != 1:
        num = num.exact_div_int(h)
        den = den.exact_div_int(h)
    return num, den


# ------------------------------------------------------------ quantum numbers

@lru_cache(maxsize=None)
def quantum_int(n: int) -> DeltaPoly:
    """[n] in ℤ[δ] with [0]=0, [1]=1, [n+1] = δ[n] - [n-1]."""
    if n < 0:
        raise ValueError("quantum_int requires n >= 0")
    a, b = DeltaPoly(), DeltaPoly.const(1)
    d = DeltaPoly.delta()
    for _ in range(n):
        a, b = b, d * b - a
    return a


@lru_cache(maxsize=None)
def quantum_binom(n: int, k: int) -> DeltaPoly:
    """Quantum binomial, computed as a quotient of products then checked to be a polynomial."""
    if not 0 <= k <= n:
        raise ValueError("quantum_binom requires 0 <= k <= n")
    num = DeltaPoly.const(1)
    den = DeltaPoly.const(1)
    for i in range(k):
        num = num * quantum_int(n - i)
        den = den * quantum_int(k - i)
    # the denominator is monic, so exact integer long division decides
    # whether the reduced fraction has unit denominator
    try:
        return num.divmod_exact(den)
    except NonPolynomialQuotient:
        q = DeltaRational(num, den)
        if not q.is_polynomial():
            raise NonPolynomialQuotient(f"[{n} choose {k}] did not reduce to a polynomial")
        return q.to_poly()


def binom_at_zero_formula(n: int, k: int) -> int:
    """The four-case closed form for the δ=0 value of the quantum binomial."""
    a, r = divmod(n, 2)
    b, s = divmod(k, 2)
    if r == 0 and s == 0:
        return comb(a, b)
    if r == 1 and s == 0:
        return (-1) ** b * comb(a, b)
    if r == 0 and s == 1:
        return 0
    return (-1) ** (a + b) * comb(a, b)


def binom_spec_table(max_n: int) -> dict:
    """δ=0 values of all quantum binomials with 0 <= k <= n <= max_n."""
    return {(n, k): quantum_binom(n, k)(0) for n in range(max_n + 1) for k in range(n + 1)}


def gaussian_binom_at_i(u: int) -> list:
    """δ=0 quantum binomials [u choose t] read off ∏_{j<u}(1 + q^{2j} z) in ℤ[q]/(q²+1).

    Independent of the δ-recursion: arithmetic is in ℤ[i] as integer pairs.
    """
    def imul(x, y):
        return (x[0] * y[0] - x[1] * y[1], x[0] * y[1] + x[1] * y[0])

    def ipow(e):
        return [(1, 0), (0, 1), (-1, 0), (0, -1)][e % 4]

    coeffs = [(1, 0)]
    for j in range(u):
        w = ipow(2 * j)
        nxt = [(0, 0)] * (len(coeffs) + 1)
        for t, c in enumerate(coeffs):
            a = nxt[t]
            nxt[t] = (a[0] + c[0], a[1] + c[1])
            m = imul(c, w)
            b = nxt[t + 1]
            nxt[t + 1] = (b[0] + m[0], b[1] + m[1])
        coeffs = nxt
    out = []
    for t, c in enumerate(coeffs):
        # coefficient of z^t is i^{t(u-1)} [u choose t] at q=i
        val = imul(c, ipow(-t * (u - 1)))
        if val[1] != 0:
            raise ArithmeticError("non-real quantum binomial value at q=i")
        out.append(val[0])
    return out


# ------------------------------------------------------------------ reduction

class DeltaPolyModP:
    """Polynomial in δ over GF(p)."""

    __slots__ = ("c", "p")

    def __init__(self, coefficients: Iterable[int], p: int):
        self.p = p
        self.c = _trim(x % p for x in coefficients)

    def __eq__(self, other):
        if isinstance(other, DeltaPolyModP):
            return self.p == other.p and self.c == other.c
        return NotImplemented

    def __hash__(self):
        return hash((self.c, self.p))

    def __repr__(self):
        return f"DeltaPolyModP({list(self.c)}, {self.p})"


def reduce_mod_p(x: Union[int, Fraction, DeltaPoly], p: int):
    """Image of an integer, rational or integer polynomial in characteristic p."""
    if isinstance(x, DeltaPoly):
        return DeltaPolyModP(x.c, p)
    if isinstance(x, GF):
        if x.p != p:
            raise FieldMismatch(f"GF({x.p}) vs GF({p})")
        return x
    x = Fraction(x)
    if x.denominator % p == 0:
        raise NonIntegralAtP(f"{x} is not integral at {p}")
    return GF(x.numerator * pow(x.denominator, -1, p), p)


def format_scalar(x) -> str:
    """Canonical string for a coefficient: "p/q" for rationals."""
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    if isinstance(x, GF):
        return str(x.v)
    return str(x)


def parse_rational(s: str) -> Fraction:
    return Fraction(s.strip())
