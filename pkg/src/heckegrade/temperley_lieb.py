"""Temperley-Lieb algebras, Jones-Wenzl projectors and degree functions.

Conventions
-----------
* ``multiply(x, y)`` stacks ``y`` on top of ``x``; closed loops evaluate to δ.
* Boundary points are tagged ``("b", i)`` or ``("t", j)``, 1-indexed left to right.
* ``rotate_ccw`` is the cyclic shift by one step along the boundary read as
  bottom left-to-right then top right-to-left.
* Coefficients at δ=0 in characteristic 0 are held modulo several 31-bit primes
  and reconstructed as fractions on output (each reconstruction is confirmed
  against an extra prime).
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from . import _tlcore as core
from .arith import (DeltaPoly, DeltaRational, format_scalar, quantum_binom, quantum_int)
from .errors import (ChiNotHomomorphism, ConfigurationAbsent, NonIntegralAtP, NotSquareProfile,
                     OddBoundary, PoleAtZero, ProfileMismatch, ProjectorMissing, SizeLimit)
from .grading import GradingGroup, GroupElement

MAX_STRANDS = 13

Point = Tuple[str, int]


def _check_size(n: int):
    if n > MAX_STRANDS:
        raise SizeLimit(f"n={n} exceeds the supported ceiling of {MAX_STRANDS} strands")


# ---------------------------------------------------------------- matchings

def _layer(nb: int, pt: Point) -> int:
    tag, i = pt
    return i - 1 if tag == "b" else nb + i - 1


def _point(nb: int, l: int) -> Point:
    return ("b", l + 1) if l < nb else ("t", l - nb + 1)


def _pkey(pt: Point):
    return (0 if pt[0] == "b" else 1, pt[1])


@dataclass(frozen=True)
class CrossinglessMatching:
    n_bottom: int
    n_top: int
    code: int

    @classmethod
    def from_arcs(cls, n_bottom: int, n_top: int, arcs: Iterable[Tuple[Point, Point]]) -> "CrossinglessMatching":
        if (n_bottom + n_top) % 2:
            raise OddBoundary("odd number of boundary points")
        n = n_bottom + n_top
        P = np.full(n, -1, dtype=np.int64)
        for a, b in arcs:
            la, lb = _layer(n_bottom, tuple(a)), _layer(n_bottom, tuple(b))
            if not (0 <= la < n and 0 <= lb < n) or la == lb or P[la] >= 0 or P[lb] >= 0:
                raise ValueError("arcs do not form a perfect matching")
            P[la], P[lb] = lb, la
        if (P < 0).any():
            raise ValueError("arcs do not form a perfect matching")
        l2c, _ = core.cyclic_maps(n_bottom, n_top)
        # balanced-parenthesis planarity test on the cyclic word
        word = sorted(range(n), key=lambda l: l2c[l])
        stack = []
        for l in word:
            if l2c[P[l]] > l2c[l]:
                stack.append(l)
            else:
                if not stack or stack.pop() != P[l]:
                    raise ValueError("arcs cross")
        code = int(core.codes_from_partners(P[None, :].astype(np.int8), n_bottom, n_top)[0])
        return cls(n_bottom, n_top, code)

    @classmethod
    def from_partner(cls, n_bottom: int, n_top: int, partner: Sequence[int]) -> "CrossinglessMatching":
        P = np.asarray(partner, dtype=np.int8)[None, :]
        return cls(n_bottom, n_top, int(core.codes_from_partners(P, n_bottom, n_top)[0]))

    @classmethod
    def identity(cls, n: int) -> "CrossinglessMatching":
        return cls.from_partner(n, n, [n + i for i in range(n)] + list(range(n)))

    def partner(self) -> np.ndarray:
        return core.partners_from_codes(np.array([self.code], dtype=np.int64), self.n_bottom, self.n_top)[0]

    @property
    def arcs(self) -> Tuple[Tuple[Point, Point], ...]:
        P = self.partner()
        out = []
        for l in range(len(P)):
            if l < P[l]:
                out.append((_point(self.n_bottom, l), _point(self.n_bottom, int(P[l]))))
        return tuple(sorted(out, key=lambda arc: (_pkey(arc[0]), _pkey(arc[1]))))

    def sort_key(self):
        return tuple((_pkey(a), _pkey(b)) for a, b in self.arcs)

    def __repr__(self):
        body = " ".join(f"{a[0]}{a[1]}-{b[0]}{b[1]}" for a, b in self.arcs)
        return f"<{self.n_bottom}->{self.n_top}: {body}>"


def enumerate_matchings(n_bottom: int, n_top: int) -> List[CrossinglessMatching]:
    """All planar matchings, ordered lexicographically by arc list."""
    if (n_bottom + n_top) % 2:
        raise OddBoundary("odd number of boundary points")
    _check_size((n_bottom + n_top) // 2)
    b = core.basis(n_bottom, n_top)
    ms = [CrossinglessMatching(n_bottom, n_top, int(c)) for c in b.codes]
    return sorted(ms, key=CrossinglessMatching.sort_key)


# ---------------------------------------------------------------- rings

@lru_cache(maxsize=None)
def ring_at_zero(characteristic: int = 0) -> core.ModRing:
    return core.ModRing(characteristic)


@lru_cache(maxsize=None)
def ring_generic() -> core.ObjectRing:
    return core.ObjectRing(DeltaRational.delta(), DeltaRational(DeltaPoly.const(1)))


def ring_with_delta(delta) -> core.ObjectRing:
    """TL over ℚ with a specific loop value."""
    return core.ObjectRing(Fraction(delta), Fraction(1))


# ---------------------------------------------------------------- elements

class TLElement:
    """Linear combination of matchings of one profile.  Immutable."""

    __slots__ = ("n_bottom", "n_top", "ring", "codes", "coeffs", "_terms")

    def __init__(self, n_bottom, n_top, ring, codes, coeffs, _canonical=False):
        self.n_bottom, self.n_top, self.ring = n_bottom, n_top, ring
        if not _canonical:
            codes, coeffs = _combine(ring, np.asarray(codes, dtype=np.int64), coeffs)
        self.codes = codes
        self.coeffs = coeffs
        self._terms = None

    # construction -----------------------------------------------------
    @classmethod
    def zero(cls, n_bottom, n_top, ring):
        return cls(n_bottom, n_top, ring, np.zeros(0, dtype=np.int64), ring.zeros(0), True)

    @classmethod
    def from_terms(cls, n_bottom, n_top, ring, terms: Dict[CrossinglessMatching, object]):
        items = list(terms.items())
        for m, _ in items:
            if (m.n_bottom, m.n_top) != (n_bottom, n_top):
                raise ProfileMismatch("matching profile differs from element profile")
        codes = np.array([m.code for m, _ in items], dtype=np.int64)
        return cls(n_bottom, n_top, ring, codes, ring.from_scalars([c for _, c in items]))

    @classmethod
    def from_matching(cls, m: CrossinglessMatching, ring, coeff=1):
        return cls(m.n_bottom, m.n_top, ring, np.array([m.code], dtype=np.int64),
                   ring.from_scalars([coeff]))

    # access -----------------------------------------------------------
    def __len__(self):
        return len(self.codes)

    @property
    def terms(self) -> Dict[CrossinglessMatching, object]:
        if self._terms is None:
            vals = self.ring.to_scalars(self.coeffs)
            self._terms = {CrossinglessMatching(self.n_bottom, self.n_top, int(c)): v
                           for c, v in zip(self.codes.tolist(), vals)}
        return self._terms

    def coefficient(self, m: CrossinglessMatching):
        i = int(np.searchsorted(self.codes, m.code))
        if i < len(self.codes) and self.codes[i] == m.code:
            return self.ring.to_scalars(self.ring.take(self.coeffs, [i]))[0]
        return self.ring.to_scalars(self.ring.zeros(1))[0]

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: kv[0].sort_key())

    def partners(self) -> np.ndarray:
        return core.partners_from_codes(self.codes, self.n_bottom, self.n_top)

    def is_zero(self) -> bool:
        return len(self.codes) == 0

    # arithmetic -------------------------------------------------------
    def _same(self, other):
        if (self.n_bottom, self.n_top) != (other.n_bottom, other.n_top):
            raise ProfileMismatch("profiles differ")
        if self.ring != other.ring:
            raise ProfileMismatch("coefficient rings differ")

    def __add__(self, other):
        self._same(other)
        return TLElement(self.n_bottom, self.n_top, self.ring,
                         np.concatenate([self.codes, other.codes]),
                         self.ring.concat([self.coeffs, other.coeffs]))

    def __neg__(self):
        return TLElement(self.n_bottom, self.n_top, self.ring, self.codes, self.ring.neg(self.coeffs), True)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s):
        row = self.ring.from_scalar(s)
        return TLElement(self.n_bottom, self.n_top, self.ring, self.codes, _scale(self.ring, self.coeffs, row))

    def __mul__(self, other):
        if isinstance(other, TLElement):
            return multiply(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __eq__(self, other):
        if not isinstance(other, TLElement):
            return NotImplemented
        return (self - other).is_zero()

    def __hash__(self):
        return hash((self.n_bottom, self.n_top, self.codes.tobytes()))

    def __repr__(self):
        return f"TLElement({self.n_bottom}->{self.n_top}, {len(self)} terms)"

    # serialization ----------------------------------------------------
    def to_json(self) -> dict:
        ring = self.ring
        if isinstance(ring, core.ModRing):
            kind = {"delta": "0", "characteristic": ring.characteristic}
        else:
            kind = {"delta": "generic", "characteristic": 0}
        terms = []
        for m, c in self.sorted_terms():
            terms.append({"arcs": [[list(a), list(b)] for a, b in m.arcs], "coeff": _coeff_str(c)})
        return {"n_bottom": self.n_bottom, "n_top": self.n_top, **kind, "terms": terms}

    @classmethod
    def from_json(cls, data: dict) -> "TLElement":
        nb, nt = int(data["n_bottom"]), int(data["n_top"])
        if data["delta"] == "0":
            ring = ring_at_zero(int(data["characteristic"]))
            parse = Fraction
        else:
            ring = ring_generic()
            parse = _parse_delta_rational
        terms = {}
        for t in data["terms"]:
            m = CrossinglessMatching.from_arcs(nb, nt, [(tuple(a), tuple(b)) for a, b in t["arcs"]])
            terms[m] = parse(t["coeff"])
        return cls.from_terms(nb, nt, ring, terms)


def _coeff_str(c) -> str:
    if isinstance(c, DeltaRational):
        return json.dumps({"num": list(c.num.c), "den": list(c.den.c)}, separators=(",", ":"))
    return format_scalar(c)


def _parse_delta_rational(s: str) -> DeltaRational:
    d = json.loads(s)
    return DeltaRational(DeltaPoly(d["num"]), DeltaPoly(d["den"]))


def _scale(ring, coeffs, row):
    if isinstance(ring, core.ObjectRing):
        return ring._arr([x * row for x in coeffs])
    if isinstance(ring, core.SeriesRing):
        return ring.mul_const(coeffs, row)
    return ring.reduce(coeffs * row[None, :])


def _combine(ring, codes, coeffs):
    if len(codes) == 0:
        return codes, ring.zeros(0)
    order = np.argsort(codes, kind="stable")
    codes = codes[order]
    coeffs = ring.take(coeffs, order)
    starts = np.flatnonzero(np.concatenate([[True], codes[1:] != codes[:-1]]))
    sums = ring.segment_sum(coeffs, starts)
    ucodes = codes[starts]
    keep = ring.nonzero(sums)
    return ucodes[keep], ring.take(sums, np.flatnonzero(keep))


def identity(n: int, ring) -> TLElement:
    return TLElement.from_matching(CrossinglessMatching.identity(n), ring)


def e_matching(n: int, i: int) -> CrossinglessMatching:
    """The cup-cap generator e_i on n strands (1 <= i < n)."""
    if not 1 <= i < n:
        raise ValueError("e_i needs 1 <= i < n")
    P = [0] * (2 * n)
    for j in range(n):
        P[j], P[n + j] = n + j, j
    a, b = i - 1, i
    P[a], P[b] = b, a
    P[n + a], P[n + b] = n + b, n + a
    return CrossinglessMatching.from_partner(n, n, P)


def e(n: int, i: int, ring) -> TLElement:
    return TLElement.from_matching(e_matching(n, i), ring)


# ---------------------------------------------------------------- products

_PAIR_CHUNK = 4_000_000


def _raw_multiply(x: TLElement, y: TLElement) -> TLElement:
    ring = x.ring
    a, b, c = x.n_bottom, x.n_top, y.n_top
    if len(x) == 0 or len(y) == 0:
        return TLElement.zero(a, c, ring)
    PX, PY = x.partners(), y.partners()
    mx, my = len(x), len(y)
    delta_zero = ring.scalar_delta_zero()
    out_codes, out_coeffs = [], []
    rows_per_chunk = max(1, _PAIR_CHUNK // my)
    for s in range(0, mx, rows_per_chunk):
        xs = np.arange(s, min(mx, s + rows_per_chunk))
        I = np.repeat(xs, my)
        J = np.tile(np.arange(my), len(xs))
        codes, loops = core.compose(PX, I, PY, J, a, b, c)
        if delta_zero:
            keep = loops == 0
            I, J, codes, loops = I[keep], J[keep], codes[keep], loops[keep]
            if len(I) == 0:
                continue
        if my == 1:
            co = _scale(ring, ring.take(x.coeffs, I), ring.take(y.coeffs, [0])[0])
        else:
            co = ring.mul(ring.take(x.coeffs, I), ring.take(y.coeffs, J))
        if not delta_zero:
            co = ring.loop_factor(co, loops)
        out_codes.append(codes)
        out_coeffs.append(co)
    if not out_codes:
        return TLElement.zero(a, c, ring)
    return TLElement(a, c, ring, np.concatenate(out_codes), ring.concat(out_coeffs))


def _adjacent(P: np.ndarray, base: int, c: int) -> np.ndarray:
    """Rows whose points base+c-1, base+c (0-indexed layer) form an arc."""
    return P[:, base + c - 1] == base + c


def killers_from_below(y: TLElement) -> List[int]:
    """{c : e_c * y = 0}."""
    return [c for c in range(1, y.n_bottom) if _raw_multiply(e(y.n_bottom, c, y.ring), y).is_zero()]


def killers_from_above(x: TLElement) -> List[int]:
    """{c : x * e_c = 0}."""
    return [c for c in range(1, x.n_top) if _raw_multiply(x, e(x.n_top, c, x.ring)).is_zero()]


def _restrict(x: TLElement, keep: np.ndarray) -> TLElement:
    idx = np.flatnonzero(keep)
    return TLElement(x.n_bottom, x.n_top, x.ring, x.codes[idx], x.ring.take(x.coeffs, idx), True)


def multiply(x: TLElement, y: TLElement, prune: Optional[bool] = None) -> TLElement:
    """Stack y on top of x.

    With ``prune`` the product first discards terms of x carrying a top cup
    at a position c with e_c·y = 0, then terms of the reduced x-side's partner
    carrying a bottom cap at c with x'·e_c = 0.  Both discards are exact.
    """
    if x.n_top != y.n_bottom:
        raise ProfileMismatch(f"cannot stack {y.n_bottom}-point bottom on {x.n_top}-point top")
    if x.ring != y.ring:
        raise ProfileMismatch("coefficient rings differ")
    if prune is None:
        prune = len(x) * len(y) > 20000 and min(len(x), len(y)) > 1
    if prune:
        kb = killers_from_below(y)
        if kb:
            P = x.partners()
            drop = np.zeros(len(x), dtype=bool)
            for c in kb:
                drop |= _adjacent(P, x.n_bottom, c)
            x = _restrict(x, ~drop)
        if len(x) * len(y) > 20000:
            kt = killers_from_above(x)
            if kt:
                P = y.partners()
                drop = np.zeros(len(y), dtype=bool)
                for c in kt:
                    drop |= _adjacent(P, 0, c)
                y = _restrict(y, ~drop)
    return _raw_multiply(x, y)


def tensor_id(x: TLElement, k: int = 1) -> TLElement:
    """x ⊗ id_k: append k through strands on the right."""
    if k == 0:
        return x
    P = x.partners().astype(np.int64)
    a, b = x.n_bottom, x.n_top
    na, nb2 = a + k, b + k
    Q = np.empty((len(x), na + nb2), dtype=np.int64)
    # old bottom 0..a-1 stay, old top a+j -> na+j
    old = P.copy()
    mapped = np.where(old < a, old, old - a + na)
    Q[:, :a] = mapped[:, :a]
    Q[:, na:na + b] = mapped[:, a:a + b]
    for j in range(k):
        Q[:, a + j] = na + b + j
        Q[:, na + b + j] = a + j
    codes = core.codes_from_partners(Q.astype(np.int8), na, nb2)
    return TLElement(na, nb2, x.ring, codes, x.coeffs)


def flip(x: TLElement) -> TLElement:
    """Reflect top and bottom."""
    P = x.partners().astype(np.int64)
    a, b = x.n_bottom, x.n_top
    # new bottom = old top, new top = old bottom
    perm_old_to_new = np.concatenate([np.arange(a) + b, np.arange(b)])
    Q = np.empty_like(P)
    Q[:, perm_old_to_new] = perm_old_to_new[P]
    codes = core.codes_from_partners(Q.astype(np.int8), b, a)
    return TLElement(b, a, x.ring, codes, x.coeffs)


# ---------------------------------------------------------------- rotation

def _rotate_partners(P: np.ndarray, n: int, steps: int) -> np.ndarray:
    l2c, c2l = core.cyclic_maps(n, n)
    N = 2 * n
    s = steps % N
    cyc = l2c[P]                       # partner's cyclic position, indexed by layer
    newP = np.empty_like(P)
    src_layers = np.arange(N)
    dst_layers = c2l[(l2c[src_layers] + s) % N]
    newP[:, dst_layers] = c2l[(cyc + s) % N]
    return newP


def rotate_ccw(D, steps: int = 1):
    """Counterclockwise rotation by ``steps`` strands (negative for clockwise)."""
    if isinstance(D, TLElement):
        if D.n_bottom != D.n_top:
            raise NotSquareProfile("rotation needs a square profile")
        n = D.n_bottom
        P = _rotate_partners(D.partners().astype(np.int64), n, steps)
        return TLElement(n, n, D.ring, core.codes_from_partners(P.astype(np.int8), n, n), D.coeffs)
    if D.n_bottom != D.n_top:
        raise NotSquareProfile("rotation needs a square profile")
    n = D.n_bottom
    P = _rotate_partners(D.partner()[None, :].astype(np.int64), n, steps)
    return CrossinglessMatching.from_partner(n, n, P[0])


# ---------------------------------------------------------------- degrees

@dataclass(frozen=True)
class CupCapCounts:
    even_caps: int
    odd_caps: int
    even_cups: int
    odd_cups: int
    through: int


def _counts_from_partners(P: np.ndarray, nb: int):
    P = P.astype(np.int64)
    N = P.shape[1]
    idx = np.arange(N)
    caps = (idx[None, :] < nb) & (P < nb) & (P > idx[None, :])
    cups = (idx[None, :] >= nb) & (P > idx[None, :])
    through = ((idx[None, :] < nb) & (P >= nb)).sum(axis=1)
    odd_pos = ((idx % nb) % 2 == 0) if nb else np.zeros(N, dtype=bool)
    bot_odd = (idx[None, :] < nb) & ((idx[None, :]) % 2 == 0)
    top_odd = (idx[None, :] >= nb) & ((idx[None, :] - nb) % 2 == 0)
    del odd_pos
    return ((caps & ~bot_odd).sum(axis=1), (caps & bot_odd).sum(axis=1),
            (cups & ~top_odd).sum(axis=1), (cups & top_odd).sum(axis=1), through)


def classify_cups_caps(D: CrossinglessMatching) -> CupCapCounts:
    ec, oc, eu, ou, th = (int(v[0]) for v in _counts_from_partners(D.partner()[None, :], D.n_bottom))
    if D.n_bottom == D.n_top:
        assert ec + oc == eu + ou, "caps and cups must balance on a square profile"
    return CupCapCounts(ec, oc, eu, ou, th)


@dataclass(frozen=True)
class TwoColorDegreeData:
    group: GradingGroup
    f_s: GroupElement
    g_s: GroupElement
    f_t: GroupElement
    g_t: GroupElement

    @classmethod
    def symbolic(cls) -> "TwoColorDegreeData":
        """Free ℤ^4 on f_s, g_s, f_t, g_t."""
        grp = GradingGroup(4, names=["f_s", "g_s", "f_t", "g_t"])
        return cls(grp, grp.gen(0), grp.gen(1), grp.gen(2), grp.gen(3))

    @classmethod
    def symbolic_balanced(cls) -> "TwoColorDegreeData":
        """ℤ^4 modulo f_s + g_s = f_t + g_t."""
        grp = GradingGroup(4, [(1, 1, -1, -1)], names=["f_s", "g_s", "f_t", "g_t"])
        return cls(grp, grp.gen(0), grp.gen(1), grp.gen(2), grp.gen(3))


def _ab(counts):
    ec, oc, eu, ou, _ = counts
    return ec - ou, oc - eu


def degree(D: CrossinglessMatching, data: TwoColorDegreeData) -> GroupElement:
    A, B = _ab(_counts_from_partners(D.partner()[None, :], D.n_bottom))
    return (data.g_s - data.f_t) * int(A[0]) + (data.g_t - data.f_s) * int(B[0])


def degree_balanced_form(D: CrossinglessMatching, data: TwoColorDegreeData) -> GroupElement:
    """Single-difference form valid when f_s + g_s = f_t + g_t."""
    A, B = _ab(_counts_from_partners(D.partner()[None, :], D.n_bottom))
    return (data.g_s - data.f_t) * int(A[0] + B[0])


def degree_pairs(x: TLElement) -> np.ndarray:
    """(A, B) per term with deg = A(g_s - f_t) + B(g_t - f_s)."""
    A, B = _ab(_counts_from_partners(x.partners(), x.n_bottom))
    return np.stack([A, B], axis=1)


# ------------------------------------------------------------ cap moves

def _stack_at(P: np.ndarray, start: int, size: int) -> bool:
    """Bottom points start..start+2size-1 (0-indexed) form a nested stack."""
    return all(P[start + i] == start + 2 * size - 1 - i for i in range(size))


def _max_stack(P: np.ndarray, start: int, nb: int) -> int:
    size = 0
    for k in range(1, (nb - start) // 2 + 1):
        if _stack_at(P, start, k):
            size = k
    return size


def move_cap(D: CrossinglessMatching, x: int, y: int) -> CrossinglessMatching:
    """Bottom points 1..x are strands to top points 1..x, followed by a
    y-nested cap stack; move the stack to the far left, shifting the strands right."""
    nb = D.n_bottom
    P = D.partner().astype(np.int64)
    if x < 0 or y < 1 or x + 2 * y > nb:
        raise ConfigurationAbsent("stack does not fit")
    if not all(P[i] == nb + i for i in range(x)) or not _stack_at(P, x, y):
        raise ConfigurationAbsent("no left-end strands followed by a nested stack")
    perm = np.arange(len(P))
    for i in range(x):
        perm[i] = 2 * y + i
    for i in range(2 * y):
        perm[x + i] = i
    Q = np.empty_like(P)
    Q[perm] = perm[P]
    return CrossinglessMatching.from_partner(nb, D.n_top, Q)


def merge_caps(D: CrossinglessMatching, position: int, x: Optional[int] = None,
               y: Optional[int] = None) -> CrossinglessMatching:
    """Merge an x-stack starting at bottom ``position`` (1-indexed) with the
    y-stack immediately to its right into one (x+y)-stack."""
    nb = D.n_bottom
    P = D.partner().astype(np.int64)
    s = position - 1
    if x is None:
        x = _max_stack(P, s, nb)
    if x < 1 or not _stack_at(P, s, x):
        raise ConfigurationAbsent("no nested stack at the given position")
    t = s + 2 * x
    if y is None:
        y = _max_stack(P, t, nb) if t < nb else 0
    if y < 1 or t + 2 * y > nb or not _stack_at(P, t, y):
        raise ConfigurationAbsent("no neighbouring stack to merge")
    Q = P.copy()
    w = x + y
    for i in range(w):
        a, b = s + i, s + 2 * w - 1 - i
        Q[a], Q[b] = b, a
    return CrossinglessMatching.from_partner(nb, D.n_top, Q)


# ---------------------------------------------------------------- JW: recursion

def _wenzl_step(J: TLElement, ratio_row):
    """JW_{k+1} = X - ([k]/[k+1]) X e_k X with X = JW_k ⊗ 1.

    Only terms D of JW_k without a bottom cap inside points 1..k-1 survive in
    X e_k (D ⊗ 1): the identity, and diagrams whose only bottom cap is (k-1, k).
    Returns the new projector plus per-survivor data (coefficient row, loops).
    """
    ring = J.ring
    k = J.n_bottom
    X = tensor_id(J, 1)
    P = J.partners().astype(np.int64)
    through = P[:, :k] >= k
    is_id = through.all(axis=1)
    if k >= 2:
        cap_last = (P[:, k - 2] == k - 1) & through[:, :max(k - 2, 0)].all(axis=1)
    else:
        cap_last = np.zeros(len(J), dtype=bool)
    surv = np.flatnonzero(is_id | cap_last)
    ek = e_matching(k + 1, k)
    ek_p = ek.partner()[None, :]
    D1 = tensor_id(_restrict(J, np.isin(np.arange(len(J)), surv)), 1)
    zcodes, zloops = core.compose(ek_p, np.zeros(len(D1), dtype=np.int64), D1.partners(),
                                  np.arange(len(D1)), k + 1, k + 1, k + 1)
    terms = []
    info = []
    for i in range(len(D1)):
        c_row = ring.take(D1.coeffs, [i])
        s_row = _scale(ring, c_row, ratio_row)
        s_row = ring.loop_factor(s_row, zloops[i:i + 1])
        if not ring.nonzero(s_row)[0]:
            continue
        Z = TLElement(k + 1, k + 1, ring, zcodes[i:i + 1], s_row, True)
        terms.append(_raw_multiply(X, Z))
        info.append((c_row[0], int(zloops[i])))
    total = _sum_all(terms, k + 1, ring)
    return X - total, info


def _sum_all(elements: List[TLElement], n: int, ring) -> TLElement:
    if not elements:
        return TLElement.zero(n, n, ring)
    return TLElement(n, n, ring, np.concatenate([t.codes for t in elements]),
                     ring.concat([t.coeffs for t in elements]))


def _kill_check(J: TLElement) -> bool:
    n = J.n_bottom
    return all(_raw_multiply(e(n, i, J.ring), J).is_zero() for i in range(1, n))


@lru_cache(maxsize=None)
def jw_generic(n: int, verify: bool = True) -> TLElement:
    """Jones-Wenzl projector over ℚ(δ) by the one-step recursion."""
    if n < 1:
        raise ValueError("n must be >= 1")
    _check_size(n)
    ring = ring_generic()
    J = identity(1, ring)
    for k in range(1, n):
        r = DeltaRational(quantum_int(k)) / DeltaRational(quantum_int(k + 1))
        J, _ = _wenzl_step(J, r)
    if verify:
        assert _kill_check(J), "generic projector is not killed by caps"
    return J


# ------------------------------------------------------ JW at δ=0 via series

_SERIES_OFFSET = 3


def _series_projector(n: int, p: int, length: int):
    """JW_n as truncated Laurent series mod p with certified absolute precision."""
    ring = core.SeriesRing(p, length, _SERIES_OFFSET)
    cap = length - _SERIES_OFFSET
    J = identity(1, ring)
    prec = cap
    for k in range(1, n):
        r = DeltaRational(quantum_int(k)) / DeltaRational(quantum_int(k + 1))
        r_row = ring.from_delta_rational(r)
        v_r = r.valuation()
        val_X = min(ring.valuation(J.coeffs), prec)
        J_next, info = _wenzl_step(J, r_row)
        new_prec = min(prec, cap)
        for c_row, loops in info:
            val_c = min(ring.valuation(c_row[None, :]), prec)
            val_s = v_r + val_c + loops
            if v_r + val_c < -_SERIES_OFFSET or val_X + val_s < -_SERIES_OFFSET:
                raise ArithmeticError("series window underflow")
            prec_s = min(cap + val_c, prec + v_r) + loops
            new_prec = min(new_prec, prec + val_s, prec_s + val_X)
        J, prec = J_next, new_prec
    return J, prec


def _exact_values_at_zero(n: int):
    """Codes and exact rational δ^0 coefficients of JW_n; raises PoleAtZero.

    Runs the series recursion modulo a few primes, then reconstructs each
    distinct coefficient from all but the last prime and confirms it against
    the last one.  More primes are added if reconstruction fails.
    """
    o = _SERIES_OFFSET
    length = max(n + 2, _SERIES_OFFSET + 4)
    results = []
    for nprimes in (3, 6, 12):
        while len(results) < nprimes:
            p = core.SERIES_PRIMES[len(results)]
            J, prec = _series_projector(n, p, length)
            if prec < 1:
                length += 4
                results = []
                continue
            if np.any(J.coeffs[:, :o] != 0):
                raise PoleAtZero(f"JW_{n} has a pole at δ=0")
            results.append(J)
        allcodes = np.unique(np.concatenate([J.codes for J in results]))
        mat = np.zeros((len(allcodes), len(results)), dtype=np.int64)
        for j, J in enumerate(results):
            mat[np.searchsorted(allcodes, J.codes), j] = J.coeffs[:, o]
        keep = np.any(mat != 0, axis=1)
        allcodes, mat = allcodes[keep], mat[keep]
        primes = [J.ring.p for J in results]
        uniq, inv = np.unique(mat, axis=0, return_inverse=True)
        vals = []
        for row in uniq:
            x, m = core.crt(row[:-1], primes[:-1])
            q = core.rational_reconstruct(x, m)
            if q is None or (q.numerator - int(row[-1]) * q.denominator) % primes[-1]:
                break
            vals.append(q)
        else:
            return allcodes, vals, np.asarray(inv).reshape(-1)
    raise ArithmeticError("rational reconstruction of JW coefficients failed")


@lru_cache(maxsize=None)
def _jw_zero_exact(n: int):
    return _exact_values_at_zero(n)


@lru_cache(maxsize=None)
def jw_at_zero(n: int, characteristic: int = 0) -> TLElement:
    """JW_n specialized at δ=0 (and reduced mod p when characteristic > 0).

    Raises PoleAtZero if a generic coefficient has a pole at 0 and
    NonIntegralAtP if a δ=0 value has denominator divisible by p.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    _check_size(n)
    codes, vals, inv = _jw_zero_exact(n)
    ring = ring_at_zero(characteristic)
    if characteristic:
        for v in vals:
            if v.denominator % characteristic == 0:
                raise NonIntegralAtP(f"JW_{n} has a coefficient {v} not integral at {characteristic}")
    rows = ring.from_scalars(vals)[inv] if vals else ring.zeros(0)
    return TLElement(n, n, ring, codes, rows)


def projector(n: int, characteristic: int = 0) -> TLElement:
    """jw_at_zero with failures mapped to ProjectorMissing."""
    try:
        return jw_at_zero(n, characteristic)
    except (PoleAtZero, NonIntegralAtP) as exc:
        raise ProjectorMissing(str(exc)) from exc


def is_rotation_invariant(x: TLElement) -> bool:
    return rotate_ccw(x) == x


def is_idempotent(x: TLElement) -> bool:
    return multiply(x, x) == x


# ---------------------------------------------------------- partial traces

def partial_trace(x: TLElement, k: int) -> TLElement:
    n = x.n_bottom
    if x.n_top != n:
        raise NotSquareProfile("partial trace needs a square profile")
    if not 0 <= k <= n:
        raise ValueError("cannot close more strands than present")
    codes, loops = core.partial_trace(x.partners(), n, k)
    co = x.coeffs
    ring = x.ring
    if ring.scalar_delta_zero():
        keep = np.flatnonzero(loops == 0)
        codes, co = codes[keep], ring.take(co, keep)
    else:
        co = ring.loop_factor(co, loops)
    return TLElement(n - k, n - k, ring, codes, co)


def identity_coefficient(x: TLElement):
    return x.coefficient(CrossinglessMatching.identity(x.n_bottom))


def partial_trace_scalars(n: int, characteristic: int = 0, jw: Optional[TLElement] = None):
    """(p1, p2): identity coefficients of the one- and two-strand partial traces of JW_n."""
    J = jw if jw is not None else projector(n, characteristic)
    p1 = identity_coefficient(partial_trace(J, 1))
    p2 = identity_coefficient(partial_trace(J, 2)) if n >= 2 else None
    return p1, p2


# ---------------------------------------------------------------- E_i, two-step

def _m1(n: int) -> CrossinglessMatching:
    """Strands i -> i for i < n, bottom n -> top n+2, cap (n+1, n+2), cup (n, n+1)."""
    N = n + 2
    arcs = [(("b", i), ("t", i)) for i in range(1, n)]
    arcs += [(("b", n), ("t", n + 2)), (("b", n + 1), ("b", n + 2)), (("t", n), ("t", n + 1))]
    return CrossinglessMatching.from_arcs(N, N, arcs)


def _m3(n: int) -> CrossinglessMatching:
    N = n + 2
    arcs = [(("b", i), ("t", i)) for i in range(1, n - 1)]
    arcs += [(("b", n - 1), ("b", n + 2)), (("b", n), ("b", n + 1)),
             (("t", n - 1), ("t", n + 2)), (("t", n), ("t", n + 1))]
    return CrossinglessMatching.from_arcs(N, N, arcs)


def build_E(n: int, i: int, jw: Optional[TLElement] = None) -> TLElement:
    """E_i^{(n)} in TL_{n+2}(0), char 0, built from JW_n boxes."""
    if n % 2 == 0 or n < 1:
        raise ValueError("n must be odd and positive")
    if i == 3 and n < 3:
        raise ValueError("E_3 needs n >= 3")
    _check_size(n + 2)
    J = jw if jw is not None else projector(n, 0)
    ring = J.ring
    X = tensor_id(J, 2)
    if i == 0:
        return X
    if i == 1:
        M = TLElement.from_matching(_m1(n), ring)
    elif i == 2:
        M = flip(TLElement.from_matching(_m1(n), ring))
    elif i == 3:
        M = TLElement.from_matching(_m3(n), ring)
    else:
        raise ValueError("i must be 0, 1, 2 or 3")
    return multiply(multiply(X, M), X, prune=True)


def jw_two_step(n_plus_2: int, return_chain: bool = False):
    """JW_{n+2} = E0 - E1 - E2 - (1/p2^{(n)}) E3 iterated from JW_1 (char 0, δ=0)."""
    if n_plus_2 % 2 == 0 or n_plus_2 < 3:
        raise ValueError("n_plus_2 must be odd and >= 3")
    _check_size(n_plus_2)
    ring = ring_at_zero(0)
    J = identity(1, ring)
    chain = {1: J}
    for n in range(1, n_plus_2 - 1, 2):
        E0 = build_E(n, 0, J)
        nxt = E0 - build_E(n, 1, J) - build_E(n, 2, J)
        if n >= 3:
            p2 = identity_coefficient(partial_trace(J, 2))
            nxt = nxt - build_E(n, 3, J).scale(Fraction(1) / p2)
        J = nxt
        chain[n + 2] = J
    return chain if return_chain else J


@dataclass
class DecompositionReport:
    n: int
    sums_to_E0: bool
    idempotent: List[bool]
    orthogonal: bool

    @property
    def ok(self) -> bool:
        return self.sums_to_E0 and all(self.idempotent) and self.orthogonal


def decomposition_check(n: int) -> DecompositionReport:
    """E0 = JW_{n+2} + E1 + E2 + E3/p2 as a sum of orthogonal idempotents (n odd)."""
    J = projector(n, 0)
    big = projector(n + 2, 0)
    E = [build_E(n, i, J) for i in range(4 if n >= 3 else 3)]
    parts = [big, E[1], E[2]]
    if n >= 3:
        p2 = identity_coefficient(partial_trace(J, 2))
        parts.append(E[3].scale(Fraction(1) / p2))
    total = parts[0]
    for part in parts[1:]:
        total = total + part
    idem = [is_idempotent(part) for part in parts]
    orth = all(multiply(parts[i], parts[j], prune=True).is_zero()
               for i in range(len(parts)) for j in range(len(parts)) if i != j)
    return DecompositionReport(n, total == E[0], idem, orth)


# ---------------------------------------------------------------- checks

@dataclass
class HomogeneityReport:
    n: int
    characteristic: int
    homogeneous: bool
    violators: List[Tuple[CrossinglessMatching, object, GroupElement]]
    term_count: int

    def lines(self) -> List[str]:
        out = [f"JW_{self.n} char {self.characteristic}: {self.term_count} terms"]
        for m, c, d in self.violators[:20]:
            out.append(f"  violator {m!r} coeff {format_scalar(c)} degree {list(d.vector())}")
        out.append("verdict: " + ("homogeneous" if self.homogeneous else "NOT homogeneous"))
        return out


def check_jw_homogeneity(n: int, characteristic: int, data: TwoColorDegreeData) -> HomogeneityReport:
    J = projector(n, characteristic)
    pairs = degree_pairs(J)
    uniq, inv = np.unique(pairs, axis=0, return_inverse=True)
    inv = np.asarray(inv).reshape(-1)
    degs = [(data.g_s - data.f_t) * int(a) + (data.g_t - data.f_s) * int(b) for a, b in uniq]
    bad_classes = {i for i, d in enumerate(degs) if not d.is_zero()}
    violators = []
    if bad_classes:
        vals = J.ring.to_scalars(J.coeffs)
        for j in np.flatnonzero(np.isin(inv, list(bad_classes))):
            violators.append((CrossinglessMatching(n, n, int(J.codes[j])), vals[j], degs[inv[j]]))
    return HomogeneityReport(n, characteristic, not violators, violators, len(J))


@dataclass
class RatioReport:
    n: int
    checked_generic: int
    checked_zero: int
    failures: List[str]
    zero_merges: int = 0

    @property
    def ok(self) -> bool:
        return not self.failures


def _ratio_pairs(n: int):
    """(D, D', x, y): D has strands b_i -> t_i (i <= x) then a y-stack; D' = move_cap(D)."""
    out = []
    for D in enumerate_matchings(n, n):
        P = D.partner()
        x = 0
        while x < n and P[x] == n + x:
            x += 1
            for y in range(1, (n - x) // 2 + 1):
                if _stack_at(P, x, y):
                    out.append((D, move_cap(D, x, y), x, y))
    return out


def coeff_ratio_check(n: int, generic: bool = True, at_zero: bool = True) -> RatioReport:
    """coeff(D) = (-1)^{xy} [x+y, x] coeff(D') on every applicable pair."""
    pairs = _ratio_pairs(n)
    failures = []
    cg = cz = zm = 0
    if generic:
        J = jw_generic(n)
        terms = J.terms
        zero = DeltaRational(DeltaPoly())
        for D, D2, x, y in pairs:
            lhs = terms.get(D, zero)
            rhs = DeltaRational(quantum_binom(x + y, x)) * terms.get(D2, zero)
            if (x * y) % 2:
                rhs = -rhs
            cg += 1
            if lhs != rhs:
                failures.append(f"generic n={n} x={x} y={y} {D!r}")
    if at_zero and n % 2 == 1:
        J0 = projector(n, 0)
        terms0 = J0.terms
        for D, D2, x, y in pairs:
            lhs = terms0.get(D, Fraction(0))
            b = quantum_binom(x + y, x)(0)
            rhs = (-1) ** (x * y) * b * terms0.get(D2, Fraction(0))
            cz += 1
            if x % 2 and y % 2:
                zm += 1
                if lhs != 0:
                    failures.append(f"zero-merge n={n} x={x} y={y} {D!r}")
            if lhs != rhs:
                failures.append(f"at zero n={n} x={x} y={y} {D!r}")
    return RatioReport(n, cg, cz, failures, zm)


# ---------------------------------------------------------------- rescaling

def _chi_value(chi: Dict[int, object], group: GradingGroup, d: GroupElement, one):
    out = one
    for i, c in enumerate(d.vector()):
        if c:
            out = out * (chi[i] ** c)
    return out


def check_character(chi: Dict[int, object], group: GradingGroup, one=Fraction(1)):
    for i in range(group.rank):
        if i not in chi or chi[i] == 0:
            raise ChiNotHomomorphism(f"chi undefined or zero on generator {i}")
    for col in group.relations:
        val = one
        for i, c in enumerate(col):
            if c:
                val = val * (chi[i] ** c)
        if val != one:
            raise ChiNotHomomorphism("chi does not vanish on a relation")


def theta_rescale(x: TLElement, data: TwoColorDegreeData, chi: Dict[int, object]) -> TLElement:
    """Multiply each diagram's coefficient by chi(deg D); chi is given on group generators."""
    check_character(chi, data.group)
    pairs = degree_pairs(x)
    uniq, inv = np.unique(pairs, axis=0, return_inverse=True) if len(pairs) else (np.zeros((0, 2)), np.zeros(0))
    inv = np.asarray(inv).reshape(-1).astype(np.int64)
    factors = []
    for a, b in uniq:
        d = (data.g_s - data.f_t) * int(a) + (data.g_t - data.f_s) * int(b)
        factors.append(_chi_value(chi, data.group, d, Fraction(1)))
    ring = x.ring
    rows = ring.from_scalars(factors)
    if not len(x):
        return x
    if isinstance(ring, core.ObjectRing):
        new = ring._arr([c * factors[i] for c, i in zip(x.coeffs, inv)])
    else:
        new = ring.reduce(x.coeffs * rows[inv])
    return TLElement(x.n_bottom, x.n_top, ring, x.codes, new)


def frobenius_character(q) -> Dict[int, object]:
    """Character of the bigrading ℤ² with (1,0) -> q^{-1}, (0,1) -> 1."""
    return {0: Fraction(1) / q, 1: Fraction(1)}


# ---------------------------------------------------------------- corner algebra

@dataclass
class CornerReport:
    n: int
    dimension: int
    nilpotent_square_zero: bool
    identity_is_y: bool

    @property
    def ok(self) -> bool:
        return self.dimension == 2 and self.nilpotent_square_zero and self.identity_is_y


def _rank(vectors: List[Dict[int, Fraction]]) -> int:
    rows = [dict(v) for v in vectors if v]
    rank = 0
    pivots: List[Tuple[int, Dict[int, Fraction]]] = []
    for v in rows:
        v = dict(v)
        for key, pv in pivots:
            if key in v:
                f = v[key] / pv[key]
                for k2, c in pv.items():
                    v[k2] = v.get(k2, 0) - f * c
                    if v[k2] == 0:
                        del v[k2]
        if v:
            key = min(v)
            pivots.append((key, v))
            rank += 1
    return rank


def y_idempotent_check(n: int) -> CornerReport:
    if n % 2 == 0:
        raise ValueError("n must be odd")
    J = projector(n, 0)
    y = tensor_id(J, 1)
    vecs = []
    for D in enumerate_matchings(n + 1, n + 1):
        t = multiply(multiply(y, TLElement.from_matching(D, y.ring)), y, prune=True)
        vecs.append({int(c): v for c, v in zip(t.codes.tolist(), y.ring.to_scalars(t.coeffs))})
    dim = _rank(vecs)
    x = multiply(multiply(y, e(n + 1, n, y.ring)), y, prune=True)
    nil = (not x.is_zero()) and multiply(x, x, prune=True).is_zero()
    idem = multiply(y, y, prune=True) == y
    return CornerReport(n, dim, nil, idem)
