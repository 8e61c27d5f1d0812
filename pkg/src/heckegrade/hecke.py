"""Hecke algebras with unequal parameters over a group algebra ℤ[A].

Standard basis δ_w, right and left multiplication by δ_s and b_s = δ_s + v_s,
Bott-Samelson products, the Deodhar defect expansion, the bar involution,
graded ranks of double-leaves Hom spaces, and rescaled generators.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Dict, List, Mapping, Optional, Sequence, Tuple

from .coxeter import (CoxeterSystem, _check_len, defect_A,
                      iter_subexpressions)
from .errors import NoBarInvolution
from .grading import INF, BarInvolution, GradingGroup, GradingSpec, GroupElement, vertex_degree

Coords = Tuple[int, ...]


# ------------------------------------------------------------ ℤ[A]

class GroupAlgebraElement:
    """Finite ℤ-combination of group elements, keyed by normal-form coordinates."""

    __slots__ = ("group", "terms")

    def __init__(self, group: GradingGroup, terms: Optional[Mapping[Coords, int]] = None):
        self.group = group
        self.terms: Dict[Coords, int] = {k: v for k, v in (terms or {}).items() if v}

    @classmethod
    def zero(cls, group: GradingGroup) -> "GroupAlgebraElement":
        return cls(group)

    @classmethod
    def one(cls, group: GradingGroup) -> "GroupAlgebraElement":
        return cls(group, {group.zero().coords: 1})

    @classmethod
    def monomial(cls, elem: GroupElement, coeff: int = 1) -> "GroupAlgebraElement":
        return cls(elem.group, {elem.coords: coeff})

    def _lift_other(self, other) -> "GroupAlgebraElement":
        if isinstance(other, GroupAlgebraElement):
            return other
        if isinstance(other, int):
            return GroupAlgebraElement(self.group, {self.group.zero().coords: other})
        raise TypeError(f"cannot combine with {type(other).__name__}")

    def __add__(self, other):
        other = self._lift_other(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return GroupAlgebraElement(self.group, out)

    __radd__ = __add__

    def __neg__(self):
        return GroupAlgebraElement(self.group, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift_other(other))

    def __rsub__(self, other):
        return self._lift_other(other) - self

    def __mul__(self, other):
        if isinstance(other, int):
            return GroupAlgebraElement(self.group, {k: v * other for k, v in self.terms.items()})
        other = self._lift_other(other)
        red = self.group.reduce
        out: Dict[Coords, int] = {}
        for a, x in self.terms.items():
            for b, y in other.terms.items():
                k = red([i + j for i, j in zip(a, b)])
                out[k] = out.get(k, 0) + x * y
        return GroupAlgebraElement(self.group, out)

    __rmul__ = __mul__

    def shift(self, coords: Coords) -> "GroupAlgebraElement":
        red = self.group.reduce
        return GroupAlgebraElement(self.group, {red([i + j for i, j in zip(a, coords)]): v
                                                for a, v in self.terms.items()})

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if isinstance(other, int):
            other = self._lift_other(other)
        if not isinstance(other, GroupAlgebraElement):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def map_exponents(self, func: Callable[[GroupElement], GroupElement],
                      target: Optional[GradingGroup] = None) -> "GroupAlgebraElement":
        """Push forward along a group homomorphism given on elements."""
        out: Dict[Coords, int] = {}
        tgt = target
        for a, v in self.terms.items():
            img = func(GroupElement(self.group, a))
            tgt = img.group
            out[img.coords] = out.get(img.coords, 0) + v
        return GroupAlgebraElement(tgt if tgt is not None else self.group, out)

    def bar(self, inv: BarInvolution) -> "GroupAlgebraElement":
        return self.map_exponents(inv)

    def negated_bar(self, inv: BarInvolution) -> "GroupAlgebraElement":
        """v^a ↦ v^{-bar(a)}."""
        return self.map_exponents(lambda x: -inv(x))

    def sorted_items(self) -> List[Tuple[Tuple[int, ...], int]]:
        g = self.group
        return sorted((g.lift(a), v) for a, v in self.terms.items())

    def is_monomial(self) -> bool:
        return len(self.terms) == 1 and next(iter(self.terms.values())) == 1

    def to_json(self):
        return [[list(vec), c] for vec, c in self.sorted_items()]

    @classmethod
    def from_json(cls, group: GradingGroup, data) -> "GroupAlgebraElement":
        out: Dict[Coords, int] = {}
        for vec, c in data:
            k = group.element(vec).coords
            out[k] = out.get(k, 0) + int(c)
        return cls(group, out)

    def format(self, var: str = "v") -> str:
        if not self.terms:
            return "0"
        parts = []
        for vec, c in self.sorted_items():
            if not any(vec):
                mono = ""
            elif len(vec) == 1:
                mono = f"{var}^{vec[0]}" if vec[0] != 1 else var
            else:
                mono = f"{var}^({','.join(map(str, vec))})"
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"GroupAlgebraElement({self.format()})"


# ------------------------------------------------------------ parameters

class ParameterMap:
    """s ↦ L(1_s) ∈ A, i.e. v_s = v^{L(1_s)}; constant on conjugacy classes of generators."""

    def __init__(self, system: CoxeterSystem, group: GradingGroup, params: Mapping[int, GroupElement]):
        self.system = system
        self.group = group
        self.params = {s: params[s] for s in system.generators}
        self.classes = system.uneq_classes()
        for cls in self.classes:
            vals = {self.params[s] for s in cls}
            if len(vals) > 1:
                names = ", ".join(f"s{s + 1}" for s in sorted(cls))
                raise ValueError(f"parameters differ on the conjugate generators {names}")
        self.class_values = [self.params[min(c)] for c in self.classes]

    @classmethod
    def equal(cls, system: CoxeterSystem) -> "ParameterMap":
        grp = GradingGroup(1, names=["v"])
        return cls(system, grp, {s: grp.gen(0) for s in system.generators})

    @classmethod
    def free(cls, system: CoxeterSystem) -> "ParameterMap":
        """One free parameter per conjugacy class."""
        classes = system.uneq_classes()
        grp = GradingGroup(len(classes), names=[f"v{min(c) + 1}" for c in classes])
        return cls(system, grp, {s: grp.gen(i) for i, c in enumerate(classes) for s in c})

    def exponent(self, defect: Sequence[int]) -> GroupElement:
        out = self.group.zero()
        for d, val in zip(defect, self.class_values):
            if d:
                out = out + val * d
        return out


# ------------------------------------------------------------ Hecke algebra

class HeckeAlgebra:
    def __init__(self, params: ParameterMap):
        self.params = params
        self.system = params.system
        self.group = params.group
        one = GroupAlgebraElement.one(self.group)
        self.one = one
        self.v = {s: GroupAlgebraElement.monomial(params.params[s]) for s in self.system.generators}
        self.vinv = {s: GroupAlgebraElement.monomial(-params.params[s]) for s in self.system.generators}
        self.p = {s: self.vinv[s] - self.v[s] for s in self.system.generators}
        self._bar_cache: Dict[object, HeckeElement] = {}

    def zero(self) -> "HeckeElement":
        return HeckeElement(self, {})

    def delta(self, w, coeff=None) -> "HeckeElement":
        return HeckeElement(self, {w: coeff if coeff is not None else self.one})

    def delta_word(self, word: Sequence[int]) -> "HeckeElement":
        return self.delta(self.system.from_word(word))

    def unit(self) -> "HeckeElement":
        return self.delta(self.system.identity())

    def b(self, s: int) -> "HeckeElement":
        return mult_b_s(self.unit(), s)

    def scalar(self, c) -> GroupAlgebraElement:
        if isinstance(c, GroupAlgebraElement):
            return c
        if isinstance(c, GroupElement):
            return GroupAlgebraElement.monomial(c)
        return GroupAlgebraElement(self.group, {self.group.zero().coords: int(c)})


class HeckeElement:
    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: HeckeAlgebra, terms: Mapping[object, GroupAlgebraElement]):
        self.algebra = algebra
        self.terms = {w: c for w, c in terms.items() if not c.is_zero()}

    def coefficient(self, w) -> GroupAlgebraElement:
        return self.terms.get(w, GroupAlgebraElement.zero(self.algebra.group))

    def sorted_terms(self):
        key = self.algebra.system.sort_key
        return sorted(self.terms.items(), key=lambda kv: key(kv[0]))

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "HeckeElement") -> "HeckeElement":
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out[w] + c if w in out else c
        return HeckeElement(self.algebra, out)

    def __neg__(self):
        return HeckeElement(self.algebra, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "HeckeElement":
        c = self.algebra.scalar(c)
        return HeckeElement(self.algebra, {w: c * x for w, x in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, HeckeElement):
            return multiply(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __eq__(self, other):
        if not isinstance(other, HeckeElement):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def top(self):
        """(element, coefficient) of maximal length; ties broken by the sort key."""
        return self.sorted_terms()[-1] if self.terms else None

    def map_coefficients(self, algebra: HeckeAlgebra, func: Callable[[GroupAlgebraElement], GroupAlgebraElement]):
        return HeckeElement(algebra, {w: func(c) for w, c in self.terms.items()})

    def to_json(self):
        sys_ = self.algebra.system
        return [[sys_.word_string(w), c.to_json()] for w, c in self.sorted_terms()]

    @classmethod
    def from_json(cls, algebra: HeckeAlgebra, data) -> "HeckeElement":
        from .coxeter import parse_expression
        out: Dict[object, GroupAlgebraElement] = {}
        for word, coeffs in data:
            w = algebra.system.from_word(parse_expression(word.replace(".", ",")))
            c = GroupAlgebraElement.from_json(algebra.group, coeffs)
            out[w] = out[w] + c if w in out else c
        return cls(algebra, out)

    def format(self, var: str = "v") -> str:
        if not self.terms:
            return "0"
        sys_ = self.algebra.system
        parts = []
        for w, c in self.sorted_terms():
            name = sys_.word_string(w) or "e"
            parts.append(f"({c.format(var)})*d[{name}]")
        return " + ".join(parts)

    def __repr__(self):
        return f"HeckeElement({self.format()})"


def _accumulate(out: Dict, w, c: GroupAlgebraElement):
    if w in out:
        out[w] = out[w] + c
    else:
        out[w] = c


def mult_delta_s(h: HeckeElement, s: int) -> HeckeElement:
    """h·δ_s."""
    alg = h.algebra
    sys_ = alg.system
    out: Dict = {}
    for w, c in h.terms.items():
        ws = sys_.mul_gen(w, s)
        _accumulate(out, ws, c)
        if sys_.right_descent(w, s):
            _accumulate(out, w, c * alg.p[s])
    return HeckeElement(alg, out)


def left_mult_delta_s(s: int, h: HeckeElement) -> HeckeElement:
    """δ_s·h."""
    alg = h.algebra
    sys_ = alg.system
    out: Dict = {}
    for w, c in h.terms.items():
        _accumulate(out, sys_.gen_mul(s, w), c)
        if sys_.left_descent(w, s):
            _accumulate(out, w, c * alg.p[s])
    return HeckeElement(alg, out)


def mult_b_s(h: HeckeElement, s: int) -> HeckeElement:
    """h·b_s via δ_w b_s = δ_{ws} + v_s^{±1} δ_w."""
    alg = h.algebra
    sys_ = alg.system
    out: Dict = {}
    for w, c in h.terms.items():
        _accumulate(out, sys_.mul_gen(w, s), c)
        f = alg.vinv[s] if sys_.right_descent(w, s) else alg.v[s]
        _accumulate(out, w, c * f)
    return HeckeElement(alg, out)


def left_mult_b_s(s: int, h: HeckeElement) -> HeckeElement:
    alg = h.algebra
    sys_ = alg.system
    out: Dict = {}
    for w, c in h.terms.items():
        _accumulate(out, sys_.gen_mul(s, w), c)
        f = alg.vinv[s] if sys_.left_descent(w, s) else alg.v[s]
        _accumulate(out, w, c * f)
    return HeckeElement(alg, out)


def multiply(x: HeckeElement, y: HeckeElement) -> HeckeElement:
    alg = x.algebra
    sys_ = alg.system
    total = alg.zero()
    for w, c in y.terms.items():
        part = x
        for s in sys_.reduced_word(w):
            part = mult_delta_s(part, s)
        total = total + part.scale(c)
    return total


def bott_samelson(algebra: HeckeAlgebra, expr: Sequence[int]) -> HeckeElement:
    _check_len(expr)
    h = algebra.unit()
    for s in expr:
        h = mult_b_s(h, s)
    return h


def deodhar_expand(algebra: HeckeAlgebra, expr: Sequence[int]) -> HeckeElement:
    """Σ over subexpressions of v^{L(defect)} δ_{endpoint}, with U0 ↦ +1_s, D0 ↦ -1_s."""
    _check_len(expr)
    sys_ = algebra.system
    params = algebra.params
    which = {s: i for i, c in enumerate(params.classes) for s in c}
    ncls = len(params.classes)
    # (endpoint, defect vector) -> number of subexpressions
    states: Dict[Tuple[object, Tuple[int, ...]], int] = {(sys_.identity(), (0,) * ncls): 1}
    for s in expr:
        i = which[s]
        nxt: Dict = {}
        for (x, d), mult in states.items():
            xs = sys_.mul_gen(x, s)
            if sys_.right_descent(x, s):
                # D1 contributes 0, D0 contributes -1_s
                d0 = d[:i] + (d[i] - 1,) + d[i + 1:]
                for key in ((xs, d), (x, d0)):
                    nxt[key] = nxt.get(key, 0) + mult
            else:
                d0 = d[:i] + (d[i] + 1,) + d[i + 1:]
                for key in ((xs, d), (x, d0)):
                    nxt[key] = nxt.get(key, 0) + mult
        states = nxt
    out: Dict = {}
    for (x, d), mult in states.items():
        _accumulate(out, x, GroupAlgebraElement.monomial(params.exponent(d), mult))
    return HeckeElement(algebra, out)


# ------------------------------------------------------------ bar involution

def _require_bar(algebra: HeckeAlgebra, inv: Optional[BarInvolution]) -> BarInvolution:
    if inv is None:
        raise NoBarInvolution("grading group carries no bar involution")
    for s, val in algebra.params.params.items():
        if inv(val) != -val:
            raise NoBarInvolution(f"bar does not invert the parameter of s{s + 1}")
    return inv


def _bar_delta(algebra: HeckeAlgebra, w, inv: BarInvolution) -> HeckeElement:
    key = (w, id(inv))
    if key in algebra._bar_cache:
        return algebra._bar_cache[key]
    sys_ = algebra.system
    if sys_.length(w) == 0:
        res = algebra.unit()
    else:
        word = sys_.reduced_word(w)
        s = word[-1]
        prev = _bar_delta(algebra, sys_.mul_gen(w, s), inv)
        # δ_s^{-1} = δ_s + (v_s - v_s^{-1})
        res = mult_delta_s(prev, s) - prev.scale(algebra.p[s])
    algebra._bar_cache[key] = res
    return res


def bar(h: HeckeElement, inv: Optional[BarInvolution]) -> HeckeElement:
    alg = h.algebra
    inv = _require_bar(alg, inv)
    total = alg.zero()
    for w, c in h.terms.items():
        total = total + _bar_delta(alg, w, inv).scale(c.bar(inv))
    return total


# ------------------------------------------------------------ graded Hom ranks

def check_vertex_degrees(system: CoxeterSystem, spec: GradingSpec) -> None:
    for s in system.generators:
        for t in system.generators:
            if s < t:
                m = system.m_st(s, t)
                if m != INF and not vertex_degree(spec, s, t, m).is_zero():
                    raise ValueError(f"2m-valent vertex for (s{s + 1}, s{t + 1}) has nonzero degree")


def _endpoint_defects(system: CoxeterSystem, expr: Sequence[int], spec: GradingSpec) -> Dict:
    out: Dict = {}
    for lab in iter_subexpressions(system, expr):
        d = defect_A(lab, spec)
        out.setdefault(lab.endpoint, {})
        out[lab.endpoint][d] = out[lab.endpoint].get(d, 0) + 1
    return out


def hom_graded_rank(system: CoxeterSystem, x: Sequence[int], y: Sequence[int],
                    spec: GradingSpec) -> GroupAlgebraElement:
    """Σ_w Σ_{e⊂x, f⊂y reaching w} v^{defect(f) - bar(defect(e))}."""
    _check_len(x)
    _check_len(y)
    inv = spec.require_bar()
    check_vertex_degrees(system, spec)
    ex = _endpoint_defects(system, x, spec)
    fy = _endpoint_defects(system, y, spec)
    out: Dict[Coords, int] = {}
    for w, dx in ex.items():
        if w not in fy:
            continue
        for de, ne in dx.items():
            be = inv(de)
            for df, nf in fy[w].items():
                k = (df - be).coords
                out[k] = out.get(k, 0) + ne * nf
    return GroupAlgebraElement(spec.group, out)


# ------------------------------------------------------------ rescaled generators

@dataclass
class RescaleReport:
    pair: Tuple[int, int]
    m: int
    braid_holds: bool
    twist: Optional[GroupElement]
    expected_twist: GroupElement
    quadratic_ok: bool

    @property
    def ok(self) -> bool:
        return self.quadratic_ok and self.twist is not None and self.twist == self.expected_twist


def rescaled_generators(algebra: HeckeAlgebra, d: Mapping[int, GroupElement]) -> List[RescaleReport]:
    """Relations satisfied by δ'_s := v^{d_s} δ_s for each finite pair."""
    sys_ = algebra.system
    gens = sys_.generators
    dprime = {s: algebra.delta_word([s]).scale(GroupAlgebraElement.monomial(d[s])) for s in gens}
    reports = []
    for s in gens:
        for t in gens:
            if s >= t:
                continue
            m = sys_.m_st(s, t)
            if m == INF:
                continue
            m = int(m)
            left = algebra.unit()
            right = algebra.unit()
            for i in range(m):
                left = left * dprime[s if i % 2 == 0 else t]
                right = right * dprime[t if i % 2 == 0 else s]
            twist = None
            if len(left.terms) == 1 and len(right.terms) == 1:
                (wl, cl), = left.terms.items()
                (wr, cr), = right.terms.items()
                if wl == wr and cl.is_monomial() and cr.is_monomial():
                    a = GroupElement(algebra.group, next(iter(cl.terms)))
                    b = GroupElement(algebra.group, next(iter(cr.terms)))
                    twist = a - b
            ns_left = (m + 1) // 2
            nt_left = m // 2
            expected = d[s] * (ns_left - nt_left) + d[t] * (nt_left - ns_left)
            quad_ok = True
            for u in (s, t):
                lhs = dprime[u] * dprime[u]
                vd = GroupAlgebraElement.monomial(d[u])
                rhs = dprime[u].scale(vd * algebra.p[u]) + algebra.unit().scale(vd * vd)
                quad_ok = quad_ok and lhs == rhs
            reports.append(RescaleReport((s, t), m, left == right, twist, expected, quad_ok))
    return reports
