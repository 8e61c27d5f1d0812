"""Coxeter groups with two concrete backends.

Dihedral groups I₂(m), 2 ≤ m ≤ ∞, store an element as ``(first_letter, length)``.
Symmetric groups store the one-line form of a permutation.  Generators are
0-indexed integers and print as ``s1, s2, ...``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, List, Optional, Sequence, Tuple

from .errors import SizeLimit, UnsupportedBackend
from .grading import INF, CoxeterMatrix, GradingSpec, GroupElement, equivalence_relation

MAX_EXPRESSION = 22

Expression = Tuple[int, ...]


@dataclass(frozen=True, order=True)
class DihedralElement:
    first: int
    length: int

    def __repr__(self):
        return f"DihedralElement(s{self.first + 1}, len {self.length})"


def parse_expression(text: str) -> Expression:
    """``"s1,s2,s1"`` (or ``"1,2,1"``) to a 0-indexed tuple."""
    text = text.strip()
    if not text:
        return ()
    out = []
    for tok in text.split(","):
        tok = tok.strip().lower()
        if tok.startswith("s"):
            tok = tok[1:]
        if not tok.isdigit() or int(tok) < 1:
            raise ValueError(f"bad generator {tok!r}")
        out.append(int(tok) - 1)
    return tuple(out)


def format_word(word: Sequence[int], sep: str = ".") -> str:
    return sep.join(f"s{s + 1}" for s in word)


class CoxeterSystem:
    def __init__(self, backend: str, param):
        if backend == "dihedral":
            m = INF if param in (INF, "inf", None) else int(param)
            if m != INF and m < 2:
                raise ValueError("dihedral order m must be >= 2")
            self.m = m
            self.rank = 2
        elif backend == "symmetric":
            n = int(param)
            if n < 2:
                raise ValueError("symmetric(n) needs n >= 2")
            self.n = n
            self.rank = n - 1
        else:
            raise UnsupportedBackend(backend)
        self.backend = backend

    @classmethod
    def dihedral(cls, m) -> "CoxeterSystem":
        return cls("dihedral", m)

    @classmethod
    def symmetric(cls, n: int) -> "CoxeterSystem":
        return cls("symmetric", n)

    @property
    def generators(self) -> List[int]:
        return list(range(self.rank))

    def __eq__(self, other):
        return isinstance(other, CoxeterSystem) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def key(self):
        return (self.backend, self.m if self.backend == "dihedral" else self.n)

    def __repr__(self):
        if self.backend == "dihedral":
            return f"CoxeterSystem(I2({'inf' if self.m == INF else self.m}))"
        return f"CoxeterSystem(S{self.n})"

    def coxeter_matrix(self) -> CoxeterMatrix:
        if self.backend == "dihedral":
            return CoxeterMatrix.dihedral(self.m)
        return CoxeterMatrix.type_a(self.n - 1)

    def m_st(self, s: int, t: int):
        return self.coxeter_matrix()(s, t)

    def uneq_classes(self) -> List[frozenset]:
        return equivalence_relation(self.coxeter_matrix(), kind="unequal")

    # ------------------------------------------------------------ elements
    def identity(self):
        if self.backend == "dihedral":
            return DihedralElement(0, 0)
        return tuple(range(1, self.n + 1))

    def _check_gen(self, s: int):
        if not 0 <= s < self.rank:
            raise ValueError(f"generator index {s} out of range")

    def length(self, w) -> int:
        if self.backend == "dihedral":
            return w.length
        return sum(1 for i in range(len(w)) for j in range(i + 1, len(w)) if w[i] > w[j])

    def _last_letter(self, w: DihedralElement) -> int:
        return w.first if w.length % 2 else 1 - w.first

    def _dihedral(self, first: int, length: int) -> DihedralElement:
        if length == 0:
            return DihedralElement(0, 0)
        if self.m != INF and length == self.m:
            return DihedralElement(0, length)
        return DihedralElement(first, length)

    def right_descent(self, w, s: int) -> bool:
        """True iff ws < w."""
        self._check_gen(s)
        if self.backend == "dihedral":
            if w.length == 0:
                return False
            if self.m != INF and w.length == self.m:
                return True
            return self._last_letter(w) == s
        return w[s] > w[s + 1]

    def left_descent(self, w, s: int) -> bool:
        return self.right_descent(self.inverse(w), s)

    def mul_gen(self, w, s: int):
        """w·s."""
        self._check_gen(s)
        if self.backend == "dihedral":
            k = w.length
            if k == 0:
                return self._dihedral(s, 1)
            if self.m != INF and k == self.m:
                # the length m-1 element whose last letter is not s
                k1 = k - 1
                first = (1 - s) if k1 % 2 else s
                return self._dihedral(first, k1)
            if self._last_letter(w) == s:
                return self._dihedral(w.first, k - 1)
            return self._dihedral(w.first, k + 1)
        lst = list(w)
        lst[s], lst[s + 1] = lst[s + 1], lst[s]
        return tuple(lst)

    def gen_mul(self, s: int, w):
        """s·w."""
        return self.inverse(self.mul_gen(self.inverse(w), s))

    def inverse(self, w):
        if self.backend == "dihedral":
            if w.length == 0 or (self.m != INF and w.length == self.m):
                return w
            return self._dihedral(self._last_letter(w), w.length)
        inv = [0] * len(w)
        for i, x in enumerate(w):
            inv[x - 1] = i + 1
        return tuple(inv)

    def reduced_word(self, w) -> Expression:
        if self.backend == "dihedral":
            return tuple((w.first + i) % 2 for i in range(w.length))
        word = []
        cur = w
        while True:
            for s in self.generators:
                if self.right_descent(cur, s):
                    word.append(s)
                    cur = self.mul_gen(cur, s)
                    break
            else:
                break
        return tuple(reversed(word))

    def from_word(self, word: Sequence[int]):
        w = self.identity()
        for s in word:
            w = self.mul_gen(w, s)
        return w

    def multiply(self, x, y):
        for s in self.reduced_word(y):
            x = self.mul_gen(x, s)
        return x

    def word_string(self, w, sep: str = ".") -> str:
        return format_word(self.reduced_word(w), sep)

    def sort_key(self, w):
        return (self.length(w), self.reduced_word(w))

    def elements_up_to(self, max_length: int) -> List:
        """All elements of length <= max_length, sorted by (length, reduced word)."""
        seen = {self.identity()}
        frontier = [self.identity()]
        for _ in range(max_length):
            nxt = []
            for w in frontier:
                for s in self.generators:
                    u = self.mul_gen(w, s)
                    if u not in seen and self.length(u) > self.length(w):
                        seen.add(u)
                        nxt.append(u)
            frontier = nxt
        return sorted(seen, key=self.sort_key)

    def bruhat_leq(self, x, w) -> bool:
        if self.backend != "dihedral":
            raise UnsupportedBackend("Bruhat order is only implemented for dihedral groups")
        return x.length < w.length or x == w


# -------------------------------------------------------------- subexpressions

@dataclass(frozen=True)
class SubexpressionLabeling:
    expression: Expression
    bits: Tuple[int, ...]
    labels: Tuple[str, ...]
    endpoint: object


def _check_len(expr: Sequence[int]):
    if len(expr) > MAX_EXPRESSION:
        raise SizeLimit(f"expression length {len(expr)} exceeds {MAX_EXPRESSION}")


def label(system: CoxeterSystem, expr: Sequence[int], bits: Sequence[int]) -> SubexpressionLabeling:
    if len(expr) != len(bits):
        raise ValueError("bits and expression differ in length")
    x = system.identity()
    labels = []
    for s, e in zip(expr, bits):
        up = not system.right_descent(x, s)
        labels.append(("U" if up else "D") + str(int(e)))
        if e:
            x = system.mul_gen(x, s)
    return SubexpressionLabeling(tuple(expr), tuple(int(b) for b in bits), tuple(labels), x)


def iter_subexpressions(system: CoxeterSystem, expr: Sequence[int]) -> Iterator[SubexpressionLabeling]:
    _check_len(expr)
    for bits in itertools.product((0, 1), repeat=len(expr)):
        yield label(system, expr, bits)


def all_subexpressions(system: CoxeterSystem, expr: Sequence[int]) -> List[SubexpressionLabeling]:
    return list(iter_subexpressions(system, expr))


def defect_A(labeling: SubexpressionLabeling, spec: GradingSpec) -> GroupElement:
    total = spec.group.zero()
    for s, lab in zip(labeling.expression, labeling.labels):
        if lab == "U0":
            total = total + spec.f[s]
        elif lab == "D0":
            total = total - spec.g[s]
        elif lab == "D1":
            total = total + spec.f[s] - spec.g[s]
    return total


def defect_uneq(labeling: SubexpressionLabeling, system: CoxeterSystem,
                classes: Optional[List[frozenset]] = None) -> Tuple[int, ...]:
    """Vector in ℤ^{S/∼}, coordinates ordered like ``system.uneq_classes()``."""
    classes = classes if classes is not None else system.uneq_classes()
    which = {s: i for i, c in enumerate(classes) for s in c}
    out = [0] * len(classes)
    for s, lab in zip(labeling.expression, labeling.labels):
        if lab == "U0":
            out[which[s]] += 1
        elif lab == "D0":
            out[which[s]] -= 1
    return tuple(out)
