"""Grading groups, equivalence relations on generators, and grading validation.

A grading group is a finitely generated abelian group presented by ``rank``
generators and a list of integer relation columns.  Elements are canonicalized
through a Smith decomposition ``U R V = D``: the coordinates ``U x`` are reduced
modulo the invariant factors, which gives a unique representative per class.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .errors import InvalidRealization, NoBarInvolution, NotAHomomorphism

INF = math.inf


# ------------------------------------------------------------- Smith form

def smith_normal_form(a: Sequence[Sequence[int]]):
    """Return (U, D, V) with U·A·V = D diagonal, d_i | d_{i+1}, d_i >= 0.

    U and V are unimodular integer matrices (lists of lists).
    """
    m = len(a)
    n = len(a[0]) if m else 0
    d = [list(map(int, row)) for row in a]
    u = [[int(i == j) for j in range(m)] for i in range(m)]
    v = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        d[i], d[j] = d[j], d[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in d:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, k):  # row_dst += k * row_src
        if k:
            d[dst] = [x + k * y for x, y in zip(d[dst], d[src])]
            u[dst] = [x + k * y for x, y in zip(u[dst], u[src])]

    def add_col(src, dst, k):
        if k:
            for row in d:
                row[dst] += k * row[src]
            for row in v:
                row[dst] += k * row[src]

    for t in range(min(m, n)):
        while True:
            piv = None
            for i in range(t, m):
                for j in range(t, n):
                    if d[i][j] and (piv is None or abs(d[i][j]) < abs(d[piv[0]][piv[1]])):
                        piv = (i, j)
            if piv is None:
                return u, d, v
            swap_rows(t, piv[0])
            swap_cols(t, piv[1])
            p = d[t][t]
            clean = True
            for i in range(t + 1, m):
                q = d[i][t] // p
                add_row(t, i, -q)
                if d[i][t]:
                    clean = False
            for j in range(t + 1, n):
                q = d[t][j] // p
                add_col(t, j, -q)
                if d[t][j]:
                    clean = False
            if not clean:
                continue
            bad = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if d[i][j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            add_row(bad, t, 1)
        if d[t][t] < 0:
            d[t] = [-x for x in d[t]]
            u[t] = [-x for x in u[t]]
    return u, d, v


def _matvec(mat, vec):
    return [sum(x * y for x, y in zip(row, vec)) for row in mat]


def _inverse_unimodular(mat):
    """Exact inverse of a unimodular integer matrix via fraction Gauss-Jordan."""
    n = len(mat)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(mat)]
    for c in range(n):
        r = next(i for i in range(c, n) if aug[i][c] != 0)
        aug[c], aug[r] = aug[r], aug[c]
        pv = aug[c][c]
        aug[c] = [x / pv for x in aug[c]]
        for i in range(n):
            if i != c and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[c])]
    out = [[int(x) for x in row[n:]] for row in aug]
    return out


# ------------------------------------------------------------ groups

class GradingGroup:
    """Abelian group ℤ^rank / (column span of relations)."""

    def __init__(self, rank: int, relations: Iterable[Sequence[int]] = (), names: Optional[Sequence[str]] = None):
        self.rank = rank
        self.relations = [tuple(int(x) for x in col) for col in relations]
        for col in self.relations:
            if len(col) != rank:
                raise ValueError("relation column has wrong length")
        self.names = list(names) if names else [f"x{i}" for i in range(rank)]
        if self.relations:
            mat = [[col[i] for col in self.relations] for i in range(rank)]
            u, d, _ = smith_normal_form(mat)
            diag = [d[i][i] if i < len(d[0]) else 0 for i in range(rank)]
        else:
            u = [[int(i == j) for j in range(rank)] for i in range(rank)]
            diag = [0] * rank
        self._u = u
        self._uinv = _inverse_unimodular(u) if rank else []
        self.invariants = tuple(diag)

    @property
    def free_rank(self) -> int:
        return sum(1 for d in self.invariants if d == 0)

    @property
    def torsion(self) -> Tuple[int, ...]:
        return tuple(d for d in self.invariants if d > 1)

    def normal_form(self, vec: Sequence[int]) -> Tuple[int, ...]:
        y = _matvec(self._u, vec)
        out = []
        for yi, di in zip(y, self.invariants):
            if di == 0:
                out.append(yi)
            elif di == 1:
                out.append(0)
            else:
                out.append(yi % di)
        return tuple(out)

    def reduce(self, coords: Sequence[int]) -> Tuple[int, ...]:
        """Reduce a vector already in Smith coordinates (normal forms add coordinatewise)."""
        return tuple(c if d == 0 else (0 if d == 1 else c % d) for c, d in zip(coords, self.invariants))

    def lift(self, coords: Sequence[int]) -> Tuple[int, ...]:
        """A generator-coordinate representative of a normal-form vector."""
        return tuple(_matvec(self._uinv, coords))

    def element(self, vec: Sequence[int]) -> "GroupElement":
        if len(vec) != self.rank:
            raise ValueError("vector has wrong length")
        return GroupElement(self, self.normal_form(vec))

    def zero(self) -> "GroupElement":
        return GroupElement(self, (0,) * self.rank)

    def gen(self, i: int) -> "GroupElement":
        return self.element([int(j == i) for j in range(self.rank)])

    def in_lattice(self, vec: Sequence[int]) -> bool:
        return all(c == 0 for c in self.normal_form(vec))

    def kills_relations(self, row: Sequence[int]) -> bool:
        return all(sum(a * b for a, b in zip(row, col)) == 0 for col in self.relations)

    def apply_row(self, row: Sequence[int], x: "GroupElement") -> int:
        if not self.kills_relations(row):
            raise NotAHomomorphism("row vector does not vanish on relations")
        return sum(a * b for a, b in zip(row, self.lift(x.coords)))

    def __eq__(self, other):
        return isinstance(other, GradingGroup) and self.rank == other.rank and self.relations == other.relations

    def __hash__(self):
        return hash((self.rank, tuple(self.relations)))

    def __repr__(self):
        return f"GradingGroup(rank={self.rank}, invariants={self.invariants})"


class GroupElement:
    __slots__ = ("group", "coords")

    def __init__(self, group: GradingGroup, coords: Tuple[int, ...]):
        self.group = group
        self.coords = tuple(coords)

    def _check(self, other: "GroupElement"):
        if other.group is not self.group and other.group != self.group:
            raise ValueError("elements of different grading groups")

    def __add__(self, other):
        if isinstance(other, int) and other == 0:
            return self
        self._check(other)
        return GroupElement(self.group, self.group.reduce(_vec_add(self.coords, other.coords)))

    __radd__ = __add__

    def __neg__(self):
        return GroupElement(self.group, self.group.reduce([-x for x in self.coords]))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, k: int):
        return GroupElement(self.group, self.group.reduce([k * x for x in self.coords]))

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not any(self.coords)

    def vector(self) -> Tuple[int, ...]:
        """Generator-coordinate representative."""
        return self.group.lift(self.coords)

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return self.is_zero()
        if not isinstance(other, GroupElement):
            return NotImplemented
        return self.group == other.group and self.coords == other.coords

    def __hash__(self):
        return hash(self.coords)

    def __repr__(self):
        return f"GroupElement({list(self.vector())})"


def _vec_add(a, b):
    return [x + y for x, y in zip(a, b)]


class BarInvolution:
    """Integer matrix acting on generator coordinates."""

    def __init__(self, group: GradingGroup, matrix: Sequence[Sequence[int]]):
        self.group = group
        self.matrix = [list(map(int, r)) for r in matrix]
        g = group.rank
        if len(self.matrix) != g or any(len(r) != g for r in self.matrix):
            raise ValueError("bar matrix has wrong shape")
        for col in group.relations:
            if not group.in_lattice(_matvec(self.matrix, col)):
                raise NotAHomomorphism("bar matrix does not preserve the relation lattice")
        for i in range(g):
            e = [int(j == i) for j in range(g)]
            if group.normal_form(_matvec(self.matrix, _matvec(self.matrix, e))) != group.normal_form(e):
                raise ValueError("bar matrix is not an involution")

    def __call__(self, x: GroupElement) -> GroupElement:
        return self.group.element(_matvec(self.matrix, x.vector()))


# ------------------------------------------------------- Coxeter / Cartan data

class CoxeterMatrix:
    def __init__(self, entries: Sequence[Sequence]):
        self.size = len(entries)
        self.m = [[_parse_m(x) for x in row] for row in entries]
        for i in range(self.size):
            if len(self.m[i]) != self.size:
                raise ValueError("Coxeter matrix must be square")
            if self.m[i][i] != 1:
                raise ValueError("Coxeter matrix diagonal must be 1")
            for j in range(self.size):
                if self.m[i][j] != self.m[j][i]:
                    raise ValueError("Coxeter matrix must be symmetric")
                if i != j and self.m[i][j] < 2:
                    raise ValueError("off-diagonal Coxeter entries must be >= 2")

    @classmethod
    def dihedral(cls, m) -> "CoxeterMatrix":
        return cls([[1, m], [m, 1]])

    @classmethod
    def type_a(cls, n: int) -> "CoxeterMatrix":
        """Type A_n: n generators in a chain."""
        return cls([[1 if i == j else (3 if abs(i - j) == 1 else 2) for j in range(n)] for i in range(n)])

    def __call__(self, s: int, t: int):
        return self.m[s][t]

    def pairs(self):
        return itertools.combinations(range(self.size), 2)

    def to_json(self):
        return [["inf" if x == INF else int(x) for x in row] for row in self.m]


def _parse_m(x):
    if isinstance(x, str):
        if x.strip().lower() in ("inf", "infinity", "∞"):
            return INF
        return int(x)
    if x == INF:
        return INF
    return int(x)


def is_two_p_power(m, p: int) -> bool:
    """True iff m = 2 p^k for some k >= 0... with k >= 1 when counting m=2 separately."""
    if p <= 0 or m == INF:
        return False
    m = int(m)
    if m % 2:
        return False
    r = m // 2
    while r % p == 0:
        r //= p
    return r == 1


@dataclass
class CartanSpec:
    """Off-diagonal pairings ⟨α_s^∨, α_t⟩ and the base characteristic."""

    pairings: Dict[Tuple[int, int], Fraction]
    characteristic: int = 0

    def pairing(self, s: int, t: int):
        return self.pairings.get((s, t), Fraction(0))

    def is_zero(self, x) -> bool:
        x = Fraction(x)
        if self.characteristic == 0:
            return x == 0
        return x.numerator % self.characteristic == 0

    def nonzero_pair(self, s: int, t: int) -> bool:
        return not (self.is_zero(self.pairing(s, t)) and self.is_zero(self.pairing(t, s)))

    def check(self, matrix: CoxeterMatrix) -> Optional[str]:
        """First violated realization condition, or None."""
        p = self.characteristic
        for s, t in matrix.pairs():
            if self.nonzero_pair(s, t):
                continue
            m = matrix(s, t)
            if m in (2, INF):
                continue
            if p > 0 and is_two_p_power(m, p):
                continue
            return (f"pairings for (s{s + 1}, s{t + 1}) both vanish but m={m} is not 2, inf"
                    + (f" or 2*{p}^k" if p else ""))
        return None


# ----------------------------------------------------------- relations on S

def _classes(n: int, edges: Iterable[Tuple[int, int]]) -> List[frozenset]:
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in edges:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)
    groups: Dict[int, set] = {}
    for x in range(n):
        groups.setdefault(find(x), set()).add(x)
    return sorted((frozenset(g) for g in groups.values()), key=min)


def equivalence_relation(matrix: CoxeterMatrix, cartan: Optional[CartanSpec] = None,
                         kind: str = "component", characteristic: Optional[int] = None) -> List[frozenset]:
    """Equivalence classes on S (generator indices) for the requested generating relation."""
    edges = []
    for s, t in matrix.pairs():
        m = matrix(s, t)
        if kind == "component":
            ok = m != 2
        elif kind == "cartan":
            if cartan is None:
                raise ValueError("kind=cartan needs a CartanSpec")
            ok = cartan.nonzero_pair(s, t)
        elif kind == "char_p":
            p = characteristic if characteristic is not None else (cartan.characteristic if cartan else None)
            if p is None:
                raise ValueError("kind=char_p needs a characteristic")
            if p == 0:
                ok = m not in (2, INF)
            else:
                ok = m != INF and not is_two_p_power(m, p)
        elif kind == "unequal":
            ok = m != INF and int(m) % 2 == 1
        else:
            raise ValueError(f"unknown relation kind {kind!r}")
        if ok:
            edges.append((s, t))
    return _classes(matrix.size, edges)


# ------------------------------------------------------------ grading specs

@dataclass
class GradingSpec:
    group: GradingGroup
    f: Dict[int, GroupElement]
    g: Dict[int, GroupElement]
    root_degrees: Dict[int, GroupElement]
    extra_V_degrees: List[GroupElement] = field(default_factory=list)
    For: Optional[Tuple[int, ...]] = None
    pos: Optional[Tuple[int, ...]] = None
    bar: Optional[BarInvolution] = None

    @property
    def generators(self) -> List[int]:
        return sorted(self.f)

    def V_degrees(self) -> List[GroupElement]:
        return [self.root_degrees[s] for s in self.generators] + list(self.extra_V_degrees)

    def require_bar(self) -> BarInvolution:
        if self.bar is None:
            raise NoBarInvolution("grading group carries no bar involution")
        return self.bar


def build_bigrading(S: Iterable[int]) -> GradingSpec:
    S = sorted(S)
    grp = GradingGroup(2, names=["f", "g"])
    f = {s: grp.element([1, 0]) for s in S}
    g = {s: grp.element([0, 1]) for s in S}
    roots = {s: grp.element([1, 1]) for s in S}
    bar = BarInvolution(grp, [[0, -1], [-1, 0]])
    return GradingSpec(grp, f, g, roots, For=(1, 1), pos=(1, 1), bar=bar)


def build_equal_grading(S: Iterable[int]) -> GradingSpec:
    """The original ℤ-grading: f_s = g_s = 1."""
    S = sorted(S)
    grp = GradingGroup(1, names=["v"])
    one = grp.element([1])
    return GradingSpec(grp, {s: one for s in S}, {s: one for s in S}, {s: one * 2 for s in S},
                       For=(1,), pos=(1,), bar=BarInvolution(grp, [[-1]]))


def build_class_grading(matrix: CoxeterMatrix, classes: Sequence[frozenset]) -> GradingSpec:
    """ℤ^{S/∼} with f_s = g_s = e_[s] and deg α_s = 2 e_[s]."""
    k = len(classes)
    grp = GradingGroup(k, names=[f"e{min(c) + 1}" for c in classes])
    which = {s: i for i, c in enumerate(classes) for s in c}
    f = {s: grp.gen(which[s]) for s in range(matrix.size)}
    roots = {s: f[s] * 2 for s in range(matrix.size)}
    bar = BarInvolution(grp, [[-int(i == j) for j in range(k)] for i in range(k)])
    return GradingSpec(grp, dict(f), dict(f), roots, pos=(1,) * k, bar=bar)


def build_p_adapted_grading(matrix: CoxeterMatrix, characteristic: int) -> GradingSpec:
    return build_class_grading(matrix, equivalence_relation(matrix, kind="char_p", characteristic=characteristic))


def build_universal_grading(matrix: CoxeterMatrix, cartan: CartanSpec, gamma: GradingGroup,
                            root_degrees: Dict[int, Sequence[int]],
                            extra_V: Sequence[Sequence[int]] = ()) -> GradingSpec:
    """(Γ × free group on {f_s, g_s}) modulo Γ's relations, f_s+g_s = deg α_s, and f_s+g_s = f_t+g_t for nonzero pairings."""
    problem = cartan.check(matrix)
    if problem:
        raise InvalidRealization(problem)
    S = list(range(matrix.size))
    gr = gamma.rank
    rank = gr + 2 * len(S)

    def fi(s):
        return gr + 2 * s

    def gi(s):
        return gr + 2 * s + 1

    rels = [tuple(col) + (0,) * (2 * len(S)) for col in gamma.relations]
    for s in S:
        col = [-x for x in root_degrees[s]] + [0] * (2 * len(S))
        col[fi(s)] += 1
        col[gi(s)] += 1
        rels.append(tuple(col))
    for s, t in matrix.pairs():
        if cartan.nonzero_pair(s, t):
            col = [0] * rank
            col[fi(s)] += 1
            col[gi(s)] += 1
            col[fi(t)] -= 1
            col[gi(t)] -= 1
            rels.append(tuple(col))
    names = list(gamma.names) + [n for s in S for n in (f"f{s + 1}", f"g{s + 1}")]
    grp = GradingGroup(rank, rels, names)

    def unit(i):
        return grp.element([int(j == i) for j in range(rank)])

    def from_gamma(vec):
        return grp.element(list(vec) + [0] * (2 * len(S)))

    f = {s: unit(fi(s)) for s in S}
    g = {s: unit(gi(s)) for s in S}
    roots = {s: from_gamma(root_degrees[s]) for s in S}
    extras = [from_gamma(v) for v in extra_V]
    return GradingSpec(grp, f, g, roots, extras)


def homomorphism_well_defined(group: GradingGroup, images: Sequence[Sequence[int]]) -> bool:
    """Whether sending generator i to images[i] (free-ℤ^k vectors) kills every relation."""
    for col in group.relations:
        tot = [0] * len(images[0])
        for c, img in zip(col, images):
            tot = [a + c * b for a, b in zip(tot, img)]
        if any(tot):
            return False
    return True


# ----------------------------------------------------------- degree helpers

def vertex_degree(spec: GradingSpec, s: int, t: int, m_st) -> GroupElement:
    """Degree of the 2m-valent vertex: 0 for even m, g_s - g_t for odd m."""
    if m_st == INF:
        raise ValueError("no 2m-valent vertex for m = inf")
    if int(m_st) % 2 == 0:
        return spec.group.zero()
    return spec.g[s] - spec.g[t]


def inner_degree(spec: GradingSpec, n: Dict[int, int], k: Dict[int, int]) -> GroupElement:
    out = spec.group.zero()
    for s in set(n) | set(k):
        out = out + spec.f[s] * n.get(s, 0) + (spec.f[s] + spec.g[s]) * k.get(s, 0)
    return out


def verify_pos(spec: GradingSpec, candidate: Sequence[int]) -> bool:
    grp = spec.group
    if not grp.kills_relations(candidate):
        raise NotAHomomorphism("candidate does not vanish on the relation lattice")
    return all(grp.apply_row(candidate, d) > 0 for d in spec.V_degrees())


def search_pos(spec: GradingSpec, bound: int = 10) -> Optional[Tuple[int, ...]]:
    """Bounded brute-force search for a positive homomorphism (rank <= 4)."""
    grp = spec.group
    if grp.rank > 4:
        raise ValueError("search_pos is limited to rank <= 4")
    rng = range(-bound, bound + 1)
    for cand in sorted(itertools.product(rng, repeat=grp.rank), key=lambda c: (sum(map(abs, c)), c)):
        if grp.kills_relations(cand) and verify_pos(spec, cand):
            return cand
    return None


# ------------------------------------------------------------- validation

@dataclass
class Clause:
    name: str
    ok: bool
    detail: str = ""


@dataclass
class ValidationReport:
    clauses: List[Clause]
    notes: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.ok for c in self.clauses)

    @property
    def failed_clause(self) -> Optional[str]:
        for c in self.clauses:
            if not c.ok:
                return c.name
        return None

    def lines(self) -> List[str]:
        out = [f"[{'ok' if c.ok else 'FAIL'}] {c.name}: {c.detail}" for c in self.clauses]
        out += [f"[note] {n}" for n in self.notes]
        out.append("verdict: " + ("grading extends" if self.passed else f"fails at {self.failed_clause}"))
        return out


H3_NOTE = ("type H3 Zamolodchikov relations are homogeneous automatically for any grading "
           "satisfying the polynomial criterion; no computation is attempted")


def validate(spec: GradingSpec, matrix: CoxeterMatrix, cartan: CartanSpec,
             check_jw: bool = True) -> ValidationReport:
    """Clause-by-clause check that a grading on generators extends to the Hecke category."""
    clauses: List[Clause] = []
    notes: List[str] = []
    S = list(range(matrix.size))

    problem = cartan.check(matrix)
    clauses.append(Clause("realization", problem is None, problem or "valid"))
    if problem:
        return ValidationReport(clauses, notes)

    bad = [s for s in S if spec.root_degrees[s] != spec.f[s] + spec.g[s]]
    clauses.append(Clause("root_degree", not bad,
                          "deg alpha_s = f_s + g_s" if not bad else f"fails for s{bad[0] + 1}"))
    if bad:
        return ValidationReport(clauses, notes)

    bad_pair = None
    for s, t in matrix.pairs():
        if cartan.nonzero_pair(s, t) and spec.f[s] + spec.g[s] != spec.f[t] + spec.g[t]:
            bad_pair = (s, t)
            break
    clauses.append(Clause("balanced_roots", bad_pair is None,
                          "f_s+g_s = f_t+g_t for nonzero pairings" if bad_pair is None
                          else f"f+g differ on (s{bad_pair[0] + 1}, s{bad_pair[1] + 1}) with nonzero pairing"))
    if bad_pair:
        return ValidationReport(clauses, notes)

    grp = spec.group
    if spec.For is not None:
        ok = grp.kills_relations(spec.For)
        if ok:
            ok = all(grp.apply_row(spec.For, spec.f[s]) == 1 and grp.apply_row(spec.For, spec.g[s]) == 1
                     and grp.apply_row(spec.For, spec.root_degrees[s]) == 2 for s in S)
        clauses.append(Clause("forget", ok, "refines the Z-grading" if ok else "For map inconsistent"))
    if spec.pos is not None:
        try:
            ok = verify_pos(spec, spec.pos)
        except NotAHomomorphism:
            ok = False
        clauses.append(Clause("pos", ok, "positive on V-degrees" if ok else "pos not positive"))
    if spec.bar is not None:
        bar = spec.bar
        ok = all(bar(spec.f[s]) == -spec.g[s] and bar(spec.g[s]) == -spec.f[s] for s in S)
        ok = ok and all(bar(d) == -d for d in spec.V_degrees())
        clauses.append(Clause("bar", ok, "bar(f)=-g, bar(g)=-f, bar(deg v)=-deg v" if ok else "bar mismatch"))

    if check_jw:
        from .temperley_lieb import TwoColorDegreeData, check_jw_homogeneity
        p = cartan.characteristic
        ok = True
        details = []
        for s, t in matrix.pairs():
            m = matrix(s, t)
            if m == INF:
                continue
            if cartan.nonzero_pair(s, t):
                notes.append(f"(s{s + 1}, s{t + 1}): nonzero pairing, two-colored JW at [2] != 0 not computed")
                continue
            n = int(m) - 1
            data = TwoColorDegreeData(grp, spec.f[s], spec.g[s], spec.f[t], spec.g[t])
            rep = check_jw_homogeneity(n, p, data)
            details.append(f"JW_{n} (s{s + 1},s{t + 1}) {'homogeneous' if rep.homogeneous else 'NOT homogeneous'}")
            if not rep.homogeneous:
                ok = False
            # the mirror coloring starts with t on the left
            data2 = TwoColorDegreeData(grp, spec.f[t], spec.g[t], spec.f[s], spec.g[s])
            if not check_jw_homogeneity(n, p, data2).homogeneous:
                ok = False
        clauses.append(Clause("jw_homogeneity", ok, "; ".join(details) or "no finite pair with vanishing pairings"))
    notes.append(H3_NOTE)
    return ValidationReport(clauses, notes)
