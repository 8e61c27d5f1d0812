"""The double-0 canonical basis of the infinite dihedral Hecke algebra.

Coefficients live in ℤ[v₁^{±1}, v₂^{±1}] = ℤ[ℤ²] with v₁ = v^{(1,0)}, v₂ = v^{(0,1)}.
The basis is produced from the product recursions (``compute_basis``) and then
compared with the explicit Γ-formulas, the product identities, and the
right/two-sided cell structure inside a finite length window.
"""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from .coxeter import CoxeterSystem, DihedralElement
from .grading import BarInvolution, GradingGroup
from .hecke import (GroupAlgebraElement, HeckeAlgebra, HeckeElement, ParameterMap, bar,
                    left_mult_b_s, mult_b_s)


def make_algebra() -> HeckeAlgebra:
    system = CoxeterSystem.dihedral("inf")
    grp = GradingGroup(2, names=["v1", "v2"])
    return HeckeAlgebra(ParameterMap(system, grp, {0: grp.gen(0), 1: grp.gen(1)}))


def elem(color: int, k: int) -> DihedralElement:
    """1_k (color 1) or 2_k (color 2)."""
    if k == 0:
        return DihedralElement(0, 0)
    return DihedralElement(color - 1, k)


def length_vector(w: DihedralElement) -> Tuple[int, int]:
    k = w.length
    big, small = (k + 1) // 2, k // 2
    return (big, small) if w.first == 0 else (small, big)


def _mono(alg: HeckeAlgebra, a: int, b: int) -> GroupAlgebraElement:
    return GroupAlgebraElement.monomial(alg.group.element([a, b]))


def _c(alg: HeckeAlgebra) -> GroupAlgebraElement:
    return _mono(alg, 1, -1) + _mono(alg, -1, 1)


def gamma(alg: HeckeAlgebra, w: DihedralElement) -> HeckeElement:
    """Γ_w = Σ_{y ≤ w} v^{l_w - l_y} δ_y."""
    lw = length_vector(w)
    out: Dict = {}
    for y in alg.system.elements_up_to(w.length):
        if alg.system.bruhat_leq(y, w):
            ly = length_vector(y)
            out[y] = _mono(alg, lw[0] - ly[0], lw[1] - ly[1])
    return HeckeElement(alg, out)


@dataclass
class Double0Basis:
    N: int
    algebra: HeckeAlgebra
    elements: Dict[DihedralElement, HeckeElement]

    def b(self, color: int, k: int) -> HeckeElement:
        return self.elements[elem(color, k)]

    def ordered(self) -> List[DihedralElement]:
        return sorted(self.elements, key=self.algebra.system.sort_key)


def _series(alg: HeckeAlgebra, color: int, N: int) -> Dict[int, HeckeElement]:
    s = color - 1
    t = 1 - s
    c = _c(alg)
    out: Dict[int, HeckeElement] = {1: alg.b(s)}
    if N >= 2:
        out[2] = mult_b_s(out[1], t)
    if N >= 3:
        out[3] = mult_b_s(out[2], s)
    if N >= 4:
        out[4] = mult_b_s(out[3], t) - out[2].scale(c)
    k = 2
    while 2 * k + 1 <= N:
        out[2 * k + 1] = mult_b_s(out[2 * k], s)
        if 2 * k + 2 <= N:
            prod = mult_b_s(out[2 * k + 1], t)
            out[2 * k + 2] = prod - out[2 * k].scale(c) - out[2 * k - 2]
        k += 1
    return out


def compute_basis(N: int, algebra: Optional[HeckeAlgebra] = None) -> Double0Basis:
    if N < 1:
        raise ValueError("N must be >= 1")
    alg = algebra or make_algebra()
    elements = {alg.system.identity(): alg.unit()}
    for color in (1, 2):
        for k, h in _series(alg, color, N).items():
            elements[elem(color, k)] = h
    return Double0Basis(N, alg, elements)


# ------------------------------------------------------------ reports

@dataclass
class CheckReport:
    checks: List[Tuple[str, bool, str]] = field(default_factory=list)

    def add(self, name: str, ok: bool, detail: str = ""):
        self.checks.append((name, bool(ok), detail))

    @property
    def passed(self) -> bool:
        return all(ok for _, ok, _ in self.checks)

    def lines(self) -> List[str]:
        return [f"[{'ok' if ok else 'FAIL'}] {name}" + (f": {d}" if d else "") for name, ok, d in self.checks]


def _mismatch(lhs: HeckeElement, rhs: HeckeElement) -> str:
    diff = lhs - rhs
    if diff.is_zero():
        return ""
    w, c = diff.sorted_terms()[-1]
    name = diff.algebra.system.word_string(w) or "e"
    return f"differs at d[{name}]: {c.format()}"


def verify_closed_form(basis: Double0Basis) -> CheckReport:
    alg = basis.algebra
    rep = CheckReport()
    twist = {1: _mono(alg, -1, 1), 2: _mono(alg, 1, -1)}
    for color in (1, 2):
        name = f"{color}_"
        for k in range(1, basis.N // 2 + 1):
            lhs = basis.b(color, 2 * k)
            rhs = gamma(alg, elem(color, 2 * k))
            rep.add(f"b_{name}{2 * k} = Gamma", lhs == rhs, _mismatch(lhs, rhs))
        for k in range(0, (basis.N - 1) // 2 + 1):
            lhs = basis.b(color, 2 * k + 1)
            rhs = gamma(alg, elem(color, 2 * k + 1))
            if k >= 1:
                rhs = rhs + gamma(alg, elem(color, 2 * k - 1)).scale(twist[color])
            rep.add(f"b_{name}{2 * k + 1} = Gamma form", lhs == rhs, _mismatch(lhs, rhs))
    return rep


def structure_constant_check(basis: Double0Basis) -> CheckReport:
    """Product identities among basis elements, recomputed with independent bracketings."""
    alg = basis.algebra
    N = basis.N
    if N < 8:
        raise ValueError("structure constant check needs N >= 8")
    c = _c(alg)
    rep = CheckReport()
    b1, b2 = alg.b(0), alg.b(1)
    rep.add("b1 b2 = b_1_2", b1 * b2 == basis.b(1, 2))
    rep.add("b2 b1 = b_2_2", b2 * b1 == basis.b(2, 2))
    rep.add("b1 b2 b1 = b_1_3", b1 * (b2 * b1) == basis.b(1, 3))
    rep.add("b2 b1 b2 = b_2_3", b2 * (b1 * b2) == basis.b(2, 3))
    rep.add("b1 b2 b1 b2 = b_1_4 + c b_1_2", (b1 * b2) * (b1 * b2) == basis.b(1, 4) + basis.b(1, 2).scale(c))
    rep.add("b2 b1 b2 b1 = b_2_4 + c b_2_2", (b2 * b1) * (b2 * b1) == basis.b(2, 4) + basis.b(2, 2).scale(c))
    for k in range(2, (N - 2) // 2 + 1):
        for color, (s, t) in ((1, (b1, b2)), (2, (b2, b1))):
            lhs = basis.b(color, 2 * k) * s
            rep.add(f"b_{color}_{2 * k} b{color} = b_{color}_{2 * k + 1}", lhs == basis.b(color, 2 * k + 1),
                    _mismatch(lhs, basis.b(color, 2 * k + 1)))
            lhs = basis.b(color, 2 * k) * (s * t)
            rhs = basis.b(color, 2 * k + 2) + basis.b(color, 2 * k).scale(c) + basis.b(color, 2 * k - 2)
            other = 3 - color
            rep.add(f"b_{color}_{2 * k} b{color} b{other} = b_{color}_{2 * k + 2} + c b_{color}_{2 * k}"
                    f" + b_{color}_{2 * k - 2}", lhs == rhs, _mismatch(lhs, rhs))
    # Γ-side identities used for the closed forms
    for k in range(1, (N - 2) // 2 + 1):
        g = {j: gamma(alg, elem(1, j)) for j in (2 * k - 1, 2 * k, 2 * k + 1, 2 * k + 2)}
        lhs = g[2 * k] * b1
        rhs = g[2 * k + 1] + g[2 * k - 1].scale(_mono(alg, -1, 1))
        rep.add(f"Gamma_1_{2 * k} b1 = Gamma_1_{2 * k + 1} + v1^-1 v2 Gamma_1_{2 * k - 1}", lhs == rhs,
                _mismatch(lhs, rhs))
        lhs = g[2 * k + 1] * b2
        rhs = g[2 * k + 2] + g[2 * k].scale(_mono(alg, 1, -1))
        rep.add(f"Gamma_1_{2 * k + 1} b2 = Gamma_1_{2 * k + 2} + v1 v2^-1 Gamma_1_{2 * k}", lhs == rhs,
                _mismatch(lhs, rhs))
    ok, detail = equal_parameter_check(basis)
    rep.add("equal-parameter specialization of b_1_4 is the KL element (constant 2)", ok, detail)
    return rep


def equal_parameter_check(basis: Double0Basis) -> Tuple[bool, str]:
    """Under v₁ = v₂ = v: c ↦ 2 and b_{1_4} ↦ Σ_{y ≤ 1_4} v^{4-ℓ(y)} δ_y."""
    alg = basis.algebra
    eq_alg = HeckeAlgebra(ParameterMap.equal(alg.system))
    tgt = eq_alg.group

    def spec(c: GroupAlgebraElement) -> GroupAlgebraElement:
        return c.map_exponents(lambda x: tgt.element([sum(x.vector())]), tgt)

    c_spec = spec(_c(alg))
    ok_c = c_spec == eq_alg.scalar(2)
    lhs = basis.b(1, 4).map_coefficients(eq_alg, spec)
    w = elem(1, 4)
    kl = HeckeElement(eq_alg, {y: GroupAlgebraElement.monomial(tgt.element([4 - y.length]))
                               for y in alg.system.elements_up_to(4) if alg.system.bruhat_leq(y, w)})
    ok = ok_c and lhs == kl
    return ok, "" if ok else f"constant -> {c_spec.format()}; {_mismatch(lhs, kl)}"


# ------------------------------------------------------------ invariants

def is_unitriangular(basis: Double0Basis) -> bool:
    for w, h in basis.elements.items():
        top = h.coefficient(w)
        if top != basis.algebra.one:
            return False
        if any(y != w and y.length >= w.length for y in h.terms):
            return False
    return True


def coefficient_profile(basis: Double0Basis) -> Dict[DihedralElement, Tuple[bool, bool]]:
    """For each basis element: (all coefficients single monomials, all coefficients have positive integer coefficients)."""
    out = {}
    for w, h in basis.elements.items():
        mono = all(c.is_monomial() for c in h.terms.values())
        pos = all(v > 0 for c in h.terms.values() for v in c.terms.values())
        out[w] = (mono, pos)
    return out


def decompose(basis: Double0Basis, h: HeckeElement) -> Dict[DihedralElement, GroupAlgebraElement]:
    """Coefficients of h in the basis (peel off top-length terms)."""
    out: Dict[DihedralElement, GroupAlgebraElement] = {}
    rest = h
    while not rest.is_zero():
        w, c = rest.top()
        if w not in basis.elements:
            raise ValueError(f"element of length {w.length} lies outside the basis window")
        out[w] = c
        rest = rest - basis.elements[w].scale(c)
    return out


def bar_invariance_query(basis: Double0Basis) -> Dict[DihedralElement, bool]:
    """Experimental: which basis elements are fixed by v_i ↦ v_i^{-1}, δ_w ↦ δ_{w^{-1}}^{-1}.  No outcome is asserted."""
    alg = basis.algebra
    inv = BarInvolution(alg.group, [[-1, 0], [0, -1]])
    return {w: bar(h, inv) == h for w, h in basis.elements.items()}


# ------------------------------------------------------------ cells

@dataclass
class CellReport:
    N: int
    window: int
    right_cells: List[List[DihedralElement]]
    two_sided_cells: List[List[DihedralElement]]
    caveat: str

    def lines(self, system: CoxeterSystem) -> List[str]:
        def fmt(cell):
            return "{" + ", ".join(system.word_string(w) or "e" for w in cell) + "}"
        out = [f"window: lengths <= {self.window} (basis computed to length {self.N})"]
        out += [f"right cell {i + 1}: {fmt(c)}" for i, c in enumerate(self.right_cells)]
        out += [f"two-sided cell {i + 1}: {fmt(c)}" for i, c in enumerate(self.two_sided_cells)]
        out.append(f"caveat: {self.caveat}")
        return out


def _scc(nodes: List, edges: Dict) -> List[List]:
    """Strongly connected components (iterative Tarjan), deterministic order."""
    index: Dict = {}
    low: Dict = {}
    on_stack = set()
    stack: List = []
    comps: List[List] = []
    counter = 0
    for root in nodes:
        if root in index:
            continue
        work = [(root, iter(edges.get(root, ())))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            v, it = work[-1]
            advanced = False
            for u in it:
                if u not in index:
                    index[u] = low[u] = counter
                    counter += 1
                    stack.append(u)
                    on_stack.add(u)
                    work.append((u, iter(edges.get(u, ()))))
                    advanced = True
                    break
                if u in on_stack:
                    low[v] = min(low[v], index[u])
            if advanced:
                continue
            work.pop()
            if work:
                low[work[-1][0]] = min(low[work[-1][0]], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    u = stack.pop()
                    on_stack.discard(u)
                    comp.append(u)
                    if u == v:
                        break
                comps.append(comp)
    return comps


def compute_cells(basis: Double0Basis, N: Optional[int] = None) -> CellReport:
    """Right cells from x ≤_R y iff b_x occurs in b_y b_s; two-sided cells also use b_s b_y."""
    N = basis.N if N is None else N
    if N < 8:
        raise ValueError("cell computation needs N >= 8")
    if N > basis.N:
        raise ValueError("window exceeds the computed basis")
    alg = basis.algebra
    sys_ = alg.system
    window = N - 2
    nodes = [w for w in basis.ordered() if w.length <= N]
    right: Dict = {w: set() for w in nodes}
    both: Dict = {w: set() for w in nodes}
    for y in nodes:
        if y.length > N - 1:
            continue
        for s in sys_.generators:
            for x in decompose(basis, mult_b_s(basis.elements[y], s)):
                right[y].add(x)
                both[y].add(x)
            for x in decompose(basis, left_mult_b_s(s, basis.elements[y])):
                both[y].add(x)
    # edge y -> x means x ≤ y; cells are strongly connected components
    key = sys_.sort_key

    def restrict(comps):
        out = []
        for comp in comps:
            inside = sorted((w for w in comp if w.length <= window), key=key)
            if inside:
                out.append(inside)
        return sorted(out, key=lambda c: key(c[0]))

    r_edges = {y: sorted(xs, key=key) for y, xs in right.items()}
    b_edges = {y: sorted(xs, key=key) for y, xs in both.items()}
    caveat = (f"products computed for lengths <= {N - 1}; classes are reported only for lengths <= {window} "
              "and describe the infinite group only within this window")
    return CellReport(N, window, restrict(_scc(nodes, r_edges)), restrict(_scc(nodes, b_edges)), caveat)


# ------------------------------------------------------------ output

def basis_rows(basis: Double0Basis) -> List[Tuple[str, List[Tuple[str, str]]]]:
    sys_ = basis.algebra.system
    rows = []
    for w in basis.ordered():
        h = basis.elements[w]
        coeffs = [(sys_.word_string(y) or "e", _monomial_string(c)) for y, c in reversed(h.sorted_terms())]
        rows.append((sys_.word_string(w) or "e", coeffs))
    return rows


def _monomial_string(c: GroupAlgebraElement) -> str:
    """1, v1^a*v2^b, sums joined by ' + '."""
    parts = []
    for vec, coef in sorted(c.sorted_items(), key=lambda t: (-sum(t[0]), t[0])):
        mono = "*".join(f"v{i + 1}" if e == 1 else f"v{i + 1}^{e}" for i, e in enumerate(vec) if e)
        if not mono:
            parts.append(str(coef))
        elif coef == 1:
            parts.append(mono)
        else:
            parts.append(f"{coef}*{mono}")
    return " + ".join(parts) if parts else "0"


def to_csv(basis: Double0Basis) -> str:
    """One row per (basis element, standard basis element): ``basis,delta,coefficient``."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["basis", "delta", "coefficient"])
    for name, coeffs in basis_rows(basis):
        for y, c in coeffs:
            writer.writerow([name, y, c])
    return buf.getvalue()


def to_json(basis: Double0Basis) -> str:
    data = {
        "max_length": basis.N,
        "parameters": {"s1": [1, 0], "s2": [0, 1]},
        "basis": [{"element": sys_word, "expansion": h.to_json()}
                  for sys_word, h in ((basis.algebra.system.word_string(w) or "e", basis.elements[w])
                                      for w in basis.ordered())],
    }
    return json.dumps(data, indent=1, sort_keys=True)
