"""Acceptance suite: one check per criterion, one printed PASS/FAIL line each.

Run under pytest (lines appear in the terminal summary) or directly with
``python tests/test_acceptance.py``.
"""
from __future__ import annotations

import itertools
import random
import sys
import time
from fractions import Fraction

import pytest

from heckegrade import arith
from heckegrade import temperley_lieb as tl
from heckegrade.coxeter import CoxeterSystem
from heckegrade.dihedral_double0 import (compute_basis, compute_cells, elem, structure_constant_check,
                                         verify_closed_form)
from heckegrade.errors import NonIntegralAtP, PoleAtZero
from heckegrade.grading import (CartanSpec, CoxeterMatrix, GradingGroup, GradingSpec, build_bigrading,
                                build_p_adapted_grading, validate)
from heckegrade.hecke import HeckeAlgebra, ParameterMap, bott_samelson, deodhar_expand

RESULTS: dict = {}


def record(num: int, title: str, ok: bool, detail: str, seconds: float) -> None:
    RESULTS[num] = f"[{'PASS' if ok else 'FAIL'}] #{num:02d} {title} ({seconds:.1f}s): {detail}"


# ------------------------------------------------------------ checks

def check_01():
    table = arith.binom_spec_table(24)
    bad = []
    for n in range(25):
        oracle = arith.gaussian_binom_at_i(n)
        for k in range(n + 1):
            v = table[(n, k)]
            if v != arith.binom_at_zero_formula(n, k) or v != oracle[k]:
                bad.append((n, k))
    return not bad, f"{len(table)} entries, mismatches {bad[:5]}"


def check_02():
    bad = []
    for a in range(0, 21):
        if arith.quantum_int(2 * a)(0) != 0:
            bad.append(("even", a))
        if arith.quantum_int(2 * a + 1)(0) != (-1) ** a:
            bad.append(("odd", a))
    ratios = 0
    for a in range(1, 21):
        for b in range(1, a + 1):
            if a % b:
                continue
            q = arith.DeltaRational(arith.quantum_int(2 * a), arith.quantum_int(2 * b))
            ratios += 1
            if q.at_zero() != Fraction((-1) ** (a - b) * a, b):
                bad.append(("ratio", a, b))
    return not bad, f"quantum numbers a<=20 and {ratios} ratios; failures {bad[:5]}"


def check_03():
    outcome = {}
    for n in range(1, 13):
        try:
            tl.jw_at_zero(n, 0)
            outcome[n] = True
        except PoleAtZero:
            outcome[n] = False
    ok = all(outcome[n] == (n % 2 == 1) for n in outcome)
    exist = [n for n, v in outcome.items() if v]
    return ok, f"exists for n in {exist}"


def _char_p_case(n, p):
    try:
        J = tl.jw_at_zero(n, p)
    except NonIntegralAtP:
        return "NonIntegralAtP", False
    idem = tl.is_idempotent(J)
    rot = tl.is_rotation_invariant(J)
    return ("idempotent" if idem else "non-idempotent"), rot


def check_04():
    good = [(3, 2), (7, 2), (5, 3), (9, 5)]
    bad = [(5, 5), (3, 3), (7, 3)]
    parts = []
    biconditional = True
    literal = True
    for n, p in good + bad:
        how, rot = _char_p_case(n, p)
        exists_and_rot = how != "NonIntegralAtP" and how == "idempotent" and rot
        expected = (n, p) in good
        biconditional &= exists_and_rot == expected
        if (n, p) in bad:
            literal &= how in ("NonIntegralAtP", "non-idempotent")
        parts.append(f"({n},{p}) {how}{', rotatable' if rot else ', not rotatable' if how != 'NonIntegralAtP' else ''}")
    detail = (f"success-and-rotatable iff n+1=2p^k: {'holds' if biconditional else 'violated'}; "
              f"claimed failure mode (NonIntegralAtP or non-idempotent) for (5,5),(3,3),(7,3): "
              f"{'holds' if literal else 'does not hold'} -- " + "; ".join(parts))
    return biconditional and literal, detail


def check_05():
    bad = []
    p2 = {}
    for n in range(1, 12, 2):
        p1, q2 = tl.partial_trace_scalars(n, 0)
        if p1 != 0:
            bad.append(("p1", n))
        p2[n] = q2
    for k in range(1, 6):
        if p2[2 * k + 1] != Fraction(-(k + 1), k):
            bad.append(("p2", 2 * k + 1, p2[2 * k + 1]))
    for n in range(3, 10, 2):
        if p2[n + 2] != -2 - 1 / p2[n]:
            bad.append(("recursion", n))
    return not bad, f"p2 = {[str(p2[n]) for n in range(3, 12, 2)]}; failures {bad}"


def check_06():
    chain = tl.jw_two_step(13, return_chain=True)
    bad = [n for n in range(3, 14, 2) if chain[n] != tl.jw_at_zero(n, 0)]
    return not bad, f"odd n = 3..13 compared, mismatches {bad}"


def check_07():
    reports = [tl.decomposition_check(n) for n in range(1, 10, 2)]
    bad = [r.n for r in reports if not r.ok]
    return not bad, f"odd n <= 9 (sum, idempotency incl. E3/p2, orthogonality); failures {bad}"


def check_08():
    data = tl.TwoColorDegreeData.symbolic()
    ms = tl.enumerate_matchings(8, 8)
    bad = sum(1 for D in ms if tl.degree(tl.rotate_ccw(D), data) != -tl.degree(D, data))
    odd_ok = all(tl.degree(tl.rotate_ccw(D), data) == -tl.degree(D, data)
                 for n in (7, 9) for D in tl.enumerate_matchings(n, n))
    bal = tl.TwoColorDegreeData.symbolic_balanced()
    bal_bad = sum(1 for D in ms if tl.degree(tl.rotate_ccw(D), bal) != -tl.degree(D, bal))
    return bad == 0, (f"TL_8 with free f/g degrees: {len(ms)} matchings, {bad} violate deg(rot D) = -deg D; "
                      f"with f_s+g_s = f_t+g_t: {bal_bad} violations (all degrees vanish); "
                      f"odd strand counts TL_7, TL_9: {'holds' if odd_ok else 'fails'}")


def check_09():
    data = tl.TwoColorDegreeData.symbolic()
    cases = [(3, 2), (5, 3), (7, 2), (9, 5)] + [(n, 0) for n in range(1, 12, 2)]
    bad = [c for c in cases if not tl.check_jw_homogeneity(c[0], c[1], data).homogeneous]
    return not bad, f"{len(cases)} cases with free symbolic f/g degrees; failures {bad}"


def check_10():
    total_g = total_z = 0
    bad = []
    for n in range(2, 10):
        rep = tl.coeff_ratio_check(n)
        total_g += rep.checked_generic
        total_z += rep.checked_zero
        if not rep.ok:
            bad.append(n)
    return not bad, f"{total_g} generic and {total_z} delta=0 pairs; failing n {bad}"


def check_11():
    systems = [CoxeterSystem.dihedral(m) for m in range(2, 9)] + [CoxeterSystem.dihedral("inf"),
                                                                  CoxeterSystem.symmetric(4)]
    algebras = [HeckeAlgebra(ParameterMap.free(s)) for s in systems]
    count = 0
    bad = []
    for alg in algebras:
        for length in range(7):
            for expr in itertools.product(alg.system.generators, repeat=length):
                count += 1
                if deodhar_expand(alg, expr) != bott_samelson(alg, expr):
                    bad.append((alg.system, expr))
    rng = random.Random(20240611)
    for _ in range(1000):
        alg = rng.choice(algebras)
        expr = tuple(rng.choice(alg.system.generators) for _ in range(rng.randint(0, 10)))
        count += 1
        if deodhar_expand(alg, expr) != bott_samelson(alg, expr):
            bad.append((alg.system, expr))
    return not bad, f"{count} expressions over I2(2..8), I2(inf), S4; mismatches {bad[:3]}"


def check_12():
    rep = verify_closed_form(compute_basis(20))
    return rep.passed, f"{len(rep.checks)} closed-form comparisons up to length 20"


def check_13():
    rep = structure_constant_check(compute_basis(18))
    failed = [name for name, ok, _ in rep.checks if not ok]
    return rep.passed, f"{len(rep.checks)} identities (k <= 8, equal-parameter check included); failed {failed}"


def check_14():
    basis = compute_basis(14)
    rep = compute_cells(basis, 14)
    w = rep.window
    expected_right = [[elem(1, 0)], [elem(1, 1)], [elem(2, 1)],
                      [elem(1, k) for k in range(2, w + 1)], [elem(2, k) for k in range(2, w + 1)]]
    key = basis.algebra.system.sort_key
    norm = lambda cells: sorted((sorted(c, key=key) for c in cells), key=lambda c: key(c[0]))
    expected_two = [[elem(1, 0)], [elem(1, 1)], [elem(2, 1)],
                    [elem(c, k) for k in range(2, w + 1) for c in (1, 2)]]
    ok_r = norm(rep.right_cells) == norm(expected_right)
    ok_t = norm(rep.two_sided_cells) == norm(expected_two)
    return ok_r and ok_t, (f"window <= {w}: {len(rep.right_cells)} right cells "
                           f"({'match' if ok_r else 'MISMATCH'}), {len(rep.two_sided_cells)} two-sided "
                           f"({'match' if ok_t else 'MISMATCH'})")


def check_15():
    m4 = CoxeterMatrix.dihedral(4)
    out = []
    r1 = validate(build_bigrading([0, 1]), m4, CartanSpec({(0, 1): Fraction(-1), (1, 0): Fraction(-2)}, 0))
    out.append(("bigrading I2(4)", r1.passed))
    r2 = validate(build_p_adapted_grading(m4, 2), m4, CartanSpec({(0, 1): Fraction(0), (1, 0): Fraction(0)}, 2))
    out.append(("p-adapted p=2 m=4", r2.passed))
    grp = GradingGroup(2)
    bad = GradingSpec(grp, {0: grp.element([1, 0]), 1: grp.element([1, 0])},
                      {0: grp.element([0, 1]), 1: grp.element([0, 2])},
                      {0: grp.element([1, 1]), 1: grp.element([1, 2])})
    r3 = validate(bad, CoxeterMatrix.dihedral(3), CartanSpec({(0, 1): Fraction(-1), (1, 0): Fraction(-1)}, 0))
    out.append(("unbalanced root degrees", r3.failed_clause == "balanced_roots"))
    r4 = validate(build_bigrading([0, 1]), m4, CartanSpec({(0, 1): Fraction(0), (1, 0): Fraction(0)}, 0))
    out.append(("invalid realization", r4.failed_clause == "realization"))
    return all(ok for _, ok in out), ", ".join(f"{name}: {'ok' if ok else 'WRONG'}" for name, ok in out)


def check_16():
    grp = GradingGroup(2)
    data = tl.TwoColorDegreeData(grp, grp.gen(0), grp.gen(0), grp.gen(1), grp.gen(1))
    ring = tl.ring_at_zero(0)
    ms = tl.enumerate_matchings(5, 5)
    rng = random.Random(7)

    def rnd():
        return tl.TLElement.from_terms(5, 5, ring, {m: Fraction(rng.randint(-5, 5), rng.randint(1, 4))
                                                    for m in rng.sample(ms, rng.randint(1, 6))})

    chi = tl.frobenius_character(Fraction(3))
    chi_inv = tl.frobenius_character(Fraction(1, 3))
    mult_ok = nontrivial = 0
    inverse_ok = True
    for _ in range(100):
        x, y = rnd(), rnd()
        tx, ty = tl.theta_rescale(x, data, chi), tl.theta_rescale(y, data, chi)
        nontrivial += tx != x
        mult_ok += tl.theta_rescale(tl.multiply(x, y), data, chi) == tl.multiply(tx, ty)
        inverse_ok &= tl.theta_rescale(tx, data, chi_inv) == x
    return mult_ok == 100 and inverse_ok, (f"{mult_ok}/100 pairs multiplicative ({nontrivial} rescalings nontrivial), "
                                           f"q then 1/q is the identity: {inverse_ok}")


CRITERIA = [
    (1, "quantum binomials at delta=0, n <= 24", check_01),
    (2, "quantum numbers and ratios at delta=0", check_02),
    (3, "JW existence at delta=0, char 0, n <= 12", check_03),
    (4, "JW existence and rotatability in char p", check_04),
    (5, "partial-trace scalars p1, p2", check_05),
    (6, "two-step recursion vs specialization, odd n <= 13", check_06),
    (7, "E_i orthogonal idempotent decomposition, odd n <= 9", check_07),
    (8, "degree antisymmetry under rotation on TL_8", check_08),
    (9, "JW homogeneity", check_09),
    (10, "quantum-binomial coefficient ratios, n <= 9", check_10),
    (11, "Deodhar defect formula vs iterative b_s products", check_11),
    (12, "double-0 basis closed forms, length <= 20", check_12),
    (13, "double-0 structure constants", check_13),
    (14, "windowed cells at N=14", check_14),
    (15, "grading validator", check_15),
    (16, "theta rescaling and Frobenius character", check_16),
]


def _run(num, title, fn):
    t = time.perf_counter()
    ok, detail = fn()
    record(num, title, ok, detail, time.perf_counter() - t)
    return ok, detail


@pytest.mark.parametrize("num,title,fn", CRITERIA, ids=[f"criterion_{n:02d}" for n, _, _ in CRITERIA])
def test_criterion(num, title, fn):
    ok, detail = _run(num, title, fn)
    print(RESULTS[num])
    assert ok, detail


if __name__ == "__main__":
    failures = 0
    for num, title, fn in CRITERIA:
        ok, _ = _run(num, title, fn)
        failures += not ok
        print(RESULTS[num], flush=True)
    sys.exit(1 if failures else 0)
