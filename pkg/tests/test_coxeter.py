import itertools

import pytest
from hypothesis import given, strategies as st

from heckegrade.coxeter import (
    MAX_EXPRESSION, CoxeterSystem, DihedralElement, all_subexpressions, defect_A, defect_uneq,
    format_word, label, parse_expression,
)
from heckegrade.errors import SizeLimit, UnsupportedBackend
from heckegrade.grading import GradingGroup, GradingSpec, build_bigrading

SYSTEMS = [CoxeterSystem.dihedral(m) for m in (2, 3, 4, 5, 6)] + [
    CoxeterSystem.dihedral("inf"), CoxeterSystem.symmetric(3), CoxeterSystem.symmetric(4)]


def words(system, max_len=9):
    return st.lists(st.sampled_from(system.generators), max_size=max_len).map(tuple)


def test_parse_and_format():
    assert parse_expression("s1,s2,s1") == (0, 1, 0)
    assert parse_expression("1, 2") == (0, 1)
    assert parse_expression("") == ()
    assert format_word((0, 1)) == "s1.s2"
    with pytest.raises(ValueError):
        parse_expression("s0")


def test_dihedral_infinite_extension():
    W = CoxeterSystem.dihedral("inf")
    assert W.mul_gen(DihedralElement(0, 3), 1) == DihedralElement(0, 4)
    assert W.mul_gen(DihedralElement(0, 3), 0) == DihedralElement(0, 2)


def test_symmetric_longest():
    W = CoxeterSystem.symmetric(3)
    w = W.from_word((0, 1, 0))
    assert w == (3, 2, 1)
    assert W.from_word((1, 0, 1)) == w
    assert W.length(w) == 3


@pytest.mark.parametrize("m,size", [(2, 4), (3, 6), (5, 10), (6, 12)])
def test_finite_dihedral_order(m, size):
    W = CoxeterSystem.dihedral(m)
    assert len(W.elements_up_to(m + 3)) == size


def test_symmetric_order():
    assert len(CoxeterSystem.symmetric(4).elements_up_to(10)) == 24


@pytest.mark.parametrize("W", SYSTEMS, ids=repr)
def test_length_changes_by_one(W):
    for w in W.elements_up_to(7):
        for s in W.generators:
            ws = W.mul_gen(w, s)
            assert W.length(ws) == W.length(w) + (-1 if W.right_descent(w, s) else 1)
            assert W.mul_gen(ws, s) == w


@pytest.mark.parametrize("W", SYSTEMS, ids=repr)
def test_reduced_words_roundtrip(W):
    for w in W.elements_up_to(7):
        word = W.reduced_word(w)
        assert len(word) == W.length(w)
        assert W.from_word(word) == w
        assert W.multiply(w, W.inverse(w)) == W.identity()


@pytest.mark.parametrize("W", SYSTEMS, ids=repr)
def test_group_axioms(W):
    @given(words(W), words(W), words(W))
    def check(a, b, c):
        x, y, z = W.from_word(a), W.from_word(b), W.from_word(c)
        assert W.multiply(W.multiply(x, y), z) == W.multiply(x, W.multiply(y, z))
        assert W.from_word(a + b) == W.multiply(x, y)
        assert W.left_descent(x, 0) == W.right_descent(W.inverse(x), 0)

    check()


def test_bruhat_examples():
    W = CoxeterSystem.dihedral("inf")
    e = W.identity()
    assert all(W.bruhat_leq(e, w) for w in W.elements_up_to(5))
    assert W.bruhat_leq(DihedralElement(1, 2), DihedralElement(0, 3))
    assert not W.bruhat_leq(DihedralElement(0, 3), DihedralElement(1, 3))
    with pytest.raises(UnsupportedBackend):
        CoxeterSystem.symmetric(3).bruhat_leq((1, 2, 3), (3, 2, 1))


@pytest.mark.parametrize("m", [3, 4, 5, "inf"])
def test_bruhat_is_subword_order(m):
    W = CoxeterSystem.dihedral(m)
    els = W.elements_up_to(6)
    for w in els:
        word = W.reduced_word(w)
        below = {W.from_word(sub) for r in range(len(word) + 1) for sub in itertools.combinations(word, r)}
        for x in els:
            assert W.bruhat_leq(x, w) == (x in below)


def test_labeling_examples():
    W = CoxeterSystem.dihedral(3)
    lab = label(W, (0,), (1,))
    assert lab.labels == ("U1",) and lab.endpoint == W.from_word((0,))
    lab = label(W, (0, 0), (1, 1))
    assert lab.labels == ("U1", "D1") and lab.endpoint == W.identity()
    assert label(W, (0, 0), (0, 0)).labels == ("U0", "U0")


def test_defect_examples():
    W = CoxeterSystem.dihedral("inf")
    spec = build_bigrading([0, 1])
    assert defect_A(label(W, (0, 0), (1, 0)), spec) == -spec.g[0]
    assert defect_A(label(W, (0, 0), (0, 1)), spec) == spec.f[0]
    assert defect_A(label(W, (0, 1, 0), (1, 1, 1)), spec).is_zero()
    assert defect_uneq(label(W, (0, 0), (1, 1)), W) == (0, 0)
    assert defect_uneq(label(W, (0, 0), (0, 0)), W) == (2, 0)


@pytest.mark.parametrize("W", SYSTEMS, ids=repr)
def test_reduced_word_has_one_full_subexpression(W):
    for w in W.elements_up_to(5):
        word = W.reduced_word(w)
        hits = [lab for lab in all_subexpressions(W, word) if lab.endpoint == w]
        assert len(hits) == 1 and all(x == "U1" for x in hits[0].labels)


@pytest.mark.parametrize("W", SYSTEMS[:6], ids=repr)
def test_defect_A_specializes_to_uneq(W):
    classes = W.uneq_classes()
    grp = GradingGroup(len(classes))
    which = {s: i for i, c in enumerate(classes) for s in c}
    unit = {s: grp.gen(which[s]) for s in W.generators}
    spec = GradingSpec(grp, unit, unit, {s: unit[s] * 2 for s in W.generators})
    for expr in itertools.product(W.generators, repeat=6):
        for lab in all_subexpressions(W, expr):
            assert defect_A(lab, spec).vector() == defect_uneq(lab, W)
            assert lab.endpoint == W.from_word([s for s, b in zip(expr, lab.bits) if b])


def test_expression_limit():
    W = CoxeterSystem.dihedral(3)
    with pytest.raises(SizeLimit):
        all_subexpressions(W, (0,) * (MAX_EXPRESSION + 1))
