import csv
import io
import json

import pytest

from heckegrade.dihedral_double0 import (
    _mono, bar_invariance_query, coefficient_profile, compute_basis, compute_cells, decompose, elem,
    equal_parameter_check, gamma, is_unitriangular, length_vector, make_algebra, structure_constant_check,
    to_csv, to_json, verify_closed_form,
)
from heckegrade.hecke import HeckeElement, mult_b_s

BASIS = compute_basis(12)
ALG = BASIS.algebra
SYS = ALG.system


def test_gamma_examples():
    assert gamma(ALG, SYS.identity()) == ALG.unit()
    assert gamma(ALG, elem(1, 1)) == ALG.b(0)
    v1, v2 = ALG.v[0], ALG.v[1]
    want = (ALG.delta_word([0, 1]) + ALG.delta_word([0]).scale(v2)
            + ALG.delta_word([1]).scale(v1) + ALG.unit().scale(v1 * v2))
    assert gamma(ALG, elem(1, 2)) == want == ALG.b(0) * ALG.b(1)


def test_length_vector():
    assert length_vector(elem(1, 3)) == (2, 1)
    assert length_vector(elem(2, 3)) == (1, 2)
    assert length_vector(elem(2, 4)) == (2, 2)


def test_closed_forms_and_structure_constants():
    assert verify_closed_form(BASIS).passed
    assert structure_constant_check(BASIS).passed
    ok, detail = equal_parameter_check(BASIS)
    assert ok, detail


def test_unitriangular():
    assert is_unitriangular(BASIS)


def test_even_lengths_are_gamma():
    for k in range(0, 13, 2):
        for color in (1, 2):
            assert BASIS.b(color, k) == gamma(ALG, elem(color, k))


def test_coefficient_profile():
    # monomial coefficients at even length only; integer coefficients stay positive throughout
    prof = coefficient_profile(BASIS)
    for w, (mono, pos) in prof.items():
        assert pos
        assert mono == (w.length % 2 == 0 or w.length == 1)


def test_odd_length_example():
    b13 = BASIS.b(1, 3)
    assert b13 == gamma(ALG, elem(1, 3)) + gamma(ALG, elem(1, 1)).scale(_mono(ALG, -1, 1))
    assert decompose(BASIS, gamma(ALG, elem(1, 3))) == {elem(1, 3): ALG.one, elem(1, 1): -_mono(ALG, -1, 1)}


def test_span_contains_standard_basis():
    for w in SYS.elements_up_to(12):
        d = ALG.delta(w)
        coeffs = decompose(BASIS, d)
        total = ALG.zero()
        for x, c in coeffs.items():
            total = total + BASIS.elements[x].scale(c)
        assert total == d


def _reverse(h: HeckeElement) -> HeckeElement:
    return HeckeElement(h.algebra, {SYS.inverse(w): c for w, c in h.terms.items()})


def test_word_reversal_consistency():
    # right-multiplied recursion agrees with its left-multiplied mirror
    for k in range(1, 13):
        mirror = BASIS.b(1, k) if k % 2 else BASIS.b(2, k)
        assert _reverse(BASIS.b(1, k)) == mirror


def _swap(h: HeckeElement) -> HeckeElement:
    out = {}
    for w, c in h.terms.items():
        w2 = SYS.from_word([1 - s for s in SYS.reduced_word(w)])
        out[w2] = c.map_exponents(lambda x: ALG.group.element(list(reversed(x.vector()))), ALG.group)
    return HeckeElement(h.algebra, out)


def test_color_swap_symmetry():
    for k in range(13):
        assert _swap(BASIS.b(1, k)) == BASIS.b(2, k)


def test_products_expand_in_basis():
    for k in range(1, 10):
        for s in (0, 1):
            h = mult_b_s(BASIS.b(1, k), s)
            coeffs = decompose(BASIS, h)
            assert max(w.length for w in coeffs) == k + (0 if (k % 2 == 1) == (s == 0) else 1)


def test_bar_invariance_query():
    assert all(bar_invariance_query(BASIS).values())


def test_cells_small_window():
    rep = compute_cells(BASIS, 10)
    assert rep.window == 8
    assert len(rep.right_cells) == 5 and len(rep.two_sided_cells) == 4
    assert rep.right_cells[0] == [SYS.identity()]
    with pytest.raises(ValueError):
        compute_cells(BASIS, 20)


def test_recompute_is_deterministic():
    again = compute_basis(12, make_algebra())
    assert all(again.elements[w] == BASIS.elements[w] for w in BASIS.elements)
    assert to_csv(again) == to_csv(BASIS)


def test_csv_and_json():
    rows = list(csv.reader(io.StringIO(to_csv(compute_basis(3)))))
    assert rows[0] == ["basis", "delta", "coefficient"]
    assert ["s1.s2", "s1.s2", "1"] in rows
    assert ["s1.s2", "e", "v1*v2"] in rows
    data = json.loads(to_json(compute_basis(4)))
    assert data["max_length"] == 4
    assert len(data["basis"]) == 9
    alg = make_algebra()
    for entry in data["basis"]:
        h = HeckeElement.from_json(alg, entry["expansion"])
        assert h.top()[1] == alg.one
