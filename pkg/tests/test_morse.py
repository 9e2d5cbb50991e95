from __future__ import annotations

import pytest

from artifact.morse import IntervalCell, build_truncation
from conftest import instance


@pytest.fixture(scope="module", params=["3,3,4", "2,3,inf"])
def trunc(request):
    mc = instance(request.param).morse()
    return build_truncation(mc, radius=3, window=1)


def test_zero_cell_never_matched(trunc):
    mc = trunc.complex
    zero = IntervalCell(())
    assert mc.M_partner(zero, 1) is None
    assert mc.N_partner(zero, 1) is None


def test_cells_valid_and_components_partition(trunc):
    mc = trunc.complex
    owner = {}
    for comp, cells in trunc.comp_cells():
        for c in cells:
            assert mc.is_valid(c)
            assert owner.setdefault(c, comp.key) == comp.key


def test_classification_exclusive(trunc):
    mc = trunc.complex
    for comp in trunc.components.values():
        preds = mc.type_predicates(comp.d, comp.base)
        assert sum(preds.values()) == 1
        assert preds[comp.type_tag]


def test_faces_are_valid_and_below(trunc):
    mc = trunc.complex
    I = mc.I
    for c in sorted(trunc.cells, key=lambda c: repr(c.key))[:200]:
        for f in mc.faces(c):
            assert f.dim == c.dim - 1
            assert mc.is_valid(f)
            assert I.leq(mc.product(f), mc.product(c))


def test_M_is_an_involution_pairing_a_face(trunc):
    mc = trunc.complex
    for comp, cells in trunc.comp_cells():
        if mc.in_K2(comp):
            continue
        for c in cells:
            edge = mc.M_partner(c, 1)
            if edge is None:
                continue
            other = mc.partner_of(edge, c)
            back = mc.M_partner(other, 1)
            if back is None:
                continue  # partner outside the truncation window
            assert mc.partner_of(back, other) == c
            assert edge.lower in mc.faces(edge.upper)


def test_special_translation_is_unique_per_component(trunc):
    mc = trunc.complex
    for comp in trunc.components.values():
        if mc.in_K2(comp):
            continue
        t = mc.special_translation(comp)
        assert mc.is_special(t)
