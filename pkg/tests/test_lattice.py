from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from artifact.lattice import NotInInterval
from conftest import instance


def members(labels, radius=5):
    return [u for u in instance(labels).interval_members(radius) if u.rank in (1, 2)]


def brute_reflection_length_two(inst, g, refl):
    """g is a product of two reflections from the list."""
    keys = {r.key for r in refl}
    return any((r * g).key in keys for r in refl)


@pytest.mark.parametrize("labels", ["3,3,4", "2,3,inf"])
def test_reflection_membership_brute_force(labels):
    inst = instance(labels)
    M, I = inst.model, inst.interval
    big = M.reflections_in_ball(11)
    for g in M.reflections_in_ball(5):
        expected = brute_reflection_length_two(inst, g * inst.ctx.w, big)
        assert (I.in_interval(g) is not None) == expected, M.word_of(g)


def test_translation_with_reflection_complement_is_not_member():
    # complement of this translation is a reflection, yet no mirror is perpendicular to its axis
    inst = instance("3,3,4")
    M, I = inst.model, inst.interval
    t = M.element("acbacb")
    assert M.classify(t).kind == "translation"
    assert (M.w * t.inverse()).is_reflection()
    assert I.in_interval(t) is None


@pytest.mark.parametrize("word", ["bacab", "bcacb"])
def test_reflections_not_below_w(word):
    inst = instance("3,3,4")
    assert inst.interval.in_interval(inst.model.element(word)) is None


def test_member_raises_on_non_member():
    inst = instance("3,3,4")
    with pytest.raises(NotInInterval):
        inst.interval.member(inst.model.element("abab"))


@settings(max_examples=80, deadline=None)
@given(st.data())
def test_join_meet_laws(data):
    labels = data.draw(st.sampled_from(["3,3,4", "2,3,inf"]))
    I = instance(labels).interval
    pool = members(labels)
    u = data.draw(st.sampled_from(pool))
    v = data.draw(st.sampled_from(pool))
    j, m = I.join(u, v), I.meet(u, v)
    assert I.leq(u, j) and I.leq(v, j)
    assert I.leq(m, u) and I.leq(m, v)
    assert I.join(u, m) == u
    assert I.meet(u, j) == u
    assert I.join(v, u) == j and I.meet(v, u) == m


@settings(max_examples=80, deadline=None)
@given(st.data())
def test_complements_and_phi(data):
    labels = data.draw(st.sampled_from(["3,3,4", "2,3,inf", "2,3,7"]))
    inst = instance(labels)
    I, w = inst.interval, inst.ctx.w
    u = data.draw(st.sampled_from(members(labels)))
    left, right = I.complements(u)
    assert left.element * u.element == w
    assert u.element * right.element == w
    assert left.rank == right.rank == 3 - u.rank
    # the left complement of the right complement is u again
    assert I.left_complement(right) == u
    assert I.phi(I.phi_inv(u)) == u
    assert I.phi(u).rank == u.rank


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_rank_two_factorizations(data):
    labels = data.draw(st.sampled_from(["3,3,4", "2,3,inf"]))
    I = instance(labels).interval
    u = data.draw(st.sampled_from([x for x in members(labels) if x.rank == 2]))
    f = I.increasing_factorization(u)
    assert len(f) == 2 and f[0].element * f[1].element == u.element
    assert I.is_increasing(f)
    for r in I.reflections_below(u, 2):
        assert I.leq(r, u)


@pytest.mark.parametrize("labels", ["3,3,4", "2,3,7", "2,3,inf"])
def test_w_factorization_increasing(labels):
    I = instance(labels).interval
    f = I.increasing_factorization(I.top)
    assert f[0].element * f[1].element * f[2].element == I.top.element
    assert I.is_increasing(f)
