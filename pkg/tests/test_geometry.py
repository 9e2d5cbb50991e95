from __future__ import annotations

from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import instance

INSTANCES = ["3,3,4", "2,3,7", "2,4,5", "2,3,inf", "3,3,inf"]


@pytest.mark.parametrize("labels", INSTANCES)
def test_segment_crosses_three_lines(labels):
    ctx = instance(labels).ctx
    assert len(ctx.segment_crossings()) == 3


@pytest.mark.parametrize("labels", INSTANCES)
def test_axial_factorization(labels):
    ctx = instance(labels).ctx
    s1, s2, s3 = ctx.base_chamber().ordered_walls
    assert s1 * s2 * s3 == ctx.w


@pytest.mark.parametrize("labels", INSTANCES)
def test_three_vertex_orbits(labels):
    count, one_each = instance(labels).ctx.vertex_orbits(3)
    assert count == 3 and one_each


@pytest.mark.parametrize("labels", INSTANCES)
def test_axis_pole_is_flipped(labels):
    ctx = instance(labels).ctx
    M = ctx.model
    assert ctx.w.act(ctx.v) == tuple(-x for x in ctx.v)
    assert ctx.Bvv.sign() > 0
    assert M.B(ctx.q, ctx.v).is_zero()


@pytest.mark.parametrize("labels", ["3,3,4", "2,3,inf"])
def test_axial_order_is_total_and_phi_invariant(labels):
    inst = instance(labels)
    ctx = inst.ctx
    refl = [r.element for r in inst.interval_reflections(6)]
    for a, b in combinations(refl, 2):
        c = ctx.compare(a, b)
        assert c != 0
        assert ctx.compare(b, a) == -c
    for a, b, c in combinations(refl[:18], 3):
        if ctx.precedes(a, b) and ctx.precedes(b, c):
            assert ctx.precedes(a, c)


@pytest.mark.parametrize("labels", ["3,3,4", "2,3,inf"])
def test_vertical_horizontal_split(labels):
    inst = instance(labels)
    ctx = inst.ctx
    M = ctx.model
    for r in inst.interval_reflections(6):
        n = r.element.pole()
        # a line crosses the axis exactly when its pole and the axis pole span a timelike direction
        gram = M.B(n, n) * ctx.Bvv - M.B(n, ctx.v) ** 2
        assert ctx.is_vertical(r.element) == (gram.sign() > 0)


@settings(max_examples=30, deadline=None)
@given(st.integers(min_value=-3, max_value=3))
def test_w_power_points_on_axis(k):
    ctx = instance("2,3,7").ctx
    p = ctx.w_power_point(k)
    assert ctx.model.B(p, ctx.v).is_zero()
