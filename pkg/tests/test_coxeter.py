from __future__ import annotations

from collections import Counter
from itertools import combinations

import numpy as np
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from artifact.coxeter import CapExceeded, CoxeterModel, CoxeterSpec, NotHyperbolic
from conftest import instance

INSTANCES = ["3,3,4", "2,3,7", "2,4,5", "2,3,inf", "3,3,inf"]


def growth_counts(spec: CoxeterSpec, n: int) -> list[int]:
    """Sphere sizes from the growth series: 1/W(t) = sum over finite T of (-1)^|T| / W_T(1/t)."""
    t = sympy.Symbol("t")
    x = 1 / t

    def q(m):
        return sum(x**i for i in range(m))

    total = 1 - 3 / (1 + x)
    for s, u in combinations(range(3), 2):
        m = spec.label(s, u)
        if m is not None:
            total += 1 / ((1 + x) * q(m))
    W = sympy.cancel(1 / sympy.together(total))
    ser = sympy.series(W, t, 0, n + 1).removeO()
    return [int(ser.coeff(t, k)) for k in range(n + 1)]


@pytest.mark.parametrize("labels", INSTANCES)
def test_ball_sizes_match_growth_series(labels):
    M = instance(labels).model
    ball = M.enumerate_ball(7)
    counts = Counter(len(M.word_of(g)) for g in ball)
    assert [counts[k] for k in range(8)] == growth_counts(M.spec, 7)


@pytest.mark.parametrize("labels", INSTANCES)
def test_defining_relations(labels):
    M = instance(labels).model
    I = M.identity
    for s in M.generators:
        assert s * s == I
    for i, j in combinations(range(3), 2):
        st_ = M.generators[i] * M.generators[j]
        m = M.spec.label(i, j)
        g = I
        for k in range(1, (m or 12) + 1):
            g = g * st_
            if m is not None and k == m:
                assert g == I
            else:
                assert g != I


@pytest.mark.parametrize("labels", INSTANCES)
def test_gram_signature_numeric(labels):
    M = instance(labels).model
    G = np.array([float(x) for x in M.gram]).reshape(3, 3)
    ev = np.linalg.eigvalsh(G)
    assert (ev > 1e-12).sum() == 2 and (ev < -1e-12).sum() == 1


@pytest.mark.parametrize("labels", ["2,3,6", "3,3,3", "2,4,4", "2,2,5", "2,3,5", "2,2,inf"])
def test_non_hyperbolic_rejected(labels):
    with pytest.raises(NotHyperbolic):
        CoxeterModel(CoxeterSpec.parse(labels))


def test_bad_label_rejected():
    with pytest.raises(ValueError):
        CoxeterSpec.parse("1,3,7").check()


def test_ball_cap():
    M = instance("2,3,7").model
    with pytest.raises(CapExceeded):
        M.enumerate_ball(40)


@pytest.mark.parametrize("labels", INSTANCES)
def test_w_is_glide(labels):
    M = instance(labels).model
    assert M.classify(M.w).kind == "glide"


words = st.text(alphabet="abc", max_size=12)


@settings(max_examples=60, deadline=None)
@given(words, words)
def test_form_preserved_and_membership(u, v):
    M = instance("2,3,7").model
    g = M.element(u) * M.element(v)
    assert g.preserves_form()
    assert M.contains(g)
    assert M.element(M.word_of(g)) == g


@settings(max_examples=40, deadline=None)
@given(words)
def test_inverse_is_reversed_word(u):
    M = instance("3,3,4").model
    assert M.element(u).inverse() == M.element(u[::-1])


def test_non_member_rejected():
    M = instance("3,3,4").model
    r = M.generators[0]
    # reflection in a line that is not a mirror of W
    half = M.field.element(1) / 2
    n = tuple(a + half * b for a, b in zip(M.roots[0], M.roots[1]))
    g = M.reflection_from_pole(n)
    assert g.preserves_form() and not M.contains(g)
    assert M.contains(r)


@pytest.mark.parametrize("labels", INSTANCES)
def test_reflection_classification(labels):
    M = instance(labels).model
    for g in M.enumerate_ball(4):
        kind = M.classify(g).kind
        det = g.det
        assert (kind in ("reflection", "glide")) == (det == -1)
        if kind == "reflection":
            assert g * g == M.identity
