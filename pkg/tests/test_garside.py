from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from artifact.garside import MalformedWord, format_artin_word, parse_artin_word
from conftest import instance

artin = st.text(alphabet="abcABC", max_size=12)


def braid(x, y, m):
    return "".join(x if i % 2 == 0 else y for i in range(m))


@pytest.mark.parametrize("labels", ["3,3,4", "2,3,7", "2,3,inf"])
def test_braid_relations(labels):
    inst = instance(labels)
    E = inst.engine
    for (s, t), (x, y) in zip([(0, 1), (1, 2), (0, 2)], ["ab", "bc", "ac"]):
        m = inst.spec.label(s, t)
        if m is None:
            assert not E.word_problem(x + y, y + x)
            continue
        assert E.word_problem(braid(x, y, m), braid(y, x, m))


def test_commuting_only_for_label_two():
    E = instance("2,3,7").engine
    assert E.word_problem("ab", "ba")
    assert not E.word_problem("bc", "cb")


@settings(max_examples=40, deadline=None)
@given(artin)
def test_inverse_cancels(word):
    E = instance("3,3,4").engine
    x = E.from_artin_word(word)
    assert E.multiply(x, E.invert(x)).is_identity()
    assert E.multiply(E.invert(x), x).is_identity()


@settings(max_examples=30, deadline=None)
@given(artin, artin, artin)
def test_multiplication_associative(a, b, c):
    E = instance("2,3,inf").engine
    x, y, z = (E.from_artin_word(w) for w in (a, b, c))
    assert E.multiply(E.multiply(x, y), z) == E.multiply(x, E.multiply(y, z))
    assert E.multiply(x, y) == E.from_artin_word(a + b)


@settings(max_examples=40, deadline=None)
@given(artin)
def test_projection_to_coxeter_group(word):
    inst = instance("2,3,7")
    E, M = inst.engine, inst.model
    g = M.element(word.lower())
    assert E.project(E.from_artin_word(word)) == g


@settings(max_examples=40, deadline=None)
@given(artin)
def test_normal_forms_left_weighted(word):
    E = instance("3,3,4").engine
    assert E.check_left_weighted(E.from_artin_word(word))


@settings(max_examples=30, deadline=None)
@given(st.text(alphabet="abc", max_size=10))
def test_positive_words_have_no_negative_delta(word):
    E = instance("2,3,inf").engine
    x = E.from_artin_word(word)
    assert x.delta_power >= 0
    assert 3 * x.delta_power + sum(f.rank for f in x.factors) == len(word)


def test_delta_is_abc():
    E = instance("3,3,4").engine
    assert E.from_artin_word("abc") == E.delta(1)


def test_parse_round_trip():
    w = parse_artin_word("abC Ba")
    assert format_artin_word(w) == "abCBa"
    with pytest.raises(MalformedWord):
        parse_artin_word("abd")
