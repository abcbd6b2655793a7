import itertools

import pytest
from hypothesis import given, settings, strategies as st

from purecomp.module import DimensionMismatch, PresentationMatrix, build_module, cyclic_sum
from purecomp.rings import Integers, IntegersMod

Z12 = IntegersMod(12)


def test_elements_and_size():
    M = cyclic_sum(Z12, [2, 6])
    assert M.size() == 12
    assert len(M.elements()) == 12
    assert M.annihilator().generator == 6


def test_infinite_module_reports_free_rank():
    M = build_module(PresentationMatrix.from_rows(Integers(), [[2], [0]]))
    assert M.free_rank == 1
    assert M.size() is None
    assert M.as_json()["invariant_factors"] == ["2"]


@given(st.lists(st.lists(st.integers(0, 11), min_size=2, max_size=2), min_size=1, max_size=3))
@settings(max_examples=30)
def test_coordinates_respect_relations(cols):
    # the presentation generators satisfy the relation columns in the built module
    p = PresentationMatrix.from_columns(Z12, 2, cols)
    M = build_module(p)
    for c in cols:
        assert M.from_presentation(tuple(c)) == M.zero
    for i in range(2):
        e = M.generator(i)
        assert M.from_presentation(M.to_presentation(e)) == e


@given(st.lists(st.lists(st.integers(0, 11), min_size=2, max_size=2), min_size=1, max_size=3))
@settings(max_examples=30)
def test_size_matches_brute_force_quotient(cols):
    # |Z12^2 / span(cols)| by enumerating the span directly
    span = {(0, 0)}
    frontier = list(span)
    while frontier:
        v = frontier.pop()
        for c in cols:
            w = ((v[0] + c[0]) % 12, (v[1] + c[1]) % 12)
            if w not in span:
                span.add(w)
                frontier.append(w)
    M = build_module(PresentationMatrix.from_columns(Z12, 2, cols))
    assert M.size() * len(span) == 144


def test_submodule_membership_and_quotient():
    M = cyclic_sum(Z12, [0])
    N = M.submodule([(4,)])
    assert (8,) in N and (2,) not in N
    assert M.quotient(N).size() == 4
    assert len(N.elements()) == 3


def test_dimension_mismatch():
    M = cyclic_sum(Z12, [2, 6])
    with pytest.raises(DimensionMismatch):
        M.reduce((1,))
    with pytest.raises(DimensionMismatch):
        M.from_presentation((1, 2, 3))


def test_arithmetic_is_module_arithmetic():
    M = cyclic_sum(Z12, [4, 0])
    for x, y in itertools.product(M.elements()[:8], repeat=2):
        assert M.add(x, M.neg(x)) == M.zero
        assert M.scale(3, M.add(x, y)) == M.add(M.scale(3, x), M.scale(3, y))
