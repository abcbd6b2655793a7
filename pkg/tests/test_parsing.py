import pytest
from hypothesis import given, strategies as st

from purecomp.parsing import (BadMatrixShape, ParseError, UnknownRingKind, format_module, parse_document,
                              parse_ring)
from purecomp.module import PresentationMatrix
from purecomp.rings import Integers, IntegersMod, PolynomialQuotient, ProductRing, TableRing


def test_parse_rings():
    assert parse_ring("Z") == Integers()
    assert parse_ring("Z/12") == IntegersMod(12)
    assert parse_ring("GF(2)[t]") == PolynomialQuotient(2)
    assert parse_ring("GF(3)[t]/(t^2 + 1)") == PolynomialQuotient(3, (1, 0, 1))
    assert parse_ring("product(Z/2, Z/3)") == ProductRing((IntegersMod(2), IntegersMod(3)))


def test_parse_local_table_ring():
    R = parse_ring("localtable{add=[[0,1],[1,0]]; mul=[[0,0],[0,1]]; units=[1]}")
    assert isinstance(R, TableRing) and R.size == 2


def test_document_with_comments_and_two_modules():
    doc = parse_document("""
        # presentations are columns of relations
        ring Z/12
        module M presented by [[4,0],[0,6]]
        module N over GF(2)[t] presented by [[t, t^2 + 1], [0, t]]
    """)
    assert list(doc.modules) == ["M", "N"]
    assert doc.module().presentation.ring == IntegersMod(12)
    N = doc.module("N").presentation
    assert N.entries[0][1] == (1, 0, 1)


def test_values_reduce_into_ring():
    doc = parse_document("module A over Z/5 presented by [[7, -1]]")
    assert list(doc.module().presentation.entries[0]) == [2, 4]


@pytest.mark.parametrize("text, cls, where", [
    ("ring Q", UnknownRingKind, (1, 6)),
    ("ring Z/12\nmodule M presented by [[1,2],[3]]", BadMatrixShape, (2, 30)),
    ("module M presented by [[1]]", ParseError, (1, 8)),
    ("ring Z/1", ParseError, (1, 6)),
    ("ring Z/4\nmodule M presented [[1]]", ParseError, (2, 20)),
    ("ring Z ?", ParseError, (1, 8)),
])
def test_errors_carry_positions(text, cls, where):
    with pytest.raises(cls) as info:
        parse_document(text)
    assert (info.value.line, info.value.column) == where


def test_table_index_out_of_range():
    with pytest.raises(ParseError):
        parse_document("ring localtable{add=[[0,1],[1,0]]; mul=[[0,0],[0,1]]}\n"
                       "module M presented by [[2]]")


@given(st.lists(st.lists(st.integers(-30, 30), min_size=2, max_size=2), min_size=1, max_size=3))
def test_format_round_trip(rows):
    R = IntegersMod(12)
    p = PresentationMatrix.from_rows(R, [[a % 12 for a in r] for r in rows])
    again = parse_document(format_module("X", p)).module("X").presentation
    assert again.entries == p.entries and again.ring == R


def test_polynomial_round_trip():
    R = PolynomialQuotient(2)
    p = PresentationMatrix.from_rows(R, [[(0, 1), (1, 1, 0, 1)], [(), (1,)]])
    again = parse_document(format_module("B", p)).module().presentation
    assert again.entries == p.entries
