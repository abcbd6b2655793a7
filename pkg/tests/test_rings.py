import math

import pytest
from hypothesis import given, strategies as st

from purecomp import poly as P
from purecomp.ideals import (PrincipalIdeal, Verdict, ideal_compare, ideals_from, is_indecomposable_quotient,
                             minimal_primes_over, radical)
from purecomp.rings import Integers, IntegersMod, PolynomialQuotient, ProductRing, TableRing, factor_int

Z = Integers()
F2t = PolynomialQuotient(2)
MODULI = [4, 8, 12, 16, 24, 36]


def polys(p=2, max_deg=5):
    return st.lists(st.integers(0, p - 1), max_size=max_deg + 1).map(P.trim)


@given(st.integers(-10**6, 10**6), st.integers(-10**6, 10**6))
def test_integer_gcdex_is_bezout(a, b):
    g, u, v = Z.gcdex(a, b)
    assert u * a + v * b == g
    assert g == math.gcd(a, b)


@given(polys(), polys())
def test_polynomial_gcdex_is_bezout(f, g):
    d, u, v = F2t.gcdex(f, g)
    assert F2t.add(F2t.mul(u, f), F2t.mul(v, g)) == d
    if f or g:
        assert F2t.divides(d, f) and F2t.divides(d, g)


@pytest.mark.parametrize("n", MODULI)
def test_zn_ideals_match_divisors(n):
    R = IntegersMod(n)
    gens = {R.normalize(a) for a in R.elements()}
    # proper nonzero principal ideals of Z/n correspond to divisors 1 < d < n
    assert gens == {d for d in range(1, n) if n % d == 0} | {0}


@pytest.mark.parametrize("n", MODULI)
def test_zn_gcdex_and_contains(n):
    R = IntegersMod(n)
    for a in R.elements():
        for b in R.elements():
            g, u, v = R.gcdex(a, b)
            assert R.add(R.mul(u, a), R.mul(v, b)) == g
            ideal = {R.mul(r, g) for r in R.elements()}
            assert ideal == {R.add(R.mul(r, a), R.mul(s, b)) for r in R.elements() for s in R.elements()}


def test_factor_int_against_product():
    for n in range(1, 400):
        f = factor_int(n)
        assert math.prod(p ** e for p, e in f.items()) == n


@pytest.mark.parametrize("n", MODULI)
def test_zn_primary_components_multiply_back(n):
    R = IntegersMod(n)
    for d in range(1, n + 1):
        comps = R.primary_components(d % n)
        qs = [q if q else n for q, _ in comps]
        assert math.prod(qs) == math.gcd(d, n)
        assert all(len(factor_int(q)) == 1 for q in qs)


def test_radical_and_minimal_primes_over_z12():
    R = IntegersMod(12)
    zero = PrincipalIdeal.of(R, 0)
    assert radical(zero) == PrincipalIdeal.of(R, 6)
    assert [I.generator for I in minimal_primes_over(zero)] == [2, 3]
    assert not is_indecomposable_quotient(zero)
    assert is_indecomposable_quotient(PrincipalIdeal.of(R, 4))


def test_ideal_compare_verdicts():
    R = IntegersMod(36)
    I2, I3, I4, I6 = ideals_from(R, [2, 3, 4, 6])
    assert ideal_compare(I4, I2) is Verdict.FIRST_INSIDE_SECOND
    assert ideal_compare(I2, I6) is Verdict.SECOND_INSIDE_FIRST
    assert ideal_compare(I2, I3) is Verdict.COMAXIMAL
    assert ideal_compare(I4, I4) is Verdict.EQUAL
    R2 = PolynomialQuotient(2)
    a, b = ideals_from(R2, [(0, 1), (1, 1)])
    assert ideal_compare(a, b) is Verdict.COMAXIMAL


def test_polynomial_quotient_field_of_order_four():
    F4 = PolynomialQuotient(2, (1, 1, 1))
    els = F4.elements()
    assert len(els) == 4
    assert all(F4.is_unit(a) for a in els if a != F4.zero)


def test_product_ring_is_componentwise():
    R = ProductRing((IntegersMod(2), IntegersMod(3)))
    assert R.size == 6
    assert R.mul((1, 2), (1, 2)) == (1, 1)
    assert sum(1 for a in R.elements() if R.is_unit(a)) == 2


def test_table_ring_from_z4_tables():
    add = tuple(tuple((a + b) % 4 for b in range(4)) for a in range(4))
    mul = tuple(tuple((a * b) % 4 for b in range(4)) for a in range(4))
    R = TableRing(add, mul)
    assert R.units == [1, 3]
    assert R.is_bezout
    assert R.contains(2, 0) and not R.contains(2, 1)


def test_bad_moduli_rejected():
    with pytest.raises(ValueError):
        IntegersMod(1)
    with pytest.raises(ValueError):
        PolynomialQuotient(4)
    with pytest.raises(ValueError):
        PolynomialQuotient(3, (1, 2, 2))
