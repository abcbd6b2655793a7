import random

import pytest
from hypothesis import given, settings, strategies as st

from purecomp import poly as P
from purecomp.decompose import (canonical_form, diagonal_reduce, indecomposable_refine, mu,
                                peel_pure_generator)
from purecomp.ideals import PrincipalIdeal
from purecomp.module import PresentationMatrix, build_module, cyclic_sum
from purecomp.oracle import FiniteModuleTable, is_pure_submodule, mu_bruteforce
from purecomp.rings import Integers, IntegersMod, PolynomialQuotient, ProductRing
from purecomp.verify import check_reduction, modules_up_to, scrambled_presentation

Z = Integers()
F2t = PolynomialQuotient(2)


def int_matrices(max_dim=4, bound=50):
    return st.integers(1, max_dim).flatmap(lambda m: st.integers(1, max_dim).flatmap(
        lambda n: st.lists(st.lists(st.integers(-bound, bound), min_size=n, max_size=n),
                           min_size=m, max_size=m)))


def poly_matrices(max_dim=3, max_deg=4):
    entry = st.lists(st.integers(0, 1), max_size=max_deg + 1).map(P.trim)
    return st.integers(1, max_dim).flatmap(lambda m: st.integers(1, max_dim).flatmap(
        lambda n: st.lists(st.lists(entry, min_size=n, max_size=n), min_size=m, max_size=m)))


# diagonals from sympy's smith_normal_form over ZZ
@pytest.mark.parametrize("A, diag", [
    ([[2, 4], [6, 8]], [2, 4]),
    ([[4, 0], [0, 6]], [2, 12]),
    ([[12, 18, 6], [30, 42, 24]], [6, 6]),
    ([[0, 0], [0, 0]], [0, 0]),
    ([[3, 5], [7, 11], [2, 4]], [1, 2]),
])
def test_integer_diagonal_matches_sympy(A, diag):
    red = diagonal_reduce(Z, A)
    assert red.diagonal == diag
    assert not check_reduction(Z, A)


@given(int_matrices())
@settings(max_examples=80)
def test_integer_reduction_properties(A):
    assert check_reduction(Z, A) == []


@given(poly_matrices())
@settings(max_examples=40)
def test_polynomial_reduction_properties(A):
    assert check_reduction(F2t, A) == []


def test_polynomial_reduction_example():
    t = (0, 1)
    red = diagonal_reduce(F2t, [[t, (0, 0, 1)], [(), t]])
    assert red.diagonal == [t, t]


@pytest.mark.parametrize("n", [12, 36])
def test_quotient_ring_reduction_identity(n):
    from purecomp.decompose import matmul

    R = IntegersMod(n)
    rng = random.Random(n)
    for _ in range(50):
        A = [[rng.randrange(n) for _ in range(3)] for _ in range(3)]
        red = diagonal_reduce(R, A)
        assert matmul(R, matmul(R, red.U, A), red.V) == red.D
        ds = red.diagonal
        assert all(R.divides(a, b) for a, b in zip(ds, ds[1:]))


def test_product_ring_reduces_componentwise():
    R = ProductRing((IntegersMod(4), IntegersMod(3)))
    M = build_module(PresentationMatrix.from_rows(R, [[(2, 0), (0, 1)], [(0, 0), (2, 0)]]))
    assert M.size() == FiniteModuleTable.from_cyclics(R, M.invariant_factors).n


def test_canonical_form_of_z12_example():
    R = IntegersMod(12)
    M = build_module(PresentationMatrix.from_rows(R, [[4, 0], [0, 6]]))
    # Z/4 + Z/6 = Z/2 + Z/12 (invariant factors 2 | 12)
    assert canonical_form(M).generators() == (0, 2)
    assert [I.generator for I in indecomposable_refine(canonical_form(M)).factors] == [4, 2, 3]
    assert mu(M) == 2
    assert M.size() == 24


@pytest.mark.parametrize("n", [8, 12, 36])
def test_canonical_form_invariant_under_scrambling(n):
    R = IntegersMod(n)
    rng = random.Random(7)
    for M in modules_up_to(R, 64):
        cf = canonical_form(M)
        for _ in range(3):
            assert canonical_form(build_module(scrambled_presentation(M, rng))) == cf


@pytest.mark.parametrize("n", [4, 12, 24])
def test_canonical_form_is_chain_and_sizes_agree(n):
    R = IntegersMod(n)
    for M in modules_up_to(R, 128):
        ideals = list(canonical_form(M))
        assert all(a <= b for a, b in zip(ideals, ideals[1:]))
        assert M.size() == M.to_table().n


@pytest.mark.parametrize("n", [8, 12, 36])
def test_mu_matches_bruteforce(n):
    R = IntegersMod(n)
    for M in modules_up_to(R, 64):
        assert mu(M) == mu_bruteforce(M.to_table())


@pytest.mark.parametrize("n", [12, 24, 36])
def test_peel_gives_pure_generator_with_full_annihilator(n):
    R = IntegersMod(n)
    for M in modules_up_to(R, 128):
        x, Q = peel_pure_generator(M)
        T = M.to_table()
        C = T.cyclic(T.index_of(x))
        assert is_pure_submodule(T, C)
        ann = {r for r in R.elements() if M.scale(r, x) == M.zero}
        assert ann == {r for r in R.elements() if R.contains(M.annihilator().generator, r)}
        assert mu(Q) == mu(M) - 1


def test_cyclic_sum_over_polynomial_quotient():
    R = PolynomialQuotient(2, (0, 0, 1, 1))   # t^2 (t + 1)
    M = cyclic_sum(R, [(0, 1), (0, 0, 1)])
    refine = indecomposable_refine(canonical_form(M)).factors
    assert len(refine) == 2
    assert all(PrincipalIdeal.of(R, (0, 0, 1, 1)) <= I for I in refine)


def _peel_conditions(M, x):
    T = M.to_table()
    C = T.cyclic(T.index_of(x))
    same_ann = len(C) == M.ring.quotient_size(M.annihilator().generator)
    drops = mu(M.quotient(M.submodule([x]))) == mu(M) - 1
    return same_ann and drops and is_pure_submodule(T, C)


@pytest.mark.parametrize("n, rows, v", [
    (12, [[12, 0], [0, 2]], (1, 1)),     # Z/12 + Z/2
    (4, [[4, 0], [0, 2]], (1, 0)),       # Z/4 + Z/2 over Z/4
    (4, [[4, 0], [0, 2]], (1, 1)),
])
def test_peel_examples_satisfy_conditions(n, rows, v):
    M = build_module(PresentationMatrix.from_rows(IntegersMod(n), rows))
    assert _peel_conditions(M, M.from_presentation(v))


@pytest.mark.parametrize("n", [4, 12, 36])
def test_peel_lex_choice_is_least_valid(n):
    R = IntegersMod(n)
    for M in modules_up_to(R, 64):
        x, _ = peel_pure_generator(M)
        valid = [y for y in M.elements() if _peel_conditions(M, y)]
        assert valid[0] == x
        assert _peel_conditions(M, peel_pure_generator(M, tie_break="crt")[0])
