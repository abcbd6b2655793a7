import itertools
import math
import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from purecomp.oracle import (FiniteModuleTable, NotVNR, TooLarge, enumerate_submodules, hom_space,
                             is_indecomposable, is_pure_submodule, is_rd_submodule, is_simple, is_submodule,
                             module_isomorphic, mu_bruteforce, retraction,
                             vnr_indecomposable_simple_check)
from purecomp.rings import IntegersMod, ProductRing
from purecomp.verify import modules_up_to, scrambled_presentation


def gaussian_subspace_count(k: int, q: int) -> int:
    def binom(n, r):
        num = den = 1
        for i in range(r):
            num *= q ** (n - i) - 1
            den *= q ** (i + 1) - 1
        return num // den
    return sum(binom(k, r) for r in range(k + 1))


def closure_count(E: FiniteModuleTable, gens_per_sub: int) -> int:
    """Submodules generated by at most ``gens_per_sub`` elements, by direct closure."""
    seen = set()
    for gens in itertools.combinations_with_replacement(range(E.n), gens_per_sub):
        seen.add(E.span(list(gens)).tobytes())
    return len(seen)


@pytest.mark.parametrize("gens", [(0,), (2, 0), (2, 2, 2), (4, 0), (0, 0)])
def test_tables_satisfy_module_axioms(gens):
    FiniteModuleTable.from_cyclics(IntegersMod(8), gens).validate()


@pytest.mark.parametrize("k", range(1, 6))
def test_submodule_count_of_elementary_abelian(k):
    E = FiniteModuleTable.from_cyclics(IntegersMod(4), [2] * k)
    assert len(enumerate_submodules(E)) == gaussian_subspace_count(k, 2)


@pytest.mark.parametrize("n, gens", [(8, (2, 0)), (8, (4, 0)), (12, (6, 0)), (36, (6, 0)), (9, (0, 0))])
def test_submodule_count_matches_two_generator_closure(n, gens):
    # modules with two cyclic summands: every submodule needs at most two generators
    E = FiniteModuleTable.from_cyclics(IntegersMod(n), gens)
    subs = enumerate_submodules(E)
    assert len({S.tobytes() for S in subs}) == len(subs)
    assert all(is_submodule(E, S) for S in subs)
    assert len(subs) == closure_count(E, 2)


@pytest.mark.parametrize("n", [4, 6, 8, 12])
def test_hom_counts_between_cyclics(n):
    R = IntegersMod(n)
    divisors = [d for d in range(1, n + 1) if n % d == 0]
    for a in divisors:
        for b in divisors:
            A = FiniteModuleTable.from_cyclics(R, [a % n])
            B = FiniteModuleTable.from_cyclics(R, [b % n])
            assert len(hom_space(A, B)) == math.gcd(a, b)


def test_homs_from_free_module():
    R = IntegersMod(6)
    F = FiniteModuleTable.free(R, 2)
    N = FiniteModuleTable.from_cyclics(R, [2, 3])
    assert len(hom_space(F, N)) == N.n ** 2


@pytest.mark.parametrize("n", [8, 12])
def test_isomorphism_of_scrambled_presentations(n):
    R = IntegersMod(n)
    rng = random.Random(n)
    mods = modules_up_to(R, 32)
    for M in mods:
        p = scrambled_presentation(M, rng)
        e = M.annihilator().generator
        E = FiniteModuleTable.from_presentation(R, p.ngens, p.columns(), exponent=e)
        assert module_isomorphic(E, M.to_table())
    # distinct canonical forms are never isomorphic
    tables = [M.to_table() for M in mods]
    for A, B in itertools.combinations(tables, 2):
        assert not module_isomorphic(A, B)


@pytest.mark.parametrize("n", [4, 6, 8, 12])
def test_indecomposable_two_ways(n):
    R = IntegersMod(n)
    # endomorphism rings stay small up to 16 elements
    for M in modules_up_to(R, 16):
        T = M.to_table()
        assert is_indecomposable(T) == is_indecomposable(T, method="idempotent")


@pytest.mark.parametrize("n", [4, 12])
def test_mu_bruteforce_against_subsets(n):
    R = IntegersMod(n)
    for M in modules_up_to(R, 16):
        T = M.to_table()
        k = next(k for k in range(0, 6)
                 if any(len(T.span(list(c))) == T.n for c in itertools.combinations(range(T.n), k)))
        assert mu_bruteforce(T) == k


def test_rd_and_pure_small_cases():
    R = IntegersMod(4)
    E = FiniteModuleTable.from_cyclics(R, [0])
    twoE = E.cyclic(E.index_of((2,)))
    assert not is_rd_submodule(E, twoE)
    assert not is_pure_submodule(E, twoE)
    E2 = FiniteModuleTable.from_cyclics(R, [0, 2])
    F = E2.cyclic(E2.index_of((2, 1)))
    assert is_rd_submodule(E2, F)
    assert is_pure_submodule(E2, F)
    r = retraction(E2, F)
    assert set(r.tolist()) == set(F.tolist())
    assert (r[F] == F).all()


def test_simple_modules():
    R = IntegersMod(12)
    assert is_simple(FiniteModuleTable.from_cyclics(R, [3]))
    assert not is_simple(FiniteModuleTable.from_cyclics(R, [4]))
    assert not is_simple(FiniteModuleTable.from_cyclics(R, [2, 2]))


def test_vnr_check_small_and_rejects_non_vnr():
    R = ProductRing((IntegersMod(2), IntegersMod(3)))
    rep = vnr_indecomposable_simple_check(R, max_gens=2)
    assert rep.ok and rep.indecomposable > 0
    with pytest.raises(NotVNR):
        vnr_indecomposable_simple_check(IntegersMod(4), max_gens=1)


def test_too_large_lattice_refused():
    E = FiniteModuleTable.from_cyclics(IntegersMod(2), [0] * 13)
    with pytest.raises(TooLarge):
        enumerate_submodules(E)


@given(st.lists(st.sampled_from([2, 3, 4, 6, 0]), min_size=1, max_size=3), st.data())
@settings(max_examples=30)
def test_rd_holds_for_every_summand(gens, data):
    R = IntegersMod(12)
    E = FiniteModuleTable.from_cyclics(R, gens)
    k = data.draw(st.integers(0, len(gens)))
    # the span of the first k coordinate generators is a direct summand
    basis = [tuple(1 if i == j else 0 for i in range(len(gens))) for j in range(k)]
    F = E.span([E.index_of(tuple(R.reduce_mod(a, d) for a, d in zip(b, gens))) for b in basis])
    assert is_pure_submodule(E, F)
    assert is_rd_submodule(E, F)
