import itertools
import math

import numpy as np
import pytest

from purecomp.goldie import (goldie_bruteforce, goldie_structural, is_essential, is_uniform, simple_submodules,
                             socle)
from purecomp.module import cyclic_sum
from purecomp.oracle import FiniteModuleTable
from purecomp.rings import IntegersMod, PolynomialQuotient
from purecomp.verify import modules_up_to


def naive_goldie(E: FiniteModuleTable) -> int:
    """Largest family of nonzero cyclic submodules whose sum is direct (size multiplies)."""
    cyc = list({E.cyclic(x).tobytes(): E.cyclic(x) for x in range(1, E.n)}.values())
    best = 0
    for k in range(1, 6):
        found = False
        for fam in itertools.combinations(cyc, k):
            S = np.array([0])
            for C in fam:
                S = E.sum_sets(S, C)
            if len(S) == math.prod(len(C) for C in fam):
                found = True
                break
        if not found:
            break
        best = k
    return best


@pytest.mark.parametrize("n", [4, 6, 8, 12])
def test_bruteforce_matches_naive_search(n):
    R = IntegersMod(n)
    for M in modules_up_to(R, 16):
        T = M.to_table()
        assert goldie_bruteforce(T).dimension == naive_goldie(T)


@pytest.mark.parametrize("n", [8, 12, 24, 36])
def test_structural_matches_bruteforce(n):
    R = IntegersMod(n)
    for M in modules_up_to(R, 128):
        assert goldie_structural(M) == goldie_bruteforce(M.to_table()).dimension


def test_witness_is_independent():
    M = cyclic_sum(IntegersMod(12), [2, 0])
    T = M.to_table()
    rep = goldie_bruteforce(T)
    assert rep.dimension == 3
    sizes = [len(T.cyclic(g)) for g in rep.witness]
    assert len(T.span(list(rep.witness))) == math.prod(sizes)
    assert rep.as_json(T)["dimension"] == 3


def test_socle_is_essential_and_uniform_cases():
    R = IntegersMod(8)
    E = cyclic_sum(R, [0]).to_table()
    assert is_uniform(E)
    assert len(socle(E)) == 2
    assert is_essential(E, socle(E))
    E2 = cyclic_sum(R, [2, 0]).to_table()
    assert not is_uniform(E2)
    assert len(simple_submodules(E2)) == 3


def test_goldie_over_polynomial_quotient():
    R = PolynomialQuotient(2, (0, 1, 1))      # t (t + 1): two maximal ideals
    M = cyclic_sum(R, [R.zero])
    assert goldie_structural(M) == 2
    assert goldie_bruteforce(M.to_table()).dimension == 2


def test_uniform_iff_goldie_one():
    R = IntegersMod(12)
    for M in modules_up_to(R, 48):
        T = M.to_table()
        assert is_uniform(T) == (goldie_bruteforce(T).dimension == 1)
