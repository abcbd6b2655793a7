import pytest

from purecomp.counterexamples import (SUPPORTED_Q, arithmetic_extension_control, dual_module, field_of_order,
                                      rd_injectivity_failure, rd_series_obstruction, rd_vs_pure,
                                      relation_submodule, residue_field_module, socle_module, witness_module,
                                      witness_ring)
from purecomp.goldie import is_essential
from purecomp.oracle import FiniteModuleTable, is_indecomposable, is_simple
from purecomp.rings import IntegersMod


@pytest.mark.parametrize("q", SUPPORTED_Q)
def test_ring_facts(q):
    W = witness_ring(q)
    assert W.ring.size == q ** 3
    assert all(W.facts().values()), W.facts()
    assert len(W.P) == q ** 2


def test_field_of_order_rejects_six():
    with pytest.raises(ValueError):
        field_of_order(6)


@pytest.mark.parametrize("q", [2, 3])
def test_module_sizes(q):
    W = witness_ring(q)
    N, L = relation_submodule(W)
    M = witness_module(W)
    assert N.n == q ** 6
    assert M.n * len(L) == N.n
    D = dual_module(W)
    assert D.n == q ** 3
    S, S_in_D = socle_module(W, D)
    assert S.n == q
    assert is_simple(S)
    assert is_essential(D, S_in_D)
    assert residue_field_module(W).n == q


@pytest.mark.parametrize("q", [2, 3])
def test_witness_module_has_no_rd_series(q):
    rep = rd_series_obstruction(witness_ring(q))
    assert rep.indecomposable
    assert rep.mu == 2
    assert rep.no_rd_series
    # the search itself finds series where they exist
    assert rep.controls["cyclic_R_series"] > 0
    assert rep.controls["residue_sum_series"] > 0
    assert all(not s["summand"] for s in rep.rd_cyclic_with_cyclic_quotient)


@pytest.mark.parametrize("q", [2, 3])
def test_rd_not_pure(q):
    sep = rd_vs_pure(witness_ring(q))
    assert sep.rd and not sep.pure and sep.separates


@pytest.mark.parametrize("q", [2, 3])
def test_injectivity_failure_certified(q):
    wit = rd_injectivity_failure(witness_ring(q))
    assert wit.certified
    assert wit.socle_essential
    assert wit.control_dual_all_extend is True
    assert wit.restricted_images < wit.hom_L_S
    assert wit.as_json()["certified"] is True


def test_extension_control_over_arithmetic_ring():
    R = IntegersMod(4)
    modules = [FiniteModuleTable.from_cyclics(R, g) for g in ([0], [2, 0], [0, 0])]
    targets = [FiniteModuleTable.from_cyclics(R, g) for g in ([2], [0])]
    out = arithmetic_extension_control(R, modules, targets)
    assert out["pairs"] > 0 and out["failures"] == 0


def test_witness_module_indecomposable_by_idempotents():
    M = witness_module(witness_ring(2))
    assert is_indecomposable(M, method="idempotent")


def test_second_non_arithmetic_ring_gives_same_obstruction():
    from purecomp.counterexamples import obstruction_over, z4_y_ring
    from purecomp.finite_rings import is_arithmetic

    R, two, y = z4_y_ring()
    assert R.size == 8 and not is_arithmetic(R)
    out = obstruction_over(R, two, y)
    assert out == {"size": 32, "indecomposable": True, "mu": 2, "rd_series_count": 0,
                   "relation_rd": True, "relation_pure": False}
