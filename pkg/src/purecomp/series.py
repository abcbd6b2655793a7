"""Pure and RD composition series with cyclic factors.

A series ``0 = M0 < M1 < ... < Mn = M`` is stored by one generator per step:
``M_k = M_{k-1} + R x_k``.  Annihilator sequences, prime sequences, the
almost-increasing reordering and the case-by-case normalization live here.
"""

from __future__ import annotations

import functools
import random
from dataclasses import dataclass, field
from functools import cached_property, lru_cache

import numpy as np

from .decompose import indecomposable_refine, canonical_form
from .ideals import (IdealSet, PrincipalIdeal, comaximal, comparable, is_indecomposable_quotient,
                     minimal_primes_over, radical)
from .module import FpModule, cyclic_sum
from .oracle import (FiniteModuleTable, SeriesSearch, ideal_generator, is_pure_submodule,
                     is_rd_submodule)
from .rings import Ring


class NotAlmostTotallyOrdered(ValueError):
    pass


class CaseEUnreachable(RuntimeError):
    """An exchange step met two incomparable annihilators with the same radical."""


class SplittingNotFound(RuntimeError):
    pass


# -- sequences of ideals -------------------------------------------------------
@dataclass(frozen=True)
class SequencePredicates:
    increasing: bool
    totally_ordered: bool
    almost_increasing: bool
    almost_totally_ordered: bool


def sequence_predicates(s) -> SequencePredicates:
    s = list(s)
    pairs = [(s[i], s[j]) for i in range(len(s)) for j in range(i + 1, len(s))]
    return SequencePredicates(
        increasing=all(a <= b for a, b in pairs),
        totally_ordered=all(comparable(a, b) for a, b in pairs),
        almost_increasing=all(a <= b or comaximal(a, b) for a, b in pairs),
        almost_totally_ordered=all(comparable(a, b) or comaximal(a, b) for a, b in pairs),
    )


def _inclusion_order(a: PrincipalIdeal, b: PrincipalIdeal) -> int:
    if a == b:
        return 0
    return -1 if a <= b else (1 if b <= a else 0)


def _topological(s: list, idx: list) -> list:
    """Stable linear extension of strict inclusion (smaller ideals first)."""
    out, rest = [], list(idx)
    while rest:
        i = next(i for i in rest if not any(s[j] < s[i] for j in rest if j != i))
        out.append(i)
        rest.remove(i)
    return out


def reorder_almost_increasing(s) -> tuple[tuple, IdealSet]:
    """Permutation making an almost totally ordered sequence almost increasing.

    A maximal totally ordered subsequence, grown from the first term, is put
    first in increasing order; the remaining terms are handled recursively.
    """
    s = list(s)
    if not sequence_predicates(s).almost_totally_ordered:
        raise NotAlmostTotallyOrdered("sequence is not almost totally ordered")

    def arrange(idx: list) -> list:
        if not idx:
            return []
        chain = [idx[0]]
        for i in idx[1:]:
            if all(comparable(s[i], s[j]) for j in chain):
                chain.append(i)
        chain.sort(key=functools.cmp_to_key(lambda i, j: _inclusion_order(s[i], s[j])))
        rest = [i for i in idx if i not in chain]
        return chain + arrange(rest)

    perm = arrange(list(range(len(s))))
    if not sequence_predicates([s[i] for i in perm]).almost_increasing:
        perm = _topological(s, list(range(len(s))))
    return tuple(perm), IdealSet(s[i] for i in perm)


# -- composition series ----------------------------------------------------------
@dataclass(frozen=True, eq=False)
class CompositionSeries:
    module: FpModule
    generators: tuple                 # normal-form coordinates of x_1, ..., x_n
    annihilators: IdealSet
    mode: str = "rd"
    trace: tuple = field(default=(), compare=False)

    def __len__(self) -> int:
        return len(self.generators)

    @property
    def ring(self) -> Ring:
        return self.module.ring

    @cached_property
    def table(self) -> FiniteModuleTable:
        return self.module.to_table()

    @property
    def generator_indices(self) -> list[int]:
        return [self.table.index_of(g) for g in self.generators]

    def stages(self) -> list[np.ndarray]:
        T, out = self.table, [np.array([0])]
        for g in self.generator_indices:
            out.append(T.sum_sets(out[-1], T.cyclic(g)))
        return out

    @property
    def indecomposable_factors(self) -> bool:
        return all(is_indecomposable_quotient(A) for A in self.annihilators)

    def predicates(self) -> SequencePredicates:
        return sequence_predicates(self.annihilators)

    def check(self) -> list[str]:
        """Exhaustive re-validation on the module table; returns the problems found."""
        T, stages = self.table, self.stages()
        test = is_rd_submodule if self.mode == "rd" else is_pure_submodule
        problems = []
        if len(stages[-1]) != T.n:
            problems.append("last stage is not the whole module")
        for k in range(1, len(stages)):
            prev, cur = stages[k - 1], stages[k]
            if len(cur) <= len(prev):
                problems.append(f"stage {k} is not a strict extension")
            if not test(T, cur):
                problems.append(f"stage {k} is not {self.mode} in the module")
            inprev = T.mask(prev)
            g = self.generator_indices[k - 1]
            ann = frozenset(np.nonzero(inprev[T.act[:, g]])[0].tolist())
            if ideal_generator(self.ring, ann) != self.annihilators[k - 1].generator:
                problems.append(f"factor {k} has a different annihilator")
        return problems

    def as_json(self) -> dict:
        R = self.ring
        return {
            "mode": self.mode,
            "length": len(self),
            "generators": [[R.format(a) for a in g] for g in self.generators],
            "annihilators": [R.format(A.generator) for A in self.annihilators],
            "primes": [R.format(J.generator) for J in prime_sequence(self)],
        }


def _ann_ideal(ring: Ring, ann: frozenset) -> PrincipalIdeal:
    return PrincipalIdeal.of(ring, ideal_generator(ring, ann))


def series_from_decomposition(M: FpModule, mode: str = "pure") -> CompositionSeries:
    """Partial sums of the primary (indecomposable) decomposition, almost increasing."""
    R = M.ring
    parts = []
    for i, d in enumerate(M.invariant_factors):
        for q, c in R.primary_components(d):
            x = [R.zero] * len(M.invariant_factors)
            x[i] = c
            parts.append((PrincipalIdeal.of(R, q), M.reduce(tuple(x))))
    # same order as the indecomposable refinement, then made almost increasing
    ref = list(indecomposable_refine(canonical_form(M)).factors)
    order = sorted(range(len(parts)), key=lambda i: ref.index(parts[i][0]))
    ideals = IdealSet(parts[i][0] for i in order)
    perm, anns = reorder_almost_increasing(ideals)
    gens = tuple(parts[order[i]][1] for i in perm)
    return CompositionSeries(M, gens, anns, mode)


def series_from_chain(M: FpModule, T: FiniteModuleTable, steps, mode: str) -> CompositionSeries:
    """Series from table steps ``((generator index, annihilator set), ...)``."""
    gens = tuple(T.element(y) for y, _ in steps)
    anns = IdealSet(_ann_ideal(M.ring, a) for _, a in steps)
    return CompositionSeries(M, gens, anns, mode)


def enumerate_series(M: FpModule, mode: str = "rd", indecomposable_only: bool = True,
                     limit: int | None = None) -> list[CompositionSeries]:
    T = M.to_table()
    out = []
    for chain in SeriesSearch(T, mode, indecomposable_only).chains():
        out.append(series_from_chain(M, T, chain, mode))
        if limit is not None and len(out) >= limit:
            break
    return out


def random_series(M: FpModule, rng: random.Random, mode: str = "rd") -> CompositionSeries:
    """A series built by a random walk through admissible next stages.

    The walk runs on quotients ``M/M_k``: it picks a cyclic ``Rx`` that is RD
    (resp. pure) in the quotient, has a local annihilator, and leaves a
    quotient that still has a series; ``x`` is then lifted back to ``M``.
    """
    test = (lambda E, F: is_rd_submodule(E, F, check=False)) if mode == "rd" else is_pure_submodule
    Q, gens, anns = M, [], []
    while not Q.is_zero:
        T = Q.to_table()
        options, seen = [], set()
        for x in range(1, T.n):
            C = T.cyclic(x)
            if C.tobytes() in seen:
                continue
            seen.add(C.tobytes())
            A = PrincipalIdeal(Q.ring, ideal_generator(Q.ring, T.annihilator_of(x)))
            if not is_indecomposable_quotient(A) or not test(T, C):
                continue
            Q2 = Q.quotient(Q.submodule([T.element(x)]))
            if _outcomes(Q.ring, Q2.invariant_factors, mode, True):
                options.append((T.element(x), A, Q2))
        x, A, Q2 = options[rng.randrange(len(options))]
        gens.append(M.from_presentation(Q.to_presentation(x)))
        anns.append(A)
        Q = Q2
    return CompositionSeries(M, tuple(gens), IdealSet(anns), mode)


# -- normalization ---------------------------------------------------------------
def _split_lift(T: FiniteModuleTable, lower, middle, x: int, A: PrincipalIdeal) -> int:
    """Least ``z`` in ``x + middle`` with ``A z`` inside ``lower``."""
    a = T.ring_index(A.generator)
    zs = np.unique(T.sum_sets(np.array([x]), middle))
    ok = T.mask(lower)[T.act[a, zs]]
    if not ok.any():
        raise SplittingNotFound("no lift kills the factor annihilator")
    return int(zs[np.argmax(ok)])


def normalize_series(s: CompositionSeries) -> CompositionSeries:
    """Rewrite a series with local cyclic factors into one with almost increasing annihilators.

    The prime sequence is first put in almost increasing order ``J_1..J_n``.
    Then, from the top down, the factor carrying ``J_n`` is walked to the end:

    * (a) next prime comaximal with ``J_n``: exchange the two factors;
    * (b) next prime strictly inside ``J_n``: exchange;
    * (c) same prime, ``A_k <= A_{k+1}``: move on;
    * (d) same prime, ``A_{k+1} < A_k``: exchange;
    * (e) same prime, incomparable: impossible for almost totally ordered
      sequences, raised as :class:`CaseEUnreachable`.

    An exchange at ``k`` replaces ``M_k`` by ``M_{k-1} + Rz`` where ``z`` lifts
    the generator of ``M_{k+1}/M_k`` and is killed into ``M_{k-1}`` by ``A_{k+1}``.
    """
    if not s.indecomposable_factors:
        raise ValueError("normalization needs indecomposable cyclic factors")
    T = s.table
    gens = s.generator_indices
    anns = list(s.annihilators)
    n = len(anns)
    _, target = reorder_almost_increasing(IdealSet(radical(A) for A in anns))
    trace = []

    def span(k):
        return T.span(gens[:k])

    for top in range(n - 1, 0, -1):
        Jn = target[top]
        k = next(i for i in range(top + 1) if radical(anns[i]) == Jn)
        while k < top:
            Ak, Ak1 = anns[k], anns[k + 1]
            r1 = radical(Ak1)
            if comaximal(r1, Jn):
                case = "a"
            elif r1 < Jn:
                case = "b"
                if not Ak1 < Ak:
                    raise CaseEUnreachable("radical order without annihilator order")
            elif r1 == Jn and Ak <= Ak1:
                case = "c"
            elif r1 == Jn and Ak1 < Ak:
                case = "d"
            else:
                raise CaseEUnreachable(f"incomparable annihilators {Ak} and {Ak1}")
            trace.append(case)
            if case != "c":
                z = _split_lift(T, span(k), span(k + 1), gens[k + 1], Ak1)
                gens[k], gens[k + 1] = z, gens[k]
                anns[k], anns[k + 1] = Ak1, Ak
            k += 1
    return CompositionSeries(s.module, tuple(T.element(g) for g in gens), IdealSet(anns),
                             s.mode, tuple(trace))


def series_isomorphic(s: CompositionSeries, t: CompositionSeries) -> bool:
    """Equal multisets of factor annihilators (cyclic ``R/A`` determines ``A``)."""
    return s.annihilators.multiset() == t.annihilators.multiset()


# -- invariants ------------------------------------------------------------------
def prime_sequence(s: CompositionSeries) -> IdealSet:
    return IdealSet(radical(A) for A in s.annihilators)


def goldie_of_cyclic(A: PrincipalIdeal) -> int:
    return len(minimal_primes_over(A))


def g_of_series(s: CompositionSeries) -> int:
    return sum(goldie_of_cyclic(A) for A in s.annihilators)


def _multiset_key(ring: Ring, gens) -> tuple:
    return tuple(sorted(gens, key=ring.sort_key))


@lru_cache(maxsize=None)
def _outcomes(ring: Ring, invariant_factors: tuple, mode: str, indecomposable_only: bool):
    """Factor multisets of all series of ``R/(d1) + ...`` with their chain counts.

    Series starting with ``M1 = Rx`` correspond to series of ``M/Rx`` (for
    ``Rx`` RD, resp. pure), so the search recurses on quotients and memoizes
    on their canonical form, a complete invariant over the supported rings.
    """
    M = cyclic_sum(ring, invariant_factors)
    T = M.to_table()
    if T.n == 1:
        return {(): 1}
    test = (lambda E, F: is_rd_submodule(E, F, check=False)) if mode == "rd" else is_pure_submodule
    res: dict = {}
    seen = set()
    for x in range(1, T.n):
        C = T.cyclic(x)
        key = C.tobytes()
        if key in seen:
            continue
        seen.add(key)
        A = ideal_generator(ring, T.annihilator_of(x))
        if indecomposable_only and not is_indecomposable_quotient(PrincipalIdeal(ring, A)):
            continue
        if not test(T, C):
            continue
        Q = M.quotient(M.submodule([T.element(x)]))
        for tail, c in _outcomes(ring, Q.invariant_factors, mode, indecomposable_only).items():
            ms = _multiset_key(ring, (A,) + tail)
            res[ms] = res.get(ms, 0) + c
    return res


@dataclass(frozen=True)
class SeriesOutcomes:
    ring: Ring
    counts: dict            # factor multiset (tuple of generators) -> number of series

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    @property
    def lengths(self) -> set:
        return {len(ms) for ms in self.counts}

    def prime_multisets(self) -> set:
        R = self.ring
        return {_multiset_key(R, tuple(radical(PrincipalIdeal(R, a)).generator for a in ms))
                for ms in self.counts}

    @property
    def unique(self) -> bool:
        return len(self.counts) == 1


def series_outcomes(M: FpModule, mode: str = "rd", indecomposable_only: bool = True) -> SeriesOutcomes:
    return SeriesOutcomes(M.ring, _outcomes(M.ring, M.invariant_factors, mode, indecomposable_only))


def ell(M: FpModule, mode: str = "rd") -> int:
    """Common length of series with indecomposable cyclic factors."""
    out = series_outcomes(M, mode)
    if len(out.lengths) != 1:
        raise ValueError(f"series lengths are not unique: {sorted(out.lengths)}")
    return next(iter(out.lengths))


def h_of_module(M: FpModule, mode: str = "rd") -> int:
    """Least total Goldie dimension of the factors over all enumerated series."""
    from .rings import NotFinite

    if not M.ring.finite:
        raise NotFinite("h needs a finite module")
    out = series_outcomes(M, mode)
    return min(sum(goldie_of_cyclic(PrincipalIdeal(M.ring, a)) for a in ms) for ms in out.counts)
