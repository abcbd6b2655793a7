"""Structure of finite commutative rings by exhaustion.

Everything here works on the index tables of :attr:`Ring.tables`, so it
applies uniformly to ``Z/n``, finite polynomial quotients, products and
table rings.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .rings import MAX_TABLE_RING, NotFinite, Ring, RingError, TableRing


def _require_finite(ring: Ring) -> None:
    if not ring.finite:
        raise NotFinite(f"{ring} is not finite")


def idempotents(ring: Ring) -> list[int]:
    _require_finite(ring)
    T = ring.tables
    return [e for e in range(len(T.elements)) if T.mul[e, e] == e]


def primitive_idempotents(ring: Ring) -> list[int]:
    T = ring.tables
    ids = idempotents(ring)
    out = []
    for e in ids:
        if e == T.zero:
            continue
        if all(f in (T.zero, e) or T.mul[e, f] != f for f in ids):
            out.append(e)
    return out


@dataclass(frozen=True)
class LocalFactor:
    idempotent: object          # payload of the idempotent in the ambient ring
    ring: TableRing             # the factor e*R as a ring with unit e
    support: tuple              # ambient indices of the elements of e*R
    maximal_ideal: frozenset    # ambient indices r with e*r a nonunit of e*R


def _restrict(ring: Ring, support: list[int]) -> TableRing:
    T = ring.tables
    pos = {a: i for i, a in enumerate(support)}
    sub = np.asarray(support)
    add = [[pos[int(x)] for x in row] for row in T.add[np.ix_(sub, sub)]]
    mul = [[pos[int(x)] for x in row] for row in T.mul[np.ix_(sub, sub)]]
    return TableRing(tuple(map(tuple, add)), tuple(map(tuple, mul)))


@lru_cache(maxsize=None)
def local_factors(ring: Ring) -> tuple[LocalFactor, ...]:
    """Complete orthogonal primitive idempotents and their local factor rings."""
    _require_finite(ring)
    T = ring.tables
    if len(T.elements) > MAX_TABLE_RING * 64:
        raise RingError("ring too large for exhaustive decomposition")
    out = []
    for e in primitive_idempotents(ring):
        support = sorted(set(T.mul[e].tolist()))
        units = {u for u in support if (T.mul[u, support] == e).any()}
        maximal = frozenset(r for r in range(len(T.elements)) if int(T.mul[e, r]) not in units)
        factor = _restrict(ring, support)
        out.append(LocalFactor(T.elements[e], factor, tuple(support), maximal))
    out.sort(key=lambda f: ring.sort_key(f.idempotent))
    return tuple(out)


def decompose_finite_ring(ring: Ring) -> list[tuple[TableRing, object]]:
    """``[(local factor ring, idempotent), ...]`` with idempotents summing to one."""
    return [(f.ring, f.idempotent) for f in local_factors(ring)]


def maximal_ideals(ring: Ring) -> list[frozenset]:
    return [f.maximal_ideal for f in local_factors(ring)]


def _span_ideal(T, gens) -> frozenset:
    """Smallest ideal containing the given element indices."""
    current = np.array([T.zero])
    for g in gens:
        Rg = np.unique(T.mul[g])
        current = np.unique(T.add[np.ix_(current, Rg)])
    return frozenset(current.tolist())


@lru_cache(maxsize=None)
def all_ideals(ring: Ring) -> tuple[frozenset, ...]:
    """Every ideal (principal or not) as a set of element indices."""
    _require_finite(ring)
    T = ring.tables
    principal = {frozenset(np.unique(T.mul[a]).tolist()) for a in range(len(T.elements))}
    ideals = set(principal)
    frontier = list(principal)
    while frontier:
        new = []
        for I in frontier:
            for J in principal:
                if J <= I:
                    continue
                K = frozenset(np.unique(T.add[np.ix_(list(I), list(J))]).tolist())
                if K not in ideals:
                    ideals.add(K)
                    new.append(K)
        frontier = new
    return tuple(sorted(ideals, key=lambda I: (len(I), sorted(I))))


def is_chain(ideals) -> bool:
    ideals = list(ideals)
    return all(I <= J or J <= I for i, I in enumerate(ideals) for J in ideals[i + 1:])


def is_arithmetic(ring: Ring) -> bool:
    """Every local factor has a totally ordered ideal lattice."""
    return all(is_chain(all_ideals(f.ring)) for f in local_factors(ring))


def nilpotents(ring: Ring) -> list[int]:
    T = ring.tables
    out = []
    for a in range(len(T.elements)):
        x = a
        for _ in range(len(T.elements)):
            if x == T.zero:
                out.append(a)
                break
            x = int(T.mul[x, a])
    return out


@dataclass
class FactorReport:
    idempotent: str
    size: int
    minimal_prime_count: int
    minimal_prime_uniserial: bool
    chain_ring: bool


@dataclass
class PcsReport:
    ring: str
    size: int
    factors: list = field(default_factory=list)
    is_bezout: bool = False
    is_arithmetic: bool = False
    nonminimal_primes_in_one_maximal: bool = True
    is_pcs_candidate: bool = False

    def as_dict(self) -> dict:
        from dataclasses import asdict

        return asdict(self)


def pcs_diagnostics(ring: Ring) -> PcsReport:
    """Finite-ring checks behind the PCS characterization.

    For a finite ring every prime is maximal, so each local factor has one
    minimal prime (its maximal ideal) and the "only one maximal ideal above a
    nonminimal prime" condition holds vacuously.
    """
    _require_finite(ring)
    report = PcsReport(ring=ring.descriptor() if not isinstance(ring, TableRing) else str(ring),
                       size=len(ring.tables.elements))
    for f in local_factors(ring):
        ideals = all_ideals(f.ring)
        T = f.ring.tables
        m = next(I for I in sorted(ideals, key=len, reverse=True) if T.one not in I)
        below = [I for I in ideals if I <= m]
        report.factors.append(FactorReport(
            idempotent=ring.format(f.idempotent),
            size=len(f.support),
            minimal_prime_count=1,
            minimal_prime_uniserial=is_chain(below),
            chain_ring=is_chain(ideals),
        ))
    report.is_arithmetic = all(fr.chain_ring for fr in report.factors)
    report.is_bezout = _is_bezout(ring)
    report.is_pcs_candidate = (report.is_arithmetic and report.is_bezout
                               and all(fr.minimal_prime_uniserial for fr in report.factors))
    return report


def _is_bezout(ring: Ring) -> bool:
    if isinstance(ring, TableRing):
        return ring.is_bezout
    T = ring.tables
    principal = {frozenset(np.unique(T.mul[a]).tolist()) for a in range(len(T.elements))}
    return all(I in principal for I in all_ideals(ring))
