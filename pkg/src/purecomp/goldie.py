"""Goldie dimension: structural formula and exhaustive search."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .ideals import PrincipalIdeal, minimal_primes_over
from .module import FpModule
from .oracle import MAX_ELEMENTS, FiniteModuleTable, TooLarge


@dataclass(frozen=True)
class GoldieReport:
    dimension: int
    witness: tuple          # generators (element indices) of independent simple submodules

    def as_json(self, table: FiniteModuleTable | None = None) -> dict:
        out = {"dimension": self.dimension}
        if table is not None:
            R = table.ring
            out["witness"] = [[R.format(a) for a in table.element(g)] for g in self.witness]
        return out


def goldie_structural(M: FpModule) -> int:
    """Sum over invariant factors of the number of minimal primes over ``(d_i)``.

    Free summands over a domain count one each.
    """
    R = M.ring
    return sum(len(minimal_primes_over(PrincipalIdeal.of(R, d))) for d in M.invariant_factors)


def _require_size(E: FiniteModuleTable) -> None:
    if E.n > MAX_ELEMENTS:
        raise TooLarge(f"module of size {E.n} exceeds {MAX_ELEMENTS}")


def simple_submodules(E: FiniteModuleTable) -> list[np.ndarray]:
    """Distinct simple submodules; each is cyclic, generated by any nonzero element."""
    sizes = np.array([len(c) for c in E.cyclics])
    out, seen = [], set()
    for x in range(1, E.n):
        C = E.cyclics[x]
        if all(sizes[y] == len(C) for y in C[1:]):
            key = C.tobytes()
            if key not in seen:
                seen.add(key)
                out.append(C)
    return out


def socle(E: FiniteModuleTable) -> np.ndarray:
    S = np.array([0])
    for C in simple_submodules(E):
        if not E.contains(S, C[1]):
            S = E.sum_sets(S, C)
    return S


def goldie_bruteforce(E: FiniteModuleTable) -> GoldieReport:
    """Largest independent family of nonzero submodules, by branch and bound.

    Every nonzero submodule of a finite module contains a simple one, so the
    search runs over families of simple submodules; a family is independent
    iff each member meets the sum of the previous ones in zero.  An upper
    bound at each node: further members live in the socle, so the product of
    their sizes divides ``|socle| / |current sum|``.
    """
    _require_size(E)
    simples = simple_submodules(E)
    soc = len(socle(E))
    best = [0, ()]

    def bound(size: int, start: int) -> int:
        room, k = soc // size, 0
        for s in sorted(len(C) for C in simples[start:]):
            if s > room:
                break
            room //= s
            k += 1
        return k

    def search(S, start, chosen):
        if len(chosen) > best[0]:
            best[0], best[1] = len(chosen), tuple(chosen)
        if len(chosen) + bound(len(S), start) <= best[0]:
            return
        for i in range(start, len(simples)):
            C = simples[i]
            if E.contains(S, C[1]):
                continue
            search(E.sum_sets(S, C), i + 1, chosen + [int(C[1])])
            if best[0] == len(chosen) + bound(len(S), start):
                return

    search(np.array([0]), 0, [])
    return GoldieReport(best[0], best[1])


def is_essential(E: FiniteModuleTable, F) -> bool:
    """Every nonzero ``Rx`` meets ``F`` in a nonzero element."""
    _require_size(E)
    inF = E.mask(F)
    inF[0] = False
    return all(inF[E.cyclics[x]].any() for x in range(1, E.n))


def is_uniform(E: FiniteModuleTable) -> bool:
    """Nonzero and any two nonzero cyclic submodules meet nontrivially."""
    _require_size(E)
    if E.n == 1:
        return False
    cyc = {C.tobytes(): C for C in (E.cyclics[x] for x in range(1, E.n))}
    cyc = list(cyc.values())
    for i, C in enumerate(cyc):
        m = E.mask(C)
        m[0] = False
        for D in cyc[i + 1:]:
            if not m[D].any():
                return False
    return True
