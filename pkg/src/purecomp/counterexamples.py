"""Counterexamples over the local ring ``F_q[x,y]/(x^2, xy, y^2)``.

The ring has maximal ideal ``P = (a, b)`` with ``P^2 = 0`` and ``Ra, Rb``
incomparable, so it is not arithmetic.  Over it:

* ``M = (Re1 + Re2) / R(b e1 - a e2)`` is indecomposable with two generators
  and has no RD series with cyclic factors;
* ``L = R(b, -a)`` is RD in ``R^2`` but not a direct summand (RD but not pure);
* the socle ``S`` of the injective hull of ``R/P`` is simple, hence
  pure-injective, yet the nonzero map ``L -> S`` does not extend to ``R^2``.

The injective hull is realized as the ``F_q``-linear dual of ``R``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property, lru_cache

import numpy as np

from .oracle import (FiniteModuleTable, SeriesSearch, hom_space, is_indecomposable, is_pure_submodule,
                     is_rd_submodule, is_simple, module_isomorphic, mu_bruteforce, radical_layers)
from .rings import IntegersMod, PolynomialQuotient, Ring, TableRing

SUPPORTED_Q = (2, 3, 4, 5)


class SearchExhausted(RuntimeError):
    pass


def field_of_order(q: int) -> Ring:
    if q in (2, 3, 5):
        return IntegersMod(q)
    if q == 4:
        return PolynomialQuotient(2, (1, 1, 1))
    raise ValueError(f"unsupported field order {q}; choose one of {SUPPORTED_Q}")


@dataclass(frozen=True)
class WitnessRing:
    """``F_q[x,y]/(x^2, xy, y^2)`` as a table ring on triples ``c0 + c1 x + c2 y``."""

    q: int = 2

    @cached_property
    def field(self) -> Ring:
        return field_of_order(self.q)

    @cached_property
    def triples(self) -> list:
        F = self.field
        els = F.elements()
        zero = F.zero
        els = [zero] + [e for e in els if e != zero]
        return list(itertools.product(els, repeat=3))

    @cached_property
    def index(self) -> dict:
        return {t: i for i, t in enumerate(self.triples)}

    def _mul(self, s, t):
        F = self.field
        return (F.mul(s[0], t[0]),
                F.add(F.mul(s[0], t[1]), F.mul(s[1], t[0])),
                F.add(F.mul(s[0], t[2]), F.mul(s[2], t[0])))

    def _add(self, s, t):
        F = self.field
        return tuple(F.add(u, v) for u, v in zip(s, t))

    @cached_property
    def ring(self) -> TableRing:
        T, ix = self.triples, self.index
        add = [[ix[self._add(s, t)] for t in T] for s in T]
        mul = [[ix[self._mul(s, t)] for t in T] for s in T]
        return TableRing(tuple(map(tuple, add)), tuple(map(tuple, mul)),
                         label=f"F{self.q}[x,y]/(x^2,xy,y^2)")

    def element(self, c0=None, c1=None, c2=None) -> int:
        F = self.field
        return self.index[tuple(F.zero if c is None else c for c in (c0, c1, c2))]

    @property
    def a(self) -> int:
        return self.element(c1=self.field.one)

    @property
    def b(self) -> int:
        return self.element(c2=self.field.one)

    @cached_property
    def P(self) -> frozenset:
        z = self.field.zero
        return frozenset(i for i, t in enumerate(self.triples) if t[0] == z)

    def coefficients(self, r: int) -> tuple:
        return self.triples[r]

    def facts(self) -> dict:
        """Exhaustive checks of the ring facts the constructions rely on."""
        R = self.ring
        Ra, Rb = R.principal[self.a], R.principal[self.b]
        ann = lambda x: frozenset(r for r in range(R.size) if R.mul(r, x) == R.zero)
        P2 = {R.mul(s, t) for s in self.P for t in self.P}
        return {
            "Ra_meet_Rb_zero": Ra & Rb == {R.zero},
            "ann_a_is_P": ann(self.a) == self.P,
            "ann_b_is_P": ann(self.b) == self.P,
            "P_squared_zero": P2 == {R.zero},
            "Ra_Rb_incomparable": not (Ra <= Rb or Rb <= Ra),
        }


@lru_cache(maxsize=None)
def witness_ring(q: int = 2) -> WitnessRing:
    return WitnessRing(q)


# -- modules ----------------------------------------------------------------------
def witness_module(W: WitnessRing) -> FiniteModuleTable:
    """``(Re1 + Re2) / R(b e1 - a e2)``."""
    R = W.ring
    return FiniteModuleTable.from_presentation(R, 2, [(W.b, R.neg(W.a))], name="M")


def residue_field_module(W: WitnessRing) -> FiniteModuleTable:
    """``R/P``, the constant coefficient."""
    return FiniteModuleTable.from_map(W.ring, [W.ring.zero], lambda v: W.coefficients(v[0])[0],
                                      name="R/P")


def dual_module(W: WitnessRing) -> FiniteModuleTable:
    """``Hom_F(R, F)`` with ``(r f)(s) = f(r s)``; elements are value triples on ``1, x, y``.

    It is generated by the coordinate functionals of ``x`` and ``y``.
    """
    R, F = W.ring, W.field
    basis = [R.one, W.a, W.b]

    def functional(v):
        r1, r2 = v
        return tuple(F.add(W.coefficients(R.mul(r1, s))[1], W.coefficients(R.mul(r2, s))[2])
                     for s in basis)

    return FiniteModuleTable.from_map(R, [R.zero, R.zero], functional, name="E(R/P)")


def socle_module(W: WitnessRing, D: FiniteModuleTable | None = None):
    """``S = {e in E(R/P) : a e = b e = 0}`` as ``(table, element indices in D)``."""
    D = dual_module(W) if D is None else D
    Ti = W.ring.tables.index
    killed = (D.act[Ti[W.a]] == 0) & (D.act[Ti[W.b]] == 0)
    S = np.nonzero(killed)[0]
    return D.submodule_table(S), S


# -- RD series obstruction -----------------------------------------------------------
@dataclass
class ObstructionReport:
    size: int
    indecomposable: bool
    mu: int
    top_dimension: int
    cyclic_submodules: int
    rd_cyclic_with_cyclic_quotient: list
    rd_series_count: int
    controls: dict

    @property
    def no_rd_series(self) -> bool:
        return self.rd_series_count == 0

    def as_json(self) -> dict:
        return {
            "size": self.size,
            "indecomposable": self.indecomposable,
            "mu": self.mu,
            "dim_top": self.top_dimension,
            "cyclic_submodules": self.cyclic_submodules,
            "rd_starts": self.rd_cyclic_with_cyclic_quotient,
            "rd_series_count": self.rd_series_count,
            "no_rd_series": self.no_rd_series,
            "controls": self.controls,
        }


def _series_count(E: FiniteModuleTable) -> int:
    return sum(SeriesSearch(E, "rd", indecomposable_only=False).outcomes().values())


def rd_series_obstruction(W: WitnessRing, M: FiniteModuleTable | None = None) -> ObstructionReport:
    """Exhaustive search for RD series with cyclic factors of the witness module.

    A series would start with a cyclic RD submodule ``Rz`` with ``M/Rz``
    cyclic.  Every such candidate is listed together with whether it is a
    direct summand; the full series search must come back empty.
    """
    M = witness_module(W) if M is None else M
    starts, seen = [], set()
    for z in range(1, M.n):
        C = M.cyclic(z)
        if C.tobytes() in seen:
            continue
        seen.add(C.tobytes())
        if is_rd_submodule(M, C, check=False) and mu_bruteforce(M.quotient(C)) <= 1:
            starts.append({"generator": int(z), "summand": is_pure_submodule(M, C)})
    R = W.ring
    cyclic_R = FiniteModuleTable.free(R, 1)
    k = residue_field_module(W)
    controls = {
        "cyclic_R_series": _series_count(cyclic_R),
        "residue_sum_series": _series_count(k.direct_sum(k)),
    }
    return ObstructionReport(
        size=M.n,
        indecomposable=is_indecomposable(M),
        mu=mu_bruteforce(M),
        top_dimension=max(d for _, d in radical_layers(M)),
        cyclic_submodules=len(seen),
        rd_cyclic_with_cyclic_quotient=starts,
        rd_series_count=_series_count(M),
        controls=controls,
    )


# -- RD versus pure ---------------------------------------------------------------
@dataclass
class SeparationReport:
    rd: bool
    pure: bool

    @property
    def separates(self) -> bool:
        return self.rd and not self.pure


def relation_submodule(W: WitnessRing):
    """``N = R^2`` and ``L = R(b, -a)`` as element indices of ``N``."""
    R = W.ring
    N = FiniteModuleTable.free(R, 2)
    L = N.cyclic(N.index_of((W.b, R.neg(W.a))))
    return N, L


def rd_vs_pure(W: WitnessRing) -> SeparationReport:
    N, L = relation_submodule(W)
    return SeparationReport(is_rd_submodule(N, L), is_pure_submodule(N, L))


# -- RD-injectivity failure ---------------------------------------------------------
@dataclass
class InjectivityWitness:
    rd: bool
    hom_L_S: int
    hom_N_S: int
    restricted_images: int
    phi: list                   # values of phi on L (as S element indices), L in N order
    extends: bool
    socle_size: int
    socle_simple: bool
    socle_essential: bool
    socle_iso_residue_field: bool
    control_dual_all_extend: bool | None

    @property
    def certified(self) -> bool:
        return (self.rd and not self.extends and any(self.phi) and self.socle_simple
                and self.socle_iso_residue_field)

    def as_json(self) -> dict:
        from dataclasses import asdict

        out = asdict(self)
        out["certified"] = self.certified
        return out


def _restriction_set(H, L_in_N) -> set:
    return {tuple(f[L_in_N].tolist()) for f in H.maps}


def _homs_on_sub(N: FiniteModuleTable, L, target: FiniteModuleTable):
    """All homs ``L -> target``, listed as value tuples in the order of ``L``."""
    Lt = N.submodule_table(L)
    order = N.label[Lt.codes]          # N-index of each L-table element
    pos = np.argsort(order)            # L-table index for each entry of sorted L
    H = hom_space(Lt, target)
    return [tuple(f[pos].tolist()) for f in H.maps]


def rd_injectivity_failure(W: WitnessRing, control: bool = True) -> InjectivityWitness:
    """``L = R(b, -a)`` is RD in ``N = R^2``; a nonzero ``L -> S`` has no extension."""
    from .goldie import is_essential

    N, L = relation_submodule(W)
    D = dual_module(W)
    S, S_in_D = socle_module(W, D)
    homs_L = _homs_on_sub(N, L, S)
    H = hom_space(N, S)
    images = _restriction_set(H, L)
    phi = next((f for f in homs_L if f not in images), None)
    if phi is None:
        raise SearchExhausted("every map L -> S extends")
    dual_ok = None
    if control:
        D_homs = _homs_on_sub(N, L, D)
        dual_ok = set(D_homs) <= _restriction_set(hom_space(N, D), L)
    return InjectivityWitness(
        rd=is_rd_submodule(N, L),
        hom_L_S=len(homs_L),
        hom_N_S=len(H),
        restricted_images=len(images),
        phi=list(phi),
        extends=False,
        socle_size=S.n,
        socle_simple=is_simple(S),
        socle_essential=is_essential(D, S_in_D),
        socle_iso_residue_field=module_isomorphic(S, residue_field_module(W)),
        control_dual_all_extend=dual_ok,
    )


def arithmetic_extension_control(ring: Ring, modules, targets) -> dict:
    """Over an arithmetic ring every hom from an RD submodule extends (bounded sweep).

    ``modules`` and ``targets`` are tables; every RD submodule of every module
    is tested against every target.
    """
    from .oracle import enumerate_submodules

    pairs = failures = 0
    for N in modules:
        for L in enumerate_submodules(N):
            if not is_rd_submodule(N, L, check=False):
                continue
            for S in targets:
                pairs += 1
                ext = _restriction_set(hom_space(N, S), L)
                if not set(_homs_on_sub(N, L, S)) <= ext:
                    failures += 1
    return {"pairs": pairs, "failures": failures}


# -- a second non-arithmetic local ring ------------------------------------------------
def z4_y_ring() -> tuple[TableRing, int, int]:
    """``Z/4[y]/(2y, y^2)`` on pairs ``a + b y``, with the indices of ``2`` and ``y``.

    Also local with ``P = (2, y)``, ``P^2 = 0`` and ``(2)``, ``(y)``
    incomparable, but of characteristic 4.
    """
    elems = list(itertools.product(range(4), range(2)))
    ix = {e: i for i, e in enumerate(elems)}
    add = [[ix[((a + c) % 4, (b + d) % 2)] for c, d in elems] for a, b in elems]
    mul = [[ix[((a * c) % 4, (a * d + b * c) % 2)] for c, d in elems] for a, b in elems]
    R = TableRing(tuple(map(tuple, add)), tuple(map(tuple, mul)), label="Z/4[y]/(2y,y^2)")
    return R, ix[(2, 0)], ix[(0, 1)]


def obstruction_over(R: Ring, a: int, b: int) -> dict:
    """Witness-module checks for ``M = R^2 / R(b e1 - a e2)`` over any small local ring."""
    M = FiniteModuleTable.from_presentation(R, 2, [(b, R.neg(a))], name="M")
    N = FiniteModuleTable.free(R, 2)
    L = N.cyclic(N.index_of((b, R.neg(a))))
    return {
        "size": M.n,
        "indecomposable": is_indecomposable(M),
        "mu": mu_bruteforce(M),
        "rd_series_count": _series_count(M),
        "relation_rd": is_rd_submodule(N, L),
        "relation_pure": is_pure_submodule(N, L),
    }
