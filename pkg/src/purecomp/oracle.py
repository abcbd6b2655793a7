"""Exhaustive ground truth on finite modules.

A :class:`FiniteModuleTable` is a finite module presented as the image of a
coordinate space ``C = R/(c1) + ... + R/(ck)``.  Each point of ``C`` is
encoded as a mixed-radix integer, and ``label[code]`` names the module
element it maps to (or -1 when the point is outside the module).  Addition
and the ring action are computed digitwise on canonical codes, so no
quadratic addition table is needed unless one is asked for.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Iterator, Sequence

import numpy as np

from .finite_rings import local_factors, maximal_ideals
from .rings import NotFinite, Ring, UnsupportedRing

MAX_ELEMENTS = 65536       # element-level predicates
MAX_LATTICE = 4096         # submodule lattices and addition tables
MAX_CODES = 1 << 22        # size of a coordinate space


class TooLarge(ValueError):
    pass


class NotASubmodule(ValueError):
    pass


class NotVNR(ValueError):
    pass


# ---------------------------------------------------------------------------
@lru_cache(maxsize=None)
def _coordinate(ring: Ring, d):
    """Residues of ``R/(d)`` with their addition and action tables (digit indices)."""
    T = ring.tables
    residues = list(ring.residues(d))
    z = residues.index(ring.reduce_mod(ring.zero, d))
    residues.insert(0, residues.pop(z))
    pos = {r: i for i, r in enumerate(residues)}
    red = np.array([pos[ring.reduce_mod(a, d)] for a in T.elements], dtype=np.int64)
    ridx = np.array([T.index[r] for r in residues], dtype=np.int64)
    dadd = red[T.add[np.ix_(ridx, ridx)]]
    dact = red[T.mul[:, ridx]]
    return tuple(residues), dadd, dact


@dataclass(frozen=True, eq=False)
class CoordinateSpace:
    ring: Ring
    gens: tuple

    @cached_property
    def coords(self):
        return [_coordinate(self.ring, d) for d in self.gens]

    @cached_property
    def radices(self) -> np.ndarray:
        return np.array([len(c[0]) for c in self.coords], dtype=np.int64)

    @cached_property
    def strides(self) -> np.ndarray:
        return np.concatenate(([1], np.cumprod(self.radices)[:-1])).astype(np.int64)

    @property
    def size(self) -> int:
        return int(np.prod(self.radices)) if len(self.gens) else 1

    def decode(self, codes: np.ndarray) -> np.ndarray:
        codes = np.asarray(codes, dtype=np.int64)
        return (codes[..., None] // self.strides) % self.radices

    def encode(self, digits: np.ndarray) -> np.ndarray:
        return (np.asarray(digits, dtype=np.int64) * self.strides).sum(axis=-1)

    def add_codes(self, a, b):
        da, db = self.decode(a), self.decode(b)
        out = np.empty(np.broadcast_shapes(da.shape, db.shape), dtype=np.int64)
        for k, (_, dadd, _) in enumerate(self.coords):
            out[..., k] = dadd[da[..., k], db[..., k]]
        return self.encode(out)

    def act_codes(self, codes) -> np.ndarray:
        """``(|R|, len(codes))`` array of ``r * code``."""
        dc = self.decode(codes)
        out = np.zeros((self.ring.tables.mul.shape[0], len(dc)), dtype=np.int64)
        for k, (_, _, dact) in enumerate(self.coords):
            out += dact[:, dc[:, k]] * self.strides[k]
        return out

    def payload(self, code: int) -> tuple:
        digits = self.decode(np.array([code]))[0]
        return tuple(c[0][int(x)] for c, x in zip(self.coords, digits))

    def code_of(self, payload) -> int:
        digits = [c[0].index(self.ring.reduce_mod(a, d))
                  for c, a, d in zip(self.coords, payload, self.gens)]
        return int(np.dot(digits, self.strides)) if digits else 0


def _canonical_labels(label: np.ndarray) -> np.ndarray:
    """Relabel densely so that element order follows the least code of each class."""
    label = np.asarray(label, dtype=np.int64)
    valid = np.nonzero(label >= 0)[0]
    uniq, first = np.unique(label[valid], return_index=True)
    order = np.argsort(valid[first], kind="stable")
    remap = np.full(int(uniq.max()) + 1 if len(uniq) else 0, -1, dtype=np.int64)
    remap[uniq[order]] = np.arange(len(uniq))
    out = np.full(label.shape, -1, dtype=np.int64)
    out[valid] = remap[label[valid]]
    return out


class FiniteModuleTable:
    """A finite module: elements ``0..n-1`` (0 is zero), addition and ring action."""

    def __init__(self, space: CoordinateSpace, label, name: str = ""):
        if space.size > MAX_CODES:
            raise TooLarge(f"coordinate space of size {space.size} exceeds {MAX_CODES}")
        self.space = space
        self.ring = space.ring
        self.label = _canonical_labels(label)
        if self.label[0] != 0:
            raise ValueError("the zero vector must belong to the module")
        valid = np.nonzero(self.label >= 0)[0]
        _, first = np.unique(self.label[valid], return_index=True)
        self.codes = valid[first]
        self.n = len(self.codes)
        if self.n > MAX_ELEMENTS:
            raise TooLarge(f"module of size {self.n} exceeds {MAX_ELEMENTS}")
        self.name = name
        self.act = self.label[space.act_codes(self.codes)]
        if (self.act < 0).any():
            raise ValueError("labelled set is not closed under the ring action")

    # -- constructors ------------------------------------------------------
    @classmethod
    def from_cyclics(cls, ring: Ring, gens: Sequence, name: str = "") -> "FiniteModuleTable":
        if not ring.finite:
            raise NotFinite("finite module tables need a finite ring")
        space = CoordinateSpace(ring, tuple(gens))
        return cls(space, np.arange(space.size), name)

    @classmethod
    def free(cls, ring: Ring, m: int) -> "FiniteModuleTable":
        return cls.from_cyclics(ring, [ring.zero] * m, name=f"R^{m}")

    @classmethod
    def from_presentation(cls, ring: Ring, ngens: int, columns: Sequence[Sequence],
                          name: str = "", exponent=None) -> "FiniteModuleTable":
        """``R^ngens`` modulo the span of the relation columns, by coset enumeration.

        If ``exponent`` is given it must kill the module; enumeration then
        starts from ``(R/(exponent))^ngens`` instead of the free module.
        """
        e = ring.zero if exponent is None else exponent
        F = cls.from_cyclics(ring, [e] * ngens)
        K = F.span([F.index_of(tuple(ring.reduce_mod(a, e) for a in c)) for c in columns])
        Q = F.quotient(K)
        Q.name = name
        return Q

    @classmethod
    def from_map(cls, ring: Ring, gens: Sequence, fn, name: str = "") -> "FiniteModuleTable":
        """Image of ``C = R/(g1)+...`` under ``fn(payload tuple) -> hashable``."""
        space = CoordinateSpace(ring, tuple(gens))
        seen: dict = {}
        label = np.empty(space.size, dtype=np.int64)
        for code in range(space.size):
            label[code] = seen.setdefault(fn(space.payload(code)), len(seen))
        return cls(space, label, name)

    # -- element access ------------------------------------------------------
    def __len__(self) -> int:
        return self.n

    def __repr__(self):
        return f"FiniteModuleTable({self.name or self.ring}, n={self.n})"

    def element(self, i: int) -> tuple:
        return self.space.payload(int(self.codes[i]))

    def elements(self) -> list:
        return [self.element(i) for i in range(self.n)]

    def index_of(self, payload) -> int:
        i = int(self.label[self.space.code_of(payload)])
        if i < 0:
            raise ValueError("vector does not lie in the module")
        return i

    def ring_index(self, r) -> int:
        return self.ring.tables.index[r]

    # -- arithmetic ----------------------------------------------------------
    def add_pairs(self, a, b) -> np.ndarray:
        a, b = np.asarray(a), np.asarray(b)
        return self.label[self.space.add_codes(self.codes[a], self.codes[b])]

    @cached_property
    def add(self) -> np.ndarray:
        if self.n > MAX_LATTICE:
            raise TooLarge(f"addition table for {self.n} elements exceeds cap {MAX_LATTICE}")
        idx = np.arange(self.n)
        out = np.empty((self.n, self.n), dtype=np.int32)
        step = max(1, (1 << 20) // self.n)
        for s in range(0, self.n, step):
            out[s:s + step] = self.add_pairs(idx[s:s + step, None], idx[None, :])
        return out

    @cached_property
    def neg(self) -> np.ndarray:
        T = self.ring.tables
        return self.act[T.neg[T.one]]

    @cached_property
    def actions(self) -> np.ndarray:
        """Distinct rows of :attr:`act` (ring elements acting differently)."""
        return np.unique(self.act, axis=0)

    def sum_sets(self, A, B) -> np.ndarray:
        A, B = np.asarray(A), np.asarray(B)
        if self.n <= MAX_LATTICE:
            return np.unique(self.add[np.ix_(A, B)])
        return np.unique(self.add_pairs(A[:, None], B[None, :]))

    def cyclic(self, x: int) -> np.ndarray:
        return self.cyclics[x] if "cyclics" in self.__dict__ else np.unique(self.act[:, x])

    @cached_property
    def cyclics(self) -> list:
        """``Rx`` for every element ``x``, as sorted index arrays."""
        return [np.unique(self.actions[:, x]) for x in range(self.n)]

    @cached_property
    def generation_order(self) -> np.ndarray:
        sizes = np.array([len(c) for c in self.cyclics])
        return np.argsort(-sizes, kind="stable")

    def span(self, gens) -> np.ndarray:
        S = np.array([0])
        for g in gens:
            if not self.contains(S, g):
                S = self.sum_sets(S, self.cyclic(g))
        return S

    def mask(self, S) -> np.ndarray:
        m = np.zeros(self.n, dtype=bool)
        m[np.asarray(S, dtype=np.int64)] = True
        return m

    @staticmethod
    def contains(S, x) -> bool:
        i = np.searchsorted(S, x)
        return i < len(S) and S[i] == x

    def annihilator_of(self, x: int) -> frozenset:
        """``ann(x)`` as a set of ring-element indices."""
        return frozenset(np.nonzero(self.act[:, x] == 0)[0].tolist())

    def annihilator(self) -> frozenset:
        return frozenset(np.nonzero((self.act == 0).all(axis=1))[0].tolist())

    def fingerprint(self) -> tuple:
        """``|rM|`` for every ``r``; a complete isomorphism invariant over finite PIRs."""
        return tuple(len(np.unique(row)) for row in self.act)

    # -- derived modules -------------------------------------------------------
    def quotient(self, sub) -> "FiniteModuleTable":
        sub = np.asarray(sub)
        idx = np.arange(self.n)
        rep = np.empty(self.n, dtype=np.int64)
        step = max(1, (1 << 20) // max(len(sub), 1))
        for s in range(0, self.n, step):
            rep[s:s + step] = self.add_pairs(idx[s:s + step, None], sub[None, :]).min(axis=1)
        lab = np.where(self.label >= 0, rep[np.maximum(self.label, 0)], -1)
        return FiniteModuleTable(self.space, lab, name=f"{self.name}/N")

    def submodule_table(self, sub) -> "FiniteModuleTable":
        sub = np.asarray(sub)
        remap = np.full(self.n, -1, dtype=np.int64)
        remap[sub] = np.arange(len(sub))
        lab = np.where(self.label >= 0, remap[np.maximum(self.label, 0)], -1)
        return FiniteModuleTable(self.space, lab, name=f"N<{self.name}")

    def direct_sum(self, other: "FiniteModuleTable") -> "FiniteModuleTable":
        if self.ring != other.ring:
            raise ValueError("direct sum over different rings")
        space = CoordinateSpace(self.ring, self.space.gens + other.space.gens)
        la = self.label[:, None]
        lb = other.label[None, :]
        lab = np.where((la >= 0) & (lb >= 0), la * other.n + lb, -1)
        # code = a + |C_a| * b, so b varies slowest: transpose before flattening
        return FiniteModuleTable(space, lab.T.ravel(), name=f"{self.name}+{other.name}")

    # -- sanity ----------------------------------------------------------------
    def validate(self) -> None:
        """Exhaustively check the module axioms (small modules only)."""
        T = self.ring.tables
        A, act, n = self.add, self.act, self.n
        idx = np.arange(n)
        assert (A[0] == idx).all(), "zero is not neutral"
        assert (A == A.T).all(), "addition not commutative"
        assert (A[A, :] == A[:, A]).all(), "addition not associative"
        assert (A[idx, self.neg] == 0).all(), "missing negatives"
        assert (act[T.one] == idx).all(), "1 does not act trivially"
        for r in range(len(T.elements)):
            for s in range(len(T.elements)):
                assert (act[T.add[r, s]] == A[act[r], act[s]]).all(), "(r+s)x != rx+sx"
                assert (act[T.mul[r, s]] == act[r][act[s]]).all(), "(rs)x != r(sx)"
            assert (act[r][A] == A[np.ix_(act[r], act[r])]).all(), "r(x+y) != rx+ry"


# ---------------------------------------------------------------------------
def _as_sorted(E: FiniteModuleTable, F) -> np.ndarray:
    F = np.unique(np.asarray(F, dtype=np.int64))
    return F


def is_submodule(E: FiniteModuleTable, F) -> bool:
    F = _as_sorted(E, F)
    if len(F) == 0 or F[0] != 0:
        return False
    m = E.mask(F)
    return bool(m[E.act[:, F]].all() and m[E.add_pairs(F[:, None], F[None, :])].all())


def _require_submodule(E, F) -> np.ndarray:
    F = _as_sorted(E, F)
    if not is_submodule(E, F):
        raise NotASubmodule("subset is not a submodule")
    return F


def is_rd_submodule(E: FiniteModuleTable, F, check: bool = True) -> bool:
    """``rE & F == rF`` for every ring element ``r``."""
    F = _require_submodule(E, F) if check else np.asarray(F)
    acts = E.actions
    rE = np.zeros(acts.shape, dtype=bool)
    rows = np.arange(len(acts))[:, None]
    rE[rows, acts] = True
    rF = np.zeros(acts.shape, dtype=bool)
    rF[rows, acts[:, F]] = True
    Fm = E.mask(F)
    return bool(((rE & Fm) == rF).all())


# -- homomorphism search --------------------------------------------------------
def generating_set(M: FiniteModuleTable, start=None) -> list[int]:
    """Greedy generating set (largest cyclic submodules first) over ``start``."""
    S = np.array([0]) if start is None else np.asarray(start)
    inS = M.mask(S)
    out = []
    for x in M.generation_order:
        if len(S) == M.n:
            break
        if not inS[x]:
            S = M.sum_sets(S, M.cyclics[x])
            inS[S] = True
            out.append(int(x))
    return out


class _HomSearch:
    """Depth-first extension of partial homomorphisms ``M -> N``.

    A hom on a submodule ``S`` extends to ``S + Rg`` with ``g -> v`` exactly
    when ``r v = f(r g)`` for every ``r`` with ``r g`` in ``S``.  Only ring
    elements acting differently on ``M + N`` need to be tried.
    """

    def __init__(self, M: FiniteModuleTable, N: FiniteModuleTable):
        self.M, self.N = M, N
        if M is N:
            self.aM = self.aN = M.actions
        else:
            both = np.unique(np.hstack([M.act, N.act]), axis=0)
            self.aM, self.aN = both[:, :M.n], both[:, M.n:]

    def _sum(self, T, A, B):
        if T.n <= MAX_LATTICE:
            return T.add[np.ix_(A, B)] if A.ndim == 1 else T.add[A, B]
        return T.add_pairs(A[:, None], B[None, :]) if A.ndim == 1 else T.add_pairs(A, B)

    def candidates(self, g, img, mask=None) -> np.ndarray:
        rg = self.aM[:, g]
        inside = img[rg] >= 0
        ok = (self.aN[inside] == img[rg[inside]][:, None]).all(axis=0)
        if mask is not None:
            ok &= mask
        return np.nonzero(ok)[0]

    def extend_one(self, g, v, dom, img):
        rg, rv = self.aM[:, g], self.aN[:, v]
        new_dom = self._sum(self.M, dom, rg)
        new_img = self._sum(self.N, img[dom], rv)
        img2 = img.copy()
        img2[new_dom.ravel()] = new_img.ravel()
        return np.unique(new_dom), img2

    def extend(self, gens, dom, img, mask=None):
        if not gens:
            yield img
            return
        g, rest = gens[0], gens[1:]
        if img[g] >= 0:
            yield from self.extend(rest, dom, img, mask)
            return
        for v in self.candidates(g, img, mask):
            d2, i2 = self.extend_one(g, v, dom, img)
            yield from self.extend(rest, d2, i2, mask)


def _homs_from_zero(M, N, candidate_mask=None):
    img = np.full(M.n, -1, dtype=np.int64)
    img[0] = 0
    return _HomSearch(M, N).extend(generating_set(M), np.array([0]), img, candidate_mask)


@dataclass
class HomSpace:
    source: FiniteModuleTable
    target: FiniteModuleTable
    maps: list = field(default_factory=list)

    def __len__(self):
        return len(self.maps)

    def restrictions(self, sub) -> set:
        sub = np.asarray(sub)
        return {tuple(f[sub].tolist()) for f in self.maps}


def hom_space(M: FiniteModuleTable, N: FiniteModuleTable, limit: int = 1 << 20) -> HomSpace:
    if M.ring != N.ring:
        raise ValueError("modules over different rings")
    H = HomSpace(M, N)
    for f in _homs_from_zero(M, N):
        H.maps.append(f)
        if len(H.maps) > limit:
            raise TooLarge("hom space exceeds the enumeration limit")
    return H


def is_hom(M, N, f) -> bool:
    f = np.asarray(f)
    idx = np.arange(M.n)
    ok_add = (f[M.add_pairs(idx[:, None], idx[None, :])]
              == N.add_pairs(f[:, None], f[None, :])).all()
    return bool(ok_add and (f[M.act] == N.act[:, f]).all())


def is_pure_submodule(E: FiniteModuleTable, F) -> bool:
    """Split test: a retraction ``E -> F`` restricting to the identity on ``F``.

    For finite modules ``E/F`` is finitely presented, so purity and being a
    direct summand coincide.
    """
    F = _require_submodule(E, F)
    return retraction(E, F) is not None


def retraction(E: FiniteModuleTable, F):
    F = np.asarray(F)
    if len(F) == E.n:
        return np.arange(E.n)
    if len(F) == 1:
        return np.zeros(E.n, dtype=np.int64)
    img = np.full(E.n, -1, dtype=np.int64)
    img[F] = F
    search = _HomSearch(E, E)
    for f in search.extend(generating_set(E, start=F), F, img, mask=E.mask(F)):
        return f
    return None


def module_isomorphic(M: FiniteModuleTable, N: FiniteModuleTable) -> bool:
    if M.ring != N.ring or M.n != N.n:
        return False
    if M.fingerprint() != N.fingerprint():
        return False
    return isomorphism(M, N) is not None


def _in_multiples(M: FiniteModuleTable, acts) -> np.ndarray:
    """``out[r, x]``: ``x`` lies in ``rM``, for each action row ``r``."""
    out = np.zeros(acts.shape, dtype=bool)
    out[np.arange(len(acts))[:, None], acts] = True
    return out


def isomorphism(M, N):
    """A bijective hom ``M -> N`` or ``None``; images keep annihilators."""
    gens = generating_set(M)
    search = _HomSearch(M, N)
    # an isomorphism keeps annihilators and membership in every rM
    zeroN = N.act == 0
    inM, inN = _in_multiples(M, search.aM), _in_multiples(N, search.aN)
    img = np.full(M.n, -1, dtype=np.int64)
    img[0] = 0

    def rec(i, dom, img):
        if i == len(gens):
            if len(np.unique(img)) == N.n:
                yield img
            return
        g = gens[i]
        if img[g] >= 0:
            yield from rec(i + 1, dom, img)
            return
        mask = (zeroN == (M.act[:, g] == 0)[:, None]).all(axis=0)
        mask &= (inN == inM[:, g][:, None]).all(axis=0)
        for v in search.candidates(g, img, mask):
            d2, i2 = search.extend_one(g, v, dom, img)
            # stay injective and keep every element's position in the rM filtration
            if len(np.unique(i2[d2])) == len(d2) and (inM[:, d2] == inN[:, i2[d2]]).all():
                yield from rec(i + 1, d2, i2)

    return next(rec(0, np.array([0]), img), None)


# -- submodule lattices -----------------------------------------------------------
def enumerate_submodules(E: FiniteModuleTable, limit: int | None = None) -> list[np.ndarray]:
    """Every submodule exactly once, as sorted index arrays.

    Canonical augmentation: a submodule is reached along its greedy generator
    sequence ``g1 < g2 < ...`` where each ``g`` is the least element outside
    the span of the previous ones.
    """
    if E.n > MAX_LATTICE:
        raise TooLarge(f"submodule lattice of a module with {E.n} elements")
    A = E.add
    cyc = E.cyclics
    out: list[np.ndarray] = []
    stack = [(np.array([0]), 0)]
    while stack:
        S, last = stack.pop()
        out.append(S)
        if limit is not None and len(out) > limit:
            raise TooLarge("submodule lattice exceeds the enumeration limit")
        inS = E.mask(S)
        cand = np.arange(last + 1, E.n)
        cand = cand[~inS[cand]]
        if len(cand) == 0:
            continue
        # least new element of S + Rg for every candidate g at once
        rg = E.actions[:, cand]                      # (acts, cands)
        sums = A[S][:, rg]                           # (|S|, acts, cands)
        sums = np.where(inS[sums], E.n, sums)
        least = sums.min(axis=(0, 1))
        for g in cand[least == cand][::-1]:
            stack.append((np.unique(A[np.ix_(S, cyc[g])]), int(g)))
    return out


def all_submodules_of_free(ring: Ring, m: int) -> tuple[FiniteModuleTable, list]:
    F = FiniteModuleTable.free(ring, m)
    return F, enumerate_submodules(F)


# -- indecomposability, mu, simplicity ------------------------------------------------
def _ring_idempotent_split(E: FiniteModuleTable) -> bool:
    """Some central idempotent cuts ``E`` into two nonzero pieces."""
    T = E.ring.tables
    for f in local_factors(E.ring):
        e = T.index[f.idempotent]
        size = len(np.unique(E.act[e]))
        if 1 < size < E.n:
            return True
    return False


def is_indecomposable(E: FiniteModuleTable, method: str = "complement") -> bool:
    """``E`` nonzero and not a direct sum of two nonzero submodules.

    ``complement`` searches the submodule lattice for a complementary pair;
    ``idempotent`` enumerates the endomorphism ring for idempotents other
    than 0 and 1.
    """
    if E.n == 1:
        return False
    if method == "idempotent":
        idx = np.arange(E.n)
        for f in hom_space(E, E).maps:
            if (f[f] == f).all() and f.any() and not (f == idx).all():
                return False
        return True
    if _ring_idempotent_split(E):
        return False
    subs = [S for S in enumerate_submodules(E) if 1 < len(S) < E.n]
    by_size: dict = {}
    for S in subs:
        by_size.setdefault(len(S), []).append(S)
    for S in subs:
        if E.n % len(S):
            continue
        for B in by_size.get(E.n // len(S), []):
            if len(np.intersect1d(S, B, assume_unique=True)) == 1:
                return False
    return True


def is_simple(E: FiniteModuleTable) -> bool:
    """Nonzero, and every nonzero element generates ``E``."""
    if E.n == 1:
        return False
    return all(len(E.cyclic(x)) == E.n for x in range(1, E.n))


def radical_layers(E: FiniteModuleTable) -> list[tuple[int, int]]:
    """``(|R/P|, dim_{R/P} E/PE)`` for each maximal ideal ``P``."""
    out = []
    size_R = len(E.ring.tables.elements)
    for P in maximal_ideals(E.ring):
        PE = np.unique(E.act[list(P)])
        while True:
            bigger = E.sum_sets(PE, PE)
            if len(bigger) == len(PE):
                break
            PE = bigger
        k = size_R // len(P)
        ratio = E.n // len(PE)
        out.append((k, round(math.log(ratio, k)) if ratio > 1 else 0))
    return out


def mu_bruteforce(E: FiniteModuleTable) -> int:
    """Least ``k`` such that some ``k`` elements generate ``E``.

    ``max_P dim E/PE`` is a lower bound (any generating set spans each
    ``E/PE``); a depth-first search then looks for a generating set of each
    size from the bound upwards.
    """
    if E.n == 1:
        return 0
    lower = max(d for _, d in radical_layers(E))
    cyc = E.cyclics
    order = sorted(range(1, E.n), key=lambda x: (-len(cyc[x]), x))
    biggest = len(cyc[order[0]])

    def search(S, k, start) -> bool:
        if len(S) == E.n:
            return True
        if k == 0 or len(S) * biggest ** k < E.n:
            return False
        for pos in range(start, len(order)):
            x = order[pos]
            if E.contains(S, x):
                continue
            if search(E.sum_sets(S, cyc[x]), k - 1, pos + 1):
                return True
        return False

    k = max(lower, 1)
    while not search(np.array([0]), k, 0):
        k += 1
    return k


# -- RD/pure series on tables --------------------------------------------------------
def _factor_is_indecomposable(ring: Ring, ann: frozenset) -> bool:
    """Cyclic ``R/A`` is indecomposable iff exactly one maximal ideal contains ``A``."""
    return sum(1 for P in maximal_ideals(ring) if ann <= P) == 1


@dataclass
class SeriesSearch:
    """Memoized search over chains ``0 = M0 < M1 < ... < Mn = E`` of a table.

    Each stage is RD (or pure) in ``E`` and each factor is cyclic, optionally
    with a local annihilator.
    """

    E: FiniteModuleTable
    mode: str = "rd"
    indecomposable_only: bool = True

    def __post_init__(self):
        if self.mode not in ("rd", "pure"):
            raise ValueError("mode must be 'rd' or 'pure'")
        self._next: dict = {}
        self._outcomes: dict = {}
        self._stage_ok: dict = {}

    def _ok(self, S) -> bool:
        key = S.tobytes()
        if key not in self._stage_ok:
            test = is_rd_submodule if self.mode == "rd" else is_pure_submodule
            self._stage_ok[key] = test(self.E, S)
        return self._stage_ok[key]

    def steps(self, S: np.ndarray) -> list:
        """``(S', y, ann)`` for every admissible next stage."""
        key = S.tobytes()
        if key in self._next:
            return self._next[key]
        E, out, seen = self.E, [], set()
        inS = E.mask(S)
        for y in range(E.n):
            if inS[y]:
                continue
            S2 = E.sum_sets(S, E.cyclic(y))
            k2 = S2.tobytes()
            if k2 in seen:
                continue
            seen.add(k2)
            # the factor S2/S is generated by y; its annihilator is {r : ry in S}
            ann = frozenset(np.nonzero(inS[E.act[:, y]])[0].tolist())
            if self.indecomposable_only and not _factor_is_indecomposable(E.ring, ann):
                continue
            if self._ok(S2):
                out.append((S2, y, ann))
        self._next[key] = out
        return out

    def outcomes(self, S=None) -> dict:
        """Map from sorted factor-annihilator multisets to the number of chains."""
        S = np.array([0]) if S is None else S
        key = S.tobytes()
        if key in self._outcomes:
            return self._outcomes[key]
        if len(S) == self.E.n:
            res = {(): 1}
        else:
            res: dict = {}
            for S2, _, ann in self.steps(S):
                for tail, c in self.outcomes(S2).items():
                    ms = tuple(sorted((tuple(sorted(ann)),) + tail))
                    res[ms] = res.get(ms, 0) + c
        self._outcomes[key] = res
        return res

    def chains(self, S=None, prefix=()) -> Iterator[tuple]:
        """Yield complete chains as tuples of ``(generator, annihilator)`` steps."""
        S = np.array([0]) if S is None else S
        if len(S) == self.E.n:
            yield prefix
            return
        for S2, y, ann in self.steps(S):
            if self.outcomes(S2):
                yield from self.chains(S2, prefix + ((y, ann),))


def enumerate_rd_series(E: FiniteModuleTable, indecomposable_cyclic_only: bool = True,
                        mode: str = "rd") -> list:
    if E.n > MAX_LATTICE:
        raise TooLarge("series enumeration needs |E| <= 4096")
    return list(SeriesSearch(E, mode, indecomposable_cyclic_only).chains())


# -- von Neumann regular check -----------------------------------------------------------
@dataclass
class VnrReport:
    ring: str
    max_gens: int
    modules_checked: int = 0
    indecomposable: int = 0
    counterexamples: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.counterexamples


def vnr_indecomposable_simple_check(ring: Ring, max_gens: int = 3) -> VnrReport:
    """Every ``R^m / K`` (``m <= max_gens``, all submodules ``K``): indecomposable implies simple.

    Presentations with ``m`` generators and arbitrary relation columns give
    exactly the quotients of ``R^m`` by its submodules, so exhausting the
    submodule lattice of ``R^m`` exhausts every presentation.
    """
    from .finite_rings import nilpotents

    if not ring.finite:
        raise NotFinite("VNR check needs a finite ring")
    if len(nilpotents(ring)) > 1:
        raise NotVNR(f"{ring} has nonzero nilpotent elements")
    report = VnrReport(str(ring), max_gens)
    for m in range(1, max_gens + 1):
        F, subs = all_submodules_of_free(ring, m)
        for K in subs:
            Q = F.quotient(K)
            report.modules_checked += 1
            if is_indecomposable(Q):
                report.indecomposable += 1
                if not is_simple(Q):
                    report.counterexamples.append((m, K.tolist()))
    return report


def ideal_generator(ring: Ring, ideal: frozenset):
    """Normalized generator of a principal ideal given as a set of element indices."""
    T = ring.tables
    for a in sorted(ideal):
        if frozenset(np.unique(T.mul[a]).tolist()) == ideal:
            return ring.normalize(T.elements[a])
    raise UnsupportedRing("ideal is not principal")
