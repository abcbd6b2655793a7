"""Exhaustive property sweeps over all small modules of a finite ring.

Each ``check_*`` function returns a :class:`PropertyResult`; the CLI's
``verify`` command and the acceptance tests both run them.
"""

from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .decompose import (canonical_form, diagonal_reduce, indecomposable_refine, is_divisibility_chain,
                        matmul, identity, mu, peel_pure_generator)
from .goldie import goldie_bruteforce, goldie_structural
from .ideals import PrincipalIdeal, radical
from .module import FpModule, PresentationMatrix, build_module, cyclic_sum
from .oracle import (MAX_ELEMENTS, FiniteModuleTable, enumerate_submodules, ideal_generator, is_pure_submodule,
                     is_rd_submodule, module_isomorphic, mu_bruteforce)
from .rings import Integers, PolynomialQuotient, ProductRing, Ring, TableRing, UnsupportedRing
from .series import (CaseEUnreachable, SeriesSearch, g_of_series, goldie_of_cyclic, h_of_module,
                     normalize_series, random_series, sequence_predicates, series_isomorphic,
                     series_outcomes)


@dataclass
class PropertyResult:
    name: str
    checked: int = 0
    failures: list = field(default_factory=list)
    seconds: float = 0.0
    details: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.failures and self.checked > 0

    def fail(self, what) -> None:
        if len(self.failures) < 20:
            self.failures.append(what)
        else:
            self.details["more_failures"] = self.details.get("more_failures", 0) + 1

    def as_json(self) -> dict:
        out = {"property": self.name, "ok": self.ok, "checked": self.checked,
               "failures": [str(f) for f in self.failures], "seconds": round(self.seconds, 3)}
        out.update(self.details)
        return out


class _timed:
    def __init__(self, result: PropertyResult):
        self.r = result

    def __enter__(self):
        self.t = time.perf_counter()
        return self.r

    def __exit__(self, *exc):
        self.r.seconds += time.perf_counter() - self.t
        return False


# -- the sweep -------------------------------------------------------------------
def ideal_generators(ring: Ring) -> list:
    """Normalized generators of the proper ideals of a finite ring."""
    gens = {ring.normalize(a) for a in ring.elements()}
    return sorted((g for g in gens if not ring.is_unit(g)), key=ring.sort_key)


def modules_up_to(ring: Ring, max_size: int) -> list[FpModule]:
    """One module per isomorphism class with ``|M| <= max_size``.

    Over the supported rings every finite module is ``R/I1 + ... + R/In`` with
    ``I1 <= ... <= In`` proper, and the chain is unique, so listing chains
    lists isomorphism classes.
    """
    if isinstance(ring, TableRing) or not ring.finite:
        raise UnsupportedRing("module sweeps need a finite ring with diagonal reduction")
    ideals = [(g, PrincipalIdeal.of(ring, g), ring.quotient_size(g)) for g in ideal_generators(ring)]
    out = []

    def rec(chain, size, last):
        if chain:
            out.append(cyclic_sum(ring, [g for g, _, _ in reversed(chain)]))
        for g, I, s in ideals:
            if size * s <= max_size and (last is None or last[1] <= I):
                rec(chain + [(g, I, s)], size * s, (g, I, s))

    rec([], 1, None)
    out.sort(key=lambda M: (M.size(), [ring.sort_key(d) for d in M.invariant_factors]))
    return out


def random_element(ring: Ring, rng: random.Random, bound: int = 50, degree: int = 4):
    if isinstance(ring, ProductRing):
        return tuple(random_element(f, rng, bound, degree) for f in ring.factors)
    if isinstance(ring, Integers):
        return rng.randint(-bound, bound)
    if isinstance(ring, PolynomialQuotient) and not ring.modulus:
        from . import poly as P

        return P.trim([rng.randrange(ring.p) for _ in range(rng.randint(0, degree + 1))])
    return rng.choice(ring.elements())


def random_unimodular(ring: Ring, n: int, rng: random.Random, steps: int = 12) -> list:
    """Product of random elementary transvections and swaps."""
    U = identity(ring, n)
    if n < 2:
        return U
    for _ in range(steps):
        i, j = rng.sample(range(n), 2)
        if rng.random() < 0.2:
            U[i], U[j] = U[j], U[i]
        else:
            c = random_element(ring, rng, 5, 2)
            U[i] = [ring.add(a, ring.mul(c, b)) for a, b in zip(U[i], U[j])]
    return U


def scrambled_presentation(M: FpModule, rng: random.Random) -> PresentationMatrix:
    """``U * diag(d) * V`` for random unimodular ``U``, ``V``, plus a zero column."""
    R = M.ring
    n = len(M.invariant_factors)
    D = [[M.invariant_factors[i] if i == j else R.zero for j in range(n + 1)] for i in range(n)]
    A = matmul(R, matmul(R, random_unimodular(R, n, rng), D), random_unimodular(R, n + 1, rng))
    return PresentationMatrix.from_rows(R, A, nrels=n + 1)


# -- determinantal divisors (sympy oracle) -----------------------------------------------
def _sympy_divisors(entries, k, gcd, minor_det):
    import itertools

    m, n = len(entries), len(entries[0]) if entries else 0
    g = 0
    for rows in itertools.combinations(range(m), k):
        for cols in itertools.combinations(range(n), k):
            g = gcd(g, minor_det(rows, cols))
    return g


def determinantal_divisors(ring: Ring, A) -> list:
    """``gcd`` of all ``k x k`` minors for ``k = 1..min(m, n)``, computed with sympy."""
    import sympy

    m, n = len(A), len(A[0]) if A else 0
    if isinstance(ring, Integers):
        Ms = sympy.Matrix(A)
        det = lambda r, c: int(Ms.extract(list(r), list(c)).det())
        return [abs(_sympy_divisors(A, k, math.gcd, det)) for k in range(1, min(m, n) + 1)]
    if isinstance(ring, PolynomialQuotient) and not ring.modulus:
        from sympy.polys.matrices import DomainMatrix

        t = sympy.Symbol("t")
        K = sympy.GF(ring.p)[t]
        conv = lambda f: K.from_sympy(sum(int(c) * t ** i for i, c in enumerate(f)))
        Ms = DomainMatrix([[conv(a) for a in row] for row in A], (m, n), K)
        det = lambda r, c: Ms.extract(list(r), list(c)).det()
        gcd = lambda a, b: b if K.is_zero(a) else K.gcd(a, b)
        out = []
        for k in range(1, min(m, n) + 1):
            d = _sympy_divisors(A, k, gcd, det)
            if K.is_zero(d):
                out.append(())
                continue
            coeffs = sympy.Poly(K.to_sympy(d), t, modulus=ring.p).monic().all_coeffs()
            out.append(tuple(int(c) % ring.p for c in reversed(coeffs)))
        return out
    raise UnsupportedRing("determinantal divisors are only computed over Z and GF(p)[t]")


def check_reduction(ring: Ring, A) -> list[str]:
    """Problems with ``diagonal_reduce(A)``: identity, chain, invertibility, minors."""
    red = diagonal_reduce(ring, A)
    m, n = len(A), len(A[0])
    problems = []
    if matmul(ring, matmul(ring, red.U, A), red.V) != red.D:
        problems.append("U*A*V != D")
    if any(red.D[i][j] != ring.zero for i in range(m) for j in range(n) if i != j):
        problems.append("D is not diagonal")
    if matmul(ring, red.U, red.Uinv) != identity(ring, m):
        problems.append("U is not invertible")
    d = red.diagonal
    if not is_divisibility_chain(ring, d):
        problems.append("diagonal is not a divisibility chain")
    dets = determinantal_divisors(ring, A)
    prod = ring.one
    for k, dk in enumerate(dets):
        prod = ring.mul(prod, d[k])
        if ring.normalize(prod) != ring.normalize(dk):
            problems.append(f"product of first {k + 1} diagonal entries differs from the minor gcd")
    # V invertible iff its determinant is a unit: the last determinantal divisor of V is 1
    if not ring.is_unit(determinantal_divisors(ring, red.V)[-1]):
        problems.append("V is not invertible")
    return problems


# -- criterion-style checks -------------------------------------------------------------
def check_canonical_invariance(modules, rng: random.Random, trials: int = 50) -> PropertyResult:
    res = PropertyResult("canonical_form_invariance")
    with _timed(res):
        for M in modules:
            cf = canonical_form(M)
            for _ in range(trials):
                N = build_module(scrambled_presentation(M, rng))
                res.checked += 1
                if canonical_form(N) != cf:
                    res.fail((str(M), str(canonical_form(N))))
    return res


def check_series_uniqueness(ring: Ring, modules) -> tuple[PropertyResult, PropertyResult]:
    """Same factor multiset (hence length) and same prime multiset over all series."""
    main = PropertyResult("series_factor_uniqueness")
    primes = PropertyResult("series_prime_invariance")
    total = 0
    with _timed(main):
        for M in modules:
            out = series_outcomes(M, "rd")
            total += out.total
            main.checked += 1
            primes.checked += 1
            if not out.counts or not out.unique or len(out.lengths) != 1:
                main.fail((str(M), sorted(out.counts)))
            if len(out.prime_multisets()) != 1:
                primes.fail((str(M), sorted(out.prime_multisets())))
    main.details["series_counted"] = total
    primes.details["series_counted"] = total
    return main, primes


def peel_series(M: FpModule):
    """Iterate the pure-generator peel; return generators as coordinates of ``M``."""
    gens, cur = [], M
    while not cur.is_zero:
        x, nxt = peel_pure_generator(cur)
        gens.append(M.from_presentation(cur.to_presentation(x)))
        cur = nxt
    return gens


def check_peeling(modules) -> PropertyResult:
    res = PropertyResult("peeled_series_pure_increasing_length_mu")
    with _timed(res):
        for M in modules:
            res.checked += 1
            T = M.to_table()
            gens = peel_series(M)
            S, anns, ok = np.array([0]), [], True
            for x in gens:
                g = T.index_of(x)
                inS = T.mask(S)
                anns.append(PrincipalIdeal(M.ring, ideal_generator(
                    M.ring, frozenset(np.nonzero(inS[T.act[:, g]])[0].tolist()))))
                S = T.sum_sets(S, T.cyclic(g))
                ok &= is_pure_submodule(T, S)
            ok &= len(S) == T.n
            ok &= sequence_predicates(anns).increasing
            ok &= len(gens) == mu(M) == mu_bruteforce(T)
            if not ok:
                res.fail(str(M))
    return res


def check_goldie(ring: Ring, modules, rng: random.Random, h_bound: int = 128) -> PropertyResult:
    res = PropertyResult("goldie_and_length_bounds")
    counts = {"g_eq_bruteforce": 0, "g_le_ell": 0, "g_eq_ell_and_cyclic_sum": 0,
              "mu_le_ell_le_h": 0, "g_le_h": 0, "indecomposable_cyclic_g1": 0, "scrambled_iso_checked": 0}
    with _timed(res):
        for g in ideal_generators(ring):
            I = PrincipalIdeal.of(ring, g)
            for q, _ in ring.primary_components(g):
                N = cyclic_sum(ring, [q])
                counts["indecomposable_cyclic_g1"] += 1
                if goldie_bruteforce(N.to_table()).dimension != 1 or goldie_structural(N) != 1:
                    res.fail(("g(N) != 1", str(N)))
        for M in modules:
            res.checked += 1
            T = M.to_table()
            g = goldie_structural(M)
            if g != goldie_bruteforce(T).dimension:
                res.fail(("structural != bruteforce", str(M)))
            counts["g_eq_bruteforce"] += 1
            out = series_outcomes(M, "rd")
            (ell,) = out.lengths
            if not g <= ell:
                res.fail(("g > ell", str(M)))
            counts["g_le_ell"] += 1
            # cyclic decomposability from a scrambled presentation, by table isomorphism
            e = M.annihilator().generator
            p = scrambled_presentation(M, rng)
            decomposes = None
            if ring.quotient_size(e) ** p.ngens <= MAX_ELEMENTS:
                E = FiniteModuleTable.from_presentation(ring, p.ngens, p.columns(), exponent=e)
                parts = [I.generator for I in indecomposable_refine(canonical_form(M)).factors]
                decomposes = module_isomorphic(E, FiniteModuleTable.from_cyclics(ring, parts))
                counts["scrambled_iso_checked"] += 1
            if g != ell or decomposes is False:
                res.fail(("g == ell and cyclic sum fail together", str(M), g, ell, decomposes))
            counts["g_eq_ell_and_cyclic_sum"] += 1
            if T.n <= h_bound:
                h = h_of_module(M)
                if not (mu(M) <= ell <= h and g <= h):
                    res.fail(("mu <= ell <= h, g <= h", str(M), mu(M), ell, h, g))
                counts["mu_le_ell_le_h"] += 1
                counts["g_le_h"] += 1
    res.details.update(counts)
    return res


def _structure_key(E: FiniteModuleTable) -> tuple:
    # both tests only see the addition table and the set of distinct action maps,
    # so modules over different rings with the same data share one result
    return (E.n, E.add.tobytes(), E.actions.tobytes())


_warfield_memo: dict = {}


def warfield_module(E: FiniteModuleTable) -> tuple[int, int]:
    """``(pairs, disagreements)`` of RD versus pure over all submodules of ``E``.

    Results are memoized on the element-level data (addition table and the set
    of distinct action maps), which is all either test looks at.
    """
    key = _structure_key(E)
    if key not in _warfield_memo:
        bad = 0
        subs = enumerate_submodules(E)
        for F in subs:
            if is_rd_submodule(E, F, check=False) != is_pure_submodule(E, F):
                bad += 1
        _warfield_memo[key] = (len(subs), bad)
    return _warfield_memo[key]


def check_warfield(ring: Ring, modules) -> PropertyResult:
    res = PropertyResult("rd_iff_pure")
    pairs = 0
    with _timed(res):
        for M in modules:
            n, bad = warfield_module(M.to_table())
            res.checked += 1
            pairs += n
            if bad:
                res.fail((str(M), bad))
    res.details["pairs"] = pairs
    return res


def check_normalization(modules, rng: random.Random, count: int = 100,
                        disordered_only: bool = False, max_draws: int = 100_000) -> PropertyResult:
    """Normalize ``count`` random-walk series.

    With ``disordered_only`` a drawn series is kept only when its annihilator
    sequence is not already almost increasing, so every kept input needs at
    least one exchange.
    """
    res = PropertyResult("normalize_series")
    pool = [M for M in modules if len(indecomposable_refine(canonical_form(M)).factors) >= 2]
    cases: dict = {}
    shuffled = draws = 0
    with _timed(res):
        while res.checked < count and draws < max_draws:
            M = pool[rng.randrange(len(pool))]
            s = random_series(M, rng)
            draws += 1
            disordered = not s.predicates().almost_increasing
            if disordered_only and not disordered:
                continue
            res.checked += 1
            shuffled += disordered
            try:
                t = normalize_series(s)
            except CaseEUnreachable as e:
                res.fail(("case e", str(M), str(e)))
                continue
            for c in t.trace:
                cases[c] = cases.get(c, 0) + 1
            if not (t.predicates().almost_increasing and series_isomorphic(s, t) and not t.check()):
                res.fail((str(M), str(s.annihilators), str(t.annihilators)))
    if res.checked < count:
        res.fail(f"only {res.checked} usable series in {draws} draws")
    res.details["cases"] = dict(sorted(cases.items()))
    res.details["input_not_almost_increasing"] = shuffled
    res.details["draws"] = draws
    return res


def check_mu(modules) -> PropertyResult:
    res = PropertyResult("mu_structural_equals_bruteforce")
    with _timed(res):
        for M in modules:
            res.checked += 1
            if mu(M) != mu_bruteforce(M.to_table()):
                res.fail(str(M))
    return res


def run_suite(ring: Ring, max_size: int, seed: int = 0, h_bound: int = 128,
              warfield: bool = True) -> list[PropertyResult]:
    rng = random.Random(seed)
    modules = modules_up_to(ring, max_size)
    out = [check_canonical_invariance(modules, rng, trials=5)]
    out.extend(check_series_uniqueness(ring, modules))
    out.append(check_peeling(modules))
    out.append(check_mu(modules))
    out.append(check_goldie(ring, modules, rng, h_bound))
    if warfield:
        out.append(check_warfield(ring, modules))
    out.append(check_normalization(modules, rng, count=20))
    return out
