"""Diagonal reduction, canonical forms, indecomposable refinement and peeling.

Reduction runs a Euclidean engine over ``Z`` or ``GF(p)[t]``.  Quotients
``Z/n`` and ``GF(p)[t]/(f)`` are lifted to their cover, reduced there and
projected back; products are reduced componentwise.  Unit normalization of
the diagonal happens last, so the transforms stay exactly invertible.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING

from .ideals import IdealSet, PrincipalIdeal
from .rings import NotFinite, ProductRing, Ring, TableRing, UnsupportedRing

if TYPE_CHECKING:  # pragma: no cover
    from .module import FpModule

Matrix = list  # list of rows, each a list of payloads


# -- small matrix helpers ----------------------------------------------------
def identity(ring: Ring, n: int) -> Matrix:
    return [[ring.one if i == j else ring.zero for j in range(n)] for i in range(n)]


def zeros(ring: Ring, m: int, k: int) -> Matrix:
    return [[ring.zero] * k for _ in range(m)]


def matmul(ring: Ring, A: Matrix, B: Matrix, inner: int | None = None) -> Matrix:
    if inner is None:
        inner = len(B)
    cols = len(B[0]) if B else 0
    return [[ring.sum(ring.mul(A[i][t], B[t][j]) for t in range(inner)) for j in range(cols)]
            for i in range(len(A))]


def matvec(ring: Ring, A: Matrix, x) -> list:
    return [ring.sum(ring.mul(a, b) for a, b in zip(row, x)) for row in A]


def diagonal(D: Matrix) -> list:
    return [D[i][i] for i in range(min(len(D), len(D[0]) if D else 0))]


@dataclass(frozen=True)
class Reduction:
    """``U * A * V == D`` with ``D`` diagonal, ``U * Uinv == I``."""

    ring: Ring
    U: Matrix
    D: Matrix
    V: Matrix
    Uinv: Matrix

    @property
    def diagonal(self) -> list:
        return diagonal(self.D)


# -- Euclidean engine --------------------------------------------------------
class _Work:
    def __init__(self, R: Ring, A: Matrix, m: int, k: int):
        self.R, self.m, self.k = R, m, k
        self.A = [list(r) for r in A]
        self.U = identity(R, m)
        self.Uinv = identity(R, m)
        self.V = identity(R, k)

    # row_i <- row_i + c * row_t
    def row_addmul(self, i, t, c):
        R = self.R
        for M in (self.A, self.U):
            M[i] = [R.add(a, R.mul(c, b)) for a, b in zip(M[i], M[t])]
        for row in self.Uinv:  # column t <- column t - c * column i
            row[t] = R.sub(row[t], R.mul(c, row[i]))

    def col_addmul(self, j, t, c):
        R = self.R
        for M in (self.A, self.V):
            for row in M:
                row[j] = R.add(row[j], R.mul(c, row[t]))

    def swap_rows(self, i, t):
        if i == t:
            return
        for M in (self.A, self.U):
            M[i], M[t] = M[t], M[i]
        for row in self.Uinv:
            row[i], row[t] = row[t], row[i]

    def swap_cols(self, j, t):
        if j == t:
            return
        for M in (self.A, self.V):
            for row in M:
                row[j], row[t] = row[t], row[j]

    def scale_row(self, t, u, uinv):
        R = self.R
        for M in (self.A, self.U):
            M[t] = [R.mul(u, a) for a in M[t]]
        for row in self.Uinv:
            row[t] = R.mul(row[t], uinv)


def _pivot(w: _Work, t: int):
    R, best = w.R, None
    for i in range(t, w.m):
        for j in range(t, w.k):
            a = w.A[i][j]
            if a != R.zero and (best is None or R.norm(a) < best[0]):
                best = (R.norm(a), i, j)
    return best


def _euclid_reduce(R: Ring, A: Matrix, m: int, k: int) -> _Work:
    w = _Work(R, A, m, k)
    for t in range(min(m, k)):
        while True:
            piv = _pivot(w, t)
            if piv is None:
                return w
            _, i, j = piv
            w.swap_rows(i, t)
            w.swap_cols(j, t)
            p = w.A[t][t]
            clean = True
            for i in range(t + 1, m):
                if w.A[i][t] != R.zero:
                    q, r = R.divmod(w.A[i][t], p)
                    w.row_addmul(i, t, R.neg(q))
                    clean &= r == R.zero
            for j in range(t + 1, k):
                if w.A[t][j] != R.zero:
                    q, r = R.divmod(w.A[t][j], p)
                    w.col_addmul(j, t, R.neg(q))
                    clean &= r == R.zero
            if not clean:
                continue
            bad = next((i for i in range(t + 1, m) for j in range(t + 1, k)
                        if R.divmod(w.A[i][j], p)[1] != R.zero), None)
            if bad is None:
                break
            w.row_addmul(t, bad, R.one)
    return w


def _normalize_diagonal(R: Ring, w: _Work) -> None:
    for t in range(min(w.m, w.k)):
        d = w.A[t][t]
        u = R.normalizing_unit(d)
        if u != R.one:
            w.scale_row(t, u, R.unit_inverse(u))


def _reduce_single(ring: Ring, A: Matrix, m: int, k: int) -> Reduction:
    if isinstance(ring, TableRing) or not hasattr(ring, "cover"):
        raise UnsupportedRing(f"diagonal reduction is not available over {ring}")
    cover = ring.cover
    lifted = [[ring.lift(a) for a in row] for row in A]
    w = _euclid_reduce(cover, lifted, m, k)
    if cover is not ring:
        proj = lambda M: [[ring.project(a) for a in row] for row in M]
        w.R = ring
        w.A, w.U, w.Uinv, w.V = proj(w.A), proj(w.U), proj(w.Uinv), proj(w.V)
    _normalize_diagonal(ring, w)
    return Reduction(ring, w.U, w.A, w.V, w.Uinv)


def _reduce_product(ring: ProductRing, A: Matrix, m: int, k: int) -> Reduction:
    parts = []
    for c, f in enumerate(ring.factors):
        Ac = [[a[c] for a in row] for row in A]
        parts.append(_reduce(f, Ac, m, k))
    glue = lambda name, r, s: [[tuple(getattr(p, name)[i][j] for p in parts) for j in range(s)]
                               for i in range(r)]
    return Reduction(ring, glue("U", m, m), glue("D", m, k), glue("V", k, k), glue("Uinv", m, m))


def _reduce(ring: Ring, A: Matrix, m: int, k: int) -> Reduction:
    if isinstance(ring, ProductRing):
        return _reduce_product(ring, A, m, k)
    return _reduce_single(ring, A, m, k)


def diagonal_reduce(ring: Ring, A: Matrix, ncols: int | None = None) -> Reduction:
    """Diagonal reduction ``U*A*V = D`` with ``d1 | d2 | ...``.

    ``A`` is a list of rows; ``ncols`` is only needed when ``A`` has no rows.
    """
    m = len(A)
    k = len(A[0]) if m else (ncols or 0)
    if any(len(row) != k for row in A):
        raise ValueError("ragged matrix")
    return _reduce(ring, A, m, k)


def is_divisibility_chain(ring: Ring, ds) -> bool:
    return all(ring.divides(a, b) for a, b in zip(ds, ds[1:]))


# -- canonical form ----------------------------------------------------------
@dataclass(frozen=True)
class CanonicalForm:
    """``R/I1 + ... + R/In`` with ``I1 <= I2 <= ... <= In``, no unit ideals."""

    ideals: IdealSet

    def __post_init__(self):
        for a, b in zip(self.ideals, self.ideals[1:]):
            if not a <= b:
                raise ValueError("canonical form ideals are not a chain")
        if any(I.is_whole_ring for I in self.ideals):
            raise ValueError("canonical form contains the unit ideal")

    def __len__(self) -> int:
        return len(self.ideals)

    def __iter__(self):
        return iter(self.ideals)

    def generators(self) -> tuple:
        return tuple(I.generator for I in self.ideals)

    def __str__(self):
        return str(self.ideals)


def canonical_form(M: "FpModule") -> CanonicalForm:
    return CanonicalForm(IdealSet(reversed(M.normal_form)))


@dataclass(frozen=True)
class IndecomposableDecomposition:
    factors: IdealSet

    def __str__(self):
        return str(self.factors)


def _component_key(I: PrincipalIdeal):
    from .ideals import radical

    size = I.quotient_size()
    return (radical(I).sort_key(), -(size if size is not None else float("inf")), I.sort_key())


def indecomposable_refine(cf: CanonicalForm) -> IndecomposableDecomposition:
    """Split each ``R/I`` into pairwise comaximal primary parts (CRT)."""
    out = []
    for I in cf.ideals:
        ring = I.ring
        if isinstance(ring, TableRing):
            raise UnsupportedRing("indecomposable refinement is not available for table rings")
        for q, _ in ring.primary_components(I.generator):
            out.append(PrincipalIdeal.of(ring, q))
    out.sort(key=_component_key)
    return IndecomposableDecomposition(IdealSet(out))


def mu(M: "FpModule") -> int:
    """Minimal number of generators: length of the canonical chain."""
    return len(canonical_form(M))


# -- pure generator peeling --------------------------------------------------
def _local_idempotents(ring: Ring) -> list[tuple]:
    """``(q, e)`` for each primary component ``q`` of the zero ideal, ``e`` its CRT idempotent."""
    out = []
    for q, c in ring.primary_components(ring.zero):
        _, _, v = ring.gcdex(q, c)
        out.append((q, ring.mul(v, c)))
    return out


def _crt_generator(M: "FpModule") -> tuple:
    """Local pure generators glued with the CRT idempotents."""
    ring, ds = M.ring, M.invariant_factors
    x = [ring.zero] * len(ds)
    for q, e in _local_idempotents(ring):
        local = [PrincipalIdeal.of(ring, ring.gcdex(d, q)[0]) for d in ds]
        smallest = local[-1]
        if smallest.is_whole_ring:
            continue
        i = next(i for i, I in enumerate(local) if I == smallest)
        x[i] = ring.add(x[i], e)
    return M.reduce(tuple(x))


def _is_peel_generator(M: "FpModule", T, x, ann_size: int, target_mu: int) -> bool:
    from .oracle import is_pure_submodule

    C = T.cyclic(T.index_of(x))
    if len(C) != ann_size:            # |Rx| = |R/ann(x)|, and ann(x) contains ann(M)
        return False
    if mu(M.quotient(M.submodule([x]))) != target_mu:
        return False
    return is_pure_submodule(T, C)


def peel_pure_generator(M: "FpModule", tie_break: str = "lex"):
    """Return ``(x, M/Rx)`` with ``Rx`` pure, ``ann(x) = ann(M)``, ``mu`` dropping by one.

    The construction picks, in each local factor, the first normal-form basis
    vector whose local annihilator is the smallest one, and glues the local
    choices with the CRT idempotents.  With ``tie_break="lex"`` the returned
    ``x`` is the lexicographically least element (normal-form coordinates,
    residues in increasing order) meeting the three conditions; the scan
    stops at the constructed element at the latest.  ``tie_break="crt"``
    returns the constructed element itself.
    """
    ring = M.ring
    if not ring.finite:
        raise NotFinite("peeling needs a finite arithmetic ring")
    if isinstance(ring, TableRing):
        raise UnsupportedRing("peeling is not available for table rings")
    if not M.invariant_factors:
        raise ValueError("zero module")
    x = _crt_generator(M)
    if tie_break == "lex":
        T = M.to_table()
        ann_size = ring.quotient_size(M.annihilator().generator)
        target = mu(M) - 1
        for y in M.elements():
            if y == x or _is_peel_generator(M, T, y, ann_size, target):
                x = y
                break
    elif tie_break != "crt":
        raise ValueError("tie_break must be 'lex' or 'crt'")
    return x, M.quotient(M.submodule([x]))
