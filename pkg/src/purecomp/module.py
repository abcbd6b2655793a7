"""Finitely presented modules ``R^m / (column span of A)``.

Elements are stored in normal-form coordinates: a tuple with one entry per
non-unit invariant factor ``d_i``, reduced modulo ``d_i``.  Equality of
elements is tuple equality.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

from .decompose import Reduction, diagonal_reduce, matvec
from .ideals import IdealSet, PrincipalIdeal
from .rings import NotFinite, Ring


class DimensionMismatch(ValueError):
    pass


@dataclass(frozen=True)
class PresentationMatrix:
    """``ngens x nrels`` matrix; columns are relations among the generators."""

    ring: Ring
    entries: tuple
    ngens: int
    nrels: int

    @classmethod
    def from_rows(cls, ring: Ring, rows: Sequence[Sequence], nrels: int | None = None):
        rows = tuple(tuple(r) for r in rows)
        k = len(rows[0]) if rows else (nrels or 0)
        if any(len(r) != k for r in rows):
            raise DimensionMismatch("presentation rows have different lengths")
        return cls(ring, rows, len(rows), k)

    @classmethod
    def from_columns(cls, ring: Ring, ngens: int, cols: Sequence[Sequence]):
        cols = [tuple(c) for c in cols]
        if any(len(c) != ngens for c in cols):
            raise DimensionMismatch("relation column has the wrong length")
        rows = tuple(tuple(c[i] for c in cols) for i in range(ngens))
        return cls(ring, rows, ngens, len(cols))

    @classmethod
    def diagonal(cls, ring: Ring, ds: Sequence):
        n = len(ds)
        return cls.from_rows(ring, [[ds[i] if i == j else ring.zero for j in range(n)]
                                    for i in range(n)], nrels=n)

    def columns(self) -> list[tuple]:
        return [tuple(self.entries[i][j] for i in range(self.ngens)) for j in range(self.nrels)]

    def with_columns(self, extra: Sequence[Sequence]) -> "PresentationMatrix":
        return PresentationMatrix.from_columns(self.ring, self.ngens, self.columns() + list(extra))


@dataclass(frozen=True, eq=False)
class FpModule:
    presentation: PresentationMatrix
    reduction: Reduction = field(repr=False)
    kept: tuple = field(repr=False)            # indices of non-unit diagonal entries
    invariant_factors: tuple = ()              # normalized d_i with d_1 | d_2 | ...

    @property
    def ring(self) -> Ring:
        return self.presentation.ring

    @cached_property
    def normal_form(self) -> IdealSet:
        return IdealSet(PrincipalIdeal(self.ring, d) for d in self.invariant_factors)

    @property
    def free_rank(self) -> int:
        if self.ring.finite:
            return 0
        return sum(1 for d in self.invariant_factors if d == self.ring.zero)

    # -- element coordinates ------------------------------------------------
    @property
    def zero(self) -> tuple:
        return tuple(self.ring.zero for _ in self.kept)

    def reduce(self, x) -> tuple:
        R = self.ring
        if len(x) != len(self.kept):
            raise DimensionMismatch("element has the wrong number of coordinates")
        return tuple(R.reduce_mod(a, d) for a, d in zip(x, self.invariant_factors))

    def from_presentation(self, v) -> tuple:
        """Normal coordinates of the class of ``v`` in ``R^ngens``."""
        if len(v) != self.presentation.ngens:
            raise DimensionMismatch("vector length differs from generator count")
        w = matvec(self.ring, self.reduction.U, v)
        return self.reduce(tuple(w[i] for i in self.kept))

    def to_presentation(self, x) -> tuple:
        full = [self.ring.zero] * self.presentation.ngens
        for i, a in zip(self.kept, x):
            full[i] = a
        return tuple(matvec(self.ring, self.reduction.Uinv, full))

    def generator(self, i: int) -> tuple:
        """Image of the ``i``-th presentation generator."""
        e = [self.ring.zero] * self.presentation.ngens
        e[i] = self.ring.one
        return self.from_presentation(e)

    def add(self, x, y) -> tuple:
        return self.reduce(tuple(self.ring.add(a, b) for a, b in zip(x, y)))

    def neg(self, x) -> tuple:
        return self.reduce(tuple(self.ring.neg(a) for a in x))

    def scale(self, r, x) -> tuple:
        return self.reduce(tuple(self.ring.mul(r, a) for a in x))

    # -- structure ------------------------------------------------------------
    def annihilator(self) -> PrincipalIdeal:
        """``{r : rM = 0}``: the ideal of the last invariant factor."""
        if not self.invariant_factors:
            return PrincipalIdeal.unit(self.ring)
        return PrincipalIdeal.of(self.ring, self.invariant_factors[-1])

    @property
    def is_zero(self) -> bool:
        return not self.invariant_factors

    def size(self):
        """``|M|`` or ``None`` when infinite."""
        out = 1
        for d in self.invariant_factors:
            s = self.ring.quotient_size(d)
            if s is None:
                return None
            out *= s
        return out

    def elements(self):
        if not self.ring.finite:
            raise NotFinite("elements of a module over an infinite ring")
        return list(itertools.product(*(self.ring.residues(d) for d in self.invariant_factors)))

    def submodule(self, gens) -> "Submodule":
        return Submodule(self, tuple(self.reduce(tuple(g)) for g in gens))

    def quotient(self, N: "Submodule") -> "FpModule":
        if N.ambient is not self:
            raise DimensionMismatch("submodule of a different module")
        return build_module(self.presentation.with_columns(
            [self.to_presentation(g) for g in N.generators]))

    def to_table(self):
        from .oracle import FiniteModuleTable

        return FiniteModuleTable.from_cyclics(self.ring, self.invariant_factors)

    def as_json(self) -> dict:
        R = self.ring
        return {
            "ring": R.descriptor(),
            "invariant_factors": [R.format(d) for d in self.invariant_factors
                                  if R.finite or d != R.zero],
            "free_rank": self.free_rank,
        }

    def __repr__(self):
        return f"FpModule({self.ring}, {self.normal_form})"


def build_module(p: PresentationMatrix) -> FpModule:
    R = p.ring
    red = diagonal_reduce(R, [list(r) for r in p.entries], ncols=p.nrels)
    diag = red.diagonal
    ds = [diag[i] if i < len(diag) else R.zero for i in range(p.ngens)]
    kept = tuple(i for i, d in enumerate(ds) if not R.is_unit(d))
    return FpModule(p, red, kept, tuple(R.normalize(ds[i]) for i in kept))


def cyclic_sum(ring: Ring, gens: Sequence) -> FpModule:
    """``R/(g1) + R/(g2) + ...`` from a diagonal presentation."""
    return build_module(PresentationMatrix.diagonal(ring, list(gens)))


def annihilator(M: FpModule) -> PrincipalIdeal:
    return M.annihilator()


def quotient(M: FpModule, N: "Submodule") -> FpModule:
    return M.quotient(N)


def submodule_generated(M: FpModule, vectors) -> "Submodule":
    return M.submodule(vectors)


@dataclass(frozen=True, eq=False)
class Submodule:
    ambient: FpModule
    generators: tuple

    @cached_property
    def _quotient(self) -> FpModule:
        return self.ambient.quotient(self)

    def __contains__(self, x) -> bool:
        """Membership: ``x`` maps to zero in ``ambient / self``."""
        Q = self._quotient
        return Q.from_presentation(self.ambient.to_presentation(x)) == Q.zero

    def elements(self) -> list:
        return [x for x in self.ambient.elements() if x in self]
