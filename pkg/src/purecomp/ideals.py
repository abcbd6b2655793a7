"""Principal ideals of Bezout ring instances.

An ideal is stored as a single normalized generator, so two ideals over the
same ring are equal exactly when their generators are equal.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Any, Iterable, Sequence

from .rings import Ring, TableRing, UnsupportedRing


def _check_bezout(ring: Ring) -> None:
    if isinstance(ring, TableRing) and not ring.is_bezout:
        raise UnsupportedRing(f"{ring} is not a Bezout ring")


@dataclass(frozen=True)
class PrincipalIdeal:
    ring: Ring
    generator: Any

    @classmethod
    def of(cls, ring: Ring, a) -> "PrincipalIdeal":
        return cls(ring, ring.normalize(a))

    @classmethod
    def unit(cls, ring: Ring) -> "PrincipalIdeal":
        return cls.of(ring, ring.one)

    @classmethod
    def zero_ideal(cls, ring: Ring) -> "PrincipalIdeal":
        return cls(ring, ring.zero)

    @property
    def is_whole_ring(self) -> bool:
        return self.ring.is_unit(self.generator)

    @property
    def is_zero(self) -> bool:
        return self.generator == self.ring.zero

    def __contains__(self, x) -> bool:
        return self.ring.contains(self.generator, x)

    def __le__(self, other: "PrincipalIdeal") -> bool:
        """Inclusion ``self <= other``."""
        return self.ring.contains(other.generator, self.generator)

    def __lt__(self, other: "PrincipalIdeal") -> bool:
        return self <= other and self != other

    def __add__(self, other: "PrincipalIdeal") -> "PrincipalIdeal":
        return ideal_sum(self, other)

    def __and__(self, other: "PrincipalIdeal") -> "PrincipalIdeal":
        return ideal_intersect(self, other)

    def quotient_size(self):
        return self.ring.quotient_size(self.generator)

    def sort_key(self):
        return self.ring.sort_key(self.generator)

    def __str__(self) -> str:
        return f"({self.ring.format(self.generator)})"

    __repr__ = __str__


class IdealSet(tuple):
    """Order-preserving sequence of ideals over a common ring; repeats allowed."""

    def __new__(cls, ideals: Iterable[PrincipalIdeal] = ()):
        ideals = tuple(ideals)
        if len({I.ring for I in ideals}) > 1:
            raise ValueError("ideals must share a ring")
        return super().__new__(cls, ideals)

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self)) + ")"

    def multiset(self) -> tuple:
        return tuple(sorted(self, key=lambda I: (I.sort_key(), str(I))))


class Verdict(enum.Enum):
    EQUAL = "Equal"
    FIRST_INSIDE_SECOND = "FirstInsideSecond"
    SECOND_INSIDE_FIRST = "SecondInsideFirst"
    COMAXIMAL = "Comaximal"
    INCOMPARABLE = "Incomparable"


def gcd_bezout(ring: Ring, a, b):
    """Bezout witness ``(g, u, v)`` with ``u*a + v*b = g`` and ``(a) + (b) = (g)``."""
    _check_bezout(ring)
    return ring.gcdex(a, b)


def _same_ring(I: PrincipalIdeal, J: PrincipalIdeal) -> Ring:
    if I.ring != J.ring:
        raise ValueError("ideals live in different rings")
    return I.ring


def ideal_sum(I: PrincipalIdeal, J: PrincipalIdeal) -> PrincipalIdeal:
    ring = _same_ring(I, J)
    g, _, _ = gcd_bezout(ring, I.generator, J.generator)
    return PrincipalIdeal.of(ring, g)


def ideal_intersect(I: PrincipalIdeal, J: PrincipalIdeal) -> PrincipalIdeal:
    ring = _same_ring(I, J)
    _check_bezout(ring)
    return PrincipalIdeal.of(ring, ring.intersect(I.generator, J.generator))


def ideal_compare(I: PrincipalIdeal, J: PrincipalIdeal) -> Verdict:
    _same_ring(I, J)
    if I == J:
        return Verdict.EQUAL
    if I <= J:
        return Verdict.FIRST_INSIDE_SECOND
    if J <= I:
        return Verdict.SECOND_INSIDE_FIRST
    if (I + J).is_whole_ring:
        return Verdict.COMAXIMAL
    return Verdict.INCOMPARABLE


def comparable(I: PrincipalIdeal, J: PrincipalIdeal) -> bool:
    return I <= J or J <= I


def comaximal(I: PrincipalIdeal, J: PrincipalIdeal) -> bool:
    return (I + J).is_whole_ring


def radical(I: PrincipalIdeal) -> PrincipalIdeal:
    if I.is_whole_ring:
        return I
    return PrincipalIdeal.of(I.ring, I.ring.radical(I.generator))


def minimal_primes_over(I: PrincipalIdeal) -> IdealSet:
    if I.is_whole_ring:
        return IdealSet()
    ring = I.ring
    primes = {PrincipalIdeal.of(ring, q) for q in ring.minimal_primes(I.generator)}
    return IdealSet(sorted(primes, key=PrincipalIdeal.sort_key))


def is_indecomposable_quotient(I: PrincipalIdeal) -> bool:
    """``R/I`` nonzero with a unique minimal prime over ``I``."""
    return not I.is_whole_ring and len(minimal_primes_over(I)) == 1


def ideals_from(ring: Ring, gens: Sequence) -> IdealSet:
    return IdealSet(PrincipalIdeal.of(ring, g) for g in gens)
