"""Outward-rounded interval arithmetic on binary64 endpoints.

Operations compute with the hardware's round-to-nearest arithmetic and then
widen each endpoint by one ulp (``math.nextafter``).  Because IEEE-754
+, -, *, / and sqrt are correctly rounded, the widened result encloses the
exact real image of the operands, and by the same argument it encloses any
round-to-nearest floating evaluation that follows the same expression tree.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .exceptions import NegativeSqrtDomainError

_INF = math.inf


def _down(v: float) -> float:
    return math.nextafter(v, -_INF)


def _up(v: float) -> float:
    return math.nextafter(v, _INF)


@dataclass(frozen=True)
class Interval:
    """Closed interval [lo, hi] of binary64 reals."""

    lo: float
    hi: float

    def __post_init__(self):
        if math.isnan(self.lo) or math.isnan(self.hi):
            raise ValueError("interval endpoints must not be NaN")
        if self.lo > self.hi:
            raise ValueError(f"empty interval: lo={self.lo} > hi={self.hi}")

    @classmethod
    def point(cls, v: float) -> "Interval":
        return cls(v, v)

    @property
    def width(self) -> float:
        return self.hi - self.lo

    @property
    def midpoint(self) -> float:
        return 0.5 * (self.lo + self.hi)

    def contains(self, v: float) -> bool:
        return self.lo <= v <= self.hi

    def is_subset_of(self, other: "Interval") -> bool:
        return other.lo <= self.lo and self.hi <= other.hi

    def intersect(self, other: "Interval") -> "Interval | None":
        lo = max(self.lo, other.lo)
        hi = min(self.hi, other.hi)
        if lo > hi:
            return None
        return Interval(lo, hi)

    def __add__(self, other: "Interval") -> "Interval":
        return add(self, other)

    def __sub__(self, other: "Interval") -> "Interval":
        return sub(self, other)

    def __mul__(self, other: "Interval") -> "Interval":
        return mul(self, other)

    def __truediv__(self, other: "Interval") -> "Interval":
        return div(self, other)

    def __neg__(self) -> "Interval":
        return Interval(-self.hi, -self.lo)

    def sqrt(self) -> "Interval":
        return sqrt(self)

    def __repr__(self) -> str:
        return f"[{self.lo!r}, {self.hi!r}]"


def add(a: Interval, b: Interval) -> Interval:
    return Interval(_down(a.lo + b.lo), _up(a.hi + b.hi))


def sub(a: Interval, b: Interval) -> Interval:
    return Interval(_down(a.lo - b.hi), _up(a.hi - b.lo))


def mul(a: Interval, b: Interval) -> Interval:
    p1 = a.lo * b.lo
    p2 = a.lo * b.hi
    p3 = a.hi * b.lo
    p4 = a.hi * b.hi
    return Interval(_down(min(p1, p2, p3, p4)), _up(max(p1, p2, p3, p4)))


def div(a: Interval, b: Interval) -> Interval:
    if b.lo <= 0.0 <= b.hi:
        raise ZeroDivisionError(f"divisor interval {b} contains zero")
    q1 = a.lo / b.lo
    q2 = a.lo / b.hi
    q3 = a.hi / b.lo
    q4 = a.hi / b.hi
    return Interval(_down(min(q1, q2, q3, q4)), _up(max(q1, q2, q3, q4)))


def sqrt(a: Interval) -> Interval:
    """Square root; a negative lower endpoint is clamped to the true domain.

    Raises NegativeSqrtDomainError when the whole interval is negative.
    """
    if a.hi < 0.0:
        raise NegativeSqrtDomainError(f"sqrt of entirely negative interval {a}")
    lo = max(a.lo, 0.0)
    slo = max(_down(math.sqrt(lo)), 0.0)
    return Interval(slo, _up(math.sqrt(a.hi)))


def scale(a: Interval, k: float) -> Interval:
    """Multiply by a nonnegative scalar constant."""
    if k < 0.0:
        raise ValueError("scale factor must be nonnegative")
    return Interval(_down(k * a.lo), _up(k * a.hi))


@dataclass(frozen=True)
class Box2:
    """Axis-aligned rectangle: a pair of intervals."""

    x: Interval
    y: Interval

    @classmethod
    def from_bounds(cls, xlo: float, xhi: float, ylo: float, yhi: float) -> "Box2":
        return cls(Interval(xlo, xhi), Interval(ylo, yhi))

    @property
    def width(self) -> float:
        return max(self.x.width, self.y.width)

    def contains(self, px: float, py: float) -> bool:
        return self.x.contains(px) and self.y.contains(py)

    def split(self) -> tuple["Box2", "Box2"]:
        """Bisect along the wider axis; ties split x."""
        if self.x.width >= self.y.width:
            m = self.x.midpoint
            return (
                Box2(Interval(self.x.lo, m), self.y),
                Box2(Interval(m, self.x.hi), self.y),
            )
        m = self.y.midpoint
        return (
            Box2(self.x, Interval(self.y.lo, m)),
            Box2(self.x, Interval(m, self.y.hi)),
        )
