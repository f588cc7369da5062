"""Floating-point triangle geometry kernel.

Side triples are canonically sorted (a <= b <= c) at construction and every
formula below assumes that ordering.  All values are immutable and every
operation is a pure function, so the kernel is safe under arbitrary
concurrent use.  Rigorous (interval) evaluation lives in the certifier
module; this one is plain binary64.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .exceptions import (
    DegenerateTriangleError,
    DomainError,
    NonPositiveSideError,
    ZeroWeightsError,
)


class CevianKind(Enum):
    MEDIAN = "median"
    ALTITUDE = "altitude"
    BISECTOR = "bisector"
    MIXED = "mixed"
    GENERAL = "general"


@dataclass(frozen=True)
class SideTriple:
    """Positive side lengths stored sorted, with a + b > c strictly.

    Construct unsorted raw input through :func:`validate_sides`.
    """

    a: float
    b: float
    c: float

    def __post_init__(self):
        if not (self.a > 0.0 and self.b > 0.0 and self.c > 0.0):
            raise NonPositiveSideError(
                f"sides must be positive, got {(self.a, self.b, self.c)}"
            )
        if not (self.a <= self.b <= self.c):
            raise ValueError(
                "SideTriple requires a <= b <= c; use validate_sides() to sort"
            )
        if not (self.a + self.b > self.c):
            raise DegenerateTriangleError(
                f"degenerate triangle: {self.a} + {self.b} <= {self.c}"
            )

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.a, self.b, self.c)

    def scaled(self, k: float) -> "SideTriple":
        return SideTriple(k * self.a, k * self.b, k * self.c)


@dataclass(frozen=True)
class CevianTriple:
    """Lengths of the Cevians from vertices A, B, C, tagged by family."""

    la: float
    lb: float
    lc: float
    kind: CevianKind

    def __post_init__(self):
        if not (self.la > 0.0 and self.lb > 0.0 and self.lc > 0.0):
            raise ValueError(
                f"cevian lengths must be positive, got {(self.la, self.lb, self.lc)}"
            )

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.la, self.lb, self.lc)


@dataclass(frozen=True)
class NormalizedTriangle:
    """Scale-free triangle: (x, y) = (a/c, b/c) with 0 < x <= y <= 1 < x + y."""

    x: float
    y: float

    def __post_init__(self):
        ok = 0.0 < self.x <= self.y <= 1.0 and self.x + self.y > 1.0
        if not ok:
            raise DomainError(
                f"({self.x}, {self.y}) outside the normalized triangle domain"
            )


@dataclass(frozen=True)
class TriangleMetrics:
    semiperimeter: float
    area: float


@dataclass(frozen=True)
class MixedWeights:
    """Nonnegative mixture weights for (median, altitude, bisector)."""

    alpha: float
    beta: float
    gamma: float

    def __post_init__(self):
        if self.alpha < 0.0 or self.beta < 0.0 or self.gamma < 0.0:
            raise ValueError(
                f"weights must be nonnegative, got {(self.alpha, self.beta, self.gamma)}"
            )
        if self.alpha == 0.0 and self.beta == 0.0 and self.gamma == 0.0:
            raise ZeroWeightsError("at least one mixture weight must be positive")


@dataclass(frozen=True)
class GeneralCevianParams:
    """Foot fractions in (0, 1) for the Cevians from A, B, C.

    Convention: the Cevian from A meets BC at the point whose segment
    adjacent to B has length ta*a; cyclically, the foot from B leaves
    tb*b adjacent to C on CA, and the foot from C leaves tc*c adjacent
    to A on AB.
    """

    ta: float
    tb: float
    tc: float

    def __post_init__(self):
        for t in (self.ta, self.tb, self.tc):
            if not (0.0 < t < 1.0):
                raise DomainError(f"foot fractions must lie in (0, 1), got {t}")

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.ta, self.tb, self.tc)


def validate_sides(a: float, b: float, c: float) -> SideTriple:
    """Sort raw lengths and validate positivity plus strict non-degeneracy."""
    raw = (float(a), float(b), float(c))
    if any(math.isnan(v) for v in raw):
        raise NonPositiveSideError(f"sides must be finite numbers, got {raw}")
    lo, mid, hi = sorted(raw)
    return SideTriple(lo, mid, hi)


def medians(t: SideTriple) -> CevianTriple:
    """Median lengths: from A, half the square root of 2b^2 + 2c^2 - a^2."""
    a, b, c = t.as_tuple()
    ma = 0.5 * math.sqrt(2.0 * b * b + 2.0 * c * c - a * a)
    mb = 0.5 * math.sqrt(2.0 * a * a + 2.0 * c * c - b * b)
    mc = 0.5 * math.sqrt(2.0 * a * a + 2.0 * b * b - c * c)
    return CevianTriple(ma, mb, mc, CevianKind.MEDIAN)


def metrics(t: SideTriple) -> TriangleMetrics:
    """Semiperimeter and area.

    The area uses the sorted-factor (Kahan) rearrangement of Heron's
    formula, which stays accurate for needle triangles.
    """
    a, b, c = t.as_tuple()
    p, q, r = c, b, a  # descending
    area = 0.25 * math.sqrt(
        (p + (q + r)) * (r - (p - q)) * (r + (p - q)) * (p + (q - r))
    )
    return TriangleMetrics(semiperimeter=0.5 * (a + b + c), area=area)


def altitudes(t: SideTriple) -> CevianTriple:
    """Altitude lengths 2*area / side; a*h_a = b*h_b = c*h_c."""
    twice_area = 2.0 * metrics(t).area
    return CevianTriple(
        twice_area / t.a, twice_area / t.b, twice_area / t.c, CevianKind.ALTITUDE
    )


def bisectors(t: SideTriple) -> CevianTriple:
    """Internal angle bisector lengths.

    From A: 2*sqrt(b*c*s*(s-a)) / (b+c), computed in the cancellation-free
    form sqrt(b*c*(a+b+c)*(b+c-a)) / (b+c).
    """
    a, b, c = t.as_tuple()
    per = a + b + c
    la = math.sqrt(b * c * per * (b + c - a)) / (b + c)
    lb = math.sqrt(a * c * per * (a + c - b)) / (a + c)
    lc = math.sqrt(a * b * per * (a + b - c)) / (a + b)
    return CevianTriple(la, lb, lc, CevianKind.BISECTOR)


def mixed_cevians(t: SideTriple, w: MixedWeights) -> CevianTriple:
    """Componentwise nonnegative mixture of medians, altitudes, bisectors."""
    m = medians(t)
    h = altitudes(t)
    l = bisectors(t)
    return CevianTriple(
        w.alpha * m.la + w.beta * h.la + w.gamma * l.la,
        w.alpha * m.lb + w.beta * h.lb + w.gamma * l.lb,
        w.alpha * m.lc + w.beta * h.lc + w.gamma * l.lc,
        CevianKind.MIXED,
    )


def general_cevians(t: SideTriple, p: GeneralCevianParams) -> CevianTriple:
    """Cevian lengths for arbitrary feet, via Stewart's theorem.

    With the foot convention of :class:`GeneralCevianParams`, the squared
    length from A is b^2*ta + c^2*(1-ta) - a^2*ta*(1-ta), and cyclically.
    The quadratic is strictly positive for valid triangles and feet in (0,1).
    """
    a, b, c = t.as_tuple()
    ta, tb, tc = p.as_tuple()
    da = math.sqrt(b * b * ta + c * c * (1.0 - ta) - a * a * ta * (1.0 - ta))
    db = math.sqrt(c * c * tb + a * a * (1.0 - tb) - b * b * tb * (1.0 - tb))
    dc = math.sqrt(a * a * tc + b * b * (1.0 - tc) - c * c * tc * (1.0 - tc))
    return CevianTriple(da, db, dc, CevianKind.GENERAL)


def sqrt_sides(t: SideTriple) -> SideTriple:
    """Square roots of the sides; always a valid triangle again."""
    return validate_sides(math.sqrt(t.a), math.sqrt(t.b), math.sqrt(t.c))


def normalize(t: SideTriple) -> NormalizedTriangle:
    """Scale so the longest side is 1: (x, y) = (a/c, b/c)."""
    return NormalizedTriangle(t.a / t.c, t.b / t.c)
