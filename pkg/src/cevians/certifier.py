"""Rigorous certification of the normalized inequalities by branch and bound.

The working domain is W(mu, delta) = {mu <= x <= y <= 1, x + y >= 1 + mu}
minus the equality corner [1-delta, 1]^2 (inside the simplex x <= y the
corner removal is exactly the constraint x <= 1 - delta).  A box is proven
once a rigorous lower bound on the target over the box is positive;
otherwise it is bisected along its wider side.  Processing is
level-synchronous and vectorized over NumPy arrays of boxes, so the output
is deterministic regardless of scheduling, and the endpoint arithmetic is
the same 1-ulp outward rounding used by :mod:`cevians.intervals`.

Every target expression is written once against an abstract operation set
and instantiated three ways: plain float arrays (point evaluation),
interval endpoint arrays (the natural extension, which is what
:func:`eval_target_interval` exposes; it is inclusion-isotone), and
forward-mode interval derivatives.  The branch-and-bound additionally
prunes with the mean-value form  f(m) + grad(X) * (X - m), which is what
keeps box counts bounded near the equality corner where the natural
extension would need quadratically small boxes.  The mean-value bound is
applied only where every radicand is strictly positive over the whole box
hull, so the expression is differentiable on every segment the argument
needs.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .exceptions import BudgetExceededError, EmptyIntersectionError
from .intervals import Box2, Interval

_INF = np.inf


class Target(Enum):
    """Certification targets over the normalized domain (all with c = 1)."""

    MAIN_MEDIAN = "main-median"
    QUADRATIC_MEDIAN = "quadratic-median"
    KEY_SYSTEM = "key-system"
    ALTITUDE_REDUCED = "altitude-reduced"
    SCALENE_LEMMA = "scalene-lemma"

    @classmethod
    def from_name(cls, name: str) -> "Target":
        for t in cls:
            if t.value == name:
                return t
        raise KeyError(f"unknown certification target {name!r}")


@dataclass(frozen=True)
class CertificationTask:
    target: Target
    mu: float = 1e-6
    delta: float = 1e-3
    max_depth: int = 60
    min_box_width: float = 1e-9
    box_budget: int = 2_000_000
    queue_cap: int = 20_000_000

    def __post_init__(self):
        if not (0.0 < self.mu < 0.25):
            raise ValueError(f"mu must lie in (0, 1/4), got {self.mu}")
        if not (0.0 <= self.delta < 0.5):
            raise ValueError(f"delta must lie in [0, 1/2), got {self.delta}")
        if self.max_depth < 1:
            raise ValueError("max_depth must be at least 1")
        if not (self.min_box_width > 0.0):
            raise ValueError("min_box_width must be positive")
        if self.box_budget < 1 or self.queue_cap < 1:
            raise ValueError("budgets must be positive")


# ---------------------------------------------------------------------------
# Target expressions, written once over an abstract operation set.  `ra`,
# `rb`, `rc` are the doubled medians 2*m_a, 2*m_b, 2*m_c of the normalized
# triangle (x, y, 1); every target is a positive multiple of the inequality
# slack it certifies, so only the sign matters.  Multi-part targets (the
# key system) certify the minimum of their parts.
# ---------------------------------------------------------------------------


class _FloatOps:
    """Plain round-to-nearest arithmetic on float arrays."""

    @staticmethod
    def add(a, b):
        return a + b

    @staticmethod
    def sub(a, b):
        return a - b

    @staticmethod
    def mul(a, b):
        return a * b

    @staticmethod
    def div(a, b):
        return a / b

    @staticmethod
    def sqrt(a):
        return np.sqrt(a)

    @staticmethod
    def add_const(a, k):
        return a + k

    @staticmethod
    def sub_const(a, k):
        return a - k


class _IntervalOps:
    """Outward-rounded arithmetic on (lo, hi) pairs of endpoint arrays."""

    @staticmethod
    def add(a, b):
        return np.nextafter(a[0] + b[0], -_INF), np.nextafter(a[1] + b[1], _INF)

    @staticmethod
    def sub(a, b):
        return np.nextafter(a[0] - b[1], -_INF), np.nextafter(a[1] - b[0], _INF)

    @staticmethod
    def mul(a, b):
        p1 = a[0] * b[0]
        p2 = a[0] * b[1]
        p3 = a[1] * b[0]
        p4 = a[1] * b[1]
        lo = np.minimum(np.minimum(p1, p2), np.minimum(p3, p4))
        hi = np.maximum(np.maximum(p1, p2), np.maximum(p3, p4))
        return np.nextafter(lo, -_INF), np.nextafter(hi, _INF)

    @staticmethod
    def div(a, b):
        # General numerator over a nonnegative divisor; a zero divisor
        # endpoint produces infinite bounds (still an enclosure) and never
        # NaN because the numerators this module divides are bounded away
        # from [0, 0] whenever the divisor can reach zero.
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            q1 = a[0] / b[0]
            q2 = a[0] / b[1]
            q3 = a[1] / b[0]
            q4 = a[1] / b[1]
            lo = np.minimum(np.minimum(q1, q2), np.minimum(q3, q4))
            hi = np.maximum(np.maximum(q1, q2), np.maximum(q3, q4))
        return np.nextafter(lo, -_INF), np.nextafter(hi, _INF)

    @staticmethod
    def sqrt(a):
        # Negative dust below the domain boundary is clamped to the true
        # restriction [0, hi]; an entirely negative interval surfaces as
        # NaN, which can never be proven positive.
        with np.errstate(invalid="ignore"):
            lo = np.nextafter(np.sqrt(np.maximum(a[0], 0.0)), -_INF)
            hi = np.nextafter(np.sqrt(a[1]), _INF)
        return np.maximum(lo, 0.0), hi

    @staticmethod
    def add_const(a, k):
        return np.nextafter(a[0] + k, -_INF), np.nextafter(a[1] + k, _INF)

    @staticmethod
    def sub_const(a, k):
        return np.nextafter(a[0] - k, -_INF), np.nextafter(a[1] - k, _INF)


class _AdVal:
    """Forward-mode interval derivative value: enclosure plus gradient.

    `ok` marks lanes where every radicand so far is strictly positive over
    the whole box hull, i.e. where the expression is differentiable on the
    hull and the mean-value bound is admissible.
    """

    __slots__ = ("v", "gx", "gy", "ok")

    def __init__(self, v, gx, gy, ok):
        self.v = v
        self.gx = gx
        self.gy = gy
        self.ok = ok


class _AdOps:
    """Interval arithmetic with forward-mode derivative propagation."""

    @staticmethod
    def add(a, b):
        return _AdVal(
            _IntervalOps.add(a.v, b.v),
            _IntervalOps.add(a.gx, b.gx),
            _IntervalOps.add(a.gy, b.gy),
            a.ok & b.ok,
        )

    @staticmethod
    def sub(a, b):
        return _AdVal(
            _IntervalOps.sub(a.v, b.v),
            _IntervalOps.sub(a.gx, b.gx),
            _IntervalOps.sub(a.gy, b.gy),
            a.ok & b.ok,
        )

    @staticmethod
    def mul(a, b):
        gx = _IntervalOps.add(_IntervalOps.mul(a.gx, b.v), _IntervalOps.mul(a.v, b.gx))
        gy = _IntervalOps.add(_IntervalOps.mul(a.gy, b.v), _IntervalOps.mul(a.v, b.gy))
        return _AdVal(_IntervalOps.mul(a.v, b.v), gx, gy, a.ok & b.ok)

    @staticmethod
    def div(a, b):
        ok = a.ok & b.ok & (b.v[0] > 0.0)
        denom = (np.maximum(b.v[0], 5e-324), b.v[1])
        q = _IntervalOps.div(a.v, denom)
        d2 = _IntervalOps.mul(denom, denom)
        with np.errstate(invalid="ignore", divide="ignore", over="ignore"):
            nx = _IntervalOps.sub(
                _IntervalOps.mul(a.gx, b.v), _IntervalOps.mul(a.v, b.gx)
            )
            ny = _IntervalOps.sub(
                _IntervalOps.mul(a.gy, b.v), _IntervalOps.mul(a.v, b.gy)
            )
            gx = _IntervalOps.div(nx, d2)
            gy = _IntervalOps.div(ny, d2)
        return _AdVal(q, gx, gy, ok)

    @staticmethod
    def sqrt(a):
        ok = a.ok & (a.v[0] > 0.0)
        v = _IntervalOps.sqrt(a.v)
        denom = (np.maximum(2.0 * v[0], 5e-324), 2.0 * v[1])
        with np.errstate(invalid="ignore", divide="ignore", over="ignore"):
            gx = _IntervalOps.div(a.gx, denom)
            gy = _IntervalOps.div(a.gy, denom)
        return _AdVal(v, gx, gy, ok)

    @staticmethod
    def add_const(a, k):
        return _AdVal(_IntervalOps.add_const(a.v, k), a.gx, a.gy, a.ok)

    @staticmethod
    def sub_const(a, k):
        return _AdVal(_IntervalOps.sub_const(a.v, k), a.gx, a.gy, a.ok)


def _doubled_medians(ops, x, y):
    x2 = ops.mul(x, x)
    y2 = ops.mul(y, y)
    ra = ops.sqrt(ops.sub(ops.add_const(ops.add(y2, y2), 2.0), x2))
    rb = ops.sqrt(ops.sub(ops.add_const(ops.add(x2, x2), 2.0), y2))
    rc = ops.sqrt(ops.sub_const(ops.add(ops.add(x2, x2), ops.add(y2, y2)), 1.0))
    return x2, y2, ra, rb, rc


def _parts_main(ops, x, y):
    _, _, ra, rb, rc = _doubled_medians(ops, x, y)
    t1 = ops.mul(ra, ops.sub(ops.sqrt(y), x))
    t2 = ops.mul(rb, ops.sub(ops.sqrt(x), y))
    t3 = ops.mul(rc, ops.sub_const(ops.sqrt(ops.mul(x, y)), 1.0))
    return (ops.add(ops.add(t1, t2), t3),)


def _parts_quadratic(ops, x, y):
    x2, y2, ra, rb, rc = _doubled_medians(ops, x, y)
    t1 = ops.mul(ops.sub(y, x2), ra)
    t2 = ops.mul(ops.sub(x, y2), rb)
    t3 = ops.mul(ops.sub_const(ops.mul(x, y), 1.0), rc)
    return (ops.add(ops.add(t1, t2), t3),)


def _parts_key_system(ops, x, y):
    _, _, ra, rb, rc = _doubled_medians(ops, x, y)
    r1 = ops.sub(ops.add(rb, ops.mul(y, rc)), ops.mul(ops.add(x, x), ra))
    r2 = ops.sub(ops.add(ra, ops.mul(x, rc)), ops.mul(ops.add(y, y), rb))
    r3 = ops.sub(ops.add(ops.mul(x, rb), ops.mul(y, ra)), ops.add(rc, rc))
    return (r1, r2, r3)


def _parts_altitude_reduced(ops, x, y):
    t = ops.add(ops.add(ops.mul(x, y), ops.div(x, y)), ops.div(y, x))
    return (ops.sub(t, ops.add_const(ops.add(x, y), 1.0)),)


def _parts_scalene_lemma(ops, x, y):
    _, _, ra, rb, rc = _doubled_medians(ops, x, y)
    t = ops.add(ops.mul(ra, ops.sqrt(y)), ops.mul(rb, ops.sub(ops.sqrt(x), y)))
    return (ops.sub(t, rc),)


_PARTS = {
    Target.MAIN_MEDIAN: _parts_main,
    Target.QUADRATIC_MEDIAN: _parts_quadratic,
    Target.KEY_SYSTEM: _parts_key_system,
    Target.ALTITUDE_REDUCED: _parts_altitude_reduced,
    Target.SCALENE_LEMMA: _parts_scalene_lemma,
}


def point_values(target: Target, x, y):
    """Binary64 point evaluation of a target over arrays of domain points."""
    parts = _PARTS[target](
        _FloatOps, np.asarray(x, dtype=float), np.asarray(y, dtype=float)
    )
    out = parts[0]
    for p in parts[1:]:
        out = np.minimum(out, p)
    return out


def _natural_parts(target: Target, xlo, xhi, ylo, yhi):
    return _PARTS[target](_IntervalOps, (xlo, xhi), (ylo, yhi))


def _natural_enclosure(target: Target, xlo, xhi, ylo, yhi):
    parts = _natural_parts(target, xlo, xhi, ylo, yhi)
    lo = parts[0][0]
    hi = parts[0][1]
    for p in parts[1:]:
        lo = np.minimum(lo, p[0])
        hi = np.minimum(hi, p[1])
    return lo, hi


def _ad_parts(target: Target, xlo, xhi, ylo, yhi):
    ok = np.ones(np.shape(xlo), dtype=bool)
    x = _AdVal((xlo, xhi), (1.0, 1.0), (0.0, 0.0), ok)
    y = _AdVal((ylo, yhi), (0.0, 0.0), (1.0, 1.0), ok)
    return _PARTS[target](_AdOps, x, y)


def _up(v):
    return np.nextafter(v, _INF)


def _down(v):
    return np.nextafter(v, -_INF)


def _halve(iv):
    return _down(0.5 * iv[0]), _up(0.5 * iv[1])


def _anchor_in_domain(xlo, xhi, ylo, yhi, mu: float):
    """Box midpoint projected into {x + y >= 1 + mu, x <= y} within the box.

    The projection stays inside the box, so mean-value expansions around it
    remain valid over the box hull; clipped boxes always satisfy
    xhi + yhi >= 1 + mu and ylo >= xlo, which makes the projection exact.
    """
    ax = 0.5 * (xlo + xhi)
    ay = 0.5 * (ylo + yhi)
    need = np.maximum(0.0, (1.0 + mu) - (ax + ay))
    add_y = np.minimum(yhi - ay, need)
    ax = np.minimum(ax + (need - add_y), xhi)
    ay = ay + add_y
    mid = 0.5 * (ax + ay)
    swap = ax > ay
    ax = np.where(swap, mid, ax)
    ay = np.where(swap, mid, ay)
    return ax, ay


def key_system_identity_floors(mu: float) -> dict:
    """Domain floors certifying the second key residual nonnegative on W(mu).

    For valid triangles, (a*2m_c + c*2m_a)^2 - (2b*2m_b)^2 reduces, after
    the second squaring, to the identity

        4*T1*T2 - P^2 = 4*(a^2 + c^2 - 2b^2)^2 * (16*area^2),

    with T1 = (a*2m_c)^2, T2 = (c*2m_a)^2, P = 4*(b*2m_b)^2 - T1 - T2.
    Its right side is a square times Heron's 16*area^2, so the residual
    a*m_c + c*m_a - 2b*m_b is nonnegative wherever the triangle is valid,
    with equality exactly on 2b^2 = a^2 + c^2 (a curve that crosses the
    whole working domain, so no strict bound can hold there).  Over
    W(mu) = {mu <= x <= y <= 1, x + y >= 1 + mu} every Heron factor of the
    normalized triangle (x, y, 1) has the positive constant floor below,
    which is what makes the identity route rigorous on every box.
    """
    return {
        "x+y-1": math.nextafter((1.0 + mu) - 1.0, -_INF),
        "1+x-y": mu,
        "1+y-x": 1.0,
        "1+x+y": 2.0,
    }


def _key_identity_applies(mu: float) -> bool:
    return all(f > 0.0 for f in key_system_identity_floors(mu).values())


def _lower_bounds(target: Target, xlo, xhi, ylo, yhi, mu: float):
    """Best rigorous per-box lower bound over the domain part of each box.

    Combines the natural extension with two mean-value forms anchored at a
    domain-feasible point: one over per-axis displacements, and one over
    the rotated displacements (dx + dy, dx - dy) whose ranges are
    intersected with the domain constraints x + y >= 1 + mu and x <= y.
    The rotated form is what resolves boxes hugging the degeneracy edge,
    where the whole box hull spills below the constraint and every
    hull-wide bound is inevitably negative.  Mean-value bounds are used
    only on lanes whose `ok` flag says every radicand is strictly positive
    over the box hull (differentiability on every segment).

    For the key system, the second residual vanishes identically on the
    curve 2b^2 = a^2 + c^2, so it is certified nonnegative through the
    square identity (see :func:`key_system_identity_floors`) and the
    branch-and-bound bound below covers the two strict residuals only; a
    proven key-system box therefore means r1 > 0, r3 > 0 and r2 >= 0.
    """
    natural = _natural_parts(target, xlo, xhi, ylo, yhi)
    ad = _ad_parts(target, xlo, xhi, ylo, yhi)
    strict = list(range(len(natural)))
    if target is Target.KEY_SYSTEM and _key_identity_applies(mu):
        strict = [0, 2]

    ax, ay = _anchor_in_domain(xlo, xhi, ylo, yhi, mu)
    anchor = _PARTS[target](_IntervalOps, (ax, ax), (ay, ay))

    # Per-axis displacement ranges around the anchor.
    dx_rng = (_down(xlo - ax), _up(xhi - ax))
    dy_rng = (_down(ylo - ay), _up(yhi - ay))

    # Rotated displacements: ds = dx + dy floored by the degeneracy
    # constraint, dv = dx - dy capped by the ordering constraint.
    axy_up = _up(ax + ay)
    axy_dn = _down(ax + ay)
    ds_lo = np.maximum(
        _down(_down(1.0 + mu) - axy_up),
        _down(_down(xlo + ylo) - axy_up),
    )
    ds_hi = _up(_up(xhi + yhi) - axy_dn)
    avv_up = _up(ax - ay)
    avv_dn = _down(ax - ay)
    dv_lo = _down(_down(xlo - yhi) - avv_up)
    dv_hi = np.minimum(_up(_up(xhi - ylo) - avv_dn), _up(ay - ax))
    dv_hi = np.maximum(dv_hi, dv_lo)
    ds_rng = (ds_lo, ds_hi)
    dv_rng = (dv_lo, dv_hi)

    best = None
    for k in strict:
        nat, adv, anc = natural[k], ad[k], anchor[k]
        axis_term = _IntervalOps.add(
            _IntervalOps.mul(adv.gx, dx_rng), _IntervalOps.mul(adv.gy, dy_rng)
        )
        gs = _halve(_IntervalOps.add(adv.gx, adv.gy))
        gv = _halve(_IntervalOps.sub(adv.gx, adv.gy))
        rot_term = _IntervalOps.add(
            _IntervalOps.mul(gs, ds_rng), _IntervalOps.mul(gv, dv_rng)
        )
        with np.errstate(invalid="ignore"):
            centered = np.maximum(
                _down(anc[0] + axis_term[0]), _down(anc[0] + rot_term[0])
            )
        usable = adv.ok & np.isfinite(centered)
        part_lo = np.where(usable, np.maximum(nat[0], centered), nat[0])
        best = part_lo if best is None else np.minimum(best, part_lo)
    return best


def _clip_to_domain(xlo, xhi, ylo, yhi, mu: float):
    """Tightest axis-aligned bounding box of box ∩ {mu<=x<=y<=1, x+y>=1+mu}.

    Points outside the simplex may remain in the clipped box (its corners),
    which is sound for enclosures; emptiness is decided conservatively.
    """
    yhi = np.minimum(yhi, 1.0)
    ylo = np.maximum(ylo, 0.5 * (1.0 + mu))
    xlo = np.maximum(np.maximum(xlo, mu), (1.0 + mu) - yhi)
    xhi = np.minimum(xhi, yhi)
    ylo = np.maximum(np.maximum(ylo, xlo), (1.0 + mu) - xhi)
    nonempty = (xlo <= xhi) & (ylo <= yhi) & (xhi > 0.0)
    return xlo, xhi, ylo, yhi, nonempty


def eval_target_interval(target: Target, box: Box2, mu: float = 0.0) -> Interval:
    """Natural interval enclosure of a target over the domain part of a box.

    This is the inclusion-isotone extension: nested boxes produce nested
    enclosures.  Raises EmptyIntersectionError when the box misses the
    working domain.
    """
    xlo, xhi, ylo, yhi, ok = _clip_to_domain(
        np.array([box.x.lo]), np.array([box.x.hi]),
        np.array([box.y.lo]), np.array([box.y.hi]), mu,
    )
    if not bool(ok[0]):
        raise EmptyIntersectionError(f"box {box} misses the working domain")
    flo, fhi = _natural_enclosure(target, xlo, xhi, ylo, yhi)
    return Interval(float(flo[0]), float(fhi[0]))


class BoxArray:
    """Compact columnar store for a set of axis-aligned boxes."""

    __slots__ = ("xlo", "xhi", "ylo", "yhi")

    def __init__(self, xlo, xhi, ylo, yhi):
        self.xlo = np.asarray(xlo, dtype=float)
        self.xhi = np.asarray(xhi, dtype=float)
        self.ylo = np.asarray(ylo, dtype=float)
        self.yhi = np.asarray(yhi, dtype=float)

    @classmethod
    def empty(cls) -> "BoxArray":
        z = np.empty(0)
        return cls(z, z, z, z)

    @classmethod
    def concatenate(cls, parts: list[tuple]) -> "BoxArray":
        if not parts:
            return cls.empty()
        return cls(*(np.concatenate([p[i] for p in parts]) for i in range(4)))

    def __len__(self) -> int:
        return self.xlo.shape[0]

    def box(self, i: int) -> Box2:
        return Box2.from_bounds(self.xlo[i], self.xhi[i], self.ylo[i], self.yhi[i])

    def __iter__(self):
        return (self.box(i) for i in range(len(self)))

    def sorted_canonically(self) -> "BoxArray":
        order = np.lexsort((self.yhi, self.xhi, self.ylo, self.xlo))
        return BoxArray(self.xlo[order], self.xhi[order],
                        self.ylo[order], self.yhi[order])

    def bounds_list(self, limit: int | None = None) -> list[list[float]]:
        n = len(self) if limit is None else min(len(self), limit)
        return [
            [float(self.xlo[i]), float(self.xhi[i]),
             float(self.ylo[i]), float(self.yhi[i])]
            for i in range(n)
        ]


@dataclass
class CertificateStats:
    boxes_processed: int = 0
    max_depth_reached: int = 0
    budget_exhausted: bool = False
    wall_time_s: float = 0.0


@dataclass
class Certificate:
    """Branch-and-bound outcome over the working domain.

    The proven and undecided boxes, together with the reported excluded
    regions, cover the working domain; proven boxes never overlap undecided
    ones except on their boundaries.
    """

    task: CertificationTask
    proven: BoxArray
    undecided: BoxArray
    excluded: dict
    stats: CertificateStats = field(default_factory=CertificateStats)

    @property
    def proven_count(self) -> int:
        return len(self.proven)

    @property
    def undecided_count(self) -> int:
        return len(self.undecided)

    def to_report_dict(self, include_proven: bool = False,
                       undecided_limit: int = 1000) -> dict:
        doc = {
            "target": self.task.target.value,
            "mu": self.task.mu,
            "delta": self.task.delta,
            "max_depth": self.task.max_depth,
            "min_box_width": self.task.min_box_width,
            "proven_count": self.proven_count,
            "undecided_count": self.undecided_count,
            "undecided": self.undecided.bounds_list(undecided_limit),
            "undecided_truncated": self.undecided_count > undecided_limit,
            "excluded": self.excluded,
            "stats": {
                "boxes_processed": self.stats.boxes_processed,
                "max_depth_reached": self.stats.max_depth_reached,
                "budget_exhausted": self.stats.budget_exhausted,
                "wall_time_s": self.stats.wall_time_s,
            },
        }
        if include_proven:
            doc["proven"] = self.proven.bounds_list()
        return doc


def _excluded_description(task: CertificationTask) -> dict:
    doc = {
        "degeneracy_buffer": {
            "mu": task.mu,
            "constraints": "x >= mu and x + y >= 1 + mu",
        },
        "corner_square": {
            "delta": task.delta,
            "x": [1.0 - task.delta, 1.0],
            "y": [1.0 - task.delta, 1.0],
            "note": "equality corner; isosceles edges covered by the "
                    "corner factor certification, interior by dense sampling",
        },
    }
    if task.target is Target.KEY_SYSTEM:
        doc["second_residual"] = {
            "equality_locus": "2*b^2 = a^2 + c^2",
            "certification": "nonnegative via the square identity "
                             "4*T1*T2 - P^2 = 4*(a^2+c^2-2*b^2)^2 * (16*area^2); "
                             "proven boxes certify r1 > 0, r3 > 0, r2 >= 0",
            "heron_floors": key_system_identity_floors(task.mu),
        }
    return doc


def certify(task: CertificationTask) -> Certificate:
    """Branch-and-bound certification of one target over W(mu, delta).

    Boxes with a positive rigorous lower bound are proven; boxes at
    max_depth or below min_box_width are undecided; when the total
    processed-box budget runs out the remaining queue is reported
    undecided.  Raises BudgetExceededError (carrying the partial
    certificate) only if a level would exceed the queue cap.
    """
    start = time.perf_counter()
    xlo = np.array([task.mu])
    xhi = np.array([1.0 - task.delta])
    ylo = np.array([task.mu])
    yhi = np.array([1.0])

    proven_parts: list[tuple] = []
    undecided_parts: list[tuple] = []
    stats = CertificateStats()
    depth = 0

    def _finish(exhausted: bool) -> Certificate:
        stats.budget_exhausted = exhausted
        stats.wall_time_s = time.perf_counter() - start
        return Certificate(
            task=task,
            proven=BoxArray.concatenate(proven_parts).sorted_canonically(),
            undecided=BoxArray.concatenate(undecided_parts).sorted_canonically(),
            excluded=_excluded_description(task),
            stats=stats,
        )

    while xlo.shape[0] > 0:
        xlo, xhi, ylo, yhi, ok = _clip_to_domain(xlo, xhi, ylo, yhi, task.mu)
        if not ok.all():
            xlo, xhi, ylo, yhi = xlo[ok], xhi[ok], ylo[ok], yhi[ok]
        n = xlo.shape[0]
        if n == 0:
            break
        if stats.boxes_processed + n > task.box_budget:
            undecided_parts.append((xlo, xhi, ylo, yhi))
            return _finish(exhausted=True)

        stats.boxes_processed += n
        stats.max_depth_reached = depth
        flo = _lower_bounds(task.target, xlo, xhi, ylo, yhi, task.mu)

        proven = flo > 0.0
        width = np.maximum(xhi - xlo, yhi - ylo)
        stuck = ~proven & ((width <= task.min_box_width) | (depth >= task.max_depth))
        split = ~proven & ~stuck

        if proven.any():
            proven_parts.append((xlo[proven], xhi[proven],
                                 ylo[proven], yhi[proven]))
        if stuck.any():
            undecided_parts.append((xlo[stuck], xhi[stuck],
                                    ylo[stuck], yhi[stuck]))
        if not split.any():
            break

        sxlo, sxhi = xlo[split], xhi[split]
        sylo, syhi = ylo[split], yhi[split]
        on_x = (sxhi - sxlo) >= (syhi - sylo)
        xm = 0.5 * (sxlo + sxhi)
        ym = 0.5 * (sylo + syhi)
        c1 = (sxlo, np.where(on_x, xm, sxhi), sylo, np.where(on_x, syhi, ym))
        c2 = (np.where(on_x, xm, sxlo), sxhi, np.where(on_x, sylo, ym), syhi)
        xlo = np.concatenate([c1[0], c2[0]])
        xhi = np.concatenate([c1[1], c2[1]])
        ylo = np.concatenate([c1[2], c2[2]])
        yhi = np.concatenate([c1[3], c2[3]])
        depth += 1

        if xlo.shape[0] > task.queue_cap:
            undecided_parts.append((xlo, xhi, ylo, yhi))
            raise BudgetExceededError(
                f"work queue of {xlo.shape[0]} boxes exceeds cap {task.queue_cap}",
                partial_certificate=_finish(exhausted=True),
            )

    return _finish(exhausted=False)


# ---------------------------------------------------------------------------
# Corner argument: 1-D certification of the isosceles factored forms.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FactorCertification:
    name: str
    domain_lo: float
    domain_hi: float
    certified: bool
    lower_bound: float
    boxes_processed: int


@dataclass(frozen=True)
class CornerCheckReport:
    """Why the excluded equality corner is benign on its isosceles edges.

    Both isosceles slack factorizations take the shape
    (nonnegative factor) * (second factor); the report certifies the second
    factors strictly positive on [1-2*delta, 1-eta].  Both vanish exactly
    at the equilateral endpoint, so the sliver (1-eta, 1] stays uncertified
    and the corner interior is covered by dense sampling, not by this
    argument.
    """

    delta: float
    eta: float
    equal_legs_factor: FactorCertification
    equal_base_factor: FactorCertification

    @property
    def both_positive(self) -> bool:
        return self.equal_legs_factor.certified and self.equal_base_factor.certified

    def to_report_dict(self) -> dict:
        def fac(f: FactorCertification) -> dict:
            return {
                "name": f.name,
                "domain": [f.domain_lo, f.domain_hi],
                "certified": f.certified,
                "lower_bound": f.lower_bound,
                "boxes_processed": f.boxes_processed,
            }

        return {
            "delta": self.delta,
            "eta": self.eta,
            "both_positive": self.both_positive,
            "factors": [fac(self.equal_legs_factor), fac(self.equal_base_factor)],
            "sliver": [1.0 - self.eta, 1.0],
        }


def _equal_legs_factor(x: Interval) -> Interval:
    # 2*sqrt(2x + x^3) - (sqrt(x) + 1)*sqrt(4x^2 - 1), for a = b = x, c = 1
    two = Interval.point(2.0)
    one = Interval.point(1.0)
    four = Interval.point(4.0)
    x3 = x * x * x
    t1 = two * ((two * x + x3).sqrt())
    t2 = (x.sqrt() + one) * ((four * x * x - one).sqrt())
    return t1 - t2


def _equal_base_factor(x: Interval) -> Interval:
    # (1 + sqrt(x))*sqrt(4 - x^2) - 2*sqrt(1 + 2x^2), for a = x, b = c = 1
    one = Interval.point(1.0)
    two = Interval.point(2.0)
    four = Interval.point(4.0)
    t1 = (one + x.sqrt()) * ((four - x * x).sqrt())
    t2 = two * ((one + two * x * x).sqrt())
    return t1 - t2


def _certify_positive_1d(f, lo: float, hi: float,
                         min_width: float = 1e-12,
                         box_cap: int = 500_000) -> tuple[bool, float, int]:
    """Prove f > 0 on [lo, hi] by interval bisection.

    Returns (certified, certified lower bound, boxes processed).
    """
    stack = [(lo, hi)]
    bound = math.inf
    processed = 0
    while stack:
        a, b = stack.pop()
        processed += 1
        if processed > box_cap:
            return False, 0.0, processed
        enc = f(Interval(a, b))
        if enc.lo > 0.0:
            bound = min(bound, enc.lo)
            continue
        if b - a <= min_width:
            return False, 0.0, processed
        m = 0.5 * (a + b)
        stack.append((m, b))
        stack.append((a, m))
    return True, bound, processed


def corner_argument_check(delta: float, eta: float = 1e-6) -> CornerCheckReport:
    """Certify the two isosceles second factors positive on [1-2*delta, 1-eta].

    The equal-legs family needs x > 1/2 for its radical, so its interval is
    clamped there when delta is large; both factors vanish exactly at x = 1,
    hence the eta sliver.
    """
    if not (0.0 < delta < 0.5):
        raise ValueError(f"delta must lie in (0, 1/2), got {delta}")
    hi = 1.0 - eta
    lo1 = max(1.0 - 2.0 * delta, 0.5 + 1e-9)
    lo2 = max(1.0 - 2.0 * delta, eta)

    ok1, b1, n1 = _certify_positive_1d(_equal_legs_factor, lo1, hi)
    ok2, b2, n2 = _certify_positive_1d(_equal_base_factor, lo2, hi)
    return CornerCheckReport(
        delta=delta,
        eta=eta,
        equal_legs_factor=FactorCertification(
            "equal_legs_second_factor", lo1, hi, ok1, b1, n1),
        equal_base_factor=FactorCertification(
            "equal_base_second_factor", lo2, hi, ok2, b2, n2),
    )
