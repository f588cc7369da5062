"""Randomized search over triangles and general Cevian triples.

Reproduces the observation that unconstrained Cevians violate the two
target inequalities, and explores whether Cevian triples satisfying the
ordering and middle-dominance constraints can violate them.  Candidate
violations are always re-verified in outward-rounded interval arithmetic
before being reported, so a reported violation is a certainty, not a
floating-point artifact.  (The constrained search does find such
configurations; see the README findings, so both outcomes are real.)

Sampling is sharded: shard i draws from a generator seeded with
SeedSequence([seed, i]) and shards are merged in index order, so reports
are byte-identical for any worker count.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from enum import Enum

import numpy as np

from . import bulk
from .exceptions import CevianError
from .inequalities import open_problem_slacks
from .intervals import Interval
from .kernel import (
    CevianTriple,
    GeneralCevianParams,
    SideTriple,
    general_cevians,
    validate_sides,
)

SHARD_SIZE = 1 << 16


class SearchMode(Enum):
    UNCONSTRAINED = "unconstrained"
    OPEN_PROBLEM = "open-problem"

    @classmethod
    def from_name(cls, name: str) -> "SearchMode":
        for m in cls:
            if m.value == name:
                return m
        raise KeyError(f"unknown search mode {name!r}")


@dataclass(frozen=True)
class SearchConfig:
    seed: int
    samples: int
    mode: SearchMode
    refine_steps: int = 200
    record_top: int = 20
    workers: int = 1
    foot_margin: float = 1e-4

    def __post_init__(self):
        if self.samples < 1:
            raise ValueError(f"samples must be at least 1, got {self.samples}")
        if self.record_top < 1:
            raise ValueError("record_top must be at least 1")
        if self.refine_steps < 0:
            raise ValueError("refine_steps must be nonnegative")
        if self.workers < 1:
            raise ValueError("workers must be at least 1")
        if not (0.0 < self.foot_margin < 0.5):
            raise ValueError("foot_margin must lie in (0, 1/2)")


@dataclass(frozen=True)
class CandidateRecord:
    """One evaluated (triangle, Cevian feet) pair."""

    sides: SideTriple
    feet: GeneralCevianParams
    cevians: CevianTriple
    slack1: float
    slack2: float
    constraints_ok: bool
    min_slack: float
    index: int
    refined: bool = False
    reverified: bool = False
    slack1_upper: float | None = None
    slack2_upper: float | None = None

    def __post_init__(self):
        if self.min_slack != min(self.slack1, self.slack2):
            raise ValueError("min_slack must equal min(slack1, slack2)")

    def to_dict(self) -> dict:
        doc = {
            "sides": [self.sides.a, self.sides.b, self.sides.c],
            "feet": [self.feet.ta, self.feet.tb, self.feet.tc],
            "cevians": [self.cevians.la, self.cevians.lb, self.cevians.lc],
            "slack1": self.slack1,
            "slack2": self.slack2,
            "constraints_ok": self.constraints_ok,
            "min_slack": self.min_slack,
            "index": self.index,
            "refined": self.refined,
        }
        if self.reverified:
            doc["reverify"] = {
                "slack1_upper": self.slack1_upper,
                "slack2_upper": self.slack2_upper,
            }
        return doc


@dataclass
class SearchReport:
    mode: SearchMode
    seed: int
    samples: int
    record_top: int
    refine_steps: int
    totals: dict
    violations: list[CandidateRecord]
    near_misses: list[CandidateRecord]

    @property
    def outcome(self) -> str:
        if self.violations:
            return "violations found - re-verified"
        if self.mode is SearchMode.OPEN_PROBLEM:
            return "no violations (consistent with open status)"
        return "no violations"

    def to_report_dict(self) -> dict:
        return {
            "mode": self.mode.value,
            "seed": self.seed,
            "samples": self.samples,
            "record_top": self.record_top,
            "refine_steps": self.refine_steps,
            "outcome": self.outcome,
            "totals": self.totals,
            "violations": [c.to_dict() for c in self.violations],
            "near_misses": [c.to_dict() for c in self.near_misses],
        }


def shard_rng(seed: int, shard_index: int) -> np.random.Generator:
    """The documented seed-splitting function: PCG64(SeedSequence([seed, i]))."""
    ss = np.random.SeedSequence([seed & (2**64 - 1), shard_index])
    return np.random.Generator(np.random.PCG64(ss))


def sample_triangle(rng: np.random.Generator) -> SideTriple:
    """One triangle with c = 1 and (a, b) uniform over the normalized domain.

    Rejection from the unit square; the acceptance region has area 1/4.
    """
    while True:
        u = rng.random()
        v = rng.random()
        if 0.0 < u <= v and u + v > 1.0:
            return SideTriple(u, v, 1.0)


def constraint_filter(t: SideTriple, cv: CevianTriple) -> bool:
    """Open-problem conditions: la >= lb >= lc and b*lb >= max(a*la, c*lc)."""
    pb = t.b * cv.lb
    return (
        cv.la >= cv.lb >= cv.lc
        and pb >= t.a * cv.la
        and pb >= t.c * cv.lc
    )


def evaluate_candidate(
    t: SideTriple, p: GeneralCevianParams, index: int = -1
) -> CandidateRecord:
    """Evaluate both target slacks and the constraints for one candidate."""
    cv = general_cevians(t, p)
    r1, r2 = open_problem_slacks(t, cv)
    s1, s2 = r1.value, r2.value
    return CandidateRecord(
        sides=t,
        feet=p,
        cevians=cv,
        slack1=s1,
        slack2=s2,
        constraints_ok=constraint_filter(t, cv),
        min_slack=min(s1, s2),
        index=index,
    )


def reverify_candidate(cand: CandidateRecord) -> CandidateRecord:
    """Re-evaluate both slacks in outward-rounded interval arithmetic.

    The candidate's binary64 coordinates are treated as exact point
    intervals; a violation is confirmed only when an interval upper bound
    is negative.
    """
    a = Interval.point(cand.sides.a)
    b = Interval.point(cand.sides.b)
    c = Interval.point(cand.sides.c)
    one = Interval.point(1.0)

    def cevian_sq(u: Interval, v: Interval, w: Interval, t: float) -> Interval:
        # Stewart: v^2*t + w^2*(1-t) - u^2*t*(1-t) for the vertex opposite u
        it = Interval.point(t)
        rem = one - it
        return v * v * it + w * w * rem - u * u * it * rem

    da = cevian_sq(a, b, c, cand.feet.ta).sqrt()
    db = cevian_sq(b, c, a, cand.feet.tb).sqrt()
    dc = cevian_sq(c, a, b, cand.feet.tc).sqrt()

    s1 = ((b * c).sqrt() - a) * da + ((a * c).sqrt() - b) * db + ((a * b).sqrt() - c) * dc
    s2 = (b * c - a * a) * da + (a * c - b * b) * db + (a * b - c * c) * dc
    return replace(
        cand,
        reverified=True,
        slack1_upper=s1.hi,
        slack2_upper=s2.hi,
    )


def is_confirmed_violation(cand: CandidateRecord) -> bool:
    return cand.reverified and (
        (cand.slack1_upper is not None and cand.slack1_upper < 0.0)
        or (cand.slack2_upper is not None and cand.slack2_upper < 0.0)
    )


def refine(
    cand: CandidateRecord,
    steps: int,
    mode: SearchMode = SearchMode.UNCONSTRAINED,
    foot_margin: float = 1e-4,
) -> CandidateRecord:
    """Derivative-free local descent on min_slack.

    Coordinate-wise pattern search over (x, y, ta, tb, tc) with halving
    steps; c stays pinned at the candidate's own longest side.  Moves that
    leave the triangle domain or the foot range are rejected, and in
    open-problem mode moves that break the constraints are rejected too,
    so the result never has larger min_slack than the input.
    """
    if steps <= 0:
        return cand

    c0 = cand.sides.c
    vec = [
        cand.sides.a / c0,
        cand.sides.b / c0,
        cand.feet.ta,
        cand.feet.tb,
        cand.feet.tc,
    ]

    def build(v: list[float]) -> CandidateRecord | None:
        x, y, ta, tb, tc = v
        if not (x <= y <= 1.0):
            return None
        for tt in (ta, tb, tc):
            if not (foot_margin <= tt <= 1.0 - foot_margin):
                return None
        try:
            t = validate_sides(x * c0, y * c0, c0)
            probe = evaluate_candidate(t, GeneralCevianParams(ta, tb, tc),
                                       cand.index)
        except (CevianError, ValueError):
            return None
        if t.c != c0 or t.a != x * c0:  # sorting changed roles; reject
            return None
        if mode is SearchMode.OPEN_PROBLEM and not probe.constraints_ok:
            return None
        return probe

    best = cand
    step = 0.05
    for _ in range(steps):
        improved = False
        for i in range(5):
            for sgn in (1.0, -1.0):
                trial = list(vec)
                trial[i] += sgn * step
                probe = build(trial)
                if probe is not None and probe.min_slack < best.min_slack:
                    best = probe
                    vec = trial
                    improved = True
        if not improved:
            step *= 0.5
            if step < 1e-12:
                break
    if best is cand:
        return cand
    return replace(best, refined=True)


def _run_shard(
    seed: int,
    shard_index: int,
    start: int,
    count: int,
    record_top: int,
    foot_margin: float,
) -> dict:
    rng = shard_rng(seed, shard_index)
    x, y = bulk.sample_normalized_points(rng, count)
    ta = rng.uniform(foot_margin, 1.0 - foot_margin, count)
    tb = rng.uniform(foot_margin, 1.0 - foot_margin, count)
    tc = rng.uniform(foot_margin, 1.0 - foot_margin, count)

    la, lb, lc = bulk.general_cevians_arrays(x, y, 1.0, ta, tb, tc)
    s1 = bulk.slack_main_arrays(x, y, 1.0, la, lb, lc)
    s2 = bulk.slack_quadratic_arrays(x, y, 1.0, la, lb, lc)
    ok = bulk.constraint_mask_arrays(x, y, 1.0, la, lb, lc)
    ms = np.minimum(s1, s2)
    idx = start + np.arange(count, dtype=np.int64)

    def top(mask: np.ndarray) -> dict:
        sel = np.flatnonzero(mask)
        order = sel[np.argsort(ms[sel], kind="stable")][:record_top]
        return {
            "idx": idx[order],
            "x": x[order],
            "y": y[order],
            "ta": ta[order],
            "tb": tb[order],
            "tc": tc[order],
            "ms": ms[order],
        }

    everything = np.ones(count, dtype=bool)
    return {
        "sampled": count,
        "constraint_satisfying": int(ok.sum()),
        "raw_negative": int((ms < 0.0).sum()),
        "constrained_negative": int((ok & (ms < 0.0)).sum()),
        "pool_any": top(everything),
        "pool_constrained": top(ok),
        "pool_frontier": top(ok & (ms >= 0.0)),
    }


def _merge_pool(pools: list[dict], record_top: int) -> list[tuple]:
    if not pools:
        return []
    ms = np.concatenate([p["ms"] for p in pools])
    idx = np.concatenate([p["idx"] for p in pools])
    if ms.size == 0:
        return []
    order = np.lexsort((idx, ms))[:record_top]
    out = []
    xs = np.concatenate([p["x"] for p in pools])
    ys = np.concatenate([p["y"] for p in pools])
    tas = np.concatenate([p["ta"] for p in pools])
    tbs = np.concatenate([p["tb"] for p in pools])
    tcs = np.concatenate([p["tc"] for p in pools])
    for i in order:
        out.append((int(idx[i]), float(xs[i]), float(ys[i]),
                    float(tas[i]), float(tbs[i]), float(tcs[i])))
    return out


def _records_from_pool(rows: list[tuple]) -> list[CandidateRecord]:
    records = []
    for idx, x, y, ta, tb, tc in rows:
        t = validate_sides(x, y, 1.0)
        records.append(evaluate_candidate(t, GeneralCevianParams(ta, tb, tc), idx))
    return records


def search(cfg: SearchConfig) -> SearchReport:
    """Sharded sampling plus refinement and rigorous re-verification.

    Unconstrained mode reports the most negative re-verified violations;
    open-problem mode considers only constraint-satisfying candidates and
    reports the near-miss frontier (an empty violation list is the
    expected outcome there).
    """
    shards = []
    start = 0
    i = 0
    while start < cfg.samples:
        count = min(SHARD_SIZE, cfg.samples - start)
        shards.append((i, start, count))
        start += count
        i += 1

    def run(spec):
        shard_index, shard_start, count = spec
        return _run_shard(cfg.seed, shard_index, shard_start, count,
                          cfg.record_top, cfg.foot_margin)

    if cfg.workers == 1 or len(shards) == 1:
        results = [run(s) for s in shards]
    else:
        with ThreadPoolExecutor(max_workers=cfg.workers) as pool:
            results = list(pool.map(run, shards))

    totals = {
        "sampled": sum(r["sampled"] for r in results),
        "constraint_satisfying": sum(r["constraint_satisfying"] for r in results),
        "raw_negative": sum(r["raw_negative"] for r in results),
        "constrained_negative": sum(r["constrained_negative"] for r in results),
    }

    pool_any = _merge_pool([r["pool_any"] for r in results], cfg.record_top)
    pool_constrained = _merge_pool(
        [r["pool_constrained"] for r in results], cfg.record_top
    )
    pool_frontier = _merge_pool(
        [r["pool_frontier"] for r in results], cfg.record_top
    )

    if cfg.mode is SearchMode.UNCONSTRAINED:
        candidates = _records_from_pool(pool_any)
    else:
        candidates = _records_from_pool(pool_constrained)

    refined = [
        refine(c, cfg.refine_steps, cfg.mode, cfg.foot_margin)
        if c.min_slack < 0.0 or cfg.mode is SearchMode.OPEN_PROBLEM
        else c
        for c in candidates
    ]

    violations: list[CandidateRecord] = []
    survivors: list[CandidateRecord] = []
    for cand in refined:
        if cand.min_slack < 0.0:
            checked = reverify_candidate(cand)
            if is_confirmed_violation(checked):
                violations.append(checked)
            else:
                survivors.append(checked)
        else:
            survivors.append(cand)

    violations.sort(key=lambda c: (c.min_slack, c.index))
    violations = violations[: cfg.record_top]

    # Near-miss frontier: constraint-satisfying survivors plus the smallest
    # nonnegative constrained candidates from sampling; confirmed violations
    # never appear here.
    taken = {c.index for c in violations}
    near: list[CandidateRecord] = []
    for cand in [c for c in survivors if c.constraints_ok] + _records_from_pool(
        pool_frontier
    ):
        if cand.index in taken:
            continue
        taken.add(cand.index)
        near.append(cand)
    near.sort(key=lambda c: (c.min_slack, c.index))
    near = near[: cfg.record_top]

    totals["candidates_considered"] = len(candidates)
    totals["reverified_violations"] = len(violations)

    return SearchReport(
        mode=cfg.mode,
        seed=cfg.seed,
        samples=cfg.samples,
        record_top=cfg.record_top,
        refine_steps=cfg.refine_steps,
        totals=totals,
        violations=violations,
        near_misses=near,
    )
