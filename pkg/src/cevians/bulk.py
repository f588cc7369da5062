"""Vectorized (NumPy) twins of the scalar kernel and slack evaluators.

Each formula here is written with exactly the same operation tree as its
scalar counterpart, so results agree bit-for-bit with the typed API; the
agreement is pinned by tests.  These functions power the million-sample
property sweeps, the randomized search, and grid generation.  Inputs are
arrays of sorted sides (a <= b <= c elementwise); no validation happens
here.
"""

from __future__ import annotations

import numpy as np


def in_normalized_domain(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Mask of points inside {0 < x <= y <= 1, x + y > 1}."""
    return (x > 0.0) & (x <= y) & (y <= 1.0) & (x + y > 1.0)


def sample_normalized_points(
    rng: np.random.Generator, n: int
) -> tuple[np.ndarray, np.ndarray]:
    """Sample n points uniformly over the normalized domain.

    Rejection from the unit square; the acceptance region is the triangle
    with vertices (0,1), (1,1), (1/2,1/2), area 1/4.  Deterministic for a
    given generator state.
    """
    xs = np.empty(n)
    ys = np.empty(n)
    filled = 0
    while filled < n:
        batch = max(4 * (n - filled), 4096)
        u = rng.random(batch)
        v = rng.random(batch)
        ok = in_normalized_domain(u, v)
        take = min(int(ok.sum()), n - filled)
        xs[filled : filled + take] = u[ok][:take]
        ys[filled : filled + take] = v[ok][:take]
        filled += take
    return xs, ys


def medians_arrays(a, b, c):
    ma = 0.5 * np.sqrt(2.0 * b * b + 2.0 * c * c - a * a)
    mb = 0.5 * np.sqrt(2.0 * a * a + 2.0 * c * c - b * b)
    mc = 0.5 * np.sqrt(2.0 * a * a + 2.0 * b * b - c * c)
    return ma, mb, mc


def heron_area_arrays(a, b, c):
    p, q, r = c, b, a  # descending
    return 0.25 * np.sqrt(
        (p + (q + r)) * (r - (p - q)) * (r + (p - q)) * (p + (q - r))
    )


def altitudes_arrays(a, b, c):
    twice_area = 2.0 * heron_area_arrays(a, b, c)
    return twice_area / a, twice_area / b, twice_area / c


def bisectors_arrays(a, b, c):
    per = a + b + c
    la = np.sqrt(b * c * per * (b + c - a)) / (b + c)
    lb = np.sqrt(a * c * per * (a + c - b)) / (a + c)
    lc = np.sqrt(a * b * per * (a + b - c)) / (a + b)
    return la, lb, lc


def general_cevians_arrays(a, b, c, ta, tb, tc):
    da = np.sqrt(b * b * ta + c * c * (1.0 - ta) - a * a * ta * (1.0 - ta))
    db = np.sqrt(c * c * tb + a * a * (1.0 - tb) - b * b * tb * (1.0 - tb))
    dc = np.sqrt(a * a * tc + b * b * (1.0 - tc) - c * c * tc * (1.0 - tc))
    return da, db, dc


def slack_main_arrays(a, b, c, la, lb, lc):
    return (
        np.sqrt(b * c) * la
        + np.sqrt(a * c) * lb
        + np.sqrt(a * b) * lc
        - (a * la + b * lb + c * lc)
    )


def slack_quadratic_arrays(a, b, c, la, lb, lc):
    return (b * c - a * a) * la + (a * c - b * b) * lb + (a * b - c * c) * lc


def key_residual_arrays(a, b, c, ma, mb, mc):
    r1 = c * mb + b * mc - 2.0 * a * ma
    r2 = a * mc + c * ma - 2.0 * b * mb
    r3 = a * mb + b * ma - 2.0 * c * mc
    return r1, r2, r3


def lemma_scalene_arrays(a, b, c, ma, mb, mc):
    return np.sqrt(b * c) * ma + np.sqrt(a * c) * mb - b * mb - c * mc


def bisector_ratio_arrays(a, b, c, la, lb):
    return la / lb - (c + b - a) / c


def bisector_sqrt_chain_arrays(a, c, la, lc):
    return np.sqrt(a) * la - np.sqrt(c) * lc


def normalized_slack_arrays(x, y):
    """The two-variable normalized main slack F over arrays of points.

    Grouped like the scalar evaluator and the certifier expression, so all
    three paths agree bit-for-bit and the slack vanishes exactly at (1, 1).
    """
    x2 = x * x
    y2 = y * y
    ra = np.sqrt(((y2 + y2) + 2.0) - x2)
    rb = np.sqrt(((x2 + x2) + 2.0) - y2)
    rc = np.sqrt(((x2 + x2) + (y2 + y2)) - 1.0)
    return (
        ra * (np.sqrt(y) - x)
        + rb * (np.sqrt(x) - y)
        + rc * (np.sqrt(x * y) - 1.0)
    )


def constraint_mask_arrays(a, b, c, la, lb, lc):
    """Open-problem constraint mask: la >= lb >= lc and b*lb >= max(a*la, c*lc)."""
    pb = b * lb
    return (la >= lb) & (lb >= lc) & (pb >= a * la) & (pb >= c * lc)
