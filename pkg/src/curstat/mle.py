"""Distribution-function MLE for current status data.

Each subject contributes an inspection time ``t`` and an indicator
``delta`` for whether the event had already happened at ``t``.  The
log likelihood of a candidate distribution F,

    sum_i [ delta_i * log F(t_i) + (1 - delta_i) * log(1 - F(t_i)) ],

is maximized over all distribution functions by a step function whose
value at the i-th order statistic is the left slope of the greatest
convex minorant of the cumulative sum diagram

    P_0 = (0, 0),   P_i = (i/n, (1/n) * sum_{j<=i} delta_(j)),

with tied inspection times collapsed into weighted groups.  The minorant
is computed by a monotone-chain scan; on diagrams built from integer
counts the turn tests use exact integer arithmetic, so no tie-breaking
depends on floating point.  The same scan doubles as a weighted isotonic
regression solver (:func:`pava` is its algebraic dual and the two are
cross-checked in the test suite).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    BadIndicator,
    EmptySample,
    InputError,
    LengthMismatch,
    NegativeTime,
    NonpositiveWeight,
)

__all__ = [
    "ObservedSample",
    "CusumDiagram",
    "StepDistribution",
    "build_sample",
    "cusum",
    "gcm_left_slopes",
    "fit_mle",
    "pava",
    "pava_blocks",
]


@dataclass(frozen=True)
class ObservedSample:
    """Current status observations grouped by distinct inspection time.

    Attributes
    ----------
    times : ndarray
        Strictly increasing distinct inspection times.
    counts : ndarray
        Number of observations at each time (int, >= 1).
    ones : ndarray
        Number of those with indicator 1 (int, 0 <= ones <= counts).
    """

    times: np.ndarray
    counts: np.ndarray
    ones: np.ndarray

    @property
    def n(self) -> int:
        """Total number of observations."""
        return int(self.counts.sum())


def build_sample(records) -> ObservedSample:
    """Validate and group raw ``(time, indicator)`` records.

    Parameters
    ----------
    records : array-like
        Sequence of pairs, or an (n, 2) array, column 0 the inspection
        times and column 1 the 0/1 status indicators.

    Raises
    ------
    EmptySample, NegativeTime, BadIndicator
    """
    arr = np.asarray(records, dtype=float)
    if arr.size == 0:
        raise EmptySample("no observations supplied")
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise InputError(f"records must be pairs (time, indicator), got shape {arr.shape}")
    t = arr[:, 0]
    d = arr[:, 1]
    if not np.all(np.isfinite(t)) or np.any(t < 0):
        bad = int(np.argmax(~(np.isfinite(t) & (t >= 0))))
        raise NegativeTime(f"record {bad}: time must be finite and >= 0, got {t[bad]}")
    if not np.all((d == 0.0) | (d == 1.0)):
        bad = int(np.argmax(~((d == 0.0) | (d == 1.0))))
        raise BadIndicator(f"record {bad}: indicator must be 0 or 1, got {d[bad]}")
    times, inverse = np.unique(t, return_inverse=True)
    counts = np.bincount(inverse, minlength=len(times))
    ones = np.bincount(inverse, weights=d, minlength=len(times))
    return ObservedSample(
        times=times,
        counts=counts.astype(np.int64),
        ones=np.round(ones).astype(np.int64),
    )


@dataclass(frozen=True)
class CusumDiagram:
    """Cumulative sum diagram; point 0 is the origin.

    ``x``/``y`` are the normalized coordinates.  When the diagram comes
    from an :class:`ObservedSample`, ``cum_counts``/``cum_ones`` hold the
    raw integer cumulative counts so the minorant can be computed with
    exact arithmetic; they are None for generic weighted diagrams.
    """

    x: np.ndarray
    y: np.ndarray
    cum_counts: np.ndarray | None = None
    cum_ones: np.ndarray | None = None


def cusum(sample: ObservedSample) -> CusumDiagram:
    """Cumulative sum diagram of a grouped sample."""
    cc = np.concatenate(([0], np.cumsum(sample.counts)))
    co = np.concatenate(([0], np.cumsum(sample.ones)))
    n = cc[-1]
    return CusumDiagram(x=cc / n, y=co / n, cum_counts=cc, cum_ones=co)


def _lower_hull(x, y) -> list[int]:
    """Monotone-chain scan; returns vertex indices of the lower convex hull.

    Collinear middle points are dropped, so consecutive hull segments
    have strictly increasing slopes.
    """
    hull = [0]
    for i in range(1, len(x)):
        while len(hull) >= 2:
            o, a = hull[-2], hull[-1]
            # pop a if it lies on or above the chord from o to i
            if (x[a] - x[o]) * (y[i] - y[o]) - (y[a] - y[o]) * (x[i] - x[o]) <= 0:
                hull.pop()
            else:
                break
        hull.append(i)
    return hull


def gcm_left_slopes(diagram: CusumDiagram) -> np.ndarray:
    """Left slopes of the greatest convex minorant at each diagram point.

    Returns one slope per point ``P_1 .. P_m``: the slope of the minorant
    segment whose x-interval ends at (or covers) that point.  Slopes are
    nondecreasing by construction.
    """
    if diagram.cum_counts is not None:
        # exact integer turn tests
        x = [int(v) for v in diagram.cum_counts]
        y = [int(v) for v in diagram.cum_ones]
    else:
        x = diagram.x
        y = diagram.y
    hull = _lower_hull(x, y)
    seg_slopes = np.array(
        [(y[b] - y[a]) / (x[b] - x[a]) for a, b in zip(hull[:-1], hull[1:])]
    )
    reps = np.diff(hull)
    return np.repeat(seg_slopes, reps)


@dataclass(frozen=True)
class StepDistribution:
    """Right-continuous step function: the fitted distribution estimate.

    ``values[j]`` is the function value on ``[jump_times[j], jump_times[j+1])``;
    the value is 0 before the first jump and ``values[-1]`` from the last
    jump onward.  May be empty (the zero function).
    """

    jump_times: np.ndarray
    values: np.ndarray

    @property
    def masses(self) -> np.ndarray:
        """Probability mass at each jump."""
        if len(self.values) == 0:
            return np.empty(0)
        return np.diff(self.values, prepend=0.0)

    @property
    def total_mass(self) -> float:
        return float(self.values[-1]) if len(self.values) else 0.0

    def cdf(self, t):
        """Evaluate at scalar or array ``t``."""
        t = np.asarray(t, dtype=float)
        if len(self.values) == 0:
            out = np.zeros_like(t)
        else:
            idx = np.searchsorted(self.jump_times, t, side="right") - 1
            out = np.where(idx >= 0, self.values[np.clip(idx, 0, None)], 0.0)
        return out if out.ndim else float(out)


def fit_mle(sample: ObservedSample) -> StepDistribution:
    """Nonparametric MLE of the event-time distribution.

    The value at each observed time is the left slope of the greatest
    convex minorant of the cusum diagram; jumps sit where the slope
    increases.
    """
    slopes = gcm_left_slopes(cusum(sample))
    prev = np.concatenate(([0.0], slopes[:-1]))
    jump = slopes > prev
    return StepDistribution(jump_times=sample.times[jump], values=slopes[jump])


def pava_blocks(values, weights) -> tuple[np.ndarray, np.ndarray]:
    """Pool-adjacent-violators fit, returning the block structure.

    Returns
    -------
    fitted : ndarray
        The nondecreasing fit, one value per input entry.  Entries in
        singleton blocks keep their input value bit-for-bit, which
        makes the operator exactly idempotent.
    sizes : ndarray of int
        Sizes of the pooled blocks in order; ``sum(sizes) == len(values)``.

    Raises
    ------
    LengthMismatch
        If ``values`` and ``weights`` differ in length.
    NonpositiveWeight
        If any weight is <= 0.
    """
    v = np.asarray(values, dtype=float)
    w = np.asarray(weights, dtype=float)
    if v.ndim != 1 or w.ndim != 1 or v.shape != w.shape:
        raise LengthMismatch(f"values and weights must match, got {v.shape} and {w.shape}")
    if np.any(w <= 0.0):
        raise NonpositiveWeight("weights must be strictly positive")
    # per-block accumulators: weight sum, weighted value sum, size, mean
    bw: list[float] = []
    bwv: list[float] = []
    size: list[int] = []
    mean: list[float] = []
    for i in range(len(v)):
        cw, cwv, cs, cm = w[i], w[i] * v[i], 1, v[i]
        while mean and mean[-1] > cm:
            cw += bw.pop()
            cwv += bwv.pop()
            cs += size.pop()
            mean.pop()
            cm = cwv / cw
        bw.append(cw)
        bwv.append(cwv)
        size.append(cs)
        mean.append(cm)
    sizes = np.asarray(size, dtype=np.int64)
    return np.repeat(mean, sizes), sizes


def pava(values, weights) -> np.ndarray:
    """Weighted least-squares nondecreasing fit (pool adjacent violators).

    See :func:`pava_blocks`; this returns only the fitted values.
    """
    return pava_blocks(values, weights)[0]
