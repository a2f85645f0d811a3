"""Distribution, density, and hazard estimators for current status data.

Four families, increasingly structured:

* the step MLE itself (see :mod:`curstat.mle`),
* naive plug-in ratios of the smoothed measures,
* the monotonized MSLE, read off the lower convex hull of the
  continuous cumulative sum diagram built from the integrated smoothed
  measures,
* the SMLE, a kernel smoothing of the MLE's jump measure.

Hazards are compositions lambda = f / (1 - F) of the matching pair.

The naive ratio F = g1 / g is not monotone in finite samples and its
derivative can go negative; the hull step repairs exactly that.  Where
the hull touches its diagram the two coincide, so the MSLE density
equals the naive density there and vanishes on the interiors of pooled
segments.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import (
    DegenerateSupport,
    DensityFloorViolation,
    HazardDenominatorViolation,
    OutOfDomain,
)
from .kernels import Kernel, ScaledKernel
from .mle import StepDistribution, pava_blocks
from .smoothing import SmoothedMeasures

__all__ = [
    "G_FLOOR",
    "F_CEILING",
    "ConvexHullFit",
    "EstimateCurve",
    "naive_F",
    "naive_f",
    "naive_lambda",
    "fit_msle",
    "msle_F",
    "msle_f",
    "msle_lambda",
    "smle_F",
    "smle_f",
    "smle_lambda",
    "curve",
]

# Ratio estimators are only trustworthy where the smoothed censoring
# density is bounded away from zero; below this floor the point is
# outside the estimator's domain.
G_FLOOR = 1e-8

# Hazards blow up as F approaches 1; refuse the composition beyond
# this margin.
F_CEILING = 1e-6


def _as_array(t):
    arr = np.asarray(t, dtype=float)
    if arr.size and (not np.all(np.isfinite(arr)) or np.any(arr < 0.0)):
        raise OutOfDomain("evaluation points must be finite and nonnegative")
    return arr


def _shaped(values: np.ndarray, t):
    return float(values) if np.ndim(t) == 0 else values


# ---------------------------------------------------------------------------
# naive plug-in ratios


def naive_F(sm: SmoothedMeasures, t):
    """Plug-in ratio g1 / g of the smoothed measures.

    Raises
    ------
    DensityFloorViolation
        If the smoothed total density at some requested point is at or
        below the floor.
    """
    arr = _as_array(t)
    g = np.asarray(sm.eval("g", arr))
    if np.any(g <= G_FLOOR):
        bad = float(np.asarray(arr).flat[int(np.argmax(g <= G_FLOOR))])
        raise DensityFloorViolation(
            f"smoothed density {np.min(g):.3g} at t={bad:.6g} is below the floor {G_FLOOR}"
        )
    out = np.asarray(sm.eval("g1", arr)) / g
    return _shaped(out, t)


def naive_f(sm: SmoothedMeasures, t):
    """Derivative of the plug-in ratio: (g dg1 - dg g1) / g^2.

    May be negative; monotonization is the hull fit's job.
    """
    arr = _as_array(t)
    g = np.asarray(sm.eval("g", arr))
    if np.any(g <= G_FLOOR):
        bad = float(np.asarray(arr).flat[int(np.argmax(g <= G_FLOOR))])
        raise DensityFloorViolation(
            f"smoothed density {np.min(g):.3g} at t={bad:.6g} is below the floor {G_FLOOR}"
        )
    g1 = np.asarray(sm.eval("g1", arr))
    dg = np.asarray(sm.eval("dg", arr))
    dg1 = np.asarray(sm.eval("dg1", arr))
    out = (g * dg1 - dg * g1) / (g * g)
    return _shaped(out, t)


def naive_lambda(sm: SmoothedMeasures, t):
    """Hazard composition of the naive pair.

    Raises
    ------
    HazardDenominatorViolation
        If the naive distribution value is too close to 1.
    """
    F = np.asarray(naive_F(sm, _as_array(t)))
    if np.any(F >= 1.0 - F_CEILING):
        raise HazardDenominatorViolation(
            f"naive F reaches {float(np.max(F)):.9g}; hazard undefined that close to 1"
        )
    out = np.asarray(naive_f(sm, _as_array(t))) / (1.0 - F)
    return _shaped(out, t)


# ---------------------------------------------------------------------------
# monotonized (hull) estimator


@dataclass(frozen=True)
class ConvexHullFit:
    """Lower convex hull of the cumulative diagram of smoothed measures.

    The diagram point at grid node i is the rectangle-rule pair
    ``x_i = sum_{j<=i} g_j * dt``, ``y_i = sum_{j<=i} g1_j * dt`` with
    the origin prepended, so the hull's left slopes per active node are
    exactly the pooled means of the naive ratios with weights
    ``g_j * dt``.  Nodes with zero smoothed density contribute no
    diagram increment; the fitted distribution value is carried across
    them.

    Attributes
    ----------
    source : SmoothedMeasures
    ccsd_x, ccsd_y, ccsd_t : ndarray
        Diagram coordinates and their grid times, one entry per node.
    hull_vertices : ndarray of int
        Node indices where the hull touches the diagram (block ends;
        the origin is an implicit extra vertex).
    segment_slopes : ndarray
        Slope of each hull segment, nondecreasing.
    touch_mask : ndarray of bool
        Per node: the node is an active singleton block, i.e. the hull
        coincides with the diagram locally and the fitted value equals
        the naive ratio bit-for-bit.
    F_tab : ndarray
        Fitted distribution value per grid node.
    saturated : bool
        Whether the final slope reaches 1; when False the fit simply
        reports the final slope beyond the support.
    """

    source: SmoothedMeasures
    ccsd_x: np.ndarray
    ccsd_y: np.ndarray
    ccsd_t: np.ndarray
    hull_vertices: np.ndarray
    segment_slopes: np.ndarray
    touch_mask: np.ndarray
    F_tab: np.ndarray
    saturated: bool


def fit_msle(sm: SmoothedMeasures) -> ConvexHullFit:
    """Monotonize the naive ratio via the lower convex hull.

    Raises
    ------
    DegenerateSupport
        If the smoothed density vanishes at every grid node.
    """
    grid = sm.grid
    dt = sm.spacing
    w = sm.g * dt
    active = np.flatnonzero(w > 0.0)
    if active.size == 0:
        raise DegenerateSupport("smoothed density is zero everywhere on the grid")

    naive = sm.g1[active] / sm.g[active]
    fitted, sizes = pava_blocks(naive, w[active])

    ends = np.cumsum(sizes) - 1
    vertices = active[ends]
    slopes = fitted[ends]

    touch = np.zeros(grid.size, dtype=bool)
    touch[active[np.repeat(sizes == 1, sizes)]] = True

    F_tab = np.empty(grid.size)
    F_tab[active] = fitted
    # carry fitted values across inactive nodes; leading inactive nodes
    # sit before any diagram increment, where the right slope is the
    # first segment's
    pos = np.zeros(grid.size, dtype=np.int64)
    pos[active] = 1
    carry = np.maximum.accumulate(np.where(pos, np.arange(grid.size), -1))
    lead = carry < 0
    carry[lead] = active[0]
    F_tab = F_tab[carry]
    F_tab[lead] = fitted[0]

    return ConvexHullFit(
        source=sm,
        ccsd_x=np.cumsum(w),
        ccsd_y=np.cumsum(sm.g1 * dt),
        ccsd_t=grid,
        hull_vertices=vertices,
        segment_slopes=slopes,
        touch_mask=touch,
        F_tab=F_tab,
        saturated=bool(slopes[-1] >= 1.0 - 1e-9),
    )


def _node_index(fit: ConvexHullFit, arr: np.ndarray) -> np.ndarray:
    idx = np.searchsorted(fit.ccsd_t, arr, side="left")
    return np.minimum(idx, fit.ccsd_t.size - 1)


def msle_F(fit: ConvexHullFit, t):
    """Monotonized distribution estimate at ``t``.

    Beyond the tabulated grid the final value is carried (the fit's
    ``saturated`` flag records whether that value is 1).
    """
    arr = _as_array(t)
    out = fit.F_tab[_node_index(fit, arr)]
    return _shaped(out, t)


def msle_f(fit: ConvexHullFit, t):
    """Density of the monotonized estimate.

    Equal to the naive density where the hull touches its diagram and
    zero on pooled segments; at segment junctions the touching side
    wins.  Zero beyond the grid.
    """
    arr = _as_array(t)
    a = np.atleast_1d(arr)
    idx = np.searchsorted(fit.ccsd_t, a, side="left")
    inside = idx < fit.ccsd_t.size
    touched = np.zeros(a.shape, dtype=bool)
    touched[inside] = fit.touch_mask[idx[inside]]
    out = np.zeros(a.shape)
    if np.any(touched):
        out[touched] = np.asarray(naive_f(fit.source, a[touched]))
    out = out.reshape(np.shape(arr))
    return _shaped(out, t)


def msle_lambda(fit: ConvexHullFit, t):
    """Hazard composition of the monotonized pair."""
    F = np.asarray(msle_F(fit, t))
    if np.any(F >= 1.0 - F_CEILING):
        raise HazardDenominatorViolation(
            f"fitted F reaches {float(np.max(F)):.9g}; hazard undefined that close to 1"
        )
    out = np.asarray(msle_f(fit, t)) / (1.0 - F)
    return _shaped(out, t)


# ---------------------------------------------------------------------------
# smoothed MLE


def smle_F(mle: StepDistribution, kernel: Kernel, h: float, t):
    """Kernel-smoothed MLE distribution: sum of jump masses times the
    integrated kernel."""
    arr = _as_array(t)
    sk = ScaledKernel(kernel, h)
    taus = mle.jump_times
    if taus.size == 0:
        return _shaped(np.zeros(np.shape(arr)), t)
    diffs = np.atleast_1d(arr)[..., None] - taus[None, :]
    out = (sk.K_h(diffs) @ mle.masses).reshape(np.shape(arr))
    return _shaped(out, t)


def smle_f(mle: StepDistribution, kernel: Kernel, h: float, t):
    """Kernel-smoothed MLE density: sum of jump masses times the scaled
    kernel."""
    arr = _as_array(t)
    sk = ScaledKernel(kernel, h)
    taus = mle.jump_times
    if taus.size == 0:
        return _shaped(np.zeros(np.shape(arr)), t)
    diffs = np.atleast_1d(arr)[..., None] - taus[None, :]
    out = (sk.k_h(diffs) @ mle.masses).reshape(np.shape(arr))
    return _shaped(out, t)


def smle_lambda(mle: StepDistribution, kernel: Kernel, h: float, t):
    """Hazard composition of the smoothed MLE pair."""
    F = np.asarray(smle_F(mle, kernel, h, t))
    if np.any(F >= 1.0 - F_CEILING):
        raise HazardDenominatorViolation(
            f"smoothed F reaches {float(np.max(F)):.9g}; hazard undefined that close to 1"
        )
    out = np.asarray(smle_f(mle, kernel, h, t)) / (1.0 - F)
    return _shaped(out, t)


# ---------------------------------------------------------------------------
# uniform curve wrapper


@dataclass(frozen=True)
class EstimateCurve:
    """A named estimator curve with a stated evaluation domain.

    ``kind`` is one of mle, naive, msle, smle; ``target`` one of F, f,
    lambda.  ``h`` is None for the unsmoothed MLE.  Calling the curve
    evaluates it; points outside ``domain`` raise ``OutOfDomain``.
    """

    kind: str
    target: str
    h: float | None
    domain: tuple[float, float]
    _fn: Callable = field(repr=False)

    def __call__(self, t):
        arr = _as_array(t)
        lo, hi = self.domain
        if np.any(np.atleast_1d(arr) < lo) or np.any(np.atleast_1d(arr) > hi):
            raise OutOfDomain(
                f"{self.kind}/{self.target} curve is defined on [{lo:.6g}, {hi:.6g}]"
            )
        return self._fn(t)


def curve(kind: str, target: str, *, sm=None, fit=None, mle=None, kernel=None, h=None) -> EstimateCurve:
    """Bundle an estimator family and target into an evaluable curve.

    Supply the objects the family needs: ``sm`` for naive, ``fit`` for
    msle, ``mle`` (+ ``kernel`` + ``h``) for smle and mle.
    """
    if target not in ("F", "f", "lambda"):
        raise ValueError(f"unknown target {target!r}")
    big = np.inf
    if kind == "mle":
        if target != "F":
            raise ValueError("the step MLE only provides the distribution")
        return EstimateCurve("mle", "F", None, (0.0, big), lambda t: mle.cdf(t))
    if kind == "naive":
        fn = {"F": naive_F, "f": naive_f, "lambda": naive_lambda}[target]
        lo, hi = float(sm.grid[0]), float(sm.grid[-1])
        return EstimateCurve("naive", target, sm.h, (lo, hi), lambda t: fn(sm, t))
    if kind == "msle":
        fn = {"F": msle_F, "f": msle_f, "lambda": msle_lambda}[target]
        src = fit.source
        return EstimateCurve("msle", target, src.h, (0.0, big), lambda t: fn(fit, t))
    if kind == "smle":
        fn = {"F": smle_F, "f": smle_f, "lambda": smle_lambda}[target]
        return EstimateCurve(
            "smle", target, float(h), (0.0, big), lambda t: fn(mle, kernel, h, t)
        )
    raise ValueError(f"unknown estimator kind {kind!r}")
