"""Baseline geometry: tolerance, coverage and the neighborhood predicate.

A hypothesis line may only be assigned to a ground-truth line when its
baseline covers some part of the ground-truth baseline within a tolerance.
The tolerance shrinks where ground-truth lines are densely packed.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Sequence, Tuple

import numpy as np

from .types import ConfigurationError, Line, MeasureConfig, Page

# Smallest tolerance ever used; touching ground-truth baselines would give 0.
MIN_TOLERANCE = 1.0

Point = Tuple[float, float]


@dataclass(frozen=True)
class Baseline:
    points: Tuple[Point, ...]

    def __post_init__(self):
        pts = [tuple(float(c) for c in p) for p in self.points]
        if not pts:
            raise ConfigurationError("a baseline needs at least one point")
        dedup = [pts[0]] + [q for p, q in zip(pts, pts[1:]) if q != p]
        object.__setattr__(self, "points", tuple(dedup))

    @classmethod
    def of(cls, points) -> "Baseline":
        return points if isinstance(points, Baseline) else cls(tuple(points))

    def array(self) -> np.ndarray:
        return np.asarray(self.points, dtype=float).reshape(-1, 2)

    @property
    def length(self) -> float:
        a = self.array()
        return float(np.hypot(*np.diff(a, axis=0).T).sum()) if len(a) > 1 else 0.0


def _segments(a: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    if len(a) == 1:
        return a, a
    return a[:-1], a[1:]


def point_polyline_distance(points: np.ndarray, polyline: np.ndarray) -> np.ndarray:
    """Euclidean distance of every point to the nearest segment of ``polyline``."""
    p0, p1 = _segments(polyline)
    d = p1 - p0  # (S, 2)
    dd = (d * d).sum(axis=1)
    rel = points[:, None, :] - p0[None, :, :]  # (P, S, 2)
    with np.errstate(invalid="ignore", divide="ignore"):
        t = np.where(dd > 0, (rel * d[None]).sum(axis=2) / np.where(dd > 0, dd, 1), 0.0)
    t = np.clip(t, 0.0, 1.0)
    nearest = p0[None] + t[..., None] * d[None]
    return np.hypot(*(points[:, None, :] - nearest).transpose(2, 0, 1)).min(axis=1)


def _cross(o, a, b) -> float:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _segments_intersect(p, q, r, s) -> bool:
    d1, d2 = _cross(r, s, p), _cross(r, s, q)
    d3, d4 = _cross(p, q, r), _cross(p, q, s)
    return ((d1 > 0) != (d2 > 0) and d1 != 0 and d2 != 0) and ((d3 > 0) != (d4 > 0) and d3 != 0 and d4 != 0)


def polyline_distance(a: Baseline, b: Baseline) -> float:
    """Minimum distance between two polylines."""
    pa, pb = a.array(), b.array()
    # Without a proper crossing the minimum is attained at some vertex.
    best = min(point_polyline_distance(pa, pb).min(), point_polyline_distance(pb, pa).min())
    if best > 0 and len(pa) > 1 and len(pb) > 1:
        for p, q in zip(pa, pa[1:]):
            for r, s in zip(pb, pb[1:]):
                if _segments_intersect(p, q, r, s):
                    return 0.0
    return float(best)


def tolerance(gt_baselines: Sequence, x: int, config: MeasureConfig = MeasureConfig()) -> float:
    """Tolerance in pixels for ground-truth line ``x``."""
    if not 0 <= x < len(gt_baselines):
        raise IndexError(f"ground-truth index {x} out of range")
    own = Baseline.of(gt_baselines[x])
    others = [Baseline.of(b) for k, b in enumerate(gt_baselines) if k != x]
    if not others:
        return float(config.tolerance_cap)
    near = min(polyline_distance(own, other) for other in others)
    return max(min(config.tolerance_fraction * near, config.tolerance_cap), MIN_TOLERANCE)


def resample(baseline: Baseline, step: float = 1.0) -> np.ndarray:
    """Points along the polyline every ``step`` pixels of arc length, ends included."""
    a = baseline.array()
    if len(a) == 1:
        return a
    seg = np.hypot(*np.diff(a, axis=0).T)
    cum = np.concatenate([[0.0], np.cumsum(seg)])
    total = cum[-1]
    s = np.arange(0.0, total + 1e-9, step)
    if total - s[-1] > 1e-9:
        s = np.append(s, total)
    return np.column_stack([np.interp(s, cum, a[:, 0]), np.interp(s, cum, a[:, 1])])


def coverage(hyp_baseline, gt_baseline, tol: float) -> float:
    """Fraction of the ground-truth baseline lying within ``tol`` of the hypothesis baseline."""
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    samples = resample(Baseline.of(gt_baseline))
    d = point_polyline_distance(samples, Baseline.of(hyp_baseline).array())
    return float(np.count_nonzero(d <= tol)) / len(samples)


def is_neighbor(hyp_line: Line, gt_line: Line, gt_baselines: Sequence, x: int,
                config: MeasureConfig = MeasureConfig()) -> bool:
    if hyp_line.baseline is None or gt_line.baseline is None:
        raise ConfigurationError("geometry needs a baseline on every line")
    return coverage(hyp_line.baseline, gt_line.baseline, tolerance(gt_baselines, x, config)) > 0


def neighborhood(hyp: Page, gt: Page, config: MeasureConfig = MeasureConfig()) -> Callable[[int, int], bool]:
    """Predicate ``(hyp line, gt line) -> bool`` for a page pair, cached per pair."""
    missing = [f"{side} line {k}" for side, page in (("hypothesis", hyp), ("ground-truth", gt))
               for k, line in enumerate(page.lines) if line.baseline is None]
    if missing:
        raise ConfigurationError("geometry needs baselines; missing on " + ", ".join(missing[:5]))
    gt_bl = [Baseline.of(line.baseline) for line in gt.lines]
    hyp_bl = [Baseline.of(line.baseline) for line in hyp.lines]
    tols: list = [None] * len(gt_bl)
    cache: dict = {}

    def accept(y: int, x: int) -> bool:
        key = (y, x)
        ok: Optional[bool] = cache.get(key)
        if ok is None:
            if tols[x] is None:
                tols[x] = tolerance(gt_bl, x, config)
            ok = cache[key] = coverage(hyp_bl[y], gt_bl[x], tols[x]) > 0
        return ok

    return accept
