"""Formal complexity: convexity, angle dispersion, and branching."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..config import MetricsConfig
from ..stack import LayerStack
from .geometry import convex_hull, interior_angles, perimeter

__all__ = ["ComplexityReport", "convexity", "quartile_dispersion",
           "splitting_score", "complexity"]


@dataclass
class ComplexityReport:
    c_avg: float
    Q_avg: float
    S: float
    C: float

    def to_dict(self) -> dict:
        return {"c_avg": self.c_avg, "Q_avg": self.Q_avg, "S": self.S, "C": self.C}


def convexity(ring) -> float:
    """c = hull perimeter / boundary perimeter; 1 exactly for convex rings."""
    p = perimeter(ring)
    if p == 0.0:
        raise ValueError("convexity of a zero-perimeter polygon")
    return perimeter(convex_hull(ring)) / p


def quartile_dispersion(angles) -> float:
    """Quartile coefficient of dispersion, Q = (q3 - q1)/(q3 + q1), with
    type-7 (linear interpolation) quartiles. Fewer than 4 angles: Q = 0."""
    a = np.sort(np.asarray(angles, dtype=float))
    n = len(a)
    if n < 4:
        return 0.0

    def quantile(p: float) -> float:  # type-7: linear interpolation
        h = (n - 1) * p
        lo = int(h)
        hi = min(lo + 1, n - 1)
        return float(a[lo] + (h - lo) * (a[hi] - a[lo]))

    q1, q3 = quantile(0.25), quantile(0.75)
    if q1 + q3 == 0.0:
        return 0.0
    return float((q3 - q1) / (q3 + q1))


def splitting_score(n_s: int, d: float) -> float:
    """S = d^(1/(1+n_s)); strictly increasing in the split count."""
    if n_s < 0:
        raise ValueError("n_s must be >= 0")
    return d ** (1.0 / (1.0 + n_s))


def complexity(stack: LayerStack, cfg: MetricsConfig) -> ComplexityReport:
    cs, qs = [], []
    for snap in stack.layers:
        for ring in snap.polygons:
            if len(ring) < 3:
                continue
            p = perimeter(ring)
            if p == 0.0:
                continue
            cs.append(perimeter(convex_hull(ring)) / p)
            qs.append(quartile_dispersion(interior_angles(ring)))
    if not cs:
        return ComplexityReport(c_avg=0.0, Q_avg=0.0, S=0.0, C=0.0)
    c_avg = float(np.mean(cs))
    q_avg = float(np.mean(qs))
    s = splitting_score(stack.n_s, cfg.d)
    return ComplexityReport(c_avg=c_avg, Q_avg=q_avg, S=s, C=(c_avg + q_avg + s) / 3.0)
