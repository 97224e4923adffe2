"""Printability: can the stack be printed as a single unsupported strand?

Two conditions: every layer's convex hull must be at least min_width_mm
wide (gate; failing forces P = 0), and every layer must rest on the one
below it. Per-layer support is the mean over organisms of the supported
perimeter fraction Ps/Pt; the object score is the minimum over layers.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.spatial import cKDTree

from ..config import MetricsConfig
from ..stack import LayerSnapshot, LayerStack
from .geometry import convex_hull, min_width, perimeter

__all__ = ["PrintabilityReport", "layer_support", "printability"]


@dataclass
class PrintabilityReport:
    gate_pass: bool
    min_width_mm: float
    per_layer_P: list[float] = field(default_factory=list)
    P: float = 0.0

    def to_dict(self) -> dict:
        return {
            "gate_pass": self.gate_pass,
            "min_width_mm": self.min_width_mm,
            "per_layer_P": [round(v, 12) for v in self.per_layer_P],
            "P": self.P,
        }


def resample_ring(ring_mm: np.ndarray, spacing: float) -> np.ndarray:
    """Points along the closed ring at equal arc-length steps <= spacing."""
    closed = np.concatenate([ring_mm, ring_mm[:1]])
    seg = closed[1:] - closed[:-1]
    seg_len = np.hypot(seg[:, 0], seg[:, 1])
    total = seg_len.sum()
    if total == 0.0:
        return ring_mm[:1].copy()
    n = max(int(np.ceil(total / spacing)), len(ring_mm))
    targets = np.arange(n) * (total / n)
    cum = np.concatenate([[0.0], np.cumsum(seg_len)])
    idx = np.clip(np.searchsorted(cum, targets, side="right") - 1, 0, len(seg) - 1)
    frac = np.where(seg_len[idx] > 0, (targets - cum[idx]) / np.where(seg_len[idx] > 0, seg_len[idx], 1.0), 0.0)
    return closed[idx] + seg[idx] * frac[:, None]


class _PolylineDistance:
    """Exact point-to-polyline-set distance queries, KD-tree accelerated."""

    def __init__(self, rings_mm: list[np.ndarray], probe_spacing: float):
        seg_a, seg_b = [], []
        for ring in rings_mm:
            closed = np.concatenate([ring, ring[:1]])
            seg_a.append(closed[:-1])
            seg_b.append(closed[1:])
        self.seg_a = np.concatenate(seg_a)
        self.seg_b = np.concatenate(seg_b)
        lengths = np.hypot(*(self.seg_b - self.seg_a).T)
        counts = np.maximum(np.ceil(lengths / probe_spacing).astype(int), 1) + 1

        probe_pts, probe_seg = [], []
        for k in np.unique(counts):
            which = np.nonzero(counts == k)[0]
            a = self.seg_a[which]
            ab = self.seg_b[which] - a
            t = np.linspace(0.0, 1.0, k)
            pts = a[:, None, :] + ab[:, None, :] * t[None, :, None]
            probe_pts.append(pts.reshape(-1, 2))
            probe_seg.append(np.repeat(which, k))
        self.probe_seg = np.concatenate(probe_seg)
        self.tree = cKDTree(np.concatenate(probe_pts))
        self.probe_spacing = probe_spacing

    def within(self, points: np.ndarray, threshold: float) -> np.ndarray:
        """Boolean mask: distance from point to any polyline <= threshold."""
        # probe points lie on the polylines at probe_spacing steps, so the
        # nearest-probe distance brackets the true distance within
        # probe_spacing/2; only the ambiguous band needs exact tests.
        # distances beyond the band are irrelevant, so bound the search
        ub = np.nextafter(threshold + self.probe_spacing / 2, np.inf)
        d_probe, _ = self.tree.query(points, distance_upper_bound=ub)
        out = d_probe <= threshold
        ambiguous = np.nonzero(
            (d_probe > threshold) & (d_probe <= threshold + self.probe_spacing / 2)
        )[0]
        if len(ambiguous) == 0:
            return out
        pts = points[ambiguous]
        hits = self.tree.query_ball_point(pts, threshold + self.probe_spacing)
        counts = np.array([len(h) for h in hits])
        if not counts.any():
            return out
        segs = self.probe_seg[np.concatenate([h for h in hits if h])]
        group = np.repeat(np.arange(len(pts)), counts)
        # exact point-to-segment distance for every candidate pair
        a = self.seg_a[segs]
        ab = self.seg_b[segs] - a
        ap = pts[group] - a
        denom = (ab * ab).sum(axis=1)
        t = np.where(denom > 0, (ap * ab).sum(axis=1) / np.where(denom > 0, denom, 1.0), 0.0)
        foot = a + ab * np.clip(t, 0.0, 1.0)[:, None]
        d = np.hypot(*(pts[group] - foot).T)
        close = d <= threshold
        out[ambiguous[group[close]]] = True
        return out


MAX_SUPPORT_SAMPLES = 5000   # per-ring cap on boundary samples


def layer_support(layer: LayerSnapshot, below: LayerSnapshot, delta: float,
                  unit_to_mm: float) -> list[float]:
    """Supported perimeter fraction Ps/Pt per organism in `layer`.

    A boundary sample is supported when it lies within delta of the band
    swept by the below-layer contours (each contour thickened to width
    delta), i.e. within 1.5*delta of a below-layer polyline.
    """
    if layer.is_empty():
        return []
    if below.is_empty():
        return [0.0 for _ in layer.polygons]
    below_mm = [np.asarray(r, dtype=float) * unit_to_mm for r in below.polygons]
    # probe density only affects speed: within() resolves the ambiguous
    # band with exact segment distances, so any spacing stays exact
    index = _PolylineDistance(below_mm, probe_spacing=delta)
    threshold = 1.5 * delta
    out = []
    for ring in layer.polygons:
        ring_mm = np.asarray(ring, dtype=float) * unit_to_mm
        per = perimeter(ring_mm)
        if per == 0.0:
            out.append(0.0)
            continue
        # the supported fraction is a sample mean, so extremely long
        # (metres of contour) degenerate rings can be sampled coarser
        # without changing the estimate; caps worst-case cost
        spacing = max(delta / 2, per / MAX_SUPPORT_SAMPLES)
        samples = resample_ring(ring_mm, spacing)
        supported = index.within(samples, threshold)
        out.append(float(supported.mean()))
    return out


def printability(stack: LayerStack, cfg: MetricsConfig) -> PrintabilityReport:
    unit_to_mm = stack.config.unit_to_mm
    narrowest = np.inf
    gate_pass = True
    for snap in stack.layers:
        if snap.is_empty():
            gate_pass = False
            narrowest = 0.0
            break
        verts = np.concatenate(snap.polygons)
        w = min_width(convex_hull(verts)) * unit_to_mm
        narrowest = min(narrowest, w)
        if w < cfg.min_width_mm:
            gate_pass = False

    per_layer = []
    for i, snap in enumerate(stack.layers):
        if i == 0:
            per_layer.append(1.0 if not snap.is_empty() else 0.0)
            continue
        values = layer_support(snap, stack.layers[i - 1],
                               cfg.support_tolerance, unit_to_mm)
        per_layer.append(float(np.mean(values)) if values else 0.0)

    if not gate_pass or not per_layer:
        final = 0.0
    else:
        final = float(min(per_layer))
    return PrintabilityReport(
        gate_pass=gate_pass,
        min_width_mm=float(narrowest) if np.isfinite(narrowest) else 0.0,
        per_layer_P=per_layer,
        P=final,
    )
