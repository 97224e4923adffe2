"""Relative coverage: supported-canopy ratio minus first-layer footprint.

The environment is tiled grid_n x grid_n; a tile is supported when its
support score m (summed over top-layer organisms) reaches the threshold.
The footprint A is the environment fraction covered by the first layer.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from shapely.geometry import Polygon, box
from shapely.ops import unary_union

from ..config import M_CAP, MetricsConfig
from ..stack import LayerSnapshot, LayerStack
from .geometry import point_in_polygon, polygon_centroid, ray_boundary_distance

__all__ = ["CoverageReport", "tile_support", "relative_coverage", "first_layer_area_ratio"]


@dataclass
class CoverageReport:
    A: float
    R: float
    Rc: float
    tile_scores: list[list[float]] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "A": self.A,
            "R": self.R,
            "Rc": self.Rc,
            "tile_scores": [[round(v, 9) for v in row] for row in self.tile_scores],
        }


def _support_terms(points: np.ndarray, ring: np.ndarray) -> np.ndarray:
    """Support-score term r/d of one organism for many query points at once."""
    c = polygon_centroid(ring)
    rel = points - c
    d = np.hypot(rel[:, 0], rel[:, 1])
    terms = np.zeros(len(points))
    singular = d < 1e-12
    terms[singular] = M_CAP
    ok = ~singular
    if not ok.any():
        return terms
    dirs = rel[ok] / d[ok, None]

    a = np.asarray(ring, dtype=float)
    e = np.roll(a, -1, axis=0) - a
    dx = a[:, 0] - c[0]
    dy = a[:, 1] - c[1]
    # ray c + t*dir against every edge (Cramer), vectorized (points x edges)
    denom = -dirs[:, 0:1] * e[None, :, 1] + dirs[:, 1:2] * e[None, :, 0]
    with np.errstate(divide="ignore", invalid="ignore"):
        t = (-dx * e[:, 1] + dy * e[:, 0])[None, :] / denom
        s = (dirs[:, 0:1] * dy[None, :] - dirs[:, 1:2] * dx[None, :]) / denom
    valid = (np.abs(denom) > 1e-18) & (t > 1e-12) & (s >= -1e-12) & (s <= 1.0 + 1e-12)
    r = np.where(valid, t, np.inf).min(axis=1)

    # even-odd point-in-polygon, vectorized over the same (points x edges)
    y1 = a[:, 1][None, :]
    y2 = np.roll(a[:, 1], -1)[None, :]
    x1 = a[:, 0][None, :]
    px = points[ok][:, 0:1]
    py = points[ok][:, 1:2]
    straddle = (y1 > py) != (y2 > py)
    with np.errstate(divide="ignore", invalid="ignore"):
        xi = x1 + (py - y1) * e[None, :, 0] / e[None, :, 1]
    inside = ((straddle & (xi > px)).sum(axis=1) % 2).astype(bool)

    term = np.where(np.isfinite(r), r / d[ok], 0.0)
    term = np.where(inside, np.minimum(term, M_CAP), term)
    terms[ok] = term
    return terms


def tile_support(tile_centroid, top_layer: LayerSnapshot) -> float:
    """Support score m = sum over top-layer organisms of r_i/d_i.

    d_i: distance tile centroid to organism centroid. r_i: distance from
    the organism centroid to where the segment toward the tile centroid
    first crosses the organism boundary. Terms are capped at M_CAP where
    the formula is singular (tile inside the organism, or d_i ~ 0); rays
    that never cross the boundary contribute 0.
    """
    pts = np.asarray(tile_centroid, dtype=float).reshape(1, 2)
    return float(sum(_support_terms(pts, ring)[0] for ring in top_layer.polygons))


def first_layer_area_ratio(first: LayerSnapshot, env_size) -> float:
    """Union area of the first-layer polygons, clipped to the environment,
    over the environment area. Overlaps are not double counted."""
    if first.is_empty():
        return 0.0
    w, h = env_size
    env_box = box(0.0, 0.0, w, h)
    shapes = []
    for ring in first.polygons:
        if len(ring) < 3:
            continue
        poly = Polygon(ring)
        if not poly.is_valid:
            poly = poly.buffer(0)  # resolve self-intersections
        shapes.append(poly)
    if not shapes:
        return 0.0
    union = unary_union(shapes).intersection(env_box)
    return float(union.area) / (w * h)


def relative_coverage(stack: LayerStack, cfg: MetricsConfig) -> CoverageReport:
    w, h = stack.config.env_size
    g = cfg.grid_n
    top = stack.layers[-1] if stack.layers else LayerSnapshot()
    xs = (np.arange(g) + 0.5) * w / g
    ys = (np.arange(g) + 0.5) * h / g
    gx, gy = np.meshgrid(xs, ys)  # row j varies y, column i varies x
    centres = np.column_stack([gx.ravel(), gy.ravel()])
    m = np.zeros(len(centres))
    for ring in top.polygons:
        m += _support_terms(centres, ring)
    tile_scores = [list(map(float, row)) for row in m.reshape(g, g)]
    R = float((m >= cfg.support_threshold).sum()) / (g * g)
    first = stack.layers[0] if stack.layers else LayerSnapshot()
    A = first_layer_area_ratio(first, (w, h))
    return CoverageReport(A=A, R=R, Rc=R - A, tile_scores=tile_scores)
