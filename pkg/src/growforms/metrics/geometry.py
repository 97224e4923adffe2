"""2D polygon primitives shared by the fitness metrics.

Polygons are (n, 2) float arrays of ring vertices; the closing edge from
the last vertex back to the first is implied. Rings may be non-simple
(self-intersecting); every function here tolerates that.
"""

from __future__ import annotations

import math

import numpy as np

__all__ = [
    "convex_hull",
    "min_width",
    "perimeter",
    "polygon_area",
    "polygon_centroid",
    "point_in_polygon",
    "interior_angles",
    "ray_boundary_distance",
]



def convex_hull(points) -> np.ndarray:
    """Convex hull in counter-clockwise order, collinear points dropped
    (Andrew's monotone chain)."""
    pts = np.asarray(points, dtype=float).reshape(-1, 2)
    if len(pts) == 0:
        raise ValueError("convex_hull of empty point set")
    if len(pts) >= 16:
        # prune points strictly inside the extreme-point quadrilateral;
        # they can never be hull vertices
        x, y = pts[:, 0], pts[:, 1]
        quad = pts[[x.argmin(), y.argmin(), x.argmax(), y.argmax()]]
        inside = np.ones(len(pts), dtype=bool)
        for i in range(4):
            ax, ay = quad[i]
            ex, ey = quad[(i + 1) % 4] - quad[i]
            inside &= ex * (y - ay) - ey * (x - ax) > 0.0
        if inside.any():
            pts = pts[~inside]
    raw = pts.tolist()
    raw.sort()
    uniq = [raw[0]]
    for p in raw[1:]:
        if p != uniq[-1]:
            uniq.append(p)
    if len(uniq) <= 2:
        return np.array(uniq)
    lower: list = []
    for px, py in uniq:
        while len(lower) >= 2:
            ax, ay = lower[-1]
            ox, oy = lower[-2]
            if (ax - ox) * (py - oy) - (ay - oy) * (px - ox) <= 0:
                lower.pop()
            else:
                break
        lower.append((px, py))
    upper: list = []
    for px, py in reversed(uniq):
        while len(upper) >= 2:
            ax, ay = upper[-1]
            ox, oy = upper[-2]
            if (ax - ox) * (py - oy) - (ay - oy) * (px - ox) <= 0:
                upper.pop()
            else:
                break
        upper.append((px, py))
    hull = lower[:-1] + upper[:-1]
    if len(hull) < 3:  # all points collinear
        return np.array([uniq[0], uniq[-1]])
    return np.array(hull)


def min_width(hull) -> float:
    """Smallest width of a convex polygon over all edge-normal directions
    (rotating calipers). Degenerate hulls have width 0."""
    h = np.asarray(hull, dtype=float)
    if len(h) < 3:
        return 0.0
    best = math.inf
    n = len(h)
    for i in range(n):
        a = h[i]
        b = h[(i + 1) % n]
        e = b - a
        elen = math.hypot(e[0], e[1])
        if elen == 0.0:
            continue
        # distance of every vertex from the line through edge (a, b)
        d = np.abs((h[:, 0] - a[0]) * e[1] - (h[:, 1] - a[1]) * e[0]) / elen
        best = min(best, float(d.max()))
    return 0.0 if best is math.inf else best


def perimeter(ring) -> float:
    r = np.asarray(ring, dtype=float)
    if len(r) < 2:
        return 0.0
    seg = r[1:] - r[:-1]
    closing = r[0] - r[-1]
    return float(np.hypot(seg[:, 0], seg[:, 1]).sum()
                 + math.hypot(closing[0], closing[1]))


def polygon_area(ring) -> float:
    """Absolute shoelace area."""
    r = np.asarray(ring, dtype=float)
    if len(r) < 3:
        return 0.0
    x, y = r[:, 0], r[:, 1]
    return abs(float(np.dot(x, np.roll(y, -1)) - np.dot(y, np.roll(x, -1)))) / 2.0


def polygon_centroid(ring) -> np.ndarray:
    """Area centroid; falls back to the vertex mean for near-zero area."""
    r = np.asarray(ring, dtype=float)
    if len(r) < 3:
        return r.mean(axis=0)
    x, y = r[:, 0], r[:, 1]
    xn, yn = np.roll(x, -1), np.roll(y, -1)
    cross = x * yn - xn * y
    area2 = float(cross.sum())
    if abs(area2) < 1e-12:
        return r.mean(axis=0)
    cx = float(((x + xn) * cross).sum()) / (3.0 * area2)
    cy = float(((y + yn) * cross).sum()) / (3.0 * area2)
    return np.array([cx, cy])


def point_in_polygon(point, ring) -> bool:
    """Even-odd rule (ray cast toward +x)."""
    r = np.asarray(ring, dtype=float)
    x, y = float(point[0]), float(point[1])
    inside = False
    n = len(r)
    for i in range(n):
        x1, y1 = r[i]
        x2, y2 = r[(i + 1) % n]
        if (y1 > y) != (y2 > y):
            xi = x1 + (y - y1) * (x2 - x1) / (y2 - y1)
            if xi > x:
                inside = not inside
    return inside


def interior_angles(ring) -> np.ndarray:
    """Unsigned interior angle at every vertex, in (0, 2*pi). Reflex
    vertices (w.r.t. the ring's signed orientation) give angles > pi."""
    r = np.asarray(ring, dtype=float)
    n = len(r)
    if n < 3:
        return np.empty(0)
    nxt = np.concatenate([r[1:], r[:1]])
    prv = np.concatenate([r[-1:], r[:-1]])
    x, y = r[:, 0], r[:, 1]
    ccw = (np.dot(x, nxt[:, 1]) - np.dot(y, nxt[:, 0])) >= 0
    e_in = r - prv
    e_out = nxt - r
    cross = e_in[:, 0] * e_out[:, 1] - e_in[:, 1] * e_out[:, 0]
    dot = (e_in * e_out).sum(axis=1)
    turn = np.arctan2(cross, dot)
    angles = math.pi - turn if ccw else math.pi + turn
    return np.mod(angles, 2 * math.pi)


def ray_boundary_distance(origin, direction, ring, eps: float = 1e-12) -> float | None:
    """Distance from origin to the first crossing of ray origin + t*direction
    (t > eps) with the ring's boundary. None when the ray never crosses."""
    r = np.asarray(ring, dtype=float)
    o = np.asarray(origin, dtype=float)
    d = np.asarray(direction, dtype=float)
    a = r
    e = np.roll(r, -1, axis=0) - a
    # solve o + t d = a_i + s e_i per edge (Cramer)
    denom = -d[0] * e[:, 1] + d[1] * e[:, 0]
    dx = a[:, 0] - o[0]
    dy = a[:, 1] - o[1]
    with np.errstate(divide="ignore", invalid="ignore"):
        t = (-dx * e[:, 1] + dy * e[:, 0]) / denom
        s = (d[0] * dy - d[1] * dx) / denom
    valid = (np.abs(denom) > 1e-18) & (t > eps) & (s >= -1e-12) & (s <= 1.0 + 1e-12)
    if not valid.any():
        return None
    return float(t[valid].min())
