"""Lofted mesh export: consecutive layers' contours joined by wall quads,
emitted as ASCII OBJ (v/f records, mm units)."""

from __future__ import annotations

import numpy as np

from ..metrics.geometry import polygon_centroid
from ..stack import LayerStack

__all__ = ["to_mesh"]


def _pair_by_centroid(below: list[np.ndarray], above: list[np.ndarray]) -> list[tuple[int, int]]:
    """Greedy nearest-centroid matching; each contour used at most once."""
    if not below or not above:
        return []
    cb = np.array([polygon_centroid(r) for r in below])
    ca = np.array([polygon_centroid(r) for r in above])
    dist = np.hypot(*(cb[:, None, :] - ca[None, :, :]).transpose(2, 0, 1))
    pairs = []
    used_b: set[int] = set()
    used_a: set[int] = set()
    for _ in range(min(len(below), len(above))):
        masked = dist.copy()
        masked[list(used_b), :] = np.inf
        masked[:, list(used_a)] = np.inf
        i, j = np.unravel_index(np.argmin(masked), masked.shape)
        if not np.isfinite(masked[i, j]):
            break
        pairs.append((int(i), int(j)))
        used_b.add(int(i))
        used_a.add(int(j))
    return pairs


def to_mesh(stack: LayerStack, resample_n: int) -> str:
    if resample_n < 3:
        raise ValueError("resample_n must be >= 3")
    scale = stack.config.unit_to_mm
    dz = stack.config.layer_height

    lines = ["# growforms lofted contour mesh"]
    vertex_count = 0
    # resampled rings per layer, plus their OBJ vertex base indices
    resampled: list[list[np.ndarray]] = []
    bases: list[list[int]] = []
    for li, snap in enumerate(stack.layers):
        rings, ring_bases = [], []
        for poly in snap.polygons:
            ring = _resample_exact(np.asarray(poly, dtype=float) * scale, resample_n)
            ring_bases.append(vertex_count)
            z = li * dz
            for x, y in ring:
                lines.append(f"v {x:.6f} {y:.6f} {z:.6f}")
            vertex_count += resample_n
            rings.append(ring)
        resampled.append(rings)
        bases.append(ring_bases)

    for li in range(len(stack.layers) - 1):
        pairs = _pair_by_centroid(resampled[li], resampled[li + 1])
        for bi, ai in pairs:
            lower = resampled[li][bi]
            # start the upper ring at the vertex nearest the lower ring's seam
            shift = _align_shift(lower, resampled[li + 1][ai])
            lb = bases[li][bi]
            ub = bases[li + 1][ai]
            n = resample_n
            for k in range(n):
                a0 = lb + k
                a1 = lb + (k + 1) % n
                b0 = ub + (k + shift) % n
                b1 = ub + (k + 1 + shift) % n
                lines.append(f"f {a0 + 1} {a1 + 1} {b1 + 1}")
                lines.append(f"f {a0 + 1} {b1 + 1} {b0 + 1}")
    return "\n".join(lines) + "\n"


def _resample_exact(ring_mm: np.ndarray, n: int) -> np.ndarray:
    closed = np.vstack([ring_mm, ring_mm[:1]])
    seg = np.diff(closed, axis=0)
    seg_len = np.hypot(seg[:, 0], seg[:, 1])
    total = seg_len.sum()
    if total == 0.0:
        return np.repeat(ring_mm[:1], n, axis=0)
    targets = np.arange(n) * (total / n)
    cum = np.concatenate([[0.0], np.cumsum(seg_len)])
    idx = np.clip(np.searchsorted(cum, targets, side="right") - 1, 0, len(seg) - 1)
    safe = np.where(seg_len[idx] > 0, seg_len[idx], 1.0)
    frac = np.where(seg_len[idx] > 0, (targets - cum[idx]) / safe, 0.0)
    return closed[idx] + seg[idx] * frac[:, None]


def _align_shift(ref: np.ndarray, ring: np.ndarray) -> int:
    d = np.hypot(*(ring - ref[0]).T)
    return int(np.argmin(d))
