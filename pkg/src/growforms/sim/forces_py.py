"""Pure numpy fallback for the compiled force kernel.

Same contract as _kernels.spring_repulsion_forces. Vectorized, so summation
order differs from the compiled loop; results agree to ~1e-9 absolute.
"""

from __future__ import annotations

import math

import numpy as np

TWO_PI = 2 * math.pi


def spring_repulsion_forces(pos: np.ndarray, ring_starts: np.ndarray,
                            k: float, rest_length: float,
                            rr: float, k_rep: float) -> np.ndarray:
    n = len(pos)
    force = np.zeros((n, 2))

    for o in range(len(ring_starts) - 1):
        a, b = ring_starts[o], ring_starts[o + 1]
        idx = np.arange(a, b)
        nxt = np.roll(idx, -1)
        d = pos[nxt] - pos[idx]
        length = np.hypot(d[:, 0], d[:, 1])
        ok = length > 0.0
        f = np.zeros_like(d)
        f[ok] = d[ok] * (k * (length[ok] - rest_length) / length[ok])[:, None]
        force[idx] += f
        force[nxt] -= f

    if n > 1:
        diff = pos[:, None, :] - pos[None, :, :]
        dist = np.hypot(diff[..., 0], diff[..., 1])
        near = (dist < rr) & (dist > 0.0)
        with np.errstate(divide="ignore", invalid="ignore"):
            mag = np.where(near, k_rep * (rr - dist) / rr / dist, 0.0)
        force += np.einsum("ijc,ij->ic", diff, mag)

        coincident = dist == 0.0
        np.fill_diagonal(coincident, False)
        for i, j in zip(*np.nonzero(np.triu(coincident))):
            h = (int(i) * 2654435761 + int(j) * 40503) % 3600
            angle = h * (TWO_PI / 3600.0)
            u = np.array([math.cos(angle), math.sin(angle)])
            force[i] += k_rep * u
            force[j] -= k_rep * u

    return force
