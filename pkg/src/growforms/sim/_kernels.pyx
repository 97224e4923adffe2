# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernel: spring + pairwise repulsion forces.

Must stay numerically interchangeable with forces_py.spring_repulsion_forces;
the backend tests compare the two on random colonies.
"""

from libc.math cimport sqrt, cos, sin

import numpy as np
cimport numpy as cnp

cnp.import_array()

cdef double TWO_PI = 6.283185307179586


def spring_repulsion_forces(
    cnp.ndarray[cnp.float64_t, ndim=2] pos,
    cnp.ndarray[cnp.int64_t, ndim=1] ring_starts,
    double k,
    double rest_length,
    double rr,
    double k_rep,
):
    """Total spring + repulsion force per cell.

    pos: (n, 2) cell positions, all organisms concatenated.
    ring_starts: (m+1,) organism o owns cells [ring_starts[o], ring_starts[o+1]).
    """
    cdef Py_ssize_t n = pos.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=2] force = np.zeros((n, 2))
    cdef Py_ssize_t m = ring_starts.shape[0] - 1
    cdef Py_ssize_t o, i, j, a, b, nxt
    cdef double dx, dy, d, d2, f, ux, uy, mag, angle
    cdef double rr2 = rr * rr
    cdef unsigned long long h

    # springs along each ring
    for o in range(m):
        a = ring_starts[o]
        b = ring_starts[o + 1]
        for i in range(a, b):
            nxt = i + 1 if i + 1 < b else a
            dx = pos[nxt, 0] - pos[i, 0]
            dy = pos[nxt, 1] - pos[i, 1]
            d = sqrt(dx * dx + dy * dy)
            if d > 0.0:
                f = k * (d - rest_length) / d
                force[i, 0] += f * dx
                force[i, 1] += f * dy
                force[nxt, 0] -= f * dx
                force[nxt, 1] -= f * dy

    # pairwise repulsion across the whole colony, cutoff rr
    for i in range(n):
        for j in range(i + 1, n):
            dx = pos[i, 0] - pos[j, 0]
            dy = pos[i, 1] - pos[j, 1]
            d2 = dx * dx + dy * dy
            if d2 >= rr2:
                continue
            if d2 > 0.0:
                d = sqrt(d2)
                mag = k_rep * (rr - d) / rr / d
                force[i, 0] += mag * dx
                force[i, 1] += mag * dy
                force[j, 0] -= mag * dx
                force[j, 1] -= mag * dy
            else:
                # coincident cells: deterministic pseudo-random direction
                h = (<unsigned long long> i * 2654435761ULL
                     + <unsigned long long> j * 40503ULL) % 3600ULL
                angle = h * (TWO_PI / 3600.0)
                ux = cos(angle)
                uy = sin(angle)
                force[i, 0] += k_rep * ux
                force[i, 1] += k_rep * uy
                force[j, 0] -= k_rep * ux
                force[j, 1] -= k_rep * uy

    return force
