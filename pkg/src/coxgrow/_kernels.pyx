# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled grid winding scan."""

import numpy as np

from libc.math cimport atan2, fabs, M_PI

# an edge turning by more than this is too close to a root to read reliably
cdef double EDGE_LIMIT = 0.9 * M_PI


cdef inline int quadrant(double re, double im) nogil:
    return (re < 0) * 1 + (im < 0) * 2


cdef inline double turn(double ar, double ai, double br, double bi) nogil:
    # principal argument of b / a
    return atan2(ar * bi - ai * br, ar * br + ai * bi)


def grid_winding(coeffs_re, coeffs_im, double x0, double y0, double h, int nx, int ny, double rmax):
    """Winding of p around each grid cell whose corners lie in |z| <= rmax.

    Returns (total winding, cells with nonzero winding, ambiguous cells,
    cells scanned).
    """
    cdef double[::1] cr = np.ascontiguousarray(coeffs_re, dtype=np.float64)
    cdef double[::1] ci = np.ascontiguousarray(coeffs_im, dtype=np.float64)
    cdef int deg = cr.shape[0] - 1
    cdef double[:, ::1] prev = np.empty((nx, 2), dtype=np.float64)
    cdef double[:, ::1] cur = np.empty((nx, 2), dtype=np.float64)
    cdef double[:, ::1] tmp
    cdef unsigned char[::1] pin = np.zeros(nx, dtype=np.uint8)
    cdef unsigned char[::1] cin = np.zeros(nx, dtype=np.uint8)
    cdef unsigned char[::1] tmpb
    cdef unsigned char[::1] pq = np.zeros(nx, dtype=np.uint8)
    cdef unsigned char[::1] cq = np.zeros(nx, dtype=np.uint8)
    cdef int i, j, k, w
    cdef double x, y, re, im, t, a1, a2, a3, a4, s
    cdef double r2 = rmax * rmax
    cdef long total = 0, hits = 0, ambiguous = 0, scanned = 0
    with nogil:
        for j in range(ny):
            y = y0 + j * h
            for i in range(nx):
                x = x0 + i * h
                cin[i] = (x * x + y * y) <= r2
                if not cin[i]:
                    continue
                re = cr[deg]
                im = ci[deg]
                for k in range(deg - 1, -1, -1):
                    t = re * x - im * y + cr[k]
                    im = re * y + im * x + ci[k]
                    re = t
                cur[i, 0] = re
                cur[i, 1] = im
                cq[i] = quadrant(re, im)
            if j > 0:
                for i in range(nx - 1):
                    if not (pin[i] and pin[i + 1] and cin[i] and cin[i + 1]):
                        continue
                    scanned += 1
                    # all corners in one open quadrant: no winding possible
                    if pq[i] == pq[i + 1] and pq[i] == cq[i] and pq[i] == cq[i + 1]:
                        continue
                    # counter-clockwise: (i,j-1) -> (i+1,j-1) -> (i+1,j) -> (i,j)
                    a1 = turn(prev[i, 0], prev[i, 1], prev[i + 1, 0], prev[i + 1, 1])
                    a2 = turn(prev[i + 1, 0], prev[i + 1, 1], cur[i + 1, 0], cur[i + 1, 1])
                    a3 = turn(cur[i + 1, 0], cur[i + 1, 1], cur[i, 0], cur[i, 1])
                    a4 = turn(cur[i, 0], cur[i, 1], prev[i, 0], prev[i, 1])
                    if (fabs(a1) > EDGE_LIMIT or fabs(a2) > EDGE_LIMIT or fabs(a3) > EDGE_LIMIT
                            or fabs(a4) > EDGE_LIMIT):
                        ambiguous += 1
                        continue
                    s = (a1 + a2 + a3 + a4) / (2 * M_PI)
                    w = <int>(s + 0.5) if s >= 0 else -<int>(-s + 0.5)
                    if w != 0:
                        hits += 1
                        total += w
            tmp = prev
            prev = cur
            cur = tmp
            tmpb = pq
            pq = cq
            cq = tmpb
            tmpb = pin
            pin = cin
            cin = tmpb
    return total, hits, ambiguous, scanned
