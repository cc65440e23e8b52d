"""Numpy implementation of the grid winding scan (fallback for the compiled kernel)."""

from __future__ import annotations

import numpy as np

# an edge turning by more than this is too close to a root to read reliably
EDGE_LIMIT = 0.9 * np.pi


def grid_winding(coeffs_re, coeffs_im, x0, y0, h, nx, ny, rmax, rows_per_chunk=256):
    coeffs = np.asarray(coeffs_re, dtype=np.float64) + 1j * np.asarray(coeffs_im, dtype=np.float64)
    xs = x0 + h * np.arange(nx)
    total = hits = ambiguous = scanned = 0
    prev_v = prev_in = None
    for start in range(0, ny, rows_per_chunk):
        ys = y0 + h * np.arange(start, min(ny, start + rows_per_chunk))
        z = xs[None, :] + 1j * ys[:, None]
        vals = np.full(z.shape, coeffs[-1], dtype=np.complex128)
        for c in coeffs[-2::-1]:
            vals = vals * z + c
        inside = (z.real ** 2 + z.imag ** 2) <= rmax * rmax
        if prev_v is not None:
            vals = np.vstack([prev_v, vals])
            inside = np.vstack([prev_in, inside])
        cell = inside[:-1, :-1] & inside[:-1, 1:] & inside[1:, :-1] & inside[1:, 1:]
        a, b = vals[:-1, :-1], vals[:-1, 1:]
        c, d = vals[1:, 1:], vals[1:, :-1]
        turns = [np.angle(q * np.conj(p)) for p, q in ((a, b), (b, c), (c, d), (d, a))]
        steep = np.zeros(a.shape, dtype=bool)
        for t in turns:
            steep |= np.abs(t) > EDGE_LIMIT
        w = np.rint(sum(turns) / (2 * np.pi)).astype(np.int64)
        bad = cell & steep
        good = cell & ~steep
        scanned += int(cell.sum())
        ambiguous += int(bad.sum())
        hits += int((good & (w != 0)).sum())
        total += int(w[good].sum())
        prev_v, prev_in = vals[-1:], inside[-1:]
    return total, hits, ambiguous, scanned
