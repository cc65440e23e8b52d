"""Brute-force search for complex roots inside a disk.

The plane is cut into square cells of side ``h``; the winding of p around
each cell is read off from the quadrants of p at its corners.  A cell with
nonzero winding holds a root.  This is floating-point evidence, independent
of the exact certification in :mod:`coxgrow.roots`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .kernels import grid_winding
from .polyarith import IntPolynomial

# keeps grid lines off the axes and off rational points
_OFFSET = (math.sqrt(5) - 1) / 2 * 0.5


@dataclass(frozen=True)
class GridScan:
    radius: float
    resolution: float
    roots: int  # total winding over the scanned cells
    root_cells: int
    ambiguous_cells: int
    cells: int

    @property
    def root_free(self) -> bool:
        return self.roots == 0 and self.root_cells == 0 and self.ambiguous_cells == 0


def scan_disk(p: IntPolynomial, radius: float, resolution: float = 1e-3) -> GridScan:
    """Roots of p in cells lying entirely inside ``|z| <= radius``."""
    h = resolution
    n = int(math.ceil(2 * radius / h)) + 2
    start = -radius - h * _OFFSET
    coeffs = np.array([float(c) for c in p.coeffs])
    total, hits, amb, cells = grid_winding(coeffs, np.zeros_like(coeffs), start, start, h, n, n, radius)
    return GridScan(radius, h, int(total), int(hits), int(amb), int(cells))


def smaller_root_scan(p: IntPolynomial, r0: float, resolution: float = 1e-3) -> GridScan:
    """Scan the disk strictly inside the claimed smallest modulus, one cell in."""
    return scan_disk(p, r0 - resolution, resolution)
