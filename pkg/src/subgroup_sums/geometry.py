"""Hypocycloid regions and grid Minkowski sums of them.

``H_d`` is the closed region bounded by ``t -> (d-1) e(t) + e((1-d) t)``.
Membership uses a polygonal winding number with a signed tolerance band:
``tol > 0`` also accepts points within ``tol`` of the boundary, ``tol < 0``
requires the point to be inside and at least ``|tol|`` away from it.
"""

from __future__ import annotations

import math
from functools import lru_cache
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
from scipy import ndimage, signal

from .errors import ResolutionTooLow
from .modular import prime_factors

__all__ = [
    "HypocycloidRegion",
    "GridRegion",
    "hypocycloid_region",
    "in_region",
    "boundary_distance",
    "rasterize",
    "minkowski_region",
    "grid_contains",
    "image_region",
    "image_contains",
    "write_boundary_csv",
    "write_raster_pgm",
    "read_raster_pgm",
]

_POINT_BLOCK = 4096


@dataclass(frozen=True, eq=False)
class HypocycloidRegion:
    d: int
    resolution: int
    boundary: np.ndarray  # (resolution + 1,) complex, closed

    def contains(self, z, tol: float = 1e-3):
        return in_region(self, z, tol)


def hypocycloid_region(d: int, resolution: int | None = None) -> HypocycloidRegion:
    """Closed polyline through ``M + 1`` points of the ``d``-cusp hypocycloid (``M >= 64 d``)."""
    if d < 2:
        raise ValueError(f"hypocycloid needs d >= 2, got {d}")
    m = 64 * d if resolution is None else int(resolution)
    if m < 64 * d:
        raise ResolutionTooLow(f"resolution {m} < 64*d = {64 * d}")
    t = np.arange(m + 1) / m
    z = (d - 1) * np.exp(2j * np.pi * t) + np.exp(2j * np.pi * ((1 - d) * t))
    z[0] = z[-1] = d
    z.setflags(write=False)
    return HypocycloidRegion(d, m, z)


def _segment_distance(pts: np.ndarray, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Distance from each point to the nearest of the segments ``a[j] -> b[j]``."""
    ab = b - a
    len2 = np.abs(ab) ** 2
    len2[len2 == 0] = 1.0
    ap = pts[:, None] - a[None, :]
    t = np.clip((ap.real * ab.real + ap.imag * ab.imag) / len2, 0.0, 1.0)
    return np.abs(ap - t * ab[None, :]).min(axis=1)


def _winding(pts: np.ndarray, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    x, y = pts.real[:, None], pts.imag[:, None]
    ax, ay, bx, by = a.real[None, :], a.imag[None, :], b.real[None, :], b.imag[None, :]
    left = (bx - ax) * (y - ay) - (x - ax) * (by - ay)
    up = (ay <= y) & (by > y) & (left > 0)
    down = (ay > y) & (by <= y) & (left < 0)
    return up.sum(axis=1) - down.sum(axis=1)


def boundary_distance(region: HypocycloidRegion, z) -> np.ndarray:
    pts = np.atleast_1d(np.asarray(z, dtype=np.complex128))
    a, b = region.boundary[:-1], region.boundary[1:]
    out = np.empty(len(pts))
    for s in range(0, len(pts), _POINT_BLOCK):
        out[s : s + _POINT_BLOCK] = _segment_distance(pts[s : s + _POINT_BLOCK], a, b)
    return out


def in_region(region: HypocycloidRegion, z, tol: float = 0.0):
    """Membership of ``z`` (scalar or array) in ``H_d`` with a signed tolerance band."""
    scalar = np.ndim(z) == 0
    pts = np.atleast_1d(np.asarray(z, dtype=np.complex128)).ravel()
    if region.d == 2:
        res = (np.abs(pts.imag) <= tol) & (np.abs(pts.real) <= 2 + tol)
        return bool(res[0]) if scalar else res
    a, b = region.boundary[:-1], region.boundary[1:]
    res = np.empty(len(pts), dtype=bool)
    # points beyond modulus d + tol are outside without further work
    cand = np.flatnonzero(np.abs(pts) <= region.d + max(tol, 0.0))
    res[:] = False
    for s in range(0, len(cand), _POINT_BLOCK):
        idx = cand[s : s + _POINT_BLOCK]
        p = pts[idx]
        inside = _winding(p, a, b) != 0
        dist = _segment_distance(p, a, b)
        res[idx] = (inside | (dist <= tol)) if tol >= 0 else (inside & (dist >= -tol))
    return bool(res[0]) if scalar else res


@dataclass(frozen=True, eq=False)
class GridRegion:
    """Boolean raster; cell ``(row, col)`` is centred at ``((col - c0) h, (row - r0) h)``."""

    cell_size: float
    occupancy: np.ndarray  # (rows, cols) bool
    origin: tuple[int, int]  # (r0, c0): indices of the cell centred at 0
    tolerance_cells: int = 1
    label: str = ""
    _dilated: np.ndarray = field(default=None, init=False, repr=False)

    def __post_init__(self):
        k = self.tolerance_cells
        occ = self.occupancy
        dil = ndimage.binary_dilation(occ, structure=np.ones((2 * k + 1, 2 * k + 1), bool)) if k > 0 else occ
        object.__setattr__(self, "_dilated", dil)

    @property
    def half_extent(self) -> float:
        """Largest ``R`` with ``[-R, R]^2`` inside the raster's bounding box."""
        r0, c0 = self.origin
        rows, cols = self.occupancy.shape
        return self.cell_size * (min(r0, c0, rows - 1 - r0, cols - 1 - c0) + 0.5)

    def cell_centers(self) -> np.ndarray:
        rows, cols = np.nonzero(self.occupancy)
        r0, c0 = self.origin
        return (cols - c0) * self.cell_size + 1j * (rows - r0) * self.cell_size

    def contains(self, z, tol=None):
        return grid_contains(self, z)


def grid_contains(region: GridRegion, z):
    """Occupancy of the cell containing ``z``, dilated by ``tolerance_cells``."""
    scalar = np.ndim(z) == 0
    pts = np.atleast_1d(np.asarray(z, dtype=np.complex128)).ravel()
    r0, c0 = region.origin
    col = np.rint(pts.real / region.cell_size).astype(np.int64) + c0
    row = np.rint(pts.imag / region.cell_size).astype(np.int64) + r0
    rows, cols = region.occupancy.shape
    ok = (row >= 0) & (row < rows) & (col >= 0) & (col < cols)
    out = np.zeros(len(pts), dtype=bool)
    out[ok] = region._dilated[row[ok], col[ok]]
    return bool(out[0]) if scalar else out


def rasterize(region: HypocycloidRegion, cell_size: float) -> GridRegion:
    """Cells whose centre lies within ``0.75 * cell_size`` of ``H_d``.

    Any point of ``H_d`` is within half a cell diagonal of its nearest centre,
    so every point of the region falls in an occupied cell.
    """
    k = math.ceil(region.d / cell_size) + 1
    ks = np.arange(-k, k + 1)
    centers = (ks[None, :] + 1j * ks[:, None]) * cell_size
    occ = in_region(region, centers.ravel(), tol=0.75 * cell_size).reshape(centers.shape)
    return GridRegion(cell_size, occ, (k, k), 1, f"H_{region.d}")


def minkowski_region(r: int, b: int, cell_size: float = 0.02) -> GridRegion:
    """Raster of the Minkowski sum of ``r**(b-1)`` copies of ``H_r``.

    Each extra copy is added by a grid convolution of occupancies. Summing
    ``c`` cell centres misplaces the true sum by under ``c/2`` cells per axis,
    so the lookup tolerance is ``max(1, c // 2)`` cells.
    """
    if b < 1 or prime_factors(r) != [r]:
        raise ValueError(f"need a prime r and b >= 1, got r={r}, b={b}")
    base = rasterize(hypocycloid_region(r), cell_size)
    copies = r ** (b - 1)
    occ, origin = base.occupancy, base.origin
    kernel = base.occupancy.astype(np.float64)
    for _ in range(copies - 1):
        occ = signal.fftconvolve(occ.astype(np.float64), kernel) > 0.5
        origin = (origin[0] + base.origin[0], origin[1] + base.origin[1])
    return GridRegion(cell_size, occ, origin, max(1, copies // 2), f"sum of {copies} x H_{r}")


@lru_cache(maxsize=16)
def image_region(d: int, cell_size: float = 0.02):
    """Region known to equal the image of ``g_d``: ``H_d`` for prime ``d``, a Minkowski raster for prime powers.

    Returns ``None`` when ``d`` has two or more distinct prime factors or ``d = 1``.
    """
    if d < 2:
        return None
    ps = prime_factors(d)
    if len(ps) != 1:
        return None
    r = ps[0]
    if r == d:
        return hypocycloid_region(d)
    b = round(math.log(d, r))
    return minkowski_region(r, b, cell_size)


def image_contains(d: int, z, tol: float = 1e-3, cell_size: float = 0.02):
    """Membership of ``z`` in the image of ``g_d``, or ``None`` where no region is known."""
    region = image_region(d, cell_size)
    if region is None:
        return None
    if isinstance(region, HypocycloidRegion):
        return in_region(region, z, tol)
    return grid_contains(region, z)


def write_boundary_csv(region: HypocycloidRegion, path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write("x,y\n")
        for z in region.boundary:
            fh.write(f"{float(z.real)!r},{float(z.imag)!r}\n")


def write_raster_pgm(region: GridRegion, path) -> None:
    """Plain PGM (``P2``, maxval 1), top row = largest imaginary part."""
    occ = region.occupancy[::-1].astype(np.uint8)
    rows, cols = occ.shape
    r0, c0 = region.origin
    lines = [
        "P2",
        f"# cell_size {region.cell_size!r}",
        f"# origin_row {rows - 1 - r0} origin_col {c0}",
        f"# tolerance_cells {region.tolerance_cells}",
        f"{cols} {rows}",
        "1",
    ]
    lines += [" ".join(map(str, row)) for row in occ]
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def read_raster_pgm(path) -> GridRegion:
    cell, r_top, c0, tol = None, None, None, 1
    data = []
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        if line.startswith("#"):
            parts = line[1:].split()
            meta = dict(zip(parts[::2], parts[1::2]))
            cell = float(meta["cell_size"]) if "cell_size" in meta else cell
            r_top = int(meta["origin_row"]) if "origin_row" in meta else r_top
            c0 = int(meta["origin_col"]) if "origin_col" in meta else c0
            tol = int(meta["tolerance_cells"]) if "tolerance_cells" in meta else tol
        elif line.strip():
            data.append(line)
    cols, rows = map(int, data[1].split())
    occ = np.array([[int(v) for v in row.split()] for row in data[3:]], dtype=bool).reshape(rows, cols)
    return GridRegion(cell, occ[::-1].copy(), (rows - 1 - r_top, c0), tol)
