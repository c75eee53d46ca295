"""Fixture-mesh construction.

Two generators: seeded-jitter structured grid triangulations (a diagonal
split or a union-jack split with one center node per cell), and an
incremental Bowyer-Watson Delaunay triangulation of a point set. Both
produce meshes that pass the builder's manifold and orientation checks.
All randomness is seeded; there is no global RNG state.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .mesh import Mesh

PATTERNS = ("diagonal", "union-jack")

#: Width of the uncertainty band of the floating-point in-circle test,
#: relative to the determinant's permanent. Inside the band the sign is
#: recomputed with exact rational arithmetic.
INCIRCLE_REL_EPS = 1e-12

# Canonical desk-scale fixtures used by the regression suite and docs.
CANONICAL_STRUCTURED_SEED = 2
CANONICAL_UNSTRUCTURED_SEED = 4


@dataclass
class GridSpec:
    """Structured-grid parameters; jitter is a fraction of the cell size."""

    nx: int
    ny: int
    width: float = 1.0
    height: float = 1.0
    pattern: str = "diagonal"
    jitter: float = 0.0
    seed: int = 0

    def __post_init__(self):
        if self.nx < 1 or self.ny < 1:
            raise ValueError("nx and ny must be >= 1")
        if not 0.0 <= self.jitter < 0.5:
            raise ValueError("jitter must be in [0, 0.5)")
        if self.pattern not in PATTERNS:
            raise ValueError(f"pattern must be one of {PATTERNS}, got {self.pattern!r}")
        if self.width <= 0 or self.height <= 0:
            raise ValueError("width and height must be positive")


def structured_grid(spec: GridSpec) -> Mesh:
    """Triangulate an nx-by-ny rectangle grid.

    The diagonal pattern splits each cell along the same diagonal into
    2 triangles; union-jack adds a center node per cell and fans out 4.
    Interior nodes (grid interiors and cell centers) are displaced by a
    seeded uniform jitter of up to ``jitter`` cell sizes per axis.
    """
    nx, ny = spec.nx, spec.ny
    dx = spec.width / nx
    dy = spec.height / ny

    ii, jj = np.meshgrid(np.arange(nx + 1), np.arange(ny + 1))
    grid = np.column_stack([(ii * dx).ravel(), (jj * dy).ravel()])
    on_rim = (ii == 0) | (ii == nx) | (jj == 0) | (jj == ny)
    fixed = on_rim.ravel()

    def node(i, j):
        return j * (nx + 1) + i

    tris = []
    if spec.pattern == "diagonal":
        verts = grid
        for j in range(ny):
            for i in range(nx):
                v00, v10 = node(i, j), node(i + 1, j)
                v01, v11 = node(i, j + 1), node(i + 1, j + 1)
                tris.append((v00, v10, v11))
                tris.append((v00, v11, v01))
    else:
        ci, cj = np.meshgrid(np.arange(nx), np.arange(ny))
        centers = np.column_stack([((ci + 0.5) * dx).ravel(), ((cj + 0.5) * dy).ravel()])
        verts = np.vstack([grid, centers])
        fixed = np.concatenate([fixed, np.zeros(nx * ny, dtype=bool)])
        base = (nx + 1) * (ny + 1)
        for j in range(ny):
            for i in range(nx):
                v00, v10 = node(i, j), node(i + 1, j)
                v01, v11 = node(i, j + 1), node(i + 1, j + 1)
                c = base + j * nx + i
                tris.append((v00, v10, c))
                tris.append((v10, v11, c))
                tris.append((v11, v01, c))
                tris.append((v01, v00, c))

    if spec.jitter > 0.0:
        rng = np.random.default_rng(spec.seed)
        shift = rng.uniform(-1.0, 1.0, size=verts.shape) * (spec.jitter * np.array([dx, dy]))
        shift[fixed] = 0.0
        verts = verts + shift

    return Mesh(verts, tris)


def random_point_set(n: int, seed: int = 0, width: float = 1.0, height: float = 1.0) -> np.ndarray:
    """n seeded random points in a width-by-height rectangle.

    Dart throwing with a minimum separation of 0.8 * sqrt(w*h/n): a
    candidate is kept only if it clears every accepted point. After 200*n
    consecutive rejections the separation halves, so the draw always
    finishes. Plain uniform sampling produces near-coincident pairs and
    sliver triangles that say nothing about smoothing quality.
    """
    if n < 3:
        raise ValueError("a point set needs at least 3 points")
    if width <= 0 or height <= 0:
        raise ValueError("width and height must be positive")
    rng = np.random.default_rng(seed)
    sep = 0.8 * math.sqrt(width * height / n)
    pts = np.empty((n, 2))
    count = 0
    rejected = 0
    while count < n:
        c = rng.uniform((0.0, 0.0), (width, height))
        if count and (np.hypot(*(pts[:count] - c).T) < sep).any():
            rejected += 1
            if rejected > 200 * n:
                sep *= 0.5
                rejected = 0
            continue
        pts[count] = c
        count += 1
        rejected = 0
    return pts


def _incircle_exact(pa, pb, pc, pd) -> bool:
    """Exact rational in-circle sign; on-circle counts as outside."""
    dx, dy = Fraction(float(pd[0])), Fraction(float(pd[1]))
    adx, ady = Fraction(float(pa[0])) - dx, Fraction(float(pa[1])) - dy
    bdx, bdy = Fraction(float(pb[0])) - dx, Fraction(float(pb[1])) - dy
    cdx, cdy = Fraction(float(pc[0])) - dx, Fraction(float(pc[1])) - dy
    det = (
        (adx * adx + ady * ady) * (bdx * cdy - cdx * bdy)
        + (bdx * bdx + bdy * bdy) * (cdx * ady - adx * cdy)
        + (cdx * cdx + cdy * cdy) * (adx * bdy - bdx * ady)
    )
    return det > 0


def _incircle_strict(pa, pb, pc, pd) -> bool:
    """True iff pd is strictly inside the circumcircle of CCW (pa, pb, pc).

    Floating determinant when its sign is clear; exact rational fallback
    inside the uncertainty band, so near-cocircular points never corrupt
    the triangulation. On-circle ties keep the existing triangles.
    """
    adx, ady = pa[0] - pd[0], pa[1] - pd[1]
    bdx, bdy = pb[0] - pd[0], pb[1] - pd[1]
    cdx, cdy = pc[0] - pd[0], pc[1] - pd[1]
    alift = adx * adx + ady * ady
    blift = bdx * bdx + bdy * bdy
    clift = cdx * cdx + cdy * cdy
    bdxcdy = bdx * cdy
    cdxbdy = cdx * bdy
    cdxady = cdx * ady
    adxcdy = adx * cdy
    adxbdy = adx * bdy
    bdxady = bdx * ady
    det = alift * (bdxcdy - cdxbdy) + blift * (cdxady - adxcdy) + clift * (adxbdy - bdxady)
    perm = (
        alift * (abs(bdxcdy) + abs(cdxbdy))
        + blift * (abs(cdxady) + abs(adxcdy))
        + clift * (abs(adxbdy) + abs(bdxady))
    )
    if abs(det) > INCIRCLE_REL_EPS * perm:
        return det > 0.0
    return _incircle_exact(pa, pb, pc, pd)


def delaunay(points, seed: int = 0) -> Mesh:
    """Bowyer-Watson incremental Delaunay triangulation.

    Exact duplicate points are dropped; the insertion order is a seeded
    shuffle of the deduplicated set, which only matters for co-circular
    ties. The super-triangle and everything touching it are removed at
    the end. Raises ValueError for fewer than 3 distinct points or an
    all-collinear set.
    """
    pts = np.asarray(points, dtype=np.float64)
    if pts.ndim != 2 or pts.shape[1] != 2:
        raise ValueError("points must be an (n, 2) array")
    if not np.all(np.isfinite(pts)):
        raise ValueError("points must be finite")
    pts = np.unique(pts, axis=0)
    n = len(pts)
    if n < 3:
        raise ValueError("need at least 3 distinct points")

    lo = pts.min(axis=0)
    hi = pts.max(axis=0)
    center = 0.5 * (lo + hi)
    # far enough out that no hull sliver's circumcircle reaches a corner;
    # a too-small bounding triangle silently notches the hull
    size = 1e6 * max(hi[0] - lo[0], hi[1] - lo[1])
    sv = np.array(
        [
            [center[0] - 2.0 * size, center[1] - size],
            [center[0] + 2.0 * size, center[1] - size],
            [center[0], center[1] + 2.0 * size],
        ]
    )
    coords = np.vstack([pts, sv])
    tris = [(n, n + 1, n + 2)]

    order = np.random.default_rng(seed).permutation(n)
    for p in order:
        pd = coords[p]
        bad = [t for t in tris if _incircle_strict(coords[t[0]], coords[t[1]], coords[t[2]], pd)]
        if not bad:
            # tolerance pushed the point outside every circumcircle; fall
            # back to the containing triangle so insertion cannot stall
            bad = [t for t in tris if _contains(coords, t, pd)]
        boundary = _cavity_boundary(bad)
        bad_set = set(bad)
        tris = [t for t in tris if t not in bad_set]
        for a, b in boundary:
            tris.append((int(p), a, b))

    kept = [t for t in tris if max(t) < n]
    if not kept:
        raise ValueError("all points are collinear")
    return Mesh(pts, kept)


def _contains(coords, tri, p) -> bool:
    a, b, c = (coords[i] for i in tri)
    d1 = (b[0] - a[0]) * (p[1] - a[1]) - (b[1] - a[1]) * (p[0] - a[0])
    d2 = (c[0] - b[0]) * (p[1] - b[1]) - (c[1] - b[1]) * (p[0] - b[0])
    d3 = (a[0] - c[0]) * (p[1] - c[1]) - (a[1] - c[1]) * (p[0] - c[0])
    return d1 >= 0 and d2 >= 0 and d3 >= 0


def _cavity_boundary(bad) -> list:
    """Directed edges of the cavity: those not shared by two bad triangles."""
    seen = {}
    for t in bad:
        for k in range(3):
            a, b = t[k], t[(k + 1) % 3]
            seen[(a, b)] = seen.get((a, b), 0) + 1
    return [(a, b) for (a, b), cnt in seen.items() if (b, a) not in seen and cnt == 1]


def canonical_structured() -> Mesh:
    """The bundled structured fixture: 8x8 diagonal grid, 30% jitter."""
    return structured_grid(
        GridSpec(nx=8, ny=8, pattern="diagonal", jitter=0.3, seed=CANONICAL_STRUCTURED_SEED)
    )


def canonical_unstructured() -> Mesh:
    """The bundled unstructured fixture: Delaunay of 50 seeded points."""
    pts = random_point_set(50, seed=CANONICAL_UNSTRUCTURED_SEED)
    return delaunay(pts, seed=CANONICAL_UNSTRUCTURED_SEED)
