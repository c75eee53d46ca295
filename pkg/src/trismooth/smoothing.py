"""Node relocation schemes and the Jacobi-style convergence loop.

Three methods share one driver:

* ``laplacian`` -- each interior node moves to the centroid of its
  distinct neighbors.
* ``mdm`` -- each interior node moves to the average of the equilateral
  apexes erected over the opposite edges of its incident triangles.
* ``lw-mdm`` -- as ``mdm`` but each apex is weighted by the reciprocal of
  its opposite edge length, with weights recomputed from the current
  positions at the start of every iteration. Short nearby edges dominate,
  so node placement adapts to the local length scale instead of being
  dragged toward the far apexes of long edges (plain length weighting
  overshoots and tangles irregular meshes).

All schemes are Jacobi iterations: a step reads only the step-k
positions and writes a fresh step-(k+1) buffer, so vertex processing
order is irrelevant. Boundary vertices are never moved; fixing them
preserves the domain outline.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .mesh import Mesh, cross2

_HALF_SQRT3 = math.sqrt(3.0) / 2.0

METHODS = ("laplacian", "mdm", "lw-mdm")


@dataclass
class SmoothConfig:
    """Knobs for :func:`smooth`.

    ``tolerance`` is the maximum per-step node displacement that still
    counts as converged, in length units; ``None`` resolves to 1e-6 times
    the mesh bounding-box diagonal. ``safe_mode`` discards any per-vertex
    move that would drive an incident triangle's signed area nonpositive.
    """

    method: str = "mdm"
    tolerance: float | None = None
    max_iters: int = 100
    safe_mode: bool = False

    def __post_init__(self):
        if self.method not in METHODS:
            raise ValueError(f"method must be one of {METHODS}, got {self.method!r}")
        if self.tolerance is not None and self.tolerance < 0:
            raise ValueError("tolerance must be >= 0")
        if self.max_iters < 1:
            raise ValueError("max_iters must be >= 1")


@dataclass
class SmoothResult:
    iterations_run: int
    converged: bool
    max_displacement_last: float


def equilateral_apex(q, r):
    """Third vertex of the equilateral triangle erected on edge (q, r).

    For a CCW triangle (a, q, r) the apex lands on a's side of the edge,
    so feeding each triangle corner its CCW-opposite edge never proposes
    an inverted element. Accepts single points or (..., 2) arrays.
    """
    q = np.asarray(q, dtype=np.float64)
    r = np.asarray(r, dtype=np.float64)
    x = 0.5 * (q[..., 0] + r[..., 0]) + _HALF_SQRT3 * (q[..., 1] - r[..., 1])
    y = _HALF_SQRT3 * (r[..., 0] - q[..., 0]) + 0.5 * (q[..., 1] + r[..., 1])
    return np.stack([x, y], axis=-1)


def _max_displacement(old: np.ndarray, new: np.ndarray) -> float:
    if len(old) == 0:
        return 0.0
    return float(np.linalg.norm(new - old, axis=1).max())


def _movable(mesh: Mesh) -> np.ndarray:
    return ~mesh.is_boundary


def laplacian_step(mesh: Mesh):
    """One Jacobi step of Laplacian smoothing.

    Returns ``(new_vertices, max_displacement)`` without touching the
    mesh; boundary rows are bitwise copies of the input.
    """
    verts = mesh.vertices
    new = verts.copy()
    n = len(verts)
    if mesh.n_triangles:
        edges = np.array(sorted(mesh.edge_tris.keys()))
        acc = np.zeros((n, 2))
        cnt = np.zeros(n)
        np.add.at(acc, edges[:, 0], verts[edges[:, 1]])
        np.add.at(acc, edges[:, 1], verts[edges[:, 0]])
        np.add.at(cnt, edges[:, 0], 1.0)
        np.add.at(cnt, edges[:, 1], 1.0)
        move = _movable(mesh) & (cnt > 0)
        new[move] = acc[move] / cnt[move, None]
    return new, _max_displacement(verts, new)


def _apex_step(mesh: Mesh, length_weighted: bool):
    verts = mesh.vertices
    tri = mesh.triangles
    new = verts.copy()
    n = len(verts)
    if mesh.n_triangles:
        acc = np.zeros((n, 2))
        wsum = np.zeros(n)
        for k in range(3):
            v = tri[:, k]
            q = verts[tri[:, (k + 1) % 3]]
            r = verts[tri[:, (k + 2) % 3]]
            apex = equilateral_apex(q, r)
            if length_weighted:
                # reciprocal lengths; a zero-length edge defines no
                # equilateral target and is excluded
                l = np.linalg.norm(r - q, axis=1)
                w = np.divide(1.0, l, out=np.zeros_like(l), where=l > 0.0)
            else:
                w = np.ones(len(tri))
            np.add.at(acc, v, w[:, None] * apex)
            np.add.at(wsum, v, w)
        # a vertex whose opposite edges all have zero length stays put
        move = _movable(mesh) & (wsum > 0)
        new[move] = acc[move] / wsum[move, None]
    return new, _max_displacement(verts, new)


def mdm_step(mesh: Mesh):
    """One Jacobi step of the modified direct method.

    Every interior vertex moves to the plain average of the equilateral
    apexes over its incident triangles' opposite edges; equivalent to one
    application of the assembled global iteration system with each row
    divided by the vertex's element count.
    """
    return _apex_step(mesh, length_weighted=False)


def lw_mdm_step(mesh: Mesh):
    """One Jacobi step of the length-weighted scheme.

    Apexes are averaged with weights proportional to the reciprocals of
    the opposite edge lengths, taken from the current (pre-move)
    positions, so the weights refresh every iteration. Equal-length fans
    reduce to plain mdm_step.
    """
    return _apex_step(mesh, length_weighted=True)


def lw_weights(lengths) -> np.ndarray:
    """Turn a fan's opposite-edge lengths into weights summing to 1.

    Weights are normalized reciprocals: w_i = (1/l_i) / sum(1/l_j), so
    shorter opposite edges pull harder and the smoothed node tracks the
    local length scale. Zero-length edges get weight 0; they carry no
    shape information.
    """
    lengths = np.asarray(lengths, dtype=np.float64)
    if lengths.size == 0:
        raise ValueError("fan must contain at least one edge")
    if np.any(lengths < 0):
        raise ValueError("edge lengths must be nonnegative")
    inv = np.divide(1.0, lengths, out=np.zeros_like(lengths), where=lengths > 0.0)
    total = inv.sum()
    if total == 0.0:
        raise ValueError("all opposite edges have zero length")
    return inv / total


def _reject_inverting(mesh: Mesh, proposed: np.ndarray) -> np.ndarray:
    """Revert vertex moves until no positive-area triangle loses its sign.

    Reverting one vertex can re-expose a violation elsewhere (mixed
    old/new corners carry no guarantee), hence the loop; it terminates
    because the set of reverted vertices only grows and the all-old
    assignment is feasible by assumption.
    """
    old = mesh.vertices
    tri = mesh.triangles
    p = old[tri]
    protected = 0.5 * cross2(p[:, 1] - p[:, 0], p[:, 2] - p[:, 0]) > 0.0
    new = proposed.copy()
    moved = np.any(new != old, axis=1)
    while True:
        p = new[tri]
        areas = 0.5 * cross2(p[:, 1] - p[:, 0], p[:, 2] - p[:, 0])
        bad = protected & (areas <= 0.0)
        if not bad.any():
            break
        bad_verts = np.unique(tri[bad])
        bad_verts = bad_verts[moved[bad_verts]]
        if len(bad_verts) == 0:
            break
        new[bad_verts] = old[bad_verts]
        moved[bad_verts] = False
    return new


_STEPS = {
    "laplacian": laplacian_step,
    "mdm": mdm_step,
    "lw-mdm": lw_mdm_step,
}


def smooth(mesh: Mesh, config: SmoothConfig | None = None) -> SmoothResult:
    """Run the selected step until converged or the iteration cap is hit.

    Mutates the mesh coordinates in place. Convergence means the maximum
    vertex displacement of a step is at most the tolerance.
    """
    if config is None:
        config = SmoothConfig()
    step = _STEPS[config.method]
    tol = config.tolerance
    if tol is None:
        tol = 1e-6 * mesh.bbox_diagonal()
    converged = False
    disp = math.inf
    iterations = 0
    for iterations in range(1, config.max_iters + 1):
        new, disp = step(mesh)
        if config.safe_mode:
            new = _reject_inverting(mesh, new)
            disp = _max_displacement(mesh.vertices, new)
        mesh.vertices[:] = new
        if disp <= tol:
            converged = True
            break
    return SmoothResult(
        iterations_run=iterations,
        converged=converged,
        max_displacement_last=disp,
    )
