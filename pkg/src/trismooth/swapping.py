"""Min-angle edge swapping and the fixed-point swap pass.

An interior edge is swapped when the quadrilateral of its two triangles
is strictly convex and the minimum of the six interior angles strictly
improves on the other diagonal. Ties keep the existing diagonal, which
keeps the rule strict (swap only when the original minimum is smaller)
and guarantees the pass terminates: every accepted flip strictly
increases the sorted angle vector of the affected pair.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .mesh import Mesh, MeshError


@dataclass
class SwapReport:
    passes: int
    flips: int
    locally_optimal: bool


def _angle(p0, p1, p2) -> float:
    """Interior angle at p0, in radians; 0 for a zero-length edge."""
    u = p1 - p0
    v = p2 - p0
    return math.atan2(abs(u[0] * v[1] - u[1] * v[0]), u @ v)


def _min_angle(verts, tris) -> float:
    best = math.inf
    for a, b, c in tris:
        pa, pb, pc = verts[a], verts[b], verts[c]
        best = min(best, _angle(pa, pb, pc), _angle(pb, pc, pa), _angle(pc, pa, pb))
    return best


def _orient(pa, pb, pc) -> float:
    return (pb[0] - pa[0]) * (pc[1] - pa[1]) - (pb[1] - pa[1]) * (pc[0] - pa[0])


def _has_directed(tri, u, v) -> bool:
    a, b, c = tri
    return (a == u and b == v) or (b == u and c == v) or (c == u and a == v)


def _quad(mesh: Mesh, edge) -> tuple:
    """Resolve the CCW quadrilateral (d, u, c, v) around an interior edge.

    d is the apex of the triangle holding the directed edge u->v, c the
    apex of the one holding v->u; the swap replaces diagonal (u, v) by
    (d, c).
    """
    u, v = edge
    key = (u, v) if u < v else (v, u)
    owners = mesh.edge_tris.get(key)
    if owners is None:
        raise MeshError(f"edge {key} is not in the mesh")
    if len(owners) != 2:
        raise MeshError(f"edge {key} is not interior")
    t1, t2 = owners
    if _has_directed(mesh.triangles[t2], u, v):
        t1, t2 = t2, t1
    if not (_has_directed(mesh.triangles[t1], u, v) and _has_directed(mesh.triangles[t2], v, u)):
        raise MeshError(f"inconsistent orientation across edge {key}")
    d = int(mesh.triangles[t1].sum() - u - v)
    c = int(mesh.triangles[t2].sum() - u - v)
    return t1, t2, d, u, c, v


def _strictly_convex(verts, d, u, c, v) -> bool:
    quad = (d, u, c, v)
    for k in range(4):
        a, b, c_ = quad[k], quad[(k + 1) % 4], quad[(k + 2) % 4]
        if _orient(verts[a], verts[b], verts[c_]) <= 0.0:
            return False
    return True


def should_swap(mesh: Mesh, t1: int, t2: int) -> bool:
    """Decide whether the edge shared by triangles t1 and t2 should flip.

    True iff the surrounding quadrilateral is strictly convex and the
    swapped pair's minimum interior angle strictly exceeds the original
    pair's.
    """
    shared = sorted(set(mesh.triangles[t1]) & set(mesh.triangles[t2]))
    if len(shared) != 2 or t1 == t2:
        raise MeshError(f"triangles {t1} and {t2} do not share exactly one edge")
    _, _, d, u, c, v = _quad(mesh, tuple(shared))
    verts = mesh.vertices
    if not _strictly_convex(verts, d, u, c, v):
        return False
    # On tangled meshes the opposite corners can already be joined
    # elsewhere; flipping would then give that edge a third owner.
    if (min(c, d), max(c, d)) in mesh.edge_tris:
        return False
    before = _min_angle(verts, [(d, u, v), (c, v, u)])
    after = _min_angle(verts, [(d, u, c), (c, v, d)])
    return after > before


def flip_edge(mesh: Mesh, edge) -> None:
    """Replace the diagonal of a strictly convex interior quad, in place.

    Purely mechanical: no angle test, so it can also build deliberately
    bad fixtures. Raises when the edge is not interior or the quad is not
    strictly convex (flipping would create overlapping triangles).
    """
    t1, t2, d, u, c, v = _quad(mesh, edge)
    if not _strictly_convex(mesh.vertices, d, u, c, v):
        raise MeshError(f"quad around edge {tuple(edge)} is not strictly convex")
    if (min(c, d), max(c, d)) in mesh.edge_tris:
        raise MeshError(f"flipping edge {tuple(edge)} would duplicate an existing edge")
    mesh.triangles[t1] = (d, u, c)
    mesh.triangles[t2] = (c, v, d)
    mesh._rebuild()


def swap_edge(mesh: Mesh, edge) -> None:
    """Flip an edge after checking it improves the minimum angle."""
    t1, t2, *_ = _quad(mesh, edge)
    if not should_swap(mesh, t1, t2):
        raise MeshError(f"edge {tuple(edge)} does not satisfy the swap criterion")
    flip_edge(mesh, edge)


def swap_pass(mesh: Mesh, max_passes: int = 50) -> SwapReport:
    """Scan interior edges and flip improvable ones until a clean pass.

    Edges are visited in ascending (u, v) order as of the start of each
    scan; edges consumed by earlier flips in the same scan are skipped.
    ``locally_optimal`` is True only when a full scan performed no flips.
    """
    if max_passes < 1:
        raise ValueError("max_passes must be >= 1")
    flips = 0
    passes = 0
    locally_optimal = False
    for _ in range(max_passes):
        passes += 1
        flipped_this_pass = 0
        for edge in mesh.interior_edges():
            owners = mesh.edge_tris.get(edge)
            if owners is None or len(owners) != 2:
                continue
            if should_swap(mesh, owners[0], owners[1]):
                flip_edge(mesh, edge)
                flipped_this_pass += 1
        flips += flipped_this_pass
        if flipped_this_pass == 0:
            locally_optimal = True
            break
    return SwapReport(passes=passes, flips=flips, locally_optimal=locally_optimal)
