"""Indexed planar triangular mesh with adjacency and boundary queries.

Vertices are stored as an (n, 2) float array, triangles as an (m, 3) int
array of vertex indices. All triangles are counter-clockwise after
construction; clockwise input triples are reoriented at the door so that
every downstream algorithm can rely on a single orientation.
"""

from __future__ import annotations

import numpy as np


class MeshError(ValueError):
    """Invalid mesh input: bad indices, non-manifold edges, broken fans."""


def cross2(u, v) -> np.ndarray:
    """z-component of the cross product of planar vectors (broadcasts)."""
    u = np.asarray(u)
    v = np.asarray(v)
    return u[..., 0] * v[..., 1] - u[..., 1] * v[..., 0]


class Mesh:
    """Planar triangular mesh with derived adjacency.

    Attributes
    ----------
    vertices : ndarray, shape (n, 2)
        Node coordinates, float64.
    triangles : ndarray, shape (m, 3)
        Vertex indices per triangle, counter-clockwise.
    vertex_tris : list of list of int
        Incident triangle indices per vertex. ``len(vertex_tris[i])`` is
        the element count e_i used by the smoothing schemes.
    is_boundary : ndarray of bool, shape (n,)
        True iff the vertex lies on an edge with exactly one incident
        triangle.
    edge_tris : dict
        Maps a sorted vertex pair ``(u, v)`` to the list of incident
        triangle indices (length 1 or 2).
    """

    def __init__(self, vertices, triangles):
        vertices = np.array(vertices, dtype=np.float64)
        triangles = np.array(triangles, dtype=np.int64)
        if vertices.ndim != 2 or vertices.shape[1] != 2:
            raise MeshError(f"vertices must be (n, 2), got {vertices.shape}")
        if not np.all(np.isfinite(vertices)):
            raise MeshError("vertex coordinates must be finite")
        if triangles.size == 0:
            triangles = triangles.reshape(0, 3)
        if triangles.ndim != 2 or triangles.shape[1] != 3:
            raise MeshError(f"triangles must be (m, 3), got {triangles.shape}")

        n = len(vertices)
        if triangles.size and (triangles.min() < 0 or triangles.max() >= n):
            bad = np.where((triangles < 0) | (triangles >= n))[0][0]
            raise MeshError(f"triangle {bad} references a vertex out of range")
        for t, (a, b, c) in enumerate(triangles):
            if a == b or b == c or a == c:
                raise MeshError(f"triangle {t} repeats a vertex index")

        self.vertices = vertices
        self.triangles = triangles
        self._orient_ccw()
        self._rebuild()

    # ------------------------------------------------------------------
    # construction helpers

    def _orient_ccw(self):
        areas = self.signed_areas()
        flipped = areas < 0.0
        if np.any(flipped):
            tri = self.triangles[flipped]
            self.triangles[flipped] = tri[:, [0, 2, 1]]

    def _rebuild(self):
        """Recompute adjacency and boundary flags from the triangle list.

        Called at construction and after every topology change; never
        during smoothing (coordinates alone do not affect adjacency).
        """
        n = len(self.vertices)
        self.vertex_tris = [[] for _ in range(n)]
        self.edge_tris = {}
        for t, tri in enumerate(self.triangles):
            for k in range(3):
                u, v = int(tri[k]), int(tri[(k + 1) % 3])
                self.vertex_tris[u].append(t)
                key = (u, v) if u < v else (v, u)
                owners = self.edge_tris.setdefault(key, [])
                owners.append(t)
                if len(owners) > 2:
                    raise MeshError(f"edge {key} is shared by more than 2 triangles")
        self.is_boundary = np.zeros(n, dtype=bool)
        for (u, v), owners in self.edge_tris.items():
            if len(owners) == 1:
                self.is_boundary[u] = True
                self.is_boundary[v] = True

    # ------------------------------------------------------------------
    # queries

    def __len__(self):
        return len(self.vertices)

    @property
    def n_triangles(self) -> int:
        return len(self.triangles)

    def copy(self) -> "Mesh":
        other = Mesh.__new__(Mesh)
        other.vertices = self.vertices.copy()
        other.triangles = self.triangles.copy()
        other._rebuild()
        return other

    def signed_area(self, t: int) -> float:
        """Half the cross product of two edge vectors; positive for CCW."""
        a, b, c = self.vertices[self.triangles[t]]
        return 0.5 * float(cross2(b - a, c - a))

    def signed_areas(self) -> np.ndarray:
        p = self.vertices[self.triangles]
        return 0.5 * cross2(p[:, 1] - p[:, 0], p[:, 2] - p[:, 0])

    def degenerate_triangles(self, eps: float = 0.0) -> np.ndarray:
        """Indices of triangles with signed area <= eps.

        The builder accepts such triangles (smoothing is the tool meant to
        repair them); this is the validation hook that reports them.
        """
        return np.where(self.signed_areas() <= eps)[0]

    def neighbors(self, v: int) -> list:
        """Distinct vertices sharing an edge with v, in index order."""
        out = set()
        for t in self.vertex_tris[v]:
            for w in self.triangles[t]:
                if w != v:
                    out.add(int(w))
        return sorted(out)

    def corner_of(self, t: int, v: int) -> tuple:
        """Rotate triangle t so it reads (v, q, r) counter-clockwise."""
        a, b, c = self.triangles[t]
        if v == a:
            return int(b), int(c)
        if v == b:
            return int(c), int(a)
        if v == c:
            return int(a), int(b)
        raise MeshError(f"vertex {v} is not a corner of triangle {t}")

    def interior_fan(self, v: int) -> list:
        """Closed ring of incident triangles around an interior vertex.

        Returns a list of ``(triangle index, (q, r))`` where (v, q, r) is
        the CCW ordering of each triangle and consecutive opposite edges
        telescope: the r of one entry is the q of the next, and the last
        r closes back onto the first q.
        """
        if self.is_boundary[v]:
            raise MeshError(f"vertex {v} is on the boundary; fan is not closed")
        by_q = {}
        for t in self.vertex_tris[v]:
            q, r = self.corner_of(t, v)
            if q in by_q:
                raise MeshError(f"inconsistent orientation around vertex {v}")
            by_q[q] = (t, q, r)
        if not by_q:
            raise MeshError(f"vertex {v} has no incident triangles")
        start = next(iter(by_q))
        ring = []
        cur = start
        for _ in range(len(by_q)):
            if cur not in by_q:
                raise MeshError(f"non-manifold neighborhood at vertex {v}")
            t, q, r = by_q[cur]
            ring.append((t, (q, r)))
            cur = r
        if cur != start:
            raise MeshError(f"non-manifold neighborhood at vertex {v}")
        return ring

    def interior_edges(self) -> list:
        """Sorted vertex pairs of edges with exactly two incident triangles."""
        return sorted(k for k, owners in self.edge_tris.items() if len(owners) == 2)

    def bbox_diagonal(self) -> float:
        if len(self.vertices) == 0:
            return 0.0
        span = self.vertices.max(axis=0) - self.vertices.min(axis=0)
        return float(np.hypot(span[0], span[1]))


def build_mesh(vertices, triangles) -> Mesh:
    """Build a mesh from raw vertex coordinates and index triples.

    Clockwise triples are reoriented to CCW, adjacency and boundary flags
    are computed, and non-manifold input is rejected. Zero-area triangles
    are permitted; see :meth:`Mesh.degenerate_triangles`.
    """
    return Mesh(vertices, triangles)


def signed_area(mesh: Mesh, t: int) -> float:
    return mesh.signed_area(t)


def interior_fan(mesh: Mesh, v: int) -> list:
    return mesh.interior_fan(v)
