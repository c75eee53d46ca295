"""Independent oracles and fixture builders for the test suite.

Everything here is written against the math, not against the library
internals, so agreement between the two is evidence rather than
tautology. Brute force is fine; fixtures are small.
"""

import math

import numpy as np

from trismooth import Mesh, build_mesh

SQRT3 = math.sqrt(3.0)


# ----------------------------------------------------------------------
# small hand-built meshes


def square_fan(center=(0.5, 0.5)) -> Mesh:
    """Unit square split into 4 triangles around one interior vertex."""
    verts = [list(center), [0, 0], [1, 0], [1, 1], [0, 1]]
    tris = [[0, 1, 2], [0, 2, 3], [0, 3, 4], [0, 4, 1]]
    return build_mesh(verts, tris)


def hexagon_fan(center=(0.3, 0.2)) -> Mesh:
    """Regular unit hexagon fanned around one interior vertex."""
    ring = [[math.cos(k * math.pi / 3), math.sin(k * math.pi / 3)] for k in range(6)]
    tris = [[0, 1 + k, 1 + (k + 1) % 6] for k in range(6)]
    return build_mesh([list(center)] + ring, tris)


def thin_pair() -> Mesh:
    """Two slivers on the shared edge (0,0)-(2,0); one flip fixes them."""
    verts = [[0, 0], [2, 0], [1, 0.2], [1, -0.2]]
    return build_mesh(verts, [[0, 1, 2], [0, 3, 1]])


def pacman_star() -> Mesh:
    """Star with a dented rim whose ring centroid lies across the dent.

    Plain Laplacian drags the interior vertex through the mouth and
    inverts the two mouth triangles; the safe smoothing mode must not.
    """
    ring = [[0.1, 0.0]] + [
        [math.cos(math.radians(a)), math.sin(math.radians(a))] for a in range(40, 321, 40)
    ]
    k = len(ring)
    tris = [[0, 1 + i, 1 + (i + 1) % k] for i in range(k)]
    return build_mesh([[0.35, 0.0]] + ring, tris)


# ----------------------------------------------------------------------
# geometry oracles


def convex_hull_count(points) -> int:
    """Hull vertex count via the monotone chain, collinear points dropped."""
    pts = sorted(map(tuple, np.asarray(points, dtype=np.float64)))

    def half(seq):
        out = []
        for p in seq:
            while len(out) >= 2:
                ux, uy = out[-1][0] - out[-2][0], out[-1][1] - out[-2][1]
                vx, vy = p[0] - out[-2][0], p[1] - out[-2][1]
                if ux * vy - uy * vx > 0:
                    break
                out.pop()
            out.append(p)
        return out

    return len(half(pts)) + len(half(reversed(pts))) - 2


def circumcircle(a, b, c):
    """Circumcenter and radius from the perpendicular-bisector system."""
    ax, ay = a
    bx, by = b
    cx, cy = c
    d = 2.0 * (ax * (by - cy) + bx * (cy - ay) + cx * (ay - by))
    ux = ((ax**2 + ay**2) * (by - cy) + (bx**2 + by**2) * (cy - ay) + (cx**2 + cy**2) * (ay - by)) / d
    uy = ((ax**2 + ay**2) * (cx - bx) + (bx**2 + by**2) * (ax - cx) + (cx**2 + cy**2) * (bx - ax)) / d
    return (ux, uy), math.hypot(ax - ux, ay - uy)


def empty_circumcircle_violations(mesh: Mesh, rtol: float = 1e-9) -> int:
    """Count (triangle, vertex) pairs with the vertex strictly inside."""
    bad = 0
    for tri in mesh.triangles:
        (ux, uy), r = circumcircle(*mesh.vertices[tri])
        for v, (x, y) in enumerate(mesh.vertices):
            if v in tri:
                continue
            if math.hypot(x - ux, y - uy) < r * (1.0 - rtol):
                bad += 1
    return bad


def triangle_angles_deg(p0, p1, p2):
    pts = [np.asarray(p) for p in (p0, p1, p2)]
    out = []
    for i in range(3):
        u = pts[(i + 1) % 3] - pts[i]
        v = pts[(i + 2) % 3] - pts[i]
        out.append(math.degrees(math.atan2(abs(u[0] * v[1] - u[1] * v[0]), float(u @ v))))
    return out


def pair_min_angle_deg(mesh: Mesh, t1: int, t2: int) -> float:
    angles = []
    for t in (t1, t2):
        angles += triangle_angles_deg(*mesh.vertices[mesh.triangles[t]])
    return min(angles)


def mesh_min_angle_deg(mesh: Mesh) -> float:
    return min(min(triangle_angles_deg(*mesh.vertices[t])) for t in mesh.triangles)


# ----------------------------------------------------------------------
# dense smoothing oracle


def dense_mdm_step(mesh: Mesh) -> np.ndarray:
    """One Jacobi sweep of the explicitly assembled 2n-by-2n system.

    Row 2i carries the x equation of vertex i, row 2i+1 the y equation:
    e_i on the diagonal, and for each incident triangle with i first in
    CCW order (i, q, r) the apex coefficients
        x: x_q/2 + x_r/2 + (sqrt3/2)(y_q - y_r)
        y: (sqrt3/2)(x_r - x_q) + y_q/2 + y_r/2
    moved to the left side. Boundary rows stay put.
    """
    n = len(mesh.vertices)
    s = SQRT3 / 2.0
    m = np.zeros((2 * n, 2 * n))
    for tri in mesh.triangles:
        for k in range(3):
            a, q, r = (int(tri[k]), int(tri[(k + 1) % 3]), int(tri[(k + 2) % 3]))
            m[2 * a, 2 * a] += 1.0
            m[2 * a + 1, 2 * a + 1] += 1.0
            m[2 * a, 2 * q] -= 0.5
            m[2 * a, 2 * r] -= 0.5
            m[2 * a, 2 * q + 1] -= s
            m[2 * a, 2 * r + 1] += s
            m[2 * a + 1, 2 * q] += s
            m[2 * a + 1, 2 * r] -= s
            m[2 * a + 1, 2 * q + 1] -= 0.5
            m[2 * a + 1, 2 * r + 1] -= 0.5
    x = mesh.vertices.reshape(-1).copy()
    new = x.copy()
    for i in range(n):
        if mesh.is_boundary[i]:
            continue
        for row in (2 * i, 2 * i + 1):
            off = m[row] @ x - m[row, row] * x[row]
            new[row] = -off / m[row, row]
    return new.reshape(n, 2)


# ----------------------------------------------------------------------
# randomized fixture builders


def orientation_consistent(mesh: Mesh) -> bool:
    """No directed edge owned twice, i.e. the mesh is fold-free.

    The builder reverses geometrically inverted triangles to keep areas
    positive, so a fold shows up as a duplicated directed edge rather
    than as a negative area.
    """
    seen = set()
    for a, b, c in mesh.triangles:
        for e in ((a, b), (b, c), (c, a)):
            if e in seen:
                return False
            seen.add(e)
    return True


def jittered_grids(count: int, jitter: float = 0.3):
    """Assorted fold-free jittered grids; interior fans are all closed.

    High jitter can invert a triangle and fold the mesh; such draws are
    skipped by bumping the seed until the orientation is consistent.
    """
    from trismooth import GridSpec, structured_grid

    meshes = []
    for k in range(count):
        pattern = "diagonal" if k % 2 == 0 else "union-jack"
        for bump in range(50):
            spec = GridSpec(
                nx=3 + k % 4, ny=3 + (k // 2) % 3, pattern=pattern, jitter=jitter, seed=k + 1000 * bump
            )
            mesh = structured_grid(spec)
            if orientation_consistent(mesh):
                meshes.append(mesh)
                break
        else:
            raise AssertionError(f"no fold-free draw for grid {k}")
    return meshes


def scramble_flips(mesh: Mesh, seed: int = 0, tries: int = 60) -> int:
    """Randomly flip strictly convex quads, ignoring angle quality.

    De-optimizes a mesh while keeping it a valid planar triangulation
    (flipping the diagonal of a strictly convex quad cannot create
    crossings). Returns the number of flips applied.
    """
    from trismooth import flip_edge

    rng = np.random.default_rng(seed)
    done = 0
    for _ in range(tries):
        edges = [e for e, owners in mesh.edge_tris.items() if len(owners) == 2]
        edge = edges[rng.integers(len(edges))]
        t1, t2 = mesh.edge_tris[edge]
        quad = _quad_cycle(mesh, edge, t1, t2)
        if quad is None or not _strictly_convex(mesh.vertices[quad]):
            continue
        c, d = quad[1], quad[3]
        if (min(c, d), max(c, d)) in mesh.edge_tris:
            continue
        flip_edge(mesh, edge)
        done += 1
    return done


def _quad_cycle(mesh: Mesh, edge, t1: int, t2: int):
    """Quad corners in cyclic order u, c, v, d for shared edge (u, v)."""
    u, v = edge
    c = next(int(i) for i in mesh.triangles[t1] if i not in (u, v))
    d = next(int(i) for i in mesh.triangles[t2] if i not in (u, v))
    return [int(u), c, int(v), d]


def _strictly_convex(corners) -> bool:
    signs = []
    for i in range(4):
        a, b, c = corners[i], corners[(i + 1) % 4], corners[(i + 2) % 4]
        cr = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
        signs.append(cr)
    return all(s > 0 for s in signs) or all(s < 0 for s in signs)


def assert_valid(mesh: Mesh):
    """Manifold, CCW, positive areas; raises on violation."""
    areas = mesh.signed_areas()
    assert (areas > 0).all(), f"nonpositive area: {areas.min()}"
    rebuilt = Mesh(mesh.vertices, mesh.triangles)  # re-runs all door checks
    assert rebuilt.n_triangles == mesh.n_triangles


def isoceles_with_alpha(target: float, origin=(0.0, 0.0)):
    """Triangle with a prescribed quality value, from the closed form.

    For base corners (0,0),(1,0) and apex (0.5,h) the metric reduces to
    sqrt3*h/(0.75 + h*h); the smaller root of the resulting quadratic is
        h = (sqrt3 - sqrt(3 - 3 t^2)) / (2 t).
    """
    if not 0.0 < target <= 1.0:
        raise ValueError("target must be in (0, 1]")
    h = (SQRT3 - math.sqrt(3.0 - 3.0 * target * target)) / (2.0 * target)
    ox, oy = origin
    return [[ox, oy], [ox + 1.0, oy], [ox + 0.5, oy + h]]
