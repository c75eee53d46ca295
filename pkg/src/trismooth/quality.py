"""Element and mesh quality measurement.

The per-element metric is the normalized area-to-edge distortion value

    alpha = 2*sqrt(3) * |CA x CB| / (|CA|^2 + |AB|^2 + |BC|^2)

which is 1 for an equilateral triangle and 0 for a collinear one. Mesh
level summaries are a binned histogram (percent of elements per quality
band), the unweighted average, and per-triangle (area, perimeter) scatter
points whose spread measures how even the elements are.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .mesh import Mesh, cross2

SQRT3 = math.sqrt(3.0)

#: Histogram bands used by all default reports: 0.0-0.2 ... 0.8-1.0.
DEFAULT_BINS = (0.0, 0.2, 0.4, 0.6, 0.8, 1.0)


def distortion_alpha(a, b, c) -> float:
    """Quality of the triangle (a, b, c), in [0, 1].

    Invariant under translation, rotation, uniform scaling and vertex
    permutation. Raises ValueError when all three points coincide (the
    denominator vanishes).
    """
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    c = np.asarray(c, dtype=np.float64)
    ca = a - c
    cb = b - c
    ab = b - a
    denom = ca @ ca + cb @ cb + ab @ ab
    if denom == 0.0:
        raise ValueError("all three points coincide; alpha is undefined")
    cross = abs(ca[0] * cb[1] - ca[1] * cb[0])
    return 2.0 * SQRT3 * cross / denom


def triangle_alphas(mesh: Mesh) -> np.ndarray:
    """Distortion alpha for every triangle of the mesh."""
    p = mesh.vertices[mesh.triangles]
    ca = p[:, 0] - p[:, 2]
    cb = p[:, 1] - p[:, 2]
    ab = p[:, 1] - p[:, 0]
    denom = (ca * ca).sum(axis=1) + (cb * cb).sum(axis=1) + (ab * ab).sum(axis=1)
    if np.any(denom == 0.0):
        bad = int(np.where(denom == 0.0)[0][0])
        raise ValueError(f"triangle {bad} has all three points coincident")
    cross = np.abs(cross2(ca, cb))
    return 2.0 * SQRT3 * cross / denom


@dataclass
class QualityReport:
    """Per-element alphas plus their histogram and unweighted average."""

    alphas: np.ndarray
    bin_edges: np.ndarray
    counts: np.ndarray
    percentages: np.ndarray
    average: float

    @property
    def bins(self) -> list:
        """(lower, upper, count, percentage) per histogram band."""
        return [
            (float(lo), float(hi), int(n), float(pct))
            for lo, hi, n, pct in zip(
                self.bin_edges[:-1], self.bin_edges[1:], self.counts, self.percentages
            )
        ]


def quality_report(mesh: Mesh, bin_edges=None) -> QualityReport:
    """Histogram and average of element quality over the whole mesh.

    Bins are left-closed, right-open, except the last which is closed so
    that alpha = 1 lands in the top band. ``bin_edges`` must be strictly
    increasing and span [0, 1]; the default is the five 0.2-wide bands.
    """
    if mesh.n_triangles == 0:
        raise ValueError("cannot report quality of an empty mesh")
    edges = np.asarray(DEFAULT_BINS if bin_edges is None else bin_edges, dtype=np.float64)
    if edges.ndim != 1 or len(edges) < 2 or np.any(np.diff(edges) <= 0):
        raise ValueError("bin_edges must be strictly increasing")
    if edges[0] != 0.0 or edges[-1] != 1.0:
        raise ValueError("bin_edges must span [0, 1]")
    alphas = triangle_alphas(mesh)
    counts, _ = np.histogram(alphas, bins=edges)
    percentages = 100.0 * counts / len(alphas)
    return QualityReport(
        alphas=alphas,
        bin_edges=edges,
        counts=counts,
        percentages=percentages,
        average=float(alphas.mean()),
    )


def rebin(report: QualityReport, bin_edges) -> QualityReport:
    """Re-histogram an existing report's alphas against new edges.

    Lets a snapshot taken with the default bands be reshaped later, e.g.
    the before state of a mesh that has since been optimized in place.
    """
    edges = np.asarray(bin_edges, dtype=np.float64)
    if edges.ndim != 1 or len(edges) < 2 or np.any(np.diff(edges) <= 0):
        raise ValueError("bin_edges must be strictly increasing")
    if edges[0] != 0.0 or edges[-1] != 1.0:
        raise ValueError("bin_edges must span [0, 1]")
    counts, _ = np.histogram(report.alphas, bins=edges)
    return QualityReport(
        alphas=report.alphas,
        bin_edges=edges,
        counts=counts,
        percentages=100.0 * counts / len(report.alphas),
        average=report.average,
    )


def scatter_data(mesh: Mesh) -> np.ndarray:
    """One (unsigned area, perimeter) row per triangle."""
    p = mesh.vertices[mesh.triangles]
    area = np.abs(0.5 * cross2(p[:, 1] - p[:, 0], p[:, 2] - p[:, 0]))
    perim = (
        np.linalg.norm(p[:, 1] - p[:, 0], axis=1)
        + np.linalg.norm(p[:, 2] - p[:, 1], axis=1)
        + np.linalg.norm(p[:, 0] - p[:, 2], axis=1)
    )
    return np.column_stack([area, perim])


def evenness(points) -> float:
    """Mean coefficient of variation of areas and perimeters.

    Lower means a more concentrated point cloud, i.e. more even elements.
    Uses the population standard deviation so results are bit-stable.
    """
    pts = np.asarray(points, dtype=np.float64)
    if pts.ndim != 2 or pts.shape[1] != 2:
        raise ValueError("expected an (n, 2) array of (area, perimeter) points")
    if len(pts) < 2:
        raise ValueError("evenness needs at least 2 points")
    means = pts.mean(axis=0)
    if np.any(means == 0.0):
        raise ValueError("evenness is undefined when a column mean is zero")
    cv = pts.std(axis=0) / means
    return float(cv.mean())
