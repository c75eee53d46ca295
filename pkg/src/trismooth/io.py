"""Mesh file formats, report emission and scatter plots.

Two mesh formats: a versioned json document and the two-file node/ele
text convention (vertex and triangle tables with an index column, 0- or
1-based, detected from the first label). Reports and scatter data go out
as csv (6-decimal floats, trailing zeros trimmed) or json (full float
precision), scatter alternatively as a self-contained svg.
"""

from __future__ import annotations

import csv
import io
import json
from pathlib import Path

import numpy as np

from .mesh import Mesh
from .pipeline import PipelineReport
from .quality import QualityReport

MESH_FORMATS = ("json", "node-ele")

DOCUMENT_VERSION = 1


class ParseError(ValueError):
    """Input bytes do not describe a mesh in the claimed format."""


def fmt_float(x) -> str:
    """Float to csv text: 6 decimals, trailing zeros trimmed, >= 1 kept."""
    x = float(x)
    if x == 0.0:
        x = 0.0  # avoid "-0.0"
    s = f"{x:.6f}".rstrip("0")
    return s + "0" if s.endswith(".") else s


# ----------------------------------------------------------------------
# mesh documents


def serialize_mesh(mesh: Mesh, format: str = "json") -> bytes:
    """Mesh to bytes; json round-trips coordinates bit-exactly."""
    if format == "json":
        doc = {
            "version": DOCUMENT_VERSION,
            "vertices": mesh.vertices.tolist(),
            "triangles": mesh.triangles.tolist(),
            "boundary": [int(i) for i in np.flatnonzero(mesh.is_boundary)],
        }
        return (json.dumps(doc, indent=2) + "\n").encode()
    if format == "node-ele":
        # repr() is the shortest exact decimal, so text round-trips too
        lines = [f"{len(mesh.vertices)} 2 0 0"]
        for i, (x, y) in enumerate(mesh.vertices):
            lines.append(f"{i} {float(x)!r} {float(y)!r}")
        lines.append(f"{mesh.n_triangles} 3 0")
        for t, (a, b, c) in enumerate(mesh.triangles):
            lines.append(f"{t} {a} {b} {c}")
        return ("\n".join(lines) + "\n").encode()
    raise ValueError(f"unknown mesh format {format!r}")


def _parse_json_mesh(text: str) -> Mesh:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"invalid json: {e}") from None
    if not isinstance(doc, dict):
        raise ParseError("top level must be an object")
    if doc.get("version") != DOCUMENT_VERSION:
        raise ParseError(f"missing or unsupported version (expected {DOCUMENT_VERSION})")
    for key in ("vertices", "triangles"):
        if not isinstance(doc.get(key), list):
            raise ParseError(f"missing or invalid field {key!r}")
    mesh = Mesh(doc["vertices"], doc["triangles"])
    boundary = doc.get("boundary")
    if boundary is not None:
        # optional and recomputed anyway, but garbage should not parse
        n = len(mesh.vertices)
        for i in boundary:
            if not isinstance(i, int) or not 0 <= i < n:
                raise ParseError(f"boundary index {i!r} out of range")
    return mesh


class _Lines:
    """Non-blank, comment-stripped lines with their 1-based numbers."""

    def __init__(self, text: str):
        self.items = []
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if line:
                self.items.append((lineno, line.split()))
        self.pos = 0

    def next(self, what: str):
        if self.pos >= len(self.items):
            raise ParseError(f"unexpected end of input, expected {what}")
        item = self.items[self.pos]
        self.pos += 1
        return item


def _int(token: str, lineno: int, what: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise ParseError(f"line {lineno}: {what} {token!r} is not an integer") from None


def _parse_node_ele(text: str) -> Mesh:
    lines = _Lines(text)

    lineno, header = lines.next("node header")
    if len(header) not in (3, 4) or header[1] != "2":
        raise ParseError(f"line {lineno}: malformed node header (want '<n> 2 0 0')")
    n_vertices = _int(header[0], lineno, "vertex count")
    if any(_int(tok, lineno, "header field") != 0 for tok in header[2:]):
        raise ParseError(f"line {lineno}: vertex attributes/markers are not supported")

    vertices = np.empty((n_vertices, 2))
    base = 0
    for k in range(n_vertices):
        lineno, tok = lines.next("vertex line")
        if len(tok) != 3:
            raise ParseError(f"line {lineno}: vertex line needs 'index x y'")
        label = _int(tok[0], lineno, "vertex index")
        if k == 0:
            if label not in (0, 1):
                raise ParseError(f"line {lineno}: first vertex index must be 0 or 1")
            base = label
        elif label != base + k:
            raise ParseError(f"line {lineno}: vertex index {label}, expected {base + k}")
        try:
            vertices[k] = float(tok[1]), float(tok[2])
        except ValueError:
            raise ParseError(f"line {lineno}: bad coordinate") from None

    lineno, header = lines.next("ele header")
    if len(header) not in (2, 3) or header[1] != "3":
        raise ParseError(f"line {lineno}: malformed ele header (want '<n> 3 0')")
    n_triangles = _int(header[0], lineno, "triangle count")
    if len(header) == 3 and _int(header[2], lineno, "header field") != 0:
        raise ParseError(f"line {lineno}: triangle attributes are not supported")

    triangles = np.empty((n_triangles, 3), dtype=np.int64)
    tbase = 0
    for k in range(n_triangles):
        lineno, tok = lines.next("triangle line")
        if len(tok) != 4:
            raise ParseError(f"line {lineno}: triangle line needs 'index a b c'")
        label = _int(tok[0], lineno, "triangle index")
        if k == 0:
            if label not in (0, 1):
                raise ParseError(f"line {lineno}: first triangle index must be 0 or 1")
            tbase = label
        elif label != tbase + k:
            raise ParseError(f"line {lineno}: triangle index {label}, expected {tbase + k}")
        for j in range(3):
            v = _int(tok[1 + j], lineno, "vertex reference") - base
            if not 0 <= v < n_vertices:
                raise ParseError(
                    f"line {lineno}: triangle references vertex {v + base} of {n_vertices}"
                )
            triangles[k, j] = v

    if lines.pos != len(lines.items):
        lineno, _ = lines.next("")
        raise ParseError(f"line {lineno}: trailing content after triangle table")
    return Mesh(vertices, triangles)


def parse_mesh(data, format: str = "json") -> Mesh:
    """Bytes (or str) to Mesh.

    node-ele input is the .node content followed by the .ele content in
    one stream; the vertex count in the header delimits the two tables.
    """
    text = data.decode() if isinstance(data, (bytes, bytearray)) else data
    if format == "json":
        return _parse_json_mesh(text)
    if format == "node-ele":
        return _parse_node_ele(text)
    raise ValueError(f"unknown mesh format {format!r}")


def detect_format(path) -> str | None:
    """Mesh format implied by a file extension, or None."""
    suffix = Path(path).suffix.lower()
    if suffix == ".json":
        return "json"
    if suffix in (".node", ".ele"):
        return "node-ele"
    return None


def load_mesh(path, format: str | None = None) -> Mesh:
    """Read a mesh file; a .node or .ele path pulls in its sibling."""
    path = Path(path)
    if format is None:
        format = detect_format(path)
        if format is None:
            raise ValueError(f"cannot infer mesh format from {path.name!r}")
    if format == "node-ele":
        base = path.with_suffix("")
        data = base.with_suffix(".node").read_bytes() + base.with_suffix(".ele").read_bytes()
    else:
        data = path.read_bytes()
    return parse_mesh(data, format)


def save_mesh(mesh: Mesh, path, format: str | None = None) -> None:
    """Write a mesh file; node-ele writes both the .node and .ele files."""
    path = Path(path)
    if format is None:
        format = detect_format(path)
        if format is None:
            raise ValueError(f"cannot infer mesh format from {path.name!r}")
    data = serialize_mesh(mesh, format)
    if format == "node-ele":
        node, _, ele = data.decode().partition(f"\n{mesh.n_triangles} 3 0\n")
        base = path.with_suffix("")
        base.with_suffix(".node").write_text(node + "\n")
        base.with_suffix(".ele").write_text(f"{mesh.n_triangles} 3 0\n" + ele)
    else:
        path.write_bytes(data)


# ----------------------------------------------------------------------
# reports


def _quality_json(report: QualityReport) -> dict:
    return {
        "alphas": np.asarray(report.alphas).tolist(),
        "bin_edges": np.asarray(report.bin_edges).tolist(),
        "counts": np.asarray(report.counts).tolist(),
        "percentages": np.asarray(report.percentages).tolist(),
        "average": float(report.average),
    }


def _quality_rows(report: QualityReport, prefix=()) -> list:
    rows = [
        (*prefix, fmt_float(lo), fmt_float(hi), str(count), f"{pct:.2f}")
        for lo, hi, count, pct in report.bins
    ]
    rows.append((*prefix, "average", f"{report.average:.4f}"))
    return rows


def _csv_bytes(rows) -> bytes:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerows(rows)
    return buf.getvalue().encode()


def emit_report(report, format: str = "json") -> bytes:
    """Quality or pipeline report to bytes.

    csv is one (lower, upper, count, percentage) row per histogram band
    plus an average row, percentages at 2 decimals;
    pipeline reports prefix each row with its section. json carries the
    full structure, including the per-round smoothing and swap logs.
    """
    if isinstance(report, QualityReport):
        if format == "json":
            return (json.dumps(_quality_json(report), indent=2) + "\n").encode()
        if format == "csv":
            return _csv_bytes([("lower", "upper", "count", "percentage")] + _quality_rows(report))
    elif isinstance(report, PipelineReport):
        if format == "json":
            doc = {
                "before": _quality_json(report.before),
                "after": _quality_json(report.after),
                "smooth_results": [
                    {
                        "iterations_run": r.iterations_run,
                        "converged": r.converged,
                        "max_displacement_last": r.max_displacement_last,
                    }
                    for r in report.smooth_results
                ],
                "swap_reports": [
                    {"passes": r.passes, "flips": r.flips, "locally_optimal": r.locally_optimal}
                    for r in report.swap_reports
                ],
            }
            return (json.dumps(doc, indent=2) + "\n").encode()
        if format == "csv":
            rows = [("section", "lower", "upper", "count", "percentage")]
            rows += _quality_rows(report.before, prefix=("before",))
            rows += _quality_rows(report.after, prefix=("after",))
            return _csv_bytes(rows)
    else:
        raise TypeError(f"cannot report on {type(report).__name__}")
    raise ValueError(f"unknown report format {format!r}")


# ----------------------------------------------------------------------
# scatter output

SVG_WIDTH = 480
SVG_HEIGHT = 360
_MARGIN = {"left": 54.0, "right": 16.0, "top": 16.0, "bottom": 42.0}


def _axis_range(values) -> tuple:
    lo = float(values.min())
    hi = float(values.max())
    if lo == hi:  # degenerate extent, pad so the scale is defined
        pad = abs(lo) * 0.5 or 0.5
        return lo - pad, hi + pad
    return lo, hi


def _scatter_svg(pts: np.ndarray) -> str:
    x0, x1 = _MARGIN["left"], SVG_WIDTH - _MARGIN["right"]
    y0, y1 = SVG_HEIGHT - _MARGIN["bottom"], _MARGIN["top"]
    if len(pts):
        ax, bx = _axis_range(pts[:, 0])
        ay, by = _axis_range(pts[:, 1])
    else:
        ax, bx, ay, by = 0.0, 1.0, 0.0, 1.0

    def sx(v):
        return x0 + (v - ax) / (bx - ax) * (x1 - x0)

    def sy(v):
        return y0 + (v - ay) / (by - ay) * (y1 - y0)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{SVG_WIDTH}" '
        f'height="{SVG_HEIGHT}" viewBox="0 0 {SVG_WIDTH} {SVG_HEIGHT}">',
        f'<rect width="{SVG_WIDTH}" height="{SVG_HEIGHT}" fill="white"/>',
        f'<line x1="{x0}" y1="{y0}" x2="{x1}" y2="{y0}" stroke="black"/>',
        f'<line x1="{x0}" y1="{y0}" x2="{x0}" y2="{y1}" stroke="black"/>',
        f'<text x="{(x0 + x1) / 2}" y="{SVG_HEIGHT - 6}" text-anchor="middle" '
        f'font-size="12">area</text>',
        f'<text x="12" y="{(y0 + y1) / 2}" text-anchor="middle" font-size="12" '
        f'transform="rotate(-90 12 {(y0 + y1) / 2})">perimeter</text>',
        f'<text x="{x0}" y="{y0 + 14}" text-anchor="middle" font-size="10">{fmt_float(ax)}</text>',
        f'<text x="{x1}" y="{y0 + 14}" text-anchor="middle" font-size="10">{fmt_float(bx)}</text>',
        f'<text x="{x0 - 4}" y="{y0 + 3}" text-anchor="end" font-size="10">{fmt_float(ay)}</text>',
        f'<text x="{x0 - 4}" y="{y1 + 3}" text-anchor="end" font-size="10">{fmt_float(by)}</text>',
    ]
    for area, perim in pts:
        parts.append(
            f'<circle cx="{sx(area):.2f}" cy="{sy(perim):.2f}" r="3" '
            f'fill="steelblue" fill-opacity="0.7"/>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def emit_scatter(points, format: str = "csv") -> bytes:
    """(area, perimeter) rows to csv, or to an svg scatter plot.

    The svg carries exactly one circle per point on linear axes spanning
    the data extents; it is plain text generated field by field, so
    identical input bytes always give identical output bytes.
    """
    pts = np.asarray(points, dtype=np.float64)
    if pts.size == 0:
        pts = pts.reshape(0, 2)
    if pts.ndim != 2 or pts.shape[1] != 2:
        raise ValueError("expected an (n, 2) array of (area, perimeter) points")
    if format == "csv":
        rows = [("area", "perimeter")]
        rows += [(fmt_float(a), fmt_float(p)) for a, p in pts]
        return _csv_bytes(rows)
    if format == "svg":
        return _scatter_svg(pts).encode()
    raise ValueError(f"unknown scatter format {format!r}")
