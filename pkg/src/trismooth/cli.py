"""Command line front end.

Subcommands: generate (grid | delaunay), smooth, swap, optimize, quality,
scatter. Mesh files are json or node-ele (detected from the extension,
overridable with --format); reports and scatter data go to stdout unless
the subcommand writes them to --out. Runs are deterministic for fixed
inputs, flags and seeds.

Exit codes: 0 success, 1 usage error, 2 invalid or malformed mesh,
3 internal invariant violation.
"""

from __future__ import annotations

import argparse
import sys

from . import io as mesh_io
from .generators import GridSpec, delaunay, random_point_set, structured_grid
from .mesh import Mesh, MeshError
from .pipeline import PipelineConfig, optimize
from .quality import quality_report, rebin, scatter_data
from .smoothing import SmoothConfig, smooth
from .swapping import swap_pass

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_BAD_MESH = 2
EXIT_INTERNAL = 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad flags; 2 means "bad mesh" here
    def error(self, message):
        raise UsageError(message)


def _bins(text: str):
    try:
        edges = tuple(float(tok) for tok in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad bin edges {text!r}") from None
    if len(edges) < 2 or any(b <= a for a, b in zip(edges, edges[1:])):
        raise argparse.ArgumentTypeError("bin edges must be strictly increasing")
    if edges[0] != 0.0 or edges[-1] != 1.0:
        raise argparse.ArgumentTypeError("bin edges must span [0, 1]")
    return edges


def _add_in(p):
    p.add_argument("--in", dest="infile", required=True, metavar="PATH", help="input mesh file")
    p.add_argument("--format", choices=mesh_io.MESH_FORMATS, help="mesh format override")


def _add_out(p, required=True):
    p.add_argument("--out", metavar="PATH", required=required, help="output mesh file")


def _add_smooth_flags(p, default_method):
    p.add_argument("--method", choices=("laplacian", "mdm", "lw-mdm"), default=default_method)
    p.add_argument("--tol", type=float, default=None, help="convergence tolerance (default: 1e-6 x bbox diagonal)")
    p.add_argument("--max-iters", type=int, default=100)
    p.add_argument("--safe", action="store_true", help="reject node moves that invert a triangle")


def _add_report_flags(p):
    p.add_argument("--report", choices=("json", "csv"), default="json")
    p.add_argument("--bins", type=_bins, default=None, help="histogram edges, e.g. 0,0.2,0.4,0.6,0.8,1")


def build_parser() -> _Parser:
    parser = _Parser(prog="trismooth", description="Planar triangular mesh optimization.")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="build a test mesh")
    kind = gen.add_subparsers(dest="kind", required=True)
    grid = kind.add_parser("grid", help="structured rectangle grid")
    grid.add_argument("--nx", type=int, required=True)
    grid.add_argument("--ny", type=int, required=True)
    grid.add_argument("--pattern", choices=("diagonal", "union-jack"), default="diagonal")
    grid.add_argument("--jitter", type=float, default=0.0, help="node displacement, as a fraction of the cell size")
    grid.add_argument("--seed", type=int, default=0)
    _add_out(grid)
    grid.add_argument("--format", choices=mesh_io.MESH_FORMATS, help="mesh format override")
    dln = kind.add_parser("delaunay", help="Delaunay mesh of seeded random points")
    dln.add_argument("--points", type=int, required=True)
    dln.add_argument("--seed", type=int, default=0)
    _add_out(dln)
    dln.add_argument("--format", choices=mesh_io.MESH_FORMATS, help="mesh format override")

    sm = sub.add_parser("smooth", help="relocate interior nodes")
    _add_in(sm)
    _add_out(sm)
    _add_smooth_flags(sm, default_method="mdm")

    sw = sub.add_parser("swap", help="flip edges to raise minimum angles")
    _add_in(sw)
    _add_out(sw)
    sw.add_argument("--max-passes", type=int, default=50)

    opt = sub.add_parser("optimize", help="smooth, then swap; prints a before/after report")
    _add_in(opt)
    _add_out(opt, required=False)
    _add_smooth_flags(opt, default_method="lw-mdm")
    opt.add_argument("--max-passes", type=int, default=50)
    opt.add_argument("--no-swap", action="store_true", help="smoothing only")
    opt.add_argument("--rounds", type=int, default=1, help="smooth+swap rounds")
    opt.add_argument("--seed", type=int, default=0, help="accepted for scripting parity; the pipeline is deterministic")
    _add_report_flags(opt)

    qa = sub.add_parser("quality", help="histogram and average element quality")
    _add_in(qa)
    qa.add_argument("--out", metavar="PATH", help="write the report here instead of stdout")
    _add_report_flags(qa)

    sc = sub.add_parser("scatter", help="per-triangle (area, perimeter) data")
    _add_in(sc)
    sc.add_argument("--out", metavar="PATH", help="write here instead of stdout")
    sc.add_argument("--svg", action="store_true", help="emit an svg plot instead of csv")

    return parser


def _read_mesh(args) -> Mesh:
    fmt = args.format or mesh_io.detect_format(args.infile)
    if fmt is None:
        raise UsageError(f"cannot infer mesh format of {args.infile!r}; pass --format")
    return mesh_io.load_mesh(args.infile, fmt)


def _write_mesh(mesh: Mesh, args) -> None:
    fmt = getattr(args, "format", None) or mesh_io.detect_format(args.out)
    if fmt is None:
        raise UsageError(f"cannot infer mesh format of {args.out!r}; pass --format")
    mesh_io.save_mesh(mesh, args.out, fmt)


def _write_out(data: bytes, out: str | None) -> None:
    if out is None:
        sys.stdout.buffer.write(data)
        sys.stdout.buffer.flush()
    else:
        with open(out, "wb") as fh:
            fh.write(data)


def _from_flags(factory, **kwargs):
    # bad flag values are usage errors, not bad-mesh errors
    try:
        return factory(**kwargs)
    except ValueError as e:
        raise UsageError(str(e)) from None


def _smooth_config(args) -> SmoothConfig:
    return _from_flags(
        SmoothConfig,
        method=args.method,
        tolerance=args.tol,
        max_iters=args.max_iters,
        safe_mode=args.safe,
    )


def _run(args) -> int:
    if args.command == "generate":
        if args.kind == "grid":
            spec = _from_flags(
                GridSpec, nx=args.nx, ny=args.ny, pattern=args.pattern, jitter=args.jitter, seed=args.seed
            )
            mesh = structured_grid(spec)
        else:
            points = _from_flags(random_point_set, n=args.points, seed=args.seed)
            mesh = delaunay(points, seed=args.seed)
        _write_mesh(mesh, args)
        print(f"wrote {len(mesh.vertices)} vertices, {mesh.n_triangles} triangles", file=sys.stderr)
        return EXIT_OK

    if args.command == "smooth":
        mesh = _read_mesh(args)
        result = smooth(mesh, _smooth_config(args))
        _write_mesh(mesh, args)
        state = "converged" if result.converged else "stopped"
        print(f"{state} after {result.iterations_run} iterations", file=sys.stderr)
        return EXIT_OK

    if args.command == "swap":
        if args.max_passes < 1:
            raise UsageError("max-passes must be >= 1")
        mesh = _read_mesh(args)
        report = swap_pass(mesh, max_passes=args.max_passes)
        _write_mesh(mesh, args)
        print(f"{report.flips} flips in {report.passes} passes", file=sys.stderr)
        return EXIT_OK

    if args.command == "optimize":
        if args.max_passes < 1:
            raise UsageError("max-passes must be >= 1")
        mesh = _read_mesh(args)
        config = _from_flags(
            PipelineConfig,
            smooth=_smooth_config(args),
            swap_enabled=not args.no_swap,
            rounds=args.rounds,
        )
        report = optimize(mesh, config, swap_max_passes=args.max_passes)
        if args.bins is not None:
            report.before = rebin(report.before, args.bins)
            report.after = rebin(report.after, args.bins)
        if args.out:
            _write_mesh(mesh, args)
        _write_out(mesh_io.emit_report(report, args.report), None)
        return EXIT_OK

    if args.command == "quality":
        mesh = _read_mesh(args)
        report = quality_report(mesh, args.bins)
        _write_out(mesh_io.emit_report(report, args.report), args.out)
        return EXIT_OK

    if args.command == "scatter":
        mesh = _read_mesh(args)
        data = mesh_io.emit_scatter(scatter_data(mesh), "svg" if args.svg else "csv")
        _write_out(data, args.out)
        return EXIT_OK

    raise AssertionError(f"unhandled command {args.command!r}")


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return _run(args)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (mesh_io.ParseError, MeshError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_BAD_MESH
    except Exception as e:  # noqa: BLE001 - anything else is on us
        print(f"internal error: {e}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
