"""Planar triangular mesh optimization: smoothing, edge swapping, quality."""

from .mesh import Mesh, MeshError, build_mesh, interior_fan, signed_area
from .quality import (
    DEFAULT_BINS,
    QualityReport,
    distortion_alpha,
    evenness,
    quality_report,
    rebin,
    scatter_data,
    triangle_alphas,
)
from .io import (
    ParseError,
    emit_report,
    emit_scatter,
    load_mesh,
    parse_mesh,
    save_mesh,
    serialize_mesh,
)
from .smoothing import (
    SmoothConfig,
    SmoothResult,
    equilateral_apex,
    laplacian_step,
    lw_mdm_step,
    lw_weights,
    mdm_step,
    smooth,
)
from .swapping import SwapReport, flip_edge, should_swap, swap_edge, swap_pass
from .generators import (
    GridSpec,
    canonical_structured,
    canonical_unstructured,
    delaunay,
    random_point_set,
    structured_grid,
)
from .pipeline import PipelineConfig, PipelineReport, optimize
from .estimators import EdgeSwapper, MeshOptimizer, MeshSmoother

__version__ = "0.1.0"

__all__ = [
    "Mesh",
    "MeshError",
    "build_mesh",
    "interior_fan",
    "signed_area",
    "DEFAULT_BINS",
    "QualityReport",
    "distortion_alpha",
    "evenness",
    "quality_report",
    "rebin",
    "scatter_data",
    "triangle_alphas",
    "ParseError",
    "emit_report",
    "emit_scatter",
    "load_mesh",
    "parse_mesh",
    "save_mesh",
    "serialize_mesh",
    "SmoothConfig",
    "SmoothResult",
    "equilateral_apex",
    "laplacian_step",
    "lw_mdm_step",
    "lw_weights",
    "mdm_step",
    "smooth",
    "SwapReport",
    "flip_edge",
    "should_swap",
    "swap_edge",
    "swap_pass",
    "GridSpec",
    "canonical_structured",
    "canonical_unstructured",
    "delaunay",
    "random_point_set",
    "structured_grid",
    "PipelineConfig",
    "PipelineReport",
    "optimize",
    "EdgeSwapper",
    "MeshOptimizer",
    "MeshSmoother",
    "__version__",
]
