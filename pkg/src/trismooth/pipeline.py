"""Hybrid optimization: smooth to convergence, then swap to optimality.

One round is the reference procedure (relocate nodes first, then repair
the topology); multiple rounds alternate the two. Quality snapshots
before and after use the default histogram bands so reports from
different runs line up.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .mesh import Mesh
from .quality import QualityReport, quality_report
from .smoothing import SmoothConfig, SmoothResult, smooth
from .swapping import SwapReport, swap_pass


@dataclass
class PipelineConfig:
    smooth: SmoothConfig = field(default_factory=SmoothConfig)
    swap_enabled: bool = True
    rounds: int = 1

    def __post_init__(self):
        if self.rounds < 1:
            raise ValueError("rounds must be >= 1")


@dataclass
class PipelineReport:
    """Before/after quality plus the per-round smoothing and swap logs.

    ``smooth_results`` always has one entry per round; ``swap_reports``
    is empty when swapping is disabled.
    """

    before: QualityReport
    after: QualityReport
    smooth_results: list
    swap_reports: list


def optimize(mesh: Mesh, config: PipelineConfig | None = None, swap_max_passes: int = 50) -> PipelineReport:
    """Run the smoothing/swapping pipeline in place and report on it."""
    if config is None:
        config = PipelineConfig()
    before = quality_report(mesh)
    smooth_results: list[SmoothResult] = []
    swap_reports: list[SwapReport] = []
    for _ in range(config.rounds):
        smooth_results.append(smooth(mesh, config.smooth))
        if config.swap_enabled:
            swap_reports.append(swap_pass(mesh, max_passes=swap_max_passes))
    after = quality_report(mesh)
    return PipelineReport(
        before=before,
        after=after,
        smooth_results=smooth_results,
        swap_reports=swap_reports,
    )
