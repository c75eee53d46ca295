"""Scikit-learn style wrappers around the functional mesh operations.

Each transformer treats a :class:`~trismooth.mesh.Mesh` (or a raw
``(vertices, triangles)`` pair) as the sample ``X``. ``fit`` only
validates; ``transform`` returns a new optimized mesh and leaves the
input untouched, so the wrappers slot into ``sklearn.pipeline.Pipeline``
and hyperparameter search without surprises.
"""

from __future__ import annotations

from sklearn.base import BaseEstimator, TransformerMixin

from .mesh import Mesh
from .pipeline import PipelineConfig, optimize
from .smoothing import SmoothConfig, smooth
from .swapping import swap_pass


def as_mesh(X) -> Mesh:
    """Validation helper: accept a Mesh or a (vertices, triangles) pair."""
    if isinstance(X, Mesh):
        return X
    if isinstance(X, (tuple, list)) and len(X) == 2:
        return Mesh(X[0], X[1])
    raise TypeError(
        "expected a Mesh or a (vertices, triangles) pair, "
        f"got {type(X).__name__}"
    )


class MeshSmoother(TransformerMixin, BaseEstimator):
    """Node-relocation transformer (laplacian, mdm or lw-mdm).

    After ``transform`` the convergence log is available as ``result_``.
    """

    def __init__(self, method="mdm", tolerance=None, max_iters=100, safe_mode=False):
        self.method = method
        self.tolerance = tolerance
        self.max_iters = max_iters
        self.safe_mode = safe_mode

    def _config(self) -> SmoothConfig:
        return SmoothConfig(
            method=self.method,
            tolerance=self.tolerance,
            max_iters=self.max_iters,
            safe_mode=self.safe_mode,
        )

    def fit(self, X, y=None):
        as_mesh(X)
        self._config()
        return self

    def transform(self, X) -> Mesh:
        out = as_mesh(X).copy()
        self.result_ = smooth(out, self._config())
        return out


class EdgeSwapper(TransformerMixin, BaseEstimator):
    """Min-angle edge-swapping transformer; log lands in ``report_``."""

    def __init__(self, max_passes=50):
        self.max_passes = max_passes

    def fit(self, X, y=None):
        as_mesh(X)
        return self

    def transform(self, X) -> Mesh:
        out = as_mesh(X).copy()
        self.report_ = swap_pass(out, max_passes=self.max_passes)
        return out


class MeshOptimizer(TransformerMixin, BaseEstimator):
    """Full hybrid pipeline: smooth, then swap, for a number of rounds.

    The before/after quality report of the last ``transform`` is stored
    as ``report_``.
    """

    def __init__(
        self,
        method="lw-mdm",
        tolerance=None,
        max_iters=100,
        safe_mode=False,
        swap=True,
        rounds=1,
        max_passes=50,
    ):
        self.method = method
        self.tolerance = tolerance
        self.max_iters = max_iters
        self.safe_mode = safe_mode
        self.swap = swap
        self.rounds = rounds
        self.max_passes = max_passes

    def _config(self) -> PipelineConfig:
        return PipelineConfig(
            smooth=SmoothConfig(
                method=self.method,
                tolerance=self.tolerance,
                max_iters=self.max_iters,
                safe_mode=self.safe_mode,
            ),
            swap_enabled=self.swap,
            rounds=self.rounds,
        )

    def fit(self, X, y=None):
        as_mesh(X)
        self._config()
        return self

    def transform(self, X) -> Mesh:
        out = as_mesh(X).copy()
        self.report_ = optimize(out, self._config(), swap_max_passes=self.max_passes)
        return out
