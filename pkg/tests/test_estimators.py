"""Transformer wrappers: sklearn conventions over the mesh operations."""

import numpy as np
import pytest
from sklearn.base import clone
from sklearn.pipeline import Pipeline

from trismooth import build_mesh
from trismooth.estimators import EdgeSwapper, MeshOptimizer, MeshSmoother, as_mesh
from trismooth.mesh import Mesh


def test_as_mesh_accepts_mesh_and_pair(unstructured):
    assert as_mesh(unstructured) is unstructured
    pair = (unstructured.vertices.tolist(), unstructured.triangles.tolist())
    m = as_mesh(pair)
    assert isinstance(m, Mesh)
    assert np.array_equal(m.vertices, unstructured.vertices)
    with pytest.raises(TypeError, match="got str"):
        as_mesh("mesh.json")
    with pytest.raises(TypeError, match="pair"):
        as_mesh((1, 2, 3))


def test_smoother_leaves_input_untouched(structured):
    before = structured.vertices.copy()
    est = MeshSmoother()
    out = est.fit_transform(structured)
    assert np.array_equal(structured.vertices, before)
    assert out is not structured
    assert not np.array_equal(out.vertices, before)
    assert est.result_.iterations_run >= 1


def test_smoother_accepts_raw_pair(structured):
    pair = (structured.vertices, structured.triangles)
    out = MeshSmoother(max_iters=3).fit_transform(pair)
    assert isinstance(out, Mesh)


def test_smoother_validates_on_fit(structured):
    with pytest.raises(ValueError, match="method"):
        MeshSmoother(method="magnetic").fit(structured)
    with pytest.raises(TypeError):
        MeshSmoother().fit(42)


def test_swapper_flips_thin_pair():
    mesh = build_mesh([[0, 0], [2, 0], [1, 0.2], [1, -0.2]], [[0, 1, 2], [0, 3, 1]])
    est = EdgeSwapper()
    out = est.transform(mesh)
    assert est.report_.flips == 1 and est.report_.locally_optimal
    assert (2, 3) in out.edge_tris
    assert (0, 1) in mesh.edge_tris  # input untouched


def test_optimizer_improves_and_logs(unstructured):
    est = MeshOptimizer(rounds=2)
    out = est.fit_transform(unstructured)
    rep = est.report_
    assert rep.after.average > rep.before.average
    assert len(rep.smooth_results) == 2 and len(rep.swap_reports) == 2
    assert out.signed_areas().min() > 0


def test_optimizer_no_swap(unstructured):
    est = MeshOptimizer(swap=False)
    est.transform(unstructured)
    assert est.report_.swap_reports == []


def test_get_set_params_and_clone():
    est = MeshOptimizer(method="mdm", rounds=3, max_passes=7)
    params = est.get_params()
    assert params["method"] == "mdm" and params["rounds"] == 3 and params["max_passes"] == 7
    est.set_params(method="laplacian")
    assert est.method == "laplacian"
    dup = clone(est)
    assert dup.get_params() == est.get_params()


def test_sklearn_pipeline_chains(structured):
    chain = Pipeline([("smooth", MeshSmoother(method="lw-mdm")), ("swap", EdgeSwapper())])
    out = chain.fit_transform(structured)
    assert isinstance(out, Mesh)
    assert chain.named_steps["swap"].report_.locally_optimal

    # the chained result matches the one-shot optimizer round
    one_shot = MeshOptimizer(method="lw-mdm").fit_transform(structured)
    assert np.array_equal(out.vertices, one_shot.vertices)
    assert np.array_equal(out.triangles, one_shot.triangles)
