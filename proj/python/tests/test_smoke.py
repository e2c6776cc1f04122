import json
import os
from pathlib import Path

import numpy as np
import pytest

import cadistort as cd

FIXTURES = Path(os.environ.get("CADISTORT_FIXTURES", Path(__file__).resolve().parents[2] / "data" / "fixtures"))


def diag2():
    return cd.ContingencyTable(["r1", "r2"], ["x", "y"], np.array([[2.0, 0.0], [0.0, 2.0]]))


def test_diag2_by_hand():
    model = cd.build_model(diag2())
    np.testing.assert_allclose(model.r, [0.5, 0.5])
    np.testing.assert_allclose(model.D, [[0.25, -0.25], [-0.25, 0.25]])
    assert cd.ca_total_inertia(model) == pytest.approx(1.0)
    assert cd.tca_total_dispersion(model) == pytest.approx(1.0)

    ca = cd.ca_decompose(model)
    assert ca.k == 1
    assert ca.deltas[0] == pytest.approx(1.0)
    tca = cd.tca_decompose(model)
    assert tca.deltas[0] == pytest.approx(1.0)
    np.testing.assert_allclose(np.abs(tca.row_scores[:, 0]), [1.0, 1.0])


def test_load_fixture_and_reports():
    table = cd.load_table(str(FIXTURES / "small.csv"))
    assert table.shape == (6, 5)
    assert cd.sparsity(table) == pytest.approx(4 / 30)
    model = cd.build_model(table)
    dec = cd.tca_decompose(model, 3)
    report = cd.distortion_report(model, dec, cd.Axis.ROWS, [1, 2, 3], table.row_labels)
    # Weighted average of embedded distances equals the cumulative deltas.
    np.testing.assert_allclose(report.embedded_weighted_average, np.cumsum(dec.deltas), atol=1e-12)
    assert all(row[0] != cd.Distortion.STRETCHING for row in report.classification)

    full = cd.tca_decompose(model)
    bounds = cd.intrinsic_dimension_bounds(full.deltas, cd.tca_total_dispersion(model))
    assert 1 <= bounds.lower <= bounds.upper
    doc = json.loads(cd.emit_report(report, bounds, "json"))
    assert doc["method"] == "TCA"
    assert [p["label"] for p in doc["points"]] == table.row_labels
    assert cd.emit_report(report, bounds, "tsv").startswith("# method=TCA")

    svg = cd.emit_map(dec, table.row_labels, table.col_labels)
    assert svg.count("<circle") == 6 and svg.count("<polygon") == 5


def test_ca_matches_numpy_svd():
    table = cd.load_table(str(FIXTURES / "small.csv"))
    model = cd.build_model(table)
    s = model.D / np.sqrt(np.outer(model.r, model.c))
    sigma = np.linalg.svd(s, compute_uv=False)
    dec = cd.ca_decompose(model)
    np.testing.assert_allclose(dec.deltas, sigma[: dec.k], atol=1e-12)


def test_errors():
    with pytest.raises(cd.InputError):
        cd.load_table(str(FIXTURES / "bad.csv"))
    with pytest.raises(ValueError):
        cd.load_table(str(FIXTURES / "zero_row.csv"))
    table = cd.load_table(str(FIXTURES / "zero_row.csv"), drop_empty=True)
    assert table.row_labels == ["r1", "r3"]
    with pytest.raises(ValueError):
        cd.intrinsic_dimension_bounds(np.array([]), 1.0)


def test_seeded_iterative_is_deterministic():
    rng = np.random.default_rng(3)
    counts = rng.integers(1, 20, size=(25, 24)).astype(float)
    table = cd.ContingencyTable([f"r{i}" for i in range(25)], [f"c{j}" for j in range(24)], counts)
    model = cd.build_model(table)
    a = cd.tca_decompose(model, 3, cd.TsvdStrategy.ITERATIVE, 10, 5)
    b = cd.tca_decompose(model, 3, cd.TsvdStrategy.ITERATIVE, 10, 5)
    np.testing.assert_array_equal(a.deltas, b.deltas)
    np.testing.assert_array_equal(a.row_scores, b.row_scores)
