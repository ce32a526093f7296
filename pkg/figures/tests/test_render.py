import json

import pytest
from PIL import Image

from cutfigs.render import NoDataError, PlotRequest, render
from cutfigs.schema import ResultsSchemaError, load_results, validate_results


def group(solver, distribution, ratios, train=None, wall=1.0):
    return {
        "solver": solver,
        "distribution": distribution,
        "train_distribution": train,
        "mean_ratio": sum(ratios) / len(ratios) if ratios else None,
        "std_ratio": 0.0,
        "wall_clock_seconds": wall,
        "instances": [
            {
                "instance": f"{distribution}-{i}",
                "best_value": 10,
                "best_known": 10,
                "ratio": r,
                "excluded": False,
                "episodes": 5,
                "steps": 20,
                "timed_out": False,
                "wall_clock_seconds": 0.1,
            }
            for i, r in enumerate(ratios)
        ],
    }


def document(groups):
    return {
        "schema_version": 1,
        "metadata": {"created_utc": "2026-01-01T00:00:00+00:00", "base_seed": 0},
        "groups": groups,
    }


@pytest.fixture
def results_3x2(tmp_path):
    """Three solvers over two distributions."""
    doc = document(
        [
            group("fg", "ba200", [0.81, 0.84, 0.79]),
            group("rg", "ba200", [0.90, 0.93, 0.91]),
            group("tabu", "ba200", [0.99, 1.0, 1.0]),
            group("fg", "er200", [0.83, 0.86]),
            group("rg", "er200", [0.94, 0.95]),
            group("tabu", "er200", [1.0, 1.0]),
        ]
    )
    path = tmp_path / "results.json"
    path.write_text(json.dumps(doc))
    return path, doc


@pytest.fixture
def generalization_results(tmp_path):
    """Synthetic 2x2 train/test pivot."""
    doc = document(
        [
            group("softtabu", "ba200", [0.97], train="ba40"),
            group("softtabu", "er200", [0.95], train="ba40"),
            group("softtabu", "ba200", [0.93], train="er40"),
            group("softtabu", "er200", [0.98], train="er40"),
        ]
    )
    path = tmp_path / "generalization.json"
    path.write_text(json.dumps(doc))
    return path, doc


def test_violin_emits_one_image_and_sidecar_per_distribution(results_3x2, tmp_path):
    path, doc = results_3x2
    out_dir = tmp_path / "figs"
    images = render(PlotRequest(path, "violin", out_dir))
    assert [p.name for p in images] == ["violin_ba200.png", "violin_er200.png"]
    assert all(p.exists() for p in images)
    # sidecar rows reproduce the per-instance ratios exactly
    for distribution in ("ba200", "er200"):
        sidecar = out_dir / f"violin_{distribution}.csv"
        lines = sidecar.read_text().splitlines()
        assert lines[0] == "distribution,solver,instance,ratio"
        expected = [
            f"{distribution},{g['solver']},{r['instance']},{r['ratio']}"
            for g in doc["groups"]
            if g["distribution"] == distribution
            for r in g["instances"]
        ]
        assert lines[1:] == expected


def test_box_kind_renders(results_3x2, tmp_path):
    path, _ = results_3x2
    images = render(PlotRequest(path, "box", tmp_path / "figs"))
    assert len(images) == 2
    assert images[0].name == "box_ba200.png"


def test_heatmap_pivots_train_by_test(generalization_results, tmp_path):
    path, _ = generalization_results
    out_dir = tmp_path / "figs"
    images = render(PlotRequest(path, "heatmap", out_dir))
    assert [p.name for p in images] == ["heatmap.png"]
    lines = (out_dir / "heatmap.csv").read_text().splitlines()
    assert lines[0] == "train_distribution,test_distribution,mean_ratio"
    assert sorted(lines[1:]) == sorted(
        ["ba40,ba200,0.97", "ba40,er200,0.95", "er40,ba200,0.93", "er40,er200,0.98"]
    )


def test_heatmap_without_training_metadata_is_no_data(results_3x2, tmp_path):
    path, _ = results_3x2
    with pytest.raises(NoDataError):
        render(PlotRequest(path, "heatmap", tmp_path / "figs"))


def test_timing_bars_per_distribution(results_3x2, tmp_path):
    path, _ = results_3x2
    out_dir = tmp_path / "figs"
    images = render(PlotRequest(path, "timing", out_dir))
    assert [p.name for p in images] == ["timing_ba200.png", "timing_er200.png"]
    lines = (out_dir / "timing_ba200.csv").read_text().splitlines()
    assert lines[0] == "distribution,solver,wall_clock_seconds"
    assert len(lines) == 4


def test_solver_filter(results_3x2, tmp_path):
    path, _ = results_3x2
    out_dir = tmp_path / "figs"
    render(PlotRequest(path, "violin", out_dir, solvers=("tabu",)))
    lines = (out_dir / "violin_ba200.csv").read_text().splitlines()
    assert all(",tabu," in line for line in lines[1:])


def test_filter_matching_nothing_is_no_data(results_3x2, tmp_path):
    path, _ = results_3x2
    with pytest.raises(NoDataError):
        render(PlotRequest(path, "violin", tmp_path / "figs", solvers=("nope",)))


def test_degenerate_violins_render(tmp_path):
    # one solver with identical ratios, another with a single instance
    doc = document(
        [
            group("tabu", "tiny", [1.0, 1.0, 1.0]),
            group("rg", "tiny", [0.9]),
        ]
    )
    path = tmp_path / "r.json"
    path.write_text(json.dumps(doc))
    images = render(PlotRequest(path, "violin", tmp_path / "figs"))
    assert images[0].exists()


def test_rerender_is_stable(results_3x2, tmp_path):
    path, _ = results_3x2
    dir_a, dir_b = tmp_path / "a", tmp_path / "b"
    images_a = render(PlotRequest(path, "violin", dir_a))
    images_b = render(PlotRequest(path, "violin", dir_b))
    for pa, pb in zip(images_a, images_b):
        assert Image.open(pa).size == Image.open(pb).size
        assert pa.with_suffix(".csv").read_bytes() == pb.with_suffix(".csv").read_bytes()


def test_unknown_kind_rejected(results_3x2, tmp_path):
    path, _ = results_3x2
    with pytest.raises(ValueError, match="unknown plot kind"):
        PlotRequest(path, "scatter", tmp_path)


def test_schema_version_mismatch(tmp_path):
    doc = document([group("fg", "d", [0.5])])
    doc["schema_version"] = 99
    path = tmp_path / "r.json"
    path.write_text(json.dumps(doc))
    with pytest.raises(ResultsSchemaError, match="version 99"):
        load_results(path)


def test_schema_shape_errors():
    with pytest.raises(ResultsSchemaError, match="not a valid results document"):
        validate_results({"schema_version": 1, "groups": []})
