import pytest

from cutbench.evaluation import ProtocolConfig
from cutbench.generators import DistributionSpec, generate_batch
from cutbench.tuning import (
    GridSpec,
    NoDefaultError,
    default_params,
    grid_points,
    grid_search,
    tuning_table_csv,
)


class TestGridPoints:
    def test_tenure_grid_has_fourteen_points(self):
        points = grid_points(GridSpec("tenure", 20, 150, 10))
        assert len(points) == 14
        assert points[0] == 20 and points[-1] == 150

    def test_tau_grid_has_nine_points(self):
        points = grid_points(GridSpec("tau", 1.1, 1.9, 0.1))
        assert len(points) == 9
        assert points == pytest.approx([1.1, 1.2, 1.3, 1.4, 1.5, 1.6, 1.7, 1.8, 1.9])

    def test_single_point_grid(self):
        assert grid_points(GridSpec("tenure", 30, 30, 10)) == [30]

    def test_invalid_grids_rejected(self):
        with pytest.raises(ValueError):
            GridSpec("tenure", 50, 20, 10)
        with pytest.raises(ValueError):
            GridSpec("tau", 1.1, 1.9, 0)
        with pytest.raises(ValueError, match="unknown parameter"):
            GridSpec("alpha", 0, 1, 0.1)


class TestGridSearch:
    def validation_graphs(self):
        spec = DistributionSpec("er", n=12, params={"p": 0.5}, weight_scheme="signed0pm1", seed=0)
        return generate_batch(spec, 4, base_seed=3)

    def test_returns_argmax_and_full_table(self):
        grid = GridSpec("tenure", 2, 8, 2)
        best, table = grid_search(
            "tabu", grid, self.validation_graphs(), ProtocolConfig(episodes=8)
        )
        assert set(table) == {2, 4, 6, 8}
        best_mean = table[best][0]
        assert best_mean == max(mean for mean, _ in table.values())
        # ties break toward the smaller parameter
        tied = [p for p, (mean, _) in sorted(table.items()) if mean == best_mean]
        assert best == tied[0]

    def test_single_point_grid_returns_it(self):
        best, table = grid_search(
            "tabu",
            GridSpec("tenure", 5, 5, 1),
            self.validation_graphs(),
            ProtocolConfig(episodes=3),
        )
        assert best == 5 and set(table) == {5}

    def test_empty_validation_rejected(self):
        with pytest.raises(ValueError, match="empty"):
            grid_search("tabu", GridSpec("tenure", 2, 4, 2), [], ProtocolConfig())

    def test_parameter_solver_mismatch(self):
        with pytest.raises(ValueError, match="tenure grids"):
            grid_search(
                "eo", GridSpec("tenure", 2, 4, 2), self.validation_graphs(), ProtocolConfig()
            )

    def test_csv_layout(self):
        table = {20.0: (0.95, 0.01), 30.0: (0.99, 0.005)}
        csv = tuning_table_csv(table)
        lines = csv.splitlines()
        assert lines[0] == "param,mean_ratio,std_ratio"
        assert lines[1] == "20,0.950000,0.010000"


class TestDefaultParams:
    def test_every_tuned_row_served_verbatim(self):
        expected = [
            ("gset_er", "unweighted01", None, (80, 1.4)),
            ("gset_skew", "unweighted01", None, (90, 1.4)),
            ("ba", "unweighted01", None, (110, 1.3)),
            ("ws", "unweighted01", None, (140, 1.4)),
            ("hk", "unweighted01", None, (100, 1.4)),
            ("phase_transition", "unweighted01", None, (20, 1.8)),
            ("gset_er", "signed0pm1", None, (30, 1.7)),
            ("gset_skew", "signed0pm1", None, (90, 1.4)),
            ("gset_toroidal", "signedpm1", None, (100, 1.4)),
            ("ba", "signed0pm1", 800, (120, 1.2)),
            ("ws", "signed0pm1", None, (110, 1.3)),
            ("hk", "signed0pm1", None, (110, 1.2)),
            ("er", "signed0pm1", 200, (10, 1.9)),
            ("ba", "signed0pm1", 200, (20, 1.6)),
            ("sk", "signedpm1", None, (20, 1.8)),
            ("physics_regular", "signedpm1", None, (20, 1.4)),
        ]
        for family, scheme, n, params in expected:
            assert default_params(family, scheme, n) == params

    def test_unlisted_combination_errors(self):
        with pytest.raises(NoDefaultError):
            default_params("phase_transition", "signed0pm1")
        with pytest.raises(NoDefaultError):
            default_params("er", "unweighted01")
        with pytest.raises(NoDefaultError):
            default_params("sk", "unweighted01")

    def test_size_variants_need_n(self):
        with pytest.raises(NoDefaultError, match="pass n"):
            default_params("ba", "signed0pm1")
        assert default_params("ba", "signed0pm1", n=250) == (20, 1.6)
        assert default_params("ba", "signed0pm1", n=700) == (120, 1.2)
