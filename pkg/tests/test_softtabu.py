import numpy as np
import pytest
from scipy import stats

from cutbench.generators import DistributionSpec
from cutbench.graph import CutState, Graph, brute_force_optimum, cut_value
from cutbench.softtabu import (
    GAIN_SCALE_FLOOR,
    LinearPolicy,
    TrainConfig,
    TrainingDivergedError,
    features,
    greedy_rollout,
    initial_gain_scale,
    load_policy,
    q_values,
    reward,
    save_policy,
    select_action,
    softtabu_solve,
    td_update,
    train,
    zero_policy,
)

from helpers import random_graph


class TestFeatures:
    def test_edgeless_graph_at_step_zero(self):
        g = Graph(3, [])
        st = CutState(g, [0, 0, 0])
        x = features(st, initial_gain_scale(st), horizon=6)
        assert np.array_equal(x[:, 0], [0, 0, 0])
        assert np.array_equal(x[:, 1], [1, 1, 1])

    def test_gain_normalized_by_initial_scale(self):
        g = Graph(2, [(0, 1, 5)])
        st = CutState(g, [0, 0])
        scale = initial_gain_scale(st)
        assert scale == 5
        x = features(st, scale, horizon=4)
        assert x[:, 0].tolist() == [1.0, 1.0]

    def test_time_feature_after_flip(self):
        g = Graph(2, [(0, 1, 5)])
        st = CutState(g, [0, 0])
        st.flip(0)
        x = features(st, initial_gain_scale(st), horizon=4)
        assert x[0, 1] == pytest.approx(1 / 4)
        assert x[1, 1] == 1.0  # never flipped

    def test_time_feature_caps_at_one(self):
        g = Graph(2, [(0, 1, 1)])
        st = CutState(g, [0, 0])
        st.flip(0)
        for _ in range(10):
            st.flip(1)
        x = features(st, 1.0, horizon=3)
        assert x[0, 1] == 1.0

    def test_scale_floor_prevents_division_blowup(self):
        assert initial_gain_scale(CutState(Graph(2, []), [0, 0])) == GAIN_SCALE_FLOOR


class TestQValues:
    def test_constant_policy(self):
        pol = LinearPolicy(np.zeros(2), 0.7)
        x = np.array([[0.1, 0.2], [0.5, 0.9]])
        assert q_values(pol, x).tolist() == [0.7, 0.7]

    def test_dot_product(self):
        pol = LinearPolicy(np.array([1.0, 0.0]), 0.0)
        x = np.array([[0.5, 1.0], [-0.2, 1.0]])
        assert q_values(pol, x).tolist() == [0.5, -0.2]

    def test_argmax_invariant_under_bias_shift(self):
        x = np.random.default_rng(1).normal(size=(8, 2))
        a = q_values(LinearPolicy(np.array([0.3, -0.6]), 0.0), x)
        b = q_values(LinearPolicy(np.array([0.3, -0.6]), 5.0), x)
        assert int(np.argmax(a)) == int(np.argmax(b))


class TestSelectAction:
    def test_epsilon_one_is_uniform(self):
        n, draws = 10, 10_000
        rng = np.random.default_rng(3)
        feats = np.zeros((n, 2))
        counts = np.bincount(
            [select_action(zero_policy(), feats, 1.0, rng) for _ in range(draws)],
            minlength=n,
        )
        assert stats.chisquare(counts).pvalue > 0.01

    def test_epsilon_zero_takes_argmax(self):
        feats = np.array([[0.1, 0.0], [0.9, 0.0], [0.5, 0.0]])
        pol = LinearPolicy(np.array([1.0, 0.0]), 0.0)
        rng = np.random.default_rng(0)
        assert select_action(pol, feats, 0.0, rng) == 1

    def test_ties_go_to_vertex_zero(self):
        feats = np.zeros((5, 2))
        assert select_action(zero_policy(), feats, 0.0, np.random.default_rng(0)) == 0

    def test_invalid_epsilon(self):
        with pytest.raises(ValueError, match="epsilon"):
            select_action(zero_policy(), np.zeros((2, 2)), 1.5, np.random.default_rng(0))


class TestReward:
    def test_improvement_scaled_by_n(self):
        assert reward(10, 14, False, 4) == pytest.approx(1.0)

    def test_no_improvement_no_local_opt(self):
        assert reward(7, 7, False, 10) == 0.0

    def test_new_local_opt_bonus(self):
        assert reward(7, 7, True, 10) == pytest.approx(0.01)

    def test_bonus_suppressed_when_improving(self):
        assert reward(7, 9, True, 10) == pytest.approx(0.2)

    def test_decreasing_best_rejected(self):
        with pytest.raises(ValueError):
            reward(9, 7, False, 10)


class TestTdUpdate:
    def test_single_transition_hand_case(self):
        pol = zero_policy()
        dw, db = td_update(pol, np.array([1.0, 0.0]), target=1.0, learning_rate=0.1)
        assert dw.tolist() == [0.1, 0.0]
        assert db == pytest.approx(0.1)

    def test_update_moves_q_toward_target(self):
        pol = LinearPolicy(np.array([0.2, -0.1]), 0.05)
        x = np.array([0.4, 0.8])
        target = 2.0
        before = float(x @ pol.weights + pol.bias)
        dw, db = td_update(pol, x, target, 0.5)
        after = float(x @ (pol.weights + dw) + pol.bias + db)
        assert abs(target - after) < abs(target - before)

    def test_matches_finite_difference_gradient(self):
        rng = np.random.default_rng(9)
        for _ in range(20):
            w = rng.normal(size=2)
            b = float(rng.normal())
            x = rng.normal(size=2)
            y = float(rng.normal())
            alpha = 0.3
            dw, db = td_update(LinearPolicy(w, b), x, y, alpha)

            def loss(wv, bv):
                return 0.5 * (y - (x @ wv + bv)) ** 2

            h = 1e-6
            for i in range(2):
                e = np.zeros(2)
                e[i] = h
                grad = (loss(w + e, b) - loss(w - e, b)) / (2 * h)
                assert dw[i] == pytest.approx(-alpha * grad, rel=1e-5, abs=1e-9)
            grad_b = (loss(w, b + h) - loss(w, b - h)) / (2 * h)
            assert db == pytest.approx(-alpha * grad_b, rel=1e-5, abs=1e-9)


class TestRollouts:
    def test_zero_steps_returns_initial_value(self):
        g = random_graph(np.random.default_rng(5), 12)
        out = softtabu_solve(zero_policy(), g, episodes=1, steps=0, seed=3)
        expected = cut_value(g, np.random.default_rng(3).integers(0, 2, g.n))
        assert out.best_value == expected

    def test_best_never_below_initial(self):
        g = random_graph(np.random.default_rng(6), 20)
        for seed in range(5):
            out = greedy_rollout(zero_policy(), g, seed, steps=40)
            init = cut_value(g, np.random.default_rng(seed).integers(0, 2, g.n))
            assert out.best_value >= init

    def test_rollout_determinism(self):
        g = random_graph(np.random.default_rng(7), 18)
        pol = LinearPolicy(np.array([1.0, 0.4]), 0.0)
        a = softtabu_solve(pol, g, episodes=5, steps=30, seed=1)
        b = softtabu_solve(pol, g, episodes=5, steps=30, seed=1)
        assert a.best_value == b.best_value
        assert np.array_equal(a.best_side, b.best_side)

    def test_trajectory_non_decreasing(self):
        g = random_graph(np.random.default_rng(8), 22)
        out = greedy_rollout(LinearPolicy(np.array([1.0, 0.3]), 0.0), g, 4, steps=44)
        values = [v for _, v in out.trajectory]
        assert all(a < b for a, b in zip(values, values[1:]))

    def test_handcrafted_policy_solves_small_instances(self):
        # positive gain weight plus a stale-vertex preference acts tabu-like
        pol = LinearPolicy(np.array([1.0, 0.3]), 0.0)
        rng = np.random.default_rng(10)
        hits = 0
        for i in range(10):
            g = random_graph(rng, 10)
            opt, _ = brute_force_optimum(g)
            out = softtabu_solve(pol, g, episodes=20, steps=2 * g.n, seed=50 * i)
            hits += out.best_value == opt
        assert hits >= 9


class TestTraining:
    def small_distribution(self):
        return DistributionSpec(
            "er", n=12, params={"p": 0.4}, weight_scheme="signed0pm1", seed=0
        )

    def small_config(self, **overrides):
        base = dict(
            episodes=12,
            learning_rate=1e-3,
            validation_count=3,
            validation_interval=6,
            validation_episodes=1,
            batch_size=16,
            replay_capacity=200,
            seed=1,
        )
        base.update(overrides)
        return TrainConfig(**base)

    def test_zero_learning_rate_returns_initial_policy(self):
        pol = train(self.small_distribution(), self.small_config(learning_rate=0.0))
        assert pol.weights.tolist() == [0.0, 0.0]
        assert pol.bias == 0.0

    def test_training_is_deterministic(self):
        a = train(self.small_distribution(), self.small_config())
        b = train(self.small_distribution(), self.small_config())
        assert a.weights.tolist() == b.weights.tolist()
        assert a.bias == b.bias

    def test_metadata_recorded(self):
        pol = train(self.small_distribution(), self.small_config())
        assert pol.metadata["trained_on"] == "er"
        assert pol.metadata["episodes"] == 12
        assert len(pol.metadata["validation_history"]) == 2

    def test_divergence_reports_step(self):
        with np.errstate(all="ignore"), pytest.raises(TrainingDivergedError) as info:
            train(self.small_distribution(), self.small_config(learning_rate=1e150))
        assert info.value.step > 0

    def test_invalid_config_rejected(self):
        with pytest.raises(ValueError):
            TrainConfig(discount=1.5)
        with pytest.raises(ValueError):
            TrainConfig(episodes=0)


class TestPolicyIO:
    def test_round_trip(self, tmp_path):
        pol = LinearPolicy(np.array([0.25, -1.5]), 0.75, {"note": "test"})
        path = tmp_path / "policy.json"
        save_policy(pol, path)
        loaded = load_policy(path)
        assert loaded.weights.tolist() == [0.25, -1.5]
        assert loaded.bias == 0.75
        assert loaded.metadata == {"note": "test"}

    def test_version_check(self, tmp_path):
        path = tmp_path / "policy.json"
        path.write_text('{"format_version": 99, "weights": [0, 0], "bias": 0}')
        with pytest.raises(ValueError, match="version"):
            load_policy(path)
