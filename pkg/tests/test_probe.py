import numpy as np
import pytest

from annulus.graphs import AdjacencyGraph, BudgetExceededError, build_graph
from annulus.probe import (
    AnnulusEmbedder,
    EmbedProblem,
    FEASIBILITY_TOL,
    PairConstraint,
    embed_search,
    embedding_round_trip,
    forbidden_config_residual,
    graph_constraints,
    max_violation,
    penalty_value_grad,
)

C5_EDGES = [(0, 1), (0, 4), (1, 2), (2, 3), (3, 4)]


def c5():
    return AdjacencyGraph.from_edges(5, C5_EDGES)


def k(n):
    return AdjacencyGraph(~np.eye(n, dtype=bool))


class TestConstraints:
    def test_violation_directions(self):
        ge = PairConstraint("ge", 0, 1, lo=1.0)
        assert ge.violation(0.8) == (pytest.approx(0.2), -1.0)
        assert ge.violation(1.2) == (0.0, 0.0)
        le = PairConstraint("le", 0, 1, hi=1.0)
        assert le.violation(1.3) == (pytest.approx(0.3), 1.0)
        assert le.violation(0.9) == (0.0, 0.0)

    def test_out_picks_cheaper_exit(self):
        out = PairConstraint("out", 0, 1, lo=1.0, hi=2.0)
        assert out.violation(0.5) == (0.0, 0.0)
        assert out.violation(2.5) == (0.0, 0.0)
        mag, slope = out.violation(1.2)  # nearest exit is below lo: v = d - lo
        assert mag == pytest.approx(0.2) and slope == 1.0
        mag, slope = out.violation(1.9)  # nearest exit is above hi: v = hi - d
        assert mag == pytest.approx(0.1) and slope == -1.0

    def test_graph_constraints_cover_all_pairs(self):
        g = c5()
        cons = graph_constraints(g, 1.0, 2.0)
        pairs = {(c.i, c.j) for c in cons}
        assert pairs == {(i, j) for i in range(5) for j in range(i + 1, 5)}
        kinds = {c.kind for c in cons}
        assert kinds == {"ge", "le", "out"}

    def test_r1_zero_drops_lower_edge_constraint(self):
        cons = graph_constraints(c5(), 0.0, 1.0)
        assert all(c.kind != "ge" for c in cons)


class TestPenalty:
    def test_zero_when_satisfied(self):
        cons = [PairConstraint("ge", 0, 1, lo=1.0)]
        x = np.array([[0.0, 0.0], [2.0, 0.0]])
        val, grad = penalty_value_grad(cons, x)
        assert val == 0.0
        assert np.all(grad == 0.0)

    def test_gradient_matches_finite_differences(self):
        rng = np.random.default_rng(0)
        cons = [
            PairConstraint("ge", 0, 1, lo=1.3),
            PairConstraint("le", 0, 2, hi=0.7, weight=4.0),
            PairConstraint("out", 1, 2, lo=0.5, hi=1.5),
            PairConstraint("ge", 2, 3, lo=1.1),
            PairConstraint("le", 1, 3, hi=0.4),
        ]
        x = rng.standard_normal((4, 2))
        _, grad = penalty_value_grad(cons, x)
        h = 1e-7
        for i in range(4):
            for kk in range(2):
                xp, xm = x.copy(), x.copy()
                xp[i, kk] += h
                xm[i, kk] -= h
                fd = (penalty_value_grad(cons, xp)[0] - penalty_value_grad(cons, xm)[0]) / (2 * h)
                assert fd == pytest.approx(grad[i, kk], rel=1e-6, abs=1e-8)

    def test_max_violation_ignores_weights(self):
        cons = [PairConstraint("le", 0, 1, hi=1.0, weight=1000.0)]
        x = np.array([[0.0], [1.5]])
        assert max_violation(cons, x) == pytest.approx(0.5)


class TestEmbedSearch:
    def test_c5_on_line(self):
        res = embed_search(EmbedProblem(c5(), 1, 1.0, 2.0, restarts=10, seed=0))
        assert res.residual < FEASIBILITY_TOL
        assert embedding_round_trip(c5(), res.coords, 1.0, 2.0)

    def test_k2_trivial(self):
        res = embed_search(EmbedProblem(k(2), 2, 0.5, 1.0, restarts=3, seed=0))
        assert res.residual < FEASIBILITY_TOL

    def test_k4_on_line_infeasible(self):
        res = embed_search(EmbedProblem(k(4), 1, 1.0, 1.5, restarts=15, seed=0))
        assert min(res.restart_stats) > 0.05

    def test_deterministic(self):
        p = EmbedProblem(c5(), 2, 1.0, 2.0, restarts=5, seed=42)
        a, b = embed_search(p), embed_search(p)
        assert a.restart_stats == b.restart_stats
        assert np.array_equal(a.coords, b.coords)

    def test_budget(self):
        g = AdjacencyGraph(np.zeros((8, 8), dtype=bool))
        with pytest.raises(BudgetExceededError):
            embed_search(EmbedProblem(g, 2, 1.0, 2.0, budget=4))

    def test_round_trip_rejects_wrong_graph(self):
        coords = np.array([[0.0], [1.5], [3.0]])
        path = AdjacencyGraph.from_edges(3, [(0, 1), (1, 2)])
        triangle = AdjacencyGraph.from_edges(3, [(0, 1), (0, 2), (1, 2)])
        assert embedding_round_trip(path, coords, 1.0, 2.0)
        assert not embedding_round_trip(triangle, coords, 1.0, 2.0)


class TestForbiddenConfigs:
    def test_bipartite_line_floor(self):
        res = forbidden_config_residual(
            "bipartite-sphericity", 1, margin=0.1, restarts=25, seed=0
        )
        assert min(res.restart_stats) >= 0.09

    def test_bipartite_relaxed_control_feasible(self):
        res = forbidden_config_residual(
            "bipartite-sphericity", 1, margin=0.1, restarts=25, seed=0, cross_bound=2.0
        )
        assert res.residual < FEASIBILITY_TOL

    def test_three_points_planar_floor(self):
        res = forbidden_config_residual("three-points", 2, margin=0.1, restarts=25, seed=0)
        assert res.residual > 0.01

    def test_three_points_two_middle_points_feasible(self):
        res = forbidden_config_residual(
            "three-points", 2, count=2, margin=0.1, restarts=25, seed=0
        )
        assert res.residual < FEASIBILITY_TOL

    def test_rejects_zero_margin(self):
        with pytest.raises(ValueError, match="margin"):
            forbidden_config_residual("three-points", 2, margin=0.0)

    def test_rejects_unknown_kind(self):
        with pytest.raises(ValueError):
            forbidden_config_residual("mystery", 2, margin=0.1)


class TestEstimator:
    def test_fit_c5(self):
        est = AnnulusEmbedder(n_components=1, r1=1.0, r2=2.0, restarts=10, random_state=0)
        est.fit(c5())
        assert est.feasible_
        assert est.embedding_.shape == (5, 1)
        coords = est.fit_transform(c5())
        assert np.array_equal(coords, est.embedding_)

    def test_accepts_bool_matrix(self):
        est = AnnulusEmbedder(n_components=1, r1=1.0, r2=2.0, restarts=5, random_state=0)
        est.fit(c5().adj)
        assert est.residual_ < FEASIBILITY_TOL

    def test_get_params(self):
        est = AnnulusEmbedder(n_components=3, r1=0.5, r2=1.5)
        p = est.get_params()
        assert p["n_components"] == 3 and p["r2"] == 1.5
