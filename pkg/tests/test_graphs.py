from fractions import Fraction

import numpy as np
import pytest

from annulus.graphs import (
    AdjacencyGraph,
    AnnulusInstance,
    BoundaryAmbiguityError,
    BudgetExceededError,
    build_graph,
    chromatic_number,
    is_proper,
    max_clique,
    max_independent_set,
)

C5_POINTS = [[0.0], [2.0], [4.0], [2.99], [1.01]]
C5_EDGES = [(0, 1), (0, 4), (1, 2), (2, 3), (3, 4)]


@pytest.fixture
def c5():
    return AdjacencyGraph.from_edges(5, C5_EDGES)


class TestInstance:
    def test_float_roundtrip(self):
        inst = AnnulusInstance.from_floats(C5_POINTS, 1.0, 2.0)
        again = AnnulusInstance.from_dict(inst.to_dict())
        assert again.mode == "float"
        assert np.array_equal(again.points, inst.points)
        assert (again.r1, again.r2) == (1.0, 2.0)

    def test_exact_roundtrip(self):
        lattice = np.array([[0, 0], [3, 0], [0, 4]])
        inst = AnnulusInstance.from_lattice(lattice, Fraction(1, 2), 1, 3)
        data = inst.to_dict()
        assert data["mode"] == "exact" and data["scale"] == "1/2"
        again = AnnulusInstance.from_dict(data)
        assert build_graph(again) == build_graph(inst)

    def test_rejects_bad_radii(self):
        with pytest.raises(ValueError):
            AnnulusInstance.from_floats(C5_POINTS, 2.0, 1.0)
        with pytest.raises(ValueError):
            AnnulusInstance.from_floats(C5_POINTS, -1.0, 1.0)

    def test_rejects_non_finite_points(self):
        with pytest.raises(ValueError):
            AnnulusInstance.from_floats([[0.0], [float("nan")]], 1.0, 2.0)


class TestBuildGraph:
    def test_c5_on_a_line(self):
        g = build_graph(AnnulusInstance.from_floats(C5_POINTS, 1.0, 2.0))
        assert g.n == 5
        assert g.edges == C5_EDGES

    def test_unit_disc_when_r1_zero(self):
        pts = [[0.0, 0.0], [0.5, 0.0], [2.0, 0.0]]
        g = build_graph(AnnulusInstance.from_floats(pts, 0.0, 1.0))
        assert g.edges == [(0, 1)]

    def test_boundary_pair_included_by_tolerance(self):
        g = build_graph(AnnulusInstance.from_floats([[0.0], [2.0]], 1.0, 2.0))
        assert g.edges == [(0, 1)]

    def test_strict_boundaries_raises(self):
        inst = AnnulusInstance.from_floats([[0.0], [2.0]], 1.0, 2.0)
        with pytest.raises(BoundaryAmbiguityError, match=r"pair \(0, 1\)"):
            build_graph(inst, strict_boundaries=True)

    def test_strict_ok_when_clear_of_boundaries(self):
        inst = AnnulusInstance.from_floats([[0.0], [1.5]], 1.0, 2.0)
        g = build_graph(inst, strict_boundaries=True)
        assert g.edges == [(0, 1)]

    def test_exact_mode_boundary_is_decided(self):
        # squared distance exactly r2^2: the closed interval keeps the edge
        inst = AnnulusInstance.from_lattice(np.array([[0, 0], [3, 4]]), 1, 1, 5)
        g = build_graph(inst, strict_boundaries=True)
        assert g.edges == [(0, 1)]

    def test_exact_matches_float_away_from_boundaries(self):
        rng = np.random.default_rng(11)
        lattice = rng.integers(-40, 41, size=(30, 2))
        lattice = np.unique(lattice, axis=0)
        inst_e = AnnulusInstance.from_lattice(lattice, Fraction(1, 10), "1/2", "3/2")
        inst_f = AnnulusInstance.from_floats(lattice * 0.1, 0.5, 1.5)
        assert build_graph(inst_e) == build_graph(inst_f)


class TestAdjacency:
    def test_rejects_asymmetric(self):
        a = np.zeros((3, 3), dtype=bool)
        a[0, 1] = True
        with pytest.raises(ValueError):
            AdjacencyGraph(a)

    def test_rejects_self_loops(self):
        a = np.eye(3, dtype=bool)
        with pytest.raises(ValueError):
            AdjacencyGraph(a)

    def test_complement_involution(self, c5):
        assert c5.complement().complement() == c5

    def test_edges_sorted_and_json_roundtrip(self, c5):
        assert c5.edges == sorted(c5.edges)
        assert AdjacencyGraph.from_dict(c5.to_dict()) == c5

    def test_neighbors(self, c5):
        assert c5.neighbors(0) == [1, 4]


class TestSolvers:
    def test_c5_values(self, c5):
        assert max_clique(c5).value == 2
        assert chromatic_number(c5).value == 3
        assert max_independent_set(c5).value == 2

    def test_witnesses_certify(self, c5):
        cl = max_clique(c5)
        assert all(c5.adj[u, v] for u in cl.witness for v in cl.witness if u != v)
        col = chromatic_number(c5)
        assert is_proper(c5, col.colors)
        assert len(set(col.colors)) == col.value
        ind = max_independent_set(c5)
        assert not any(c5.adj[u, v] for u in ind.witness for v in ind.witness)

    def test_empty_and_complete(self):
        empty = AdjacencyGraph(np.zeros((6, 6), dtype=bool))
        assert max_clique(empty).value == 1
        assert chromatic_number(empty).value == 1
        assert max_independent_set(empty).value == 6
        full = AdjacencyGraph(~np.eye(6, dtype=bool))
        assert max_clique(full).value == 6
        assert chromatic_number(full).value == 6
        assert max_independent_set(full).value == 1

    def test_petersen(self):
        outer = [(i, (i + 1) % 5) for i in range(5)]
        inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
        spokes = [(i, i + 5) for i in range(5)]
        g = AdjacencyGraph.from_edges(10, outer + inner + spokes)
        assert max_clique(g).value == 2
        assert chromatic_number(g).value == 3
        assert max_independent_set(g).value == 4

    def test_single_vertex(self):
        g = AdjacencyGraph(np.zeros((1, 1), dtype=bool))
        assert chromatic_number(g).value == 1
        assert max_clique(g).witness == [0]

    def test_budget_enforced(self):
        g = AdjacencyGraph(np.zeros((30, 30), dtype=bool))
        with pytest.raises(BudgetExceededError):
            max_clique(g, budget=10)
        with pytest.raises(BudgetExceededError):
            chromatic_number(g, budget=10)
        with pytest.raises(BudgetExceededError):
            max_independent_set(g, budget=10)


class TestIsProper:
    def test_detects_conflict(self, c5):
        assert not is_proper(c5, [1, 1, 2, 3, 2])
        assert is_proper(c5, [1, 2, 1, 2, 3])

    def test_rejects_malformed(self, c5):
        with pytest.raises(ValueError):
            is_proper(c5, [1, 2, 3])
        with pytest.raises(ValueError):
            is_proper(c5, [1, 2, None, 1, 2])
