"""Numeric feasibility probes for annulus embeddings and forbidden configurations.

A candidate embedding is scored by a squared-hinge penalty over pairwise
distance constraints and improved by gradient descent with backtracking line
search, multi-started from seeded random configurations. The reported
residual is the maximum raw constraint violation of the best restart: a
residual below 1e-6 is a feasibility witness (checkable by rebuilding the
graph from the coordinates), a residual bounded away from zero across
restarts is numeric evidence of infeasibility, never a proof.

The forbidden-configuration probes mix strict lower bounds (kept apart by a
margin) with closed upper bounds. The closed bounds carry a large penalty
weight so the optimizer treats them as near-hard, which makes the reported
floor match the interval-argument floor instead of an even split of the
violation between both constraint families.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from sklearn.base import BaseEstimator

from .graphs import AdjacencyGraph, AnnulusInstance, build_graph
from .geometry import n_gamma_witness
from .validation import check_budget, check_dimension, check_radii

__all__ = [
    "PairConstraint",
    "EmbedProblem",
    "EmbedResult",
    "graph_constraints",
    "penalty_value_grad",
    "max_violation",
    "embed_search",
    "forbidden_config_residual",
    "embedding_round_trip",
    "AnnulusEmbedder",
    "CLOSED_WEIGHT",
    "FEASIBILITY_TOL",
]

CLOSED_WEIGHT = 1000.0
FEASIBILITY_TOL = 1e-6
DEFAULT_EMBED_BUDGET = 100


@dataclass(frozen=True)
class PairConstraint:
    """One hinge constraint on the distance between points i and j.

    kind "ge": distance must be at least ``lo``.
    kind "le": distance must be at most ``hi``.
    kind "out": distance must leave the closed interval [lo, hi]; the
    violation is the cheaper exit (downward exits vanish when lo = 0).
    """

    kind: str
    i: int
    j: int
    lo: float = 0.0
    hi: float = 0.0
    weight: float = 1.0

    def violation(self, d: float) -> tuple[float, float]:
        """(violation magnitude, d-slope of the violation) at distance d."""
        if self.kind == "ge":
            return (self.lo - d, -1.0) if d < self.lo else (0.0, 0.0)
        if self.kind == "le":
            return (d - self.hi, 1.0) if d > self.hi else (0.0, 0.0)
        if self.kind == "out":
            if self.lo <= 0.0:
                return (self.hi - d, -1.0) if d < self.hi else (0.0, 0.0)
            if d <= self.lo or d >= self.hi:
                return 0.0, 0.0
            down, up = d - self.lo, self.hi - d
            return (down, 1.0) if down <= up else (up, -1.0)
        raise ValueError(f"unknown constraint kind {self.kind!r}")


def graph_constraints(g: AdjacencyGraph, r1: float, r2: float) -> list[PairConstraint]:
    """Edge pairs must land in [r1, r2], non-edge pairs must stay out."""
    r1, r2 = check_radii(r1, r2)
    cons = []
    for i in range(g.n):
        for j in range(i + 1, g.n):
            if g.adj[i, j]:
                if r1 > 0.0:
                    cons.append(PairConstraint("ge", i, j, lo=r1))
                cons.append(PairConstraint("le", i, j, hi=r2))
            else:
                cons.append(PairConstraint("out", i, j, lo=r1, hi=r2))
    return cons


def penalty_value_grad(
    constraints: list[PairConstraint], coords: np.ndarray
) -> tuple[float, np.ndarray]:
    """Weighted squared-hinge penalty and its gradient in the coordinates."""
    coords = np.asarray(coords, dtype=float)
    grad = np.zeros_like(coords)
    total = 0.0
    for c in constraints:
        diff = coords[c.i] - coords[c.j]
        d = float(np.linalg.norm(diff))
        v, slope = c.violation(d)
        if v <= 0.0:
            continue
        total += c.weight * v * v
        if d > 1e-12:  # direction undefined for coincident points
            pull = (2.0 * c.weight * v * slope / d) * diff
            grad[c.i] += pull
            grad[c.j] -= pull
    return total, grad


def max_violation(constraints: list[PairConstraint], coords: np.ndarray) -> float:
    """Largest raw (unweighted) constraint violation at the coordinates."""
    coords = np.asarray(coords, dtype=float)
    worst = 0.0
    for c in constraints:
        d = float(np.linalg.norm(coords[c.i] - coords[c.j]))
        worst = max(worst, c.violation(d)[0])
    return worst


def _descend(
    constraints: list[PairConstraint], x0: np.ndarray, max_iters: int
) -> np.ndarray:
    x = np.array(x0, dtype=float)
    f, g = penalty_value_grad(constraints, x)
    step = 0.25
    for _ in range(max_iters):
        gnorm2 = float(np.sum(g * g))
        if f <= 1e-22 or gnorm2 <= 1e-26:
            break
        improved = False
        while step > 1e-16:
            xn = x - step * g
            fn, gn = penalty_value_grad(constraints, xn)
            if fn <= f - 1e-4 * step * gnorm2:
                x, f, g = xn, fn, gn
                step *= 1.3
                improved = True
                break
            step *= 0.5
        if not improved:
            break
    return x


def _multi_start(
    constraints: list[PairConstraint],
    shape: tuple[int, int],
    spread: float,
    restarts: int,
    max_iters: int,
    seed: int,
) -> "EmbedResult":
    seeds = np.random.SeedSequence(seed).spawn(max(restarts, 1))
    best_coords, best_res = None, np.inf
    stats = []
    for ss in seeds:
        rng = np.random.default_rng(ss)
        x = _descend(constraints, spread * rng.standard_normal(shape), max_iters)
        res = max_violation(constraints, x)
        stats.append(res)
        if res < best_res:
            best_coords, best_res = x, res
    return EmbedResult(best_coords, best_res, stats)


@dataclass
class EmbedProblem:
    """A graph to embed as an (r1, r2)-annulus graph in R^d."""

    graph: AdjacencyGraph
    d: int
    r1: float
    r2: float
    restarts: int = 20
    max_iters: int = 500
    seed: int = 0
    budget: int = DEFAULT_EMBED_BUDGET


@dataclass
class EmbedResult:
    coords: np.ndarray
    residual: float
    restart_stats: list[float] = field(default_factory=list)


def embed_search(problem: EmbedProblem) -> EmbedResult:
    """Multi-start penalty minimization of an annulus embedding."""
    check_budget(problem.graph.n, problem.budget, "embed_search")
    d = check_dimension(problem.d)
    r1, r2 = check_radii(problem.r1, problem.r2)
    cons = graph_constraints(problem.graph, r1, r2)
    return _multi_start(
        cons, (problem.graph.n, d), r2, problem.restarts, problem.max_iters, problem.seed
    )


def embedding_round_trip(
    g: AdjacencyGraph, coords: np.ndarray, r1: float, r2: float, tolerance: float = 1e-9
) -> bool:
    """True iff the coordinates induce exactly the given graph."""
    inst = AnnulusInstance.from_floats(coords, r1, r2, tolerance)
    return build_graph(inst) == g


def forbidden_config_residual(
    kind: str,
    d: int,
    count: int | None = None,
    gamma: float = 0.99,
    margin: float = 0.1,
    restarts: int = 100,
    max_iters: int = 600,
    seed: int = 0,
    cross_bound: float = 1.0,
) -> EmbedResult:
    """Minimized residual of a forbidden point configuration.

    kind "three-points": two anchors at distance >= 1+margin and ``count``
    points inside both unit balls around them, pairwise >= 1+margin
    (coordinates rows: anchors first, then the points). ``count`` defaults
    to 3 in the plane and to the explicit witness size 2d+2 otherwise
    (``gamma`` sets the ball used for that default).

    kind "bipartite-sphericity": 2d+2 points in two parts of size d+1,
    within-part distances >= 1+margin, cross-part distances <= cross_bound
    (1.0 states the infeasible configuration; larger values give feasible
    control problems).

    A positive margin is required: at margin 0 the violation infimum is 0
    at the constraint boundary and the probe would be vacuous.
    """
    d = check_dimension(d)
    if margin <= 0.0:
        raise ValueError("margin must be positive; the probe is vacuous at margin 0")
    lo = 1.0 + margin
    cons: list[PairConstraint] = []
    if kind == "three-points":
        if count is None:
            count = 3 if d == 2 else len(n_gamma_witness(d, gamma))
        if count < 1:
            raise ValueError("count must be at least 1")
        # rows 0, 1 are the anchors a and b; rows 2.. are the points
        cons.append(PairConstraint("ge", 0, 1, lo=lo))
        for i in range(2, 2 + count):
            cons.append(PairConstraint("le", 0, i, hi=1.0, weight=CLOSED_WEIGHT))
            cons.append(PairConstraint("le", 1, i, hi=1.0, weight=CLOSED_WEIGHT))
            for j in range(i + 1, 2 + count):
                cons.append(PairConstraint("ge", i, j, lo=lo))
        shape = (2 + count, d)
    elif kind == "bipartite-sphericity":
        part = d + 1
        for i in range(2 * part):
            for j in range(i + 1, 2 * part):
                if (i < part) == (j < part):
                    cons.append(PairConstraint("ge", i, j, lo=lo))
                else:
                    cons.append(
                        PairConstraint("le", i, j, hi=cross_bound, weight=CLOSED_WEIGHT)
                    )
        shape = (2 * part, d)
    else:
        raise ValueError(f"unknown forbidden configuration kind {kind!r}")
    return _multi_start(cons, shape, 1.5, restarts, max_iters, seed)


class AnnulusEmbedder(BaseEstimator):
    """Estimator wrapper around :func:`embed_search`.

    ``fit(G)`` accepts an :class:`AdjacencyGraph` or a square boolean
    adjacency matrix and searches for coordinates in R^n_components whose
    annulus graph is G. Attributes after fit: ``embedding_``, ``residual_``,
    ``restart_stats_``, ``feasible_``.
    """

    def __init__(
        self,
        n_components: int = 2,
        r1: float = 1.0,
        r2: float = 2.0,
        restarts: int = 20,
        max_iters: int = 500,
        random_state: int = 0,
    ):
        self.n_components = n_components
        self.r1 = r1
        self.r2 = r2
        self.restarts = restarts
        self.max_iters = max_iters
        self.random_state = random_state

    def fit(self, X, y=None):
        g = X if isinstance(X, AdjacencyGraph) else AdjacencyGraph(np.asarray(X, dtype=bool))
        result = embed_search(
            EmbedProblem(
                g,
                self.n_components,
                self.r1,
                self.r2,
                restarts=self.restarts,
                max_iters=self.max_iters,
                seed=self.random_state,
            )
        )
        self.embedding_ = result.coords
        self.residual_ = result.residual
        self.restart_stats_ = result.restart_stats
        self.feasible_ = result.residual < FEASIBILITY_TOL
        return self

    def fit_transform(self, X, y=None):
        return self.fit(X).embedding_
