"""Sweep-hyperplane batch coloring for annulus instances.

Vertices are processed by ascending last coordinate. Each still-uncolored
vertex v that the sweep reaches becomes the token of a batch: v plus the
later uncolored vertices within r1/2 of v, skipping any vertex adjacent to
a vertex already in the batch (two batch members at distance exactly r1
would otherwise share a color). The whole batch gets the smallest color not
used by any colored neighbor of any batch member. With r1 = 0 every batch
is a singleton and this is the classical sweep coloring of unit disc graphs.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from sklearn.base import BaseEstimator, ClusterMixin

from .graphs import AnnulusInstance, build_graph, is_proper

__all__ = ["SweepColoring", "sweep_color", "verify_token_invariants", "colors_in_ball", "SweepColorer"]


@dataclass
class SweepColoring:
    """Per-vertex colors (positive ints), per-vertex token vertex, sweep order."""

    colors: list[int]
    tokens: list[int]
    order: list[int]

    @property
    def n_colors(self) -> int:
        return max(self.colors) if self.colors else 0

    def to_dict(self) -> dict:
        return {"colors": self.colors, "tokens": self.tokens, "order": self.order}

    @classmethod
    def from_dict(cls, data: dict) -> "SweepColoring":
        return cls(list(data["colors"]), list(data["tokens"]), list(data["order"]))


def _sweep_order(inst: AnnulusInstance) -> list[int]:
    # ascending last coordinate; ties fall back to the remaining coordinates
    # lexicographically, then the index (simulates a generic rotation)
    pts = inst.lattice if inst.mode == "exact" else inst.points
    return sorted(range(inst.n), key=lambda i: (pts[i, -1], *pts[i, :-1], i))


def _close_pairs(inst: AnnulusInstance) -> np.ndarray:
    """Boolean matrix of pairs at distance <= r1/2."""
    if inst.mode == "exact":
        pts = inst.lattice.astype(np.int64)
        diff = pts[:, None, :] - pts[None, :, :]
        sq = np.einsum("ijk,ijk->ij", diff, diff)
        # dist <= r1/2  <=>  4 * sq * scale^2 <= r1^2, all rational
        q = inst.r1_exact**2 / (4 * inst.scale**2)
        return sq * q.denominator <= q.numerator
    d = np.linalg.norm(inst.points[:, None, :] - inst.points[None, :, :], axis=2)
    return d <= inst.r1 / 2.0


def sweep_color(inst: AnnulusInstance, strict_boundaries: bool = False) -> SweepColoring:
    """Color the instance with the sweep batch algorithm. Always proper."""
    g = build_graph(inst, strict_boundaries=strict_boundaries)
    n = inst.n
    order = _sweep_order(inst)
    close = _close_pairs(inst)
    colors = [0] * n
    tokens = [-1] * n
    for pos, v in enumerate(order):
        if colors[v]:
            continue
        batch = [v]
        for u in order[pos + 1 :]:
            if colors[u] or not close[v, u]:
                continue
            if g.adj[u, batch].any():
                continue
            batch.append(u)
        forbidden = set()
        for w in batch:
            for x in g.neighbors(w):
                if colors[x]:
                    forbidden.add(colors[x])
        c = 1
        while c in forbidden:
            c += 1
        for w in batch:
            colors[w] = c
            tokens[w] = v
    return SweepColoring(colors, tokens, order)


def verify_token_invariants(
    inst: AnnulusInstance, col: SweepColoring, strict_boundaries: bool = False
) -> tuple[bool, list[str]]:
    """Check every structural invariant of a sweep coloring.

    Returns (ok, violations): properness, token within r1/2 of its vertices,
    token-color consistency, tokens first in sweep order, and pairwise token
    separation beyond r1/2.
    """
    n = inst.n
    violations: list[str] = []
    if sorted(col.order) != list(range(n)):
        violations.append("order is not a permutation of the vertices")
        return False, violations
    if len(col.colors) != n or len(col.tokens) != n:
        violations.append("coloring does not cover all vertices")
        return False, violations
    if any(c < 1 for c in col.colors):
        violations.append("colors must be positive integers")
    if any(not 0 <= t < n for t in col.tokens):
        violations.append("token is not a vertex index")
        return False, violations

    g = build_graph(inst, strict_boundaries=strict_boundaries)
    if not is_proper(g, col.colors):
        violations.append("coloring is not proper")

    close = _close_pairs(inst)  # same arithmetic the sweep itself used
    pos = {v: i for i, v in enumerate(col.order)}
    token_set = sorted(set(col.tokens))
    for u in range(n):
        t = col.tokens[u]
        if u != t and not close[u, t]:
            violations.append(f"vertex {u} is farther than r1/2 from its token {t}")
        if col.colors[u] != col.colors[t]:
            violations.append(f"vertex {u} and its token {t} have different colors")
        if pos[t] > pos[u]:
            violations.append(f"token {t} comes after vertex {u} in the sweep order")
    for a_i, t1 in enumerate(token_set):
        for t2 in token_set[a_i + 1 :]:
            if close[t1, t2]:
                violations.append(f"tokens {t1} and {t2} are within r1/2 of each other")
    return not violations, violations


def colors_in_ball(inst: AnnulusInstance, col: SweepColoring, v: int, radius: float) -> int:
    """Number of distinct colors among vertices within ``radius`` of vertex v."""
    if not 0 <= v < inst.n:
        raise ValueError(f"vertex {v} out of range")
    d = np.linalg.norm(inst.points - inst.points[v], axis=1)
    return len({col.colors[u] for u in np.nonzero(d <= radius)[0]})


class SweepColorer(ClusterMixin, BaseEstimator):
    """Estimator wrapper around :func:`sweep_color`.

    ``fit(X)`` treats the rows of X as points of an (r1, r2)-annulus
    instance and colors them; color classes are exposed as 0-based
    ``labels_`` so the usual clustering API applies.

    Attributes after fit: ``colors_`` (1-based), ``tokens_``, ``order_``,
    ``labels_``, ``n_colors_``, ``graph_``.
    """

    def __init__(self, r1: float = 0.0, r2: float = 1.0, tolerance: float = 1e-9):
        self.r1 = r1
        self.r2 = r2
        self.tolerance = tolerance

    def fit(self, X, y=None):
        inst = AnnulusInstance.from_floats(X, self.r1, self.r2, self.tolerance)
        coloring = sweep_color(inst)
        self.coloring_ = coloring
        self.colors_ = np.asarray(coloring.colors)
        self.tokens_ = np.asarray(coloring.tokens)
        self.order_ = np.asarray(coloring.order)
        self.labels_ = self.colors_ - 1
        self.n_colors_ = coloring.n_colors
        self.graph_ = build_graph(inst)
        return self
