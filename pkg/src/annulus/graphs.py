"""Annulus instances, induced graphs, and exact solvers for omega, chi, alpha.

An instance is a point set in R^d with radii r1 <= r2; two points are
adjacent exactly when their Euclidean distance lies in the closed interval
[r1, r2]. Instances carry one of two arithmetic modes:

* float mode: membership is decided with a tolerance band (r1 - tol <= dist
  <= r2 + tol); a strict flag turns near-boundary pairs into errors.
* exact mode: coordinates are integer multiples of a rational scale and
  membership is an exact rational comparison of squared distances, so no
  pair is ever boundary-ambiguous.

The solvers are exact branch-and-bound / iterative-deepening searches meant
for desk-scale verification, guarded by vertex-count budgets.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .validation import (
    BoundaryAmbiguityError,
    BudgetExceededError,
    as_fraction,
    check_budget,
    check_points,
    check_radii,
)

__all__ = [
    "AnnulusInstance",
    "AdjacencyGraph",
    "build_graph",
    "CliqueResult",
    "ColoringResult",
    "IndepResult",
    "max_clique",
    "chromatic_number",
    "max_independent_set",
    "is_proper",
    "DEFAULT_CLIQUE_BUDGET",
    "DEFAULT_COLORING_BUDGET",
]

DEFAULT_CLIQUE_BUDGET = 200
DEFAULT_COLORING_BUDGET = 80
DEFAULT_TOLERANCE = 1e-9


@dataclass
class AnnulusInstance:
    """A finite embedded point set with annulus radii.

    ``points`` always holds float coordinates. In exact mode ``lattice``
    additionally holds the integer coordinate vectors and ``scale`` the
    rational lattice spacing, with ``r1_exact``/``r2_exact`` the rational
    radii used for adjacency decisions.
    """

    dim: int
    r1: float
    r2: float
    points: np.ndarray
    mode: str = "float"
    tolerance: float = DEFAULT_TOLERANCE
    scale: Fraction | None = None
    lattice: np.ndarray | None = None
    r1_exact: Fraction | None = None
    r2_exact: Fraction | None = None

    def __post_init__(self):
        self.r1, self.r2 = check_radii(self.r1, self.r2)
        self.dim = int(self.dim)
        self.points = check_points(self.points, dim=self.dim)
        if self.mode not in ("float", "exact"):
            raise ValueError(f"unknown arithmetic mode {self.mode!r}")
        if self.mode == "exact":
            if self.scale is None or self.lattice is None:
                raise ValueError("exact mode needs integer lattice points and a scale")
            self.lattice = np.asarray(self.lattice)
            if self.lattice.shape != self.points.shape:
                raise ValueError("lattice and points shapes disagree")

    @classmethod
    def from_floats(cls, points, r1, r2, tolerance=DEFAULT_TOLERANCE) -> "AnnulusInstance":
        points = check_points(points)
        return cls(points.shape[1], r1, r2, points, "float", float(tolerance))

    @classmethod
    def from_lattice(cls, lattice_points, scale, r1, r2) -> "AnnulusInstance":
        """Exact-mode instance: coordinates are ``scale`` times integer vectors."""
        lattice = np.asarray(lattice_points)
        if lattice.ndim != 2:
            raise ValueError("lattice points must be a 2d integer array")
        scale = as_fraction(scale)
        if scale <= 0:
            raise ValueError("scale must be positive")
        r1f, r2f = as_fraction(r1), as_fraction(r2)
        pts = lattice.astype(float) * float(scale)
        return cls(
            lattice.shape[1],
            float(r1f),
            float(r2f),
            pts,
            "exact",
            0.0,
            scale,
            lattice,
            r1f,
            r2f,
        )

    @property
    def n(self) -> int:
        return len(self.points)

    def to_dict(self) -> dict:
        if self.mode == "exact":
            return {
                "dim": self.dim,
                "r1": str(self.r1_exact),
                "r2": str(self.r2_exact),
                "mode": "exact",
                "scale": str(self.scale),
                "points": self.lattice.tolist(),
            }
        return {
            "dim": self.dim,
            "r1": self.r1,
            "r2": self.r2,
            "mode": "float",
            "tolerance": self.tolerance,
            "points": self.points.tolist(),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "AnnulusInstance":
        mode = data.get("mode", "float")
        if mode == "exact":
            return cls.from_lattice(
                np.asarray(data["points"], dtype=np.int64),
                Fraction(data["scale"]),
                Fraction(data["r1"]),
                Fraction(data["r2"]),
            )
        return cls.from_floats(
            data["points"], data["r1"], data["r2"], data.get("tolerance", DEFAULT_TOLERANCE)
        )


@dataclass(eq=False)
class AdjacencyGraph:
    """Symmetric irreflexive adjacency on vertices 0..n-1."""

    adj: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.adj, dtype=bool)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError("adjacency must be a square matrix")
        if not np.array_equal(a, a.T):
            raise ValueError("adjacency must be symmetric")
        if np.any(np.diag(a)):
            raise ValueError("self-loops are not allowed")
        self.adj = a

    @classmethod
    def from_edges(cls, n: int, edges) -> "AdjacencyGraph":
        a = np.zeros((n, n), dtype=bool)
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop on vertex {u}")
            a[u, v] = a[v, u] = True
        return cls(a)

    @property
    def n(self) -> int:
        return len(self.adj)

    @property
    def edges(self) -> list[tuple[int, int]]:
        iu, ju = np.nonzero(np.triu(self.adj, 1))
        return [(int(u), int(v)) for u, v in zip(iu, ju)]

    def neighbors(self, v: int) -> list[int]:
        return [int(u) for u in np.nonzero(self.adj[v])[0]]

    def complement(self) -> "AdjacencyGraph":
        comp = ~self.adj
        np.fill_diagonal(comp, False)
        return AdjacencyGraph(comp)

    def __eq__(self, other) -> bool:
        return isinstance(other, AdjacencyGraph) and np.array_equal(self.adj, other.adj)

    def to_dict(self) -> dict:
        return {"n": self.n, "edges": [list(e) for e in self.edges]}

    @classmethod
    def from_dict(cls, data: dict) -> "AdjacencyGraph":
        return cls.from_edges(int(data["n"]), data["edges"])

    def bitsets(self) -> list[int]:
        """Neighborhoods as integer bitmasks, for the exact solvers."""
        out = []
        for i in range(self.n):
            m = 0
            for j in np.nonzero(self.adj[i])[0]:
                m |= 1 << int(j)
            out.append(m)
        return out


def build_graph(inst: AnnulusInstance, strict_boundaries: bool = False) -> AdjacencyGraph:
    """Adjacency of the instance: edges are pairs at distance in [r1, r2].

    Float mode widens the interval by the instance tolerance; with
    ``strict_boundaries`` any pair within tolerance of either radius raises
    :class:`BoundaryAmbiguityError` instead. Exact mode compares squared
    rational distances and is never ambiguous.
    """
    if inst.mode == "exact":
        return _build_exact(inst)
    d = np.linalg.norm(inst.points[:, None, :] - inst.points[None, :, :], axis=2)
    tol = inst.tolerance
    if strict_boundaries:
        off = ~np.eye(inst.n, dtype=bool)
        near = off & ((np.abs(d - inst.r1) <= tol) | (np.abs(d - inst.r2) <= tol))
        if np.any(near):
            u, v = map(int, np.argwhere(near)[0])
            raise BoundaryAmbiguityError(
                f"pair ({u}, {v}) at distance {float(d[u, v])!r} lies within {tol} of a radius"
            )
    a = (d >= inst.r1 - tol) & (d <= inst.r2 + tol)
    np.fill_diagonal(a, False)
    return AdjacencyGraph(a)


def _build_exact(inst: AnnulusInstance) -> AdjacencyGraph:
    pts = inst.lattice.astype(np.int64)
    diff = pts[:, None, :] - pts[None, :, :]
    sq = np.einsum("ijk,ijk->ij", diff, diff)
    # dist in [r1, r2]  <=>  lo <= sq * scale^2 <= hi with everything rational
    lo = inst.r1_exact**2 / inst.scale**2
    hi = inst.r2_exact**2 / inst.scale**2
    a = (sq * lo.denominator >= lo.numerator) & (sq * hi.denominator <= hi.numerator)
    np.fill_diagonal(a, False)
    return AdjacencyGraph(a)


@dataclass
class CliqueResult:
    value: int
    witness: list[int]


@dataclass
class ColoringResult:
    value: int
    colors: list[int]


@dataclass
class IndepResult:
    value: int
    witness: list[int]


def max_clique(g: AdjacencyGraph, budget: int = DEFAULT_CLIQUE_BUDGET) -> CliqueResult:
    """Exact maximum clique by branch and bound over vertex bitmasks.

    Deterministic: candidates are expanded lowest index first, so ties are
    always resolved the same way.
    """
    check_budget(g.n, budget, "max_clique")
    n = g.n
    if n == 0:
        return CliqueResult(0, [])
    adj = g.bitsets()
    best = [0, 0]  # size, mask

    def expand(mask: int, size: int, cand: int) -> None:
        if size > best[0]:
            best[0], best[1] = size, mask
        while cand:
            if size + cand.bit_count() <= best[0]:
                return
            v = (cand & -cand).bit_length() - 1
            cand &= cand - 1
            expand(mask | (1 << v), size + 1, cand & adj[v])

    expand(0, 0, (1 << n) - 1)
    witness = [v for v in range(n) if best[1] >> v & 1]
    return CliqueResult(best[0], witness)


def _greedy_coloring(g: AdjacencyGraph) -> list[int]:
    colors = [0] * g.n
    for v in range(g.n):
        used = {colors[u] for u in g.neighbors(v) if colors[u]}
        c = 1
        while c in used:
            c += 1
        colors[v] = c
    return colors


def _k_colorable(g: AdjacencyGraph, k: int) -> list[int] | None:
    """Backtracking k-colorability with max-saturation branching."""
    n = g.n
    nbrs = [list(map(int, g.neighbors(v))) for v in range(n)]
    colors = [0] * n

    def pick() -> int:
        best_v, best_key = -1, (-1, -1)
        for v in range(n):
            if colors[v]:
                continue
            sat = len({colors[u] for u in nbrs[v] if colors[u]})
            key = (sat, len(nbrs[v]))
            if key > best_key:
                best_v, best_key = v, key
        return best_v

    def bt(n_colored: int, max_used: int) -> bool:
        if n_colored == n:
            return True
        v = pick()
        used = {colors[u] for u in nbrs[v] if colors[u]}
        for c in range(1, min(max_used + 1, k) + 1):
            if c in used:
                continue
            colors[v] = c
            if bt(n_colored + 1, max(max_used, c)):
                return True
            colors[v] = 0
        return False

    return colors if bt(0, 0) else None


def chromatic_number(g: AdjacencyGraph, budget: int = DEFAULT_COLORING_BUDGET) -> ColoringResult:
    """Exact chromatic number with a proper witness coloring.

    Iterative deepening between a clique lower bound and a greedy upper
    bound; each k is decided by backtracking search.
    """
    check_budget(g.n, budget, "chromatic_number")
    if g.n == 0:
        return ColoringResult(0, [])
    lb = max_clique(g, budget=max(budget, g.n)).value
    greedy = _greedy_coloring(g)
    ub = max(greedy)
    for k in range(lb, ub):
        witness = _k_colorable(g, k)
        if witness is not None:
            return ColoringResult(k, witness)
    return ColoringResult(ub, greedy)


def max_independent_set(g: AdjacencyGraph, budget: int = DEFAULT_CLIQUE_BUDGET) -> IndepResult:
    """Exact maximum independent set: a maximum clique of the complement."""
    check_budget(g.n, budget, "max_independent_set")
    res = max_clique(g.complement(), budget=budget)
    return IndepResult(res.value, res.witness)


def is_proper(g: AdjacencyGraph, colors) -> bool:
    """True iff no edge joins two vertices of the same color."""
    colors = list(colors)
    if len(colors) != g.n:
        raise ValueError(f"coloring covers {len(colors)} of {g.n} vertices")
    if any(c is None for c in colors):
        raise ValueError("coloring has an unassigned vertex")
    return all(colors[u] != colors[v] for u, v in g.edges)
