"""Instance generators: lattices, 1d odd cycles, sphere nets, clique witnesses.

Every generator returns an :class:`~annulus.graphs.AnnulusInstance`. Lattice
instances use exact integer arithmetic so no pair is ever boundary-ambiguous;
the float generators keep pairs away from the radius boundaries by
construction (sphere nets are the one exception: antipodal pairs sit exactly
on the closed upper radius 2, where membership holds either way).
"""

from __future__ import annotations

import itertools
import math

import numpy as np

from .geometry import n_gamma_witness
from .graphs import AnnulusInstance
from .validation import as_fraction, check_dimension

__all__ = [
    "gen_lattice",
    "gen_cycle_1d",
    "gen_sphere_net",
    "gen_easy_lemma_instance",
    "random_points_instance",
]


def gen_lattice(d: int, x, eps, n, max_points: int = 100_000) -> AnnulusInstance:
    """Points of eps*Z^d inside the ball of radius n, with radii (1, x).

    Exact arithmetic mode: eps, x and n are taken as rationals (floats go
    through their decimal repr, so eps=0.3 means exactly 3/10).
    """
    d = check_dimension(d)
    x = as_fraction(x)
    eps = as_fraction(eps)
    n = as_fraction(n)
    if x < 1:
        raise ValueError(f"x must be >= 1, got {x}")
    if not 0 < eps <= 1:
        raise ValueError(f"eps must be in (0, 1], got {eps}")
    if n <= 0:
        raise ValueError(f"n must be positive, got {n}")
    m = math.floor(n / eps)
    if (2 * m + 1) ** d > 2e7:
        raise ValueError(
            f"lattice enumeration bound exceeded: axis range {2 * m + 1} in dimension {d}"
        )
    # |eps * v| <= n  <=>  |v|^2 <= (n/eps)^2, compared exactly
    q = (n / eps) ** 2
    points = []
    for v in itertools.product(range(-m, m + 1), repeat=d):
        if sum(c * c for c in v) * q.denominator <= q.numerator:
            points.append(v)
            if len(points) > max_points:
                raise ValueError(f"lattice instance exceeds the {max_points}-point cap")
    return AnnulusInstance.from_lattice(np.array(points, dtype=np.int64), eps, 1, x)


def gen_cycle_1d(x: float) -> AnnulusInstance:
    """A 1d instance with radii (1, x) whose graph is a spanning odd cycle.

    x >= 2 gives the 5 points {0, x, 2x, x+0.99, x-0.99}. For 1 < x < 2,
    with k the smallest integer satisfying k*x >= k+1, the 2k+1 points are
    the ascending chain 0, x, ..., kx followed by the descending chain
    (k - j*k/(k+1))*x for j = 1..k. The cycle is triangle-free when x < 2.
    """
    x = float(x)
    if x <= 1.0:
        raise ValueError(f"x must be > 1, got {x}")
    if x >= 2.0:
        pts = [0.0, x, 2.0 * x, x + 0.99, x - 0.99]
    else:
        k = 2
        while k * x < k + 1:
            k += 1
        pts = [i * x for i in range(k + 1)]
        pts += [(k - j * k / (k + 1)) * x for j in range(1, k + 1)]
    return AnnulusInstance.from_floats(np.array(pts)[:, None], 1.0, x)


def _uniform_sphere(rng: np.random.Generator, n: int, d: int) -> np.ndarray:
    g = rng.standard_normal((n, d))
    return g / np.linalg.norm(g, axis=1, keepdims=True)


def sphere_surface_area(d: int) -> float:
    """Surface measure of the unit sphere S^(d-1) in R^d."""
    return 2.0 * math.pi ** (d / 2.0) / math.gamma(d / 2.0)


def gen_sphere_net(
    d: int,
    x: float,
    method: str = "greedy",
    eps: float = math.pi / 16.0,
    intensity: float | None = None,
    seed: int = 0,
    n_probes: int = 20_000,
) -> AnnulusInstance:
    """Unit-sphere point sets as instances with radii (2/x, 2).

    ``greedy`` builds an eps-net (every sphere point within spherical
    distance eps of the net, verified by random probes): equally spaced
    points for d=2, farthest-point sampling plus probe repair for d>=3.
    ``poisson`` draws a Poisson(intensity * surface area) number of uniform
    points. Since chords never exceed the sphere diameter 2, the upper
    radius never cuts an edge.
    """
    d = check_dimension(d, minimum=2)
    x = float(x)
    if x < 1.0:
        raise ValueError(f"x must be >= 1, got {x}")
    if method == "greedy":
        if not 0.0 < eps <= math.pi:
            raise ValueError(f"eps must be in (0, pi], got {eps}")
        if d == 2:
            m = math.ceil(2.0 * math.pi / eps - 1e-9)
            ang = 2.0 * math.pi * np.arange(m) / m
            pts = np.column_stack([np.cos(ang), np.sin(ang)])
        else:
            pts = _greedy_net(d, eps, seed, n_probes)
    elif method == "poisson":
        if intensity is None or intensity <= 0.0:
            raise ValueError("poisson method needs a positive intensity")
        rng = np.random.default_rng(seed)
        count = int(rng.poisson(intensity * sphere_surface_area(d)))
        pts = _uniform_sphere(rng, max(count, 1), d)
    else:
        raise ValueError(f"unknown sphere net method {method!r}")
    return AnnulusInstance.from_floats(pts, 2.0 / x, 2.0)


def _greedy_net(d: int, eps: float, seed: int, n_probes: int) -> np.ndarray:
    rng = np.random.default_rng(seed)
    pool = _uniform_sphere(rng, max(n_probes, 2000), d)
    net = np.eye(d)[:1]
    # farthest-point insertion until the pool is covered within eps
    ang = np.arccos(np.clip(pool @ net[0], -1.0, 1.0))
    while True:
        i = int(np.argmax(ang))
        if ang[i] <= eps:
            break
        net = np.concatenate([net, pool[i : i + 1]])
        ang = np.minimum(ang, np.arccos(np.clip(pool @ pool[i], -1.0, 1.0)))
    for _ in range(20):
        probes = _uniform_sphere(rng, n_probes, d)
        cover = np.arccos(np.clip(probes @ net.T, -1.0, 1.0)).min(axis=1)
        missed = probes[cover > eps]
        if len(missed) == 0:
            return net
        net = np.concatenate([net, missed])  # a missed probe is itself a net point
    raise RuntimeError("sphere net failed probe verification after repair")


def net_covering_misses(inst: AnnulusInstance, eps: float, n_probes: int = 20_000, seed: int = 1) -> int:
    """Number of random sphere probes farther than eps from every instance point."""
    rng = np.random.default_rng(seed)
    probes = _uniform_sphere(rng, n_probes, inst.dim)
    cover = np.arccos(np.clip(probes @ inst.points.T, -1.0, 1.0)).min(axis=1)
    return int(np.sum(cover > eps))


def gen_easy_lemma_instance(d: int) -> AnnulusInstance:
    """The pairwise-far witness inside B(0, 0.99) as a (1, 2)-instance.

    All pairwise distances land in (1, 2], so the graph is complete: K5 for
    d = 2 and K_{2d+2} for d >= 3.
    """
    d = check_dimension(d, minimum=2)
    return AnnulusInstance.from_floats(n_gamma_witness(d, 0.99), 1.0, 2.0)


def random_points_instance(
    n: int,
    d: int,
    r1: float,
    r2: float,
    extent: float | None = None,
    seed: int = 0,
    tolerance: float = 1e-9,
) -> AnnulusInstance:
    """Uniform random points in a box, resampled until no pair distance is
    within 10x tolerance of either radius."""
    d = check_dimension(d)
    if extent is None:
        extent = 4.0 * r2
    for attempt in range(50):
        rng = np.random.default_rng(np.random.SeedSequence((seed, attempt)))
        pts = rng.uniform(0.0, extent, size=(n, d))
        dist = np.linalg.norm(pts[:, None, :] - pts[None, :, :], axis=2)
        off = ~np.eye(n, dtype=bool)
        near = off & (
            (np.abs(dist - r1) <= 10.0 * tolerance) | (np.abs(dist - r2) <= 10.0 * tolerance)
        )
        if not near.any():
            return AnnulusInstance.from_floats(pts, r1, r2, tolerance)
    raise RuntimeError("could not sample an instance clear of the radius boundaries")
