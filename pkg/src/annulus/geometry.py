"""Euclidean and spherical primitives.

Cap measure by adaptive quadrature, greedy ball packings, constructive ball
covering witnesses, spherical codes, and the explicit point families that
fit many pairwise-far points inside a small ball.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .validation import check_dimension, check_points

__all__ = [
    "dist",
    "spherical_distance",
    "cap_fraction",
    "log_cap_fraction",
    "PackingWitness",
    "greedy_ball_packing",
    "CoveringWitness",
    "covering_number_witness",
    "n_gamma_witness",
    "SphericalCode",
    "greedy_spherical_code",
]


def dist(p, q) -> float:
    """Euclidean distance between two points of equal dimension."""
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    if p.shape != q.shape:
        raise ValueError(f"dimension mismatch: {p.shape} vs {q.shape}")
    return float(np.linalg.norm(p - q))


def spherical_distance(u, v, tol: float = 1e-6) -> float:
    """Angle in [0, pi] between two unit vectors.

    Raises ``ValueError`` if either input norm deviates from 1 by more
    than ``tol``.
    """
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    if u.shape != v.shape:
        raise ValueError(f"dimension mismatch: {u.shape} vs {v.shape}")
    for name, w in (("u", u), ("v", v)):
        norm = np.linalg.norm(w)
        if abs(norm - 1.0) > tol:
            raise ValueError(f"{name} is not a unit vector (norm {norm:.6g})")
    return float(math.acos(min(1.0, max(-1.0, float(np.dot(u, v))))))


def _adaptive_simpson(f, a: float, b: float, tol: float) -> float:
    """Adaptive Simpson quadrature with absolute tolerance ``tol``."""

    def rec(a, fa, fm, fb, b, whole, tol, depth):
        m = 0.5 * (a + b)
        lm, rm = 0.5 * (a + m), 0.5 * (m + b)
        flm, frm = f(lm), f(rm)
        left = (m - a) / 6.0 * (fa + 4.0 * flm + fm)
        right = (b - m) / 6.0 * (fm + 4.0 * frm + fb)
        delta = left + right - whole
        if depth <= 0 or abs(delta) <= 15.0 * tol:
            return left + right + delta / 15.0
        return rec(a, fa, flm, fm, m, left, 0.5 * tol, depth - 1) + rec(
            m, fm, frm, fb, b, right, 0.5 * tol, depth - 1
        )

    fa, fm, fb = f(a), f(0.5 * (a + b)), f(b)
    whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    return rec(a, fa, fm, fb, b, whole, tol, 48)


def log_cap_fraction(d: int, theta: float, tol: float = 1e-12) -> float:
    """Natural log of ``cap_fraction(d, theta)``.

    Stays finite for very large ``d`` (up to ~1e4) where the fraction itself
    underflows a double. The sin^(d-2) integrand is rescaled by its peak
    value before quadrature so the integrals stay O(1).
    """
    d = check_dimension(d, minimum=2)
    theta = float(theta)
    if not 0.0 < theta <= math.pi:
        raise ValueError(f"theta must be in (0, pi], got {theta}")
    p = d - 2
    if p == 0:
        return math.log(theta / math.pi)
    # peak of sin(t)^p on [0, theta] sits at min(theta, pi/2)
    log_peak = p * math.log(math.sin(min(theta, 0.5 * math.pi)))

    def scaled(shift):
        def f(t):
            s = math.sin(t)
            if s <= 0.0:
                return 0.0
            return math.exp(p * math.log(s) - shift)

        return f

    num = _adaptive_simpson(scaled(log_peak), 0.0, theta, tol)
    den = _adaptive_simpson(scaled(0.0), 0.0, math.pi, tol)
    return log_peak + math.log(num) - math.log(den)


def cap_fraction(d: int, theta: float, tol: float = 1e-12) -> float:
    """Fraction of the sphere S^(d-1) covered by a cap of angular radius theta.

    Computed as the ratio of sin^(d-2) integrals over [0, theta] and [0, pi].
    Equals ``theta/pi`` for d=2 and ``(1 - cos theta)/2`` for d=3. For very
    large ``d`` at small theta the true value can underflow to 0.0; use
    :func:`log_cap_fraction` in that regime.
    """
    d = check_dimension(d, minimum=2)
    theta = float(theta)
    if not 0.0 < theta <= math.pi:
        raise ValueError(f"theta must be in (0, pi], got {theta}")
    if d == 2:
        return theta / math.pi
    return math.exp(log_cap_fraction(d, theta, tol=tol))


def _uniform_ball(rng: np.random.Generator, n: int, d: int, radius: float) -> np.ndarray:
    """n points uniform in the closed ball of given radius."""
    if radius == 0.0 or n == 0:
        return np.zeros((n, d))
    g = rng.standard_normal((n, d))
    g /= np.linalg.norm(g, axis=1, keepdims=True)
    return g * (radius * rng.random(n) ** (1.0 / d))[:, None]


@dataclass
class PackingWitness:
    """Disjoint equal balls inside a container ball, all centered at origin-distance
    at most ``container_radius``."""

    centers: np.ndarray
    radius: float
    container_radius: float

    @property
    def count(self) -> int:
        return len(self.centers)

    def validate(self) -> None:
        c = check_points(self.centers)
        norms = np.linalg.norm(c, axis=1)
        if np.any(norms > self.container_radius + 1e-12):
            raise ValueError("packing center outside the container ball")
        for i in range(len(c)):
            for j in range(i + 1, len(c)):
                if dist(c[i], c[j]) < 2.0 * self.radius:
                    raise ValueError(f"packing balls {i} and {j} overlap")


def greedy_ball_packing(
    container_radius: float,
    ball_radius: float,
    d: int,
    seed: int = 0,
    n_candidates: int = 2000,
    n_starts: int = 4,
) -> PackingWitness:
    """Pack disjoint balls of ``ball_radius`` into the ball of ``container_radius``.

    Farthest-point insertion over a random candidate pool, multi-started;
    the best start wins, ties broken by lowest start index. The returned
    count is a lower bound on the true packing number and never exceeds
    the volume bound ((R+r)/r)^d.
    """
    R, r = float(container_radius), float(ball_radius)
    if not (R >= r > 0.0):
        raise ValueError(f"need container_radius >= ball_radius > 0, got {R}, {r}")
    d = check_dimension(d)
    c = R - r  # centers must keep the whole small ball inside
    if c == 0.0:
        return PackingWitness(np.zeros((1, d)), r, R)

    extremes = np.concatenate([c * np.eye(d), -c * np.eye(d), np.zeros((1, d))])
    seeds = np.random.SeedSequence(seed).spawn(n_starts)
    best: np.ndarray | None = None
    for ss in seeds:
        rng = np.random.default_rng(ss)
        pool = np.concatenate([extremes, _uniform_ball(rng, n_candidates, d, c)])
        chosen = [pool[0]]
        mind = np.linalg.norm(pool - pool[0], axis=1)
        while True:
            i = int(np.argmax(mind))
            if mind[i] < 2.0 * r:
                break
            chosen.append(pool[i])
            mind = np.minimum(mind, np.linalg.norm(pool - pool[i], axis=1))
        if best is None or len(chosen) > len(best):
            best = np.array(chosen)
    witness = PackingWitness(best, r, R)
    witness.validate()
    return witness


@dataclass
class CoveringWitness:
    """Centers of small balls that jointly cover a big ball, verified by probing."""

    centers: np.ndarray
    small_radius: float
    big_radius: float
    ratio: float = field(init=False)

    def __post_init__(self):
        self.ratio = self.big_radius / self.small_radius

    @property
    def count(self) -> int:
        return len(self.centers)

    def verify(self, n_probes: int = 100_000, seed: int = 1) -> int:
        """Return the number of random probe points of the big ball left uncovered."""
        rng = np.random.default_rng(seed)
        d = self.centers.shape[1]
        misses = 0
        remaining = n_probes
        while remaining > 0:
            chunk = min(remaining, 20_000)
            probes = _uniform_ball(rng, chunk, d, self.big_radius)
            dmin = np.min(
                np.linalg.norm(probes[:, None, :] - self.centers[None, :, :], axis=2), axis=1
            )
            misses += int(np.sum(dmin > self.small_radius))
            remaining -= chunk
        return misses


def _interval_covering(T: float, r: float) -> np.ndarray:
    # exact 1d construction: ceil(T) intervals of length 2r tile [-Tr, Tr]
    m = math.ceil(T - 1e-12)
    return np.array([[-T * r + r + 2.0 * r * i] for i in range(m)])


def covering_number_witness(
    T: float,
    d: int,
    target_small_radius: float = 1.0,
    n_probes: int = 100_000,
    seed: int = 0,
) -> CoveringWitness:
    """Cover the ball of radius T*r with balls of radius r, constructively.

    The center count is an upper bound on the true covering number. For d=1
    the construction is the exact interval tiling; for d >= 2 a greedy set
    cover over a fine lattice of candidate centers is repaired against random
    probes until a 10^5-probe verification shows zero misses.
    """
    T = float(T)
    if T < 1.0:
        raise ValueError(f"ratio T must be >= 1, got {T}")
    d = check_dimension(d)
    r = float(target_small_radius)
    if r <= 0.0:
        raise ValueError("target_small_radius must be positive")
    R = T * r

    if T == 1.0:
        witness = CoveringWitness(np.zeros((1, d)), r, R)
    elif d == 1:
        witness = CoveringWitness(_interval_covering(T, r), r, R)
    else:
        witness = CoveringWitness(_greedy_lattice_cover(T, d, r, seed), r, R)

    for round_ in range(20):
        misses = _missed_probes(witness, n_probes, seed + 1)
        if len(misses) == 0:
            return witness
        repaired = np.concatenate([witness.centers, _snap_to_lattice(misses, d, r)])
        repaired = np.unique(np.round(repaired, 12), axis=0)
        witness = CoveringWitness(repaired, r, R)
    raise RuntimeError("covering witness failed probe verification after repair")


def _missed_probes(witness: CoveringWitness, n_probes: int, seed: int) -> np.ndarray:
    rng = np.random.default_rng(seed)
    d = witness.centers.shape[1]
    missed = []
    remaining = n_probes
    while remaining > 0:
        chunk = min(remaining, 20_000)
        probes = _uniform_ball(rng, chunk, d, witness.big_radius)
        dmin = np.min(
            np.linalg.norm(probes[:, None, :] - witness.centers[None, :, :], axis=2), axis=1
        )
        bad = probes[dmin > witness.small_radius]
        if len(bad):
            missed.append(bad)
        remaining -= chunk
    return np.concatenate(missed) if missed else np.zeros((0, d))


def _lattice_spacing(d: int, r: float) -> float:
    # cell half-diagonal equals r, so every point is within r of its cell center
    return 2.0 * r / math.sqrt(d)


def _snap_to_lattice(points: np.ndarray, d: int, r: float) -> np.ndarray:
    s = _lattice_spacing(d, r)
    snapped = []
    for q in points:
        cands = [s * np.round(q / s), s * (np.round(q / s - 0.5) + 0.5)]
        snapped.append(min(cands, key=lambda c: float(np.linalg.norm(q - c))))
    return np.array(snapped)


def _greedy_lattice_cover(T: float, d: int, r: float, seed: int) -> np.ndarray:
    R = T * r
    s = _lattice_spacing(d, r)
    reach = R + r  # lattice centers this far out may still touch the big ball
    span = math.ceil(reach / s)
    axis = np.arange(-span, span + 1, dtype=float) * s
    cands = []
    for offset in (0.0, 0.5 * s):
        grid = np.array(list(itertools.product(axis + offset, repeat=d)))
        grid = grid[np.linalg.norm(grid, axis=1) <= reach]
        cands.append(grid)
    cands = np.concatenate(cands)
    n_seed = 20_000
    if len(cands) * n_seed > 3e8:
        raise ValueError(
            f"constructive covering witness is impractical for T={T}, d={d} "
            f"({len(cands)} candidate centers)"
        )
    rng = np.random.default_rng(seed)
    probes = _uniform_ball(rng, n_seed, d, R)
    cover = (
        np.linalg.norm(probes[None, :, :] - cands[:, None, :], axis=2) <= r
    )  # candidates x probes
    uncovered = np.ones(n_seed, dtype=bool)
    chosen: list[int] = []
    while uncovered.any():
        gains = cover[:, uncovered].sum(axis=1)
        i = int(np.argmax(gains))
        if gains[i] == 0:  # stray probe in no cell; the repair loop will catch it
            break
        chosen.append(i)
        uncovered &= ~cover[i]
    return cands[chosen]


def n_gamma_witness(d: int, gamma: float) -> np.ndarray:
    """Points inside B(0, gamma) that are pairwise at distance more than 1.

    For gamma >= 0.99 an explicit construction gives 5 points when d = 2
    (regular pentagon of circumradius 0.99) and 2d+2 points when d >= 3
    (two rectangles of circumradius 0.99 in coordinate planes (1,2) and
    (1,3) with half-width 0.6, plus antipodal pairs of norm 0.99 on every
    remaining axis). Smaller gamma falls back to a greedy search and may
    return fewer points.
    """
    d = check_dimension(d, minimum=2)
    gamma = float(gamma)
    if not 0.0 < gamma < 1.0:
        raise ValueError(f"gamma must be in (0, 1), got {gamma}")
    if gamma < 0.99:
        return _greedy_far_points(d, gamma)
    rho = 0.99
    if d == 2:
        ang = 2.0 * math.pi * np.arange(5) / 5.0
        return rho * np.column_stack([np.cos(ang), np.sin(ang)])
    x = 0.6
    y = math.sqrt(rho**2 - x**2)
    pts = []
    for sx, sy in itertools.product((1.0, -1.0), repeat=2):
        p = np.zeros(d)
        p[0], p[1] = sx * x, sy * y
        pts.append(p)
    for sx, sy in itertools.product((1.0, -1.0), repeat=2):
        p = np.zeros(d)
        p[0], p[2] = sx * x, sy * y
        pts.append(p)
    for axis in range(3, d):
        for sign in (1.0, -1.0):
            p = np.zeros(d)
            p[axis] = sign * rho
            pts.append(p)
    return np.array(pts)


def _greedy_far_points(d: int, gamma: float, pool_size: int = 4000) -> np.ndarray:
    rng = np.random.default_rng(0)
    pool = np.concatenate([np.zeros((1, d)), _uniform_ball(rng, pool_size, d, gamma)])
    chosen = [pool[0]]
    mind = np.linalg.norm(pool - pool[0], axis=1)
    while True:
        i = int(np.argmax(mind))
        if mind[i] <= 1.0:
            break
        chosen.append(pool[i])
        mind = np.minimum(mind, np.linalg.norm(pool - pool[i], axis=1))
    return np.array(chosen)


@dataclass
class SphericalCode:
    """Unit vectors pairwise at spherical distance at least ``min_angle``."""

    points: np.ndarray
    min_angle: float

    @property
    def size(self) -> int:
        return len(self.points)

    def validate(self, tol: float = 1e-9) -> None:
        norms = np.linalg.norm(self.points, axis=1)
        if np.any(np.abs(norms - 1.0) > tol):
            raise ValueError("spherical code contains a non-unit point")
        if not 0.0 < self.min_angle <= math.pi:
            raise ValueError(f"min_angle must be in (0, pi], got {self.min_angle}")
        for i in range(len(self.points)):
            for j in range(i + 1, len(self.points)):
                if spherical_distance(self.points[i], self.points[j]) < self.min_angle - tol:
                    raise ValueError(f"points {i}, {j} are closer than min_angle")


def greedy_spherical_code(
    d: int, min_angle: float, seed: int = 0, pool_size: int = 2000
) -> SphericalCode:
    """Unit vectors pairwise at least ``min_angle`` apart (spherical distance).

    Size is a lower bound on the largest such code. d = 2 places
    floor(2*pi/min_angle) equally spaced circle points; d >= 3 seeds with the
    cross-polytope (or an antipodal pair when min_angle > pi/2) and greedily
    adds random candidates. The stored ``min_angle`` is the measured minimum
    pairwise distance of the returned points.
    """
    d = check_dimension(d, minimum=2)
    phi = float(min_angle)
    if not 0.0 < phi <= math.pi:
        raise ValueError(f"min_angle must be in (0, pi], got {phi}")
    if d == 2:
        m = int(math.floor(2.0 * math.pi / phi + 1e-9))
        ang = 2.0 * math.pi * np.arange(m) / m
        pts = np.column_stack([np.cos(ang), np.sin(ang)])
    else:
        if phi <= 0.5 * math.pi:
            pts = np.concatenate([np.eye(d), -np.eye(d)])
        else:
            pts = np.array([np.eye(d)[0], -np.eye(d)[0]])
        rng = np.random.default_rng(seed)
        pool = rng.standard_normal((pool_size, d))
        pool /= np.linalg.norm(pool, axis=1, keepdims=True)
        cos_phi = math.cos(phi)
        for cand in pool:
            # angle >= phi for every chosen point <=> all dot products <= cos(phi)
            if np.max(pts @ cand) <= cos_phi - 1e-12:
                pts = np.concatenate([pts, cand[None, :]])
    gram = np.clip(pts @ pts.T, -1.0, 1.0)
    np.fill_diagonal(gram, -1.0)
    measured = float(np.arccos(np.max(gram)))
    return SphericalCode(pts, min(measured, phi) if len(pts) > 1 else phi)
