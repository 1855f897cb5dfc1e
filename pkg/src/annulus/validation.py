"""Input validation helpers shared across the package."""

from __future__ import annotations

from fractions import Fraction

import numpy as np


class BudgetExceededError(ValueError):
    """An exact solver or search was asked to exceed its configured size budget."""


class BoundaryAmbiguityError(ValueError):
    """A pair distance fell within tolerance of an annulus boundary in strict mode."""


def check_points(points, dim=None, dtype=float) -> np.ndarray:
    """Coerce ``points`` to a 2d array of finite coordinates.

    Parameters
    ----------
    points : array-like of shape (n, d)
        Point coordinates. A single point may be given as a 1d sequence.
    dim : int, optional
        Required ambient dimension. Mismatch raises ``ValueError``.
    dtype : numpy dtype
        Target dtype, ``float`` for geometry, ``object``/``int`` for exact mode.

    Returns
    -------
    ndarray of shape (n, d)
    """
    arr = np.asarray(points, dtype=dtype)
    if arr.ndim == 1:
        arr = arr.reshape(1, -1) if arr.size else arr.reshape(0, 1 if dim is None else dim)
    if arr.ndim != 2:
        raise ValueError(f"points must be a 2d array, got shape {arr.shape}")
    if dim is not None and arr.shape[1] != dim:
        raise ValueError(f"points have dimension {arr.shape[1]}, expected {dim}")
    if np.issubdtype(arr.dtype, np.floating) and not np.all(np.isfinite(arr)):
        raise ValueError("points contain non-finite coordinates")
    return arr


def check_radii(r1, r2) -> tuple[float, float]:
    """Validate an annulus radius pair: 0 <= r1 <= r2 and r2 > 0."""
    r1, r2 = float(r1), float(r2)
    if not (np.isfinite(r1) and np.isfinite(r2)):
        raise ValueError("radii must be finite")
    if r1 < 0:
        raise ValueError(f"r1 must be nonnegative, got {r1}")
    if r2 < r1 or r2 <= 0:
        raise ValueError(f"need r2 >= r1 and r2 > 0, got r1={r1}, r2={r2}")
    return r1, r2


def check_dimension(d, minimum=1) -> int:
    d = int(d)
    if d < minimum:
        raise ValueError(f"dimension must be >= {minimum}, got {d}")
    return d


def check_budget(n: int, budget: int, what: str) -> None:
    if n > budget:
        raise BudgetExceededError(f"{what}: instance has {n} vertices, budget is {budget}")


def as_fraction(value) -> Fraction:
    """Convert to an exact rational.

    Floats go through their shortest decimal repr, so ``0.3`` becomes 3/10
    rather than the binary expansion of the nearest double.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        return Fraction(repr(value))
    return Fraction(value)
