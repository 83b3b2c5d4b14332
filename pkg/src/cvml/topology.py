"""Balls, closure, limit points and the complex diameter.

On a finite ambient space a point belongs to the closure of ``A`` exactly
when some ``a`` in ``A`` has zero residual ``|d(a, x0) - d(x0, x0)|_c``:
any nonzero residual is excluded by a small enough radius.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any, Iterable, Sequence

import numpy as np

from .order import (
    DEFAULT_EPS,
    InvalidInputError,
    abs_c,
    as_complex,
    check_eps,
    lt_strict,
    to_pair,
)
from .spaces import DistanceFn, FiniteSpace


@dataclass(frozen=True)
class BallSpec:
    center: Any
    radius: complex

    def __post_init__(self):
        r = as_complex(self.radius)
        if not lt_strict(0, r, eps=0):
            raise InvalidInputError(f"ball radius {r} must satisfy 0 < r in both parts")
        object.__setattr__(self, "radius", r)


@dataclass
class DiameterResult:
    value: complex
    attained: bool
    witness: tuple | None

    def to_json(self) -> dict:
        w = None
        if self.witness is not None:
            w = [p if isinstance(p, str) else to_pair(p) for p in self.witness]
        return {"value": to_pair(self.value), "attained": self.attained, "witness": w}


def residual(d: DistanceFn, x0, a) -> complex:
    """``|d(a, x0) - d(x0, x0)|_c``."""
    return abs_c(d(a, x0) - d(x0, x0))


def ball_contains(d: DistanceFn, ball: BallSpec, y, eps: float = DEFAULT_EPS) -> bool:
    x0 = ball.center
    return lt_strict(abs_c(d(x0, y) - d(x0, x0)), ball.radius, eps)


def ball_members(d: DistanceFn, ball: BallSpec, points: Iterable, eps: float = DEFAULT_EPS) -> list:
    return [y for y in points if ball_contains(d, ball, y, eps)]


def _zero_residuals(space: FiniteSpace, eps: float) -> np.ndarray:
    """``z[x0, a]`` is True when ``|d(a, x0) - d(x0, x0)|_c`` is 0 within eps."""
    m = space.matrix
    r = m.T - np.diag(m)[:, None]
    return (np.abs(r.real) <= eps) & (np.abs(r.imag) <= eps)


def _indices(space: FiniteSpace, A: Iterable) -> list[int]:
    return sorted({space.index(a) for a in A})


def closure(space: FiniteSpace, A: Iterable, eps: float = DEFAULT_EPS) -> list[str]:
    """Cluster points of ``A`` in label order."""
    eps = check_eps(eps)
    idx = _indices(space, A)
    if not idx:
        return []
    hit = _zero_residuals(space, eps)[:, idx].any(axis=1)
    return [space.labels[k] for k in np.flatnonzero(hit)]


def limit_points(space: FiniteSpace, A: Iterable, eps: float = DEFAULT_EPS) -> list[str]:
    """Points with a zero-residual witness in ``A`` other than themselves."""
    eps = check_eps(eps)
    idx = _indices(space, A)
    if not idx:
        return []
    z = _zero_residuals(space, eps)
    np.fill_diagonal(z, False)
    hit = z[:, idx].any(axis=1)
    return [space.labels[k] for k in np.flatnonzero(hit)]


def is_closed(space: FiniteSpace, A: Iterable, eps: float = DEFAULT_EPS) -> bool:
    A = list(A)
    members = {space.labels[i] for i in _indices(space, A)}
    return set(limit_points(space, A, eps)) <= members


# --- complex diameter --------------------------------------------------------


def _block_residuals(d: DistanceFn, xs: np.ndarray, selfs: np.ndarray, lo: int, hi: int):
    """Componentwise max of both residual families for rows ``lo:hi``."""
    block = d.evaluate(xs[lo:hi, None], xs[None, :])
    r1 = block - selfs[lo:hi, None]
    r2 = block - selfs[None, :]
    re = np.maximum(np.abs(r1.real), np.abs(r2.real))
    im = np.maximum(np.abs(r1.imag), np.abs(r2.imag))
    return re, im


def diam_c(
    points: Sequence,
    d: DistanceFn,
    eps: float = DEFAULT_EPS,
    *,
    sampled: bool = False,
    block: int = 256,
) -> DiameterResult:
    """Componentwise supremum of ``|d(x,y) - d(x,x)|_c`` and ``|d(x,y) - d(y,y)|_c``.

    With ``sampled=True`` the points stand in for a larger set and the
    value is only a lower bound, reported with ``attained=False``.
    """
    eps = check_eps(eps)
    if len(points) == 0:
        raise InvalidInputError("diameter of an empty set")
    points = [p if isinstance(p, str) else complex(p) for p in points]
    xs = d.coords(points)
    if d.radial:
        # exact reduction: points of equal modulus have identical distance rows
        xs, first = np.unique(np.abs(xs), return_index=True)
        points = [points[k] for k in first]
    selfs = d.evaluate(xs, xs)
    n = len(xs)

    best_re = best_im = -1.0
    arg_re = arg_im = (0, 0)
    for lo in range(0, n, block):
        re, im = _block_residuals(d, xs, selfs, lo, min(n, lo + block))
        k = np.unravel_index(np.argmax(re), re.shape)
        if re[k] > best_re:
            best_re, arg_re = float(re[k]), (lo + int(k[0]), int(k[1]))
        k = np.unravel_index(np.argmax(im), im.shape)
        if im[k] > best_im:
            best_im, arg_im = float(im[k]), (lo + int(k[0]), int(k[1]))
    value = complex(best_re, best_im)

    witness = None
    if not sampled:
        # look for one pair realising the whole join
        for lo in range(0, n, block):
            re, im = _block_residuals(d, xs, selfs, lo, min(n, lo + block))
            hit = np.argwhere((re >= best_re - eps) & (im >= best_im - eps))
            if len(hit):
                witness = (lo + int(hit[0][0]), int(hit[0][1]))
                break
    attained = witness is not None
    if witness is None:
        witness = arg_re if best_re >= best_im else arg_im
    return DiameterResult(value, attained, (points[witness[0]], points[witness[1]]))


def grid_sample(xmin: float, xmax: float, ymin: float, ymax: float, step: float,
                keep=None) -> np.ndarray:
    """Cartesian grid of complex points, optionally filtered by ``keep(z)``."""
    if step <= 0:
        raise InvalidInputError("grid step must be positive")
    xs = np.arange(xmin, xmax + step / 2, step)
    ys = np.arange(ymin, ymax + step / 2, step)
    z = (xs[None, :] + 1j * ys[:, None]).ravel()
    return z[keep(z)] if keep is not None else z


def annulus_grid(inner: float, outer: float, step: float) -> np.ndarray:
    """Grid points ``step * (a + ib)`` of ``{z : inner < |z| < outer}``.

    Membership is decided on the integer lattice so boundary points such as
    ``3 + 0i`` are excluded exactly.
    """
    if step <= 0 or not 0 <= inner < outer:
        raise InvalidInputError("need step > 0 and 0 <= inner < outer")
    lo, hi = _snap(inner / step), _snap(outer / step)
    k = np.arange(-math.ceil(hi), math.ceil(hi) + 1)
    a, b = np.meshgrid(k, k)
    r2 = (a * a + b * b).ravel()
    keep = (r2 > lo * lo) & (r2 < hi * hi)
    return step * (a.ravel()[keep] + 1j * b.ravel()[keep])


def _snap(x: float) -> float:
    r = round(x)
    return float(r) if abs(x - r) < 1e-9 else x


def annulus_monte_carlo(inner: float, outer: float, n: int, seed: int = 0) -> np.ndarray:
    """``n`` points uniform in area on the open annulus."""
    rng = np.random.default_rng(seed)
    rad = np.sqrt(rng.uniform(inner**2, outer**2, n))
    rad = rad[(rad > inner) & (rad < outer)]
    ang = rng.uniform(0, 2 * np.pi, len(rad))
    return rad * np.exp(1j * ang)
