"""Bounded derivative-free maximization on one and two axes.

Both routines scan a uniform grid first and then polish with golden-section
search, so a smooth surface with several peaks is never reduced to whichever
peak a local method happens to fall into. The 2-D routine reports every
strict local maximum of the grid, each refined, next to the global one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, NamedTuple, Sequence

import numpy as np

__all__ = [
    "OptimConfig",
    "NonFiniteObjective",
    "Max1D",
    "Max2D",
    "LocalMax",
    "golden_section_max",
    "maximize_1d",
    "maximize_2d",
]

_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


class NonFiniteObjective(ValueError):
    """The objective returned NaN or infinity."""

    def __init__(self, point):
        super().__init__(f"objective is not finite at {point!r}")
        self.point = point


@dataclass(frozen=True)
class OptimConfig:
    grid_points_per_axis: int = 64
    refine_tol: float = 1e-8
    max_refine_iters: int = 200
    bounds: Sequence[tuple[float, float]] | None = None

    def __post_init__(self):
        if self.grid_points_per_axis < 8:
            raise ValueError("grid_points_per_axis must be at least 8")
        if not self.refine_tol > 0:
            raise ValueError("refine_tol must be positive")
        if self.max_refine_iters < 1:
            raise ValueError("max_refine_iters must be positive")
        if self.bounds is not None:
            object.__setattr__(self, "bounds", tuple(_check_interval(b) for b in self.bounds))


class Max1D(NamedTuple):
    x: float
    value: float
    tol: float


class LocalMax(NamedTuple):
    x: float
    y: float
    value: float


class Max2D(NamedTuple):
    x: float
    y: float
    value: float
    tol: float
    local_maxima: tuple[LocalMax, ...]


def _check_interval(bounds):
    lo, hi = (float(v) for v in bounds)
    if not (math.isfinite(lo) and math.isfinite(hi) and lo < hi):
        raise ValueError(f"degenerate or non-finite bounds {bounds!r}")
    return lo, hi


def _finite(f):
    def wrapped(*args):
        val = float(f(*args))
        if not math.isfinite(val):
            raise NonFiniteObjective(args if len(args) > 1 else args[0])
        return val

    return wrapped


def _parabolic_polish(f, x, fx, lo, hi, h):
    # Near a flat maximum golden-section stalls where f differences drop
    # below rounding; a symmetric three-point vertex estimate does not.
    if x - h < lo or x + h > hi:
        return x, fx
    fl, fr = f(x - h), f(x + h)
    curv = fl - 2.0 * fx + fr
    if not curv < 0:
        return x, fx
    xv = x + 0.5 * h * (fl - fr) / curv
    if abs(xv - x) > h:
        return x, fx
    fv = f(xv)
    if fv >= fx - 8 * np.finfo(float).eps * abs(fx):
        return xv, fv
    return x, fx


def golden_section_max(f, lo, hi, tol, max_iter=200):
    """Golden-section search for the maximum of ``f`` on ``[lo, hi]``,
    finished by one parabolic step through three points ``1000 * tol``
    apart.

    The endpoints are evaluated too, so a maximum sitting on the boundary
    is returned exactly. Returns ``(x, f(x), final_bracket_width)``.
    """
    a, b = lo, hi
    c = b - _INV_PHI * (b - a)
    d = a + _INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    it = 0
    while b - a > tol and it < max_iter:
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - _INV_PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INV_PHI * (b - a)
            fd = f(d)
        it += 1
    best = (c, fc) if fc >= fd else (d, fd)
    best = _parabolic_polish(f, *best, lo, hi, 1e3 * tol)
    for x in (lo, hi):
        fx = f(x)
        # A bound that ties the interior to rounding wins: zero-slope
        # boundary maxima are otherwise reported a few 1e-8 inside.
        if fx >= best[1] - 8 * np.finfo(float).eps * abs(best[1]):
            best = (x, fx)
    return best[0], best[1], b - a


def maximize_1d(f: Callable[[float], float], bounds, config: OptimConfig | None = None) -> Max1D:
    """Grid scan on ``bounds`` followed by golden-section search in the
    cells on either side of the best sample."""
    config = config or OptimConfig()
    lo, hi = _check_interval(bounds)
    f = _finite(f)
    xs = np.linspace(lo, hi, config.grid_points_per_axis)
    vals = np.array([f(x) for x in xs])
    i = int(np.argmax(vals))
    a, b = xs[max(i - 1, 0)], xs[min(i + 1, xs.size - 1)]
    tol = config.refine_tol * (hi - lo)
    x, v, width = golden_section_max(f, a, b, tol, config.max_refine_iters)
    if v < vals[i]:
        x, v = xs[i], vals[i]
    return Max1D(float(x), float(v), float(width))


def _strict_local_maxima(grid: np.ndarray) -> list[tuple[int, int]]:
    padded = np.pad(grid, 1, constant_values=-np.inf)
    rows, cols = grid.shape
    is_max = np.ones_like(grid, dtype=bool)
    for di in (-1, 0, 1):
        for dj in (-1, 0, 1):
            if di == 0 and dj == 0:
                continue
            nb = padded[1 + di : 1 + di + rows, 1 + dj : 1 + dj + cols]
            is_max &= grid > nb
    return [tuple(ix) for ix in np.argwhere(is_max)]


def _coordinate_ascent(f, x, y, v, bx, by, hx, hy, config):
    tol_x = config.refine_tol * (bx[1] - bx[0])
    tol_y = config.refine_tol * (by[1] - by[0])
    width = max(hx, hy)
    for _ in range(config.max_refine_iters):
        x0, y0 = x, y
        a, b = max(bx[0], x - hx), min(bx[1], x + hx)
        nx, nv, wx = golden_section_max(lambda t: f(t, y), a, b, tol_x, config.max_refine_iters)
        if nv > v:
            x, v = nx, nv
        a, b = max(by[0], y - hy), min(by[1], y + hy)
        ny, nv, wy = golden_section_max(lambda t: f(x, t), a, b, tol_y, config.max_refine_iters)
        if nv > v:
            y, v = ny, nv
        width = max(wx, wy)
        if abs(x - x0) <= tol_x and abs(y - y0) <= tol_y:
            break
    return x, y, v, width


def maximize_2d(f: Callable[[float, float], float], bounds, config: OptimConfig | None = None) -> Max2D:
    """Maximize ``f(x, y)`` over a box.

    Every grid cell that strictly exceeds its eight neighbours is polished
    by cyclic coordinate golden-section search in a window one grid step
    wide around the current point. Refined peaks closer than half a grid
    step are merged.

    Returns:
        :class:`Max2D` with the best point and ``local_maxima`` sorted by
        decreasing value.
    """
    config = config or OptimConfig()
    bx, by = (_check_interval(b) for b in bounds)
    f = _finite(f)
    n = config.grid_points_per_axis
    xs = np.linspace(*bx, n)
    ys = np.linspace(*by, n)
    grid = np.array([[f(x, y) for y in ys] for x in xs])
    hx, hy = xs[1] - xs[0], ys[1] - ys[0]

    seeds = _strict_local_maxima(grid)
    if not seeds:
        seeds = [np.unravel_index(int(np.argmax(grid)), grid.shape)]
    seeds.sort(key=lambda ij: -grid[ij])

    peaks: list[LocalMax] = []
    widths = []
    for i, j in seeds:
        x, y, v, w = _coordinate_ascent(f, xs[i], ys[j], grid[i, j], bx, by, hx, hy, config)
        if any(abs(x - p.x) < hx / 2 and abs(y - p.y) < hy / 2 for p in peaks):
            continue
        peaks.append(LocalMax(float(x), float(y), float(v)))
        widths.append(w)
    order = sorted(range(len(peaks)), key=lambda k: (-peaks[k].value, peaks[k].x, peaks[k].y))
    peaks = [peaks[k] for k in order]
    best = peaks[0]
    return Max2D(best.x, best.y, best.value, float(widths[order[0]]), tuple(peaks))
