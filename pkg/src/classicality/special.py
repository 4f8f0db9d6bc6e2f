"""Laguerre polynomials and log-factorials in double precision.

All routines accept scalar or array arguments for ``x`` and evaluate the
upward three-term recurrence, which is forward-stable for the argument
ranges used by the Fock-space code in this package.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.special import gammaln

__all__ = [
    "laguerre",
    "laguerre_assoc",
    "log_factorial",
    "log_poisson",
    "scaled_laguerre_sequence",
]

_EXACT_FACTORIAL_MAX = 20


def _check_x(x):
    arr = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"Laguerre argument must be finite, got {x!r}")
    return arr


def _check_order(name, value):
    if int(value) != value or value < 0:
        raise ValueError(f"{name} must be a non-negative integer, got {value!r}")
    return int(value)


def laguerre_assoc(n, k, x):
    """Associated Laguerre polynomial ``L_n^k(x)``.

    Uses ``(m+1) L_{m+1} = (2m+k+1-x) L_m - (m+k) L_{m-1}``.

    Args:
        n: degree, ``n >= 0``.
        k: association index, ``k >= 0``.
        x: finite real scalar or array.

    Returns:
        float for scalar ``x``, otherwise an array of the same shape.
    """
    n = _check_order("n", n)
    k = _check_order("k", k)
    xa = _check_x(x)
    prev = np.ones_like(xa)
    if n == 0:
        out = prev
    else:
        cur = k + 1.0 - xa
        for m in range(1, n):
            prev, cur = cur, ((2 * m + k + 1 - xa) * cur - (m + k) * prev) / (m + 1)
        out = cur
    return float(out) if out.ndim == 0 else out


def laguerre(n, x):
    """Laguerre polynomial ``L_n(x)``; identical to ``laguerre_assoc(n, 0, x)``."""
    return laguerre_assoc(n, 0, x)


def log_factorial(n) -> float:
    """``ln(n!)``; exact summation up to 20, ``lgamma`` beyond."""
    n = _check_order("n", n)
    if n <= _EXACT_FACTORIAL_MAX:
        return math.log(math.factorial(n))
    return math.lgamma(n + 1.0)


def log_poisson(n, mean):
    """``ln(e^{-mean} mean^n / n!)`` for integer ``n`` (array allowed).

    ``mean == 0`` gives ``0`` at ``n == 0`` and ``-inf`` elsewhere.
    """
    n = np.asarray(n, dtype=float)
    if mean == 0:
        out = np.where(n == 0, 0.0, -np.inf)
    else:
        out = -mean + n * math.log(mean) - gammaln(n + 1.0)
    return float(out) if np.ndim(out) == 0 else out


def scaled_laguerre_sequence(n_max, y, eta, start=1.0):
    """``start * eta**n * L_n(-y/eta)`` for ``n = 0..n_max``.

    Multiplying the Laguerre recurrence through by ``eta**(n+1)`` gives
    ``(n+1) u_{n+1} = ((2n+1) eta + y) u_n - n eta^2 u_{n-1}``, which is
    finite at ``eta == 0`` (where ``u_n = y^n / n!``) and never overflows
    for the arguments used here (``y >= 0``, ``0 <= eta < 1``).
    """
    n_max = _check_order("n_max", n_max)
    if y < 0 or not 0 <= eta < 1:
        raise ValueError("need y >= 0 and 0 <= eta < 1")
    u = np.empty(n_max + 1)
    u[0] = start
    if n_max >= 1:
        u[1] = start * (eta + y)
    e2 = eta * eta
    for n in range(1, n_max):
        u[n + 1] = (((2 * n + 1) * eta + y) * u[n] - n * e2 * u[n - 1]) / (n + 1)
    return u
