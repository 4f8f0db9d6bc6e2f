"""Classicality and anticlassicality measures.

Classicality is the largest renormalized Hilbert-Schmidt overlap
``Tr(rho rho_c) / sqrt(Tr rho^2 Tr rho_c^2)`` between a state and any
displaced thermal state ``rho_c``; anticlassicality is the largest Fock
occupation ``<n|rho|n>``, optionally skipping the vacuum and/or weighted by
the purity. Each measure has closed forms for the standard families and a
generic route working on a :class:`~classicality.fock.FockDensity`.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import asdict, dataclass

import numpy as np

from .fock import (
    Coherent,
    CoherentPhase,
    DisplacedThermal,
    Fock,
    FockDensity,
    Gaussian,
    SqueezedVacuum,
    StateSpec,
    Thermal,
    TruncationError,
    displacement_matrix,
    mean_amplitude,
    photon_distribution,
    purity,
    spec_purity,
)
from .gaussian import GaussianParams, gaussian_classicality
from .optimize import OptimConfig, maximize_1d, maximize_2d
from .results import MeasureResult, Method
from .special import log_factorial, scaled_laguerre_sequence

__all__ = [
    "ETA_CAP",
    "VARIANTS",
    "fidelity_fn",
    "classicality_fock",
    "reduced_classicality_alpha_fock",
    "reduced_classicality_eta_phase",
    "classicality_closed",
    "classicality_numeric",
    "anticlassicality",
    "anticlassicality_closed",
    "AsymptoticReport",
    "asymptotic_report",
]

ETA_CAP = 0.999
DEFAULT_MAX_TAIL = 1e-8
# Occupations within this relative distance of the maximum count as ties.
TIE_RTOL = 1e-12

VARIANTS = {
    "A": (True, False),
    "A1": (False, False),
    "Atilde": (True, True),
    "Atilde1": (False, True),
}


def fidelity_fn(n: int, eta: float, alpha_sq: float) -> float:
    """Renormalized fidelity between ``|n>`` and a displaced thermal state.

    ``f_n = sqrt(1 - eta^2) eta^n exp(-|alpha|^2 (1 - eta)) L_n(-|alpha|^2 (1-eta)^2 / eta)``,
    evaluated through the eta-scaled Laguerre recurrence, so ``eta == 0``
    reduces continuously to the Poisson weight ``e^{-r} r^n / n!``.
    """
    if int(n) != n or n < 0:
        raise ValueError(f"n must be a non-negative integer, got {n!r}")
    if not 0.0 <= eta < 1.0:
        raise ValueError(f"eta must lie in [0, 1), got {eta!r}")
    if not alpha_sq >= 0.0:
        raise ValueError(f"alpha_sq must be non-negative, got {alpha_sq!r}")
    n = int(n)
    start = math.sqrt(1.0 - eta * eta) * math.exp(-alpha_sq * (1.0 - eta))
    return float(scaled_laguerre_sequence(n, alpha_sq * (1.0 - eta) ** 2, eta, start=start)[n])


# ------------------------------------------------------------ closed forms


def classicality_fock(n: int) -> MeasureResult:
    """``sqrt(n^n / (n+1)^(n+1))``, attained by the undisplaced thermal state
    with ``eta = sqrt(n/(n+1))``."""
    if int(n) != n or n < 0:
        raise ValueError(f"n must be a non-negative integer, got {n!r}")
    if n == 0:
        return MeasureResult(1.0, Method.CLOSED_FORM, argmax_eta=0.0, argmax_alpha_sq=0.0)
    log_val = 0.5 * (n * math.log(n) - (n + 1) * math.log(n + 1))
    root = math.sqrt(n) + math.sqrt(n + 1)
    return MeasureResult(
        math.exp(log_val),
        Method.CLOSED_FORM,
        argmax_eta=math.sqrt(n / (n + 1)),
        argmax_alpha_sq=0.0,
        details={"reference_nbar": math.sqrt(n) * root, "reference_purity": root**-2},
    )


def reduced_classicality_alpha_fock(n: int) -> MeasureResult:
    """Best overlap of ``|n>`` with a coherent state: ``e^-n n^n / n!`` at
    ``|alpha|^2 = n``."""
    if int(n) != n or n < 0:
        raise ValueError(f"n must be a non-negative integer, got {n!r}")
    log_val = 0.0 if n == 0 else -n + n * math.log(n) - log_factorial(n)
    return MeasureResult(math.exp(log_val), Method.CLOSED_FORM, argmax_eta=0.0, argmax_alpha_sq=float(n))


def reduced_classicality_eta_phase(eps: complex) -> MeasureResult:
    """Best overlap of a coherent phase state with an undisplaced thermal
    state: ``sqrt((1 - |eps|^2)/(1 + |eps|^2)) = (1 + 2 nbar)^(-1/2)`` at
    ``eta = |eps|^2``."""
    x = abs(eps) ** 2
    if not x < 1.0:
        raise ValueError("|eps| must be < 1")
    return MeasureResult(
        math.sqrt((1.0 - x) / (1.0 + x)),
        Method.CLOSED_FORM,
        argmax_eta=x,
        argmax_alpha_sq=0.0,
        details={"measure": "C_eta"},
    )


def classicality_closed(spec: StateSpec) -> MeasureResult:
    """Closed-form classicality for any family that has one.

    Coherent phase states only have the eta-reduced closed form; the result
    says so in ``details["measure"]``.
    """
    if isinstance(spec, Fock):
        return classicality_fock(spec.n)
    if isinstance(spec, Coherent):
        return MeasureResult(1.0, Method.CLOSED_FORM, argmax_eta=0.0, argmax_alpha_sq=spec.nbar)
    if isinstance(spec, Thermal):
        return MeasureResult(1.0, Method.CLOSED_FORM, argmax_eta=spec.eta, argmax_alpha_sq=0.0)
    if isinstance(spec, DisplacedThermal):
        return MeasureResult(1.0, Method.CLOSED_FORM, argmax_eta=spec.eta, argmax_alpha_sq=abs(spec.alpha) ** 2)
    if isinstance(spec, SqueezedVacuum):
        r = math.asinh(math.sqrt(spec.nbar))
        return gaussian_classicality(GaussianParams.squeezed_vacuum(r))
    if isinstance(spec, CoherentPhase):
        return reduced_classicality_eta_phase(spec.eps)
    if isinstance(spec, Gaussian):
        return gaussian_classicality(spec.params)
    raise TypeError(f"not a state spec: {spec!r}")


# ------------------------------------------------------------ numeric path


class _ShiftedOverlap:
    """``g(eta, r) = Tr(rho' rho_c')`` for ``rho_c = D(a) rho_th(eta) D(a)^+``
    with ``a = sqrt(r) e^{i phase}``.

    ``Tr(rho D rho_th D^+) = sum_k (1-eta) eta^k <k|D^+ rho D|k>``, so for
    each ``r`` the diagonal ``q`` of the back-shifted state is computed once
    (exact displacement elements, ``rows`` levels) and every ``eta`` costs a
    polynomial evaluation. The thermal purity enters in closed form.
    """

    def __init__(self, rho: FockDensity, phase: float, rows: int):
        self.rho = rho.elements
        self.trace = float(np.trace(rho.elements).real)
        self.mu = purity(rho)
        self.phase = phase
        self.rows = rows
        self.max_missing = 0.0
        self._k = np.arange(rows, dtype=float)
        self._cache: dict[float, np.ndarray] = {}

    def diagonal(self, r: float) -> np.ndarray:
        q = self._cache.get(r)
        if q is None:
            alpha = cmath.rect(math.sqrt(r), self.phase)
            D = displacement_matrix(-alpha, self.rows, cols=self.rho.shape[0])
            q = ((D @ self.rho) * D.conj()).sum(axis=1).real
            self.max_missing = max(self.max_missing, self.trace - q.sum())
            self._cache[r] = q
        return q

    def __call__(self, eta: float, r: float) -> float:
        q = self.diagonal(r)
        G = q @ eta**self._k if eta else q[0]
        return math.sqrt(1.0 - eta * eta) * float(G) / math.sqrt(self.mu)


def _mean_photons(rho: FockDensity) -> float:
    return float(np.arange(rho.dim) @ rho.diagonal)


def classicality_numeric(
    rho: FockDensity,
    config: OptimConfig | None = None,
    *,
    search: str = "2d",
    alpha: complex | None = None,
    max_tail: float = DEFAULT_MAX_TAIL,
) -> MeasureResult:
    """Classicality of a truncated state by direct search over the reference
    family.

    With ``search="2d"`` the box ``eta in [0, 0.999]``, ``|alpha|^2 in
    [0, 4 (nbar + 1)]`` (or ``config.bounds``) is grid-scanned and refined;
    the displacement phase is the phase of ``<a>``, or zero for states with
    ``<a> = 0``. With ``search="eta"`` the displacement is pinned to
    ``alpha`` (default: the state's own mean ``<a>``) and only ``eta`` is
    searched; ``alpha=0`` gives the eta-reduced classicality.

    Raises:
        TruncationError: ``rho.tail_bound`` exceeds ``max_tail``.
    """
    if rho.tail_bound > max_tail:
        raise TruncationError(f"state tail {rho.tail_bound:.3g} exceeds {max_tail:.3g}")
    config = config or OptimConfig()
    amp = mean_amplitude(rho)
    if search == "eta" and alpha is not None:
        amp = complex(alpha)
    phase = cmath.phase(amp) if abs(amp) > 1e-12 else 0.0
    nbar = _mean_photons(rho)

    if search == "2d":
        bounds = config.bounds or ((0.0, ETA_CAP), (0.0, 4.0 * (nbar + 1.0)))
    elif search == "eta":
        bounds = (config.bounds or ((0.0, ETA_CAP),))[:1]
    else:
        raise ValueError(f"search must be '2d' or 'eta', got {search!r}")
    eta_hi = bounds[0][1]
    if not (0.0 <= bounds[0][0] and eta_hi < 1.0):
        raise ValueError("eta bounds must lie inside [0, 1)")

    r_top = bounds[1][1] if search == "2d" else abs(amp) ** 2
    spread = math.sqrt(r_top * (nbar + 1.0))
    rows = rho.dim + math.ceil(r_top + 12.0 * spread + 12.0 * math.sqrt(r_top)) + 16
    g = _ShiftedOverlap(rho, phase, rows)

    details = {"dim": rho.dim, "tail_bound": rho.tail_bound, "phase": phase, "search": search}
    if search == "2d":
        best = maximize_2d(g, bounds, config)
        eta, r, value = best.x, best.y, best.value
        details["local_maxima"] = [list(p) for p in best.local_maxima]
    else:
        r = abs(amp) ** 2
        best = maximize_1d(lambda e: g(e, r), bounds[0], config)
        eta, value = best.x, best.value
    details["eta_cap_hit"] = bool(eta >= eta_hi - 1e-6)
    err = (g.max_missing + rho.tail_bound) / math.sqrt(g.mu)
    return MeasureResult(
        value=value,
        method=Method.NUMERIC_GRID,
        achieved_tol=float(err),
        argmax_eta=float(eta),
        argmax_alpha_sq=float(r),
        details=details,
    )


# ---------------------------------------------------------- anticlassicality


def _pick_max(p: np.ndarray, start: int) -> int:
    body = p[start:]
    top = body.max()
    return start + int(np.flatnonzero(body >= top * (1.0 - TIE_RTOL))[0])


def anticlassicality(
    state,
    include_vacuum: bool = True,
    purity_weighted: bool = False,
    *,
    n_cap: int = 10**7,
) -> MeasureResult:
    """Largest Fock occupation of ``state`` (a spec or a ``FockDensity``).

    ``include_vacuum=False`` skips ``n = 0``; ``purity_weighted=True``
    multiplies by ``Tr rho^2``. Occupations are scanned upward until the
    unscanned probability cannot beat the running maximum. Ties go to the
    smallest ``n``.

    Raises:
        TruncationError: the tail cannot be resolved (Fock density too
            small, or ``n_cap`` reached).
    """
    start = 0 if include_vacuum else 1
    details = {"include_vacuum": include_vacuum, "purity_weighted": purity_weighted}
    if isinstance(state, FockDensity):
        p = state.diagonal
        mu = purity(state)
        method = Method.NUMERIC_GRID
        if p.size <= start:
            raise TruncationError("density matrix too small")
        idx = _pick_max(p, start)
        tail = max(0.0, 1.0 - math.fsum(p)) + state.tail_bound
        if tail > p[idx]:
            raise TruncationError(f"unresolved tail mass {tail:.3g} exceeds the maximum {p[idx]:.3g}")
        details.update(dim=state.dim, tail_bound=state.tail_bound)
    else:
        mu = spec_purity(state)
        method = Method.HYBRID
        n_max = max(64, math.ceil(2 * state.nbar) + 16)
        while True:
            p = photon_distribution(state, n_max)
            idx = _pick_max(p, start)
            tail = max(0.0, 1.0 - math.fsum(p))
            if tail <= p[idx]:
                break
            if n_max >= n_cap:
                raise TruncationError(f"tail not resolved below n_cap={n_cap}")
            n_max = min(2 * n_max, n_cap)
    value = float(p[idx]) * (mu if purity_weighted else 1.0)
    return MeasureResult(
        value=value,
        method=method,
        achieved_tol=float(np.finfo(float).eps * max(1.0, p.size)),
        argmax_n=idx,
        details={**details, "mu": mu},
    )


def anticlassicality_closed(family: str, nbar: float, variant: str) -> float:
    """Closed-form anticlassicality of coherent, squeezed-vacuum, coherent
    phase and thermal states as a function of the mean photon number.

    ``variant`` is one of ``A``, ``A1``, ``Atilde``, ``Atilde1``. Pure
    families have purity 1, so their weighted variants equal the plain ones.
    """
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant {variant!r}")
    if not (math.isfinite(nbar) and nbar >= 0):
        raise ValueError(f"nbar must be non-negative, got {nbar!r}")
    skip_vacuum = not VARIANTS[variant][0]
    weighted = VARIANTS[variant][1]
    if family == "coherent":
        if nbar == 0.0:
            return 0.0 if skip_vacuum else 1.0
        if skip_vacuum and nbar < 1.0:
            return nbar * math.exp(-nbar)
        k = math.floor(nbar)
        return math.exp(-nbar + k * math.log(nbar) - log_factorial(k))
    if family == "sqv":
        if skip_vacuum:
            return nbar / (2.0 * (1.0 + nbar) ** 1.5)
        return (1.0 + nbar) ** -0.5
    if family in ("phase", "thermal"):
        value = nbar / (1.0 + nbar) ** 2 if skip_vacuum else 1.0 / (1.0 + nbar)
        if family == "thermal" and weighted:
            value /= 1.0 + 2.0 * nbar
        return value
    raise ValueError(f"no closed form for family {family!r}")


# ---------------------------------------------------------------- asymptotics


@dataclass(frozen=True)
class AsymptoticReport:
    nbar: float
    C_sqv: float
    C_eta_phase: float
    C_fock_equiv: float
    A1_sqv: float
    A1_phase: float
    A1tilde_th: float
    ratio_sqv_to_eta_phase: float
    ratio_eta_phase_to_fock: float
    ratio_sqv_to_fock: float
    A1_sqv_times_2sqrt_nbar: float
    A1_phase_times_2nbar: float
    A1tilde_th_times_2nbar_sq: float

    def to_dict(self) -> dict:
        return asdict(self)


def asymptotic_report(nbar: float) -> AsymptoticReport:
    """Exact values of the measures for states sharing the mean photon
    number ``nbar`` (the Fock value uses ``n = nbar``), with the ratios and
    rescalings that expose their large-``nbar`` behaviour."""
    if not nbar > 0:
        raise ValueError("nbar must be positive")
    c_sqv = (1.0 + nbar) ** -0.5
    c_phase = (1.0 + 2.0 * nbar) ** -0.5
    c_fock = math.exp(0.5 * (nbar * math.log(nbar) - (nbar + 1.0) * math.log1p(nbar)))
    a1_sqv = anticlassicality_closed("sqv", nbar, "A1")
    a1_phase = anticlassicality_closed("phase", nbar, "A1")
    a1t_th = anticlassicality_closed("thermal", nbar, "Atilde1")
    return AsymptoticReport(
        nbar=nbar,
        C_sqv=c_sqv,
        C_eta_phase=c_phase,
        C_fock_equiv=c_fock,
        A1_sqv=a1_sqv,
        A1_phase=a1_phase,
        A1tilde_th=a1t_th,
        ratio_sqv_to_eta_phase=c_sqv / c_phase,
        ratio_eta_phase_to_fock=c_phase / c_fock,
        ratio_sqv_to_fock=c_sqv / c_fock,
        A1_sqv_times_2sqrt_nbar=a1_sqv * 2.0 * math.sqrt(nbar),
        A1_phase_times_2nbar=a1_phase * 2.0 * nbar,
        A1tilde_th_times_2nbar_sq=a1t_th * 2.0 * nbar * nbar,
    )
