"""Single-mode Gaussian states: (co)variances, purity and the closed-form
fidelity to thermal states.

Units are dimensionless with the vacuum quadrature variance equal to 1/2,
``q = (a + a^dagger)/sqrt(2)`` and ``p = (a - a^dagger)/(i sqrt(2))``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .results import MeasureResult, Method

__all__ = [
    "GaussianParams",
    "gaussian_mu_T",
    "gaussian_F",
    "gaussian_classicality",
    "generating_function_F",
    "squeezed_thermal_decomposition",
    "squeezing_threshold_nbar",
]

_UNCERTAINTY_SLACK = 1e-12


@dataclass(frozen=True)
class GaussianParams:
    """Quadrature variances ``sigma_q``, ``sigma_p``, covariance
    ``sigma_pq`` and mean displacements ``d_q``, ``d_p``."""

    sigma_q: float
    sigma_p: float
    sigma_pq: float = 0.0
    d_q: float = 0.0
    d_p: float = 0.0

    def __post_init__(self):
        for name in ("sigma_q", "sigma_p", "sigma_pq", "d_q", "d_p"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")
        if self.sigma_q <= 0 or self.sigma_p <= 0:
            raise ValueError("quadrature variances must be positive")
        if self.determinant < 0.25 - _UNCERTAINTY_SLACK:
            raise ValueError(
                "uncertainty relation violated: "
                f"sigma_p*sigma_q - sigma_pq^2 = {self.determinant!r} < 1/4"
            )

    @property
    def determinant(self) -> float:
        return self.sigma_p * self.sigma_q - self.sigma_pq**2

    @property
    def alpha(self) -> complex:
        """Coherent amplitude of the displacement."""
        return complex(self.d_q, self.d_p) / math.sqrt(2.0)

    @classmethod
    def thermal(cls, nbar: float) -> "GaussianParams":
        v = (1.0 + 2.0 * nbar) / 2.0
        return cls(v, v)

    @classmethod
    def squeezed_vacuum(cls, r: float) -> "GaussianParams":
        return cls(math.exp(-2.0 * r) / 2.0, math.exp(2.0 * r) / 2.0)

    @classmethod
    def from_mu_T(cls, mu: float, T: float, angle: float = 0.0) -> "GaussianParams":
        """Undisplaced state with purity ``mu`` and ``sigma_q + sigma_p == T``.

        ``angle`` rotates the covariance ellipse in phase space.
        """
        if not 0 < mu <= 1:
            raise ValueError("purity must lie in (0, 1]")
        det = 1.0 / (4.0 * mu * mu)
        disc = T * T / 4.0 - det
        if disc < -_UNCERTAINTY_SLACK:
            raise ValueError("mu*T must be at least 1")
        half_gap = math.sqrt(max(disc, 0.0))
        lo, hi = T / 2.0 - half_gap, T / 2.0 + half_gap
        c, s = math.cos(angle), math.sin(angle)
        return cls(
            sigma_q=c * c * lo + s * s * hi,
            sigma_p=s * s * lo + c * c * hi,
            sigma_pq=c * s * (hi - lo),
        )


def gaussian_mu_T(params: GaussianParams) -> tuple[float, float, float]:
    """Purity ``mu``, ``T = sigma_p + sigma_q`` and the mean photon number
    ``(T - 1)/2`` of the undisplaced state."""
    mu = 1.0 / math.sqrt(4.0 * params.determinant)
    mu = min(mu, 1.0)
    T = params.sigma_p + params.sigma_q
    return mu, T, (T - 1.0) / 2.0


def gaussian_F(params: GaussianParams, eta: float) -> float:
    """Renormalized fidelity between the undisplaced Gaussian state and the
    thermal state with Boltzmann ratio ``eta``."""
    if not 0.0 <= eta < 1.0:
        raise ValueError(f"eta must lie in [0, 1), got {eta!r}")
    mu, T, _ = gaussian_mu_T(params)
    mu2 = mu * mu
    a = 1.0 + mu2 + 2.0 * T * mu2
    b = 1.0 - mu2
    c = 1.0 + mu2 - 2.0 * T * mu2
    return 2.0 * math.sqrt(mu * (1.0 - eta * eta) / (a - 2.0 * b * eta + c * eta * eta))


def gaussian_classicality(params: GaussianParams) -> MeasureResult:
    """Closed-form classicality ``sqrt(2/(1 + mu T))``.

    The optimal reference is the thermal state with the same purity,
    ``eta* = (1 - mu)/(1 + mu)``, displaced by the state's own mean.
    """
    mu, T, nbar = gaussian_mu_T(params)
    eta_star = (1.0 - mu) / (1.0 + mu)
    value = math.sqrt(2.0 / (1.0 + mu * T))
    alpha = params.alpha
    return MeasureResult(
        value=min(value, 1.0),
        method=Method.CLOSED_FORM,
        argmax_eta=eta_star,
        argmax_alpha_sq=abs(alpha) ** 2,
        details={
            "mu": mu,
            "T": T,
            "nbar": nbar,
            "reference_purity": (1.0 - eta_star) / (1.0 + eta_star),
            "argmax_alpha": [alpha.real, alpha.imag],
        },
    )


def generating_function_F(p, mu: float, eta: float) -> float:
    """``mu^{-1/2} sqrt(1 - eta^2) G(eta)`` for photon distribution ``p``.

    ``G`` is summed over the supplied entries. Whatever mass is missing from
    ``p`` contributes at most ``(1 - sum p) * eta**len(p)``.
    """
    p = np.asarray(p, dtype=float)
    if p.ndim != 1 or p.size == 0:
        raise ValueError("photon distribution must be a non-empty 1-D sequence")
    if np.any(p < -1e-15) or p.sum() > 1.0 + 1e-9:
        raise ValueError("photon distribution must be non-negative with sum <= 1")
    if not 0.0 <= eta < 1.0:
        raise ValueError(f"eta must lie in [0, 1), got {eta!r}")
    if not 0.0 < mu <= 1.0 + 1e-12:
        raise ValueError(f"purity must lie in (0, 1], got {mu!r}")
    G = float(p @ eta ** np.arange(p.size, dtype=float)) if eta else float(p[0])
    return math.sqrt(1.0 - eta * eta) * G / math.sqrt(mu)


def squeezed_thermal_decomposition(params: GaussianParams):
    """Write the state as ``D(alpha) R(phi) S(r) rho_th(eta0) S^+ R^+ D^+``.

    ``S(r) = exp(r (a^2 - a^dagger^2)/2)`` squeezes ``q`` for ``r > 0`` and
    ``R(phi) = exp(-i phi a^dagger a)``.

    Returns:
        ``(eta0, r, phi, alpha)``.
    """
    mu, _, _ = gaussian_mu_T(params)
    cov = np.array([[params.sigma_q, params.sigma_pq], [params.sigma_pq, params.sigma_p]])
    lam, vec = np.linalg.eigh(cov)
    lam = np.clip(lam, 1e-300, None)
    r = 0.25 * math.log(lam[1] / lam[0])
    u = vec[:, 0]
    phi = math.atan2(-u[1], u[0])
    eta0 = (1.0 - mu) / (1.0 + mu)
    return eta0, r, phi, params.alpha


def squeezing_threshold_nbar(mu: float) -> float:
    """Mean photon number below which a Gaussian state of purity ``mu``
    cannot be squeezed; diagnostic only."""
    return (1.0 - mu * mu) / (2.0 * mu * mu)
