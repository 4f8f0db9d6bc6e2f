"""Truncated Fock-space density matrices for one bosonic mode.

State families are described by small frozen dataclasses (``Fock``,
``Coherent``, ``Thermal``, ``DisplacedThermal``, ``SqueezedVacuum``,
``CoherentPhase``, ``Gaussian``); :func:`build_state` turns any of them into
a :class:`FockDensity` on the basis ``|0>, ..., |dim-1>``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Union

import numpy as np
from scipy.linalg import eigh_tridiagonal
from scipy.special import gammainc, gammaln

from .gaussian import GaussianParams, gaussian_mu_T, squeezed_thermal_decomposition
from .special import log_poisson, scaled_laguerre_sequence

__all__ = [
    "Fock",
    "Coherent",
    "Thermal",
    "DisplacedThermal",
    "SqueezedVacuum",
    "CoherentPhase",
    "Gaussian",
    "StateSpec",
    "FockDensity",
    "TruncationError",
    "AUTO_TAIL_TOL",
    "default_dim",
    "build_state",
    "displacement_matrix",
    "squeeze_matrix",
    "purity",
    "hs_inner",
    "photon_distribution",
    "mean_amplitude",
    "quadrature_moments",
    "state_to_dict",
    "state_from_dict",
]

AUTO_TAIL_TOL = 1e-10
HERMITIAN_ATOL = 1e-12

# Thermal weights below this are dropped when a mixture is assembled.
_WEIGHT_CUTOFF = 1e-17


class TruncationError(ValueError):
    """The requested truncation cannot hold the state to the tolerance."""


def _check_eta(eta):
    if not (math.isfinite(eta) and 0.0 <= eta < 1.0):
        raise ValueError(f"eta must lie in [0, 1), got {eta!r}")


@dataclass(frozen=True)
class Fock:
    n: int

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 0:
            raise ValueError(f"Fock index must be a non-negative integer, got {self.n!r}")
        object.__setattr__(self, "n", int(self.n))

    @property
    def nbar(self) -> float:
        return float(self.n)


@dataclass(frozen=True)
class Coherent:
    alpha: complex

    def __post_init__(self):
        alpha = complex(self.alpha)
        if not cmath.isfinite(alpha):
            raise ValueError("coherent amplitude must be finite")
        object.__setattr__(self, "alpha", alpha)

    @property
    def nbar(self) -> float:
        return abs(self.alpha) ** 2


@dataclass(frozen=True)
class Thermal:
    """Thermal state ``(1 - eta) sum_k eta^k |k><k|``."""

    eta: float

    def __post_init__(self):
        _check_eta(self.eta)

    @classmethod
    def from_nbar(cls, nbar: float) -> "Thermal":
        if not (math.isfinite(nbar) and nbar >= 0):
            raise ValueError(f"nbar must be non-negative, got {nbar!r}")
        return cls(nbar / (1.0 + nbar))

    @property
    def nbar(self) -> float:
        return self.eta / (1.0 - self.eta)


@dataclass(frozen=True)
class DisplacedThermal:
    eta: float
    alpha: complex = 0j

    def __post_init__(self):
        _check_eta(self.eta)
        object.__setattr__(self, "alpha", complex(self.alpha))

    @property
    def nbar(self) -> float:
        return self.eta / (1.0 - self.eta) + abs(self.alpha) ** 2


@dataclass(frozen=True)
class SqueezedVacuum:
    nbar: float

    def __post_init__(self):
        if not (math.isfinite(self.nbar) and self.nbar >= 0):
            raise ValueError(f"nbar must be non-negative, got {self.nbar!r}")


@dataclass(frozen=True)
class CoherentPhase:
    """Pure state ``sqrt(1 - |eps|^2) sum_n eps^n |n>``."""

    eps: complex

    def __post_init__(self):
        eps = complex(self.eps)
        if not abs(eps) < 1.0:
            raise ValueError(f"|eps| must be < 1, got {abs(eps)!r}")
        object.__setattr__(self, "eps", eps)

    @classmethod
    def from_nbar(cls, nbar: float) -> "CoherentPhase":
        if not (math.isfinite(nbar) and nbar >= 0):
            raise ValueError(f"nbar must be non-negative, got {nbar!r}")
        return cls(math.sqrt(nbar / (1.0 + nbar)))

    @property
    def nbar(self) -> float:
        x = abs(self.eps) ** 2
        return x / (1.0 - x)


@dataclass(frozen=True)
class Gaussian:
    params: GaussianParams

    @property
    def nbar(self) -> float:
        return gaussian_mu_T(self.params)[2] + abs(self.params.alpha) ** 2


StateSpec = Union[Fock, Coherent, Thermal, DisplacedThermal, SqueezedVacuum, CoherentPhase, Gaussian]

_PURE = (Fock, Coherent, SqueezedVacuum, CoherentPhase)


def spec_purity(spec: StateSpec) -> float:
    """Exact purity of the (untruncated) state."""
    if isinstance(spec, _PURE):
        return 1.0
    if isinstance(spec, (Thermal, DisplacedThermal)):
        return (1.0 - spec.eta) / (1.0 + spec.eta)
    if isinstance(spec, Gaussian):
        return gaussian_mu_T(spec.params)[0]
    raise TypeError(f"not a state spec: {spec!r}")


@dataclass(frozen=True, eq=False)
class FockDensity:
    """Density matrix ``<m|rho|n>`` truncated to ``dim`` Fock levels.

    ``tail_bound`` estimates the probability mass lying beyond the
    truncation. The matrix is stored read-only.
    """

    elements: np.ndarray
    tail_bound: float = 0.0

    def __post_init__(self):
        rho = np.array(self.elements, dtype=complex)
        if rho.ndim != 2 or rho.shape[0] != rho.shape[1] or rho.shape[0] < 1:
            raise ValueError(f"density matrix must be square, got shape {rho.shape}")
        if not np.all(np.isfinite(rho)):
            raise ValueError("density matrix has non-finite entries")
        if np.max(np.abs(rho - rho.conj().T)) > HERMITIAN_ATOL:
            raise ValueError("density matrix is not Hermitian")
        if self.tail_bound < 0:
            raise ValueError("tail_bound must be non-negative")
        tr = np.trace(rho).real
        if abs(tr - 1.0) > self.tail_bound + 1e-12:
            raise ValueError(f"trace {tr!r} inconsistent with tail_bound {self.tail_bound!r}")
        rho.setflags(write=False)
        object.__setattr__(self, "elements", rho)
        object.__setattr__(self, "tail_bound", float(self.tail_bound))

    @property
    def dim(self) -> int:
        return self.elements.shape[0]

    @property
    def diagonal(self) -> np.ndarray:
        return self.elements.diagonal().real.copy()

    @classmethod
    def from_ket(cls, amplitudes, tail_bound: float = 0.0) -> "FockDensity":
        psi = np.asarray(amplitudes, dtype=complex)
        return cls(_hermitize(np.outer(psi, psi.conj())), tail_bound)


def _hermitize(m):
    return 0.5 * (m + m.conj().T)


def default_dim(nbar: float) -> int:
    """Starting truncation ``max(32, ceil(12 (nbar + 1)))``."""
    return max(32, math.ceil(12.0 * (nbar + 1.0)))


# ---------------------------------------------------------------- operators


def _displacement_core(x: float, n_rows: int, k_cols: int) -> np.ndarray:
    """``c[n, k] = <n+k|D(alpha)|n>`` with the phase of ``alpha^k`` removed,
    for ``|alpha|^2 = x > 0``.

    Runs the recurrence for ``z_n = sqrt(n! k!/(n+k)!) L_n^k(x)`` across all
    ``k`` at once, carrying a per-``k`` log scale so that neither ``z_n``
    nor the Poisson prefactor can overflow or underflow on its own.
    """
    k = np.arange(k_cols, dtype=float)
    log_pref = -0.5 * x + 0.5 * k * math.log(x) - 0.5 * gammaln(k + 1.0)
    out = np.empty((n_rows, k_cols))
    z_prev = np.zeros(k_cols)
    z = np.ones(k_cols)
    log_scale = np.zeros(k_cols)
    big = 1e150
    for n in range(n_rows):
        with np.errstate(divide="ignore"):
            mag = np.exp(log_pref + log_scale + np.log(np.abs(z)))
        out[n] = np.sign(z) * mag
        if n + 1 == n_rows:
            break
        z_next = ((2 * n + k + 1 - x) * z - np.sqrt(n * (n + k)) * z_prev) / np.sqrt(
            (n + 1) * (n + k + 1)
        )
        z_prev, z = z, z_next
        over = np.abs(z) > big
        if over.any():
            z[over] /= big
            z_prev[over] /= big
            log_scale[over] += math.log(big)
    return out


def displacement_matrix(alpha: complex, dim: int, cols: int | None = None) -> np.ndarray:
    """Matrix elements ``<m|D(alpha)|n>`` for ``m < dim`` and ``n < cols``.

    Each element is the exact infinite-space value; nothing is lost by
    truncating, so a rectangular block is as accurate as a square one.
    """
    cols = dim if cols is None else cols
    if dim < 1 or cols < 1:
        raise ValueError("dimensions must be positive")
    alpha = complex(alpha)
    x = abs(alpha) ** 2
    if x == 0.0:
        return np.eye(dim, cols, dtype=complex)
    core = _displacement_core(x, min(dim, cols), max(dim, cols))
    m, n = np.indices((dim, cols))
    lower = m >= n
    k = np.abs(m - n)
    base = np.minimum(m, n)
    unit = alpha / abs(alpha)
    phase = np.where(lower, unit**k, (-unit.conjugate()) ** k)
    return core[base, k] * phase


def squeeze_matrix(r: float, dim: int, cols: int | None = None) -> np.ndarray:
    """Truncated ``exp(r (a^2 - a^dagger^2)/2)``, columns ``< cols``.

    The generator only couples levels of equal parity. On each parity block
    it is a real antisymmetric tridiagonal matrix ``T``; with
    ``G = diag(i^j)`` one has ``G T G^-1 = -i H`` for a real symmetric
    tridiagonal ``H``, so ``exp(T) = G^-1 V exp(-i L) V^T G``.
    Only the leading part of the result approximates the true operator.
    """
    cols = dim if cols is None else cols
    out = np.zeros((dim, cols))
    if r == 0.0:
        out[np.arange(min(dim, cols)), np.arange(min(dim, cols))] = 1.0
        return out
    for parity in (0, 1):
        idx = np.arange(parity, dim, 2)
        size = idx.size
        if size == 0:
            continue
        col_idx = idx[idx < cols]
        if size == 1:
            out[idx[0], idx[0]] = 1.0 if col_idx.size else 0.0
            continue
        j = idx[:-1]
        off = 0.5 * r * np.sqrt((j + 1.0) * (j + 2.0))
        lam, vec = eigh_tridiagonal(np.zeros(size), off)
        ncol = col_idx.size
        block = vec @ (np.exp(-1j * lam)[:, None] * vec[:ncol].T)
        a = np.arange(size)[:, None]
        b = np.arange(ncol)[None, :]
        block = (1j ** ((b - a) % 4)) * block
        out[np.ix_(idx, col_idx)] = block.real
    return out


# ------------------------------------------------------------- constructors


def _thermal_weights(eta: float) -> np.ndarray:
    if eta == 0.0:
        return np.ones(1)
    count = max(1, math.ceil(math.log(_WEIGHT_CUTOFF) / math.log(eta)))
    return (1.0 - eta) * eta ** np.arange(count)


def _coherent_ket(alpha: complex, dim: int) -> np.ndarray:
    x = abs(alpha) ** 2
    n = np.arange(dim)
    if x == 0.0:
        ket = np.zeros(dim, dtype=complex)
        ket[0] = 1.0
        return ket
    mag = np.exp(0.5 * log_poisson(n, x))
    return mag * (alpha / abs(alpha)) ** n


def _sqv_distribution(nbar: float, n_max: int) -> np.ndarray:
    p = np.zeros(n_max + 1)
    m = np.arange(n_max // 2 + 1, dtype=float)
    if nbar == 0.0:
        p[0] = 1.0
        return p
    logp = (
        -0.5 * math.log1p(nbar)
        + gammaln(2 * m + 1)
        - 2.0 * (m * math.log(2.0) + gammaln(m + 1))
        + m * (math.log(nbar) - math.log1p(nbar))
    )
    p[0::2] = np.exp(logp)
    return p


def _geometric(x: float, n_max: int) -> np.ndarray:
    n = np.arange(n_max + 1)
    if x == 0.0:
        return (n == 0).astype(float)
    return (1.0 - x) * np.exp(n * math.log(x))


def _displaced_thermal_distribution(eta: float, alpha_sq: float, n_max: int) -> np.ndarray:
    start = (1.0 - eta) * math.exp(-alpha_sq * (1.0 - eta))
    return scaled_laguerre_sequence(n_max, alpha_sq * (1.0 - eta) ** 2, eta, start=start)


def _closed_tail(spec: StateSpec, dim: int) -> float | None:
    """Exact probability mass beyond ``dim`` where it has a closed form."""
    if isinstance(spec, Fock):
        return 0.0 if spec.n < dim else 1.0
    if isinstance(spec, Coherent):
        return float(gammainc(dim, spec.nbar)) if spec.nbar > 0 else 0.0
    if isinstance(spec, Thermal):
        return spec.eta**dim
    if isinstance(spec, CoherentPhase):
        return (abs(spec.eps) ** 2) ** dim
    if isinstance(spec, SqueezedVacuum):
        return max(0.0, 1.0 - math.fsum(_sqv_distribution(spec.nbar, dim - 1)))
    if isinstance(spec, DisplacedThermal):
        p = _displaced_thermal_distribution(spec.eta, abs(spec.alpha) ** 2, dim - 1)
        return max(0.0, 1.0 - math.fsum(p))
    return None


def _auto_dim(spec: StateSpec, tail_tol: float) -> int:
    dim = default_dim(spec.nbar)
    if isinstance(spec, Fock):
        return max(dim, spec.n + 1)
    if isinstance(spec, Gaussian):
        return dim
    while _closed_tail(spec, dim) > tail_tol:
        dim = math.ceil(dim * 1.25)
    return dim


def _build_displaced_thermal(eta: float, alpha: complex, dim: int) -> np.ndarray:
    w = _thermal_weights(eta)
    D = displacement_matrix(alpha, dim, cols=w.size)
    return _hermitize((D * w) @ D.conj().T)


def _build_gaussian(params: GaussianParams, dim: int) -> np.ndarray:
    eta0, r, phi, alpha = squeezed_thermal_decomposition(params)
    w = _thermal_weights(eta0)
    work = 2 * dim + w.size + 32
    S = squeeze_matrix(r, work, cols=w.size)
    sigma = (S * w) @ S.T
    n = np.arange(work)
    rot = np.exp(-1j * phi * n)
    sigma = rot[:, None] * sigma * rot.conj()[None, :]
    if alpha == 0:
        rho = sigma[:dim, :dim]
    else:
        D = displacement_matrix(alpha, dim, cols=work)
        rho = D @ sigma @ D.conj().T
    return _hermitize(rho)


def _build_matrix(spec: StateSpec, dim: int) -> np.ndarray:
    if isinstance(spec, Fock):
        rho = np.zeros((dim, dim), dtype=complex)
        rho[spec.n, spec.n] = 1.0
        return rho
    if isinstance(spec, Coherent):
        ket = _coherent_ket(spec.alpha, dim)
    elif isinstance(spec, CoherentPhase):
        n = np.arange(dim)
        ket = math.sqrt(1.0 - abs(spec.eps) ** 2) * spec.eps**n
    elif isinstance(spec, SqueezedVacuum):
        ket = np.sqrt(_sqv_distribution(spec.nbar, dim - 1)).astype(complex)
    elif isinstance(spec, Thermal):
        return np.diag(_geometric(spec.eta, dim - 1)).astype(complex)
    elif isinstance(spec, DisplacedThermal):
        return _build_displaced_thermal(spec.eta, spec.alpha, dim)
    elif isinstance(spec, Gaussian):
        return _build_gaussian(spec.params, dim)
    else:
        raise TypeError(f"not a state spec: {spec!r}")
    return _hermitize(np.outer(ket, ket.conj()))


def build_state(spec: StateSpec, dim: int | None = None, *, tail_tol: float | None = None) -> FockDensity:
    """Truncated density matrix of ``spec``.

    With ``dim=None`` the truncation grows from :func:`default_dim` until the
    omitted mass is at most ``tail_tol`` (default :data:`AUTO_TAIL_TOL`).
    With an explicit ``dim`` the tail is only checked if ``tail_tol`` is
    given.

    Raises:
        TruncationError: the state does not fit within the tolerance.
    """
    if dim is not None and dim < 1:
        raise ValueError("dim must be positive")
    auto = dim is None
    tol = AUTO_TAIL_TOL if (auto and tail_tol is None) else tail_tol
    if auto:
        dim = _auto_dim(spec, tol)
    if isinstance(spec, Fock) and spec.n >= dim:
        raise TruncationError(f"Fock level {spec.n} does not fit in dim={dim}")
    while True:
        rho = _build_matrix(spec, dim)
        tail = _closed_tail(spec, dim)
        if tail is None or isinstance(spec, DisplacedThermal):
            tail = max(0.0, 1.0 - np.trace(rho).real)
        if tol is None or tail <= tol:
            break
        if not auto:
            raise TruncationError(f"tail mass {tail:.3g} exceeds {tol:.3g} at dim={dim}")
        dim *= 2
    return FockDensity(rho, tail_bound=tail)


# ----------------------------------------------------------------- functions


def purity(rho: FockDensity) -> float:
    """``Tr(rho^2)``."""
    return float(np.sum(np.abs(rho.elements) ** 2))


def hs_inner(rho1: FockDensity, rho2: FockDensity) -> float:
    """Hilbert-Schmidt inner product ``Tr(rho1 rho2)``."""
    if rho1.dim != rho2.dim:
        raise ValueError(f"dimension mismatch: {rho1.dim} vs {rho2.dim}")
    val = np.sum(rho1.elements * rho2.elements.T)
    if abs(val.imag) > 1e-12 * max(1.0, abs(val.real)):
        raise ValueError(f"inner product has imaginary part {val.imag!r}")
    return float(val.real)


def photon_distribution(spec: StateSpec, n_max: int) -> np.ndarray:
    """Photon-number probabilities ``p_0 .. p_{n_max}``.

    Closed forms are used for every family except generic Gaussians, whose
    distribution is read off the diagonal of :func:`build_state`.
    """
    if n_max < 0:
        raise ValueError("n_max must be non-negative")
    if isinstance(spec, Fock):
        p = np.zeros(n_max + 1)
        if spec.n <= n_max:
            p[spec.n] = 1.0
        return p
    if isinstance(spec, Coherent):
        return np.exp(log_poisson(np.arange(n_max + 1), spec.nbar))
    if isinstance(spec, Thermal):
        return _geometric(spec.eta, n_max)
    if isinstance(spec, CoherentPhase):
        return _geometric(abs(spec.eps) ** 2, n_max)
    if isinstance(spec, SqueezedVacuum):
        return _sqv_distribution(spec.nbar, n_max)
    if isinstance(spec, DisplacedThermal):
        return _displaced_thermal_distribution(spec.eta, abs(spec.alpha) ** 2, n_max)
    if isinstance(spec, Gaussian):
        rho = build_state(spec)
        dim = max(rho.dim, n_max + 1)
        if dim > rho.dim:
            rho = build_state(spec, dim)
        return rho.diagonal[: n_max + 1]
    raise TypeError(f"not a state spec: {spec!r}")


def mean_amplitude(rho: FockDensity) -> complex:
    """``<a>`` computed inside the truncation."""
    n = np.arange(1, rho.dim)
    return complex(np.sum(np.sqrt(n) * np.diagonal(rho.elements, offset=-1)))


def quadrature_moments(rho: FockDensity) -> GaussianParams:
    """Quadrature (co)variances and means of ``rho``, in the same
    convention as :class:`GaussianParams`."""
    el = rho.elements
    n = np.arange(rho.dim)
    a1 = mean_amplitude(rho)
    a2 = complex(np.sum(np.sqrt(n[2:] * (n[2:] - 1)) * np.diagonal(el, offset=-2)))
    nn = float(np.sum(n * el.diagonal().real))
    q2 = (2 * a2.real + 2 * nn + 1) / 2
    p2 = (-2 * a2.real + 2 * nn + 1) / 2
    qp = a2.imag
    dq, dp = math.sqrt(2) * a1.real, math.sqrt(2) * a1.imag
    return GaussianParams(
        sigma_q=q2 - dq * dq,
        sigma_p=p2 - dp * dp,
        sigma_pq=qp - dq * dp,
        d_q=dq,
        d_p=dp,
    )


# ------------------------------------------------------------ serialization


def state_to_dict(spec: StateSpec) -> dict:
    if isinstance(spec, Fock):
        return {"family": "fock", "n": spec.n}
    if isinstance(spec, Coherent):
        return {"family": "coherent", "alpha": [spec.alpha.real, spec.alpha.imag]}
    if isinstance(spec, Thermal):
        return {"family": "thermal", "eta": spec.eta}
    if isinstance(spec, DisplacedThermal):
        return {"family": "displaced_thermal", "eta": spec.eta, "alpha": [spec.alpha.real, spec.alpha.imag]}
    if isinstance(spec, SqueezedVacuum):
        return {"family": "sqv", "nbar": spec.nbar}
    if isinstance(spec, CoherentPhase):
        return {"family": "phase", "eps": [spec.eps.real, spec.eps.imag]}
    if isinstance(spec, Gaussian):
        p = spec.params
        return {
            "family": "gaussian",
            "sigma_q": p.sigma_q,
            "sigma_p": p.sigma_p,
            "sigma_pq": p.sigma_pq,
            "d_q": p.d_q,
            "d_p": p.d_p,
        }
    raise TypeError(f"not a state spec: {spec!r}")


def state_from_dict(data: dict) -> StateSpec:
    family = data["family"]
    if family == "fock":
        return Fock(data["n"])
    if family == "coherent":
        return Coherent(complex(*data["alpha"]))
    if family == "thermal":
        return Thermal(data["eta"])
    if family == "displaced_thermal":
        return DisplacedThermal(data["eta"], complex(*data["alpha"]))
    if family == "sqv":
        return SqueezedVacuum(data["nbar"])
    if family == "phase":
        return CoherentPhase(complex(*data["eps"]))
    if family == "gaussian":
        fields = ("sigma_q", "sigma_p", "sigma_pq", "d_q", "d_p")
        return Gaussian(GaussianParams(**{f: data[f] for f in fields}))
    raise ValueError(f"unknown state family {family!r}")
