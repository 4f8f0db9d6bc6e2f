import cmath
import math

import mpmath
import numpy as np
import pytest
from scipy.linalg import expm
from scipy.special import comb

from classicality.fock import (
    Coherent,
    CoherentPhase,
    DisplacedThermal,
    Fock,
    FockDensity,
    Gaussian,
    SqueezedVacuum,
    Thermal,
    TruncationError,
    build_state,
    default_dim,
    displacement_matrix,
    hs_inner,
    mean_amplitude,
    photon_distribution,
    purity,
    quadrature_moments,
    spec_purity,
    squeeze_matrix,
    state_from_dict,
    state_to_dict,
)
from classicality.gaussian import GaussianParams

BIG = 160


def annihilation(dim):
    return np.diag(np.sqrt(np.arange(1, dim)), 1).astype(complex)


def expm_displacement(alpha, dim=BIG):
    a = annihilation(dim)
    return expm(alpha * a.conj().T - np.conj(alpha) * a)


def expm_squeeze(r, dim=BIG):
    a = annihilation(dim)
    return expm(0.5 * r * (a @ a - a.conj().T @ a.conj().T))


def mp_displaced_thermal_p(n, eta, r):
    eta, r = mpmath.mpf(eta), mpmath.mpf(r)
    return (1 - eta) * eta**n * mpmath.exp(-r * (1 - eta)) * mpmath.laguerre(n, 0, -r * (1 - eta) ** 2 / eta)


# ---------------------------------------------------------------- operators


@pytest.mark.parametrize("alpha", [0.3, 1.2 - 0.7j, -2.0j, 2.5 + 1.0j])
def test_displacement_matches_matrix_exponential(alpha):
    ref = expm_displacement(alpha)[:40, :40]
    assert np.max(np.abs(displacement_matrix(alpha, 40) - ref)) < 1e-12


def test_displacement_rectangular_block():
    ref = expm_displacement(1 + 1j)
    assert np.max(np.abs(displacement_matrix(1 + 1j, 50, cols=20) - ref[:50, :20])) < 1e-12


def test_displacement_basic_elements():
    assert np.array_equal(displacement_matrix(0, 7), np.eye(7))
    alpha = 0.8 - 0.4j
    D = displacement_matrix(alpha, 30)
    assert D[0, 0] == pytest.approx(math.exp(-abs(alpha) ** 2 / 2), abs=1e-15)
    m = np.arange(30)
    poisson = np.exp(-abs(alpha) ** 2) * abs(alpha) ** (2 * m) / np.array([math.factorial(k) for k in m], dtype=float)
    assert np.allclose(np.abs(D[:, 0]) ** 2, poisson, atol=1e-15)


@pytest.mark.parametrize("alpha", [0.5, 1.5j, 2.0, -1.2 + 1.6j])
def test_displacement_inverse_on_interior(alpha):
    dim = 128
    prod = displacement_matrix(alpha, dim) @ displacement_matrix(-alpha, dim)
    half = dim // 2
    assert np.max(np.abs(prod[:half, :half] - np.eye(half))) < 1e-8


@pytest.mark.parametrize("r", [0.1, 0.6, 1.1])
def test_squeeze_matches_matrix_exponential_on_interior(r):
    # Truncating the generator corrupts the outer levels; only a leading
    # block of a larger computation is meaningful.
    ref = expm_squeeze(r, 400)[:40, :40]
    assert np.max(np.abs(squeeze_matrix(r, 200)[:40, :40] - ref)) < 1e-10
    assert np.max(np.abs(squeeze_matrix(r, 200, cols=10) - squeeze_matrix(r, 200)[:, :10])) < 1e-12


# ------------------------------------------------------------------ states


def test_fock_state():
    rho = build_state(Fock(3), 8)
    expected = np.zeros((8, 8))
    expected[3, 3] = 1
    assert np.array_equal(rho.elements, expected)
    assert rho.tail_bound == 0.0
    with pytest.raises(TruncationError):
        build_state(Fock(8), 8)


def test_thermal_state():
    rho = build_state(Thermal(0.5))
    k = np.arange(rho.dim)
    assert np.allclose(rho.diagonal, 0.5 * 0.5**k, rtol=1e-14, atol=0)
    assert rho.tail_bound <= 1e-10
    assert purity(rho) == pytest.approx(1 / 3, abs=1e-10)
    assert purity(build_state(Thermal(1 / 3))) == pytest.approx(0.5, abs=1e-10)


def test_phase_state_shares_thermal_diagonal():
    eps = 0.6 * cmath.exp(0.9j)
    a = build_state(CoherentPhase(eps), 60).diagonal
    b = build_state(Thermal(abs(eps) ** 2), 60).diagonal
    assert np.max(np.abs(a - b)) < 1e-12


def test_coherent_state_is_displaced_vacuum():
    alpha = 1.3 + 0.4j
    ket = expm_displacement(alpha)[:, 0][:50]
    rho = build_state(Coherent(alpha), 50)
    assert np.max(np.abs(rho.elements - np.outer(ket, ket.conj()))) < 1e-13


def test_squeezed_vacuum_distribution():
    nbar = 1.7
    p = photon_distribution(SqueezedVacuum(nbar), 40)
    assert np.all(p[1::2] == 0)
    assert p[0] == pytest.approx((1 + nbar) ** -0.5, rel=1e-14)
    # Even weights: C(2m, m) (tanh r / 2)^{2m} / cosh r with sinh^2 r = nbar.
    m = np.arange(21)
    t = math.tanh(math.asinh(math.sqrt(nbar)))
    oracle = comb(2 * m, m) * (t / 2) ** (2 * m) / math.cosh(math.asinh(math.sqrt(nbar)))
    assert np.allclose(p[::2], oracle, rtol=1e-12)


def test_squeezed_vacuum_matches_squeeze_operator():
    nbar = 0.8
    r = math.asinh(math.sqrt(nbar))
    ket = expm_squeeze(r)[:, 0][:60]
    rho = build_state(SqueezedVacuum(nbar), 60)
    assert np.max(np.abs(rho.elements - np.abs(np.outer(ket, ket.conj())))) < 1e-12


def test_coherent_distribution_is_poisson():
    alpha = 1.1 - 0.9j
    n = np.arange(25)
    x = abs(alpha) ** 2
    expected = [math.exp(-x) * x**k / math.factorial(k) for k in n]
    assert np.allclose(photon_distribution(Coherent(alpha), 24), expected, rtol=1e-13)


@pytest.mark.parametrize("eta", [0.1, 0.3, 0.5, 0.7, 0.9])
@pytest.mark.parametrize("r", [0.0, 0.5, 1.0, 4.0])
def test_displaced_thermal_diagonal_formula(eta, r):
    rho = build_state(DisplacedThermal(eta, cmath.rect(math.sqrt(r), 0.4)))
    for n in range(11):
        assert rho.diagonal[n] == pytest.approx(float(mp_displaced_thermal_p(n, eta, r)), abs=1e-9)


def test_displaced_thermal_against_matrix_exponential():
    eta, alpha = 0.45, 0.9 - 0.5j
    D = expm_displacement(alpha)
    w = (1 - eta) * eta ** np.arange(BIG)
    ref = (D * w) @ D.conj().T
    rho = build_state(DisplacedThermal(eta, alpha), 40)
    assert np.max(np.abs(rho.elements - ref[:40, :40])) < 1e-12


def test_displaced_thermal_phase_covariance():
    a = build_state(DisplacedThermal(0.6, 1.1 + 0.3j), 70).diagonal
    b = build_state(DisplacedThermal(0.6, 1j * (1.1 + 0.3j)), 70).diagonal
    assert np.max(np.abs(a - b)) < 1e-12


def test_gaussian_state_reproduces_its_moments():
    params = GaussianParams(sigma_q=0.9, sigma_p=1.4, sigma_pq=0.3, d_q=0.7, d_p=-0.4)
    rho = build_state(Gaussian(params))
    assert rho.tail_bound < 1e-10
    got = quadrature_moments(rho)
    for field in ("sigma_q", "sigma_p", "sigma_pq", "d_q", "d_p"):
        assert getattr(got, field) == pytest.approx(getattr(params, field), abs=1e-8)
    assert purity(rho) == pytest.approx(spec_purity(Gaussian(params)), abs=1e-9)


def test_gaussian_squeezed_vacuum_matches_family():
    r = 0.5
    g = build_state(Gaussian(GaussianParams.squeezed_vacuum(r)), 60)
    s = build_state(SqueezedVacuum(math.sinh(r) ** 2), 60)
    # Same state up to a quarter-turn rotation, which flips alternate signs.
    assert np.max(np.abs(np.abs(g.elements) - s.elements.real)) < 1e-10
    assert np.max(np.abs(g.diagonal - s.diagonal)) < 1e-12


@pytest.mark.parametrize("mu,T", [(0.2, 50.0), (1.0, 10.0), (0.5, 6.0)])
def test_gaussian_truncation_is_converged(mu, T):
    spec = Gaussian(GaussianParams.from_mu_T(mu, T, angle=0.7))
    rho = build_state(spec)
    big = build_state(spec, rho.dim + 64)
    assert np.max(np.abs(rho.elements - big.elements[: rho.dim, : rho.dim])) < 1e-10


def test_mean_amplitude():
    assert mean_amplitude(build_state(Coherent(0.3 - 1.2j))) == pytest.approx(0.3 - 1.2j, abs=1e-12)
    assert mean_amplitude(build_state(Thermal(0.3))) == 0


# --------------------------------------------------------------- truncation


def test_default_dim():
    assert default_dim(0) == 32
    assert default_dim(4.5) == 66


def test_auto_dim_meets_tail():
    for spec in (Coherent(3.0), Thermal(0.95), CoherentPhase(0.97), SqueezedVacuum(5.0), DisplacedThermal(0.8, 2.0)):
        rho = build_state(spec)
        assert rho.tail_bound <= 1e-10
        assert abs(np.trace(rho.elements).real - 1) <= rho.tail_bound + 1e-12


def test_explicit_dim_tail_failure():
    with pytest.raises(TruncationError):
        build_state(Thermal(0.9), 10, tail_tol=1e-10)
    rho = build_state(Thermal(0.9), 10)
    assert rho.tail_bound == pytest.approx(0.9**10)


@pytest.mark.parametrize("bad", [0, -3])
def test_bad_dim(bad):
    with pytest.raises(ValueError):
        build_state(Thermal(0.2), bad)


# ------------------------------------------------------------- validation


@pytest.mark.parametrize(
    "make",
    [
        lambda: Fock(-1),
        lambda: Fock(1.5),
        lambda: Coherent(complex(math.nan, 0)),
        lambda: Thermal(1.0),
        lambda: Thermal(-0.1),
        lambda: Thermal.from_nbar(-1),
        lambda: DisplacedThermal(1.2, 0),
        lambda: SqueezedVacuum(-0.5),
        lambda: CoherentPhase(1.0),
        lambda: CoherentPhase.from_nbar(math.inf),
    ],
)
def test_invalid_specs(make):
    with pytest.raises(ValueError):
        make()


def test_focks_density_validation():
    with pytest.raises(ValueError):
        FockDensity(np.ones((2, 3)))
    with pytest.raises(ValueError):
        FockDensity(np.array([[0.5, 0.1], [0.2, 0.5]]))
    with pytest.raises(ValueError):
        FockDensity(np.diag([0.5, 0.4]))
    with pytest.raises(ValueError):
        FockDensity(np.diag([np.nan, 1.0]))
    FockDensity(np.diag([0.5, 0.4]), tail_bound=0.1)


def test_density_is_read_only():
    rho = build_state(Thermal(0.2), 8)
    with pytest.raises(ValueError):
        rho.elements[0, 0] = 1


def test_hs_inner():
    rho = build_state(Thermal(0.4))
    assert hs_inner(rho, rho) == pytest.approx(purity(rho), rel=1e-14)
    alpha = 1.2 + 0.5j
    vac = build_state(Fock(0), 40)
    coh = build_state(Coherent(alpha), 40)
    assert hs_inner(vac, coh) == pytest.approx(math.exp(-abs(alpha) ** 2), rel=1e-14)
    with pytest.raises(ValueError):
        hs_inner(vac, build_state(Fock(0), 41))


def test_thermal_nbar_round_trip():
    for nbar in (0.0, 0.1, 1.0, 7.3, 250.0):
        assert Thermal.from_nbar(nbar).nbar == pytest.approx(nbar, rel=1e-14, abs=1e-14)


@pytest.mark.parametrize(
    "spec",
    [
        Fock(4),
        Coherent(0.1 - 2j),
        Thermal(0.25),
        DisplacedThermal(0.3, 1 + 1j),
        SqueezedVacuum(2.0),
        CoherentPhase(0.3 + 0.4j),
        Gaussian(GaussianParams(1.0, 0.8, 0.1, 0.2, 0.3)),
    ],
)
def test_state_dict_round_trip(spec):
    assert state_from_dict(state_to_dict(spec)) == spec


def test_unknown_family():
    with pytest.raises(ValueError):
        state_from_dict({"family": "cat"})
