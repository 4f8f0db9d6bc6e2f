"""Reference values of the measures, each recomputed by the closed form and
(where one exists) by the truncated Fock-space route."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from fractions import Fraction

from .fock import (
    Coherent,
    CoherentPhase,
    Fock,
    Gaussian,
    SqueezedVacuum,
    Thermal,
    build_state,
    default_dim,
    hs_inner,
    purity,
    spec_purity,
)
from .gaussian import GaussianParams, gaussian_classicality
from .measures import (
    anticlassicality,
    anticlassicality_closed,
    classicality_fock,
    classicality_numeric,
    fidelity_fn,
    reduced_classicality_alpha_fock,
    reduced_classicality_eta_phase,
)
from .optimize import maximize_1d

__all__ = ["GoldenRow", "golden_rows", "CLOSED_TOL", "NUMERIC_TOL", "MIN_NUMERIC_DIM", "GAUSSIAN_GRID"]

CLOSED_TOL = 1e-10
NUMERIC_TOL = 1e-6
MIN_NUMERIC_DIM = 64

GAUSSIAN_MUS = (0.2, 0.5, 0.9, 1.0)
GAUSSIAN_MUTS = (1.0, 1.5, 3.0, 10.0)
GAUSSIAN_GRID = tuple((mu, muT) for mu in GAUSSIAN_MUS for muT in GAUSSIAN_MUTS)
# Orientation of the covariance ellipse; any value works, a generic one
# exercises the rotation in the Fock construction.
GAUSSIAN_ANGLE = 0.3


@dataclass
class GoldenRow:
    name: str
    reference: float
    closed: float
    numeric: float | None = None
    closed_tol: float = CLOSED_TOL
    numeric_tol: float = NUMERIC_TOL
    # Also require the closed value itself to be strictly positive.
    positive: bool = False

    @property
    def closed_diff(self) -> float:
        return abs(self.closed - self.reference)

    @property
    def numeric_diff(self) -> float | None:
        return None if self.numeric is None else abs(self.numeric - self.reference)

    @property
    def passed(self) -> bool:
        ok = self.closed_diff <= self.closed_tol and (self.closed > 0 or not self.positive)
        if self.numeric is not None:
            ok = ok and self.numeric_diff <= self.numeric_tol
        return ok

    def to_dict(self) -> dict:
        out = asdict(self)
        out.update(closed_diff=self.closed_diff, numeric_diff=self.numeric_diff, passed=self.passed)
        return out


def numeric_state(spec):
    """Fock density with at least ``MIN_NUMERIC_DIM`` levels and tail <= 1e-10."""
    auto = build_state(spec)
    if auto.dim >= MIN_NUMERIC_DIM:
        return auto
    return build_state(spec, max(MIN_NUMERIC_DIM, default_dim(spec.nbar)), tail_tol=1e-10)


def _fock_rows():
    rows = []
    for n in range(1, 7):
        reference = math.sqrt(Fraction(n**n, (n + 1) ** (n + 1)))
        closed = classicality_fock(n)
        num = classicality_numeric(numeric_state(Fock(n)))
        rows.append(GoldenRow(f"C_fock_{n}", reference, closed.value, num.value))
        rows.append(GoldenRow(f"eta_{n}", math.sqrt(n / (n + 1)), closed.argmax_eta, num.argmax_eta))
        if n == 1:
            rows.insert(0, GoldenRow("C_eta_fock_1", 0.5, closed.value, num.value))
    rho1 = numeric_state(Fock(1))
    best = maximize_1d(lambda r: hs_inner(rho1, build_state(Coherent(math.sqrt(r)), rho1.dim)), (0.0, 4.0))
    rows.insert(1, GoldenRow("C_alpha_fock_1", math.exp(-1.0), reduced_classicality_alpha_fock(1).value, best.value))
    return rows


def _purity_rows():
    rows = []
    for eta in (1.0 / 3.0, 0.5, 0.9):
        spec = Thermal(eta)
        rows.append(GoldenRow(f"thermal_purity_eta_{eta:.4g}", (1 - eta) / (1 + eta), spec_purity(spec), purity(numeric_state(spec))))
    return rows


def _normalization_rows():
    rows = []
    for spec, label in (
        (Coherent(1.5), "C_coherent_1.5"),
        (Coherent(1.0 + 1.0j), "C_coherent_1+1j"),
        (Thermal(0.4), "C_thermal_eta_0.4"),
        (Thermal.from_nbar(2.0), "C_thermal_nbar_2"),
    ):
        rows.append(GoldenRow(label, 1.0, 1.0, classicality_numeric(numeric_state(spec)).value))
    return rows


def _gaussian_rows():
    rows = []
    for mu, muT in GAUSSIAN_GRID:
        params = GaussianParams.from_mu_T(mu, muT / mu, angle=GAUSSIAN_ANGLE)
        closed = gaussian_classicality(params)
        num = classicality_numeric(numeric_state(Gaussian(params)), search="eta")
        tag = f"mu_{mu:g}_muT_{muT:g}"
        rows.append(GoldenRow(f"C_gauss_{tag}", math.sqrt(2.0 / (1.0 + muT)), closed.value, num.value))
        rows.append(GoldenRow(f"eta_star_{tag}", (1.0 - mu) / (1.0 + mu), closed.argmax_eta, num.argmax_eta))
    return rows


def _phase_rows():
    rows = []
    for nbar in (0.5, 1.0, 2.0):
        spec = CoherentPhase.from_nbar(nbar)
        num = classicality_numeric(numeric_state(spec), search="eta", alpha=0)
        rows.append(GoldenRow(f"C_eta_phase_nbar_{nbar:g}", (1 + 2 * nbar) ** -0.5, reduced_classicality_eta_phase(spec.eps).value, num.value))
    return rows


def _anticlassicality_rows():
    rows = []
    for family, spec, nbar, reference in (
        ("sqv", SqueezedVacuum(2.0), 2.0, 1.0 / (3.0 * math.sqrt(3.0))),
        ("phase", CoherentPhase.from_nbar(1.0), 1.0, 0.25),
    ):
        num = anticlassicality(numeric_state(spec), include_vacuum=False)
        rows.append(GoldenRow(f"A1_{family}_max", reference, anticlassicality_closed(family, nbar, "A1"), num.value))
        rows.append(GoldenRow(f"A1_{family}_argmax_n", 2.0 if family == "sqv" else 1.0, 2.0 if family == "sqv" else 1.0, float(num.argmax_n), 0.0, 0.0))
        peak = maximize_1d(lambda x: anticlassicality_closed(family, x, "A1"), (0.0, 10.0))
        rows.append(GoldenRow(f"A1_{family}_argmax_nbar", nbar, nbar, peak.x))
    for nbar in (0.5, 1.0, 2.0):
        rho = numeric_state(Thermal.from_nbar(nbar))
        a_expected = 1.0 / ((1 + nbar) * (1 + 2 * nbar))
        a1_expected = nbar / ((1 + nbar) ** 2 * (1 + 2 * nbar))
        rows.append(
            GoldenRow(
                f"Atilde_th_nbar_{nbar:g}",
                a_expected,
                anticlassicality_closed("thermal", nbar, "Atilde"),
                anticlassicality(rho, include_vacuum=True, purity_weighted=True).value,
            )
        )
        rows.append(
            GoldenRow(
                f"Atilde1_th_nbar_{nbar:g}",
                a1_expected,
                anticlassicality_closed("thermal", nbar, "Atilde1"),
                anticlassicality(rho, include_vacuum=False, purity_weighted=True).value,
            )
        )
    return rows


def _global_vs_local_row():
    n = 3
    reference = classicality_fock(n).value - math.exp(-n) * n**n / math.factorial(n)
    closed = fidelity_fn(n, math.sqrt(n / (n + 1)), 0.0) - fidelity_fn(n, 0.0, float(n))
    return GoldenRow("fock3_global_vs_local", reference, closed, closed_tol=1e-8, positive=True)


def golden_rows() -> list[GoldenRow]:
    """Every reference value, in report order."""
    return (
        _fock_rows()
        + _purity_rows()
        + _normalization_rows()
        + _gaussian_rows()
        + _phase_rows()
        + _anticlassicality_rows()
        + [_global_vs_local_row()]
    )
