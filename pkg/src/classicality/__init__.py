"""Classicality and anticlassicality measures for single-mode bosonic states."""

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
    build_state,
    hs_inner,
    photon_distribution,
    purity,
    quadrature_moments,
    state_from_dict,
    state_to_dict,
)
from .gaussian import GaussianParams, gaussian_classicality, gaussian_F, generating_function_F
from .measures import (
    anticlassicality,
    anticlassicality_closed,
    asymptotic_report,
    classicality_closed,
    classicality_fock,
    classicality_numeric,
    fidelity_fn,
    reduced_classicality_alpha_fock,
    reduced_classicality_eta_phase,
)
from .optimize import OptimConfig, maximize_1d, maximize_2d
from .results import MeasureResult, Method

__all__ = [
    "Coherent",
    "CoherentPhase",
    "DisplacedThermal",
    "Fock",
    "FockDensity",
    "Gaussian",
    "GaussianParams",
    "MeasureResult",
    "Method",
    "OptimConfig",
    "SqueezedVacuum",
    "StateSpec",
    "Thermal",
    "TruncationError",
    "anticlassicality",
    "anticlassicality_closed",
    "asymptotic_report",
    "build_state",
    "classicality_closed",
    "classicality_fock",
    "classicality_numeric",
    "fidelity_fn",
    "gaussian_F",
    "gaussian_classicality",
    "generating_function_F",
    "hs_inner",
    "maximize_1d",
    "maximize_2d",
    "photon_distribution",
    "purity",
    "quadrature_moments",
    "reduced_classicality_alpha_fock",
    "reduced_classicality_eta_phase",
    "state_from_dict",
    "state_to_dict",
]
