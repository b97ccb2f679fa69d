"""Integrated information of weighted networks with stationary Gaussian
linear dynamics: stationary covariances, spectra, criticality poles, exact
closed forms, and Monte Carlo cross-validation."""

from .netmodel import (
    AdjacencyMatrix,
    NetworkModel,
    NoiseCovariance,
    build_complete,
    build_cycle,
    load_network,
    paper_network,
)
from .lyapunov import StationaryCovariance, is_stable, solve, solve_general, solve_symmetric
from .phi import PhiResult, integrated_information, phi_symmetric_fast
from .spectral import (
    ModeProfile,
    SpectralReport,
    adjacency_spectrum,
    covariance_modes,
    critical_couplings,
    dominance_curve,
    first_critical,
)
from .analytic import RationalFunction, denominator_poles, evaluate, phi_rational
from .simulate import Trajectory, empirical_covariance, empirical_phi, sample_trajectory

__version__ = "0.1.0"
