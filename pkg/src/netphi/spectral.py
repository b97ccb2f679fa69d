"""Adjacency and covariance spectra, critical couplings, mode dominance.

Critical couplings are the reciprocals 1/|mu| of the nonzero template
eigenvalues: scaling the template by g puts an eigenvalue on the unit
circle exactly at those g, where the stationary covariance diverges.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import lyapunov
from .errors import InstabilityError, NetphiError
from .netmodel import AdjacencyMatrix, NetworkModel

POLE_DEDUP_RTOL = 1e-9


@dataclass(frozen=True)
class SpectralReport:
    adjacency_eigenvalues: np.ndarray
    critical_couplings: np.ndarray
    first_critical: float


@dataclass(frozen=True)
class ModeProfile:
    g: float
    covariance_eigenvalues: np.ndarray
    dominance_ratio: float


def adjacency_spectrum(template: AdjacencyMatrix) -> np.ndarray:
    """Eigenvalues sorted by magnitude descending, ties by signed value.

    Symmetric templates give exact real spectra; general templates report
    complex eigenvalues under the same magnitude ordering.
    """
    if template.symmetric:
        ev = np.linalg.eigvalsh(template.weights)
        order = np.lexsort((-ev, -np.abs(ev)))
    else:
        ev = np.linalg.eigvals(template.weights)
        order = np.lexsort((-ev.real, -np.abs(ev)))
    return ev[order]


def critical_couplings(template: AdjacencyMatrix) -> np.ndarray:
    """Distinct values 1/|mu| over nonzero eigenvalues, ascending."""
    mags = np.abs(adjacency_spectrum(template))
    mags = mags[mags > 0.0]
    if mags.size == 0:
        raise NetphiError("all-zero spectrum has no critical coupling")
    crit = np.sort(1.0 / mags)
    out = [crit[0]]
    for c in crit[1:]:
        if c > out[-1] * (1.0 + POLE_DEDUP_RTOL):
            out.append(c)
    return np.array(out)


def first_critical(template: AdjacencyMatrix) -> float:
    return float(critical_couplings(template)[0])


def spectral_report(template: AdjacencyMatrix) -> SpectralReport:
    crit = critical_couplings(template)
    return SpectralReport(
        adjacency_eigenvalues=adjacency_spectrum(template),
        critical_couplings=crit,
        first_critical=float(crit[0]),
    )


def covariance_modes(model: NetworkModel) -> ModeProfile:
    """Eigenvalues of the stationary covariance, descending, plus dominance.

    For symmetric templates with isotropic noise sigma2 these equal
    sigma2 / (1 - (g*mu_i)^2) over the template eigenvalues mu_i.
    """
    sigma = lyapunov.solve(model).sigma
    ev = np.sort(np.linalg.eigvalsh(sigma))[::-1]
    dominance = float(ev[0] / ev[1]) if ev.size > 1 else 1.0
    return ModeProfile(
        g=model.coupling, covariance_eigenvalues=ev, dominance_ratio=dominance
    )


def dominance_curve(model: NetworkModel, g_grid) -> list[ModeProfile]:
    """Mode profiles over an ascending coupling grid; all points must be stable."""
    g_star = first_critical(model.adjacency)
    profiles = []
    for g in sorted(float(g) for g in g_grid):
        sub = model.with_coupling(g)
        stable, rho = lyapunov.is_stable(sub)
        if not stable:
            raise InstabilityError(
                rho, f"grid point g={g:.6g} is at or beyond the critical coupling {g_star:.6g}"
            )
        profiles.append(covariance_modes(sub))
    return profiles
