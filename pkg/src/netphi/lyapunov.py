"""Stationary covariance of the linear-Gaussian dynamics x' = W x + e.

The stationary covariance S solves the discrete-time fixed point
S = W S W^T + Q, where Q is the innovation covariance. Symmetric W with
diagonal Q admits the closed form S = (I - W^2)^{-1} Q; the general case
is solved through the Kronecker-vectorized linear system
(I - W (x) W) vec(S) = vec(Q).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import CriticalityError, InstabilityError, NetphiError
from .netmodel import NetworkModel

DEFAULT_EPS_CRIT = 1e-9
RESIDUAL_RTOL = 1e-10


@dataclass(frozen=True)
class StationaryCovariance:
    """Solved stationary covariance with residual diagnostics."""

    sigma: np.ndarray
    residual_norm: float
    method: str

    @property
    def n(self) -> int:
        return self.sigma.shape[0]


def spectral_radius(model: NetworkModel) -> float:
    W = model.effective_weights
    if model.adjacency.symmetric:
        return float(np.max(np.abs(np.linalg.eigvalsh(W)))) if W.size else 0.0
    return float(np.max(np.abs(np.linalg.eigvals(W)))) if W.size else 0.0


def is_stable(model: NetworkModel, eps_crit: float = DEFAULT_EPS_CRIT):
    """Return (stable, spectral_radius); stable means radius < 1 - eps_crit."""
    rho = spectral_radius(model)
    return rho < 1.0 - eps_crit, rho


def residual(model: NetworkModel, sigma: np.ndarray) -> float:
    """Max-abs entry of W S W^T + Q - S for a candidate solution S."""
    W = model.effective_weights
    if sigma.shape != W.shape:
        raise NetphiError(
            f"dimension mismatch: sigma {sigma.shape} vs weights {W.shape}"
        )
    return float(np.max(np.abs(W @ sigma @ W.T + model.noise.matrix - sigma)))


def _finalize(model, sigma, method):
    sigma = 0.5 * (sigma + sigma.T)
    res = residual(model, sigma)
    tol = RESIDUAL_RTOL * (1.0 + float(np.max(np.abs(sigma))))
    if not np.isfinite(res) or res > tol:
        raise CriticalityError(
            f"stationary solve left residual {res:.3e} above tolerance {tol:.3e}"
        )
    return StationaryCovariance(sigma=sigma, residual_norm=res, method=method)


def solve_symmetric(
    model: NetworkModel, eps_crit: float = DEFAULT_EPS_CRIT
) -> StationaryCovariance:
    """Closed-form solve S = (I - W^2)^{-1} Q for symmetric W, diagonal Q."""
    if not model.adjacency.symmetric:
        raise NetphiError("solve_symmetric requires a symmetric adjacency matrix")
    if not model.noise.is_diagonal:
        raise NetphiError("solve_symmetric requires diagonal innovation noise")
    stable, rho = is_stable(model, eps_crit)
    if not stable:
        raise InstabilityError(rho)
    W = model.effective_weights
    sigma = np.linalg.solve(np.eye(model.n) - W @ W, model.noise.matrix)
    return _finalize(model, sigma, "symmetric-closed-form")


def solve_general(
    model: NetworkModel, eps_crit: float = DEFAULT_EPS_CRIT
) -> StationaryCovariance:
    """Kronecker-vectorized solve; accepts any stable W and PD noise."""
    stable, rho = is_stable(model, eps_crit)
    if not stable:
        raise InstabilityError(rho)
    W = model.effective_weights
    n = model.n
    K = np.eye(n * n) - np.kron(W, W)
    try:
        vec = np.linalg.solve(K, model.noise.matrix.reshape(-1))
    except np.linalg.LinAlgError as exc:
        raise CriticalityError(
            "vectorized Lyapunov system is singular (eigenvalue product hit 1)"
        ) from exc
    return _finalize(model, vec.reshape(n, n), "general-linear-solve")


def solve(model: NetworkModel, eps_crit: float = DEFAULT_EPS_CRIT) -> StationaryCovariance:
    """Dispatch to the closed form when its preconditions hold."""
    if model.adjacency.symmetric and model.noise.is_diagonal:
        return solve_symmetric(model, eps_crit)
    return solve_general(model, eps_crit)
