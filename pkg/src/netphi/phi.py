"""Conditional covariances, Gaussian entropies, and averaged integrated
information for the atomic partition (one node per part).

All information quantities are in nats. For a stationary model with
covariance S and effective weights W, conditioning the initial state on the
final one leaves S - S W^T S^{-1} W S for the whole system, and
S_kk (1 - W_kk^2) for each single-node part.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import lyapunov
from .errors import CriticalityError, DegeneracyError, NetphiError
from .netmodel import NetworkModel

PD_TOL = 1e-10


@dataclass(frozen=True)
class ConditionalCovariance:
    """Conditional covariance of the whole system and its single-node parts."""

    whole: np.ndarray
    parts: np.ndarray


@dataclass(frozen=True)
class PhiResult:
    phi_nats: float
    g: float
    logdet_whole: float
    logdet_parts: float


def _logdet_pd(M: np.ndarray) -> float:
    """Log-determinant of a symmetric PD matrix.

    Cholesky first; on failure fall back to an eigenvalue sum, rejecting
    eigenvalues below -PD_TOL relative to the largest.
    """
    try:
        L = np.linalg.cholesky(M)
        return 2.0 * float(np.sum(np.log(np.diag(L))))
    except np.linalg.LinAlgError:
        pass
    ev = np.linalg.eigvalsh(M)
    scale = max(float(ev[-1]), 1.0)
    if ev[0] < -PD_TOL * scale:
        raise DegeneracyError(
            f"matrix lost positive definiteness (min eigenvalue {ev[0]:.3e})"
        )
    if np.any(ev <= 0.0):
        raise DegeneracyError("matrix is numerically singular")
    return float(np.sum(np.log(ev)))


def conditional_covariance_whole(model: NetworkModel, sigma: np.ndarray) -> np.ndarray:
    """S - S W^T S^{-1} W S, symmetrized."""
    W = model.effective_weights
    try:
        X = np.linalg.solve(sigma, W @ sigma)
    except np.linalg.LinAlgError as exc:
        raise CriticalityError("stationary covariance is singular") from exc
    whole = sigma - sigma @ W.T @ X
    whole = 0.5 * (whole + whole.T)
    ev_min = float(np.min(np.linalg.eigvalsh(whole)))
    if ev_min < -PD_TOL * max(float(np.max(np.abs(whole))), 1.0):
        raise DegeneracyError(
            f"conditional covariance not PD (min eigenvalue {ev_min:.3e})"
        )
    return whole


def conditional_covariance_part(model: NetworkModel, sigma: np.ndarray, k: int) -> float:
    """Residual variance of node k after conditioning on its own next state."""
    n = model.n
    if not 0 <= k < n:
        raise NetphiError(f"node index {k} out of range for n={n}")
    a_kk = model.effective_weights[k, k]
    return float(sigma[k, k] * (1.0 - a_kk**2))


def conditional_covariances(model: NetworkModel, sigma: np.ndarray) -> ConditionalCovariance:
    parts = np.array(
        [conditional_covariance_part(model, sigma, k) for k in range(model.n)]
    )
    if np.any(parts <= 0.0):
        raise DegeneracyError("a single-node conditional variance is not positive")
    return ConditionalCovariance(
        whole=conditional_covariance_whole(model, sigma), parts=parts
    )


def conditional_entropy(cond_matrix: np.ndarray, n: int) -> float:
    """Gaussian conditional entropy 0.5 n ln(2 pi e) + 0.5 ln det, in nats."""
    return 0.5 * n * math.log(2.0 * math.pi * math.e) + 0.5 * _logdet_pd(cond_matrix)


def integrated_information(
    model: NetworkModel, sigma: np.ndarray | None = None
) -> PhiResult:
    """Averaged integrated information over the atomic partition, in nats."""
    if sigma is None:
        sigma = lyapunov.solve(model).sigma
    cond = conditional_covariances(model, sigma)
    logdet_parts = float(np.sum(np.log(cond.parts)))
    logdet_whole = _logdet_pd(cond.whole)
    return PhiResult(
        phi_nats=0.5 * (logdet_parts - logdet_whole),
        g=model.coupling,
        logdet_whole=logdet_whole,
        logdet_parts=logdet_parts,
    )


def phi_symmetric_fast(model: NetworkModel) -> PhiResult:
    """Shortcut for symmetric weights, isotropic noise, no self-loops.

    There the whole-system conditional covariance collapses to the noise
    covariance sigma2*I, so phi reduces to 0.5 * sum_k ln(S_kk / sigma2).
    """
    if not model.adjacency.symmetric:
        raise NetphiError("fast path requires a symmetric adjacency matrix")
    if model.noise.isotropic_sigma2 is None:
        raise NetphiError("fast path requires isotropic noise")
    if model.adjacency.has_self_loops:
        raise NetphiError("fast path requires a template without self-loops")
    sigma2 = model.noise.isotropic_sigma2
    sigma = lyapunov.solve_symmetric(model).sigma
    diag = np.diag(sigma)
    logdet_parts = float(np.sum(np.log(diag)))
    logdet_whole = model.n * math.log(sigma2)
    return PhiResult(
        phi_nats=0.5 * (logdet_parts - logdet_whole),
        g=model.coupling,
        logdet_whole=logdet_whole,
        logdet_parts=logdet_parts,
    )
