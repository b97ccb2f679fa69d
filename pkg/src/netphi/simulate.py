"""Monte Carlo sampling of x_{t+1} = W x_t + e_t for empirical cross-checks.

Noise is drawn as L z with L the Cholesky factor of the innovation
covariance and z standard normal from numpy's PCG64 generator (ziggurat
standard-normal algorithm); the RNG identity is pinned in the trajectory
metadata so runs stay bitwise reproducible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import lyapunov, phi as phi_mod
from .errors import DegeneracyError, InstabilityError, NetphiError
from .netmodel import NetworkModel
from .phi import PhiResult

MIN_BURN_IN = 1000


def default_burn_in(spectral_radius: float) -> int:
    """max(1000, 20 / (1 - radius)); mixing slows near criticality."""
    steps = 20.0 / max(1.0 - spectral_radius, 1e-12)
    # back off a hair so float fuzz cannot push an exact ratio past its ceiling
    return max(MIN_BURN_IN, int(math.ceil(steps * (1.0 - 1e-9))))


def derive_seed(base_seed: int, index: int) -> int:
    """Stable per-trajectory seed stream via SeedSequence spawning."""
    return int(np.random.SeedSequence(base_seed).spawn(index + 1)[index].generate_state(1)[0])


@dataclass(frozen=True)
class Trajectory:
    series: np.ndarray  # T x n states
    seed: int
    burn_in: int
    rng_metadata: dict = field(
        default_factory=lambda: {
            "rng": "numpy.random.Generator(PCG64)",
            "standard_normal": "ziggurat",
            "numpy": np.__version__,
        }
    )

    @property
    def steps(self) -> int:
        return self.series.shape[0]

    @property
    def n(self) -> int:
        return self.series.shape[1]


def sample_trajectory(
    model: NetworkModel, steps: int, seed: int, burn_in: int | None = None
) -> Trajectory:
    """Seeded trajectory of the autoregressive process, started at the origin."""
    if steps < 2:
        raise NetphiError(f"need at least 2 steps, got {steps}")
    stable, rho = lyapunov.is_stable(model)
    if not stable:
        raise InstabilityError(rho)
    if burn_in is None:
        burn_in = default_burn_in(rho)
    if steps <= burn_in:
        raise NetphiError(f"steps {steps} must exceed burn-in {burn_in}")
    W = model.effective_weights
    L = np.linalg.cholesky(model.noise.matrix)
    rng = np.random.Generator(np.random.PCG64(seed))
    noise = rng.standard_normal((steps - 1, model.n)) @ L.T
    series = np.empty((steps, model.n))
    series[0] = 0.0
    x = series[0]
    for t in range(1, steps):
        x = W @ x + noise[t - 1]
        series[t] = x
    return Trajectory(series=series, seed=int(seed), burn_in=int(burn_in))


def empirical_covariance(traj: Trajectory) -> np.ndarray:
    """Symmetrized sample covariance over post-burn-in states."""
    kept = traj.series[traj.burn_in :]
    if kept.shape[0] < 10 * traj.n:
        raise NetphiError(
            f"insufficient samples: {kept.shape[0]} post-burn-in states for n={traj.n}"
        )
    kept = kept - kept.mean(axis=0)
    S = kept.T @ kept / kept.shape[0]
    return 0.5 * (S + S.T)


def empirical_lag1_cross_covariance(traj: Trajectory) -> np.ndarray:
    """Estimate of E[x_t x_{t+1}^T] over post-burn-in states."""
    kept = traj.series[traj.burn_in :]
    kept = kept - kept.mean(axis=0)
    return kept[:-1].T @ kept[1:] / (kept.shape[0] - 1)


def empirical_phi(traj: Trajectory, model_template: NetworkModel) -> PhiResult:
    """Plug empirical stationary and lag-1 covariances into the phi formulas.

    The whole-system conditional covariance is built entirely from estimated
    moments; each single-node part keeps only its own self-coupling from the
    template, matching the partitioned dynamics the analytic formulas use.
    """
    S = empirical_covariance(traj)
    C01 = empirical_lag1_cross_covariance(traj)
    if np.min(np.linalg.eigvalsh(S)) <= 0.0:
        raise DegeneracyError("empirical covariance estimate is not PD")
    whole = S - C01 @ np.linalg.solve(S, C01.T)
    whole = 0.5 * (whole + whole.T)
    self_coupling = np.diag(model_template.effective_weights)
    parts = np.diag(S) * (1.0 - self_coupling**2)
    if np.any(parts <= 0.0):
        raise DegeneracyError("an empirical single-node conditional variance is not positive")
    logdet_parts = float(np.sum(np.log(parts)))
    logdet_whole = phi_mod._logdet_pd(whole)
    return PhiResult(
        phi_nats=0.5 * (logdet_parts - logdet_whole),
        g=math.nan,
        logdet_whole=logdet_whole,
        logdet_parts=logdet_parts,
    )
