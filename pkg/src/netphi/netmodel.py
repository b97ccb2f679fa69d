"""Network data types, canonical topology builders, and file loading.

Edge weights in templates are dimensionless unit couplings; the effective
weight matrix of a model is ``coupling * template``.
"""

from __future__ import annotations

import importlib.resources
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import ConfigError, NetworkFormatError

PAPER_NETWORK_IDS = (1, 2, 3, 4, 5, 6)


@dataclass(frozen=True)
class AdjacencyMatrix:
    """Square real weight matrix plus structural flags."""

    weights: np.ndarray
    symmetric: bool = True

    def __post_init__(self):
        W = np.asarray(self.weights, dtype=float)
        if W.ndim != 2 or W.shape[0] != W.shape[1]:
            raise ConfigError(f"adjacency matrix must be square, got shape {W.shape}")
        if not np.all(np.isfinite(W)):
            raise ConfigError("adjacency matrix contains non-finite entries")
        if self.symmetric and not np.array_equal(W, W.T):
            raise NetworkFormatError("symmetric flag set but weights are asymmetric")
        W.setflags(write=False)
        object.__setattr__(self, "weights", W)

    @property
    def n(self) -> int:
        return self.weights.shape[0]

    @property
    def has_self_loops(self) -> bool:
        return bool(np.any(np.diag(self.weights) != 0.0))


@dataclass(frozen=True)
class NoiseCovariance:
    """Positive-definite innovation noise covariance."""

    matrix: np.ndarray
    isotropic_sigma2: float | None = None

    def __post_init__(self):
        M = np.asarray(self.matrix, dtype=float)
        if M.ndim != 2 or M.shape[0] != M.shape[1]:
            raise ConfigError(f"noise covariance must be square, got shape {M.shape}")
        M = 0.5 * (M + M.T)
        if np.min(np.linalg.eigvalsh(M)) <= 0.0:
            raise NetworkFormatError("noise covariance is not positive definite")
        M.setflags(write=False)
        object.__setattr__(self, "matrix", M)

    @classmethod
    def isotropic(cls, n: int, sigma2: float = 1.0) -> "NoiseCovariance":
        if sigma2 <= 0.0:
            raise ConfigError(f"noise variance must be positive, got {sigma2}")
        return cls(sigma2 * np.eye(n), isotropic_sigma2=float(sigma2))

    @property
    def is_diagonal(self) -> bool:
        return bool(np.array_equal(self.matrix, np.diag(np.diag(self.matrix))))

    @property
    def n(self) -> int:
        return self.matrix.shape[0]


@dataclass(frozen=True)
class NetworkModel:
    """Unit template, global coupling, and innovation noise."""

    adjacency: AdjacencyMatrix
    coupling: float
    noise: NoiseCovariance

    def __post_init__(self):
        if self.coupling < 0.0:
            raise ConfigError(f"coupling must be non-negative, got {self.coupling}")
        if self.noise.n != self.adjacency.n:
            raise ConfigError("noise and adjacency dimensions differ")

    @property
    def n(self) -> int:
        return self.adjacency.n

    @property
    def effective_weights(self) -> np.ndarray:
        return self.coupling * self.adjacency.weights

    def with_coupling(self, g: float) -> "NetworkModel":
        return NetworkModel(self.adjacency, g, self.noise)


def build_complete(n: int) -> AdjacencyMatrix:
    """Complete graph K_n with unit weights (spectrum n-1, -1 x (n-1))."""
    if n < 2:
        raise ConfigError(f"complete graph needs n >= 2, got {n}")
    W = np.ones((n, n)) - np.eye(n)
    return AdjacencyMatrix(W)


def build_cycle(n: int) -> AdjacencyMatrix:
    """Ring graph C_n with unit weights (eigenvalues 2cos(2*pi*k/n))."""
    if n < 3:
        raise ConfigError(f"cycle graph needs n >= 3, got {n}")
    W = np.zeros((n, n))
    for i in range(n):
        W[i, (i + 1) % n] = 1.0
        W[(i + 1) % n, i] = 1.0
    return AdjacencyMatrix(W)


def _data_path(network_id: int):
    return importlib.resources.files("netphi").joinpath(f"data/network{network_id}.txt")


def paper_network(network_id: int) -> AdjacencyMatrix:
    """One of the six bundled 10-node templates, ordered densest to sparsest.

    Network 1 is K10 and network 6 is C10; network 3 is the cycle plus its
    antipodal matching; networks 2, 4 and 5 were reconstructed so that their
    unit-coupling spectra reproduce the published eigenvalue tables.
    """
    if network_id not in PAPER_NETWORK_IDS:
        raise ConfigError(f"unknown paper network id {network_id}, expected 1..6")
    model = _parse_network_text(
        _data_path(network_id).read_text(), f"bundled network {network_id}"
    )
    return model.adjacency


def load_network(path: str | Path, coupling: float | None = None) -> NetworkModel:
    """Load a NetworkModel from the text edge-list format.

    Header: ``n <count> symmetric <true|false> noise <sigma2|file> [g <val>]``
    followed by one ``u v w`` line per edge (0-based indices). A ``coupling``
    argument overrides any ``g`` header entry (default 1.0).
    """
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise NetworkFormatError(f"cannot read network file {path}: {exc}") from exc
    return _parse_network_text(text, str(path), coupling=coupling, base_dir=path.parent)


def _parse_network_text(text, origin, coupling=None, base_dir=None):
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise NetworkFormatError(f"{origin}: empty network file")

    tokens = lines[0].split()
    if len(tokens) % 2 != 0:
        raise NetworkFormatError(f"{origin}: malformed header {lines[0]!r}")
    header = dict(zip(tokens[::2], tokens[1::2]))
    if "n" not in header or "noise" not in header:
        raise NetworkFormatError(f"{origin}: header must declare 'n' and 'noise'")

    try:
        n = int(header["n"])
    except ValueError as exc:
        raise NetworkFormatError(f"{origin}: bad node count {header['n']!r}") from exc
    if n < 1:
        raise NetworkFormatError(f"{origin}: node count must be >= 1")
    symmetric = header.get("symmetric", "true").lower() == "true"

    W = np.zeros((n, n))
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 3:
            raise NetworkFormatError(f"{origin}: bad edge line {ln!r}")
        try:
            u, v, w = int(parts[0]), int(parts[1]), float(parts[2])
        except ValueError as exc:
            raise NetworkFormatError(f"{origin}: bad edge line {ln!r}") from exc
        if not (0 <= u < n and 0 <= v < n):
            raise NetworkFormatError(f"{origin}: node index out of range in {ln!r}")
        W[u, v] = w
        if symmetric:
            if W[v, u] not in (0.0, w) and u != v:
                raise NetworkFormatError(
                    f"{origin}: conflicting weights for symmetric edge ({u},{v})"
                )
            W[v, u] = w
    if symmetric and not np.array_equal(W, W.T):
        raise NetworkFormatError(f"{origin}: asymmetric weights under symmetric flag")

    noise_tok = header["noise"]
    try:
        noise = NoiseCovariance.isotropic(n, float(noise_tok))
    except ValueError:
        noise_path = Path(noise_tok)
        if base_dir is not None and not noise_path.is_absolute():
            noise_path = base_dir / noise_path
        try:
            mat = np.loadtxt(noise_path, ndmin=2)
        except OSError as exc:
            raise NetworkFormatError(
                f"{origin}: cannot read noise file {noise_path}: {exc}"
            ) from exc
        noise = NoiseCovariance(mat)

    g = coupling if coupling is not None else float(header.get("g", 1.0))
    return NetworkModel(AdjacencyMatrix(W, symmetric=symmetric), g, noise)
