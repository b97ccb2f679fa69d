"""Matplotlib rendering of sweep and mode-profile data to image files."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt


def plot_sweep(rows, path, label=None):
    """Phi profile over coupling; rows are cli.SweepRow records."""
    g = [r.g for r in rows if r.stable]
    phi = [r.phi_nats for r in rows if r.stable]
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(g, phi, marker=".", lw=1.2, label=label)
    ax.set_xlabel("coupling g")
    ax.set_ylabel(r"$\langle\Phi\rangle$ [nats]")
    ax.set_title("Integrated information vs coupling")
    if label:
        ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def plot_modes(profiles, path):
    """Covariance eigenvalue trajectories over coupling (one line per mode)."""
    g = [p.g for p in profiles]
    n = len(profiles[0].covariance_eigenvalues)
    fig, ax = plt.subplots(figsize=(6, 4))
    for i in range(n):
        ax.plot(g, [p.covariance_eigenvalues[i] for p in profiles], lw=1.2)
    ax.set_xlabel("coupling g")
    ax.set_ylabel("covariance eigenvalue")
    ax.set_yscale("log")
    ax.set_title("Covariance eigenmodes vs coupling")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
