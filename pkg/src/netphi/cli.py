"""Command-line driver: sweeps, pole/spectrum reports, closed forms, and
simulation, emitting CSV/JSON plot data with optional rendered figures."""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import analytic, lyapunov, phi as phi_mod, simulate as sim_mod, spectral
from .errors import (
    ConfigError,
    CriticalityError,
    DegeneracyError,
    InstabilityError,
    NetphiError,
    NetworkFormatError,
    ReconstructionError,
)
from .netmodel import (
    AdjacencyMatrix,
    NetworkModel,
    NoiseCovariance,
    load_network,
    paper_network,
)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3
EXIT_IO = 4

SWEEP_HEADER = "g,phi_nats,stable,spectral_radius,leading_cov_eig,dominance_ratio"


def _fmt(x) -> str:
    return f"{x:.12g}"


@dataclass(frozen=True)
class SweepConfig:
    network: str
    g_min: float = 0.0
    g_max: float = 1.0
    steps: int = 50
    stop_at_fraction_of_critical: float = 0.999
    noise_sigma2: float = 1.0
    output: str = "csv"
    seed: int | None = None

    def __post_init__(self):
        if not 0.0 <= self.g_min < self.g_max:
            raise ConfigError(f"need 0 <= g_min < g_max, got [{self.g_min}, {self.g_max}]")
        if self.steps < 2:
            raise ConfigError(f"steps must be >= 2, got {self.steps}")
        if not 0.0 < self.stop_at_fraction_of_critical <= 1.0:
            raise ConfigError("stop-at-fraction-of-critical must be in (0, 1]")
        if self.noise_sigma2 <= 0.0:
            raise ConfigError("noise variance must be positive")
        if self.output not in ("csv", "json"):
            raise ConfigError(f"unknown output format {self.output!r}")


@dataclass(frozen=True)
class SweepRow:
    g: float
    phi_nats: float | None
    stable: bool
    spectral_radius: float
    leading_cov_eig: float | None
    dominance_ratio: float | None


def resolve_template(spec: str) -> AdjacencyMatrix:
    """Network id 1..6 or a path to a network file."""
    if spec.isdigit():
        return paper_network(int(spec))
    return load_network(spec).adjacency


def _model(template: AdjacencyMatrix, g: float, sigma2: float) -> NetworkModel:
    return NetworkModel(template, g, NoiseCovariance.isotropic(template.n, sigma2))


def run_sweep(config: SweepConfig) -> list[SweepRow]:
    template = resolve_template(config.network)
    g_star = spectral.first_critical(template)
    g_cap = config.stop_at_fraction_of_critical * g_star
    grid = [g for g in np.linspace(config.g_min, config.g_max, config.steps) if g <= g_cap]
    rows = []
    for g in grid:
        model = _model(template, float(g), config.noise_sigma2)
        stable, rho = lyapunov.is_stable(model)
        if not stable:
            rows.append(SweepRow(float(g), None, False, rho, None, None))
            continue
        modes = spectral.covariance_modes(model)
        if model.noise.isotropic_sigma2 is not None and not model.adjacency.has_self_loops:
            result = phi_mod.phi_symmetric_fast(model)
        else:
            result = phi_mod.integrated_information(model)
        rows.append(
            SweepRow(
                g=float(g),
                phi_nats=result.phi_nats,
                stable=True,
                spectral_radius=rho,
                leading_cov_eig=float(modes.covariance_eigenvalues[0]),
                dominance_ratio=modes.dominance_ratio,
            )
        )
    return rows


def report_poles(network: str):
    """Pairs of (spectral prediction, analytic denominator root) plus discrepancy."""
    template = resolve_template(network)
    try:
        pred = spectral.critical_couplings(template)
    except NetphiError:
        pred = np.array([])
    if pred.size == 0:
        return [], 0.0
    f = analytic.phi_rational(template)
    roots = analytic.denominator_poles(f)
    pairs = []
    worst = 0.0
    for i in range(max(len(pred), len(roots))):
        p = float(pred[i]) if i < len(pred) else None
        r = float(roots[i]) if i < len(roots) else None
        if p is not None and r is not None:
            worst = max(worst, abs(p - r) / abs(p))
        pairs.append((p, r))
    return pairs, worst


def _sweep_csv(rows):
    lines = [SWEEP_HEADER]
    for r in rows:
        if r.stable:
            lines.append(
                ",".join(
                    [
                        _fmt(r.g),
                        _fmt(r.phi_nats),
                        "true",
                        _fmt(r.spectral_radius),
                        _fmt(r.leading_cov_eig),
                        _fmt(r.dominance_ratio),
                    ]
                )
            )
        else:
            lines.append(f"{_fmt(r.g)},,false,{_fmt(r.spectral_radius)},,")
    return "\n".join(lines) + "\n"


def _sweep_json(rows):
    return (
        json.dumps(
            [
                {
                    "g": r.g,
                    "phi_nats": r.phi_nats,
                    "stable": r.stable,
                    "spectral_radius": r.spectral_radius,
                    "leading_cov_eig": r.leading_cov_eig,
                    "dominance_ratio": r.dominance_ratio,
                }
                for r in rows
            ],
            indent=2,
        )
        + "\n"
    )


def _emit(text: str, out: str | None):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _cmd_sweep(args):
    config = SweepConfig(
        network=args.network,
        g_min=args.g_min,
        g_max=args.g_max,
        steps=args.steps,
        stop_at_fraction_of_critical=args.stop_at_fraction_of_critical,
        noise_sigma2=args.noise_sigma2,
        output=args.output,
        seed=args.seed,
    )
    rows = run_sweep(config)
    _emit(_sweep_csv(rows) if config.output == "csv" else _sweep_json(rows), args.out)
    if args.plot:
        from . import report

        report.plot_sweep(rows, args.plot, label=f"network {args.network}")


def _cmd_poles(args):
    pairs, worst = report_poles(args.network)
    lines = ["index,spectral_g,analytic_g,max_rel_discrepancy"]
    for i, (p, r) in enumerate(pairs):
        lines.append(
            ",".join(
                [
                    str(i),
                    _fmt(p) if p is not None else "",
                    _fmt(r) if r is not None else "",
                    _fmt(worst),
                ]
            )
        )
    _emit("\n".join(lines) + "\n", args.out)


def _cmd_spectrum(args):
    template = resolve_template(args.network)
    ev = spectral.adjacency_spectrum(template)
    lines = ["index,eigenvalue"]
    for i, v in enumerate(ev):
        if np.iscomplexobj(ev) and abs(v.imag) > 1e-12:
            lines.append(f"{i},{_fmt(v.real)}{v.imag:+.12g}j")
        else:
            lines.append(f"{i},{_fmt(float(np.real(v)))}")
    _emit("\n".join(lines) + "\n", args.out)


def _cmd_closed_form(args):
    template = resolve_template(args.network)
    f = analytic.phi_rational(template, Fraction(args.noise_sigma2).limit_denominator(10**12))
    _emit(f.to_json() + "\n", args.out)


def _cmd_modes(args):
    template = resolve_template(args.network)
    g_star = spectral.first_critical(template)
    g_max = args.g_max if args.g_max is not None else 0.999 * g_star
    if not 0.0 <= args.g_min < g_max:
        raise ConfigError(f"need 0 <= g_min < g_max, got [{args.g_min}, {g_max}]")
    grid = np.linspace(args.g_min, g_max, args.steps)
    model = _model(template, 0.0, args.noise_sigma2)
    profiles = spectral.dominance_curve(model, grid)
    n = template.n
    lines = ["g," + ",".join(f"cov_eig_{i}" for i in range(n)) + ",dominance_ratio"]
    for p in profiles:
        lines.append(
            ",".join(
                [_fmt(p.g)]
                + [_fmt(float(v)) for v in p.covariance_eigenvalues]
                + [_fmt(p.dominance_ratio)]
            )
        )
    _emit("\n".join(lines) + "\n", args.out)
    if args.plot:
        from . import report

        report.plot_modes(profiles, args.plot)


def _cmd_simulate(args):
    template = resolve_template(args.network)
    model = _model(template, args.g, args.noise_sigma2)
    traj = sim_mod.sample_trajectory(model, args.steps, args.seed, burn_in=args.burn_in)
    if args.dump:
        lines = ["t," + ",".join(f"x_{i}" for i in range(traj.n))]
        for t, row in enumerate(traj.series):
            lines.append(",".join([str(t)] + [_fmt(v) for v in row]))
        Path(args.dump).write_text("\n".join(lines) + "\n")
    S = sim_mod.empirical_covariance(traj)
    result = sim_mod.empirical_phi(traj, model)
    summary = {
        "g": args.g,
        "steps": args.steps,
        "seed": args.seed,
        "burn_in": traj.burn_in,
        "empirical_phi_nats": result.phi_nats,
        "empirical_cov_leading_eig": float(np.max(np.linalg.eigvalsh(S))),
        "empirical_cov_diag": [float(x) for x in np.diag(S)],
        "rng": traj.rng_metadata,
    }
    _emit(json.dumps(summary, indent=2) + "\n", args.out)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="netphi",
        description="Integrated information of Gaussian linear networks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, noise=True):
        p.add_argument("--network", required=True, help="paper network id 1..6 or file path")
        p.add_argument("--out", help="write output to this path instead of stdout")
        if noise:
            p.add_argument("--noise-sigma2", type=float, default=1.0)

    p = sub.add_parser("sweep", help="phi over a coupling grid")
    add_common(p)
    p.add_argument("--g-min", type=float, default=0.0)
    p.add_argument("--g-max", type=float, default=1.0)
    p.add_argument("--steps", type=int, default=50)
    p.add_argument("--stop-at-fraction-of-critical", type=float, default=0.999)
    p.add_argument("--output", choices=("csv", "json"), default="csv")
    p.add_argument("--seed", type=int)
    p.add_argument("--plot", help="also render the profile to this image path")
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("poles", help="spectral vs closed-form pole positions")
    add_common(p, noise=False)
    p.set_defaults(func=_cmd_poles)

    p = sub.add_parser("spectrum", help="adjacency eigenvalues of the unit template")
    add_common(p, noise=False)
    p.set_defaults(func=_cmd_spectrum)

    p = sub.add_parser("closed-form", help="exact rational closed form as JSON")
    add_common(p)
    p.set_defaults(func=_cmd_closed_form)

    p = sub.add_parser("modes", help="covariance eigenvalue profiles over coupling")
    add_common(p)
    p.add_argument("--g-min", type=float, default=0.0)
    p.add_argument("--g-max", type=float, default=None)
    p.add_argument("--steps", type=int, default=50)
    p.add_argument("--plot", help="also render the mode profiles to this image path")
    p.set_defaults(func=_cmd_modes)

    p = sub.add_parser("simulate", help="Monte Carlo trajectory and empirical phi")
    add_common(p)
    p.add_argument("--g", type=float, required=True)
    p.add_argument("--steps", type=int, default=100000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--burn-in", type=int, default=None)
    p.add_argument("--dump", help="write the trajectory as CSV to this path")
    p.set_defaults(func=_cmd_simulate)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code not in (0, None) else EXIT_OK
    try:
        args.func(args)
    except (ConfigError,) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (InstabilityError, CriticalityError, DegeneracyError, ReconstructionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except (NetworkFormatError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except NetphiError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
