"""Command-line interface: ``spinphonon {coupling,transfer,sweep}``.

Each subcommand loads a config (or the built-in defaults), runs the
experiment, and writes one CSV.  Exit codes: 0 success, 2 configuration
error, 3 numerical/integration error.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace

from . import __version__
from .config import load_config
from .csvio import write_table
from .errors import ConfigError, IntegrationError, NumericalError, QuadratureError
from .experiments import (
    CouplingCurveSpec,
    SweepSpec,
    TransferSpec,
    default_sweep_spec,
    default_transfer_spec,
    run_coupling_curve,
    run_error_sweep,
    run_state_transfer,
)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERICS = 3

_EXPECTED_KIND = {"transfer": TransferSpec, "sweep": SweepSpec, "coupling": CouplingCurveSpec}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spinphonon",
        description="Spin-phonon coupling curves and open-system state-transfer runs",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", help="YAML config file (defaults used if omitted)")
        p.add_argument("--out", help="output CSV path (default: <command>.csv)")
        p.add_argument("--quiet", action="store_true", help="suppress the summary line")

    p_coupling = sub.add_parser("coupling", help="coupling strength vs effective dot center")
    common(p_coupling)

    for name, text in (("transfer", "one state-transfer run"),
                       ("sweep", "transfer error vs one dissipation parameter")):
        p = sub.add_parser(name, help=text)
        common(p)
        p.add_argument("--fock-levels", type=int, help="phonon levels kept (N+1)")
        p.add_argument("--dt", type=float, help="integrator step override, seconds")
        p.add_argument("--model", choices=("jc", "full"),
                       help="interaction-picture (jc) or lab-frame (full) Hamiltonian")
    return parser


def _load_spec(args):
    if args.config is not None:
        spec = load_config(args.config)
        expected = _EXPECTED_KIND[args.command]
        if not isinstance(spec, expected):
            raise ConfigError(
                f"{args.config} holds a {type(spec).__name__}, but the "
                f"'{args.command}' command needs a {expected.__name__}"
            )
    elif args.command == "transfer":
        spec = default_transfer_spec()
    elif args.command == "sweep":
        raise ConfigError("the sweep command needs a config choosing the swept parameter")
    else:
        raise ConfigError("the coupling command needs a config with the device geometry")
    return _apply_overrides(spec, args)


def _apply_overrides(spec, args):
    over = {}
    if getattr(args, "fock_levels", None) is not None:
        over["fock_levels"] = args.fock_levels
    if getattr(args, "dt", None) is not None:
        over["dt"] = args.dt
    if getattr(args, "model", None) is not None:
        over["model"] = args.model
    if not over:
        return spec
    try:
        if isinstance(spec, TransferSpec):
            return replace(spec, **over)
        if isinstance(spec, SweepSpec):
            return replace(spec, base=replace(spec.base, **over))
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    raise ConfigError(f"--{'/--'.join(over)} do not apply to the coupling command")


def _transfer_provenance(res):
    s = res.spec
    return [
        "spinphonon transfer",
        f"omega_r_rad_s={s.omega_r!r} g_rad_s={s.g!r} gamma_r_rad_s={s.gamma_r!r} "
        f"gamma_s_rad_s={s.gamma_s!r} temperature_K={s.temperature!r}",
        f"model={s.model} fock_levels={s.fock_levels} dt_s={res.dt!r} "
        f"n_steps={res.n_steps} backend={res.backend}",
        f"final_fidelity={res.fidelity!r}",
    ]


def _run_transfer(spec, out_path, quiet):
    res = run_state_transfer(spec)
    rows = [
        (t * 1e6, p10, p01, c.real, c.imag)
        for t, p10, p01, c in zip(res.times, res.p10, res.p01, res.coherence)
    ]
    write_table(out_path, ["t_us", "p10", "p01", "re_c", "im_c"], rows,
                _transfer_provenance(res))
    if not quiet:
        print(f"transfer: F = {res.fidelity:.6f} after {res.times[-1] * 1e6:.4f} us "
              f"({res.n_steps} steps, {res.backend} backend) -> {out_path}")
    return EXIT_OK


def _run_sweep(spec, out_path, quiet):
    res = run_error_sweep(spec)
    values = res.values
    if spec.swept_parameter == "temperature":
        provenance_unit = "K"
    else:
        provenance_unit = "rad/s"
    provenance = [
        "spinphonon sweep",
        f"swept_parameter={spec.swept_parameter} (values in {provenance_unit})",
        f"base: omega_r_rad_s={spec.base.omega_r!r} g_rad_s={spec.base.g!r} "
        f"gamma_r_rad_s={spec.base.gamma_r!r} gamma_s_rad_s={spec.base.gamma_s!r} "
        f"temperature_K={spec.base.temperature!r}",
        f"model={spec.base.model} fock_levels={spec.base.fock_levels} dt_s={res.dt!r} "
        f"n_steps={res.n_steps} backend={res.backend}",
    ]
    for idx, message in res.failures:
        provenance.append(f"FAILED point {idx} (value {values[idx]!r}): {message}")
    rows = list(zip(values, res.errors))
    write_table(out_path, ["param_value", "error"], rows, provenance)
    if not quiet:
        note = f", {len(res.failures)} failed" if res.failures else ""
        print(f"sweep over {spec.swept_parameter}: {len(values)} points{note} -> {out_path}")
    if res.failures and len(res.failures) == len(values):
        raise IntegrationError("every sweep point failed", step_index=-1)
    return EXIT_OK


def _run_coupling(spec, out_path, quiet):
    res = run_coupling_curve(spec)
    l = spec.params.beam.length_l
    provenance = [
        "spinphonon coupling (g reported as plain frequency g/h)",
        f"length_m={l!r} u0_m={spec.params.beam.u0!r} beta0={spec.params.beam.beta0!r}",
        f"delta_so_eV={spec.params.delta_so!r} alpha_per_m={spec.params.dot.alpha!r}",
        f"max_abs_g_MHz={res.max_abs_g_mhz!r} at zc_over_l={res.argmax_center / l!r}",
    ]
    rows = [(c / l, g) for c, g in zip(res.centers, res.g_mhz)]
    write_table(out_path, ["zc_over_l", "g_MHz"], rows, provenance)
    if not quiet:
        print(f"coupling: max |g| = {res.max_abs_g_mhz:.4f} MHz at "
              f"z'_c/l = {res.argmax_center / l:.4f} -> {out_path}")
    return EXIT_OK


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    out_path = args.out or f"{args.command}.csv"
    try:
        spec = _load_spec(args)
        if args.command == "transfer":
            return _run_transfer(spec, out_path, args.quiet)
        if args.command == "sweep":
            return _run_sweep(spec, out_path, args.quiet)
        return _run_coupling(spec, out_path, args.quiet)
    except (ConfigError, FileNotFoundError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (IntegrationError, NumericalError, QuadratureError) as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return EXIT_NUMERICS


if __name__ == "__main__":
    sys.exit(main())
