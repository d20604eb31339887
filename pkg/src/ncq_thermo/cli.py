"""Command-line front end: ``ncq-thermo <subcommand> [flags]``.

Physics parameters can also come from ``--config FILE``, a flat
``key = value`` file whose keys mirror the long flags (``t-hot = 20``);
flags given on the command line win over the file.

Exit codes: 0 success, 1 computation error, 2 validation error.
"""
import argparse
import sys
from pathlib import Path

from . import cycles, plotting, statmech, sweep, validation
from .errors import ComputationError, ValidationError
from .spectra import SubstanceParams, eigenstate_correction, energy_level

DEFAULTS = {
    "t_hot": 20.0,
    "t_cold": 10.0,
    "omega_high": 2.0,
    "omega_low": 1.0,
    "gamma": 0.0,
    "scaling_mode": cycles.ScalingMode.FIXED_GAMMA_TILDE.value,
    "rel_tol": statmech.DEFAULT_REL_TOL,
    "omega": 1.0,
    "beta": None,
    "temperature": None,
    "n_max": 10,
    "param": sweep.SweptParameter.GAMMA.value,
    "start": 0.01,
    "stop": 0.4,
    "steps": 40,
    "workers": None,
}

_CASTS = {
    "scaling_mode": str,
    "param": str,
    "n_max": int,
    "steps": int,
    "workers": int,
}


def read_config(path):
    """Parse a flat key=value file; '#' starts a comment."""
    values = {}
    for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValidationError(f"{path}:{lineno}: expected key = value")
        key, value = (s.strip() for s in line.split("=", 1))
        key = key.lstrip("-").replace("-", "_").lower()
        if key not in DEFAULTS:
            raise ValidationError(f"{path}:{lineno}: unknown key {key!r}")
        values[key] = value
    return values


def _resolve(args, config):
    """Merge flag values over config-file values over built-in defaults."""
    merged = {}
    for key, default in DEFAULTS.items():
        flag = getattr(args, key, None)
        if flag is not None:
            merged[key] = flag
        elif key in config:
            cast = _CASTS.get(key, float)
            try:
                merged[key] = cast(config[key])
            except ValueError as err:
                raise ValidationError(f"config value for {key!r}: {err}") from err
        else:
            merged[key] = default
    return merged


def _cycle_spec(p):
    return cycles.CycleSpec(
        T_hot=p["t_hot"],
        T_cold=p["t_cold"],
        omega_high=p["omega_high"],
        omega_low=p["omega_low"],
        gamma=p["gamma"],
        scaling_mode=cycles.ScalingMode(p["scaling_mode"]),
    )


def _thermal_state(p):
    if p["beta"] is not None and p["temperature"] is not None:
        raise ValidationError("give either --beta or --temperature, not both")
    if p["beta"] is not None:
        beta = p["beta"]
    elif p["temperature"] is not None:
        if not p["temperature"] > 0:
            raise ValidationError("temperature must be positive")
        beta = 1.0 / p["temperature"]
    else:
        raise ValidationError("one of --beta or --temperature is required")
    return statmech.ThermalState(SubstanceParams(p["omega"], p["gamma"]), beta)


def cmd_levels(p, out):
    params = SubstanceParams(p["omega"], p["gamma"])
    out.write("n,E_n,c_minus4,c_plus4\n")
    for n in range(p["n_max"] + 1):
        corr = eigenstate_correction(params, n)
        out.write(f"{n},{energy_level(params, n):.17g},{corr.c_minus4:.17g},{corr.c_plus4:.17g}\n")


def cmd_partition(p, out):
    state = _thermal_state(p)
    result = statmech.partition_sum(state, p["rel_tol"])
    out.write(f"Z_sum        {result.value:.17g}\n")
    out.write(f"levels_used  {result.levels_used}\n")
    out.write(f"tail_bound   {result.tail_bound:.3e}\n")
    if state.params.gamma > 0:
        out.write(f"Z_closed     {statmech.partition_closed_form(state):.17g}\n")


def cmd_thermo(p, out):
    point = statmech.thermo_point(_thermal_state(p), p["rel_tol"])
    for name in ("Z", "U", "S", "F"):
        out.write(f"{name}  {getattr(point, name):.17g}\n")


def cmd_cycle(p, out, mode):
    result = cycles.run_cycle(mode, _cycle_spec(p), p["rel_tol"])
    for i, q in enumerate(result.Q, 1):
        out.write(f"Q{i}       {q:.17g}\n")
    out.write(f"W_total  {result.W_total:.17g}\n")
    label = "eta" if result.mode is cycles.CycleMode.STIRLING_ENGINE else "COP"
    out.write(f"{label:<8s} {result.merit:.17g}\n")


def cmd_sweep(p, out, args):
    spec = sweep.SweepSpec(
        cycle_mode=cycles.CycleMode(args.mode),
        base=_cycle_spec(p),
        swept_parameter=sweep.SweptParameter(p["param"]),
        start=p["start"],
        stop=p["stop"],
        steps=p["steps"],
        include_ho_baseline=not args.no_baseline,
        rel_tol=p["rel_tol"],
    )
    rows = sweep.run_sweep(spec, workers=p["workers"])
    if args.csv:
        sweep.emit_csv(rows, args.csv)
    else:
        out.write(sweep.csv_bytes(rows).decode("utf-8"))
    if args.svg:
        y_label = "efficiency" if spec.cycle_mode is cycles.CycleMode.STIRLING_ENGINE else "COP"
        config = plotting.PlotConfig(
            title=f"{spec.cycle_mode.value}: T_h={spec.base.T_hot:g}, T_c={spec.base.T_cold:g}",
            x_label=spec.swept_parameter.value,
            y_label=y_label,
        )
        Path(args.svg).write_bytes(plotting.emit_svg(rows, config))


def cmd_validate(p, out):
    reports = validation.run_validation_suite(p["rel_tol"])
    for report in reports:
        out.write(report.line() + "\n")
    failed = sum(not r.passed for r in reports)
    out.write(f"{len(reports) - failed}/{len(reports)} checks passed\n")
    return 1 if failed else 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="ncq-thermo",
        description="Thermodynamic cycles with a non-commutative harmonic oscillator",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="flat key=value file mirroring the long flags")
    common.add_argument("--rel-tol", type=float, help="relative truncation tolerance (default 1e-12)")
    common.add_argument("--gamma", type=float, help="dimensionless NC parameter")

    substance = argparse.ArgumentParser(add_help=False)
    substance.add_argument("--omega", type=float, help="oscillator frequency (default 1)")

    thermal = argparse.ArgumentParser(add_help=False)
    thermal.add_argument("--beta", type=float, help="inverse temperature")
    thermal.add_argument("--temperature", type=float, help="temperature (alternative to --beta)")

    cycle_opts = argparse.ArgumentParser(add_help=False)
    cycle_opts.add_argument("--t-hot", type=float, help="hot bath temperature (default 20)")
    cycle_opts.add_argument("--t-cold", type=float, help="cold bath temperature (default 10)")
    cycle_opts.add_argument("--omega-high", type=float, help="larger stroke frequency (default 2)")
    cycle_opts.add_argument("--omega-low", type=float, help="smaller stroke frequency (default 1)")
    cycle_opts.add_argument("--scaling-mode", choices=[m.value for m in cycles.ScalingMode],
                            help="how gamma follows omega (default fixed-gamma-tilde)")

    sub = parser.add_subparsers(dest="command", required=True)
    levels = sub.add_parser("levels", parents=[common, substance], help="energy levels and eigenstate corrections")
    levels.add_argument("--n-max", type=int, help="highest level to print (default 10)")
    sub.add_parser("partition", parents=[common, substance, thermal], help="partition function")
    sub.add_parser("thermo", parents=[common, substance, thermal], help="Z, U, S, F")
    cycle = sub.add_parser("cycle", parents=[common, cycle_opts], help="evaluate one cycle")
    cycle.add_argument("mode", choices=[m.value for m in cycles.CycleMode])
    sw = sub.add_parser("sweep", parents=[common, cycle_opts], help="sweep one parameter")
    sw.add_argument("--mode", required=True, choices=[m.value for m in cycles.CycleMode])
    sw.add_argument("--param", choices=[s.value for s in sweep.SweptParameter],
                    help="parameter to sweep (default gamma)")
    sw.add_argument("--start", type=float)
    sw.add_argument("--stop", type=float)
    sw.add_argument("--steps", type=int)
    sw.add_argument("--workers", type=int, help="process count (default: $NCQ_THREADS or 1)")
    sw.add_argument("--no-baseline", action="store_true", help="skip the gamma=0 reference column")
    sw.add_argument("--csv", help="write CSV here instead of stdout")
    sw.add_argument("--svg", help="also write an SVG plot here")
    sub.add_parser("validate", parents=[common], help="run the built-in oracle checks")
    return parser


def main(argv=None, out=None):
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = read_config(args.config) if args.config else {}
        p = _resolve(args, config)
        if args.command == "levels":
            cmd_levels(p, out)
        elif args.command == "partition":
            cmd_partition(p, out)
        elif args.command == "thermo":
            cmd_thermo(p, out)
        elif args.command == "cycle":
            cmd_cycle(p, out, args.mode)
        elif args.command == "sweep":
            cmd_sweep(p, out, args)
        elif args.command == "validate":
            return cmd_validate(p, out)
    except ValidationError as err:
        print(f"ncq-thermo: error: {err}", file=sys.stderr)
        return 2
    except (ComputationError, OSError) as err:
        print(f"ncq-thermo: {type(err).__name__}: {err}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
