#!/usr/bin/env python
"""Regenerate the gamma sweeps behind the Stirling-fridge, Stirling-engine
and Otto-fridge plots, in both NC scaling modes.

    python scripts/reproduce_figures.py --out figures/ [--workers 4]

Writes one CSV and one SVG per (cycle, scaling mode) and prints the trend of
each merit column.
"""
import argparse
from pathlib import Path

import numpy as np

from ncq_thermo.cycles import CycleMode, CycleSpec, ScalingMode
from ncq_thermo.errors import ValidationError
from ncq_thermo.plotting import PlotConfig, emit_svg
from ncq_thermo.sweep import Status, SweepSpec, SweptParameter, emit_csv, run_sweep

FIGURES = [
    ("stirling_fridge", CycleMode.STIRLING_FRIDGE, "COP"),
    ("stirling_engine", CycleMode.STIRLING_ENGINE, "efficiency"),
    ("otto_fridge", CycleMode.OTTO_FRIDGE, "COP"),
]


def trend(rows):
    merits = np.array([r.merit_nho for r in rows if r.status is Status.OK], dtype=float)
    if merits.size < 2:
        return f"no plottable rows ({sorted({r.status.value for r in rows})})"
    d = np.diff(merits)
    shape = "increasing" if np.all(d > 0) else "decreasing" if np.all(d < 0) else "non-monotone"
    return f"{shape}: {merits[0]:.6f} -> {merits[-1]:.6f} over {merits.size} OK rows"


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--out", default="figures")
    parser.add_argument("--t-hot", type=float, default=20.0)
    parser.add_argument("--t-cold", type=float, default=10.0)
    parser.add_argument("--omega-high", type=float, default=2.0)
    parser.add_argument("--omega-low", type=float, default=1.0)
    parser.add_argument("--start", type=float, default=0.01)
    parser.add_argument("--stop", type=float, default=0.4)
    parser.add_argument("--steps", type=int, default=40)
    parser.add_argument("--workers", type=int, default=None)
    args = parser.parse_args()

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for mode in ScalingMode:
        base = CycleSpec(args.t_hot, args.t_cold, args.omega_high, args.omega_low, 0.0, mode)
        for name, cycle, y_label in FIGURES:
            spec = SweepSpec(cycle, base, SweptParameter.GAMMA, args.start, args.stop, args.steps)
            rows = run_sweep(spec, workers=args.workers)
            stem = out / f"{name}_{mode.value}"
            emit_csv(rows, stem.with_suffix(".csv"))
            try:
                title = f"{cycle.value} ({mode.value}), T_h={args.t_hot:g}, T_c={args.t_cold:g}"
                stem.with_suffix(".svg").write_bytes(emit_svg(rows, PlotConfig(title=title, y_label=y_label)))
            except ValidationError:
                pass  # nothing plottable; the CSV still records the statuses
            print(f"{name:16s} {mode.value:18s} {trend(rows)}")


if __name__ == "__main__":
    main()
