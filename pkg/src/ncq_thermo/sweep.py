"""Parameter sweeps over the cycle inputs and their CSV serialisation."""
import csv
import dataclasses
import enum
import io
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .cycles import CycleMode, CycleSpec, run_cycle
from .errors import DegenerateCycleError, NotRefrigeratorError, ValidationError
from .statmech import DEFAULT_REL_TOL

CSV_HEADER = ["swept_value", "merit_nho", "merit_ho", "W_total", "Q1", "Q2", "Q3", "Q4", "status"]
THREADS_ENV = "NCQ_THREADS"


class SweptParameter(enum.Enum):
    GAMMA = "gamma"
    T_HOT = "T_hot"
    T_COLD = "T_cold"
    OMEGA_HIGH = "omega_high"
    OMEGA_LOW = "omega_low"


class Status(enum.Enum):
    OK = "OK"
    DEGENERATE = "DEGENERATE"
    NOT_REFRIGERATOR = "NOT_REFRIGERATOR"


@dataclass(frozen=True)
class SweepSpec:
    cycle_mode: CycleMode
    base: CycleSpec
    swept_parameter: SweptParameter = SweptParameter.GAMMA
    start: float = 0.0
    stop: float = 0.4
    steps: int = 40
    include_ho_baseline: bool = True
    rel_tol: float = DEFAULT_REL_TOL

    def __post_init__(self):
        object.__setattr__(self, "cycle_mode", CycleMode(self.cycle_mode))
        object.__setattr__(self, "swept_parameter", SweptParameter(self.swept_parameter))
        if not self.start < self.stop:
            raise ValidationError(f"sweep needs start < stop, got {self.start} .. {self.stop}")
        if int(self.steps) != self.steps or self.steps < 2:
            raise ValidationError(f"steps must be an integer >= 2, got {self.steps}")

    def grid(self):
        return np.linspace(self.start, self.stop, int(self.steps))

    def spec_at(self, value):
        return dataclasses.replace(self.base, **{self.swept_parameter.value: float(value)})


@dataclass(frozen=True)
class SweepRow:
    swept_value: float
    merit_nho: float | None
    merit_ho: float | None
    W_total: float | None
    Q: tuple
    status: Status


def _evaluate(mode, spec, rel_tol):
    """(status, merit, W_total, Q) with failures folded into the status."""
    try:
        result = run_cycle(mode, spec, rel_tol)
    except DegenerateCycleError as err:
        return Status.DEGENERATE, None, err.work, err.heats
    except NotRefrigeratorError as err:
        return Status.NOT_REFRIGERATOR, None, err.work, err.heats
    return Status.OK, result.merit, result.W_total, result.Q


def _evaluate_point(args):
    mode, spec, rel_tol, with_baseline = args
    status, merit, work, heats = _evaluate(mode, spec, rel_tol)
    baseline = None
    if with_baseline:
        baseline = _evaluate(mode, dataclasses.replace(spec, gamma=0.0), rel_tol)
    return status, merit, work, heats, baseline


def _worker_count(workers):
    if workers is not None:
        return max(1, int(workers))
    env = os.environ.get(THREADS_ENV)
    if env:
        return max(1, int(env))
    return 1


def run_sweep(spec, workers=None):
    """Evaluate the cycle at every grid point, in ascending swept value.

    ``workers`` > 1 fans points out to a process pool; the default reads
    ``NCQ_THREADS`` and otherwise runs serially. Results do not depend on
    the worker count.
    """
    grid = spec.grid()
    specs = []
    for value in grid:
        try:
            specs.append(spec.spec_at(value))
        except ValidationError as err:
            raise ValidationError(
                f"grid point {spec.swept_parameter.value}={float(value)!r} is invalid: {err}"
            ) from err

    gamma_sweep = spec.swept_parameter is SweptParameter.GAMMA
    per_row_baseline = spec.include_ho_baseline and not gamma_sweep
    tasks = [(spec.cycle_mode, s, spec.rel_tol, per_row_baseline) for s in specs]

    n_workers = _worker_count(workers)
    if n_workers > 1:
        with ProcessPoolExecutor(max_workers=n_workers) as pool:
            outcomes = list(pool.map(_evaluate_point, tasks))
    else:
        outcomes = [_evaluate_point(t) for t in tasks]

    shared_baseline = None
    if spec.include_ho_baseline and gamma_sweep:
        # the HO cycle does not depend on gamma
        shared_baseline = _evaluate(spec.cycle_mode, dataclasses.replace(spec.base, gamma=0.0), spec.rel_tol)

    rows = []
    for value, (status, merit, work, heats, baseline) in zip(grid, outcomes):
        baseline = baseline or shared_baseline
        merit_ho = None
        if status is Status.OK and baseline is not None and baseline[0] is Status.OK:
            merit_ho = baseline[1]
        rows.append(SweepRow(float(value), merit, merit_ho, work, tuple(heats), status))
    return rows


def _fmt(x):
    return "" if x is None else format(float(x), ".17g")


def _parse(cell):
    return None if cell == "" else float(cell)


def csv_bytes(rows):
    if not rows:
        raise ValidationError("no rows to write")
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for row in rows:
        writer.writerow(
            [_fmt(row.swept_value), _fmt(row.merit_nho), _fmt(row.merit_ho), _fmt(row.W_total)]
            + [_fmt(q) for q in row.Q]
            + [row.status.value]
        )
    return buf.getvalue().encode("utf-8")


def emit_csv(rows, destination=None):
    """Serialise rows; also write them to ``destination`` (path or binary file) if given."""
    data = csv_bytes(rows)
    if destination is None:
        return data
    if hasattr(destination, "write"):
        destination.write(data)
        return data
    path = Path(destination)
    try:
        path.write_bytes(data)
    except OSError as err:
        raise OSError(f"cannot write CSV to {path}: {err.strerror or err}") from err
    return data


def parse_csv(data):
    """Inverse of ``csv_bytes``."""
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    reader = csv.reader(io.StringIO(data))
    header = next(reader)
    if header != CSV_HEADER:
        raise ValidationError(f"unexpected CSV header {header}")
    rows = []
    for cells in reader:
        rows.append(SweepRow(
            swept_value=float(cells[0]),
            merit_nho=_parse(cells[1]),
            merit_ho=_parse(cells[2]),
            W_total=_parse(cells[3]),
            Q=tuple(_parse(c) for c in cells[4:8]),
            status=Status(cells[8]),
        ))
    return rows


def read_csv(path):
    return parse_csv(Path(path).read_bytes())
