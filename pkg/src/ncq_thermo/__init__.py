"""Quantum Stirling and Otto cycles with a non-commutative-space oscillator."""
from .cycles import (
    CycleMode,
    CycleResult,
    CycleSpec,
    ScalingMode,
    effective_gamma,
    otto_refrigerator,
    run_cycle,
    stirling_engine,
    stirling_refrigerator,
)
from .errors import (
    ComputationError,
    DegenerateCycleError,
    DomainError,
    NotRefrigeratorError,
    PartitionDivergenceError,
    ValidationError,
)
from .special import erfc, erfcx
from .spectra import (
    EigenstateCorrection,
    SubstanceParams,
    eigenstate_correction,
    energy_level,
    pochhammer_rising,
    spectrum_coefficients,
)
from .statmech import (
    PartitionResult,
    ThermalState,
    ThermoPoint,
    occupation_probability,
    partition_closed_form,
    partition_sum,
    thermo_point,
)
from .sweep import SweepRow, SweepSpec, SweptParameter, Status, emit_csv, run_sweep
from .plotting import PlotConfig, emit_svg

__version__ = "0.1.0"
