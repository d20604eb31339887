"""Stirling engine, Stirling refrigerator and Otto refrigerator.

Sign convention: a stroke heat is positive when the working substance absorbs
it. ``W_total`` is the plain sum of the four stroke heats and refrigerator
COPs divide by its magnitude.

Stirling corners (engine):      A=(T_hot, w_high)  B=(T_hot, w_low)
                                C=(T_cold, w_low)  D=(T_cold, w_high)
Stirling corners (refrigerator) swap the two temperatures.
"""
import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateCycleError, NotRefrigeratorError, ValidationError
from .spectra import SubstanceParams
from .statmech import (
    DEFAULT_REL_TOL,
    ThermalState,
    boltzmann_weights,
    certified_cutoff,
    thermo_point,
)

# |W| below this fraction of the largest stroke heat counts as zero work
DEGENERACY_FLOOR = 1e-14


class ScalingMode(enum.Enum):
    FIXED_GAMMA = "fixed-gamma"
    FIXED_GAMMA_TILDE = "fixed-gamma-tilde"


class CycleMode(enum.Enum):
    STIRLING_ENGINE = "stirling-engine"
    STIRLING_FRIDGE = "stirling-fridge"
    OTTO_FRIDGE = "otto-fridge"


@dataclass(frozen=True)
class CycleSpec:
    """Bath temperatures, stroke frequencies and the NC parameter.

    ``gamma`` is the dimensionless parameter at ``omega_high``. Equal
    temperatures or equal frequencies are accepted so that degenerate
    cycles can be evaluated and reported; inverted orderings are rejected.
    """

    T_hot: float = 20.0
    T_cold: float = 10.0
    omega_high: float = 2.0
    omega_low: float = 1.0
    gamma: float = 0.0
    scaling_mode: ScalingMode = ScalingMode.FIXED_GAMMA_TILDE

    def __post_init__(self):
        values = (self.T_hot, self.T_cold, self.omega_high, self.omega_low, self.gamma)
        if not all(math.isfinite(v) for v in values):
            raise ValidationError(f"cycle parameters must be finite: {self}")
        if not self.T_cold > 0:
            raise ValidationError(f"T_cold must be positive, got {self.T_cold}")
        if self.T_hot < self.T_cold:
            raise ValidationError(f"T_hot ({self.T_hot}) must not be below T_cold ({self.T_cold})")
        if not self.omega_low > 0:
            raise ValidationError(f"omega_low must be positive, got {self.omega_low}")
        if self.omega_high < self.omega_low:
            raise ValidationError(
                f"omega_high ({self.omega_high}) must not be below omega_low ({self.omega_low})"
            )
        if self.gamma < 0:
            raise ValidationError(f"gamma must be nonnegative, got {self.gamma}")
        if not isinstance(self.scaling_mode, ScalingMode):
            object.__setattr__(self, "scaling_mode", ScalingMode(self.scaling_mode))


@dataclass(frozen=True)
class CornerState:
    T: float
    omega: float
    gamma: float


@dataclass(frozen=True)
class CycleResult:
    Q: tuple
    W_total: float
    merit: float
    mode: CycleMode
    corner_points: tuple
    details: dict = field(default_factory=dict, compare=False)


def effective_gamma(spec, omega):
    """Dimensionless NC parameter at frequency ``omega``.

    FIXED_GAMMA_TILDE holds gamma / omega fixed (the dimensionful deformation
    gamma / (m omega hbar) with m = hbar = 1), anchored at ``omega_high``.
    """
    if spec.scaling_mode is ScalingMode.FIXED_GAMMA:
        return spec.gamma
    return spec.gamma * (omega / spec.omega_high)


def _corner(spec, T, omega):
    return CornerState(T=T, omega=omega, gamma=effective_gamma(spec, omega))


def _state(corner):
    return ThermalState(SubstanceParams(corner.omega, corner.gamma), 1.0 / corner.T)


def stirling_corners(spec, reverse=False):
    """Corners A, B, C, D; ``reverse`` gives the refrigerator ordering."""
    first, second = (spec.T_cold, spec.T_hot) if reverse else (spec.T_hot, spec.T_cold)
    return (
        _corner(spec, first, spec.omega_high),
        _corner(spec, first, spec.omega_low),
        _corner(spec, second, spec.omega_low),
        _corner(spec, second, spec.omega_high),
    )


def isothermal_heat(start, end, T):
    """Heat absorbed on a quasi-static isotherm: dU + T d(ln Z)."""
    return end.U - start.U + T * (end.log_Z - start.log_Z)


def isochoric_heat(start, end):
    return end.U - start.U


def _is_degenerate(work, heats):
    return abs(work) <= DEGENERACY_FLOOR * max(abs(q) for q in heats)


def stirling_engine(spec, rel_tol=DEFAULT_REL_TOL):
    corners = stirling_corners(spec)
    a, b, c, d = (thermo_point(_state(k), rel_tol) for k in corners)
    q_ab = isothermal_heat(a, b, spec.T_hot)
    q_bc = isochoric_heat(b, c)
    q_cd = isothermal_heat(c, d, spec.T_cold)
    q_da = isochoric_heat(d, a)
    heats = (q_ab, q_bc, q_cd, q_da)
    work = q_ab + q_bc + q_cd + q_da
    heat_in = q_da + q_ab
    if heat_in == 0.0:
        raise DegenerateCycleError("no heat input (Q_DA + Q_AB = 0)", heats, work)
    eta = 1.0 + (q_bc + q_cd) / heat_in
    return CycleResult(
        Q=heats,
        W_total=work,
        merit=eta,
        mode=CycleMode.STIRLING_ENGINE,
        corner_points=corners,
        details={"thermo": (a, b, c, d)},
    )


def stirling_refrigerator(spec, rel_tol=DEFAULT_REL_TOL):
    corners = stirling_corners(spec, reverse=True)
    a, b, c, d = (thermo_point(_state(k), rel_tol) for k in corners)
    q_ab = spec.T_cold * (b.S - a.S)
    q_bc = c.U - b.U
    q_cd = spec.T_hot * (d.S - c.S)
    q_da = a.U - d.U
    heats = (q_ab, q_bc, q_cd, q_da)
    work = q_ab + q_bc + q_cd + q_da
    if _is_degenerate(work, heats):
        raise DegenerateCycleError("zero net work; COP undefined", heats, work)
    return CycleResult(
        Q=heats,
        W_total=work,
        merit=(q_ab + q_bc) / abs(work),
        mode=CycleMode.STIRLING_FRIDGE,
        corner_points=corners,
        details={"thermo": (a, b, c, d)},
    )


def otto_refrigerator(spec, rel_tol=DEFAULT_REL_TOL):
    """Otto refrigerator with heats taken exactly as

        Q_cold = sum_n E_n^cold (P_n^hot - P_n^cold)
        Q_hot  = sum_n E_n^hot  (P_n^cold - P_n^hot)

    Strokes are reported as (Q_cold, 0, Q_hot, 0); the adiabats exchange no
    heat.
    """
    cold = _corner(spec, spec.T_cold, spec.omega_low)
    hot = _corner(spec, spec.T_hot, spec.omega_high)
    cold_state, hot_state = _state(cold), _state(hot)
    # one truncation certified for both distributions
    n_cut = max(certified_cutoff(cold_state, rel_tol)[0], certified_cutoff(hot_state, rel_tol)[0])
    e_cold, w_cold = boltzmann_weights(cold_state, n_cut)
    e_hot, w_hot = boltzmann_weights(hot_state, n_cut)
    p_cold = w_cold / np.sum(w_cold)
    p_hot = w_hot / np.sum(w_hot)
    q_cold = float(np.sum(e_cold * (p_hot - p_cold)))
    q_hot = float(np.sum(e_hot * (p_cold - p_hot)))
    heats = (q_cold, 0.0, q_hot, 0.0)
    work = q_hot + q_cold
    if _is_degenerate(work, heats):
        raise DegenerateCycleError("zero net work; COP undefined", heats, work)
    if q_cold <= 0:
        raise NotRefrigeratorError(
            f"Q_cold = {q_cold:.6g} <= 0: no heat extracted from the cold bath",
            heats,
            work,
            q_cold,
        )
    return CycleResult(
        Q=heats,
        W_total=work,
        merit=q_cold / abs(work),
        mode=CycleMode.OTTO_FRIDGE,
        corner_points=(cold, cold, hot, hot),
        details={"levels_used": n_cut, "Q_cold": q_cold, "Q_hot": q_hot},
    )


_RUNNERS = {
    CycleMode.STIRLING_ENGINE: stirling_engine,
    CycleMode.STIRLING_FRIDGE: stirling_refrigerator,
    CycleMode.OTTO_FRIDGE: otto_refrigerator,
}


def run_cycle(mode, spec, rel_tol=DEFAULT_REL_TOL):
    return _RUNNERS[CycleMode(mode)](spec, rel_tol)
