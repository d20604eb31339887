"""Canonical-ensemble thermodynamics of the working substance.

The truncated level sum is the ground truth for everything downstream.
Truncation is certified: the level cut-off doubles until a rigorous bound on
the discarded tail falls below ``rel_tol`` times the retained sum.
"""
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, PartitionDivergenceError, ValidationError
from .spectra import SubstanceParams, energy_level, energy_levels, spectrum_coefficients
from .special import erfcx

DEFAULT_REL_TOL = 1e-12
MAX_REL_TOL = 1e-3
DEFAULT_LEVEL_CAP = 10**7
_INITIAL_LEVELS = 64
# fraction of rel_tol granted to truncation; the rest absorbs rounding
_TRUNCATION_SHARE = 0.5


@dataclass(frozen=True)
class ThermalState:
    params: SubstanceParams
    beta: float

    def __post_init__(self):
        if not math.isfinite(self.beta) or self.beta <= 0:
            raise ValidationError(f"beta must be positive and finite, got {self.beta!r}")

    @classmethod
    def from_temperature(cls, temperature, omega, gamma=0.0):
        if not temperature > 0:
            raise ValidationError(f"temperature must be positive, got {temperature!r}")
        return cls(SubstanceParams(omega, gamma), 1.0 / temperature)

    @property
    def temperature(self):
        return 1.0 / self.beta


@dataclass(frozen=True)
class PartitionResult:
    value: float
    levels_used: int
    tail_bound: float


@dataclass(frozen=True)
class ThermoPoint:
    """Z, U, S (units of k_B) and F at one thermal state."""

    Z: float
    U: float
    S: float
    F: float
    beta: float
    log_Z: float

    def __post_init__(self):
        expected_s = self.log_Z + self.beta * self.U
        if not math.isclose(self.S, expected_s, rel_tol=1e-12, abs_tol=1e-300):
            raise ValidationError(f"entropy {self.S} inconsistent with ln Z + beta U = {expected_s}")
        if not math.isclose(self.F, -self.log_Z / self.beta, rel_tol=1e-12, abs_tol=1e-300):
            raise ValidationError("free energy inconsistent with -ln(Z)/beta")


def _check_rel_tol(rel_tol):
    if not 0 < rel_tol <= MAX_REL_TOL:
        raise ValidationError(f"rel_tol must lie in (0, {MAX_REL_TOL}], got {rel_tol!r}")


def tail_bound(state, n_cut):
    """Upper bound on sum_{n > n_cut} exp(-beta E_n)."""
    x = state.beta * state.params.omega
    a, b = spectrum_coefficients(state.params)
    if b == 0.0:
        return math.exp(-x * (n_cut + 1)) / -math.expm1(-x)
    # term ratios t_{n+1}/t_n = exp(-x (A + B (2n+1))) shrink with n
    ratio_exponent = x * (a + b * (2 * n_cut + 1))
    return math.exp(-x * (b * n_cut * n_cut + a * n_cut)) / -math.expm1(-ratio_exponent)


def certified_cutoff(state, rel_tol=DEFAULT_REL_TOL, level_cap=DEFAULT_LEVEL_CAP):
    """Smallest doubled cut-off N whose tail bound is <= rel_tol * partial sum.

    Half of ``rel_tol`` is reserved for rounding. Partial sums are >= 1
    (ground term), so a bound below the target certifies without summing.
    """
    _check_rel_tol(rel_tol)
    target = _TRUNCATION_SHARE * rel_tol
    n_cut = _INITIAL_LEVELS
    while True:
        bound = tail_bound(state, n_cut)
        if bound <= target:
            return n_cut, bound
        if bound <= target * _partial_sum(state, n_cut):
            return n_cut, bound
        n_cut *= 2
        if n_cut > level_cap:
            raise PartitionDivergenceError(
                f"partition sum for beta={state.beta}, omega={state.params.omega}, "
                f"gamma={state.params.gamma} needs more than {level_cap} levels"
            )


def _partial_sum(state, n_cut):
    return float(np.sum(np.exp(-state.beta * energy_levels(state.params, n_cut))))


def boltzmann_weights(state, n_cut):
    """Energies and unnormalised Boltzmann weights for n = 0 .. n_cut."""
    energies = energy_levels(state.params, n_cut)
    return energies, np.exp(-state.beta * energies)


def partition_sum(state, rel_tol=DEFAULT_REL_TOL, level_cap=DEFAULT_LEVEL_CAP):
    n_cut, bound = certified_cutoff(state, rel_tol, level_cap)
    _, weights = boltzmann_weights(state, n_cut)
    return PartitionResult(value=float(np.sum(weights)), levels_used=n_cut, tail_bound=bound)


def partition_closed_form(state):
    """Integral approximation of Z over a continuous level index.

    Equals the integral from 0 to infinity of exp(-beta omega (A n + B n^2)),
    which brackets the discrete sum: closed_form <= Z <= closed_form + 1.
    Evaluated as sqrt(pi/2) / sqrt(x gamma) * erfcx(z), which is the same as
    the exp(...) * erfc(z) product without its overflow.
    """
    gamma = state.params.gamma
    if gamma <= 0:
        raise DomainError("closed form requires gamma > 0; use partition_sum")
    x = state.beta * state.params.omega
    z = x * (2.0 + gamma) / (2.0 * math.sqrt(2.0 * x * gamma))
    return math.sqrt(math.pi / 2.0) * erfcx(z) / math.sqrt(x * gamma)


def _log_partition(weights):
    # weights[0] == 1 exactly; log1p keeps ln Z accurate when Z - 1 is tiny
    return math.log1p(float(np.sum(weights[1:])))


def thermo_from_weights(beta, energies, weights):
    Z = float(np.sum(weights))
    log_z = _log_partition(weights)
    U = float(np.sum(energies * weights)) / Z
    S = log_z + beta * U
    return ThermoPoint(Z=Z, U=U, S=S, F=-log_z / beta, beta=beta, log_Z=log_z)


def thermo_point(state, rel_tol=DEFAULT_REL_TOL):
    n_cut, _ = certified_cutoff(state, rel_tol)
    energies, weights = boltzmann_weights(state, n_cut)
    return thermo_from_weights(state.beta, energies, weights)


def occupation_probabilities(state, rel_tol=DEFAULT_REL_TOL, n_cut=None):
    """P_n = exp(-beta E_n) / Z over the certified truncation (or ``n_cut``)."""
    if n_cut is None:
        n_cut, _ = certified_cutoff(state, rel_tol)
    _, weights = boltzmann_weights(state, n_cut)
    return weights / np.sum(weights)


def occupation_probability(state, n, rel_tol=DEFAULT_REL_TOL):
    if n < 0:
        raise ValidationError(f"level index must be nonnegative, got {n}")
    z = partition_sum(state, rel_tol).value
    return math.exp(-state.beta * energy_level(state.params, n)) / z
