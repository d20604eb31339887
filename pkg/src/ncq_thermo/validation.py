"""Independent oracles: fixed-N sums, finite differences, HO references.

None of these reuse the adaptive truncation or the cycle code paths; they
exist so the library can check itself (``ncq-thermo validate``).
"""
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, ValidationError
from .spectra import SubstanceParams
from .statmech import ThermalState, certified_cutoff

NEAR_ZERO = 1e-12
BRUTE_FORCE_LEVELS = 10**6


@dataclass(frozen=True)
class OracleReport:
    quantity_name: str
    primary_value: float
    oracle_value: float
    abs_diff: float
    rel_diff: float
    passed: bool
    tolerance_used: float

    @classmethod
    def compare(cls, name, primary, oracle, tol):
        abs_diff = abs(primary - oracle)
        rel_diff = abs_diff / abs(oracle) if oracle != 0 else (0.0 if abs_diff == 0 else math.inf)
        if abs(oracle) < NEAR_ZERO:
            passed = abs_diff <= NEAR_ZERO
        else:
            passed = rel_diff <= tol
        return cls(name, primary, oracle, abs_diff, rel_diff, passed, tol)

    def line(self):
        flag = "PASS" if self.passed else "FAIL"
        return (
            f"{flag}  {self.quantity_name:<44s} primary={self.primary_value:<22.15g} "
            f"oracle={self.oracle_value:<22.15g} rel={self.rel_diff:.2e} tol={self.tolerance_used:.0e}"
        )


def _naive_terms(state, n_levels):
    # deliberately written out rather than calling spectra.energy_levels
    n = np.arange(n_levels + 1, dtype=float)
    omega, gamma = state.params.omega, state.params.gamma
    energies = omega * n + 0.5 * gamma * omega * n * (n + 1.0)
    return energies, np.exp(-state.beta * energies)


def brute_force_partition(state, n_levels):
    """sum_{n=0}^{N} exp(-beta E_n) with a fixed N."""
    if n_levels < 1:
        raise ValidationError("N must be >= 1")
    return float(np.sum(_naive_terms(state, n_levels)[1]))


def brute_force_log_partition(state, n_levels):
    # ground term is exactly 1
    return math.log1p(float(np.sum(_naive_terms(state, n_levels)[1][1:])))


def brute_force_thermo(state, n_levels=BRUTE_FORCE_LEVELS):
    """(ln Z, U, S) from fixed-N sums."""
    energies, weights = _naive_terms(state, n_levels)
    z = float(np.sum(weights))
    log_z = math.log1p(float(np.sum(weights[1:])))
    u = float(np.sum(energies * weights)) / z
    return log_z, u, log_z + state.beta * u


def finite_difference_energy(state, h):
    """U = -d ln Z / d beta by a central difference."""
    if not 0 < h < state.beta / 10:
        raise ValidationError(f"step h must lie in (0, beta/10), got {h}")
    lo = ThermalState(state.params, state.beta - h)
    hi = ThermalState(state.params, state.beta + h)
    # the smallest beta has the longest tail
    n_levels = certified_cutoff(lo, 1e-15)[0]
    return -(brute_force_log_partition(hi, n_levels) - brute_force_log_partition(lo, n_levels)) / (2 * h)


def ho_otto_cop_reference(omega_high, omega_low):
    if not omega_high > omega_low > 0:
        raise DomainError("need omega_high > omega_low > 0")
    return omega_low / (omega_high - omega_low)


def _effective_gamma(gamma, omega, omega_high, fixed_tilde):
    return gamma * omega / omega_high if fixed_tilde else gamma


def brute_force_stirling(T_hot, T_cold, omega_high, omega_low, gamma=0.0, fixed_tilde=True,
                         n_levels=BRUTE_FORCE_LEVELS):
    """(engine efficiency, refrigerator COP) from four fixed-N corner states.

    Engine heats use entropy differences T dS on the isotherms; the library
    uses dU + T d ln Z, so the two routes agree only through the identity
    S = ln Z + beta U.
    """

    def corner(T, omega):
        g = _effective_gamma(gamma, omega, omega_high, fixed_tilde)
        return brute_force_thermo(ThermalState(SubstanceParams(omega, g), 1.0 / T), n_levels)

    hot_hi, hot_lo = corner(T_hot, omega_high), corner(T_hot, omega_low)
    cold_hi, cold_lo = corner(T_cold, omega_high), corner(T_cold, omega_low)

    # engine A=hot_hi B=hot_lo C=cold_lo D=cold_hi
    q_ab = T_hot * (hot_lo[2] - hot_hi[2])
    q_bc = cold_lo[1] - hot_lo[1]
    q_cd = T_cold * (cold_hi[2] - cold_lo[2])
    q_da = hot_hi[1] - cold_hi[1]
    eta = 1.0 + (q_bc + q_cd) / (q_da + q_ab)

    # refrigerator A=cold_hi B=cold_lo C=hot_lo D=hot_hi
    r_ab = T_cold * (cold_lo[2] - cold_hi[2])
    r_bc = hot_lo[1] - cold_lo[1]
    r_cd = T_hot * (hot_hi[2] - hot_lo[2])
    r_da = cold_hi[1] - hot_hi[1]
    work = r_ab + r_bc + r_cd + r_da
    cop = (r_ab + r_bc) / abs(work)
    return eta, cop


def run_validation_suite(rel_tol=1e-12):
    """The oracle battery behind ``ncq-thermo validate``."""
    from . import cycles, statmech

    reports = []
    geo = ThermalState(SubstanceParams(1.0, 0.0), math.log(2.0))
    reports.append(OracleReport.compare(
        "Z geometric (gamma=0, beta*omega=ln2)", statmech.partition_sum(geo, rel_tol).value, 2.0, 1e-12))
    reports.append(OracleReport.compare(
        "U Bose (gamma=0, beta*omega=ln2)", statmech.thermo_point(geo, rel_tol).U, 1.0, 1e-12))

    for gamma, beta, omega in [(0.1, 1.0, 1.0), (0.3, 0.05, 2.0), (0.02, 0.01, 0.5)]:
        state = ThermalState(SubstanceParams(omega, gamma), beta)
        label = f"(gamma={gamma}, beta={beta}, omega={omega})"
        reports.append(OracleReport.compare(
            f"Z vs brute force N=1e6 {label}", statmech.partition_sum(state, rel_tol).value,
            brute_force_partition(state, BRUTE_FORCE_LEVELS), 1e-11))
        reports.append(OracleReport.compare(
            f"U vs finite difference {label}", statmech.thermo_point(state, rel_tol).U,
            finite_difference_energy(state, 1e-5 * beta), 1e-6))
        z = statmech.partition_sum(state, rel_tol).value
        closed = statmech.partition_closed_form(state)
        reports.append(OracleReport(
            f"bracketing Z_int <= Z <= Z_int + 1 {label}", z, closed, abs(z - closed),
            abs(z - closed) / z, closed <= z <= closed + 1.0, 1.0))

    spec = cycles.CycleSpec(T_hot=20.0, T_cold=10.0, omega_high=1.5, omega_low=1.0, gamma=0.0)
    reports.append(OracleReport.compare(
        "Otto COP at gamma=0 vs omega'/(omega-omega')", cycles.otto_refrigerator(spec, rel_tol).merit,
        ho_otto_cop_reference(1.5, 1.0), 1e-9))

    default = cycles.CycleSpec()
    eta_ref, cop_ref = brute_force_stirling(20.0, 10.0, 2.0, 1.0)
    reports.append(OracleReport.compare(
        "Stirling engine eta (HO) vs brute force", cycles.stirling_engine(default, rel_tol).merit, eta_ref, 1e-9))
    reports.append(OracleReport.compare(
        "Stirling fridge COP (HO) vs brute force", cycles.stirling_refrigerator(default, rel_tol).merit,
        cop_ref, 1e-9))
    return reports
