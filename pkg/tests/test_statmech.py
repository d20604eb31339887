import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ncq_thermo.errors import DomainError, PartitionDivergenceError, ValidationError
from ncq_thermo.spectra import SubstanceParams
from ncq_thermo.statmech import (
    ThermalState,
    ThermoPoint,
    certified_cutoff,
    occupation_probabilities,
    occupation_probability,
    partition_closed_form,
    partition_sum,
    tail_bound,
    thermo_point,
)

LN2 = math.log(2.0)


def state(beta, omega=1.0, gamma=0.0):
    return ThermalState(SubstanceParams(omega, gamma), beta)


def naive_z(beta, omega, gamma, n_levels):
    n = np.arange(n_levels + 1, dtype=float)
    return float(np.sum(np.exp(-beta * omega * (n + gamma / 2 * (n + n * n)))))


random_states = st.builds(
    state,
    beta=st.floats(1e-3, 1e2),
    omega=st.floats(0.1, 10.0),
    gamma=st.floats(1e-6, 0.5),
)


def test_geometric_series():
    result = partition_sum(state(LN2))
    assert result.value == pytest.approx(2.0, rel=1e-12)
    assert result.tail_bound <= 1e-12 * result.value


def test_ground_state_only():
    assert abs(partition_sum(state(50.0, gamma=0.1)).value - 1.0) < 1e-20


def test_matches_fixed_n_brute_force():
    reference = naive_z(1.0, 1.0, 0.1, 10**6)
    assert partition_sum(state(1.0, gamma=0.1)).value == pytest.approx(reference, rel=1e-12)


@pytest.mark.parametrize("gamma,beta,omega", [(0.0, 0.01, 1.0), (0.05, 0.002, 0.3), (1e-8, 0.05, 1.0)])
def test_tail_bound_is_rigorous(gamma, beta, omega):
    s = state(beta, omega, gamma)
    n_cut, bound = certified_cutoff(s)
    true_tail = naive_z(beta, omega, gamma, 4 * n_cut) - naive_z(beta, omega, gamma, n_cut)
    assert true_tail <= bound * (1 + 1e-9)


def test_rel_tol_range_checked():
    with pytest.raises(ValidationError):
        partition_sum(state(1.0), rel_tol=0.0)
    with pytest.raises(ValidationError):
        partition_sum(state(1.0), rel_tol=1e-2)


def test_level_cap():
    with pytest.raises(PartitionDivergenceError):
        partition_sum(state(1e-3, 0.1), level_cap=1000)


def test_closed_form_domain():
    with pytest.raises(DomainError):
        partition_closed_form(state(1.0, gamma=0.0))


def test_closed_form_example_bracket():
    s = state(1.0, gamma=0.1)
    z = partition_sum(s).value
    assert z - 1 <= partition_closed_form(s) <= z


def test_closed_form_agrees_with_literal_expression_where_safe():
    beta, omega, gamma = 0.7, 1.3, 0.4
    x = beta * omega
    literal = (
        math.exp(beta * (2 + gamma) ** 2 * omega / (8 * gamma))
        * math.sqrt(math.pi / 2)
        * math.erfc(beta * (2 + gamma) * omega / (2 * math.sqrt(2 * beta * gamma * omega)))
        / math.sqrt(beta * gamma * omega)
    )
    assert partition_closed_form(state(beta, omega, gamma)) == pytest.approx(literal, rel=1e-12)
    assert x > 0


def test_closed_form_ratio_tends_to_one_at_high_temperature():
    ratios = []
    for beta in (1e-2, 1e-3, 1e-4):
        s = state(beta, gamma=0.2)
        ratios.append(partition_closed_form(s) / partition_sum(s).value)
    assert ratios[0] < ratios[1] < ratios[2] < 1.0
    assert 1 - ratios[2] < 1e-2


def test_closed_form_no_overflow_at_small_gamma():
    s = state(10.0, gamma=1e-6)
    assert math.isfinite(partition_closed_form(s))


@settings(max_examples=150, deadline=None)
@given(random_states)
def test_bracketing(s):
    z = partition_sum(s).value
    closed = partition_closed_form(s)
    assert closed <= z <= closed + 1.0


def test_thermo_examples():
    p = thermo_point(state(LN2))
    assert p.U == pytest.approx(1.0, rel=1e-12)
    assert p.S == pytest.approx(2 * LN2, rel=1e-12)
    assert p.F == pytest.approx(-1.0, rel=1e-12)
    assert thermo_point(state(50.0, gamma=0.1)).S < 1e-18


def test_thermo_point_rejects_inconsistent_entropy():
    with pytest.raises(ValidationError):
        ThermoPoint(Z=2.0, U=1.0, S=0.0, F=-1.0, beta=LN2, log_Z=LN2)


def _fd_energy(s, h):
    lo = naive_z(s.beta - h, s.params.omega, s.params.gamma, 10**6)
    hi = naive_z(s.beta + h, s.params.omega, s.params.gamma, 10**6)
    return -(math.log(hi) - math.log(lo)) / (2 * h)


@pytest.mark.parametrize("beta,omega,gamma", [(1.0, 1.0, 0.1), (0.05, 2.0, 0.3), (0.3, 0.5, 0.0)])
def test_energy_is_minus_dlnz_dbeta(beta, omega, gamma):
    s = state(beta, omega, gamma)
    assert thermo_point(s).U == pytest.approx(_fd_energy(s, 1e-5 * beta), rel=1e-6)


@settings(max_examples=40, deadline=None)
@given(random_states)
def test_thermo_signs(s):
    p = thermo_point(s)
    assert p.U >= 0
    assert p.S >= 0
    assert p.Z >= 1


@settings(max_examples=40, deadline=None)
@given(st.floats(1e-2, 10.0), st.floats(0.1, 5.0), st.floats(0.0, 0.5))
def test_monotone_in_beta(beta, omega, gamma):
    lo, hi = state(beta, omega, gamma), state(1.5 * beta, omega, gamma)
    # Z - 1 can drop below double resolution; ln Z = log1p(Z - 1) keeps it
    assert thermo_point(hi).log_Z < thermo_point(lo).log_Z
    assert partition_sum(hi).value <= partition_sum(lo).value
    assert thermo_point(hi).S <= thermo_point(lo).S


@settings(max_examples=40, deadline=None)
@given(st.floats(1e-2, 10.0), st.floats(0.1, 5.0), st.floats(0.0, 0.4))
def test_z_non_increasing_in_gamma(beta, omega, gamma):
    assert partition_sum(state(beta, omega, gamma + 0.1)).value <= partition_sum(state(beta, omega, gamma)).value


# the relative shift is ~ gamma / (beta omega), so the grid keeps beta omega >= 0.05
@pytest.mark.parametrize("beta", [0.1, 1.0, 10.0])
@pytest.mark.parametrize("omega", [0.5, 1.0, 10.0])
def test_continuity_at_commutative_limit(beta, omega):
    z0 = partition_sum(state(beta, omega, 0.0)).value
    z1 = partition_sum(state(beta, omega, 1e-8)).value
    assert abs(z1 - z0) / z0 <= 1e-6


def test_occupation_examples():
    assert occupation_probability(state(LN2), 0) == pytest.approx(0.5, rel=1e-12)
    assert occupation_probability(state(LN2), 1) == pytest.approx(0.25, rel=1e-12)


@settings(max_examples=30, deadline=None)
@given(random_states)
def test_occupations_normalised_and_decreasing(s):
    p = occupation_probabilities(s)
    assert abs(p.sum() - 1.0) <= 1e-10
    assert np.all((p >= 0) & (p <= 1))
    assert np.all(np.diff(p) <= 0)


def test_tail_bound_geometric_is_exact():
    s = state(0.5)
    exact = math.exp(-0.5 * 11) / (1 - math.exp(-0.5))
    assert tail_bound(s, 10) == pytest.approx(exact, rel=1e-14)
