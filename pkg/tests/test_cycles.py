import dataclasses

import pytest
from hypothesis import given, settings, strategies as st

from ncq_thermo.cycles import (
    CycleMode,
    CycleSpec,
    ScalingMode,
    effective_gamma,
    isochoric_heat,
    isothermal_heat,
    otto_refrigerator,
    run_cycle,
    stirling_engine,
    stirling_refrigerator,
)
from ncq_thermo.errors import DegenerateCycleError, NotRefrigeratorError, ValidationError

FG = ScalingMode.FIXED_GAMMA
FGT = ScalingMode.FIXED_GAMMA_TILDE


@st.composite
def cycle_specs(draw, max_gamma=0.5):
    t_cold = draw(st.floats(0.5, 20.0))
    t_hot = t_cold * draw(st.floats(1.1, 4.0))
    w_low = draw(st.floats(0.2, 3.0))
    w_high = w_low * draw(st.floats(1.1, 3.0))
    gamma = draw(st.floats(0.0, max_gamma))
    mode = draw(st.sampled_from(list(ScalingMode)))
    return CycleSpec(t_hot, t_cold, w_high, w_low, gamma, mode)


def test_spec_validation():
    with pytest.raises(ValidationError):
        CycleSpec(T_hot=5.0, T_cold=10.0)
    with pytest.raises(ValidationError):
        CycleSpec(omega_high=0.5, omega_low=1.0)
    with pytest.raises(ValidationError):
        CycleSpec(T_cold=0.0, T_hot=1.0)
    with pytest.raises(ValidationError):
        CycleSpec(gamma=-0.1)
    assert CycleSpec(scaling_mode="fixed-gamma").scaling_mode is FG


def test_effective_gamma():
    assert effective_gamma(CycleSpec(gamma=0.2, scaling_mode=FG), 1.0) == 0.2
    assert effective_gamma(CycleSpec(gamma=0.2, scaling_mode=FG), 2.0) == 0.2
    assert effective_gamma(CycleSpec(gamma=0.2, omega_high=2.0, scaling_mode=FGT), 1.0) == pytest.approx(0.1)
    assert effective_gamma(CycleSpec(gamma=0.2, omega_high=2.0, scaling_mode=FGT), 2.0) == 0.2
    for mode in ScalingMode:
        assert effective_gamma(CycleSpec(gamma=0.0, scaling_mode=mode), 1.0) == 0.0


def test_engine_equal_temperatures():
    r = stirling_engine(CycleSpec(T_hot=10.0, T_cold=10.0, gamma=0.1))
    assert r.W_total == 0.0
    assert r.merit == 0.0


def test_engine_equal_frequencies():
    r = stirling_engine(CycleSpec(omega_high=1.0, omega_low=1.0, gamma=0.1))
    assert r.W_total == pytest.approx(0.0, abs=1e-13)
    assert r.Q[0] == 0.0 and r.Q[2] == 0.0


def test_engine_ho_below_carnot():
    eta = stirling_engine(CycleSpec()).merit
    assert 0 < eta < 0.5


def test_fridge_equal_temperatures_is_degenerate():
    with pytest.raises(DegenerateCycleError):
        stirling_refrigerator(CycleSpec(T_hot=10.0, T_cold=10.0, gamma=0.1))


def test_otto_ho_identity():
    r = otto_refrigerator(CycleSpec(omega_high=1.5, omega_low=1.0, gamma=0.0))
    assert r.merit == pytest.approx(2.0, abs=1e-9)
    assert r.W_total == pytest.approx(sum(r.Q), abs=0)
    assert r.Q[1] == 0.0 and r.Q[3] == 0.0


def test_otto_equal_frequencies_is_degenerate():
    with pytest.raises(DegenerateCycleError):
        otto_refrigerator(CycleSpec(omega_high=1.0, omega_low=1.0, gamma=0.2))


def test_otto_reports_not_refrigerator():
    with pytest.raises(NotRefrigeratorError) as info:
        otto_refrigerator(CycleSpec(gamma=0.1))
    assert info.value.q_cold < 0
    assert len(info.value.heats) == 4


@pytest.mark.parametrize("gamma", [0.0, 0.1, 0.3, 0.5])
def test_otto_fixed_gamma_merit_is_gamma_independent(gamma):
    r = otto_refrigerator(CycleSpec(omega_high=1.5, omega_low=1.0, gamma=gamma, scaling_mode=FG))
    assert r.merit == pytest.approx(2.0, abs=1e-10)


@settings(max_examples=20, deadline=None)
@given(cycle_specs())
def test_stirling_identities(spec):
    r = stirling_engine(spec)
    a, b, c, d = r.details["thermo"]
    assert r.Q[0] == pytest.approx(spec.T_hot * (b.S - a.S), rel=1e-10)
    assert r.Q[2] == pytest.approx(spec.T_cold * (d.S - c.S), rel=1e-10)
    du = (b.U - a.U) + (c.U - b.U) + (d.U - c.U) + (a.U - d.U)
    assert abs(du) <= 1e-10 * max(p.U for p in (a, b, c, d))
    assert r.W_total == sum(r.Q)
    assert 0 <= r.merit < 1


@settings(max_examples=20, deadline=None)
@given(cycle_specs())
def test_reversal_negates_each_stroke(spec):
    a, b, c, d = stirling_engine(spec).details["thermo"]
    forward = [isothermal_heat(a, b, spec.T_hot), isochoric_heat(b, c),
               isothermal_heat(c, d, spec.T_cold), isochoric_heat(d, a)]
    backward = [isothermal_heat(b, a, spec.T_hot), isochoric_heat(c, b),
                isothermal_heat(d, c, spec.T_cold), isochoric_heat(a, d)]
    assert backward == [-q for q in forward]


@settings(max_examples=15, deadline=None)
@given(cycle_specs(max_gamma=0.0))
def test_commutative_limit(spec):
    tiny = dataclasses.replace(spec, gamma=1e-8)
    for mode in (CycleMode.STIRLING_ENGINE, CycleMode.STIRLING_FRIDGE):
        m0 = run_cycle(mode, spec).merit
        assert run_cycle(mode, tiny).merit == pytest.approx(m0, rel=1e-5)


def test_commutative_limit_otto():
    spec = CycleSpec(omega_high=1.5, omega_low=1.0)
    m0 = otto_refrigerator(spec).merit
    assert otto_refrigerator(dataclasses.replace(spec, gamma=1e-8)).merit == pytest.approx(m0, rel=1e-5)


def test_refrigerator_merits_positive():
    assert stirling_refrigerator(CycleSpec(gamma=0.2)).merit > 0
    assert otto_refrigerator(CycleSpec(omega_high=1.5, gamma=0.2)).merit > 0


def test_corner_points():
    r = stirling_engine(CycleSpec(gamma=0.2))
    a, b, c, d = r.corner_points
    assert (a.T, a.omega, a.gamma) == (20.0, 2.0, 0.2)
    assert (b.T, b.omega) == (20.0, 1.0) and b.gamma == pytest.approx(0.1)
    assert (c.T, d.T) == (10.0, 10.0)
    fr = stirling_refrigerator(CycleSpec(gamma=0.2)).corner_points
    assert fr[0].T == 10.0 and fr[2].T == 20.0
