import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from fenc.device import (
    VTH_CLAMP_SIGMAS,
    DeviceParams,
    FeFetDevice,
    PulsePolarity,
    SlopeMode,
    VthState,
    drain_current,
    program,
)

V_R = 0.6


def fresh(state=VthState.HVT, params=None):
    params = params or DeviceParams()
    return FeFetDevice(state, params.nominal_vth(state))


def test_positive_pulse_programs_lvt():
    params = DeviceParams(vth_sigma=0.0)
    rng = np.random.default_rng(0)
    dev = program(fresh(VthState.HVT), PulsePolarity.POSITIVE, params, rng)
    assert dev.state == VthState.LVT
    assert dev.vth_effective == params.vth_low


def test_negative_pulse_overwrites_lvt():
    params = DeviceParams(vth_sigma=0.0)
    rng = np.random.default_rng(0)
    dev = program(fresh(VthState.LVT), PulsePolarity.NEGATIVE, params, rng)
    assert dev.state == VthState.HVT
    assert dev.vth_effective == params.vth_high


def test_program_reproducible_with_seed():
    params = DeviceParams(vth_sigma=0.05)
    a = program(fresh(), PulsePolarity.POSITIVE, params, np.random.default_rng(1234))
    b = program(fresh(), PulsePolarity.POSITIVE, params, np.random.default_rng(1234))
    assert a.vth_effective == b.vth_effective
    assert a.vth_effective != params.vth_low  # sigma > 0 actually perturbs


def test_lvt_conducts_at_read_voltage():
    params = DeviceParams()
    dev = FeFetDevice(VthState.LVT, params.vth_low)
    assert drain_current(dev, V_R, params) == params.i_on


def test_hvt_cut_off_at_read_voltage():
    params = DeviceParams()
    dev = FeFetDevice(VthState.HVT, params.vth_high)
    assert drain_current(dev, V_R, params) == params.i_off


def test_lvt_off_at_zero_gate():
    params = DeviceParams()
    dev = FeFetDevice(VthState.LVT, params.vth_low)
    assert drain_current(dev, 0.0, params) == params.i_off


@pytest.mark.parametrize("mode", list(SlopeMode))
@given(v1=st.floats(-1.0, 3.0), v2=st.floats(-1.0, 3.0),
       state=st.sampled_from(list(VthState)))
def test_drain_current_monotone_in_gate_voltage(mode, v1, v2, state):
    params = DeviceParams(slope_mode=mode)
    dev = FeFetDevice(state, params.nominal_vth(state))
    lo, hi = sorted((v1, v2))
    assert drain_current(dev, lo, params) <= drain_current(dev, hi, params)


@given(v=st.floats(-1.0, 3.0), state=st.sampled_from(list(VthState)))
def test_hard_switch_is_two_valued(v, state):
    params = DeviceParams(vth_sigma=0.0)
    dev = FeFetDevice(state, params.nominal_vth(state))
    assert drain_current(dev, v, params) in (params.i_on, params.i_off)


@given(v=st.floats(0.31, 1.49))
def test_programmed_state_decides_window_current(v):
    # Any gate voltage inside the memory window separates the two states.
    params = DeviceParams(vth_sigma=0.0)
    rng = np.random.default_rng(0)
    lvt = program(fresh(), PulsePolarity.POSITIVE, params, rng)
    hvt = program(fresh(), PulsePolarity.NEGATIVE, params, rng)
    assert drain_current(lvt, v, params) == params.i_on
    assert drain_current(hvt, v, params) == params.i_off


@given(sigma=st.floats(0.001, 0.5), seed=st.integers(0, 2**31))
def test_variability_stays_within_clamp(sigma, seed):
    params = DeviceParams(vth_sigma=sigma)
    rng = np.random.default_rng(seed)
    dev = program(fresh(), PulsePolarity.POSITIVE, params, rng)
    assert abs(dev.vth_effective - params.vth_low) <= VTH_CLAMP_SIGMAS * sigma


def test_sigmoid_mode_bounded_and_ramped():
    params = DeviceParams(slope_mode=SlopeMode.SIGMOID, subthreshold_slope=0.1)
    dev = FeFetDevice(VthState.LVT, params.vth_low)
    deep_off = drain_current(dev, -2.0, params)
    deep_on = drain_current(dev, 3.0, params)
    at_vth = drain_current(dev, params.vth_low, params)
    assert deep_off == params.i_off
    assert deep_on == params.i_on
    # one decade per subthreshold_slope volts around the log-space midpoint
    mid = np.sqrt(params.i_on * params.i_off)
    assert at_vth == pytest.approx(mid)
    one_dec = drain_current(dev, params.vth_low + 0.1, params)
    assert one_dec == pytest.approx(mid * 10)


@pytest.mark.parametrize("kwargs", [
    {"vth_low": 1.5, "vth_high": 0.3},
    {"i_on": 1e-12, "i_off": 1e-5},
    {"vth_sigma": -0.1},
    {"subthreshold_slope": 0.0},
])
def test_invalid_params_rejected(kwargs):
    with pytest.raises(ValueError):
        DeviceParams(**kwargs)


def test_params_dict_round_trip():
    params = DeviceParams(vth_sigma=0.07, slope_mode=SlopeMode.SIGMOID)
    assert DeviceParams.from_dict(params.to_dict()) == params
