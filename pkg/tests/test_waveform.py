"""Gate drive construction: piecewise profiles, landing spec, drive power."""

import pytest

from cryomems.waveform import (
    EngineeredSpec,
    Waveform,
    actuation_power,
    characterization_hold_pulse,
    engineered_waveform,
    square_pulse,
    standard_gate_pulse,
)


class TestWaveform:
    def test_right_continuous_at_edges(self):
        w = square_pulse(90.0, 2e-6, 10e-6)
        assert w.evaluate(0.0) == 90.0
        assert w.evaluate(2e-6 - 1e-12) == 90.0
        assert w.evaluate(2e-6) == 0.0

    def test_zero_after_last_repetition(self):
        w = square_pulse(90.0, 2e-6, 10e-6, repetitions=2)
        assert w.evaluate(12e-6) == 90.0
        assert w.evaluate(25e-6) == 0.0

    def test_rejects_negative_time(self):
        with pytest.raises(ValueError):
            square_pulse(90.0, 2e-6, 10e-6).evaluate(-1e-9)

    def test_rejects_overfull_period(self):
        with pytest.raises(ValueError):
            Waveform(segments=((90.0, 8e-6), (50.0, 4e-6)), period=10e-6)

    def test_rejects_negative_voltage_and_zero_duration(self):
        with pytest.raises(ValueError):
            Waveform(segments=((-1.0, 1e-6),), period=10e-6)
        with pytest.raises(ValueError):
            Waveform(segments=((1.0, 0.0),), period=10e-6)

    def test_edges_merge_equal_voltage_runs(self):
        w = Waveform(segments=((90.0, 1e-6), (90.0, 1e-6), (0.0, 2e-6)), period=5e-6)
        times, volts = w.edges()
        assert volts == [90.0, 0.0]
        assert times == [0.0, 2e-6]

    def test_edges_end_at_zero_volts(self):
        times, volts = standard_gate_pulse().edges()
        assert volts[-1] == 0.0

    def test_rising_edge_times(self):
        w = square_pulse(90.0, 2e-6, 10e-6, repetitions=3)
        assert w.rising_edge_times() == [0.0, 10e-6, 20e-6]


class TestStandardPulses:
    def test_standard_gate_pulse_is_10khz_half_duty(self):
        w = standard_gate_pulse()
        assert w.period == 100e-6
        assert w.evaluate(0.0) == 90.0
        assert w.evaluate(49e-6) == 90.0
        assert w.evaluate(51e-6) == 0.0

    def test_characterization_hold_keeps_gate_asserted(self):
        w = characterization_hold_pulse()
        assert w.evaluate(400e-6) == 90.0
        assert w.evaluate(460e-6) == 0.0


class TestEngineeredSpec:
    def test_default_region_ordering_is_valid_for_the_device(self, params):
        from cryomems.model import pull_in_voltage
        EngineeredSpec().validate_against_pull_in(pull_in_voltage(params, 5.8))

    def test_coast_must_stay_below_pull_in(self):
        with pytest.raises(ValueError, match="v_coast"):
            EngineeredSpec(v_coast=75.0).validate_against_pull_in(70.0)

    def test_kick_hold_catch_must_exceed_pull_in(self):
        with pytest.raises(ValueError, match="v_kick"):
            EngineeredSpec(v_kick=60.0).validate_against_pull_in(65.0)
        with pytest.raises(ValueError, match="v_hold"):
            EngineeredSpec(v_hold=60.0).validate_against_pull_in(65.0)
        with pytest.raises(ValueError, match="v_catch"):
            EngineeredSpec(v_catch=60.0).validate_against_pull_in(65.0)

    def test_rejects_non_positive_durations(self):
        with pytest.raises(ValueError):
            EngineeredSpec(t_kick=0.0)

    def test_total_duration_sums_all_regions(self):
        spec = EngineeredSpec()
        total = (spec.t_kick + spec.t_coast + spec.t_hold
                 + spec.t_release_coast + spec.t_catch)
        assert spec.total_duration() == pytest.approx(total, rel=1e-15)


class TestEngineeredWaveform:
    def test_plays_regions_in_order(self):
        spec = EngineeredSpec()
        w = engineered_waveform(spec)
        # probe each region at its midpoint; edges are float-boundary sensitive
        mids = []
        start = 0.0
        for name in spec._durations:
            dur = getattr(spec, name)
            mids.append(start + 0.5 * dur)
            start += dur
        expected = (spec.v_kick, spec.v_coast, spec.v_hold,
                    spec.v_release_coast, spec.v_catch)
        assert tuple(w.evaluate(t) for t in mids) == expected
        assert w.evaluate(99e-6) == 0.0

    def test_validates_when_pull_in_given(self):
        with pytest.raises(ValueError, match="violated"):
            engineered_waveform(EngineeredSpec(v_coast=80.0), v_pi=70.0)

    def test_calibrated_spec_fills_half_the_period(self, landing_spec):
        actuated = landing_spec.t_kick + landing_spec.t_coast + landing_spec.t_hold
        assert actuated == pytest.approx(50e-6, rel=1e-9)


class TestActuationPower:
    def test_matches_the_half_cv2f_formula_bitwise(self):
        assert actuation_power(12e-15, 90.0, 10e3) == 0.5 * 12e-15 * 90.0 * 90.0 * 10e3

    def test_reference_operating_point(self):
        assert actuation_power(12e-15, 90.0, 10e3) == pytest.approx(0.486e-6, rel=1e-12)

    def test_quadratic_in_voltage_linear_in_frequency(self):
        base = actuation_power(12e-15, 45.0, 10e3)
        assert actuation_power(12e-15, 90.0, 10e3) == pytest.approx(4 * base, rel=1e-12)
        assert actuation_power(12e-15, 45.0, 20e3) == pytest.approx(2 * base, rel=1e-12)

    def test_rejects_negative_inputs(self):
        with pytest.raises(ValueError):
            actuation_power(-1e-15, 90.0, 10e3)
        with pytest.raises(ValueError):
            actuation_power(12e-15, 90.0, -1.0)
