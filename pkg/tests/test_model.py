"""Closed-form device physics: thermal gap, pull-in, contact resistance, gas."""

import pytest

from cryomems.model import (
    contact_gap_at_temperature,
    gap_at_temperature,
    gas_pressure,
    on_resistance,
    pull_in_voltage,
    thermal_gap_shift,
)
from cryomems.params import Environment


class TestThermalGap:
    def test_no_shift_at_room_temperature(self, params):
        assert thermal_gap_shift(params, 295.0) == 0.0

    def test_no_shift_above_room_temperature(self, params):
        assert thermal_gap_shift(params, 350.0) == 0.0

    def test_full_shift_at_absolute_zero(self, params):
        assert thermal_gap_shift(params, 0.0) == params.thermal_gap_shift_max

    def test_linear_in_cooling(self, params):
        half = thermal_gap_shift(params, 147.5)
        assert half == pytest.approx(0.5 * params.thermal_gap_shift_max, rel=1e-12)

    def test_both_gaps_shrink_by_the_same_amount(self, params):
        d_act = params.gap_actuation_295 - gap_at_temperature(params, 5.8)
        d_con = params.gap_contact_295 - contact_gap_at_temperature(params, 5.8)
        assert d_act == d_con
        assert d_act > 0.0

    def test_rejects_temperature_out_of_range(self, params):
        with pytest.raises(ValueError):
            thermal_gap_shift(params, -1.0)
        with pytest.raises(ValueError):
            thermal_gap_shift(params, 400.5)


class TestPullIn:
    def test_room_temperature_anchor(self, params):
        assert pull_in_voltage(params, 295.0) == pytest.approx(70.0, rel=1e-12)

    def test_scales_as_gap_to_three_halves(self, params):
        v295 = pull_in_voltage(params, 295.0)
        g295 = gap_at_temperature(params, 295.0)
        for t in (250.0, 150.0, 77.0, 5.8, 0.0):
            expected = v295 * (gap_at_temperature(params, t) / g295) ** 1.5
            assert pull_in_voltage(params, t) == pytest.approx(expected, rel=1e-12)

    def test_cryogenic_drop_ratios(self, params):
        v295 = pull_in_voltage(params, 295.0)
        assert pull_in_voltage(params, 5.8) / v295 == pytest.approx(0.969, abs=0.005)
        assert pull_in_voltage(params, 0.0) / v295 == pytest.approx(0.965, abs=0.005)

    def test_monotone_under_cooling(self, params):
        temps = (295.0, 250.0, 200.0, 150.0, 100.0, 77.4, 40.0, 5.8, 0.0)
        values = [pull_in_voltage(params, t) for t in temps]
        assert all(a > b for a, b in zip(values, values[1:]))


class TestOnResistance:
    def test_room_temperature_value(self, params):
        assert on_resistance(params, 295.0) == params.r_on_295

    def test_cryogenic_ratio_is_exact(self, params):
        ratio = on_resistance(params, 5.8) / on_resistance(params, 295.0)
        assert ratio == 0.847

    def test_clamped_outside_the_anchored_range(self, params):
        assert on_resistance(params, 350.0) == on_resistance(params, 295.0)
        assert on_resistance(params, 1.0) == on_resistance(params, 5.8)

    def test_monotone_in_temperature(self, params):
        values = [on_resistance(params, t) for t in (295.0, 200.0, 100.0, 5.8)]
        assert all(a > b for a, b in zip(values, values[1:]))


class TestGasPressure:
    def test_ideal_gas_scaling_above_condensation(self):
        env = Environment()
        assert gas_pressure(env, 295.0) == env.pressure_ref
        assert gas_pressure(env, 147.5) == pytest.approx(0.5 * env.pressure_ref, rel=1e-12)

    def test_oxygen_drops_out_between_condensation_points(self):
        env = Environment()
        p = gas_pressure(env, 80.0)
        assert p == pytest.approx((1.0 - env.o2_fraction) * env.pressure_ref * 80.0 / 295.0,
                                  rel=1e-12)

    def test_step_down_at_oxygen_condensation(self):
        env = Environment()
        assert gas_pressure(env, env.t_condense_o2 - 1e-6) < gas_pressure(env, env.t_condense_o2)

    def test_residual_pressure_below_nitrogen_condensation(self):
        env = Environment()
        expected = env.residual_pressure_fraction * env.pressure_ref
        assert gas_pressure(env, 5.8) == expected
        assert gas_pressure(env, 77.0) == expected

    def test_defaults_to_environment_temperature(self):
        env = Environment(temperature=5.8)
        assert gas_pressure(env) == gas_pressure(env, 5.8)
