"""Calibration pipeline: frozen defaults, verification, landing targets."""

from dataclasses import replace

import pytest

from cryomems.calibrate import (
    DEFAULT_LANDING_SPEC,
    DEFAULT_PARAMS,
    calibrate,
    default_landing_spec,
    default_params,
    verify,
)
from cryomems.dynamics import bounce_metrics, kernel_backend, switching_time
from cryomems.exceptions import CalibrationError
from cryomems.params import load_params, save_params


class TestFrozenDefaults:
    def test_accessors_return_the_frozen_values(self):
        assert default_params() == DEFAULT_PARAMS
        assert default_landing_spec() == DEFAULT_LANDING_SPEC

    def test_defaults_survive_a_json_round_trip(self, tmp_path):
        path = tmp_path / "params.json"
        save_params(DEFAULT_PARAMS, str(path))
        assert load_params(str(path)) == DEFAULT_PARAMS

    @pytest.mark.skipif(kernel_backend() != "cython",
                        reason="full recalibration is slow on the fallback kernel")
    def test_recalibration_reproduces_the_frozen_values_bit_for_bit(self):
        result = calibrate()
        assert result.params == DEFAULT_PARAMS
        assert result.landing_spec == DEFAULT_LANDING_SPEC


class TestVerify:
    def test_defaults_pass_and_report_all_observables(self):
        diag = verify(DEFAULT_PARAMS, DEFAULT_LANDING_SPEC)
        expected_keys = {
            "v_pi_295", "switching_time_295", "bounce_count_5k8",
            "ring_down_5k8", "bounce_count_295", "bounce_count_95",
            "bounce_count_90", "engineered_close_5k8",
            "engineered_impact_5k8", "engineered_bounce_5k8",
        }
        assert expected_keys <= set(diag)
        assert diag["v_pi_295"] == pytest.approx(70.0, rel=1e-9)
        assert diag["switching_time_295"] == pytest.approx(2.7e-6, rel=0.02)

    def test_detuned_device_is_rejected_with_named_misses(self):
        heavy = replace(DEFAULT_PARAMS, mass_eff=2.0 * DEFAULT_PARAMS.mass_eff)
        with pytest.raises(CalibrationError, match="switching time"):
            verify(heavy, DEFAULT_LANDING_SPEC)


class TestLandingSpec:
    def test_closing_time_hits_the_cryogenic_target(self, engineered_trace_cryo):
        assert switching_time(engineered_trace_cryo) == pytest.approx(3.3e-6, rel=0.15)

    def test_at_most_one_bounce(self, engineered_trace_cryo):
        assert bounce_metrics(engineered_trace_cryo).bounce_count <= 1

    def test_lands_far_slower_than_the_square_drive(self, engineered_trace_cryo,
                                                    square_trace_cryo):
        v_soft = bounce_metrics(engineered_trace_cryo).impact_velocity
        v_hard = bounce_metrics(square_trace_cryo).impact_velocity
        assert v_hard / v_soft >= 10.0

    def test_actuated_regions_fill_half_the_drive_period(self):
        spec = DEFAULT_LANDING_SPEC
        assert spec.t_kick + spec.t_coast + spec.t_hold == pytest.approx(50e-6, rel=1e-9)
