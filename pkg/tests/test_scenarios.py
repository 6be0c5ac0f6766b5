"""Scenario harness: manifests, reproducibility, sweeps, cycling, presets."""

import hashlib
import json

import pytest

from cryomems.scenarios import (
    FIGURE_IDS,
    CycleReport,
    Scenario,
    cycling_test,
    figure_preset,
    run_scenario,
    scenario_from_manifest,
    temperature_sweep,
)
from cryomems.params import Environment
from cryomems.waveform import engineered_waveform, square_pulse


def _tree_hashes(outdir):
    return {p.name: hashlib.sha256(p.read_bytes()).hexdigest()
            for p in outdir.iterdir()}


class TestScenarioConfig:
    def test_rejects_unknown_kind(self, tmp_path):
        with pytest.raises(ValueError, match="kind"):
            Scenario(kind="teleport", output_dir=str(tmp_path))

    def test_reports_env_field_path(self, tmp_path):
        with pytest.raises(ValueError, match="env.temp"):
            Scenario(kind="budget", output_dir=str(tmp_path),
                     env={"temp": 5.8})

    def test_reports_option_field_path(self, tmp_path):
        scenario = Scenario(kind="budget", output_dir=str(tmp_path),
                            options={"bogus": 1})
        with pytest.raises(ValueError, match="options.bogus"):
            run_scenario(scenario)

    def test_rejects_unknown_document_fields(self, tmp_path):
        with pytest.raises(ValueError, match="seed"):
            Scenario.from_dict({"kind": "budget", "output_dir": str(tmp_path),
                                "seed": 7})

    def test_rejects_non_positive_workers(self, tmp_path):
        with pytest.raises(ValueError, match="workers"):
            Scenario(kind="budget", output_dir=str(tmp_path), workers=0)


class TestReproducibility:
    def test_rerun_is_byte_identical_including_manifest(self, tmp_path):
        scenario = Scenario(kind="transient", output_dir=str(tmp_path),
                            options={"waveform": "square", "t_end": 4e-6})
        run_scenario(scenario)
        first = _tree_hashes(tmp_path)
        run_scenario(scenario)
        assert _tree_hashes(tmp_path) == first

    def test_manifest_round_trip_rebuilds_the_scenario(self, tmp_path):
        scenario = Scenario(kind="budget", output_dir=str(tmp_path))
        report = run_scenario(scenario)
        assert scenario_from_manifest(report.manifest_path) == scenario

    def test_manifest_records_output_hashes(self, tmp_path):
        report = run_scenario(Scenario(kind="budget", output_dir=str(tmp_path)))
        manifest = json.loads((tmp_path / "manifest.json").read_text())
        for name, digest in manifest["outputs"].items():
            actual = hashlib.sha256((tmp_path / name).read_bytes()).hexdigest()
            assert actual == digest

    def test_failed_assertion_raises_after_writing_the_manifest(self, tmp_path):
        scenario = Scenario(kind="budget", output_dir=str(tmp_path),
                            options={"n_switches": 100_000})
        with pytest.raises(RuntimeError, match="within_budget"):
            run_scenario(scenario)
        assert (tmp_path / "manifest.json").exists()


class TestTemperatureSweep:
    def test_onset_detected_in_the_condensation_window(self, params):
        rows, onset = temperature_sweep(
            params, Environment(), (295.0, 95.0, 90.0, 85.0, 5.8))
        assert 77.4 < onset < 90.2

    def test_room_temperature_point_is_quiet(self, params):
        rows, onset = temperature_sweep(params, Environment(), (295.0,))
        assert rows[0]["bounce_count"] <= 1
        assert onset is None

    def test_worker_count_does_not_change_results(self, params):
        temps = (295.0, 90.0, 5.8)
        serial = temperature_sweep(params, Environment(), temps, workers=1)
        threaded = temperature_sweep(params, Environment(), temps, workers=3)
        assert serial == threaded

    def test_rejects_empty_temperature_list(self, params):
        with pytest.raises(ValueError):
            temperature_sweep(params, Environment(), ())


class TestCyclingTest:
    def test_drift_is_exactly_zero(self, params, landing_spec):
        report = cycling_test(params, Environment(temperature=5.8),
                              engineered_waveform(landing_spec), 50)
        assert isinstance(report, CycleReport)
        assert report.cycles_run == 50
        assert report.max_drift == 0.0
        assert report.failed_cycle is None

    def test_decade_sampling(self, params, landing_spec):
        report = cycling_test(params, Environment(temperature=5.8),
                              engineered_waveform(landing_spec), 50)
        assert [s[0] for s in report.samples] == [1, 10, 50]

    def test_every_cycle_sampled_on_request(self, params, landing_spec):
        report = cycling_test(params, Environment(temperature=5.8),
                              engineered_waveform(landing_spec), 3,
                              sample_decades=False)
        assert [s[0] for s in report.samples] == [1, 2, 3]

    def test_never_closing_drive_reports_the_failing_cycle(self, params):
        weak = square_pulse(50.0, 50e-6, 100e-6)
        report = cycling_test(params, Environment(), weak, 5)
        assert report.failed_cycle == 1
        assert report.cycles_run == 0

    def test_perturbation_hook_runs_per_cycle(self, params):
        seen = []

        def hook(cycle, p):
            seen.append(cycle)
            return p

        report = cycling_test(params, Environment(),
                              square_pulse(90.0, 50e-6, 100e-6), 4,
                              perturb=hook)
        assert seen == [1, 2, 3, 4]
        assert report.max_drift == 0.0

    def test_rejects_non_positive_cycle_count(self, params):
        with pytest.raises(ValueError):
            cycling_test(params, Environment(),
                         square_pulse(90.0, 50e-6, 100e-6), 0)


class TestPresets:
    def test_every_reference_figure_has_a_preset(self, tmp_path):
        assert len(FIGURE_IDS) == 11
        for figure_id in FIGURE_IDS:
            scenario = figure_preset(figure_id, str(tmp_path))
            assert scenario.output_dir == str(tmp_path)

    def test_unknown_figure_id_is_rejected(self, tmp_path):
        with pytest.raises(ValueError, match="figure id"):
            figure_preset("fig99", str(tmp_path))
