from fractions import Fraction as F

import pytest

from reebmetrics.experiments import (
    EXPERIMENTS,
    ExperimentConfig,
    run_all,
    run_experiment,
)


def test_config_validation():
    with pytest.raises(ValueError):
        ExperimentConfig(K=F(1, 10))  # above 1/22
    with pytest.raises(ValueError):
        ExperimentConfig(epsilon_fraction=F(3, 2))
    with pytest.raises(ValueError):
        ExperimentConfig(trials=0)
    ExperimentConfig(K=F(1, 30), epsilon_fraction=F(1, 4))


def test_unknown_experiment():
    with pytest.raises(ValueError):
        run_experiment("does-not-exist")


@pytest.mark.parametrize("name", EXPERIMENTS)
def test_each_experiment_passes_quickly(name):
    report = run_experiment(name, ExperimentConfig(seed=2, trials=12))
    assert report.passed, report.to_text()


def test_reports_are_deterministic():
    config = ExperimentConfig(seed=11, trials=10)
    first = run_experiment("stability", config)
    second = run_experiment("stability", config)
    assert first.to_records_text() == second.to_records_text()


def test_different_seeds_differ():
    a = run_experiment("stability", ExperimentConfig(seed=1, trials=10))
    b = run_experiment("stability", ExperimentConfig(seed=2, trials=10))
    assert a.to_records_text() != b.to_records_text()


def test_records_are_json_lines():
    import json

    report = run_experiment("snapping", ExperimentConfig(seed=4, trials=5))
    for line in report.to_records_text().splitlines():
        payload = json.loads(line)
        assert payload["experiment"] == "snapping"
        assert isinstance(payload["pass"], bool)


def test_run_all_covers_every_experiment():
    reports = run_all(ExperimentConfig(seed=5, trials=6))
    assert [r.name for r in reports] == list(EXPERIMENTS)
    assert all(r.passed for r in reports)
