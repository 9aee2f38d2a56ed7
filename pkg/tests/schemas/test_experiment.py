# tests/schemas/test_experiment.py
import os

import pytest
from pydantic import ValidationError

from app.schemas import ExperimentConfig, load_experiment_config, load_presets

PRESETS = """
experiments:
  - name: quick
    game: kuhn
    iterations: 64
    recovery_iterations: [10, 20]
  - name: split
    game: leduc
    frontier: round
"""


@pytest.fixture
def preset_file(tmp_path):
    path = tmp_path / "experiments.yaml"
    path.write_text(PRESETS)
    return str(path)


def test_defaults(output_dir):
    config = ExperimentConfig(game="rps", out=str(output_dir))
    assert config.frontier == "default"
    assert config.eval_every is None
    assert len(config.recovery_iterations) == 1
    assert config.output_path("cfr", "strategy.txt") == os.path.join(str(output_dir), "rps-cfr-strategy.txt")


@pytest.mark.parametrize(
    "values",
    [
        {"game": "chess"},
        {"game": "kuhn", "iterations": 0},
        {"game": "kuhn", "recovery_iterations": []},
        {"game": "kuhn", "recovery_iterations": [10, 0]},
        {"game": "kuhn", "eval_every": -1},
        {"game": "kuhn", "frontier": "round"},
        {"game": "kuhn", "workers": 0},
        {"game": "kuhn", "strategy": "no/such/file.txt"},
    ],
)
def test_invalid_values(values, output_dir):
    with pytest.raises(ValidationError):
        ExperimentConfig(out=str(output_dir), **values)


def test_output_directory_must_be_writable(tmp_path):
    blocker = tmp_path / "file"
    blocker.write_text("")
    with pytest.raises(ValidationError, match="not writable"):
        ExperimentConfig(game="rps", out=str(blocker))
    # A missing directory below a writable one is fine
    assert ExperimentConfig(game="rps", out=str(tmp_path / "a" / "b")).out.endswith("b")


def test_presets(preset_file):
    presets = load_presets(preset_file)
    assert list(presets) == ["quick", "split"]
    assert presets["quick"]["recovery_iterations"] == [10, 20]
    assert load_presets(preset_file + ".missing") == {}


def test_repository_presets_are_valid(output_dir):
    path = os.path.join(os.path.dirname(__file__), "..", "..", "experiments.yaml")
    presets = load_presets(path)
    assert "leduc-cfrd" in presets
    for name in presets:
        config = load_experiment_config(name, {"out": str(output_dir)}, path)
        assert config.name == name


def test_overrides_replace_preset_values(preset_file, output_dir):
    config = load_experiment_config(
        "quick",
        {"iterations": 128, "recovery_iterations": (5,), "frontier": None, "out": str(output_dir)},
        preset_file,
    )
    assert config.game == "kuhn"
    assert config.iterations == 128
    assert config.recovery_iterations == [5]
    # An empty multiple-flag keeps the preset's sweep
    config = load_experiment_config("quick", {"recovery_iterations": (), "out": str(output_dir)}, preset_file)
    assert config.recovery_iterations == [10, 20]


def test_unknown_preset(preset_file):
    with pytest.raises(ValueError, match="quick, split"):
        load_experiment_config("missing", {}, preset_file)


def test_bad_preset_file(tmp_path):
    path = tmp_path / "bad.yaml"
    path.write_text("experiments:\n  - game: kuhn\n")
    with pytest.raises(ValueError, match="needs a name"):
        load_presets(str(path))
