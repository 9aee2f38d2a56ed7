"""Experiment configuration schema and preset loading"""
import os
from typing import Any, Dict, List, Optional

import yaml
from pydantic import BaseModel, Field, field_validator, model_validator

from app.core.config import settings
from app.decomposition.base import PartitionError
from app.decomposition.frontiers import FrontierFactory
from app.games.factory import GameFactory


class ExperimentConfig(BaseModel):
    """Everything one CLI command needs to run"""

    name: Optional[str] = Field(None, description="Preset name, when loaded from a preset file")
    game: str = Field(settings.DEFAULT_GAME, description="Built-in game name")
    frontier: str = Field("default", description="Frontier name used to split trunk and subgames")
    iterations: int = Field(settings.DEFAULT_ITERATIONS, ge=1, description="Whole-game CFR iterations")
    trunk_iterations: int = Field(settings.DEFAULT_TRUNK_ITERATIONS, ge=1)
    subgame_iterations: int = Field(settings.DEFAULT_SUBGAME_ITERATIONS, ge=1)
    recovery_iterations: List[int] = Field(
        default_factory=lambda: [settings.DEFAULT_RECOVERY_ITERATIONS],
        min_length=1,
        description="Recovery iteration counts to sweep",
    )
    eval_every: Optional[int] = Field(
        None,
        ge=0,
        description="Checkpoint spacing; None for powers of two, 0 to disable",
    )
    out: str = Field(settings.OUTPUT_DIR, description="Output directory")
    workers: int = Field(settings.WORKERS, ge=1)
    seed: Optional[int] = Field(None, description="Seed for a random profile when no strategy file is given")
    strategy: Optional[str] = Field(None, description="Input strategy file")
    cfvs: Optional[str] = Field(None, description="Input counterfactual value file")

    @field_validator("game")
    @classmethod
    def validate_game(cls, v):
        if v not in GameFactory.names():
            raise ValueError(f"Unknown game {v!r} (known: {', '.join(GameFactory.names())})")
        return v

    @field_validator("recovery_iterations")
    @classmethod
    def validate_recovery_iterations(cls, v):
        if any(count < 1 for count in v):
            raise ValueError("Recovery needs at least 1 iteration")
        return v

    @field_validator("out")
    @classmethod
    def validate_out(cls, v):
        """The output directory, or its nearest existing ancestor, must be writable"""
        path = os.path.abspath(v)
        while not os.path.exists(path):
            parent = os.path.dirname(path)
            if parent == path:
                break
            path = parent
        if not os.path.isdir(path) or not os.access(path, os.W_OK):
            raise ValueError(f"Output directory {v!r} is not writable")
        return v

    @field_validator("strategy", "cfvs")
    @classmethod
    def validate_input_file(cls, v):
        if v is not None and not os.path.isfile(v):
            raise ValueError(f"No such file: {v}")
        return v

    @model_validator(mode="after")
    def validate_frontier(self):
        try:
            FrontierFactory.create(self.game, self.frontier)
        except PartitionError as e:
            raise ValueError(str(e))
        return self

    def output_path(self, *parts: str) -> str:
        return os.path.join(self.out, "-".join((self.game,) + parts))


def load_presets(path: Optional[str] = None) -> Dict[str, Dict[str, Any]]:
    """
    Read named experiment presets from a YAML file of the form

        experiments:
          - name: leduc-cfrd
            game: leduc
            trunk_iterations: 32000

    Returns an empty mapping when the file does not exist.
    """
    path = path or settings.EXPERIMENT_CONFIG_PATH
    if not os.path.exists(path):
        return {}
    with open(path, "r") as f:
        config = yaml.safe_load(f) or {}
    presets = {}
    for entry in config.get("experiments", []):
        name = entry.get("name")
        if not name:
            raise ValueError(f"{path}: every experiment needs a name")
        presets[name] = dict(entry)
    return presets


def load_experiment_config(
    preset: Optional[str] = None,
    overrides: Optional[Dict[str, Any]] = None,
    path: Optional[str] = None,
) -> ExperimentConfig:
    """
    Build a validated config from an optional preset plus explicit
    overrides. Overrides that are None are ignored so unset CLI flags keep
    the preset's value.

    Raises:
        ValueError: If the preset does not exist
        pydantic.ValidationError: If the merged values are invalid
    """
    values: Dict[str, Any] = {}
    if preset:
        presets = load_presets(path)
        if preset not in presets:
            known = ", ".join(sorted(presets)) or "none"
            raise ValueError(f"Unknown preset {preset!r} (known: {known})")
        values.update(presets[preset])
    for key, value in (overrides or {}).items():
        if value is None or value == ():
            continue
        values[key] = list(value) if isinstance(value, tuple) else value
    return ExperimentConfig(**values)
