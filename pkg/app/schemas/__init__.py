# app/schemas/__init__.py
from app.schemas.experiment import (
    ExperimentConfig,
    load_experiment_config,
    load_presets,
)
