from pydantic_settings import BaseSettings
from dotenv import load_dotenv
import os
from pydantic import ConfigDict

# Load environment variables from .env file
load_dotenv()


class Settings(BaseSettings):
    # Logging
    CFRD_LOG: str = os.getenv("CFRD_LOG", "info")
    LOG_DIR: str = os.getenv(
        "LOG_DIR", os.path.join(os.path.dirname(os.path.dirname(os.path.dirname(__file__))), "logs")
    )

    # Output and experiment presets
    OUTPUT_DIR: str = os.getenv("OUTPUT_DIR", "results")
    EXPERIMENT_CONFIG_PATH: str = os.getenv("EXPERIMENT_CONFIG_PATH", "experiments.yaml")

    # Solver defaults
    DEFAULT_GAME: str = os.getenv("DEFAULT_GAME", "leduc")
    DEFAULT_ITERATIONS: int = int(os.getenv("DEFAULT_ITERATIONS", "1000"))
    DEFAULT_TRUNK_ITERATIONS: int = int(os.getenv("DEFAULT_TRUNK_ITERATIONS", "1000"))
    DEFAULT_SUBGAME_ITERATIONS: int = int(os.getenv("DEFAULT_SUBGAME_ITERATIONS", "100"))
    DEFAULT_RECOVERY_ITERATIONS: int = int(os.getenv("DEFAULT_RECOVERY_ITERATIONS", "1000"))
    PROBABILITY_TOLERANCE: float = float(os.getenv("PROBABILITY_TOLERANCE", "1e-9"))

    # Subgame-level parallelism
    WORKERS: int = int(os.getenv("WORKERS", "1"))

    @property
    def log_level(self) -> str:
        """Logging level name for CFRD_LOG, defaulting to INFO for unknown values"""
        level = self.CFRD_LOG.upper()
        if level not in ("DEBUG", "INFO", "WARNING", "ERROR"):
            return "INFO"
        return level

    model_config = ConfigDict(env_file=".env", case_sensitive=True, extra="ignore")


settings = Settings()
