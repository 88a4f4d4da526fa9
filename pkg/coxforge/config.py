"""
Configuration module for coxforge.

Loads environment variables (optionally from a .env file), defines the
exact-mode bounds and defaults, and configures logging.
"""
import os
import math
import logging
from pathlib import Path
from logging.handlers import RotatingFileHandler
from dotenv import dotenv_values

logger = logging.getLogger(__file__)

# Load environment variables; the real environment wins over .env.
VARS = {**dotenv_values(), **os.environ}
LOG_LEVEL = VARS.get("LOG_LEVEL", "ERROR").upper()

# File paths
LOG_DIR = Path(VARS.get("COXFORGE_LOG_DIR", Path(__file__).resolve().parent.parent / "logs"))


def _int_var(name: str, default: int) -> int:
    """Reads a positive integer environment variable, falling back to the default."""
    raw = VARS.get(name)
    if raw is None:
        return default
    try:
        value = int(raw)
        if value < 1:
            raise ValueError(value)
        return value
    except ValueError:
        logger.warning(f"Ignoring invalid {name}={raw!r}, using {default}.")
        return default


# Maximum number of precision doublings when certifying the sign of a scalar.
PRECISION_CAP = _int_var("COXFORGE_PRECISION_CAP", 12)
# Largest N = lcm(finite labels) accepted in exact mode.
MAX_FIELD_N = _int_var("COXFORGE_MAX_FIELD_N", 2520)
# Element budget for ball enumeration.
BALL_BUDGET = _int_var("COXFORGE_BUDGET", 1_000_000)
DEFAULT_MAX_LENGTH = _int_var("COXFORGE_MAX_LENGTH", 8)
DEFAULT_WORKERS = _int_var("COXFORGE_WORKERS", 1)

# Search defaults.
DEFAULT_ALPHABET = (2, 3, 4, 5, 6, math.inf)
MAX_SEARCH_VERTICES = 9

# Report schema.
SCHEMA_VERSION = "1.0"
DECIMAL_DIGITS = 20


def configure_logging() -> None:
    """Configures the logging settings for the application."""
    LOG_DIR.mkdir(exist_ok=True, parents=True)
    logging.basicConfig(
        level=getattr(logging, LOG_LEVEL, logging.ERROR),
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        handlers=[
            RotatingFileHandler(LOG_DIR / "coxforge.log", maxBytes=5 * 1024 * 1024, backupCount=3),
            logging.StreamHandler(),
        ],
    )
