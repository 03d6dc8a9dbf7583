import os
import logging
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path

from dotenv import load_dotenv

logger = logging.getLogger(__name__)

PROJECT_ROOT = Path(__file__).resolve().parent.parent

DEFAULT_SEED = 20240607


@dataclass(frozen=True)
class Settings:
    seed: int
    log_level: str
    brute_force_limit: int
    suite_limit: int
    families_dir: Path


def _int_env(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        return int(raw)
    except ValueError:
        logger.warning(f"⚠️ Ignoring non-integer {name}={raw!r}, using {default}")
        return default


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    """
    Loads settings from the environment (and a .env file in the working directory, if present).
    Cached: call get_settings.cache_clear() after changing the environment in tests.
    """
    load_dotenv()

    families_dir = Path(os.getenv("STEINER_SENTRY_FAMILIES_DIR", str(PROJECT_ROOT / "config" / "families")))

    return Settings(
        seed=_int_env("STEINER_SENTRY_SEED", DEFAULT_SEED),
        log_level=os.getenv("STEINER_SENTRY_LOG_LEVEL", "WARNING"),
        brute_force_limit=_int_env("STEINER_SENTRY_BRUTE_LIMIT", 20),
        suite_limit=_int_env("STEINER_SENTRY_SUITE_LIMIT", 14),
        families_dir=families_dir,
    )
