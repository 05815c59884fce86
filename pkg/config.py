"""
Configuration file for the Weil character engine
"""

import logging
import os
from dotenv import load_dotenv

# Load environment variables
load_dotenv()


def _float(name: str, default: float) -> float:
    return float(os.getenv(name, str(default)).strip())


def _int(name: str, default: int) -> int:
    return int(os.getenv(name, str(default)).strip())


class Config:
    """Configuration settings for the application"""

    # Numeric tolerances
    SNAP_TOLERANCE = _float("WEIL_SNAP_TOLERANCE", 1e-6)
    ORACLE_TOLERANCE = _float("WEIL_ORACLE_TOLERANCE", 1e-6)
    PIVOT_THRESHOLD = _float("WEIL_PIVOT_THRESHOLD", 1e-8)
    SCHUR_TOLERANCE = _float("WEIL_SCHUR_TOLERANCE", 1e-8)
    HOMOMORPHISM_TOLERANCE = _float("WEIL_HOMOMORPHISM_TOLERANCE", 1e-9)

    # Size guards
    MAX_ENUMERATION = _int("WEIL_MAX_ENUMERATION", 2**24)
    MAX_DIRECT_SIGN = _int("WEIL_MAX_DIRECT_SIGN", 2**20)
    GAUSS_REDUCTION_THRESHOLD = _int("WEIL_GAUSS_REDUCTION_THRESHOLD", 10**5)
    MAX_ORACLE_ORDER = _int("WEIL_MAX_ORACLE_ORDER", 2**16)
    MAX_SCHUR_ORDER = _int("WEIL_MAX_SCHUR_ORDER", 512)
    MAX_SP_ENUMERATION = _int("WEIL_MAX_SP_ENUMERATION", 81)
    ORACLE_CHUNK = _int("WEIL_ORACLE_CHUNK", 4096)
    MEMORY_LIMIT_MB = _int("WEIL_MEMORY_LIMIT_MB", 2048)

    # Sampling
    CAYLEY_RETRY_BUDGET = _int("WEIL_CAYLEY_RETRY_BUDGET", 64)
    DEFAULT_SEED = _int("WEIL_DEFAULT_SEED", 42)
    DEFAULT_SAMPLES = _int("WEIL_DEFAULT_SAMPLES", 100)
    SAMPLE_STEPS = _int("WEIL_SAMPLE_STEPS", 3)

    # Output
    LOG_LEVEL = os.getenv("WEIL_LOG_LEVEL", "INFO").strip().upper()
    LOG_FILE = os.getenv("WEIL_LOG_FILE", "").strip()
    REPORTS_DIR = os.getenv("WEIL_REPORTS_DIR", "reports").strip()

    @classmethod
    def validate_config(cls):
        """Validate that tolerances and guards are usable"""
        invalid_vars = []

        for var in ["SNAP_TOLERANCE", "ORACLE_TOLERANCE", "PIVOT_THRESHOLD", "SCHUR_TOLERANCE", "HOMOMORPHISM_TOLERANCE"]:
            value = getattr(cls, var)
            if not 0 < value < 1:
                invalid_vars.append(f"{var} (must lie in (0, 1), got {value})")

        for var in [
            "MAX_ENUMERATION",
            "MAX_DIRECT_SIGN",
            "GAUSS_REDUCTION_THRESHOLD",
            "MAX_ORACLE_ORDER",
            "MAX_SCHUR_ORDER",
            "MAX_SP_ENUMERATION",
            "ORACLE_CHUNK",
            "MEMORY_LIMIT_MB",
            "CAYLEY_RETRY_BUDGET",
            "DEFAULT_SAMPLES",
            "SAMPLE_STEPS",
        ]:
            value = getattr(cls, var)
            if value < 1:
                invalid_vars.append(f"{var} (must be positive, got {value})")

        if not isinstance(logging.getLevelName(cls.LOG_LEVEL), int):
            invalid_vars.append(f"LOG_LEVEL (unknown level {cls.LOG_LEVEL!r})")

        if invalid_vars:
            raise ValueError(f"Invalid configuration: {', '.join(invalid_vars)}")

        return True

    @classmethod
    def get_settings_status(cls):
        """Get the effective settings for debugging"""
        return {
            name: getattr(cls, name)
            for name in dir(cls)
            if name.isupper() and not name.startswith("_")
        }
