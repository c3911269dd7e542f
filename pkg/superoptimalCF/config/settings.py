"""
Application configuration and settings
"""
import os
from fractions import Fraction
from pathlib import Path
from dotenv import load_dotenv

# Load environment variables
load_dotenv()


def _env_int(name, default):
    raw = os.getenv(name)
    if raw is None or not raw.strip():
        return default
    try:
        return int(raw)
    except ValueError:
        return default


class Settings:
    """Application settings and configuration"""

    # Logging
    LOGGER_NAME = 'superoptimalCF'
    LOG_LEVEL = os.getenv('SOCF_LOG_LEVEL', 'WARNING').upper()

    # Induced-map search
    DEFAULT_CAP = _env_int('SOCF_CAP', 10_000)   # max natural-extension steps per hit

    # Region membership refinement
    MEMBERSHIP_INITIAL_WIDTH = Fraction(1, 2 ** 8)
    MEMBERSHIP_HALVINGS = 64
    THETA_WIDTH = Fraction(1, 2 ** 64)

    # Quadrature
    QUADRATURE_DEPTH_CAP = 20
    QUADRATURE_DPS = 30
    QUADRATURE_MAX_DEGREE = 10
    QUADRATURE_MAX_BOXES = 4096

    # Random draws for ergodic statistics
    RANDOM_BASE_BITS = 256
    RANDOM_BITS_PER_STEP = 4
    MAX_REDRAWS = 100

    # Statistical tolerances (relative)
    FREQUENCY_TOLERANCE = 0.01
    LEVY_TOLERANCE = 0.02

    # Sampling fan-out
    MIN_WORKERS = 1
    MAX_WORKERS = _env_int('SOCF_WORKERS', 1)
    MAX_WORKERS_LIMIT = 64

    # Files
    DATA_FOLDER = Path(__file__).resolve().parent.parent / 'data'

    @classmethod
    def validate(cls):
        """Validate settings"""
        errors = []

        if cls.DEFAULT_CAP < 1:
            errors.append(f"SOCF_CAP ({cls.DEFAULT_CAP}) must be a positive integer")

        if cls.MAX_WORKERS < cls.MIN_WORKERS:
            errors.append(f"SOCF_WORKERS ({cls.MAX_WORKERS}) must be >= {cls.MIN_WORKERS}")

        if cls.MAX_WORKERS > cls.MAX_WORKERS_LIMIT:
            errors.append(f"SOCF_WORKERS ({cls.MAX_WORKERS}) exceeds limit ({cls.MAX_WORKERS_LIMIT})")

        if not cls.DATA_FOLDER.is_dir():
            errors.append(f"fixture folder {cls.DATA_FOLDER} not found")

        return errors

    @classmethod
    def random_bits(cls, orbit_len):
        """Bit budget for a uniform draw that must survive orbit_len digits"""
        return cls.RANDOM_BASE_BITS + cls.RANDOM_BITS_PER_STEP * orbit_len
