"""
Runtime configuration for the Lorentz isometry toolkit.
Values come from the environment, optionally seeded from a .env file next to this module.
"""

import logging
import os
import sys

from dotenv import load_dotenv

from errors import ConfigError

# --- GET SCRIPT DIRECTORY (for proper path handling) ---
SCRIPT_DIR = os.path.dirname(os.path.abspath(__file__))

# --- LOAD ENVIRONMENT VARIABLES ---
load_dotenv(os.path.join(SCRIPT_DIR, '.env'))


def _int_setting(key, default):
    raw = os.getenv(key, str(default)).strip()
    try:
        return int(raw)
    except ValueError:
        raise ConfigError(f"{key} must be an integer, got {raw!r}", key=key)


# --- CONFIGURATION ---
QUICK_TRACE_CAP = _int_setting('HYPERISO_QUICK_TRACE_CAP', 64)
REFINE_BITS = _int_setting('HYPERISO_REFINE_BITS', 40)
CENSUS_MAX_N = _int_setting('HYPERISO_CENSUS_MAX_N', 60)
VERIFY_WORKERS = _int_setting('HYPERISO_VERIFY_WORKERS', 4)
ENTRY_BOUND = _int_setting('HYPERISO_ENTRY_BOUND', 3)
LOG_LEVEL = os.getenv('HYPERISO_LOG_LEVEL', 'WARNING').upper()

LOG_FORMAT = '[%(asctime)s] %(levelname)s %(name)s: %(message)s'
LOG_DATEFMT = '%H:%M:%S'


def setup_logging(level=None):
    """Send log lines to stderr; stdout is reserved for reports."""
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter(LOG_FORMAT, datefmt=LOG_DATEFMT))
    root = logging.getLogger()
    root.handlers[:] = [handler]
    root.setLevel(level or LOG_LEVEL)
