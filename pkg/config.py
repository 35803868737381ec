import os
from dotenv import load_dotenv

load_dotenv()

# Theorem Configuration
DEFAULT_C = float(os.getenv("DEFAULT_C", "0.01"))
MAX_C = 0.01

# Comparison tolerances
WITNESS_TOLERANCE = 1e-9  # integer witness size vs real-valued target
BALANCE_TOLERANCE = 1e-12  # float eps only; Fraction eps is compared exactly

# Oracle Configuration
ORACLE_BUDGET_SECS = float(os.getenv("ORACLE_BUDGET_SECS", "30"))
RAMSEY_MAX_PAIRS = int(os.getenv("RAMSEY_MAX_PAIRS", "21"))  # n(n-1)/2 <= 21, i.e. n <= 7

# Local search Configuration
TIGHTNESS_MAX_N = int(os.getenv("TIGHTNESS_MAX_N", "40"))
TIGHTNESS_SIDEWAYS_LIMIT = int(os.getenv("TIGHTNESS_SIDEWAYS_LIMIT", "50"))

# Sweep Configuration
SWEEP_WORKERS = int(os.getenv("SWEEP_WORKERS", "1"))

# Debug Settings
DEBUG_MODE = os.getenv("DEBUG_MODE", "False").lower() == "true"
VERBOSE_LOGGING = os.getenv("VERBOSE_LOGGING", "False").lower() == "true"
