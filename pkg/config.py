"""
Configuration settings for the odd arc algebra toolkit
Size guards, verification seeds and output defaults.
"""
import os
from dotenv import load_dotenv

load_dotenv()

# =============================================================================
# SIZE GUARDS
# =============================================================================
SIZE_GUARDS = {
    "max_n": int(os.getenv("ODDARC_MAX_N", "8")),  # enumerate_matchings
    "max_n_center": 4,           # odd / even center solves
    "max_n_springer": 4,         # Springer quotient
    "max_n_choices": 3,          # chronology enumeration explodes past this
    "max_n_twist": 3,            # twist solver
    "max_n_iso": 3,              # verify_iso (n=4 is optional and slow)
}

# =============================================================================
# VERIFICATION
# =============================================================================
VERIFY_CONFIG = {
    "seed": int(os.getenv("ODDARC_SEED", "20240501")),
    "samples": int(os.getenv("ODDARC_SAMPLES", "100000")),  # sampled triple checks
}

# =============================================================================
# PARALLELISM
# =============================================================================
PARALLEL = {
    "threads": int(os.getenv("ODDARC_THREADS", "4")),  # structure-constant cache
}

# =============================================================================
# OUTPUT
# =============================================================================
OUTPUT = {
    "format": os.getenv("ODDARC_FORMAT", "text"),  # "text" or "json"
    "golden_dir": os.path.join(os.path.dirname(__file__), "golden"),
    "json_indent": 2,
}
