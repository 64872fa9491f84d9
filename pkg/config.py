import os
from dotenv import load_dotenv

load_dotenv()

class Settings:
    # Tool metadata
    TOOL_VERSION = os.getenv("TOOL_VERSION", "1.0.0")
    LOG_LEVEL = os.getenv("LOG_LEVEL", "INFO")
    DEFAULT_SEED = int(os.getenv("DEFAULT_SEED", "0"))

    # Eigensolver
    EIGEN_TOLERANCE_SCALE = float(os.getenv("EIGEN_TOLERANCE_SCALE", "1e-9"))
    MULTIPLICITY_GROUPING = float(os.getenv("MULTIPLICITY_GROUPING", "1e-6"))
    JACOBI_MAX_SWEEPS = int(os.getenv("JACOBI_MAX_SWEEPS", "100"))

    # Certification
    FLOAT_MEMBERSHIP_TOLERANCE = float(os.getenv("FLOAT_MEMBERSHIP_TOLERANCE", "1e-8"))
    FLOAT_INDETERMINATE_BAND = float(os.getenv("FLOAT_INDETERMINATE_BAND", "1e-3"))

    # Caps
    HADAMARD_ORDER_CAP = int(os.getenv("HADAMARD_ORDER_CAP", "4096"))
    SYLVESTER_MAX_POWER = int(os.getenv("SYLVESTER_MAX_POWER", "12"))
    CANONICAL_FORM_MAX_ORDER = int(os.getenv("CANONICAL_FORM_MAX_ORDER", "16"))
    ENUMERATION_MAX_ORDER = int(os.getenv("ENUMERATION_MAX_ORDER", "7"))
    NEXT_PRIME_CAP = int(os.getenv("NEXT_PRIME_CAP", "10000000"))
    MAX_POWER_EXPONENT = 4
    LATIN_MAX_SIZE = int(os.getenv("LATIN_MAX_SIZE", "4096"))

    # Search
    SEARCH_DEFAULT_BUDGET = int(os.getenv("SEARCH_DEFAULT_BUDGET", "1000000"))
    SEARCH_DEFAULT_ORDERS = [int(x) for x in os.getenv("SEARCH_DEFAULT_ORDERS", "6,12").split(",")]
    SEARCH_WORKERS = int(os.getenv("SEARCH_WORKERS", "1"))
    SEARCH_PROGRESS_EVERY = int(os.getenv("SEARCH_PROGRESS_EVERY", "100000"))

    # Property lab
    LAB_DEFAULT_SAMPLES = int(os.getenv("LAB_DEFAULT_SAMPLES", "200"))
    LAB_EDGE_PROBABILITY = float(os.getenv("LAB_EDGE_PROBABILITY", "0.5"))
    LAB_BATCH_SIZE = int(os.getenv("LAB_BATCH_SIZE", "65536"))
    LAB_TOLERANCE = float(os.getenv("LAB_TOLERANCE", "1e-8"))

    # Reporting
    FLOAT_SIGNIFICANT_DIGITS = int(os.getenv("FLOAT_SIGNIFICANT_DIGITS", "12"))
    PMM_HEADER = "PMM 1"
    ADJ_HEADER = "ADJ 1"
    MANIFEST_SUFFIX = ".manifest.json"

settings = Settings()
