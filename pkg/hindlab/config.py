import os
import logging

from dotenv import load_dotenv

load_dotenv()

LOG_LEVEL = os.getenv("HINDLAB_LOG_LEVEL", os.getenv("LOG_LEVEL", "INFO")).upper()
LOG_FORMAT = "%(asctime)s %(levelname)s [%(name)s] %(message)s"

# Garde-fous des énumérations exhaustives
MAX_GROUND = int(os.getenv("HINDLAB_MAX_GROUND", "6"))
MAX_DUT_GROUND = int(os.getenv("HINDLAB_MAX_DUT_GROUND", "5"))

# Budgets par défaut des recherches bornées
BUDGET_CANDIDATES = int(os.getenv("HINDLAB_BUDGET_CANDIDATES", "200000"))
BUDGET_SECONDS = float(os.getenv("HINDLAB_BUDGET_SECONDS", "60"))
DEFAULT_HEIGHT = int(os.getenv("HINDLAB_HEIGHT", "64"))
DEFAULT_JOBS = int(os.getenv("HINDLAB_JOBS", "1"))

SCHEMA_VERSION = "1.0"


def configure_logging(verbose: bool = False) -> None:
    """Configure root logging for an entry point (CLI or API)."""
    logging.basicConfig(
        level="DEBUG" if verbose else LOG_LEVEL,
        format=LOG_FORMAT,
    )
