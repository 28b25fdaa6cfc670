"""
Settings shared by every archmetrics environment.

Values can be overridden with environment variables or a `.env` file; the
command line flags take precedence over anything set here.
"""

import logging
import os
import pathlib

import dotenv
from shiv.bootstrap import current_zipfile

from archmetrics import __version__

"""
***************************************************************************

                                HEY YOU!

   Only modify this file if changes need to apply in EVERY ENVIRONMENT!

***************************************************************************

Otherwise, please change the required other environment files in
archmetrics/settings/!
"""

with current_zipfile() as archive:
    dotenv_path: str | None
    if archive:
        # if archive is none, we're not in the zipfile and are probably
        # in development mode right now.
        dotenv_path = str(pathlib.Path(archive.filename).parent / ".env")
    else:
        dotenv_path = None
dotenv.load_dotenv(dotenv_path=dotenv_path)

logger = logging.getLogger(__name__)

# Build paths inside the project like this: os.path.join(BASE_DIR, ...)
BASE_DIR = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))

ENVIRONMENT = "base"
VERSION = __version__

LOG_LEVEL = os.getenv("ARCHMETRICS_LOG_LEVEL", "INFO")

# Everything goes to stderr; stdout belongs to the command output.
LOGGING = {
    "version": 1,
    "disable_existing_loggers": False,
    "formatters": {
        "plain": {"format": "%(levelname)s %(name)s: %(message)s"},
    },
    "handlers": {
        "console": {
            "class": "logging.StreamHandler",
            "stream": "ext://sys.stderr",
            "formatter": "plain",
        },
    },  # noqa: E231
    "loggers": {
        "archmetrics": {
            "handlers": ["console"],
            "level": LOG_LEVEL,
        },
    },
}

# Path to a JSON file overriding the activation constants, if any.
CONSTANTS_FILE = os.getenv("ARCHMETRICS_CONSTANTS", None)

DEFAULT_SEED = int(os.getenv("ARCHMETRICS_SEED", "7"))
WORKERS = int(os.getenv("ARCHMETRICS_WORKERS", "4"))

DEFAULT_COMPLEXITY_MODE = "multiplicative"
DEFAULT_POWER_MERGE = "max"
DEFAULT_KERNEL_SCOPE = "full"

# Monte-Carlo defaults
ESTIMATOR_SAMPLES = 1_000_000
ESTIMATOR_REPLICATES = 32
SOFTMAX_VECTOR_LEN = 15000
SOFTMAX_TRIALS = 100
BOXFILTER_VECTOR_LEN = 15000
BOXFILTER_VECTORS = 100
BOXFILTER_K_MAX = 500
