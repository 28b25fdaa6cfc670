import os

from archmetrics.settings.base import *  # noqa: F403

ENVIRONMENT = "testing"

# Keep the suite quiet unless something is actually wrong.
LOGGING = {
    "version": 1,
    "disable_existing_loggers": False,
    "handlers": {
        "console": {
            "class": "logging.StreamHandler",
            # the original stream outlives the ones the CLI test runner swaps in
            "stream": "ext://sys.__stderr__",
        },
    },  # noqa: E231
    "loggers": {
        "archmetrics": {
            "handlers": ["console"],
            "level": os.getenv("ARCHMETRICS_LOG_LEVEL", "WARNING"),
        },
    },
}

# Smaller Monte-Carlo runs so the suite stays fast; tests that check the
# published constants pass their sample sizes explicitly.
ESTIMATOR_SAMPLES = 200_000
ESTIMATOR_REPLICATES = 8
SOFTMAX_TRIALS = 50
BOXFILTER_VECTOR_LEN = 3000
BOXFILTER_VECTORS = 20
BOXFILTER_K_MAX = 50
WORKERS = 2
