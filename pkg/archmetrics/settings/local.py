# noinspection PyUnresolvedReferences
from archmetrics.settings.base import *  # noqa: F401,F403

ENVIRONMENT = "local"

# Only edit this file if there's a change that needs to apply to EVERYONE's
# local setup -- otherwise, please edit your local copy of `local_settings.py`,
# as that file will only apply to your specific local version.
LOGGING["loggers"]["archmetrics"]["level"] = os.getenv(  # noqa: F405
    "ARCHMETRICS_LOG_LEVEL", "DEBUG"
)
