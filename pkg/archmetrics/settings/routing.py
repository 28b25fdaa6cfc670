# noqa: F401,F403

import logging
import os

# Route us to the correct settings file based on environment variables. Allows
# us to add another environment really easily.

logger = logging.getLogger("archmetrics")
env = os.environ.get("ARCHMETRICS_ENVIRONMENT", None)

if env == "local":
    from archmetrics.settings.local import *
elif env == "testing":
    from archmetrics.settings.testing import *
elif os.path.exists("local_settings.py"):
    # Local override -- check for existence of local_settings.py and load it if possible
    logger.warning("Found local_settings.py -- loading and using!")
    from local_settings import *
else:
    from archmetrics.settings.base import *
