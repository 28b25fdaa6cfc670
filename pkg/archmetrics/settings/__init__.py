"""The settings for archmetrics."""
from archmetrics.settings.routing import *  # noqa: F401,F403
