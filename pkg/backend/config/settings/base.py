"""
Runtime settings for lrgae, read from the environment and an optional .env file.
"""

from pathlib import Path

import environ

# Initialize environment variables
env = environ.Env()

# backend/
BASE_DIR = Path(__file__).resolve().parent.parent.parent

env_file = BASE_DIR / ".env"
if env_file.exists():
    environ.Env.read_env(env_file)

# Parallel seed execution cap for `lrgae run`
LRGAE_THREADS = env.int("LRGAE_THREADS", default=1)

# tqdm progress bar over pretraining epochs
LRGAE_PROGRESS = env.bool("LRGAE_PROGRESS", default=False)

# Ten runs per configuration unless a config lists its own seeds
DEFAULT_SEEDS = list(range(10))

LOG_LEVEL = env.str("LRGAE_LOG_LEVEL", default="INFO")
LOG_FILE = env.str("LRGAE_LOG_FILE", default="")

# Logging
LOGGING = {
    "version": 1,
    "disable_existing_loggers": False,
    "formatters": {
        "verbose": {
            "format": "{levelname} {asctime} {name} {process:d} {thread:d} {message}",
            "style": "{",
        },
        "simple": {
            "format": "{levelname} {message}",
            "style": "{",
        },
    },
    "handlers": {
        "console": {
            "class": "logging.StreamHandler",
            "formatter": "simple",
        },
    },
    "loggers": {
        "apps": {
            "handlers": ["console"],
            "level": LOG_LEVEL,
            "propagate": False,
        },
    },
}

if LOG_FILE:
    LOGGING["handlers"]["file"] = {
        "class": "logging.FileHandler",
        "filename": LOG_FILE,
        "formatter": "verbose",
    }
    LOGGING["loggers"]["apps"]["handlers"].append("file")

# Sentry (when configured)
SENTRY_DSN = env.str("SENTRY_DSN", default="")
