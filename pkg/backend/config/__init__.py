import importlib
import os

DEFAULT_SETTINGS_MODULE = "config.settings.base"


def get_settings():
    """Return the settings module named by LRGAE_SETTINGS_MODULE."""
    return importlib.import_module(os.environ.get("LRGAE_SETTINGS_MODULE", DEFAULT_SETTINGS_MODULE))
