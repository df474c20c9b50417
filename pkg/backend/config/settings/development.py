import copy

from .base import *

# Logging - more verbose in development
LOGGING = copy.deepcopy(LOGGING)
LOGGING['loggers']['apps']['level'] = 'DEBUG'

LRGAE_PROGRESS = True
