import logging
import logging.config
import zlib
from datetime import datetime, timezone
from typing import Dict, Optional

import numpy as np

logger = logging.getLogger(__name__)


class RngStreams:
    """
    Named, independently seeded random streams for one run.

    A stream is derived from (seed, crc32(name)) so adding a new stream never
    shifts the draws of an existing one.
    """

    def __init__(self, seed: int):
        self.seed = int(seed)
        self._streams: Dict[str, np.random.Generator] = {}

    def get(self, name: str) -> np.random.Generator:
        if name not in self._streams:
            self._streams[name] = self.fresh(self.seed, name)
        return self._streams[name]

    @staticmethod
    def fresh(seed: int, name: str) -> np.random.Generator:
        entropy = [int(seed), zlib.crc32(name.encode("utf-8"))]
        return np.random.default_rng(np.random.SeedSequence(entropy))


class ErrorHandler:
    """Error handling utilities."""

    @staticmethod
    def log_exception(exception: Exception, context: Optional[Dict] = None):
        """Log exception with context."""
        logger.error(f"Exception occurred: {exception.__class__.__name__}: {exception}")
        if context:
            logger.error(f"Context: {context}")


def configure_logging(settings) -> None:
    """Apply the LOGGING dictionary of the active settings module."""
    logging.config.dictConfig(settings.LOGGING)


def utc_timestamp() -> str:
    return datetime.now(timezone.utc).isoformat()
