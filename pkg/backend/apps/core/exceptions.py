"""
Exception hierarchy shared by every lrgae app.
"""

from typing import Optional, Sequence


class LrgaeError(Exception):
    """Base class for all errors raised by the engine."""


class DimensionError(LrgaeError, ValueError):
    """Operand shapes are incompatible."""

    def __init__(self, op: str, *shapes: Sequence[int]):
        self.op = op
        self.shapes = tuple(tuple(s) for s in shapes)
        rendered = " vs ".join(f"{s[0]}x{s[1]}" if len(s) == 2 else str(s) for s in self.shapes)
        super().__init__(f"{op}: incompatible shapes {rendered}")


class DomainError(LrgaeError, ValueError):
    """Input lies outside the mathematical domain of an operation."""


class IndexRangeError(LrgaeError, IndexError):
    """Row or layer index outside the valid range."""


class ContractError(LrgaeError, ValueError):
    """A documented precondition does not hold."""


class ConfigError(LrgaeError, ValueError):
    """Configuration is inconsistent; `field_path` points at the offending field."""

    def __init__(self, field_path: str, message: str):
        self.field_path = field_path
        self.message = message
        super().__init__(f"{field_path}: {message}")


class CapacityError(LrgaeError):
    """Graph is too small for the requested sampling."""


class DatasetError(LrgaeError):
    """Base class for dataset directory problems."""


class DatasetParseError(DatasetError, ValueError):
    def __init__(self, filename: str, line: int, message: str):
        self.filename = filename
        self.line = line
        super().__init__(f"{filename}:{line}: {message}")


class DatasetValidationError(DatasetError, ValueError):
    pass


class TrainingError(LrgaeError, RuntimeError):
    """Training diverged (NaN gradient or non-finite loss)."""

    def __init__(self, message: str, epoch: Optional[int] = None, parameter: Optional[str] = None):
        self.epoch = epoch
        self.parameter = parameter
        super().__init__(message)


class ExperimentError(LrgaeError, RuntimeError):
    """A seed of an experiment failed; wraps the underlying error."""

    def __init__(self, seed: int, cause: Exception):
        self.seed = seed
        self.epoch = getattr(cause, "epoch", None)
        self.cause = cause
        where = f"seed {seed}" + (f", epoch {self.epoch}" if self.epoch is not None else "")
        super().__init__(f"{where}: {cause.__class__.__name__}: {cause}")
