from .cases import case_abbreviation, case_of
from .pairs import (ContrastBatch, PairBatch, check_dimensions, left_right, resolve_decode_right,
                    supervision_pairs)
from .presets import PRESETS, Preset, preset, preset_names
from .schemas import ViewSpec

__all__ = [
    "ContrastBatch", "PairBatch", "PRESETS", "Preset", "ViewSpec",
    "case_abbreviation", "case_of", "check_dimensions", "left_right", "preset", "preset_names",
    "resolve_decode_right", "supervision_pairs",
]
