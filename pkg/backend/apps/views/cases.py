"""
The eight contrastive-view cases, indexed by
(views equal?, receptive fields equal?, node pairs equal?).
"""

from typing import Dict, Optional, Tuple

from .schemas import ViewSpec

CASES: Dict[Tuple[bool, bool, bool], int] = {
    (True, True, True): 1,
    (False, True, True): 2,
    (True, False, True): 3,
    (False, False, True): 4,
    (True, True, False): 5,
    (True, False, False): 6,
    (False, True, False): 7,
    (False, False, False): 8,
}

ABBREVIATIONS = {
    1: "AAllvv",
    2: "ABllvv",
    3: "AAlrvv",
    4: "ABlrvv",
    5: "AAllvu",
    6: "AAlrvu",
    7: "ABllvu",
    8: "ABlrvu",
}

# Methods that realize each case; None marks a case without a known method.
IMPLEMENTATIONS = {
    1: "not applicable",
    2: "GCL",
    3: "GAE_f",
    4: "GraphMAE",
    5: "GAE / MaskGAE",
    6: None,
    7: None,
    8: None,
}

DEGENERATE_CASE = 1


def case_key(spec: ViewSpec, k: Optional[int] = None) -> Tuple[bool, bool, bool]:
    if k is not None:
        spec = spec.resolve(k)
    return spec.views_equal, spec.l == spec.r, spec.nodes_equal


def case_of(spec: ViewSpec, k: Optional[int] = None) -> int:
    """Case id 1..8. Pass the encoder depth `k` when l or r are symbolic."""
    return CASES[case_key(spec, k)]


def case_abbreviation(spec: ViewSpec, k: Optional[int] = None) -> str:
    return ABBREVIATIONS[case_of(spec, k)]
