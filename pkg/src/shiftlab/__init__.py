"""shiftlab: subshifts of finite type, local maps and Garden-of-Eden experiments
over finitely right generated cell spaces."""

__version__ = "0.1.0"

from .cellspace import CellSet, CellSpace, ball, distance, get_space, semi_act, sphere
from .errors import ShiftlabError
from .localmap import LocalMap, LocalRule, apply_windowed, image_patterns, validate_rule
from .subshift import (
    Pattern,
    PatternSet,
    SubshiftSpec,
    enumerate_patterns,
    even_shift,
    golden_mean,
    interval,
    named_shift,
)

__all__ = [
    "CellSet",
    "CellSpace",
    "LocalMap",
    "LocalRule",
    "Pattern",
    "PatternSet",
    "ShiftlabError",
    "SubshiftSpec",
    "apply_windowed",
    "ball",
    "distance",
    "enumerate_patterns",
    "even_shift",
    "get_space",
    "golden_mean",
    "image_patterns",
    "interval",
    "named_shift",
    "semi_act",
    "sphere",
    "validate_rule",
]
