"""Lines, markings and W(D5)-actions on quartic del Pezzo surfaces and their cubic conic bundles."""

from .lattice import DP1, DP2, DP3, DP4, LatticeTag, PicClass, enumerate_lines
from .marking import CBMarking, DP4Marking, construction_StoX, construction_XtoS, cb_action, dp4_action
from .weyl import WeylElement, enumerate_group, generate_subgroup, parse_element

__version__ = "0.1.0"

__all__ = [
    "DP1",
    "DP2",
    "DP3",
    "DP4",
    "CBMarking",
    "DP4Marking",
    "LatticeTag",
    "PicClass",
    "WeylElement",
    "cb_action",
    "construction_StoX",
    "construction_XtoS",
    "dp4_action",
    "enumerate_group",
    "enumerate_lines",
    "generate_subgroup",
    "parse_element",
]
