"""Elementary walls, Shi parts, cone type parts and Garside shadows of Coxeter groups."""

from .automata import Dfa, brink_howlett, equivalent, minimize, word_growth
from .conetype import ConeTypePartition
from .core import CoxeterGroup, CoxeterSystem, Elt, NoUpperBoundWithin, Wall, parse_system
from .oracle import Ball, build_ball
from .roots import RootSystem, small_roots
from .shi import ShiPartition, verify_shadow

__version__ = "0.1.0"

__all__ = [
    "Ball",
    "ConeTypePartition",
    "CoxeterGroup",
    "CoxeterSystem",
    "Dfa",
    "Elt",
    "NoUpperBoundWithin",
    "RootSystem",
    "ShiPartition",
    "Wall",
    "brink_howlett",
    "build_ball",
    "equivalent",
    "minimize",
    "parse_system",
    "small_roots",
    "verify_shadow",
    "word_growth",
]
