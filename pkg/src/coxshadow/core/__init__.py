"""Coxeter systems, exact field arithmetic, group elements, walls and weak order."""

from .field import FieldElem, RealCyclotomicField, minimal_polynomial
from .group import CoxeterGroup, Elt, NoUpperBoundWithin, Wall, format_root, root_sign
from .system import INF, PRESETS, CoxeterSystem, SystemParseError, parse_system

__all__ = [
    "INF",
    "PRESETS",
    "CoxeterGroup",
    "CoxeterSystem",
    "Elt",
    "FieldElem",
    "NoUpperBoundWithin",
    "RealCyclotomicField",
    "SystemParseError",
    "Wall",
    "format_root",
    "minimal_polynomial",
    "parse_system",
    "root_sign",
]
