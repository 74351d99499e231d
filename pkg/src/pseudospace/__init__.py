"""Finite fragments of free N-pseudospaces and their zigzag calculus."""

from .errors import ContractError, InputError, NotSimplyConnected, PseudospaceError
from .order import BOTTOM, TOP, Geometry, is_lattice, join, meet, open_interval, validate_geometry

__all__ = [
    "BOTTOM", "TOP", "ContractError", "Geometry", "InputError", "NotSimplyConnected",
    "PseudospaceError", "is_lattice", "join", "meet", "open_interval", "validate_geometry",
]
