"""Veech groups of origamis and congruence tests in SL(2, Z)."""

from ._kernels import BACKEND
from .origami import Origami, canonical_form, parse_origami, surface_genus, vertex_structure
from .sl2 import Mat, decompose_st, eval_word, mat
from .veech import VeechGroup, compute_veech, cusps, curve_invariants, general_level, member

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "Mat",
    "Origami",
    "VeechGroup",
    "canonical_form",
    "compute_veech",
    "curve_invariants",
    "cusps",
    "decompose_st",
    "eval_word",
    "general_level",
    "mat",
    "member",
    "parse_origami",
    "surface_genus",
    "vertex_structure",
]
