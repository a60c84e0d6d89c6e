"""Exact group-theoretic and matrix checks for a quaternionic s-cobordism construction."""

from .words import Word, render_word
from .presentations import Presentation, add_relators, simplify, simplify_with_map
from .parsing import parse_presentation, parse_word
from .cosets import EnumerationLimits, enumerate_cosets, group_order, index, verify_table
from .abelian import abelian_invariants, smith_normal_form, surgery_h1

__version__ = "0.1.0"

__all__ = [
    "Word", "render_word", "Presentation", "add_relators", "simplify", "simplify_with_map",
    "parse_presentation", "parse_word", "EnumerationLimits", "enumerate_cosets", "group_order",
    "index", "verify_table", "abelian_invariants", "smith_normal_form", "surgery_h1",
]
