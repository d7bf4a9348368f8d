"""Primitivity tests and automaton counts for Cauchon diagrams."""

from .automata import (
    Dfa,
    Recurrence,
    build_cauchon_dfa,
    build_image_dfa,
    count_sequence,
    count_words,
    find_recurrence,
    intersect,
    primitive_cauchon_dfa,
)
from .diagram import Diagram, DiagramError, DiagramParseError, is_cauchon, parse_diagram
from .excess_algebra import diagram_image, is_primitive_fast, pfaffian_mod3
from .pfaffian import is_primitive_oracle, pfaffian_decompositions, pfaffian_matchings
from .rep3 import closed_form_P3, h_image, is_primitive_s4

__version__ = "0.1.0"

__all__ = [
    "Diagram", "DiagramError", "DiagramParseError", "Dfa", "Recurrence",
    "build_cauchon_dfa", "build_image_dfa", "closed_form_P3", "count_sequence",
    "count_words", "diagram_image", "find_recurrence", "h_image", "intersect",
    "is_cauchon", "is_primitive_fast", "is_primitive_oracle", "is_primitive_s4",
    "parse_diagram", "pfaffian_decompositions", "pfaffian_matchings", "pfaffian_mod3",
    "primitive_cauchon_dfa",
]
