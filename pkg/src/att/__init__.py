"""Axiomatic type theory: a checker whose computation rules are propositional
axioms, and a finite groupoid model that validates them."""
from .syntax import Judgment
from .parser import ParseError, parse, parse_document, parse_judgment, show
from .checker import CheckError, Checker, Derivation, check_judgment, defeq, explain, replay
from .groupoid import (FinGroupoid, GroupoidFunctor, NatIso, PseudoFunctor, Report,
                       SizeLimitError, functor_eq, max_size, set_max_size)
from .grothendieck import DisplayMap, SectionOf, reindex, total_groupoid
from .identity import IdStructure, build_id, j_elim
from .models import Model, load_model
from .interpret import check_soundness, interpret

__version__ = "0.1.0"

__all__ = [
    "Judgment", "ParseError", "parse", "parse_document", "parse_judgment", "show",
    "CheckError", "Checker", "Derivation", "check_judgment", "defeq", "explain", "replay",
    "FinGroupoid", "GroupoidFunctor", "NatIso", "PseudoFunctor", "Report", "SizeLimitError",
    "functor_eq", "max_size", "set_max_size", "DisplayMap", "SectionOf", "reindex",
    "total_groupoid", "IdStructure", "build_id", "j_elim", "Model", "load_model",
    "check_soundness", "interpret",
]
