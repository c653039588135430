"""Finitely presented groups: words, presentations, certified Tietze moves,
abelian invariants and homomorphism counts."""

from .abelian import SnfResult, invariants, smith_normal_form
from .homcount import FiniteGroup, builtin_group, count_homomorphisms
from .presentation import Presentation, equal_canonical, load_presentation, parse_presentation
from .search import SearchBudget, Unknown, derive
from .tietze import Certificate, evaluate_certificate, load_script, replay_script
from .word import Word, parse_word

__version__ = "0.1.0"

__all__ = [
    "Certificate", "FiniteGroup", "Presentation", "SearchBudget", "SnfResult", "Unknown", "Word",
    "builtin_group", "count_homomorphisms", "derive", "equal_canonical", "evaluate_certificate",
    "invariants", "load_presentation", "load_script", "parse_presentation", "parse_word",
    "replay_script", "smith_normal_form",
]
