"""Finite-scale toolkit for square sequences, walks on ordinals and narrow systems.

Modules: ``ordinal`` (Cantor normal form), ``ordsets`` (club-like sets),
``csequence`` (square variants and thread search), ``walks`` (Lambda and rho),
``systems`` (narrow systems and branches), ``derived`` (systems read off
names over finite posets), ``formats``, ``suites`` and ``cli``.
"""
from .ordinal import Ordinal, parse_ordinal
from .ordsets import OrdinalSet, Tail
from .report import ValidationReport, Violation

__all__ = ["Ordinal", "parse_ordinal", "OrdinalSet", "Tail", "ValidationReport", "Violation"]
__version__ = "0.1.0"
