"""Declarative rules shared by closed-model and open-model validation."""

from .mutation import mutate_closed, mutate_open, validate_open
from .rules import (
    CrossField, FormulaWellFormed, IntRange, Required, Rule, TextPattern, ValidationReport,
    Violation, evaluate, formula_ok, matches_mask, rule_from_record,
)

__all__ = [
    "mutate_closed", "mutate_open", "validate_open", "CrossField", "FormulaWellFormed", "IntRange",
    "Required", "Rule", "TextPattern", "ValidationReport", "Violation", "evaluate", "formula_ok",
    "matches_mask", "rule_from_record",
]
