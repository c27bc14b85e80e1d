"""Declarative rules and the pure evaluator shared by closed and open models."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence, Union

from ..mvc_core.errors import SchemaError
from ..mvc_core.values import Absent, Decimal, Integer, Snapshot, Text

RELATIONS = {"<": "<", "<=": "<=", "≤": "<=", "=": "=", "==": "=", "!=": "!=", "≠": "!="}


@dataclass(frozen=True)
class Required:
    property: str

    def properties(self) -> tuple[str, ...]:
        return (self.property,)

    def to_record(self) -> dict:
        return {"type": "Required", "property": self.property}


@dataclass(frozen=True)
class IntRange:
    property: str
    min: int
    max: int

    def __post_init__(self) -> None:
        if self.min > self.max:
            raise ValueError(f"IntRange min {self.min} > max {self.max}")

    def properties(self) -> tuple[str, ...]:
        return (self.property,)

    def to_record(self) -> dict:
        return {"type": "IntRange", "property": self.property, "min": self.min, "max": self.max}


@dataclass(frozen=True)
class TextPattern:
    property: str
    mask: str

    def properties(self) -> tuple[str, ...]:
        return (self.property,)

    def to_record(self) -> dict:
        return {"type": "TextPattern", "property": self.property, "mask": self.mask}


@dataclass(frozen=True)
class CrossField:
    left: str
    relation: str
    right: str

    def __post_init__(self) -> None:
        if self.relation not in RELATIONS:
            raise ValueError(f"unknown relation {self.relation!r}")
        object.__setattr__(self, "relation", RELATIONS[self.relation])

    def properties(self) -> tuple[str, ...]:
        return (self.left, self.right)

    def to_record(self) -> dict:
        return {"type": "CrossField", "left": self.left, "relation": self.relation,
                "right": self.right}


@dataclass(frozen=True)
class FormulaWellFormed:
    property: str

    def properties(self) -> tuple[str, ...]:
        return (self.property,)

    def to_record(self) -> dict:
        return {"type": "FormulaWellFormed", "property": self.property}


Rule = Union[Required, IntRange, TextPattern, CrossField, FormulaWellFormed]


def rule_from_record(record: dict) -> Rule:
    kind = record.get("type")
    try:
        if kind == "Required":
            return Required(record["property"])
        if kind == "IntRange":
            return IntRange(record["property"], int(record["min"]), int(record["max"]))
        if kind == "TextPattern":
            return TextPattern(record["property"], record["mask"])
        if kind == "CrossField":
            return CrossField(record["left"], record["relation"], record["right"])
        if kind == "FormulaWellFormed":
            return FormulaWellFormed(record["property"])
    except KeyError as exc:
        raise ValueError(f"rule record missing {exc}") from None
    raise ValueError(f"unknown rule type {kind!r}")


@dataclass(frozen=True)
class Violation:
    rule_index: int
    properties: tuple[str, ...]
    message: str

    def to_record(self) -> dict:
        return {"rule": self.rule_index, "properties": list(self.properties),
                "message": self.message}


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...]
    revision: int

    @property
    def clean(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        # truthy when there is something to report
        return bool(self.violations)

    def summary(self) -> str:
        return "; ".join(v.message for v in self.violations)

    def to_record(self) -> dict:
        return {"type": "ValidationReport", "revision": self.revision,
                "violations": [v.to_record() for v in self.violations]}


def check_ruleset(ruleset: Iterable[Rule], schema: Sequence[str]) -> None:
    names = set(schema)
    for i, rule in enumerate(ruleset):
        for prop in rule.properties():
            if prop not in names:
                raise SchemaError(f"rule {i} ({type(rule).__name__}) references unknown property {prop!r}")


# -- individual checks ------------------------------------------------------

def mask_accepts(slot: str, ch: str) -> bool:
    """Whether input character ``ch`` may fill mask slot ``slot``."""
    if slot == "#":
        return "0" <= ch <= "9"
    if slot == "A":
        return ("a" <= ch <= "z") or ("A" <= ch <= "Z")
    if slot == "*":
        return ch.isprintable()
    return False


def is_slot(mask_char: str) -> bool:
    return mask_char in "#A*"


def matches_mask(text: str, mask: str) -> bool:
    if len(text) != len(mask):
        return False
    for m, ch in zip(mask, text):
        if is_slot(m):
            if not mask_accepts(m, ch):
                return False
        elif m != ch:
            return False
    return True


def formula_ok(text: str) -> bool:
    """Balanced parentheses, no empty group, non-empty body after '='.

    Text that does not start with '=' is not a formula and passes.
    """
    if not text.startswith("="):
        return True
    body = text[1:]
    if not body.strip():
        return False
    stack: list[int] = []
    for i, ch in enumerate(body):
        if ch == "(":
            stack.append(i)
        elif ch == ")":
            if not stack:
                return False
            start = stack.pop()
            if not body[start + 1:i].strip():
                return False
    return not stack


def _number(value):
    if isinstance(value, Integer):
        return value.value, 0
    if isinstance(value, Decimal):
        return value.mantissa, value.scale
    return None


def _compare(left, right) -> int | None:
    ln, rn = _number(left), _number(right)
    if ln is not None and rn is not None:
        scale = max(ln[1], rn[1])
        a = ln[0] * 10 ** (scale - ln[1])
        b = rn[0] * 10 ** (scale - rn[1])
        return (a > b) - (a < b)
    if isinstance(left, Text) and isinstance(right, Text):
        return (left.text > right.text) - (left.text < right.text)
    return None


_REL = {"<": lambda c: c < 0, "<=": lambda c: c <= 0, "=": lambda c: c == 0, "!=": lambda c: c != 0}


def _check(rule: Rule, snap: Snapshot) -> str | None:
    if isinstance(rule, Required):
        if snap.get(rule.property) is Absent:
            return f"{rule.property} is required"
        return None
    if isinstance(rule, CrossField):
        left, right = snap.get(rule.left), snap.get(rule.right)
        if left is Absent or right is Absent:
            return None
        cmp = _compare(left, right)
        if cmp is None:
            return f"{rule.left} and {rule.right} cannot be compared"
        if not _REL[rule.relation](cmp):
            return f"{rule.left} must be {rule.relation} {rule.right}"
        return None
    value = snap.get(rule.property)
    if value is Absent:
        return None
    if isinstance(rule, IntRange):
        num = _number(value)
        if num is None:
            return f"{rule.property} must be a number"
        mantissa, scale = num
        lo, hi = rule.min * 10 ** scale, rule.max * 10 ** scale
        if not lo <= mantissa <= hi:
            return f"{rule.property} must be between {rule.min} and {rule.max}"
        return None
    if isinstance(rule, TextPattern):
        if not isinstance(value, Text) or not matches_mask(value.text, rule.mask):
            return f"{rule.property} must match {rule.mask}"
        return None
    if isinstance(rule, FormulaWellFormed):
        if isinstance(value, Text) and not formula_ok(value.text):
            return f"{rule.property}: invalid formula"
        return None
    raise TypeError(f"not a rule: {rule!r}")


def evaluate(snapshot: Snapshot, ruleset: Sequence[Rule]) -> ValidationReport:
    """Check every rule against ``snapshot``; never raises on bad data."""
    violations = []
    for index, rule in enumerate(ruleset):
        message = _check(rule, snapshot)
        if message is not None:
            violations.append(Violation(index, rule.properties(), message))
    return ValidationReport(tuple(violations), snapshot.revision)
