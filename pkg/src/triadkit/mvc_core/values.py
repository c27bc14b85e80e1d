"""Scalar property values and the Snapshot property bag."""

from __future__ import annotations

import hashlib
import json
import re
from dataclasses import dataclass, field
from typing import Iterator, Union

VALUE_KINDS = ("text", "integer", "decimal", "flag")
MAX_SCALE = 6


@dataclass(frozen=True)
class Text:
    text: str

    kind = "text"

    def display(self) -> str:
        return self.text

    def to_record(self) -> dict:
        return {"text": self.text}


@dataclass(frozen=True)
class Integer:
    value: int

    kind = "integer"

    def display(self) -> str:
        return str(self.value)

    def to_record(self) -> dict:
        return {"int": self.value}


@dataclass(frozen=True, eq=False)
class Decimal:
    """Fixed-point number: ``mantissa * 10**-scale``."""

    mantissa: int
    scale: int = 0

    kind = "decimal"

    def __post_init__(self) -> None:
        if not 0 <= self.scale <= MAX_SCALE:
            raise ValueError(f"decimal scale must be in [0, {MAX_SCALE}], got {self.scale}")

    def rescaled(self, scale: int) -> int:
        if scale < self.scale:
            raise ValueError("cannot rescale to a smaller scale")
        return self.mantissa * 10 ** (scale - self.scale)

    def _key(self) -> int:
        return self.rescaled(MAX_SCALE)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Decimal):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self) -> int:
        return hash(("decimal", self._key()))

    def display(self) -> str:
        sign = "-" if self.mantissa < 0 else ""
        digits = str(abs(self.mantissa))
        if self.scale == 0:
            return sign + digits
        digits = digits.rjust(self.scale + 1, "0")
        return f"{sign}{digits[:-self.scale]}.{digits[-self.scale:]}"

    def to_record(self) -> dict:
        return {"dec": self.display()}


@dataclass(frozen=True)
class Flag:
    value: bool

    kind = "flag"

    def display(self) -> str:
        return "true" if self.value else "false"

    def to_record(self) -> dict:
        return {"flag": self.value}


class _AbsentType:
    __slots__ = ()
    kind = "absent"
    _instance: "_AbsentType | None" = None

    def __new__(cls) -> "_AbsentType":
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "Absent"

    def __reduce__(self):
        return (_AbsentType, ())

    def display(self) -> str:
        return ""

    def to_record(self) -> dict:
        return {"absent": True}


Absent = _AbsentType()

PropertyValue = Union[Text, Integer, Decimal, Flag, _AbsentType]


class ValueParseError(ValueError):
    """Raw user text cannot be read as the property's kind."""


_INT_RE = re.compile(r"[+-]?\d+")
_DEC_RE = re.compile(r"([+-]?)(\d+)(?:\.(\d{1,6}))?")
_FLAGS = {"true": True, "yes": True, "1": True, "false": False, "no": False, "0": False}


def parse_value(kind: str, raw: str) -> PropertyValue:
    """Read raw input text as a value of ``kind``; empty text is Absent."""
    if raw == "":
        return Absent
    if kind == "text":
        return Text(raw)
    stripped = raw.strip()
    if kind == "integer":
        if not _INT_RE.fullmatch(stripped):
            raise ValueParseError(f"{raw!r} is not a whole number")
        return Integer(int(stripped))
    if kind == "decimal":
        m = _DEC_RE.fullmatch(stripped)
        if not m:
            raise ValueParseError(f"{raw!r} is not a decimal number")
        sign, whole, frac = m.groups()
        frac = frac or ""
        mantissa = int(whole + frac) * (-1 if sign == "-" else 1)
        return Decimal(mantissa, len(frac))
    if kind == "flag":
        try:
            return Flag(_FLAGS[stripped.lower()])
        except KeyError:
            raise ValueParseError(f"{raw!r} is not a yes/no value") from None
    raise ValueError(f"unknown value kind {kind!r}")


def value_from_record(record: dict) -> PropertyValue:
    if "text" in record:
        return Text(record["text"])
    if "int" in record:
        return Integer(int(record["int"]))
    if "dec" in record:
        return parse_value("decimal", str(record["dec"]))
    if "flag" in record:
        return Flag(bool(record["flag"]))
    if record.get("absent"):
        return Absent
    raise ValueError(f"not a value record: {record!r}")


def coerce(value: object) -> PropertyValue:
    """Accept plain Python scalars where a PropertyValue is expected."""
    if isinstance(value, (Text, Integer, Decimal, Flag, _AbsentType)):
        return value
    if value is None:
        return Absent
    if isinstance(value, bool):
        return Flag(value)
    if isinstance(value, int):
        return Integer(value)
    if isinstance(value, str):
        return Text(value)
    raise TypeError(f"cannot use {type(value).__name__} as a property value")


def canonical_json(record: object) -> str:
    return json.dumps(record, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


@dataclass
class Snapshot:
    """The model's exposed property bag.

    ``entries`` keeps insertion order; ``dirty`` names properties changed since
    the last commit; ``revision`` increases on every accepted mutation.
    """

    entries: dict[str, PropertyValue] = field(default_factory=dict)
    dirty: set[str] = field(default_factory=set)
    revision: int = 0

    @classmethod
    def of(cls, values: dict[str, object] | None = None, **kw: object) -> "Snapshot":
        merged = dict(values or {}, **kw)
        return cls({k: coerce(v) for k, v in merged.items()})

    def __getitem__(self, name: str) -> PropertyValue:
        return self.entries[name]

    def __contains__(self, name: object) -> bool:
        return name in self.entries

    def __iter__(self) -> Iterator[str]:
        return iter(self.entries)

    def get(self, name: str) -> PropertyValue:
        return self.entries.get(name, Absent)

    def copy(self) -> "Snapshot":
        return Snapshot(dict(self.entries), set(self.dirty), self.revision)

    def replaced(self, changes: dict[str, PropertyValue]) -> "Snapshot":
        """Candidate snapshot with ``changes`` applied; revision untouched."""
        out = self.copy()
        for name, value in changes.items():
            if name not in out.entries:
                raise KeyError(name)
            out.entries[name] = value
        return out

    def to_record(self) -> dict:
        return {
            "entries": [[k, v.to_record()] for k, v in self.entries.items()],
            "dirty": sorted(self.dirty),
            "revision": self.revision,
        }

    def rows_record(self) -> list:
        return [[k, v.to_record()] for k, v in self.entries.items()]

    def digest(self) -> str:
        return hashlib.sha256(canonical_json(self.to_record()).encode()).hexdigest()

    def same_data(self, other: "Snapshot") -> bool:
        return list(self.entries.items()) == list(other.entries.items())
