"""Closed vocabularies for traffic into and out of a triad.

Gestures are what a user does to a view; render commands are what a view is
told to show. Both sets are closed: parsing rejects anything else.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union

from .errors import GestureError
from .values import PropertyValue, Snapshot, canonical_json

COMMANDS = (
    "open", "commit", "cancel", "close", "next_page", "prev_page", "new_window",
    "yes", "no", "retry", "abort", "ignore", "save",
)

SAVE_CHANGES = "SaveChanges"
ABORT_RETRY_IGNORE = "AbortRetryIgnore"
PROMPT_OPTIONS = {
    SAVE_CHANGES: ("yes", "no", "cancel"),
    ABORT_RETRY_IGNORE: ("abort", "retry", "ignore"),
}


# -- gestures ---------------------------------------------------------------

@dataclass(frozen=True)
class Key:
    char: str

    verb = "key"

    def __post_init__(self) -> None:
        if len(self.char) != 1:
            raise GestureError(f"Key takes one character, got {self.char!r}")

    def to_record(self) -> dict:
        return {"type": "Key", "char": self.char}


@dataclass(frozen=True)
class Edit:
    property: str
    raw: str

    verb = "edit"

    def to_record(self) -> dict:
        return {"type": "Edit", "property": self.property, "raw": self.raw}


@dataclass(frozen=True)
class Focus:
    property: str

    verb = "focus"

    def to_record(self) -> dict:
        return {"type": "Focus", "property": self.property}


@dataclass(frozen=True)
class Command:
    name: str

    def __post_init__(self) -> None:
        if self.name not in COMMANDS:
            raise GestureError(f"unknown command {self.name!r}")

    @property
    def verb(self) -> str:
        return self.name

    def to_record(self) -> dict:
        return {"type": "Command", "name": self.name}


Gesture = Union[Key, Edit, Focus, Command]


def parse_gesture(text: str) -> Gesture:
    """Parse the line syntax used by scenario files and interactive mode.

    ``key 3``, ``edit A1 =()``, ``focus A1`` or a bare command name.
    """
    line = text.strip()
    if not line:
        raise GestureError("empty gesture")
    head, _, rest = line.partition(" ")
    if head == "key":
        # keep the raw remainder so "key  " types a space
        char = text.lstrip()[4:] if len(text.lstrip()) > 4 else ""
        return Key(char)
    if head == "edit":
        prop, _, raw = rest.partition(" ")
        if not prop:
            raise GestureError("edit needs a property name")
        return Edit(prop, raw)
    if head == "focus":
        if not rest.strip():
            raise GestureError("focus needs a property name")
        return Focus(rest.strip())
    if rest:
        raise GestureError(f"unexpected text after {head!r}")
    return Command(head)


def gesture_from_record(record: dict) -> Gesture:
    kind = record.get("type")
    try:
        if kind == "Key":
            return Key(record["char"])
        if kind == "Edit":
            return Edit(record["property"], record["raw"])
        if kind == "Focus":
            return Focus(record["property"])
        if kind == "Command":
            return Command(record["name"])
    except KeyError as exc:
        raise GestureError(f"gesture record missing {exc}") from None
    raise GestureError(f"unknown gesture type {kind!r}")


# -- render commands --------------------------------------------------------

@dataclass(frozen=True)
class SetText:
    property: str
    text: str

    def to_record(self) -> dict:
        return {"type": "SetText", "property": self.property, "text": self.text}


@dataclass(frozen=True)
class SetCharAt:
    property: str
    position: int
    char: str

    def __post_init__(self) -> None:
        if self.position < 0:
            raise ValueError("SetCharAt position must be >= 0")

    def to_record(self) -> dict:
        return {"type": "SetCharAt", "property": self.property,
                "position": self.position, "char": self.char}


@dataclass(frozen=True)
class ShowError:
    message: str

    def to_record(self) -> dict:
        return {"type": "ShowError", "message": self.message}


@dataclass(frozen=True)
class ShowBusy:
    busy: bool

    def to_record(self) -> dict:
        return {"type": "ShowBusy", "busy": self.busy}


@dataclass(frozen=True)
class ShowPage:
    rows: tuple[Snapshot, ...]
    page: int
    pages: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "rows", tuple(self.rows))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ShowPage):
            return NotImplemented
        return (self.page, self.pages) == (other.page, other.pages) and len(self.rows) == len(
            other.rows
        ) and all(a.same_data(b) for a, b in zip(self.rows, other.rows))

    __hash__ = None  # type: ignore[assignment]

    def to_record(self) -> dict:
        return {"type": "ShowPage", "rows": [r.rows_record() for r in self.rows],
                "page": self.page, "pages": self.pages}


@dataclass(frozen=True)
class Prompt:
    kind: str
    options: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if self.kind not in PROMPT_OPTIONS:
            raise ValueError(f"unknown prompt kind {self.kind!r}")
        expected = PROMPT_OPTIONS[self.kind]
        opts = tuple(self.options) or expected
        if opts != expected:
            raise ValueError(f"{self.kind} options must be {list(expected)}")
        object.__setattr__(self, "options", opts)

    def to_record(self) -> dict:
        return {"type": "Prompt", "kind": self.kind, "options": list(self.options)}


@dataclass(frozen=True)
class SelectRange:
    property: str
    start: int
    end: int

    def __post_init__(self) -> None:
        if not 0 <= self.start <= self.end:
            raise ValueError("SelectRange needs 0 <= start <= end")

    def to_record(self) -> dict:
        return {"type": "SelectRange", "property": self.property,
                "start": self.start, "end": self.end}


@dataclass(frozen=True)
class Detach:
    view: str

    def to_record(self) -> dict:
        return {"type": "Detach", "view": self.view}


RenderCommand = Union[SetText, SetCharAt, ShowError, ShowBusy, ShowPage, Prompt, SelectRange, Detach]
RENDER_TYPES = (SetText, SetCharAt, ShowError, ShowBusy, ShowPage, Prompt, SelectRange, Detach)
# renders that carry model data; Active View forbids these on Controller->View
DATA_RENDERS = ("SetText", "SetCharAt", "ShowPage", "SelectRange")


def render_name(cmd: RenderCommand) -> str:
    return type(cmd).__name__


# -- model-side payloads ----------------------------------------------------

@dataclass(frozen=True)
class Change:
    """Change notification broadcast by a model after a mutation."""

    property: str
    old: PropertyValue
    new: PropertyValue
    revision: int

    def to_record(self) -> dict:
        return {"type": "Change", "property": self.property, "old": self.old.to_record(),
                "new": self.new.to_record(), "revision": self.revision}


@dataclass(frozen=True)
class PortCall:
    """Arguments of a call made through a model port, kept for the audit."""

    name: str
    args: tuple = field(default=())

    def to_record(self) -> dict:
        return {"type": "PortCall", "name": self.name, "args": [_arg(a) for a in self.args]}


def _arg(value: object) -> object:
    if hasattr(value, "to_record"):
        return value.to_record()
    if isinstance(value, (list, tuple)):
        return [_arg(v) for v in value]
    return value


def payload_record(payload: object) -> object:
    if payload is None:
        return None
    if hasattr(payload, "to_record"):
        return payload.to_record()
    raise TypeError(f"payload {payload!r} has no canonical form")


def canonical(payload: object) -> str:
    return canonical_json(payload_record(payload))
