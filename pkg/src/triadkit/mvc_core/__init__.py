"""Triad contracts, the instrumented bus, assembly and dispatch."""

from .bus import Bus, Diagnostic, EventEnvelope, Kind, Runtime, ScreenEntry, VirtualClock
from .components import (
    Controller, ControllerPort, Disposition, Model, PromptState, View, ViewReadPort, escalate, ports,
)
from .errors import (
    ForbiddenEdge, GestureError, PatternForbidsMultiView, RejectedMutation, SchemaError, TriadError,
    UnknownGesture, ViewNotBound, WiringError,
)
from .messages import (
    ABORT_RETRY_IGNORE, COMMANDS, SAVE_CHANGES, Change, Command, Detach, Edit, Focus, Key, Prompt,
    SelectRange, SetCharAt, SetText, ShowBusy, ShowError, ShowPage, parse_gesture,
)
from .triad import PATTERNS, TriadHandle, TriadSpec, assemble_triad, attach_view, dispatch
from .values import Absent, Decimal, Flag, Integer, Snapshot, Text, parse_value

__all__ = [
    "Bus", "Diagnostic", "EventEnvelope", "Kind", "Runtime", "ScreenEntry", "VirtualClock",
    "Controller", "ControllerPort", "Disposition", "Model", "PromptState", "View", "ViewReadPort",
    "escalate", "ports", "ForbiddenEdge", "GestureError", "PatternForbidsMultiView",
    "RejectedMutation", "SchemaError", "TriadError", "UnknownGesture", "ViewNotBound", "WiringError",
    "ABORT_RETRY_IGNORE", "COMMANDS", "SAVE_CHANGES", "Change", "Command", "Detach", "Edit", "Focus",
    "Key", "Prompt", "SelectRange", "SetCharAt", "SetText", "ShowBusy", "ShowError", "ShowPage",
    "parse_gesture", "PATTERNS", "TriadHandle", "TriadSpec", "assemble_triad", "attach_view",
    "dispatch", "Absent", "Decimal", "Flag", "Integer", "Snapshot", "Text", "parse_value",
]
