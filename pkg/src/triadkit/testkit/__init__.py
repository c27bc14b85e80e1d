"""View doubles, flow audits, conformance tables and scenario replay."""

from .audit import Edge, FlowReport, PromptRecord, TrailEntry, audit
from .conformance import FORBIDDEN, ConformanceViolation, UnknownPattern, check_conformance
from .doubles import BadScript, HostileCall, ViewDouble, make_view_double
from .fuzz import FuzzRun, random_session
from .replay import replay

__all__ = [
    "Edge", "FlowReport", "PromptRecord", "TrailEntry", "audit", "FORBIDDEN", "ConformanceViolation",
    "UnknownPattern", "check_conformance", "BadScript", "HostileCall", "ViewDouble",
    "make_view_double", "FuzzRun", "random_session", "replay",
]
