"""Per-pattern responsibility tables checked against a FlowReport."""

from __future__ import annotations

from dataclasses import dataclass

from ..mvc_core.bus import Kind
from ..mvc_core.errors import TriadError
from ..mvc_core.messages import DATA_RENDERS
from .audit import FlowReport

C, V, M, S = Kind.CONTROLLER, Kind.VIEW, Kind.MODEL, Kind.SERVICE


class UnknownPattern(TriadError):
    pass


@dataclass(frozen=True)
class ConformanceViolation:
    pattern: str
    rule: str
    detail: str

    def __str__(self) -> str:
        return f"[{self.pattern}] {self.rule}: {self.detail}"


# (source, target, mutating-only)
FORBIDDEN: dict[str, tuple[tuple[Kind, Kind, bool], ...]] = {
    "passive_view": ((V, M, False), (M, V, False)),
    "closed_model": ((M, S, False), (S, M, False)),
    "open_model": (),
    "disconnected_model": ((M, S, False), (S, M, False), (V, S, False), (S, V, False)),
    "model_as_services_facade": ((C, S, False), (S, C, False)),
    "active_view": ((V, M, True),),
}


def check_conformance(report: FlowReport, pattern: str) -> list[ConformanceViolation]:
    if pattern not in FORBIDDEN:
        raise UnknownPattern(pattern)
    out: list[ConformanceViolation] = []

    def flag(rule: str, detail: str) -> None:
        out.append(ConformanceViolation(pattern, rule, detail))

    for edge in report.edges:
        for src, tgt, mutating_only in FORBIDDEN[pattern]:
            if edge.source == src and edge.target == tgt and (edge.mutating or not mutating_only):
                flag("forbidden edge", str(edge))

    for p in report.prompts:
        if p.source_kind is not Kind.CONTROLLER:
            flag("prompt provenance", f"{p.kind} prompt from {p.source} ({p.source_kind}) at seq {p.seq}")

    if pattern == "open_model":
        rejected = report.count(M, C, "rejected")
        if rejected:
            flag("mutator silence", f"{rejected} error returns from model mutators")
        last_clean: dict[str, bool] = {}
        for entry in report.trail:
            if entry.action == "report":
                last_clean[entry.model] = bool(entry.clean)
            elif not last_clean.get(entry.model, False):
                flag("commit gate", f"commit at seq {entry.seq} without a clean validation first")

    if pattern == "model_as_services_facade":
        strays = [e for e in report.edges
                  if e.source == S and e.verb == "fault" and e.target != M]
        for e in strays:
            flag("fault path", f"service fault delivered to {e.target}")
        into_model = report.count(S, M, "fault")
        to_controller = report.count(M, C, "fault")
        if into_model != to_controller:
            flag("fault path", f"{into_model} faults reached the model, {to_controller} the controller")

    if pattern == "active_view":
        for e in report.edges:
            if e.source == C and e.target == V and e.verb in DATA_RENDERS:
                flag("controller off the data path", str(e))
        if report.count(C, M, "set", True) and not report.count(M, V):
            flag("read path", "model changed but no Model->View notification was sent")
    return out
