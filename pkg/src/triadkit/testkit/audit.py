"""Aggregate a bus log into a FlowReport."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable

from ..mvc_core.bus import Bus, EventEnvelope, Kind, Runtime
from ..mvc_core.errors import ForbiddenEdge
from ..mvc_core.messages import payload_record


@dataclass(frozen=True)
class Edge:
    source: Kind
    target: Kind
    verb: str
    mutating: bool
    count: int

    def __str__(self) -> str:
        flag = " (mutating)" if self.mutating else ""
        return f"{self.source}->{self.target} {self.verb}{flag} x{self.count}"


@dataclass(frozen=True)
class PromptRecord:
    seq: int
    source: str
    source_kind: Kind
    kind: str


@dataclass(frozen=True)
class TrailEntry:
    """A validate result or a commit on an open model, in bus order."""

    seq: int
    model: str
    action: str  # "report" or "commit"
    clean: bool | None = None


@dataclass
class FlowReport:
    edges: tuple[Edge, ...] = ()
    view_transcripts: dict[str, list[tuple[int, str, object]]] = field(default_factory=dict)
    prompts: tuple[PromptRecord, ...] = ()
    rejections: tuple[tuple[str, str, str, str], ...] = ()
    trail: tuple[TrailEntry, ...] = ()
    total: int = 0

    def count(self, source: Kind | str | None = None, target: Kind | str | None = None,
              verb: str | None = None, mutating: bool | None = None) -> int:
        n = 0
        for e in self.edges:
            if source is not None and e.source != Kind(source):
                continue
            if target is not None and e.target != Kind(target):
                continue
            if verb is not None and e.verb != verb:
                continue
            if mutating is not None and e.mutating != mutating:
                continue
            n += e.count
        return n


def _envelopes(run_log) -> tuple[list[EventEnvelope], list[ForbiddenEdge]]:
    if isinstance(run_log, Runtime):
        run_log = run_log.bus
    if isinstance(run_log, Bus):
        return list(run_log.log), list(run_log.rejected)
    return list(run_log), []


def audit(run_log: Runtime | Bus | Iterable[EventEnvelope]) -> FlowReport:
    """Pure aggregation of a run's bus log; same log, same report."""
    envelopes, rejected = _envelopes(run_log)
    counts: Counter = Counter()
    order: list[tuple] = []
    views: dict[str, list] = {}
    prompts, trail = [], []
    for env in envelopes:
        key = (env.source_kind, env.target_kind, env.verb, env.mutating)
        if key not in counts:
            order.append(key)
        counts[key] += 1
        if env.target_kind is Kind.VIEW:
            views.setdefault(env.target, []).append((env.seq, env.verb, payload_record(env.payload)))
        if env.verb == "Prompt":
            prompts.append(PromptRecord(env.seq, env.source, env.source_kind, env.payload.kind))
        if env.source_kind is Kind.MODEL and env.verb == "report":
            trail.append(TrailEntry(env.seq, env.source, "report", not env.payload.violations))
        if env.target_kind is Kind.MODEL and env.verb == "commit":
            trail.append(TrailEntry(env.seq, env.target, "commit"))
    edges = tuple(Edge(*key, counts[key]) for key in order)
    rejections = tuple((r.source, r.target, r.verb, r.reason) for r in rejected)
    return FlowReport(edges, views, tuple(prompts), rejections, tuple(trail), len(envelopes))
