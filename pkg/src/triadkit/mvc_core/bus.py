"""The instrumented message bus every cross-component message travels on.

Components never talk to each other without first posting an envelope here.
The bus stamps each envelope with the current virtual tick and a global
sequence number, refuses forbidden edges, and keeps the full log that the
flow auditor aggregates.
"""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Callable

from .errors import ForbiddenEdge
from .messages import RenderCommand, canonical, render_name


class Kind(str, Enum):
    CONTROLLER = "Controller"
    VIEW = "View"
    MODEL = "Model"
    SERVICE = "Service"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class EventEnvelope:
    tick: int
    seq: int
    source: str
    target: str
    verb: str
    mutating: bool
    payload: Any
    source_kind: Kind
    target_kind: Kind

    def line(self) -> str:
        return f"{self.tick} {self.seq} {self.source}->{self.target} {self.verb} {canonical(self.payload)}"


@dataclass(frozen=True)
class Diagnostic:
    tick: int
    kind: str
    source: str
    detail: str


@dataclass(frozen=True)
class ScreenEntry:
    """One render command as it reached a view's screen."""

    tick: int
    seq: int  # seq of the envelope that caused it
    view: str
    command: RenderCommand


class VirtualClock:
    def __init__(self) -> None:
        self.now = 0


class Scheduler:
    """Timed callbacks ordered by (due tick, scheduling order)."""

    def __init__(self, clock: VirtualClock) -> None:
        self.clock = clock
        self._heap: list[tuple[int, int, Callable[[], Any]]] = []
        self._order = itertools.count()

    def at(self, due: int, action: Callable[[], Any]) -> None:
        if due < self.clock.now:
            raise ValueError("cannot schedule in the past")
        heapq.heappush(self._heap, (due, next(self._order), action))

    def pending(self) -> int:
        return len(self._heap)

    def next_due(self) -> int | None:
        return self._heap[0][0] if self._heap else None

    def advance(self, n: int) -> list[Any]:
        """Move the clock forward ``n`` ticks, running everything due in (now, now+n]."""
        if n < 1:
            raise ValueError("tick count must be >= 1")
        end = self.clock.now + n
        results = []
        while self._heap and self._heap[0][0] <= end:
            due, _, action = heapq.heappop(self._heap)
            self.clock.now = max(self.clock.now, due)
            results.append(action())
        self.clock.now = end
        return results


class Bus:
    def __init__(self, clock: VirtualClock, diagnostics: "Diagnostics") -> None:
        self.clock = clock
        self.diagnostics = diagnostics
        self.log: list[EventEnvelope] = []
        self.rejected: list[ForbiddenEdge] = []
        self._kinds: dict[str, Kind] = {}
        self._forbidden: dict[tuple[str, str], str] = {}
        self._seq = itertools.count(1)

    def register(self, component_id: str, kind: Kind) -> None:
        if component_id in self._kinds:
            raise ValueError(f"component id {component_id!r} already registered")
        self._kinds[component_id] = Kind(kind)

    def kind_of(self, component_id: str) -> Kind:
        return self._kinds[component_id]

    def forbid(self, source: str, target: str, reason: str) -> None:
        """Refuse every future message from ``source`` to ``target``."""
        self._forbidden[(source, target)] = reason

    def post(self, source: str, target: str, verb: str, payload: Any = None,
             *, mutating: bool = False) -> EventEnvelope:
        src_kind = self._kinds[source]
        tgt_kind = self._kinds[target]
        reason = self._forbidden.get((source, target))
        if reason is None and mutating and src_kind is Kind.VIEW and tgt_kind is Kind.MODEL:
            reason = "views may not call model mutators"
        if reason is not None:
            err = ForbiddenEdge(source, target, verb, reason)
            self.rejected.append(err)
            self.diagnostics.report("ForbiddenEdge", source, str(err))
            raise err
        env = EventEnvelope(self.clock.now, next(self._seq), source, target, verb,
                            mutating, payload, src_kind, tgt_kind)
        self.log.append(env)
        return env

    def transcript(self) -> list[str]:
        return [env.line() for env in self.log]


class Diagnostics:
    """Side channel for problems that must never reach a view."""

    def __init__(self, clock: VirtualClock) -> None:
        self.clock = clock
        self.records: list[Diagnostic] = []

    def report(self, kind: str, source: str, detail: str) -> None:
        self.records.append(Diagnostic(self.clock.now, kind, source, detail))

    def of_kind(self, kind: str) -> list[Diagnostic]:
        return [r for r in self.records if r.kind == kind]


@dataclass
class Runtime:
    """One logical execution context: clock, bus, diagnostics, services."""

    clock: VirtualClock = field(default_factory=VirtualClock)

    def __post_init__(self) -> None:
        self.diagnostics = Diagnostics(self.clock)
        self.bus = Bus(self.clock, self.diagnostics)
        self.scheduler = Scheduler(self.clock)
        self.screen_log: list[ScreenEntry] = []
        self.services: dict[str, Any] = {}
        self.components: dict[str, Any] = {}
        self._triad_ids = itertools.count(1)

    @property
    def now(self) -> int:
        return self.clock.now

    def next_triad_id(self) -> str:
        while True:
            tid = f"t{next(self._triad_ids)}"
            if not any(c.startswith(tid + ".") for c in self.components):
                return tid

    def add(self, component: Any) -> None:
        self.bus.register(component.id, component.kind)
        self.components[component.id] = component

    def tick(self, n: int = 1) -> list[Any]:
        results = self.scheduler.advance(n)
        return [r for r in results if r is not None]

    def transcript(self) -> list[str]:
        """Bus lines, each followed by the renders views drew on their own.

        A view that draws from a Change or a read of the model shows up as
        ``view->screen``; renders delivered by envelope are already listed.
        """
        caused: dict[int, list[ScreenEntry]] = {}
        for entry in self.screen_log:
            caused.setdefault(entry.seq, []).append(entry)
        lines = []
        for env in self.bus.log:
            lines.append(env.line())
            for entry in caused.get(env.seq, ()):
                name = render_name(entry.command)
                if entry.view == env.target and name == env.verb:
                    continue
                lines.append(f"{entry.tick} {entry.seq} {entry.view}->screen {name} "
                             f"{canonical(entry.command)}")
        return lines

    def run_until_idle(self, limit: int = 10_000) -> int:
        """Tick until nothing is scheduled; returns ticks spent."""
        spent = 0
        while self.scheduler.pending():
            due = self.scheduler.next_due()
            step = max(1, due - self.clock.now)
            self.tick(step)
            spent += step
            if spent > limit:
                raise RuntimeError("scheduler did not go idle")
        return spent
