"""Deterministic in-memory services layer on the shared virtual clock."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from ..mvc_core.bus import Kind, Runtime
from ..mvc_core.components import Component
from ..mvc_core.values import Integer, Snapshot, canonical_json
from .requests import (
    CONCURRENCY_CONFLICT, CONNECTION_ERROR, FAULT_KINDS, Completion, EntityResult, Fault,
    FetchPage, LoadEntity, PageResult, Request, SaveAck, SaveEntity, ServiceEvent,
)

DEFAULT_LATENCY = {"FetchPage": 3, "LoadEntity": 3, "SaveEntity": 3}


@dataclass(frozen=True)
class FaultRule:
    """Turn matching request attempts into faults.

    A rule matches on request kind (``request``, None for any), on request
    fields (``where``), and then on the attempt number for the logical
    request: ``first`` faults attempts 1..first, ``attempts`` lists exact
    attempt numbers, ``rate`` faults each matching attempt with that
    probability drawn from the plan's seeded generator.
    """

    fault: str = CONNECTION_ERROR
    request: str | None = None
    where: tuple[tuple[str, object], ...] = ()
    first: int | None = None
    attempts: tuple[int, ...] = ()
    rate: float | None = None

    def __post_init__(self) -> None:
        if self.fault not in FAULT_KINDS:
            raise ValueError(f"unknown fault kind {self.fault!r}")
        if isinstance(self.where, dict):
            object.__setattr__(self, "where", tuple(sorted(self.where.items())))
        if self.rate is not None and not 0.0 <= self.rate <= 1.0:
            raise ValueError("fault rate must be in [0, 1]")
        if self.first is None and not self.attempts and self.rate is None:
            raise ValueError("fault rule needs first, attempts or rate")

    def selects(self, request: Request) -> bool:
        if self.request is not None and request.kind != self.request:
            return False
        record = request.to_record()
        return all(record.get(k) == v for k, v in self.where)


@dataclass
class ServicePlan:
    seed: int = 0
    latency: dict[str, int] = field(default_factory=lambda: dict(DEFAULT_LATENCY))
    faults: list[FaultRule] = field(default_factory=list)
    dataset: dict[str, list[Snapshot]] = field(default_factory=dict)

    def __post_init__(self) -> None:
        for kind, ticks in self.latency.items():
            if ticks < 0:
                raise ValueError(f"latency for {kind} must be >= 0")


@dataclass
class _Pending:
    request_id: int
    due: int
    requester: str
    request: Request
    fault: str | None


def request_key(request: Request) -> str:
    return canonical_json(request.to_record())


class ServiceSim(Component):
    """The services façade stand-in.

    Every terminal event is delivered exactly once, at ``submit tick +
    latency``, through the bus to the component that submitted it.
    """

    kind = Kind.SERVICE

    def __init__(self, runtime: Runtime, plan: ServicePlan | None = None, service_id: str = "svc") -> None:
        super().__init__(runtime, service_id)
        self.plan = plan or ServicePlan()
        self.rng = random.Random(self.plan.seed)
        self.tables: dict[str, list[Snapshot]] = {
            name: [row.copy() for row in rows] for name, rows in self.plan.dataset.items()
        }
        self.versions: dict[tuple[str, int], int] = {
            (name, _row_id(row)): 1 for name, rows in self.tables.items() for row in rows
        }
        self.attempts: dict[str, int] = {}
        self.delivered: list[ServiceEvent] = []
        self._pending: dict[int, _Pending] = {}
        self._ids = itertools.count(1)
        runtime.services[service_id] = self

    # -- client surface -----------------------------------------------------

    def submit(self, request: Request, requester: str) -> int:
        self.bus.post(requester, self.id, "submit", request)
        request_id = next(self._ids)
        key = request_key(request)
        attempt = self.attempts.get(key, 0) + 1
        self.attempts[key] = attempt
        fault = self._planned_fault(request, attempt)
        latency = self.plan.latency.get(request.kind, DEFAULT_LATENCY[request.kind])
        due = self.runtime.now + latency
        self._pending[request_id] = _Pending(request_id, due, requester, request, fault)
        # zero latency still waits for the next tick: completions never arrive mid-dispatch
        self.runtime.scheduler.at(due, lambda: self._deliver(request_id))
        return request_id

    def plan_faults(self, schedule: Iterable[FaultRule]) -> None:
        self.plan.faults = list(schedule)

    def inspect_pending(self) -> list[tuple[int, int]]:
        return [(p.request_id, p.due) for p in self._pending.values()]

    def tick(self, n: int = 1) -> list[ServiceEvent]:
        results = self.runtime.tick(n)
        return [ev for ev in results if isinstance(ev, ServiceEvent) and self._owns(ev)]

    def bump_version(self, entity: str, entity_id: int) -> int:
        """Simulate another client saving the entity."""
        key = (entity, entity_id)
        self.versions[key] = self.versions.get(key, 0) + 1
        return self.versions[key]

    def rows(self, entity: str) -> list[Snapshot]:
        return self.tables.get(entity, [])

    # -- internals ----------------------------------------------------------

    def _owns(self, event: ServiceEvent) -> bool:
        return any(ev is event for ev in self.delivered)

    def _planned_fault(self, request: Request, attempt: int) -> str | None:
        for rule in self.plan.faults:
            if not rule.selects(request):
                continue
            if rule.first is not None and attempt <= rule.first:
                return rule.fault
            if attempt in rule.attempts:
                return rule.fault
            if rule.rate is not None and self.rng.random() < rule.rate:
                return rule.fault
        return None

    def _deliver(self, request_id: int) -> ServiceEvent:
        pending = self._pending.pop(request_id)
        if pending.fault is not None:
            outcome = Fault(pending.fault, f"{pending.request.kind} attempt failed: {pending.fault}")
        else:
            outcome = self._complete(pending.request)
        event = ServiceEvent(request_id, outcome)
        self.delivered.append(event)
        verb = "fault" if isinstance(outcome, Fault) else "complete"
        env = self.bus.post(self.id, pending.requester, verb, event)
        requester = self.runtime.components[pending.requester]
        requester.on_service_event(event, env)
        return event

    def _complete(self, request: Request) -> Completion | Fault:
        if isinstance(request, FetchPage):
            rows = self._filtered(request.entity, request.filter)
            start = request.page * request.size
            page = tuple(r.copy() for r in rows[start:start + request.size])
            return Completion(PageResult(page, request.page, len(rows)))
        if isinstance(request, LoadEntity):
            for row in self.tables.get(request.entity, []):
                if _row_id(row) == request.id:
                    version = self.versions[(request.entity, request.id)]
                    return Completion(EntityResult(row.copy(), version))
            return Fault(CONNECTION_ERROR, f"no {request.entity} with id {request.id}")
        if isinstance(request, SaveEntity):
            try:
                entity_id = _row_id(request.record)
            except ValueError as exc:
                return Fault(CONNECTION_ERROR, f"{request.entity} rejected: {exc}")
            key = (request.entity, entity_id)
            stored = self.versions.get(key)
            if stored is not None and stored != request.version:
                return Fault(CONCURRENCY_CONFLICT,
                             f"{request.entity} {entity_id} is at version {stored}, not {request.version}")
            table = self.tables.setdefault(request.entity, [])
            record = Snapshot(dict(request.record.entries))
            for i, row in enumerate(table):
                if _row_id(row) == entity_id:
                    table[i] = record
                    break
            else:
                table.append(record)
            self.versions[key] = (stored or 0) + 1
            return Completion(SaveAck(self.versions[key]))
        raise TypeError(f"unknown request {request!r}")

    def _filtered(self, entity: str, text: str) -> list[Snapshot]:
        rows = self.tables.get(entity, [])
        if not text:
            return rows
        needle = text.lower()
        return [r for r in rows if any(needle in v.display().lower() for v in r.entries.values())]


def _row_id(row: Snapshot) -> int:
    value = row.get("id")
    if not isinstance(value, Integer):
        raise ValueError("dataset rows need an integer 'id' property")
    return value.value


def submit(service: ServiceSim, request: Request, requester: str) -> int:
    return service.submit(request, requester)


def tick(service: ServiceSim, n: int = 1) -> list[ServiceEvent]:
    return service.tick(n)


def plan_faults(service: ServiceSim, schedule: Sequence[FaultRule]) -> None:
    service.plan_faults(schedule)


def inspect_pending(service: ServiceSim) -> list[tuple[int, int]]:
    return service.inspect_pending()
