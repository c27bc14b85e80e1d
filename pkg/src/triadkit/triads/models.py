"""Model flavours used by the blueprints, each with its own port pair.

The controller port carries mutators and triggers; the view read port only
accessors. Which mutator semantics a model has is what separates a closed
model (validate inside the mutator) from an open one (store anything,
validate on request).
"""

from __future__ import annotations

from typing import Any, Sequence

from ..mvc_core.bus import EventEnvelope, Runtime
from ..mvc_core.components import ControllerPort, Model, ViewReadPort
from ..mvc_core.errors import RejectedMutation, ViewNotBound
from ..mvc_core.messages import Change
from ..mvc_core.values import Absent, PropertyValue, Snapshot, coerce, parse_value
from ..validation.rules import Rule, ValidationReport, evaluate


class PropertyModel(Model):
    """Schema-typed snapshot plus a ruleset; no validation policy of its own."""

    controller_port_class = ControllerPort
    view_port_class = ViewReadPort

    def __init__(self, runtime: Runtime, component_id: str, schema: dict[str, str],
                 ruleset: Sequence[Rule] = (), initial: dict[str, object] | None = None) -> None:
        super().__init__(runtime, component_id, schema)
        self.ruleset = list(ruleset)
        values = {name: Absent for name in schema}
        for name, value in (initial or {}).items():
            if name not in schema:
                raise KeyError(name)
            values[name] = _typed(schema[name], value)
        self.snapshot = Snapshot(values)

    def coerce_input(self, name: str, value: object) -> PropertyValue:
        if name not in self.schema:
            raise KeyError(name)
        return _typed(self.schema[name], value)

    def _store(self, name: str, value: PropertyValue) -> Change:
        old = self.snapshot.get(name)
        self.snapshot.entries[name] = value
        self.snapshot.dirty.add(name)
        self.snapshot.revision += 1
        return Change(name, old, value, self.snapshot.revision)


def _typed(kind: str, value: object) -> PropertyValue:
    if isinstance(value, str) and kind != "text":
        return parse_value(kind, value)
    return coerce(value)


# -- passive view model -------------------------------------------------------

class TextPort(ControllerPort):
    verbs = ControllerPort.verbs + ("set",)

    def set(self, name: str, value: object) -> int:
        value = self._model.coerce_input(name, value)
        self._call("set", (name, value), mutating=True)
        self._model._store(name, value)
        return self._model.snapshot.revision


class TextModel(PropertyModel):
    """Plain data holder; knows nothing of views."""

    controller_port_class = TextPort
    view_port_class = None


# -- closed model --------------------------------------------------------------

class ClosedPort(ControllerPort):
    verbs = ControllerPort.verbs + ("set", "set_many")

    def set(self, name: str, value: object) -> int:
        return self.set_many({name: value})

    def set_many(self, changes: dict[str, object]) -> int:
        typed = {name: self._model.coerce_input(name, v) for name, v in changes.items()}
        self._call("set_many" if len(typed) != 1 else "set", tuple(typed.items()), mutating=True)
        return self._model._apply(typed, self._caller)


class ClosedModel(PropertyModel):
    """Every mutator validates the whole candidate; rejection changes nothing."""

    controller_port_class = ClosedPort

    def _apply(self, changes: dict[str, PropertyValue], caller: str | None) -> int:
        candidate = self.snapshot.replaced(changes)
        report = evaluate(candidate, self.ruleset)
        if report.violations:
            self._reply(caller, "rejected", report)
            raise RejectedMutation(report)
        notes = []
        for name, value in changes.items():
            old = self.snapshot.get(name)
            candidate.dirty.add(name)
            notes.append((name, old, value))
        candidate.revision = self.snapshot.revision + 1
        self.snapshot = candidate
        for name, old, value in notes:
            self._notify(Change(name, old, value, candidate.revision))
        return candidate.revision


# -- open model ------------------------------------------------------------------

class OpenPort(ControllerPort):
    verbs = ControllerPort.verbs + ("set", "validate", "commit")

    def set(self, name: str, value: object) -> Change:
        value = self._model.coerce_input(name, value)
        self._call("set", (name, value), mutating=True)
        change = self._model._store(name, value)
        self._model._notify(change)
        return change

    def validate(self) -> ValidationReport:
        self._call("validate")
        report = evaluate(self._model.snapshot, self._model.ruleset)
        self._model._reply(self._caller, "report", report)
        return report

    def commit(self) -> int:
        """Accept the current data as final; refuses invalid data."""
        self._call("commit", (self._model.snapshot.revision,), mutating=True)
        report = evaluate(self._model.snapshot, self._model.ruleset)
        if report.violations:
            self._model._reply(self._caller, "rejected", report)
            raise RejectedMutation(report)
        self._model.snapshot.dirty.clear()
        return self._model.snapshot.revision


class OpenModel(PropertyModel):
    """Mutators store anything; validation waits for the controller."""

    controller_port_class = OpenPort


# -- disconnected model ------------------------------------------------------------

class PagePort(ControllerPort):
    verbs = ControllerPort.verbs + ("feed", "page")

    def feed(self, rows: Sequence[Snapshot], page: int, pages: int) -> int:
        rows = tuple(r.copy() for r in rows)
        self._call("feed", (list(rows), page, pages), mutating=True)
        return self._model._feed(rows, page, pages)

    def page(self) -> tuple[tuple[Snapshot, ...], int, int]:
        self._call("page")
        m = self._model
        return m.rows, m.page, m.pages


class PageReadPort(ViewReadPort):
    verbs = ViewReadPort.verbs + ("page",)

    def page(self) -> tuple[tuple[Snapshot, ...], int, int]:
        self._call("page")
        m = self._model
        return m.rows, m.page, m.pages


class PagedModel(PropertyModel):
    """Holds the rows of the page on screen. Never talks to services."""

    controller_port_class = PagePort
    view_port_class = PageReadPort

    def __init__(self, runtime: Runtime, component_id: str, schema: dict[str, str],
                 ruleset: Sequence[Rule] = ()) -> None:
        super().__init__(runtime, component_id, schema, ruleset)
        self.rows: tuple[Snapshot, ...] = ()
        self.page = 0
        self.pages = 0

    def _feed(self, rows: tuple[Snapshot, ...], page: int, pages: int) -> int:
        self.rows, self.page, self.pages = rows, page, pages
        self.snapshot.revision += 1
        return self.snapshot.revision


# -- entity model (Model as Services Facade / Active View) ---------------------------

class EntityPort(ControllerPort):
    """Opaque verbs a generic controller can drive without knowing the schema."""

    verbs = ControllerPort.verbs + ("load", "set", "validate", "save", "retry", "discard")

    def load(self) -> None:
        self._call("load", mutating=True)
        self._model._load()

    def set(self, name: str, raw: object) -> Change:
        value = self._model.coerce_input(name, raw)
        self._call("set", (name, value), mutating=True)
        change = self._model._store(name, value)
        self._model._notify(change)
        return change

    def validate(self) -> ValidationReport:
        self._call("validate")
        report = evaluate(self._model.snapshot, self._model.ruleset)
        self._model._reply(self._caller, "report", report)
        return report

    def save(self) -> ValidationReport:
        """Submit the entity if valid; returns the report either way."""
        self._call("save", mutating=True)
        return self._model._save()

    def retry(self) -> None:
        self._call("retry", mutating=True)
        self._model._retry()

    def discard(self) -> None:
        self._call("discard", mutating=True)
        self._model._discard()


class EntityReadPort(ViewReadPort):
    def _guard(self) -> None:
        if not self._model.loaded:
            self._model.runtime.diagnostics.report(
                "ViewNotBound", self._caller or "?", f"read before {self._model.id} finished loading")
            raise ViewNotBound(f"{self._model.id} is not loaded yet")


class EntityModel(PropertyModel):
    """Loads and saves one entity.

    With a service bound, the model is the façade: it submits LoadEntity and
    SaveEntity itself and hands faults to its controller. Without one, load
    and save complete immediately (plain Active View triads).
    """

    controller_port_class = EntityPort
    view_port_class = EntityReadPort

    def __init__(self, runtime: Runtime, component_id: str, schema: dict[str, str],
                 ruleset: Sequence[Rule] = (), *, service=None, entity: str = "",
                 entity_id: int | None = None, initial: dict[str, object] | None = None) -> None:
        super().__init__(runtime, component_id, schema, ruleset, initial)
        self.service = service
        self.entity = entity
        self.entity_id = entity_id
        self.version = 0
        self.loaded = False
        self.baseline = self.snapshot.copy()
        self.pending: tuple[int, str, Any] | None = None  # (request id, operation, request)
        self._last: tuple[str, Any] | None = None

    def _controller(self):
        return self.runtime.components[self.controller_id]

    def _tell_controller(self, verb: str, payload: Any) -> None:
        env = self.bus.post(self.id, self.controller_id, verb, payload)
        self._controller().on_model_event(verb, payload, env)

    def _submit(self, operation: str, request: Any) -> None:
        request_id = self.service.submit(request, self.id)
        self.pending = (request_id, operation, request)
        self._last = (operation, request)

    def _load(self) -> None:
        if self.service is None:
            self._loaded(self.snapshot.copy(), self.version)
            return
        from ..services_sim.requests import LoadEntity
        self._submit("load", LoadEntity(self.entity, self.entity_id))

    def _loaded(self, record: Snapshot, version: int) -> None:
        values = {name: record.get(name) for name in self.schema}
        self.snapshot = Snapshot(values, set(), self.snapshot.revision + 1)
        self.baseline = self.snapshot.copy()
        self.version = version
        self.loaded = True
        self._tell_controller("loaded", None)

    def _save(self) -> ValidationReport:
        report = evaluate(self.snapshot, self.ruleset)
        self._reply(self.controller_id, "report", report)
        if report.violations:
            return report
        if self.service is None:
            self._saved(self.version + 1)
            return report
        from ..services_sim.requests import SaveEntity
        self._submit("save", SaveEntity(self.entity, self.snapshot.copy(), self.version))
        return report

    def _saved(self, version: int) -> None:
        self.version = version
        self.snapshot.dirty.clear()
        self.baseline = self.snapshot.copy()
        self._tell_controller("saved", None)

    def _retry(self) -> None:
        if self._last is None:
            raise RuntimeError("nothing to retry")
        operation, request = self._last
        self._submit(operation, request)

    def _discard(self) -> None:
        current = self.snapshot
        self.snapshot = self.baseline.copy()
        self.snapshot.revision = current.revision + 1
        for name in self.schema:
            if current.get(name) != self.snapshot.get(name):
                self._notify(Change(name, current.get(name), self.snapshot.get(name),
                                    self.snapshot.revision))

    def on_service_event(self, event, env: EventEnvelope) -> None:
        if self.pending is None or self.pending[0] != event.request_id:
            self.runtime.diagnostics.report("StaleCompletion", self.id, f"request {event.request_id}")
            return
        _, operation, _ = self.pending
        self.pending = None
        if event.is_fault:
            self._tell_controller("fault", event)
            return
        payload = event.outcome.payload
        if operation == "load":
            self._loaded(payload.record, payload.version)
        else:
            self._saved(payload.version)
