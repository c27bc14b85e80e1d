"""Disconnected Model: the controller talks to services and feeds the model.

Reference use: a dialog paging through a long employee list. The model only
holds the page on screen; fetching, latency and connection errors are the
controller's business because they involve the user.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..mvc_core.bus import EventEnvelope, Kind
from ..mvc_core.components import Controller
from ..mvc_core.errors import WiringError
from ..mvc_core.messages import ABORT_RETRY_IGNORE, RenderCommand, ShowBusy, ShowPage
from ..mvc_core.triad import TriadHandle
from ..mvc_core.values import Snapshot
from ..services_sim.requests import FetchPage, ServiceEvent
from .base import Blueprint
from .models import PagedModel
from .views import PageView


@dataclass
class PageCursor:
    index: int
    size: int
    count: int | None = None
    cache: dict[int, tuple[Snapshot, ...]] = field(default_factory=dict)


@dataclass
class _Fetch:
    request_id: int
    request: FetchPage
    target: int
    previous: int


class PagerController(Controller):
    def __init__(self, runtime, component_id, parent, port, service, entity: str,
                 page_size: int, filter_text: str = "") -> None:
        super().__init__(runtime, component_id, parent)
        self.port = port
        self.service = service
        self.entity = entity
        self.filter = filter_text
        self.cursor = PageCursor(0, page_size)
        self.fetching: _Fetch | None = None
        self.handlers = {
            "next_page": self._next,
            "prev_page": self._prev,
            "retry": self._retry,
            "abort": self._abort,
            "ignore": self._ignore,
            "cancel": self._cancel,
            "open": self._reopen,
        }

    def refusal(self, verb, payload):
        reason = super().refusal(verb, payload)
        if reason:
            return reason
        busy = self.fetching is not None
        if verb == "cancel":
            return None if busy else "nothing loading"
        if verb == "open":
            # only after the very first fetch was abandoned
            if busy or self.cursor.count is not None:
                return "already open"
            return None
        if verb in ("next_page", "prev_page") and busy:
            return "page still loading"
        if verb == "next_page":
            if self.cursor.count is None or self.cursor.index + 1 >= self.cursor.count:
                return "already on the last page"
        if verb == "prev_page" and self.cursor.index == 0:
            return "already on the first page"
        return None

    # -- paging -----------------------------------------------------------------

    def start(self) -> None:
        self.is_open = True
        self._go(0)

    def _go(self, target: int) -> None:
        previous = self.cursor.index
        if target in self.cursor.cache:
            self.cursor.index = target
            self._show(self.cursor.cache[target])
            return
        request = FetchPage(self.entity, self.filter, target, self.cursor.size)
        self._submit(request, target, previous)

    def _submit(self, request: FetchPage, target: int, previous: int) -> None:
        request_id = self.service.submit(request, self.id)
        self.fetching = _Fetch(request_id, request, target, previous)
        self.render(ShowBusy(True))

    def _show(self, rows) -> None:
        count = self.cursor.count or 0
        self.port.feed(rows, self.cursor.index, count)
        shown, page, pages = self.port.page()
        self.render(ShowPage(shown, page, pages))

    def _reopen(self, gesture, env) -> None:
        self._go(0)

    def _next(self, gesture, env) -> None:
        self._go(self.cursor.index + 1)

    def _prev(self, gesture, env) -> None:
        self._go(self.cursor.index - 1)

    # -- service traffic ----------------------------------------------------------

    def on_service_event(self, event: ServiceEvent, env: EventEnvelope) -> list[RenderCommand]:
        mark = len(self.runtime.screen_log)
        fetch = self.fetching
        if fetch is None or fetch.request_id != event.request_id:
            self.runtime.diagnostics.report(
                "StaleCompletion", self.id, f"dropped response to request {event.request_id}")
            return []
        self.fetching = None
        if event.is_fault:
            self.ask(ABORT_RETRY_IGNORE, fetch)
        else:
            result = event.outcome.payload
            size = self.cursor.size
            self.cursor.count = max(1, -(-result.total // size))
            self.cursor.cache[fetch.target] = result.rows
            self.cursor.index = fetch.target
            self.render(ShowBusy(False))
            self._show(result.rows)
        return [e.command for e in self.runtime.screen_log[mark:]]

    def _retry(self, gesture, env) -> None:
        fetch = self.answered().pending
        self._submit(fetch.request, fetch.target, fetch.previous)

    def _ignore(self, gesture, env) -> None:
        fetch = self.answered().pending
        self.cursor.index = fetch.target
        self.render(ShowBusy(False))
        self._show(())

    def _abort(self, gesture, env) -> None:
        fetch = self.answered().pending
        self._restore(fetch.previous)

    def _cancel(self, gesture, env) -> None:
        fetch, self.fetching = self.fetching, None
        self._restore(fetch.previous)

    def _restore(self, previous: int) -> None:
        self.cursor.index = previous
        self.render(ShowBusy(False))
        if previous in self.cursor.cache:
            self._show(self.cursor.cache[previous])


class DisconnectedModelBlueprint(Blueprint):
    pattern = "disconnected_model"
    view_kinds = ("pager",)
    view_class = PageView
    observe = False

    def make_model(self, spec, runtime, model_id):
        return PagedModel(runtime, model_id, spec.schema_map(), spec.ruleset)

    def make_controller(self, spec, runtime, controller_id, parent, model):
        port, _ = model.ports(caller=controller_id)
        size = int(spec.options.get("page_size", 20))
        if size < 1:
            raise WiringError("page size must be >= 1")
        service = runtime.services[spec.service_binding]
        return PagerController(runtime, controller_id, parent, port, service,
                               spec.options.get("entity", "employee"), size,
                               spec.options.get("filter", ""))

    def start(self, triad: TriadHandle) -> None:
        triad.controller.start()


def dm_on_service_event(triad: TriadHandle, event: ServiceEvent) -> list[RenderCommand]:
    """Deliver ``event`` to the pager controller as if the service sent it."""
    if triad.pattern != "disconnected_model":
        raise WiringError("dm_on_service_event needs a disconnected_model triad")
    ctrl = triad.controller
    service = ctrl.service
    verb = "fault" if event.is_fault else "complete"
    env = triad.runtime.bus.post(service.id, ctrl.id, verb, event)
    assert env.source_kind is Kind.SERVICE
    return ctrl.on_service_event(event, env)
