"""Model, View and Controller base classes, segregated model ports, escalation."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Any, Callable

from .bus import EventEnvelope, Kind, Runtime, ScreenEntry
from .errors import TriadError
from .messages import PROMPT_OPTIONS, Change, PortCall, Prompt, RenderCommand, SetText, render_name
from .values import Snapshot


class Component:
    kind: Kind

    def __init__(self, runtime: Runtime, component_id: str) -> None:
        self.runtime = runtime
        self.id = component_id
        runtime.add(self)

    @property
    def bus(self):
        return self.runtime.bus

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.id}>"


# -- model ------------------------------------------------------------------

class Model(Component):
    """Base model: owns a Snapshot and the list of observing views."""

    kind = Kind.MODEL
    controller_port_class: type["ControllerPort"]
    view_port_class: type["ViewReadPort"] | None

    def __init__(self, runtime: Runtime, component_id: str, schema: dict[str, str]) -> None:
        super().__init__(runtime, component_id)
        self.schema = dict(schema)
        self.snapshot = Snapshot()
        self.observers: list["View"] = []
        self.controller_id: str | None = None

    def _notify(self, change: Change) -> None:
        for view in list(self.observers):
            env = self.bus.post(self.id, view.id, "notify", change)
            view.receive(env)

    def _reply(self, target: str | None, verb: str, payload: Any) -> None:
        if target is not None:
            self.bus.post(self.id, target, verb, payload)

    def ports(self, caller: str | None = None, view: str | None = None):
        ctrl = self.controller_port_class(self, caller if caller is not None else self.controller_id)
        read = self.view_port_class(self, view) if self.view_port_class else None
        return ctrl, read


class _Port:
    def __init__(self, model: Model, caller: str | None) -> None:
        self._model = model
        self._caller = caller

    @property
    def model_id(self) -> str:
        return self._model.id

    def bound_to(self, caller: str):
        return type(self)(self._model, caller)

    def _call(self, verb: str, args: tuple = (), *, mutating: bool = False) -> EventEnvelope | None:
        if self._caller is None:
            return None  # harness access, outside any triad
        return self._model.bus.post(self._caller, self._model.id, verb, PortCall(verb, args),
                                    mutating=mutating)


class ViewReadPort(_Port):
    """Accessors only. Nothing here raises an error that needs the user."""

    verbs = ("get", "read_all", "revision")

    def _guard(self) -> None:
        pass

    def get(self, name: str):
        self._guard()
        self._call("get", (name,))
        return self._model.snapshot.get(name)

    def read_all(self) -> Snapshot:
        self._guard()
        self._call("read_all")
        return self._model.snapshot.copy()

    def revision(self) -> int:
        self._guard()
        self._call("revision")
        return self._model.snapshot.revision


class ControllerPort(ViewReadPort):
    """Accessors plus whatever mutators and triggers the model offers."""

    verbs = ViewReadPort.verbs + ("is_dirty",)

    def is_dirty(self) -> bool:
        self._call("is_dirty")
        return bool(self._model.snapshot.dirty)


def ports(model: Model) -> tuple[ControllerPort, ViewReadPort | None]:
    """Segregated (controller port, view read port) pair for ``model``."""
    return model.ports()


# -- view -------------------------------------------------------------------

class View(Component):
    """A render surface. Records every command it shows on its screen."""

    kind = Kind.VIEW

    def __init__(self, runtime: Runtime, component_id: str) -> None:
        super().__init__(runtime, component_id)
        self.screen: list[RenderCommand] = []
        self.read_port: ViewReadPort | None = None
        self.controller_id: str | None = None
        self.detached = False

    def show(self, cmd: RenderCommand, cause: EventEnvelope) -> None:
        self.screen.append(cmd)
        self.runtime.screen_log.append(ScreenEntry(cause.tick, cause.seq, self.id, cmd))

    def receive(self, env: EventEnvelope) -> None:
        payload = env.payload
        if isinstance(payload, Change):
            self.show(SetText(payload.property, payload.new.display()), env)
        elif env.verb in ("bind", "refresh"):
            self.refresh()
        elif payload is not None and render_name(payload) == env.verb:
            self.show(payload, env)
            if env.verb == "Detach" and payload.view == self.id:
                self.detached = True

    def refresh(self) -> None:
        """Pull the whole snapshot through the read port and render it."""
        if self.read_port is None:
            return
        data = self.read_port.read_all()
        cause = self.bus.log[-1]
        for name, value in data.entries.items():
            self.show(SetText(name, value.display()), cause)

    def on_input(self, gesture, env: EventEnvelope) -> None:
        """Local handling of user input before the controller sees it."""


# -- controller -------------------------------------------------------------

@dataclass
class PromptState:
    kind: str
    pending: Any = None
    awaiting: bool = True

    @property
    def options(self) -> tuple[str, ...]:
        return PROMPT_OPTIONS[self.kind]


class Disposition(str, Enum):
    HANDLED = "handled"
    FORWARDED = "forwarded"
    UNHANDLED = "UnhandledEvent"


class Controller(Component):
    """Base controller.

    Subclasses register handlers by verb in ``self.handlers`` and refine
    ``refusal`` with state checks. A pending prompt restricts accepted verbs
    to the prompt's options.
    """

    kind = Kind.CONTROLLER

    def __init__(self, runtime: Runtime, component_id: str, parent: "Controller | None" = None) -> None:
        super().__init__(runtime, component_id)
        self.parent = parent
        self.views: list[View] = []
        self.handlers: dict[str, Callable[[Any, EventEnvelope], None]] = {}
        self.prompt: PromptState | None = None
        self.is_open = False

    def refusal(self, verb: str, payload: Any) -> str | None:
        if verb not in self.handlers:
            return f"{type(self).__name__} has no handler for {verb!r}"
        if self.prompt is not None and self.prompt.awaiting:
            if verb not in self.prompt.options:
                return f"awaiting {self.prompt.kind} answer"
        elif verb in ("yes", "no", "retry", "abort", "ignore"):
            return "no prompt pending"
        return None

    def can_handle(self, verb: str, payload: Any = None) -> bool:
        return self.refusal(verb, payload) is None

    def handle(self, verb: str, payload: Any, envelope: EventEnvelope) -> None:
        self.handlers[verb](payload, envelope)

    def view(self, view_id: str | None = None) -> View:
        if view_id is not None:
            for v in self.views:
                if v.id == view_id:
                    return v
        return self.views[0]

    def render(self, cmd: RenderCommand, view: View | None = None) -> None:
        target = view or self.views[0]
        env = self.bus.post(self.id, target.id, render_name(cmd), cmd)
        target.receive(env)

    def render_all(self, cmd: RenderCommand) -> None:
        for v in list(self.views):
            self.render(cmd, v)

    def ask(self, kind: str, pending: Any = None, view: View | None = None) -> None:
        self.prompt = PromptState(kind, pending)
        self.render(Prompt(kind), view)

    def answered(self) -> PromptState:
        state, self.prompt = self.prompt, None
        if state is None:
            raise TriadError("no prompt pending")
        return state


def escalate(controller: Controller, envelope: EventEnvelope) -> Disposition:
    """Handle ``envelope`` at ``controller`` or pass it up the parent chain."""
    verb, payload = envelope.verb, envelope.payload
    node = controller
    while True:
        if node.can_handle(verb, payload):
            node.handle(verb, payload, envelope)
            return Disposition.HANDLED if node is controller else Disposition.FORWARDED
        if node.parent is None:
            node.runtime.diagnostics.report(
                "UnhandledEvent", node.id, f"{verb} from {envelope.source} reached the root")
            return Disposition.UNHANDLED
        node.bus.post(node.id, node.parent.id, "forward", payload)
        node = node.parent


def owner_of(controller: Controller, verb: str, payload: Any) -> Controller | None:
    node = controller
    while node is not None:
        if node.can_handle(verb, payload):
            return node
        node = node.parent
    return None
