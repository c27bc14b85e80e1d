"""Shared assembly steps for the pattern blueprints."""

from __future__ import annotations

from enum import Enum
from typing import Any

from ..mvc_core.bus import Runtime
from ..mvc_core.components import Controller, Model, View
from ..mvc_core.errors import WiringError
from ..mvc_core.triad import TriadHandle, TriadSpec


class Outcome(str, Enum):
    """What a controller workflow step ended with."""

    COMMITTED = "committed"
    CANCELLED = "cancelled"
    PROMPTED = "prompt issued"
    REFUSED = "validation refused"
    CLOSED = "closed"
    SUBMITTED = "submitted"
    SAVED = "saved"
    FAULT_PROMPTED = "service fault prompted"


class Blueprint:
    pattern = ""
    view_kinds: tuple[str, ...] = ()
    controller_kind = "specific"
    view_class: type[View] = View
    observe = True  # views subscribe to model change notifications
    read_port = True  # views hold a read port on the model

    def check(self, spec: TriadSpec, runtime: Runtime) -> None:
        if spec.view_kind not in self.view_kinds:
            raise WiringError(f"{self.pattern} needs view kind in {list(self.view_kinds)}, "
                              f"got {spec.view_kind!r}")
        if spec.controller_kind != self.controller_kind:
            raise WiringError(f"{self.pattern} needs a {self.controller_kind} controller")
        if spec.service_binding and spec.service_binding not in runtime.services:
            raise WiringError(f"no service {spec.service_binding!r} in this runtime")

    def make_model(self, spec: TriadSpec, runtime: Runtime, model_id: str) -> Model:
        raise NotImplementedError

    def make_controller(self, spec: TriadSpec, runtime: Runtime, controller_id: str,
                        parent: Controller | None, model: Model) -> Controller:
        raise NotImplementedError

    def start(self, triad: TriadHandle) -> None:
        """Initial renders after wiring."""

    def build(self, spec: TriadSpec, runtime: Runtime, tid: str, parent: Controller | None,
              view: Any = None) -> TriadHandle:
        model = self.make_model(spec, runtime, f"{tid}.m")
        ctrl = self.make_controller(spec, runtime, f"{tid}.c", parent, model)
        model.controller_id = ctrl.id
        cport, _ = model.ports(caller=ctrl.id)
        triad = TriadHandle(
            id=tid, pattern=spec.pattern, controller_port=cport, view_port=None, view_ids=[],
            controller_id=ctrl.id, parent_id=parent.id if parent else None, runtime=runtime,
            spec=spec, model=model, controller=ctrl, view_factory=self.add_view,
        )
        ctrl.triad = triad
        self.add_view(triad, view, initial=True)
        first = triad.view()
        triad.view_port = first.read_port
        self.start(triad)
        return triad

    def add_view(self, triad: TriadHandle, double: Any = None, initial: bool = False) -> str:
        runtime = triad.runtime
        n = 1
        while f"{triad.id}.v{n}" in runtime.components:
            n += 1
        view = self.view_class(runtime, f"{triad.id}.v{n}")
        view.controller_id = triad.controller_id
        if self.read_port and triad.model.view_port_class is not None:
            _, view.read_port = triad.model.ports(view=view.id)
        else:
            runtime.bus.forbid(view.id, triad.model.id, "view is unaware of the model")
            runtime.bus.forbid(triad.model.id, view.id, "model is unaware of the view")
        if self.observe:
            triad.model.observers.append(view)
        triad.views[view.id] = view
        triad.view_ids.append(view.id)
        triad.controller.views.append(view)
        if double is not None:
            double.bind(view, triad)
        if not initial:
            self.on_attach(triad, view)
        return view.id

    def on_attach(self, triad: TriadHandle, view: View) -> None:
        view.refresh()

    def detach(self, triad: TriadHandle, view: View) -> None:
        view.detached = True
        triad.view_ids.remove(view.id)
        triad.controller.views.remove(view)
        if view in triad.model.observers:
            triad.model.observers.remove(view)
