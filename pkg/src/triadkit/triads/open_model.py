"""Open Model: the model holds whatever was typed; validation on request only.

Reference use: a spreadsheet with several windows on the same sheet, each
showing an invalid formula until someone fixes it.
"""

from __future__ import annotations

from ..mvc_core.components import Controller
from ..mvc_core.messages import Detach, SelectRange, ShowError
from ..mvc_core.triad import TriadHandle
from .base import Blueprint, Outcome
from .models import OpenModel
from .views import SheetView


class SheetController(Controller):
    def __init__(self, runtime, component_id, parent, port, schema: dict[str, str]) -> None:
        super().__init__(runtime, component_id, parent)
        self.port = port
        self.schema = schema
        self.last: Outcome | None = None
        self.handlers = {
            "edit": self._edit,
            "focus": self._focus,
            "commit": self._commit,
            "new_window": self._new_window,
            "close": self._close,
            "open": self._open,
        }

    def refusal(self, verb, payload):
        reason = super().refusal(verb, payload)
        if reason:
            return reason
        if verb in ("edit", "focus") and payload.property not in self.schema:
            return f"no cell {payload.property!r}"
        if verb == "open" and self.is_open:
            return "already open"
        if verb == "close" and len(self.views) == 1 and not self.is_open:
            return "nothing to close"
        return None

    def _edit(self, gesture, env) -> None:
        self.port.set(gesture.property, gesture.raw)

    def _focus(self, gesture, env) -> None:
        text = self.port.get(gesture.property).display()
        self.render(SelectRange(gesture.property, 0, len(text)), self.view(env.source))

    def _commit(self, gesture, env) -> None:
        origin = self.view(env.source)
        report = self.port.validate()
        if report.violations:
            self.render(ShowError(report.summary()), origin)
            first = report.violations[0].properties[0]
            text = self.port.get(first).display()
            self.render(SelectRange(first, 0, len(text)), origin)
            self.last = Outcome.REFUSED
            return
        self.port.commit()
        self.last = Outcome.COMMITTED

    def _new_window(self, gesture, env) -> None:
        self.triad.view_factory(self.triad)

    def _close(self, gesture, env) -> None:
        origin = self.view(env.source)
        if len(self.views) > 1:
            self.render(Detach(origin.id), origin)
            self.blueprint.detach(self.triad, origin)
        else:
            self.is_open = False
        self.last = Outcome.CLOSED

    def _open(self, gesture, env) -> None:
        self.is_open = True
        for view in list(self.views):
            env = self.bus.post(self.id, view.id, "refresh")
            view.receive(env)


class OpenModelBlueprint(Blueprint):
    pattern = "open_model"
    view_kinds = ("sheet",)
    view_class = SheetView

    def make_model(self, spec, runtime, model_id):
        return OpenModel(runtime, model_id, spec.schema_map(), spec.ruleset, spec.options.get("initial"))

    def make_controller(self, spec, runtime, controller_id, parent, model):
        port, _ = model.ports(caller=controller_id)
        ctrl = SheetController(runtime, controller_id, parent, port, spec.schema_map())
        ctrl.blueprint = self
        return ctrl

    def start(self, triad: TriadHandle) -> None:
        triad.view().refresh()
