"""Passive View: the controller is the only bridge between view and model.

Reference use: an edit box that interprets keystrokes against an input mask.
"""

from __future__ import annotations

from ..mvc_core.components import Controller
from ..mvc_core.messages import SelectRange, SetText
from ..mvc_core.triad import TriadHandle
from .base import Blueprint
from .mask import mask_step
from .models import TextModel
from .views import MaskedFieldView


class MaskController(Controller):
    def __init__(self, runtime, component_id, parent, port, mask: str, prop: str) -> None:
        super().__init__(runtime, component_id, parent)
        self.port = port
        self.mask = mask
        self.prop = prop
        self.handlers = {
            "key": self._key,
            "cancel": self._cancel,
            "focus": self._focus,
            "open": self._open,
        }

    def refusal(self, verb, payload):
        reason = super().refusal(verb, payload)
        if reason:
            return reason
        if verb == "focus" and payload.property != self.prop:
            return f"no field {payload.property!r}"
        if verb == "open" and self.is_open:
            return "already open"
        return None

    def buffer(self) -> str:
        return self.port.get(self.prop).display()

    def _key(self, gesture, env) -> None:
        step = mask_step(self.mask, self.buffer(), gesture.char, self.prop)
        if not step.accepted:
            return
        self.port.set(self.prop, step.buffer)
        for cmd in step.emitted:
            self.render(cmd)

    def _cancel(self, gesture, env) -> None:
        self.port.set(self.prop, "")
        self.render(SetText(self.prop, ""))

    def _focus(self, gesture, env) -> None:
        self.render(SelectRange(self.prop, 0, len(self.buffer())))

    def _open(self, gesture, env) -> None:
        self.is_open = True
        self.render(SetText(self.prop, self.buffer()))


class PassiveViewBlueprint(Blueprint):
    pattern = "passive_view"
    view_kinds = ("masked_field",)
    view_class = MaskedFieldView
    observe = False
    read_port = False

    def make_model(self, spec, runtime, model_id):
        initial = {spec.names[0]: spec.options.get("initial", "")}
        return TextModel(runtime, model_id, spec.schema_map(), spec.ruleset, initial)

    def make_controller(self, spec, runtime, controller_id, parent, model):
        port, _ = model.ports(caller=controller_id)
        return MaskController(runtime, controller_id, parent, port, spec.options["mask"], spec.names[0])

    def start(self, triad: TriadHandle) -> None:
        ctrl = triad.controller
        ctrl.render(SetText(ctrl.prop, ctrl.buffer()))
