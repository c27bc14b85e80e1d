"""Model as Services Façade and Active View.

The model knows the entity type and where it comes from; the views know how
to show it and read it themselves. What is left for the controller is the
open / edit / save / close workflow and the user-facing prompts, so one
controller class serves every entity type.
"""

from __future__ import annotations

from typing import Any

from ..mvc_core.bus import EventEnvelope
from ..mvc_core.components import Controller
from ..mvc_core.errors import WiringError
from ..mvc_core.messages import (
    ABORT_RETRY_IGNORE, SAVE_CHANGES, Command, Edit, RenderCommand, ShowBusy, ShowError,
)
from ..mvc_core.triad import TriadHandle, dispatch
from ..mvc_core.values import ValueParseError
from .base import Blueprint, Outcome
from .models import EntityModel
from .views import ActiveFormView

IDLE, LOADING, READY, SAVING = "idle", "loading", "ready", "saving"


class GenericController(Controller):
    """Drives any entity model through the opaque port verbs
    ``load``, ``set``, ``is_dirty``, ``validate``, ``save``, ``retry`` and
    ``discard``. It never names a schema property.
    """

    def __init__(self, runtime, component_id, parent, port) -> None:
        super().__init__(runtime, component_id, parent)
        self.port = port
        self.phase = IDLE
        self.close_after_save = False
        self.last: Outcome | None = None
        self.verbs_used: list[str] = []
        self.handlers = {
            "open": self._open,
            "edit": self._edit,
            "save": self._save,
            "close": self._close,
            "yes": self._yes,
            "no": self._no,
            "cancel": self._cancel,
            "retry": self._retry,
            "abort": self._abort,
            "ignore": self._ignore,
        }

    def refusal(self, verb, payload):
        reason = super().refusal(verb, payload)
        if reason:
            return reason
        if verb == "open" and (self.is_open or self.phase != IDLE):
            return "already open" if self.is_open else f"entity is {self.phase}"
        if verb in ("edit", "save") and (self.phase != READY or self.prompt):
            return f"entity is {self.phase}"
        if verb == "close" and (not self.is_open or self.phase in (LOADING, SAVING)):
            return "not open" if not self.is_open else f"entity is {self.phase}"
        if verb == "cancel" and self.prompt is None:
            return "nothing to cancel"
        return None

    def _use(self, verb: str):
        self.verbs_used.append(verb)
        return getattr(self.port, verb)

    # -- workflow -------------------------------------------------------------------

    def _open(self, gesture, env) -> None:
        self.is_open = True
        self.phase = LOADING
        self.render_all(ShowBusy(True))
        self._use("load")()

    def _edit(self, gesture: Edit, env) -> None:
        try:
            self._use("set")(gesture.property, gesture.raw)
        except (KeyError, ValueParseError) as exc:
            self.render(ShowError(str(exc)), self.view(env.source))

    def save(self) -> Outcome:
        if not self._use("is_dirty")():
            self.last = Outcome.SAVED
            return self.last
        report = self._use("validate")()
        if report.violations:
            self.render_all(ShowError(report.summary()))
            self.last = Outcome.REFUSED
            return self.last
        self.phase = SAVING
        self.render_all(ShowBusy(True))
        self.last = Outcome.SUBMITTED
        # a model without a service answers "saved" before this returns
        self._use("save")()
        return self.last

    def _save(self, gesture, env) -> None:
        self.save()

    def _close(self, gesture, env) -> None:
        if self._use("is_dirty")():
            self.ask(SAVE_CHANGES, "close")
            self.last = Outcome.PROMPTED
            return
        self._closed()

    def _closed(self) -> None:
        self.is_open = False
        self.phase = IDLE
        self.close_after_save = False
        self.last = Outcome.CLOSED

    def _yes(self, gesture, env) -> None:
        self.answered()
        self.close_after_save = True
        if self.save() is Outcome.SAVED:
            self._closed()

    def _no(self, gesture, env) -> None:
        self.answered()
        self._use("discard")()
        self._closed()

    def _cancel(self, gesture, env) -> None:
        self.answered()
        self.last = Outcome.CANCELLED

    # -- model events ---------------------------------------------------------------

    def on_model_event(self, verb: str, payload: Any, env: EventEnvelope) -> None:
        if verb == "loaded":
            self.phase = READY
            self.render_all(ShowBusy(False))
            for view in list(self.views):
                bind = self.bus.post(self.id, view.id, "bind")
                view.receive(bind)
        elif verb == "saved":
            self.phase = READY
            self.last = Outcome.SAVED
            self.render_all(ShowBusy(False))
            if self.close_after_save:
                self._closed()
        elif verb == "fault":
            self.last = Outcome.FAULT_PROMPTED
            self.render_all(ShowBusy(False))
            self.ask(ABORT_RETRY_IGNORE, self.phase)

    def _retry(self, gesture, env) -> None:
        phase = self.answered().pending
        self.phase = phase
        self.render_all(ShowBusy(True))
        self._use("retry")()

    def _abort(self, gesture, env) -> None:
        phase = self.answered().pending
        if phase == LOADING:
            self._closed()
        else:
            # abandon the edits that could not be saved
            self.phase = READY
            self.close_after_save = False
            self._use("discard")()

    def _ignore(self, gesture, env) -> None:
        phase = self.answered().pending
        if phase == LOADING:
            self._closed()
        else:
            self.phase = READY
            self.close_after_save = False


class _EntityBlueprint(Blueprint):
    view_kinds = ("active_form",)
    view_class = ActiveFormView
    controller_kind = "generic"

    def make_controller(self, spec, runtime, controller_id, parent, model):
        port, _ = model.ports(caller=controller_id)
        return GenericController(runtime, controller_id, parent, port)

    def on_attach(self, triad, view) -> None:
        if triad.model.loaded:
            view.refresh()


class FacadeBlueprint(_EntityBlueprint):
    pattern = "model_as_services_facade"

    def make_model(self, spec, runtime, model_id):
        entity_id = spec.options.get("entity_id")
        return EntityModel(runtime, model_id, spec.schema_map(), spec.ruleset,
                           service=runtime.services[spec.service_binding],
                           entity=spec.options.get("entity", ""),
                           entity_id=int(entity_id) if entity_id is not None else None)


class ActiveViewBlueprint(_EntityBlueprint):
    pattern = "active_view"

    def make_model(self, spec, runtime, model_id):
        return EntityModel(runtime, model_id, spec.schema_map(), spec.ruleset,
                           initial=spec.options.get("initial"))

    def start(self, triad: TriadHandle) -> None:
        # data are local: load at once so views can bind
        dispatch(triad, Command("open"))


def msf_open(triad: TriadHandle, entity_id: int | None = None) -> list[RenderCommand]:
    """Ask the façade model to load an entity; views bind once it arrives."""
    if triad.pattern != "model_as_services_facade":
        raise WiringError("msf_open needs a model_as_services_facade triad")
    if entity_id is not None:
        triad.model.entity_id = int(entity_id)
    return dispatch(triad, Command("open"))


def generic_save(triad: TriadHandle, settle: bool = True) -> Outcome:
    """Run the generic save step; with ``settle`` also tick until it resolves."""
    if triad.spec.controller_kind != "generic":
        raise WiringError("generic_save needs a generic controller")
    dispatch(triad, Command("save"))
    outcome = triad.controller.last
    if outcome is Outcome.SUBMITTED and settle:
        triad.runtime.run_until_idle()
        outcome = triad.controller.last
    return outcome


def av_forward_edit(triad: TriadHandle, view_id: str, gesture: Edit) -> EventEnvelope:
    """An edit typed into an active view travels to the controller as an event."""
    if not isinstance(gesture, Edit):
        raise TypeError("av_forward_edit takes an Edit gesture")
    if triad.spec.view_kind != "active_form":
        raise WiringError("av_forward_edit needs active views")
    mark = len(triad.runtime.bus.log)
    dispatch(triad, gesture, view=view_id)
    return triad.runtime.bus.log[mark]
