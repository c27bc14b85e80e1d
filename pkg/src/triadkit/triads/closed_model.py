"""Closed Model: mutators validate; the form view caches input until commit."""

from __future__ import annotations

from ..mvc_core.components import Controller
from ..mvc_core.errors import RejectedMutation, UnknownGesture, WiringError
from ..mvc_core.messages import SAVE_CHANGES, Command, ShowError
from ..mvc_core.triad import TriadHandle, dispatch
from ..mvc_core.values import ValueParseError, parse_value
from ..validation.rules import evaluate
from .base import Blueprint, Outcome
from .models import ClosedModel
from .views import FormView


class FormController(Controller):
    def __init__(self, runtime, component_id, parent, port, schema: dict[str, str]) -> None:
        super().__init__(runtime, component_id, parent)
        self.port = port
        self.schema = schema
        self.last: Outcome | None = None
        self.handlers = {
            "edit": self._edit,
            "focus": self._noop,
            "commit": self._commit,
            "close": self._close,
            "cancel": self._cancel,
            "yes": self._yes,
            "no": self._no,
            "open": self._open,
        }

    def refusal(self, verb, payload):
        reason = super().refusal(verb, payload)
        if reason:
            return reason
        if verb in ("edit", "focus") and payload.property not in self.schema:
            return f"no field {payload.property!r}"
        if verb == "open" and self.is_open:
            return "already open"
        return None

    # the view has cached the edit already; nothing reaches the model yet
    def _edit(self, gesture, env) -> None:
        self.last = None

    def _noop(self, gesture, env) -> None:
        pass

    def _open(self, gesture, env) -> None:
        self.is_open = True
        self._refresh()

    def _view_dirty(self) -> bool:
        view = self.view()
        self.bus.post(self.id, view.id, "is_dirty")
        return view.cache.dirty

    def _refresh(self) -> None:
        view = self.view()
        env = self.bus.post(self.id, view.id, "refresh")
        view.receive(env)

    def _discard(self) -> None:
        view = self.view()
        self.bus.post(self.id, view.id, "clear_cache")
        view.clear_cache()
        self._refresh()

    def commit(self) -> Outcome:
        """Pull the view cache and apply it to the model as one batch."""
        view = self.view()
        self.bus.post(self.id, view.id, "pull_cache")
        cache = view.pull_cache()
        changes, problems = {}, []
        for name, kind in self.schema.items():
            if name in cache:
                try:
                    changes[name] = parse_value(kind, cache[name])
                except ValueParseError as exc:
                    problems.append(f"{name}: {exc}")
        if problems:
            self.render(ShowError("; ".join(problems)))
            return Outcome.REFUSED
        if changes:
            try:
                self.port.set_many(changes)
            except RejectedMutation as exc:
                self.render(ShowError(exc.report.summary()))
                return Outcome.REFUSED
        self.bus.post(self.id, view.id, "clear_cache")
        view.clear_cache()
        return Outcome.COMMITTED

    def _commit(self, gesture, env) -> None:
        self.last = self.commit()

    def _close(self, gesture, env) -> None:
        if self._view_dirty():
            self.ask(SAVE_CHANGES, "close")
            self.last = Outcome.PROMPTED
        else:
            self.is_open = False
            self.last = Outcome.CLOSED

    def _cancel(self, gesture, env) -> None:
        if self.prompt is not None:
            self.answered()
        else:
            self._discard()
        self.last = Outcome.CANCELLED

    def _yes(self, gesture, env) -> None:
        self.answered()
        self.last = self.commit()
        if self.last is Outcome.COMMITTED:
            self.is_open = False

    def _no(self, gesture, env) -> None:
        self.answered()
        self._discard()
        self.is_open = False
        self.last = Outcome.CANCELLED


class ClosedModelBlueprint(Blueprint):
    pattern = "closed_model"
    view_kinds = ("form",)
    view_class = FormView

    def make_model(self, spec, runtime, model_id):
        model = ClosedModel(runtime, model_id, spec.schema_map(), spec.ruleset,
                            spec.options.get("initial"))
        report = evaluate(model.snapshot, model.ruleset)
        if report.violations:
            raise WiringError(f"closed model starts invalid: {report.summary()}")
        return model

    def make_controller(self, spec, runtime, controller_id, parent, model):
        port, _ = model.ports(caller=controller_id)
        return FormController(runtime, controller_id, parent, port, spec.schema_map())

    def start(self, triad: TriadHandle) -> None:
        triad.controller._refresh()


def cm_commit(triad: TriadHandle, gesture: Command = Command("commit")) -> Outcome:
    """Run a commit or close through the form controller; report the outcome."""
    if triad.pattern != "closed_model":
        raise WiringError("cm_commit needs a closed_model triad")
    if gesture.name not in ("commit", "close", "yes", "no", "cancel"):
        raise UnknownGesture(gesture, "not a commit-flow command")
    dispatch(triad, gesture)
    return triad.controller.last
