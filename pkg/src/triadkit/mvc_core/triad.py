"""Declarative triad specs, runtime handles, and the dispatch entry points."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Sequence

from .bus import Runtime
from .components import Controller, Model, View, ViewReadPort, ControllerPort, escalate, owner_of
from .errors import PatternForbidsMultiView, SchemaError, UnknownGesture, WiringError
from .messages import Gesture, RenderCommand
from .values import VALUE_KINDS

PATTERNS = (
    "passive_view", "closed_model", "open_model", "disconnected_model",
    "model_as_services_facade", "active_view",
)
SERVICE_PATTERNS = ("disconnected_model", "model_as_services_facade")
MULTI_VIEW_PATTERNS = ("open_model", "active_view")


@dataclass(frozen=True)
class TriadSpec:
    pattern: str
    schema: Sequence[tuple[str, str]]
    ruleset: Sequence[Any] = ()
    view_kind: str = ""
    controller_kind: str = "specific"
    service_binding: str | None = None
    options: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(self, "schema", tuple(tuple(p) for p in self.schema))
        object.__setattr__(self, "ruleset", tuple(self.ruleset))

    @property
    def names(self) -> list[str]:
        return [name for name, _ in self.schema]

    def schema_map(self) -> dict[str, str]:
        return dict(self.schema)

    def check(self) -> None:
        """Raise WiringError/SchemaError unless this triad description is well formed."""
        from ..validation.rules import check_ruleset

        if self.pattern not in PATTERNS:
            raise WiringError(f"unknown pattern {self.pattern!r}")
        seen = set()
        for name, kind in self.schema:
            if name in seen:
                raise SchemaError(f"duplicate property {name!r}")
            if kind not in VALUE_KINDS:
                raise SchemaError(f"property {name!r} has unknown kind {kind!r}")
            seen.add(name)
        check_ruleset(self.ruleset, self.names)
        needs_service = self.pattern in SERVICE_PATTERNS
        if needs_service and not self.service_binding:
            raise WiringError(f"{self.pattern} requires a service binding")
        if not needs_service and self.service_binding:
            raise WiringError(f"{self.pattern} must not bind a service")
        if self.controller_kind not in ("generic", "specific"):
            raise WiringError(f"unknown controller kind {self.controller_kind!r}")
        if self.pattern == "passive_view" and self.view_kind == "masked_field" \
                and not self.options.get("mask"):
            raise WiringError("masked_field view needs a mask option")


@dataclass
class TriadHandle:
    id: str
    pattern: str
    controller_port: ControllerPort
    view_port: ViewReadPort | None
    view_ids: list[str]
    controller_id: str
    parent_id: str | None
    runtime: Runtime = field(repr=False)
    spec: TriadSpec = field(repr=False)
    model: Model = field(repr=False)
    controller: Controller = field(repr=False)
    views: dict[str, View] = field(repr=False, default_factory=dict)
    view_factory: Any = field(repr=False, default=None)

    def view(self, view_id: str | None = None) -> View:
        return self.views[view_id or self.view_ids[0]]

    def ports(self) -> tuple[ControllerPort, ViewReadPort | None]:
        return self.controller_port, self.view_port


def assemble_triad(spec: TriadSpec, *, runtime: Runtime | None = None,
                   parent: "TriadHandle | Controller | None" = None, view: View | None = None,
                   triad_id: str | None = None) -> TriadHandle:
    """Wire one pattern instance and emit its initial renders."""
    from ..triads.blueprints import blueprint_for

    spec.check()
    runtime = runtime or Runtime()
    blueprint = blueprint_for(spec.pattern)
    blueprint.check(spec, runtime)
    tid = triad_id or runtime.next_triad_id()
    parent_ctrl = parent.controller if isinstance(parent, TriadHandle) else parent
    return blueprint.build(spec, runtime, tid, parent_ctrl, view)


def dispatch(triad: TriadHandle, gesture: Gesture, view: str | None = None) -> list[RenderCommand]:
    """Feed one gesture in through a view; run the controller to quiescence.

    Returns every render command shown on any attached view, in bus order.
    Service completions are never processed here.
    """
    runtime = triad.runtime
    source = triad.views[view] if view else triad.view()
    ctrl = triad.controller
    if source.detached:
        raise UnknownGesture(gesture, f"{source.id} is detached")
    if owner_of(ctrl, gesture.verb, gesture) is None:
        reason = ctrl.refusal(gesture.verb, gesture) or "no controller handles it"
        runtime.diagnostics.report("UnknownGesture", ctrl.id, f"{gesture!r}: {reason}")
        raise UnknownGesture(gesture, reason)
    mark = len(runtime.screen_log)
    env = runtime.bus.post(source.id, ctrl.id, gesture.verb, gesture)
    source.on_input(gesture, env)
    escalate(ctrl, env)
    return [entry.command for entry in runtime.screen_log[mark:]]


def attach_view(triad: TriadHandle, view_kind: str | None = None, view: View | None = None) -> str:
    """Open another window on the same model (multi-view patterns only)."""
    if triad.pattern not in MULTI_VIEW_PATTERNS:
        raise PatternForbidsMultiView(f"{triad.pattern} triads have exactly one view")
    if view_kind is not None and view_kind != triad.spec.view_kind:
        raise WiringError(f"{triad.pattern} triad shows {triad.spec.view_kind!r} views, not {view_kind!r}")
    return triad.view_factory(triad, view)
