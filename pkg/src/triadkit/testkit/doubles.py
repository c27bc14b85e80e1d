"""View doubles: recording, scripted, and hostile stand-ins for a real view."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Sequence

from ..mvc_core.components import View
from ..mvc_core.errors import ForbiddenEdge, TriadError, UnknownGesture
from ..mvc_core.messages import PortCall, RenderCommand
from ..mvc_core.triad import TriadHandle, dispatch

MODES = ("scripted", "recording", "hostile")


class BadScript(TriadError):
    pass


@dataclass(frozen=True)
class HostileCall:
    """A call a well-behaved view would never make."""

    target: str = "model"  # "model", "controller" or a component id
    verb: str = "set"
    args: tuple = ()
    mutating: bool = True


@dataclass
class ViewDouble:
    mode: str
    script: list[tuple[int, Any]] = field(default_factory=list)
    view: View | None = None
    triad: TriadHandle | None = None
    refused: list[Exception] = field(default_factory=list)
    _mark: int = 0

    def bind(self, view: View, triad: TriadHandle) -> None:
        self.view = view
        self.triad = triad

    @property
    def captured(self) -> list[RenderCommand]:
        """Commands rendered to the bound view since ``run`` started."""
        return list(self.view.screen[self._mark:]) if self.view else []

    def run(self) -> None:
        """Play the script against the bound triad, advancing virtual time.

        Scripted doubles stop on a refused gesture. Recording doubles only
        relay the user's gestures and log refusals; they never send anything
        on their own.
        """
        if self.triad is None:
            raise BadScript("double is not bound to a triad")
        runtime = self.triad.runtime
        self._mark = len(self.view.screen)
        for at, item in self.script:
            if at > runtime.now:
                runtime.tick(at - runtime.now)
            if self.mode == "hostile":
                self._attack(item)
                continue
            try:
                dispatch(self.triad, item, view=self.view.id)
            except UnknownGesture as exc:
                self.refused.append(exc)
                if self.mode == "scripted":
                    raise

    def _attack(self, call: HostileCall) -> None:
        targets = {"model": self.triad.model.id, "controller": self.triad.controller_id}
        target = targets.get(call.target, call.target)
        try:
            self.triad.runtime.bus.post(self.view.id, target, call.verb,
                                        PortCall(call.verb, call.args), mutating=call.mutating)
        except ForbiddenEdge as exc:
            self.refused.append(exc)


def make_view_double(mode: str, script: Sequence[tuple[int, Any]] = ()) -> ViewDouble:
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}")
    script = list(script)
    ticks = [at for at, _ in script]
    if any(b < a for a, b in zip(ticks, ticks[1:])):
        raise BadScript("script ticks must be non-decreasing")
    if mode == "hostile" and not all(isinstance(c, HostileCall) for _, c in script):
        raise BadScript("hostile scripts list HostileCall entries")
    return ViewDouble(mode, script)
