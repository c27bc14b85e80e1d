"""Standard views. Each one just records what it is told to show."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..mvc_core.bus import EventEnvelope
from ..mvc_core.components import View
from ..mvc_core.messages import Edit, SetText


class MaskedFieldView(View):
    """Edit box that only knows ``SetCharAt``-style commands; no model access."""


@dataclass
class ViewCache:
    entries: dict[str, str] = field(default_factory=dict)

    @property
    def dirty(self) -> bool:
        return bool(self.entries)

    def clear(self) -> None:
        self.entries.clear()


class FormView(View):
    """Dialog that keeps typed text in its own cache until the controller pulls it."""

    def __init__(self, runtime, component_id: str) -> None:
        super().__init__(runtime, component_id)
        self.cache = ViewCache()

    def on_input(self, gesture, env: EventEnvelope) -> None:
        if isinstance(gesture, Edit):
            self.cache.entries[gesture.property] = gesture.raw
            self.show(SetText(gesture.property, gesture.raw), env)

    def pull_cache(self) -> dict[str, str]:
        return dict(self.cache.entries)

    def clear_cache(self) -> None:
        self.cache.clear()


class SheetView(View):
    """Grid window; renders change notifications straight from the model."""


class PageView(View):
    """Paged list dialog."""


class ActiveFormView(View):
    """Reads the model itself; forwards edits to the controller as events."""
