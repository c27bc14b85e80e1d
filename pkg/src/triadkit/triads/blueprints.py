"""Pattern name -> blueprint."""

from __future__ import annotations

from ..mvc_core.errors import WiringError
from .base import Blueprint
from .closed_model import ClosedModelBlueprint
from .disconnected_model import DisconnectedModelBlueprint
from .facade import ActiveViewBlueprint, FacadeBlueprint
from .open_model import OpenModelBlueprint
from .passive_view import PassiveViewBlueprint

BLUEPRINTS: dict[str, Blueprint] = {
    bp.pattern: bp
    for bp in (
        PassiveViewBlueprint(), ClosedModelBlueprint(), OpenModelBlueprint(),
        DisconnectedModelBlueprint(), FacadeBlueprint(), ActiveViewBlueprint(),
    )
}


def blueprint_for(pattern: str) -> Blueprint:
    try:
        return BLUEPRINTS[pattern]
    except KeyError:
        raise WiringError(f"unknown pattern {pattern!r}") from None
