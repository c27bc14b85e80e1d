"""The six pattern blueprints and their pattern-specific operations."""

from .base import Blueprint, Outcome
from .blueprints import BLUEPRINTS, blueprint_for
from .closed_model import cm_commit
from .disconnected_model import PageCursor, dm_on_service_event
from .facade import GenericController, av_forward_edit, generic_save, msf_open
from .mask import MaskStep, mask_step
from .views import ViewCache

__all__ = [
    "Blueprint", "Outcome", "BLUEPRINTS", "blueprint_for", "cm_commit", "PageCursor",
    "dm_on_service_event", "GenericController", "av_forward_edit", "generic_save", "msf_open",
    "MaskStep", "mask_step", "ViewCache",
]
