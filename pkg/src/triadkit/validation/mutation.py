"""The two validation-timing contracts, expressed over controller ports."""

from __future__ import annotations

from ..mvc_core.messages import Change
from .rules import ValidationReport


def mutate_closed(port, prop: str, value: object) -> int:
    """Set one property through a closed model's controller port.

    Returns the new revision. Raises RejectedMutation with the report when
    the candidate snapshot breaks a rule; the model is then untouched.
    """
    return port.set(prop, value)


def mutate_open(port, prop: str, value: object) -> Change:
    """Store ``value`` unconditionally and broadcast the change."""
    return port.set(prop, value)


def validate_open(port) -> ValidationReport:
    """Evaluate the open model's current snapshot on the controller's request."""
    return port.validate()
