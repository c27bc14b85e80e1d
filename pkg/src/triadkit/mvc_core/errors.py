"""Exception hierarchy shared by all triadkit modules."""


class TriadError(Exception):
    """Base class for triadkit errors."""


class WiringError(TriadError):
    """A TriadSpec violates its pattern's wiring rules."""


class SchemaError(WiringError):
    """Schema or ruleset is malformed (duplicate or unknown properties)."""


class GestureError(TriadError, ValueError):
    """Gesture text or fields cannot be parsed."""


class UnknownGesture(TriadError):
    """The gesture is not meaningful for the triad in its current state."""

    def __init__(self, gesture, reason: str = "") -> None:
        self.gesture = gesture
        self.reason = reason
        super().__init__(f"{gesture!r} refused{': ' + reason if reason else ''}")


class ForbiddenEdge(TriadError):
    """The bus refused a message along an edge the pattern forbids."""

    def __init__(self, source: str, target: str, verb: str, reason: str) -> None:
        self.source = source
        self.target = target
        self.verb = verb
        self.reason = reason
        super().__init__(f"{source}->{target} {verb}: {reason}")


class PatternForbidsMultiView(TriadError):
    """attach_view on a pattern that has exactly one view."""


class RejectedMutation(TriadError):
    """A closed-model mutator refused a candidate snapshot."""

    def __init__(self, report) -> None:
        self.report = report
        super().__init__("; ".join(v.message for v in report.violations) or "rejected")


class ViewNotBound(TriadError):
    """A view read-port call arrived before the model finished loading."""
