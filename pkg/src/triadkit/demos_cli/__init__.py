"""The five bundled demos, the scenario format, and the command line."""

from .cli import main
from .demos import DEMOS, DemoDescriptor, DemoSession, build_demo, controller_types, list_demos
from .scenario import (
    ExpectationFailed, ParseError, Scenario, Transcript, load_scenario, parse_scenario, run_scenario,
)

__all__ = [
    "main", "DEMOS", "DemoDescriptor", "DemoSession", "build_demo", "controller_types", "list_demos",
    "ExpectationFailed", "ParseError", "Scenario", "Transcript", "load_scenario", "parse_scenario",
    "run_scenario",
]
