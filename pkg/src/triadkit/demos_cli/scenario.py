"""Scenario files (.scn) and the runner shared by scripted and interactive mode.

One JSON object per line. Every record has ``at`` (the tick it applies at)
and exactly one action field:

    {"at": 0, "gesture": "key 1"}                       optional "triad", "view"
    {"at": 0, "tick": 3}                                advance the clock
    {"at": 3, "expect": {"type": "SetCharAt", "char": "1"}}   optional "view"
    {"at": 0, "rule": {"type": "Required", "property": "code"}, "triad": "customer"}
    {"at": 0, "dataset_row": {"table": "employee", "row": {"id": 46, "name": "X"}}}

``rule`` and ``dataset_row`` records configure the demo, so they come before
any gesture or tick. Lines starting with ``#`` and blank lines are skipped.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable

from ..mvc_core.bus import ScreenEntry
from ..mvc_core.errors import GestureError, TriadError, UnknownGesture
from ..mvc_core.messages import canonical, gesture_from_record, parse_gesture
from ..mvc_core.triad import dispatch
from ..mvc_core.values import canonical_json
from ..validation.rules import rule_from_record
from .demos import DEMOS, DemoSession, build_demo

ACTIONS = ("gesture", "tick", "expect", "rule", "dataset_row")
OPTIONAL = ("triad", "view")
SETUP = ("rule", "dataset_row")
SCENARIO_DIR = Path(__file__).with_name("scenarios")


class ParseError(TriadError):
    def __init__(self, line: int, message: str) -> None:
        super().__init__(f"line {line}: {message}")
        self.line = line


class ExpectationFailed(TriadError):
    def __init__(self, line: int, tick: int, seq: int, expected: dict, found: Any) -> None:
        super().__init__(f"line {line}: expected {canonical_json(expected)} at or after tick {tick} "
                         f"seq {seq}; first divergent record: {found}")
        self.line = line
        self.tick = tick
        self.seq = seq
        self.expected = expected
        self.found = found


@dataclass(frozen=True)
class Record:
    line: int
    at: int
    action: str
    value: Any
    triad: str | None = None
    view: str | None = None


@dataclass
class Scenario:
    records: list[Record]
    name: str = ""

    @property
    def setup(self) -> list[Record]:
        return [r for r in self.records if r.action in SETUP]

    @property
    def timeline(self) -> list[Record]:
        return [r for r in self.records if r.action not in SETUP]


@dataclass(frozen=True)
class Transcript:
    lines: tuple[str, ...]

    @property
    def text(self) -> str:
        return "".join(line + "\n" for line in self.lines)

    @property
    def digest(self) -> str:
        return hashlib.sha256(self.text.encode("utf-8")).hexdigest()

    def write(self, path: str | Path) -> None:
        Path(path).write_text(self.text, encoding="utf-8")


def _parse_record(number: int, raw: str) -> Record:
    try:
        obj = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise ParseError(number, f"not a JSON object ({exc.msg})") from None
    if not isinstance(obj, dict):
        raise ParseError(number, "record must be a JSON object")
    at = obj.get("at")
    if not isinstance(at, int) or isinstance(at, bool) or at < 0:
        raise ParseError(number, "'at' must be a non-negative integer")
    actions = [a for a in ACTIONS if a in obj]
    if len(actions) != 1:
        raise ParseError(number, f"need exactly one of {', '.join(ACTIONS)}")
    unknown = set(obj) - {"at", *ACTIONS, *OPTIONAL}
    if unknown:
        raise ParseError(number, f"unknown field {sorted(unknown)[0]!r}")
    action = actions[0]
    value = obj[action]
    try:
        if action == "gesture":
            value = parse_gesture(value) if isinstance(value, str) else gesture_from_record(value)
        elif action == "tick":
            if not isinstance(value, int) or isinstance(value, bool) or value < 0:
                raise ValueError("tick must be a non-negative integer")
        elif action == "expect":
            if not isinstance(value, dict) or "type" not in value:
                raise ValueError("expect needs a render command matcher with a 'type'")
        elif action == "rule":
            value = rule_from_record(value)
        elif action == "dataset_row":
            if not isinstance(value, dict) or set(value) != {"table", "row"}:
                raise ValueError("dataset_row needs exactly 'table' and 'row'")
    except (GestureError, ValueError, KeyError, TypeError) as exc:
        raise ParseError(number, str(exc)) from None
    view = obj.get("view")
    return Record(number, at, action, value, obj.get("triad"), None if view is None else str(view))


def parse_scenario(text: str, name: str = "") -> Scenario:
    records: list[Record] = []
    clock = 0
    started = False
    for number, raw in enumerate(text.splitlines(), 1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        rec = _parse_record(number, stripped)
        if rec.action in SETUP:
            if started:
                raise ParseError(number, f"{rec.action} records must come before gestures and ticks")
        else:
            started = True
        if rec.at < clock:
            raise ParseError(number, f"record is at tick {rec.at} but the clock already reads {clock}")
        clock = rec.at + (rec.value if rec.action == "tick" else 0)
        records.append(rec)
    return Scenario(records, name)


def resolve_script(path: str | Path) -> Path:
    """A path on disk, or the name of a bundled scenario."""
    p = Path(path)
    if p.exists():
        return p
    bundled = SCENARIO_DIR / p.name
    if bundled.exists():
        return bundled
    raise FileNotFoundError(f"no scenario file {str(path)!r}")


def load_scenario(path: str | Path) -> Scenario:
    p = resolve_script(path)
    return parse_scenario(p.read_text(encoding="utf-8"), p.name)


def infer_demo(scenario: Scenario) -> str:
    prefix = scenario.name.split("_")[0].split(".")[0]
    if prefix not in DEMOS:
        raise ParseError(0, f"cannot tell the demo from {scenario.name!r}; pass it explicitly")
    return prefix


def _matches(entry: ScreenEntry, matcher: dict, view: str | None) -> bool:
    if view is not None and entry.view != view:
        return False
    record = entry.command.to_record()
    return all(k in record and record[k] == v for k, v in matcher.items())


def _describe(entry: ScreenEntry) -> str:
    return f"tick {entry.tick} seq {entry.seq} {entry.view} {canonical(entry.command)}"


class Runner:
    """Applies timeline records to a live demo session."""

    def __init__(self, session: DemoSession, echo: Callable[[str], None] | None = None) -> None:
        self.session = session
        self.runtime = session.runtime
        self.echo = echo
        self.cursor = 0  # screen_log position already consumed by expectations
        self._echoed = 0
        self.refused: list[UnknownGesture] = []

    def flush_echo(self) -> None:
        if self.echo is None:
            return
        for entry in self.runtime.screen_log[self._echoed:]:
            self.echo(f"{entry.view} {canonical(entry.command)}")
        self._echoed = len(self.runtime.screen_log)

    def advance_to(self, at: int) -> None:
        if at > self.runtime.now:
            self.runtime.tick(at - self.runtime.now)

    def apply(self, rec: Record) -> None:
        self.advance_to(rec.at)
        if rec.action == "tick":
            self.runtime.tick(rec.value)
        elif rec.action == "gesture":
            triad = self.session.triad(rec.triad)
            try:
                dispatch(triad, rec.value, view=self.session.view_id(triad, rec.view))
            except UnknownGesture as exc:
                # refused input is logged to diagnostics; the run goes on
                self.refused.append(exc)
        elif rec.action == "expect":
            self.expect(rec)
        self.flush_echo()

    def expect(self, rec: Record) -> None:
        view = None
        if rec.view is not None:
            view = self.session.view_id(self.session.triad(rec.triad), rec.view)
        log = self.runtime.screen_log
        for i in range(self.cursor, len(log)):
            if _matches(log[i], rec.value, view):
                self.cursor = i + 1
                return
        rest = log[self.cursor:]
        same = [e for e in rest if e.command.to_record()["type"] == rec.value["type"]]
        first = (same or rest or [None])[0]
        if first is None:
            last = self.runtime.bus.log[-1].seq if self.runtime.bus.log else 0
            raise ExpectationFailed(rec.line, self.runtime.now, last, rec.value, "end of run")
        raise ExpectationFailed(rec.line, first.tick, first.seq, rec.value, _describe(first))

    def transcript(self) -> Transcript:
        return Transcript(tuple(self.runtime.transcript()))


def session_for(scenario: Scenario, demo: str, *, seed: int = 0, latency: int | None = None,
                fault_rate: float | None = None) -> DemoSession:
    rules: dict[str, list] = {}
    rows: dict[str, list] = {}
    names = list(DEMOS[demo].specs)
    for rec in scenario.setup:
        if rec.action == "rule":
            rules.setdefault(rec.triad or names[0], []).append(rec.value)
        else:
            rows.setdefault(rec.value["table"], []).append(rec.value["row"])
    return build_demo(demo, seed=seed, latency=latency, fault_rate=fault_rate, rules=rules, rows=rows)


@dataclass
class RunResult:
    transcript: Transcript
    session: DemoSession
    refused: list[UnknownGesture] = field(default_factory=list)


def run_scenario(scenario: Scenario, demo: str | None = None, *, seed: int = 0,
                 latency: int | None = None, fault_rate: float | None = None,
                 echo: Callable[[str], None] | None = None) -> RunResult:
    demo = demo or infer_demo(scenario)
    session = session_for(scenario, demo, seed=seed, latency=latency, fault_rate=fault_rate)
    runner = Runner(session, echo)
    runner.flush_echo()
    for rec in scenario.timeline:
        runner.apply(rec)
    return RunResult(runner.transcript(), session, runner.refused)
