"""Seeded random gesture sessions against the bundled demos."""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from ..demos_cli.demos import DemoSession, build_demo
from ..mvc_core.errors import UnknownGesture
from ..mvc_core.messages import Command, Edit, Focus, Gesture, Key
from ..mvc_core.triad import MULTI_VIEW_PATTERNS, TriadHandle, attach_view, dispatch

KEYS = "0123456789AZaz-( ."
RAW = {
    "text": ["ABC", "XYZ", "ab", "", "Long text", "A1B"],
    "integer": ["0", "1", "5", "9", "10", "42", "150", "151", "1001", "-3", "x", ""],
    "decimal": ["0", "12.5", "99.99", "100", "150", "-1", "x", ""],
    "flag": ["true", "false", "maybe", ""],
}
FORM_RAW = {
    "name": ["Ada", "Bo", "", "Grace"],
    "zip": ["10-115", "99-999", "1-115", "ab-cde", ""],
}
CELL_RAW = ["=()", "=(A1)", "=A1+1", "=((", "=1)", "hello", "", "3", "=SUM(A1:B2)"]
PROMPT_ANSWERS = ["yes", "no", "cancel", "retry", "abort", "ignore"]
MAX_VIEWS = 5


@dataclass
class FuzzRun:
    session: DemoSession
    gestures: list[tuple[str, str, Gesture]] = field(default_factory=list)
    refused: int = 0

    @property
    def runtime(self):
        return self.session.runtime


def _edit(rng: random.Random, triad: TriadHandle) -> Edit:
    name, kind = rng.choice(list(triad.spec.schema))
    if triad.pattern == "open_model":
        return Edit(name, rng.choice(CELL_RAW))
    pool = FORM_RAW.get(name, RAW[kind]) if triad.pattern == "closed_model" else RAW[kind]
    return Edit(name, rng.choice(pool))


def _gesture(rng: random.Random, triad: TriadHandle) -> Gesture:
    pattern = triad.pattern
    names = triad.spec.names
    if pattern == "passive_view":
        roll = rng.random()
        if roll < 0.85:
            return Key(rng.choice(KEYS))
        return rng.choice([Command("cancel"), Focus(names[0]), Command("open")])
    if pattern == "disconnected_model":
        return Command(rng.choice(["next_page", "next_page", "prev_page", "open", *PROMPT_ANSWERS]))
    if rng.random() < 0.5:
        return _edit(rng, triad)
    if pattern == "closed_model":
        return rng.choice([Command("commit"), Command("commit"), Command("close"), Command("open"),
                           Focus(rng.choice(names)), *(Command(a) for a in ("yes", "no", "cancel"))])
    if pattern == "open_model":
        return rng.choice([Command("commit"), Command("commit"), Command("new_window"),
                           Command("close"), Focus(rng.choice(names))])
    return Command(rng.choice(["open", "open", "save", "save", "close", *PROMPT_ANSWERS]))


def random_session(demo: str, seed: int, n: int, *, fault_rate: float | None = None,
                   latency: int | None = None, views: int = 1) -> FuzzRun:
    """Apply ``n`` random gestures, interleaved with ticks, then settle.

    Refused gestures count toward ``n``; they exercise the refusal path.
    ``views`` opens extra windows up front on multi-view demos.
    """
    rng = random.Random(seed)
    session = build_demo(demo, seed=seed, latency=latency, fault_rate=fault_rate)
    run = FuzzRun(session)
    for triad in session.triads.values():
        for _ in range(views - 1 if triad.pattern in MULTI_VIEW_PATTERNS else 0):
            attach_view(triad)
    for _ in range(n):
        if rng.random() < 0.3:
            session.runtime.tick(rng.randint(1, 4))
        name = rng.choice(list(session.triads))
        triad = session.triads[name]
        live = [v for v in triad.view_ids if not triad.views[v].detached]
        gesture = _gesture(rng, triad)
        if gesture == Command("new_window") and len(live) >= MAX_VIEWS:
            gesture = Command("commit")
        view = rng.choice(live)
        run.gestures.append((name, view, gesture))
        try:
            dispatch(triad, gesture, view=view)
        except UnknownGesture:
            run.refused += 1
    session.runtime.run_until_idle()
    return run
