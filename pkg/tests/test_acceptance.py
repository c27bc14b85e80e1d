"""The nine acceptance criteria, one test (or test family) each.

Run with ``pytest tests/test_acceptance.py``; the terminal summary lists one
PASS/FAIL line per criterion.
"""

import itertools
import json
import os
import random
import subprocess
import sys

import pytest

from conftest import GOLDEN
from oracles import form_ok, mask_session, recount_edges
from triadkit import (
    Command, Edit, Key, RejectedMutation, SetCharAt, SetText, ShowPage, TriadSpec, UnknownGesture,
    assemble_triad, attach_view, dispatch,
)
from triadkit.demos_cli import build_demo, load_scenario, run_scenario
from triadkit.demos_cli.demos import descriptor
from triadkit.demos_cli.scenario import SCENARIO_DIR
from triadkit.mvc_core.bus import Kind
from triadkit.mvc_core.values import Absent, Text, canonical_json
from triadkit.testkit import audit, check_conformance, random_session
from triadkit.validation import FormulaWellFormed, evaluate, validate_open

C, V, M, S = Kind.CONTROLLER, Kind.VIEW, Kind.MODEL, Kind.SERVICE
DEMOS = ["masked", "form", "sheet", "pager", "refdata"]


def criterion(n, text):
    return pytest.mark.criterion(n, text)


# -- 1 ------------------------------------------------------------------------------------------

@criterion(1, "1000 fuzzed gestures per demo raise no conformance violation")
@pytest.mark.parametrize("demo", DEMOS)
def test_fuzzed_demos_conform(demo):
    patterns = descriptor(demo).patterns
    gestures = 0
    for seed in range(4):
        run = random_session(demo, seed, 250, fault_rate=0.2, views=3)
        gestures += len(run.gestures)
        report = audit(run.runtime)
        assert report.total == len(run.runtime.bus.log)
        for pattern in patterns:
            found = check_conformance(report, pattern)
            assert found == [], [str(v) for v in found[:5]]
    assert gestures >= 1000


# -- 2 ------------------------------------------------------------------------------------------

@criterion(2, "masked demo: no View<->Model traffic over 100 seeds")
def test_masked_no_view_model_edges():
    for seed in range(100):
        run = random_session("masked", seed, 60)
        report = audit(run.runtime)
        assert report.count(V, M) == report.count(M, V) == 0, seed
        assert not any({e.source_kind, e.target_kind} == {V, M} for e in run.runtime.bus.log)


# -- 3 ------------------------------------------------------------------------------------------

POOLS = {
    "name": ["Ada", "Grace", "", None],
    "age": [-1, 0, 36, 150, 151, None],
    "zip": ["10-115", "99-999", "1-1155", "ab-cde", "", None],
    "start": [-5, 0, 5, 999, 1001, None],
    "end": [-1, 0, 5, 1000, 1001, None],
}


def _plain(snapshot):
    out = {}
    for name in POOLS:
        v = snapshot.get(name)
        out[name] = None if v is Absent else (v.text if isinstance(v, Text) else v.value)
    return out


@criterion(3, "10k closed-model mutations: rejection leaves the digest, decisions match the oracle")
def test_closed_model_mutations():
    triad = build_demo("form").triad()
    port, ruleset = triad.controller_port, triad.model.ruleset
    rng = random.Random(2024)
    accepted = rejected = 0
    for _ in range(10_000):
        name = rng.choice(list(POOLS))
        value = rng.choice(POOLS[name])
        snap = triad.model.snapshot
        digest, revision = snap.digest(), snap.revision
        candidate = dict(_plain(snap), **{name: value})
        expected = form_ok(candidate)
        assert expected == evaluate(snap.replaced({name: triad.model.coerce_input(name, value)}), ruleset).clean
        try:
            port.set(name, value)
        except RejectedMutation:
            rejected += 1
            assert not expected
            assert triad.model.snapshot.digest() == digest
            assert triad.model.snapshot.revision == revision
        else:
            accepted += 1
            assert expected
            assert _plain(triad.model.snapshot) == candidate
            assert triad.model.snapshot.revision == revision + 1
    assert accepted and rejected


# -- 4 ------------------------------------------------------------------------------------------

def _shadow(view, cells):
    state = {c: "" for c in cells}
    for cmd in view.screen:
        if isinstance(cmd, SetText):
            state[cmd.property] = cmd.text
    return state


@criterion(4, "open model: 2-5 windows converge after 200 edits; '=()' gives one formula violation")
@pytest.mark.parametrize("views", [2, 3, 4, 5])
def test_open_model_convergence(views):
    session = build_demo("sheet")
    sheet = session.triad()
    cells = sheet.spec.names
    for _ in range(views - 1):
        attach_view(sheet)
    rng = random.Random(views)
    raws = ["=()", "=(A1)", "=SUM(A1:B2)", "=((", "x", "", "12"]
    for _ in range(200):
        dispatch(sheet, Edit(rng.choice(cells), rng.choice(raws)), view=rng.choice(sheet.view_ids))
    model = {c: sheet.model.snapshot.get(c).display() for c in cells}
    for vid in sheet.view_ids:
        assert _shadow(sheet.views[vid], cells) == model


@criterion(4, "open model: 2-5 windows converge after 200 edits; '=()' gives one formula violation")
def test_open_model_invalid_formula_kept():
    sheet = build_demo("sheet").triad()
    dispatch(sheet, Edit("A1", "=()"))
    assert sheet.model.snapshot.get("A1") == Text("=()")
    report = validate_open(sheet.controller_port)
    assert len(report.violations) == 1
    violation = report.violations[0]
    assert isinstance(sheet.model.ruleset[violation.rule_index], FormulaWellFormed)
    assert violation.properties == ("A1",)
    result = run_scenario(load_scenario("sheet_invalid_formula.scn"))
    replayed = result.session.triad()
    for vid in ("sheet.v1", "sheet.v2"):
        assert SetText("A1", "=()") in replayed.views[vid].screen
    assert replayed.model.snapshot.get("A1") == Text("=(B1)")


# -- 5 ------------------------------------------------------------------------------------------

@criterion(5, "pager at fault rate 0.3: no Service<->View/Model edges, one prompt per fault")
def test_pager_faults_prompt_controller():
    session = build_demo("pager", seed=11, fault_rate=0.3)
    triad, runtime = session.triad(), session.runtime
    runtime.run_until_idle()
    direction = 1

    def fetches():
        return sum(1 for e in runtime.bus.log if e.verb == "submit")

    while fetches() < 500:
        ctrl = triad.controller
        if ctrl.prompt is not None:
            dispatch(triad, Command("retry"))
        else:
            verb = "next_page" if direction > 0 else "prev_page"
            if not ctrl.can_handle(verb, Command(verb)):
                direction = -direction
                verb = "next_page" if direction > 0 else "prev_page"
            # cached pages come back without a request; forget them so every move fetches
            ctrl.cursor.cache.clear()
            dispatch(triad, Command(verb))
        runtime.run_until_idle()
    report = audit(runtime)
    for a, b in ((S, V), (V, S), (S, M), (M, S)):
        assert report.count(a, b) == 0
    # this drive never cancels a fetch, so every fault reaches a waiting controller
    assert runtime.diagnostics.of_kind("StaleCompletion") == []
    live_faults = report.count(S, C, "fault")
    prompts = [p for p in report.prompts if p.kind == "AbortRetryIgnore"]
    assert live_faults > 0
    assert len(prompts) == live_faults
    assert all(p.source_kind is C for p in report.prompts)
    assert 0.2 < live_faults / fetches() < 0.45


@criterion(5, "pager at fault rate 0.3: no Service<->View/Model edges, one prompt per fault")
def test_pager_third_attempt_succeeds():
    session = build_demo("pager")
    triad, runtime = session.triad(), session.runtime
    runtime.run_until_idle()
    dispatch(triad, Command("next_page"))
    outcomes = []
    while True:
        runtime.run_until_idle()
        outcomes.append(session.service.delivered[-1].is_fault)
        if triad.controller.prompt is None:
            break
        dispatch(triad, Command("retry"))
    assert outcomes == [True, True, False]
    page = [c for c in triad.view().screen if isinstance(c, ShowPage)][-1]
    assert page.page == 1 and len(page.rows) == 20


# -- 6 ------------------------------------------------------------------------------------------

VALUE_KEYS = {"int", "text", "dec", "flag", "absent"}


def _erase(obj):
    if isinstance(obj, dict):
        if set(obj) and set(obj) <= VALUE_KEYS:
            return "*"
        return {k: (v if k == "type" else _erase(v)) for k, v in obj.items()}
    if isinstance(obj, list):
        if len(obj) == 2 and isinstance(obj[0], str) and _erase(obj[1]) == "*":
            return "*"
        return [_erase(x) for x in obj]
    if obj is None:
        return None
    return "*"


def _erased_transcript(triad_name):
    session = build_demo("refdata")
    triad, runtime = session.triad(triad_name), session.runtime
    steps = [Command("open"), None, Edit("code", "SMR"), Command("save"), None,
             Edit("code", "x1"), Command("save"), Command("close"), Command("no")]
    for step in steps:
        if step is None:
            runtime.run_until_idle()
        else:
            dispatch(triad, step)
    runtime.run_until_idle()
    prefix = triad_name + "."
    out = []
    for line in runtime.transcript():
        tick, _seq, route, verb, payload = line.split(" ", 4)
        src, tgt = route.split("->")
        if not (src.startswith(prefix) or tgt.startswith(prefix)):
            continue
        route = route.replace(prefix, "T.")
        out.append(f"{tick} {route} {verb} {canonical_json(_erase(json.loads(payload)))}")
    return out


@criterion(6, "refdata: discount and customer transcripts match after erasing ids and values")
def test_refdata_structurally_identical():
    discount = _erased_transcript("discount")
    customer = _erased_transcript("customer")
    assert len(discount) > 20
    assert discount == customer


# -- 7 ------------------------------------------------------------------------------------------

@criterion(7, "masked triad matches the mask oracle for all masks and key runs up to length 4")
def test_mask_oracle_equivalence():
    checked = 0
    for mlen in range(1, 5):
        for mask in map("".join, itertools.product("#A-(", repeat=mlen)):
            spec = TriadSpec("passive_view", [("f", "text")], view_kind="masked_field", options={"mask": mask})
            for klen in range(0, 5):
                for keys in map("".join, itertools.product("1a-(", repeat=klen)):
                    triad = assemble_triad(spec)
                    for key, (ok, writes, _shown) in zip(keys, mask_session(mask, keys)):
                        got = dispatch(triad, Key(key))
                        assert got == [SetCharAt("f", p, c) for p, c in writes], (mask, keys)
                    checked += 1
    assert checked == 340 * 341


# -- 8 ------------------------------------------------------------------------------------------

SCRIPTS = sorted(p.stem for p in SCENARIO_DIR.glob("*.scn"))


@criterion(8, "bundled scenarios replay byte-identically, across processes, and match the goldens")
@pytest.mark.parametrize("name", SCRIPTS)
def test_determinism_and_goldens(name, tmp_path):
    first = run_scenario(load_scenario(f"{name}.scn")).transcript
    second = run_scenario(load_scenario(f"{name}.scn")).transcript
    assert first.digest == second.digest
    golden = (GOLDEN / f"{name}.transcript").read_text()
    assert first.text == golden
    out = tmp_path / "t.txt"
    env = dict(os.environ, PYTHONHASHSEED="12345")
    subprocess.run([sys.executable, "-m", "triadkit.demos_cli", "--script", f"{name}.scn", "--out", str(out)],
                   check=True, env=env, capture_output=True)
    assert out.read_text() == golden


# -- 9 ------------------------------------------------------------------------------------------

@criterion(9, "pager shows 45 employees as pages of 20/20/5, each id exactly once")
def test_paging_conservation():
    session = build_demo("pager")
    triad, runtime = session.triad(), session.runtime
    runtime.run_until_idle()
    for _ in range(2):
        dispatch(triad, Command("next_page"))
        runtime.run_until_idle()
        while triad.controller.prompt is not None:
            dispatch(triad, Command("retry"))
            runtime.run_until_idle()
    with pytest.raises(UnknownGesture):
        dispatch(triad, Command("next_page"))
    pages = {}
    for cmd in triad.view().screen:
        if isinstance(cmd, ShowPage):
            pages[cmd.page] = cmd
    assert sorted(pages) == [0, 1, 2]
    assert [len(pages[i].rows) for i in range(3)] == [20, 20, 5]
    assert {p.pages for p in pages.values()} == {3}
    ids = [r.get("id").value for i in range(3) for r in pages[i].rows]
    assert len(ids) == len(set(ids))
    assert set(ids) == {r.get("id").value for r in session.service.rows("employee")} == set(range(1, 46))
    assert recount_edges(runtime.bus.log).get(("Service", "View", "complete", False)) is None
