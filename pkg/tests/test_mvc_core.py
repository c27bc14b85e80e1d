import pytest
from hypothesis import given, strategies as st

from triadkit import (
    Command, Detach, Edit, ForbiddenEdge, Key, PatternForbidsMultiView, Prompt, Runtime, SchemaError,
    SelectRange, SetCharAt, SetText, ShowBusy, TriadSpec, UnknownGesture, WiringError,
    assemble_triad, attach_view, dispatch, parse_gesture,
)
from triadkit.mvc_core import Disposition, escalate
from triadkit.mvc_core.errors import GestureError
from triadkit.mvc_core.messages import Focus
from triadkit.services_sim import ServicePlan, ServiceSim
from triadkit.testkit import audit
from triadkit.validation import FormulaWellFormed, IntRange, Required

MASKED = TriadSpec("passive_view", [("field", "text")], view_kind="masked_field", options={"mask": "##-##"})
SHEET = TriadSpec("open_model", [("A1", "text"), ("B1", "text")],
                  [FormulaWellFormed("A1"), FormulaWellFormed("B1")], view_kind="sheet")
FORM = TriadSpec("closed_model", [("name", "text"), ("age", "integer")],
                 [Required("name"), IntRange("age", 0, 150)], view_kind="form",
                 options={"initial": {"name": "Ada", "age": 30}})
ACTIVE = TriadSpec("active_view", [("name", "text"), ("qty", "integer")], [Required("name")],
                   view_kind="active_form", controller_kind="generic",
                   options={"initial": {"name": "Ada", "qty": 1}})


# -- messages -------------------------------------------------------------------

@pytest.mark.parametrize("text,gesture", [
    ("key 3", Key("3")),
    ("key  ", Key(" ")),
    ("edit A1 =()", Edit("A1", "=()")),
    ("edit name Ada Lovelace", Edit("name", "Ada Lovelace")),
    ("focus A1", Focus("A1")),
    ("new_window", Command("new_window")),
])
def test_parse_gesture(text, gesture):
    assert parse_gesture(text) == gesture


@pytest.mark.parametrize("text", ["", "explode", "key", "edit", "commit now"])
def test_parse_gesture_rejects(text):
    with pytest.raises(GestureError):
        parse_gesture(text)


def test_prompt_options_are_fixed():
    assert Prompt("SaveChanges").options == ("yes", "no", "cancel")
    assert Prompt("AbortRetryIgnore").options == ("abort", "retry", "ignore")
    with pytest.raises(ValueError):
        Prompt("SaveChanges", ("yes", "no"))


def test_render_invariants():
    with pytest.raises(ValueError):
        SetCharAt("f", -1, "x")
    with pytest.raises(ValueError):
        SelectRange("f", 3, 1)


# -- assembly ---------------------------------------------------------------------

def test_passive_view_handle_has_no_view_read_port():
    triad = assemble_triad(MASKED)
    assert triad.view_port is None
    assert triad.view_ids == [f"{triad.id}.v1"]


def test_open_model_with_service_binding_is_a_wiring_error():
    spec = TriadSpec("open_model", [("A1", "text")], view_kind="sheet", service_binding="svc")
    with pytest.raises(WiringError):
        assemble_triad(spec)


def test_duplicate_property_is_a_schema_error():
    with pytest.raises(SchemaError):
        assemble_triad(TriadSpec("open_model", [("A1", "text"), ("A1", "text")], view_kind="sheet"))


def test_masked_field_needs_mask():
    with pytest.raises(WiringError):
        assemble_triad(TriadSpec("passive_view", [("f", "text")], view_kind="masked_field"))


def test_service_pattern_needs_binding():
    with pytest.raises(WiringError):
        assemble_triad(TriadSpec("disconnected_model", [("id", "integer")], view_kind="pager"))


def test_disconnected_model_first_render_is_busy():
    runtime = Runtime()
    ServiceSim(runtime, ServicePlan(dataset={"employee": []}))
    spec = TriadSpec("disconnected_model", [("id", "integer"), ("name", "text")], view_kind="pager",
                     service_binding="svc", options={"entity": "employee", "page_size": 20})
    assemble_triad(spec, runtime=runtime)
    first = runtime.screen_log[0]
    assert first.command == ShowBusy(True)


# -- dispatch ---------------------------------------------------------------------

def test_masked_key_emits_set_char_at():
    triad = assemble_triad(MASKED)
    assert dispatch(triad, Key("3")) == [SetCharAt("field", 0, "3")]


def test_open_model_edit_reaches_every_view():
    triad = assemble_triad(SHEET)
    attach_view(triad)
    renders = dispatch(triad, Edit("A1", "=()"))
    assert renders == [SetText("A1", "=()"), SetText("A1", "=()")]
    assert {e.view for e in triad.runtime.screen_log[-2:]} == set(triad.view_ids)


@pytest.mark.parametrize("spec", [MASKED, SHEET, FORM])
def test_second_open_is_refused_without_state_change(spec):
    triad = assemble_triad(spec)
    dispatch(triad, Command("open"))
    before = triad.model.snapshot.digest(), len(triad.runtime.bus.log)
    with pytest.raises(UnknownGesture):
        dispatch(triad, Command("open"))
    assert (triad.model.snapshot.digest(), len(triad.runtime.bus.log)) == before
    assert triad.runtime.diagnostics.of_kind("UnknownGesture")


def test_next_page_on_form_is_unknown():
    triad = assemble_triad(FORM)
    with pytest.raises(UnknownGesture):
        dispatch(triad, Command("next_page"))


# -- attach_view --------------------------------------------------------------------

def test_attached_sheet_window_shows_raw_value():
    triad = assemble_triad(SHEET)
    dispatch(triad, Edit("A1", "=()"))
    new_id = attach_view(triad, "sheet")
    assert triad.views[new_id].screen[0] == SetText("A1", "=()")


@pytest.mark.parametrize("spec", [MASKED, FORM])
def test_single_view_patterns_refuse_attach_and_keep_flow(spec):
    triad = assemble_triad(spec)
    before = audit(triad.runtime)
    with pytest.raises(PatternForbidsMultiView):
        attach_view(triad)
    assert audit(triad.runtime) == before


def test_active_view_three_views_get_identical_change():
    triad = assemble_triad(ACTIVE)
    attach_view(triad)
    attach_view(triad)
    mark = len(triad.runtime.screen_log)
    dispatch(triad, Edit("name", "Grace"))
    per_view = {e.view: e.command for e in triad.runtime.screen_log[mark:]}
    assert len(per_view) == 3
    assert set(per_view.values()) == {SetText("name", "Grace")}


def test_detached_view_takes_no_input():
    triad = assemble_triad(SHEET)
    second = attach_view(triad)
    dispatch(triad, Command("close"), view=second)
    assert triad.runtime.screen_log[-1].command == Detach(second)
    with pytest.raises(UnknownGesture):
        dispatch(triad, Edit("A1", "1"), view=second)


# -- ports --------------------------------------------------------------------------

def test_closed_view_port_reads_committed_values():
    triad = assemble_triad(FORM)
    read = triad.view_port
    assert not hasattr(read, "set")
    assert read.read_all().get("name").display() == "Ada"


def test_open_model_validate_on_controller_port_only():
    triad = assemble_triad(SHEET)
    assert hasattr(triad.controller_port, "validate")
    assert not hasattr(triad.view_port, "validate")


def test_bus_rejects_mutating_view_to_model():
    triad = assemble_triad(SHEET)
    bus = triad.runtime.bus
    before = len(bus.log)
    with pytest.raises(ForbiddenEdge):
        bus.post(triad.view_ids[0], triad.model.id, "set", None, mutating=True)
    assert len(bus.log) == before
    assert len(bus.rejected) == 1


def test_passive_view_forbids_both_directions():
    triad = assemble_triad(MASKED)
    bus = triad.runtime.bus
    with pytest.raises(ForbiddenEdge):
        bus.post(triad.view_ids[0], triad.model.id, "get")
    with pytest.raises(ForbiddenEdge):
        bus.post(triad.model.id, triad.view_ids[0], "notify")


# -- escalation -----------------------------------------------------------------------

def _two_level():
    runtime = Runtime()
    parent = assemble_triad(FORM, runtime=runtime)
    child = assemble_triad(MASKED, runtime=runtime, parent=parent)
    return runtime, parent, child


def test_child_handles_its_own_verb():
    runtime, parent, child = _two_level()
    env = runtime.bus.post(child.view_ids[0], child.controller_id, "key", Key("1"))
    assert escalate(child.controller, env) is Disposition.HANDLED


def test_close_forwarded_to_parent_once():
    runtime, parent, child = _two_level()
    dispatch(parent, Edit("name", "Bo"))
    dispatch(child, Command("close"))
    forwards = [e for e in runtime.bus.log if e.verb == "forward"]
    assert len(forwards) == 1
    assert (forwards[0].source, forwards[0].target) == (child.controller_id, parent.controller_id)
    assert parent.views[parent.view_ids[0]].screen[-1] == Prompt("SaveChanges")


def test_root_without_handler_reports_unhandled():
    runtime, parent, child = _two_level()
    env = runtime.bus.post(child.view_ids[0], child.controller_id, "next_page", Command("next_page"))
    assert escalate(child.controller, env) is Disposition.UNHANDLED
    assert runtime.diagnostics.of_kind("UnhandledEvent")
    assert not any(e.verb == "ShowError" for e in runtime.bus.log)


# -- ordering -------------------------------------------------------------------------

@given(st.lists(st.sampled_from("0123456789x-"), max_size=12))
def test_log_is_totally_ordered(keys):
    triad = assemble_triad(MASKED)
    for k in keys:
        try:
            dispatch(triad, Key(k))
        except UnknownGesture:
            pass
        triad.runtime.tick(1)
    log = triad.runtime.bus.log
    assert sorted(log, key=lambda e: (e.tick, e.seq)) == log
    assert len({e.seq for e in log}) == len(log)
