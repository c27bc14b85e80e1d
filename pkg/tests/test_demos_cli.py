import io
import json
import subprocess
import sys

import pytest

from conftest import GOLDEN
from triadkit.demos_cli import (
    DEMOS, ParseError, build_demo, controller_types, list_demos, main, parse_scenario, run_scenario,
)
from triadkit.demos_cli.cli import EXIT_EXPECT, EXIT_FAILED, EXIT_OK, EXIT_PARSE, EXIT_WIRING
from triadkit.demos_cli.demos import descriptor, discount_types, employees
from triadkit.demos_cli.scenario import SCENARIO_DIR, infer_demo, load_scenario, resolve_script
from triadkit.mvc_core.errors import WiringError
from triadkit.triads import GenericController


def cli(*argv, stdin=""):
    out = io.StringIO()
    code = main(list(argv), stdin=io.StringIO(stdin), out=out)
    return code, out.getvalue()


# -- demos ----------------------------------------------------------------------------------

def test_list_demos_covers_every_pattern():
    names = [name for name, _ in list_demos()]
    assert names == ["masked", "form", "sheet", "pager", "refdata"]
    patterns = {p for d in DEMOS.values() for p in d.patterns}
    assert patterns == {"passive_view", "closed_model", "open_model", "disconnected_model",
                        "model_as_services_facade", "active_view"}


def test_unknown_demo_is_wiring_error():
    with pytest.raises(WiringError):
        descriptor("chess")


def test_datasets():
    assert [r.get("id").value for r in employees()] == list(range(1, 46))
    assert [r.get("code").text for r in discount_types()] == ["STD", "VIP", "EMP", "EDU", "GOV", "BLK", "SUM", "WIN"]


def test_refdata_triads_share_controller_type():
    types = controller_types(build_demo("refdata"))
    assert set(types) == {"discount", "customer"}
    assert set(types.values()) == {GenericController.__name__}


def test_session_view_lookup():
    session = build_demo("sheet")
    triad = session.triad()
    assert session.view_id(triad, "v1") == session.view_id(triad, 1) == "sheet.v1"


# -- scenario parsing ------------------------------------------------------------------------

@pytest.mark.parametrize("text,line", [
    ('{"at": 0, "gesture": "key 1"}\nnot json\n', 2),
    ('# c\n\n{"at": -1, "gesture": "key 1"}\n', 3),
    ('{"at": 0, "gesture": "key 1", "tick": 2}\n', 1),
    ('{"at": 0, "gesture": "dance"}\n', 1),
    ('{"at": 0, "gesture": "key 1", "colour": "red"}\n', 1),
    ('{"at": 3, "gesture": "key 1"}\n{"at": 1, "gesture": "key 2"}\n', 2),
    ('{"at": 0, "gesture": "key 1"}\n{"at": 0, "rule": {"type": "Required", "property": "expiry"}}\n', 2),
    ('{"at": 0, "expect": {"text": ""}}\n', 1),
])
def test_parse_errors_carry_line_numbers(text, line):
    with pytest.raises(ParseError) as info:
        parse_scenario(text, "masked_x.scn")
    assert info.value.line == line


def test_bundled_scripts_resolve_by_name():
    assert resolve_script("form_default.scn") == SCENARIO_DIR / "form_default.scn"
    assert infer_demo(load_scenario("pager_retry.scn")) == "pager"


def test_bundled_scenarios_match_defaults():
    assert sorted(d.default_script for d in DEMOS.values()) == sorted(p.name for p in SCENARIO_DIR.glob("*.scn"))


# -- exit codes ---------------------------------------------------------------------------------

def test_list_exits_ok():
    code, out = cli("--list")
    assert code == EXIT_OK
    assert out.splitlines()[0].startswith("masked")


def test_script_writes_transcript(tmp_path):
    target = tmp_path / "t.txt"
    code, _ = cli("--script", "masked_default.scn", "--out", str(target))
    assert code == EXIT_OK
    assert target.read_text() == (GOLDEN / "masked_default.transcript").read_text()


def test_missing_script_is_parse_exit():
    assert cli("--script", "nope.scn")[0] == EXIT_PARSE


def test_bad_script_is_parse_exit(tmp_path):
    path = tmp_path / "masked_bad.scn"
    path.write_text('{"at": 0}\n')
    assert cli("--script", str(path))[0] == EXIT_PARSE


def test_failed_expectation_exit(tmp_path):
    path = tmp_path / "masked_fail.scn"
    path.write_text('{"at": 1, "gesture": "key 1"}\n{"at": 1, "expect": {"type": "Prompt"}}\n')
    assert cli("--script", str(path))[0] == EXIT_EXPECT


def test_wiring_exit_for_rule_on_unknown_property(tmp_path):
    path = tmp_path / "form_rule.scn"
    path.write_text('{"at": 0, "rule": {"type": "Required", "property": "shoe_size"}}\n'
                    '{"at": 1, "gesture": "commit"}\n')
    assert cli("--script", str(path))[0] == EXIT_WIRING


def test_refdata_script_prints_check():
    code, out = cli("--script", "refdata_both.scn")
    assert code == EXIT_OK
    assert "check: discount, customer share controller type GenericController" in out


def test_refdata_check_fails_when_types_differ(monkeypatch):
    import triadkit.demos_cli.cli as cli_mod
    monkeypatch.setattr(cli_mod, "controller_types", lambda s: {"discount": "A", "customer": "B"})
    assert cli("--script", "refdata_both.scn")[0] == EXIT_FAILED


def test_no_mode_is_parse_exit():
    assert cli()[0] == EXIT_PARSE


def test_bad_flags_exit_via_argparse():
    with pytest.raises(SystemExit):
        cli("--demo", "masked", "--fault-rate", "2")
    with pytest.raises(SystemExit):
        cli("--demo", "chess")


# -- interactive ---------------------------------------------------------------------------------

def test_interactive_echoes_and_refuses():
    code, out = cli("--demo", "masked", stdin="key 1\nkey x\nnext_page\nwobble\nquit\n")
    assert code == EXIT_OK
    lines = out.splitlines()
    assert any('"char":"1"' in ln for ln in lines)
    assert sum(ln.startswith("! refused") for ln in lines) == 1
    assert any(ln.startswith("! ") and "refused" not in ln for ln in lines)


def test_interactive_and_scripted_transcripts_agree(tmp_path):
    script = tmp_path / "form_same.scn"
    script.write_text("\n".join(json.dumps(r) for r in [
        {"at": 0, "gesture": "edit age 40"},
        {"at": 2, "gesture": "commit"},
        {"at": 5, "gesture": "close"},
        {"at": 5, "gesture": "edit name Bo"},
        {"at": 5, "gesture": "close"},
        {"at": 6, "gesture": "no"},
    ]) + "\n")
    scripted = run_scenario(load_scenario(script)).transcript
    live = tmp_path / "live.txt"
    cli("--demo", "form", "--out", str(live),
        stdin="edit age 40\ntick 2\ncommit\ntick 3\nclose\nedit name Bo\nclose\ntick 1\nno\n")
    assert live.read_text() == scripted.text


# -- goldens ---------------------------------------------------------------------------------------

@pytest.mark.parametrize("name", sorted(p.stem for p in SCENARIO_DIR.glob("*.scn")))
def test_golden_transcripts(name):
    result = run_scenario(load_scenario(f"{name}.scn"))
    assert result.transcript.text == (GOLDEN / f"{name}.transcript").read_text()


def test_module_entry_point_runs():
    proc = subprocess.run([sys.executable, "-m", "triadkit.demos_cli", "--list"],
                          capture_output=True, text=True, check=True)
    assert "refdata" in proc.stdout
