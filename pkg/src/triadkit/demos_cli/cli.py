"""triadkit command line: run a demo from a scenario script or interactively."""

from __future__ import annotations

import argparse
import sys
from typing import Sequence, TextIO

from ..mvc_core.errors import GestureError, UnknownGesture, WiringError
from ..mvc_core.messages import parse_gesture
from .demos import DEMOS, build_demo, controller_types, descriptor, list_demos
from .scenario import (
    ExpectationFailed, ParseError, Record, Runner, Scenario, load_scenario, run_scenario,
)

EXIT_OK, EXIT_FAILED, EXIT_PARSE, EXIT_EXPECT, EXIT_WIRING = 0, 1, 2, 3, 4


def _rate(text: str) -> float:
    value = float(text)
    if not 0.0 <= value <= 1.0:
        raise argparse.ArgumentTypeError("fault rate must be within 0..1")
    return value


def _u64(text: str) -> int:
    value = int(text)
    if not 0 <= value < 2 ** 64:
        raise argparse.ArgumentTypeError("seed must fit in an unsigned 64-bit integer")
    return value


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="triadkit", description=__doc__)
    p.add_argument("--demo", choices=list(DEMOS), help="demo to run")
    p.add_argument("--script", help="scenario file (.scn); bundled names resolve too")
    p.add_argument("--out", help="write the transcript here")
    p.add_argument("--seed", type=_u64, default=0)
    p.add_argument("--latency-ms", type=int, default=None,
                   help="service latency; 1 ms is one virtual tick (default 3)")
    p.add_argument("--fault-rate", type=_rate, default=None,
                   help="probability that a service request faults")
    p.add_argument("--list", action="store_true", help="list the demos and exit")
    return p


def _refdata_check(session, out: TextIO) -> bool:
    types = controller_types(session)
    shared = len(set(types.values())) == 1
    names = ", ".join(types)
    if shared:
        print(f"check: {names} share controller type {next(iter(types.values()))}", file=out)
    else:
        print(f"check FAILED: controller types differ {types}", file=out)
    return shared


def interactive(args, stdin: TextIO, out: TextIO) -> int:
    """Line mode: each render command is echoed, each input line is a gesture.

    Extra lines: ``tick N``, ``triad NAME``, ``view vN``, ``quit``.
    """
    session = build_demo(args.demo, seed=args.seed, latency=args.latency_ms, fault_rate=args.fault_rate)
    runner = Runner(session, echo=lambda line: print(line, file=out))
    runner.flush_echo()
    triad, view = None, None
    for raw in stdin:
        line = raw.rstrip("\n")
        head, _, rest = line.strip().partition(" ")
        now = session.runtime.now
        try:
            if not line.strip():
                continue
            if head == "quit":
                break
            if head == "tick":
                runner.apply(Record(0, now, "tick", int(rest or 1)))
            elif head == "triad":
                session.triad(rest.strip())
                triad = rest.strip()
            elif head == "view":
                view = rest.strip() or None
            else:
                before = len(runner.refused)
                runner.apply(Record(0, now, "gesture", parse_gesture(line), triad, view))
                if len(runner.refused) > before:
                    print(f"! refused: {runner.refused[-1].reason}", file=out)
        except (GestureError, ValueError, WiringError) as exc:
            print(f"! {exc}", file=out)
    transcript = runner.transcript()
    if args.out:
        transcript.write(args.out)
    return EXIT_OK


def main(argv: Sequence[str] | None = None, stdin: TextIO | None = None, out: TextIO | None = None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    if args.list:
        for name, text in list_demos():
            print(f"{name:8} {text}", file=out)
        return EXIT_OK
    try:
        if args.script:
            scenario: Scenario = load_scenario(args.script)
            demo = args.demo
            result = run_scenario(scenario, demo, seed=args.seed, latency=args.latency_ms,
                                  fault_rate=args.fault_rate)
            if args.out:
                result.transcript.write(args.out)
            else:
                out.write(result.transcript.text)
            if result.session.name == "refdata" and not _refdata_check(result.session, out):
                return EXIT_FAILED
            return EXIT_OK
        if not args.demo:
            print("error: give --demo, --script or --list", file=sys.stderr)
            return EXIT_PARSE
        descriptor(args.demo)
        return interactive(args, stdin or sys.stdin, out)
    except (ParseError, FileNotFoundError) as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ExpectationFailed as exc:
        print(f"expectation failed: {exc}", file=sys.stderr)
        return EXIT_EXPECT
    except WiringError as exc:
        print(f"wiring error: {exc}", file=sys.stderr)
        return EXIT_WIRING


def run() -> None:
    sys.exit(main())
