"""Deterministic scenario replay."""

from __future__ import annotations

from pathlib import Path

from ..demos_cli.scenario import Transcript, load_scenario, run_scenario


def replay(path: str | Path, demo: str | None = None, *, seed: int = 0, latency: int | None = None,
           fault_rate: float | None = None) -> Transcript:
    """Run a scenario file start to finish and return its transcript.

    The demo defaults to the file name prefix (``sheet_*.scn`` runs ``sheet``).
    """
    scenario = load_scenario(path)
    return run_scenario(scenario, demo, seed=seed, latency=latency, fault_rate=fault_rate).transcript
