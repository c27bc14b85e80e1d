"""The five bundled demos and the session that hosts them."""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field
from typing import Any, Callable, Mapping, Sequence

from ..mvc_core.bus import Runtime
from ..mvc_core.errors import WiringError
from ..mvc_core.triad import TriadHandle, TriadSpec, assemble_triad
from ..mvc_core.values import Decimal, Flag, Integer, Snapshot, Text, coerce, value_from_record
from ..services_sim import FaultRule, ServicePlan, ServiceSim
from ..validation.rules import CrossField, FormulaWellFormed, IntRange, Required, TextPattern

SERVICE_ID = "svc"


@dataclass(frozen=True)
class DemoDescriptor:
    name: str
    patterns: tuple[str, ...]
    description: str
    specs: Mapping[str, TriadSpec]
    plan: Callable[[int, int | None, float | None], ServicePlan] | None = None
    default_script: str = ""

    @property
    def triad_names(self) -> list[str]:
        return list(self.specs)


@dataclass
class DemoSession:
    descriptor: DemoDescriptor
    runtime: Runtime
    triads: dict[str, TriadHandle] = field(default_factory=dict)
    service: ServiceSim | None = None

    @property
    def name(self) -> str:
        return self.descriptor.name

    def triad(self, name: str | None = None) -> TriadHandle:
        if name is None:
            return next(iter(self.triads.values()))
        try:
            return self.triads[name]
        except KeyError:
            raise WiringError(f"demo {self.name!r} has no triad {name!r}") from None

    def view_id(self, triad: TriadHandle, view: str | int | None) -> str | None:
        """Resolve "v2", 2 or a full id to the attached view's id."""
        if view is None:
            return None
        if isinstance(view, int) or str(view).isdigit():
            view = f"v{view}"
        full = view if view in triad.views else f"{triad.id}.{view}"
        if full not in triad.views:
            raise WiringError(f"triad {triad.id} has no view {view!r}")
        return full


# -- demo data --------------------------------------------------------------------

SKILLS = ("python", "sql", "ui", "ops", "qa")


def employees(n: int = 45) -> list[Snapshot]:
    return [Snapshot.of({"id": Integer(i), "name": Text(f"Employee {i:02d}"),
                         "skill": Text(SKILLS[i % len(SKILLS)])}) for i in range(1, n + 1)]


def discount_types() -> list[Snapshot]:
    codes = ["STD", "VIP", "EMP", "EDU", "GOV", "BLK", "SUM", "WIN"]
    return [Snapshot.of({"id": Integer(i), "code": Text(code), "percent": Decimal(500 * i, 2),
                         "active": Flag(i % 3 != 0)}) for i, code in enumerate(codes, 1)]


def customer_types() -> list[Snapshot]:
    rows = [("RET", "Retail"), ("WHL", "Wholesale"), ("PUB", "Public sector"),
            ("NGO", "Non-profit"), ("INT", "International")]
    return [Snapshot.of({"id": Integer(i), "code": Text(code), "description": Text(text),
                         "priority": Integer(i)}) for i, (code, text) in enumerate(rows, 1)]


def _latency(ticks: int | None) -> dict[str, int]:
    t = 3 if ticks is None else ticks
    return {"FetchPage": t, "LoadEntity": t, "SaveEntity": t}


def _rate_rule(rate: float | None) -> list[FaultRule]:
    return [FaultRule(rate=rate)] if rate else []


def _pager_plan(seed: int, latency: int | None, rate: float | None) -> ServicePlan:
    # page 1 fails twice before it is served, so the retry path is exercised
    scheduled = FaultRule(request="FetchPage", where={"page": 1}, first=2)
    return ServicePlan(seed=seed, latency=_latency(latency), faults=[scheduled, *_rate_rule(rate)],
                       dataset={"employee": employees()})


def _refdata_plan(seed: int, latency: int | None, rate: float | None) -> ServicePlan:
    return ServicePlan(seed=seed, latency=_latency(latency), faults=_rate_rule(rate),
                       dataset={"discount_type": discount_types(), "customer_type": customer_types()})


MASK = "##-##"
SHEET_CELLS = [f"{col}{row}" for row in (1, 2, 3) for col in "ABC"]

DEMOS: dict[str, DemoDescriptor] = {}


def _register(d: DemoDescriptor) -> None:
    DEMOS[d.name] = d


_register(DemoDescriptor(
    "masked", ("passive_view",), "card expiry box (MM-YY) that interprets keys against a mask",
    {"expiry": TriadSpec("passive_view", [("expiry", "text")], view_kind="masked_field",
                        options={"mask": MASK})},
    default_script="masked_default.scn",
))
_register(DemoDescriptor(
    "form", ("closed_model",), "person form with cached input and all-or-nothing commit",
    {"person": TriadSpec(
        "closed_model",
        [("name", "text"), ("age", "integer"), ("zip", "text"), ("start", "integer"), ("end", "integer")],
        [Required("name"), Required("age"), IntRange("age", 0, 150), TextPattern("zip", "##-###"),
         CrossField("start", "<=", "end"), IntRange("end", 0, 1000)],
        view_kind="form",
        options={"initial": {"name": "Ada", "age": 36, "zip": "10-115", "start": 1, "end": 5}})},
    default_script="form_default.scn",
))
_register(DemoDescriptor(
    "sheet", ("open_model",), "spreadsheet grid that holds any text and checks formulas on commit",
    {"sheet": TriadSpec("open_model", [(c, "text") for c in SHEET_CELLS],
                        [FormulaWellFormed(c) for c in SHEET_CELLS], view_kind="sheet")},
    default_script="sheet_invalid_formula.scn",
))
_register(DemoDescriptor(
    "pager", ("disconnected_model",), "employee list paged in from a slow, faulty service",
    {"employees": TriadSpec("disconnected_model", [("id", "integer"), ("name", "text"), ("skill", "text")],
                            view_kind="pager", service_binding=SERVICE_ID,
                            options={"entity": "employee", "page_size": 20})},
    plan=_pager_plan, default_script="pager_retry.scn",
))
_register(DemoDescriptor(
    "refdata", ("model_as_services_facade", "active_view"),
    "discount and customer types edited through one generic controller",
    {
        "discount": TriadSpec(
            "model_as_services_facade",
            [("id", "integer"), ("code", "text"), ("percent", "decimal"), ("active", "flag")],
            [Required("id"), Required("code"), TextPattern("code", "AAA"), IntRange("percent", 0, 100)],
            view_kind="active_form", controller_kind="generic", service_binding=SERVICE_ID,
            options={"entity": "discount_type", "entity_id": 7}),
        "customer": TriadSpec(
            "model_as_services_facade",
            [("id", "integer"), ("code", "text"), ("description", "text"), ("priority", "integer")],
            [Required("id"), Required("code"), TextPattern("code", "AAA"), IntRange("priority", 1, 9)],
            view_kind="active_form", controller_kind="generic", service_binding=SERVICE_ID,
            options={"entity": "customer_type", "entity_id": 3}),
    },
    plan=_refdata_plan, default_script="refdata_both.scn",
))


def list_demos() -> list[tuple[str, str]]:
    """(name, "patterns: description") in a fixed order."""
    return [(d.name, f"{', '.join(d.patterns)}: {d.description}") for d in DEMOS.values()]


def descriptor(name: str) -> DemoDescriptor:
    try:
        return DEMOS[name]
    except KeyError:
        raise WiringError(f"unknown demo {name!r}; choose from {', '.join(DEMOS)}") from None


def _row(values: Mapping[str, Any]) -> Snapshot:
    return Snapshot.of({k: value_from_record(v) if isinstance(v, dict) else coerce(v)
                        for k, v in values.items()})


def build_demo(name: str, *, seed: int = 0, latency: int | None = None, fault_rate: float | None = None,
               rules: Mapping[str, Sequence[Any]] | None = None,
               rows: Mapping[str, Sequence[Mapping[str, Any]]] | None = None) -> DemoSession:
    """Assemble a demo on a fresh runtime.

    ``rules`` adds validation rules per triad name; ``rows`` appends dataset
    rows per service table. Both come from scenario header records.
    """
    desc = descriptor(name)
    runtime = Runtime()
    session = DemoSession(desc, runtime)
    if desc.plan is not None:
        plan = desc.plan(seed, latency, fault_rate)
        for table, extra in (rows or {}).items():
            plan.dataset.setdefault(table, []).extend(_row(r) for r in extra)
        session.service = ServiceSim(runtime, plan, SERVICE_ID)
    elif rows:
        raise WiringError(f"demo {name!r} has no service dataset")
    for triad_name, spec in desc.specs.items():
        extra = tuple((rules or {}).get(triad_name, ()))
        if extra:
            spec = dataclasses.replace(spec, ruleset=spec.ruleset + extra)
        session.triads[triad_name] = assemble_triad(spec, runtime=runtime, triad_id=triad_name)
    unknown = set(rules or {}) - set(desc.specs)
    if unknown:
        raise WiringError(f"demo {name!r} has no triad {sorted(unknown)[0]!r}")
    return session


def controller_types(session: DemoSession) -> dict[str, str]:
    return {name: type(t.controller).__name__ for name, t in session.triads.items()}
