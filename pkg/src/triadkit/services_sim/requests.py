"""Requests accepted by the simulated services layer and the events it delivers."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from ..mvc_core.values import Snapshot

CONNECTION_ERROR = "ConnectionError"
TIMEOUT = "Timeout"
CONCURRENCY_CONFLICT = "ConcurrencyConflict"
FAULT_KINDS = (CONNECTION_ERROR, TIMEOUT, CONCURRENCY_CONFLICT)


@dataclass(frozen=True)
class FetchPage:
    entity: str
    filter: str
    page: int
    size: int

    kind = "FetchPage"

    def __post_init__(self) -> None:
        if self.size < 1:
            raise ValueError("page size must be >= 1")
        if self.page < 0:
            raise ValueError("page index must be >= 0")

    def to_record(self) -> dict:
        return {"type": "FetchPage", "entity": self.entity, "filter": self.filter,
                "page": self.page, "size": self.size}


@dataclass(frozen=True)
class LoadEntity:
    entity: str
    id: int

    kind = "LoadEntity"

    def to_record(self) -> dict:
        return {"type": "LoadEntity", "entity": self.entity, "id": self.id}


@dataclass(frozen=True, eq=False)
class SaveEntity:
    entity: str
    record: Snapshot
    version: int

    kind = "SaveEntity"

    def __post_init__(self) -> None:
        if self.version < 0:
            raise ValueError("version must be >= 0")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SaveEntity):
            return NotImplemented
        return (self.entity, self.version) == (other.entity, other.version) and \
            self.record.same_data(other.record)

    __hash__ = None  # type: ignore[assignment]

    def to_record(self) -> dict:
        return {"type": "SaveEntity", "entity": self.entity,
                "record": self.record.rows_record(), "version": self.version}


Request = Union[FetchPage, LoadEntity, SaveEntity]


@dataclass(frozen=True)
class PageResult:
    rows: tuple[Snapshot, ...]
    page: int
    total: int

    def to_record(self) -> dict:
        return {"type": "PageResult", "rows": [r.rows_record() for r in self.rows],
                "page": self.page, "total": self.total}


@dataclass(frozen=True)
class EntityResult:
    record: Snapshot
    version: int

    def to_record(self) -> dict:
        return {"type": "EntityResult", "record": self.record.rows_record(),
                "version": self.version}


@dataclass(frozen=True)
class SaveAck:
    version: int

    def to_record(self) -> dict:
        return {"type": "SaveAck", "version": self.version}


@dataclass(frozen=True)
class Completion:
    payload: Union[PageResult, EntityResult, SaveAck]

    def to_record(self) -> dict:
        return {"type": "Completion", "payload": self.payload.to_record()}


@dataclass(frozen=True)
class Fault:
    kind: str
    message: str

    def __post_init__(self) -> None:
        if self.kind not in FAULT_KINDS:
            raise ValueError(f"unknown fault kind {self.kind!r}")

    def to_record(self) -> dict:
        return {"type": "Fault", "kind": self.kind, "message": self.message}


@dataclass(frozen=True)
class ServiceEvent:
    request_id: int
    outcome: Union[Completion, Fault]

    @property
    def is_fault(self) -> bool:
        return isinstance(self.outcome, Fault)

    def to_record(self) -> dict:
        return {"type": "ServiceEvent", "request": self.request_id,
                "outcome": self.outcome.to_record()}
