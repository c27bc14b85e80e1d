"""Simulated remote services layer: latency, faults, paging, versioned entities."""

from .requests import (
    CONCURRENCY_CONFLICT, CONNECTION_ERROR, TIMEOUT, Completion, EntityResult, Fault, FetchPage,
    LoadEntity, PageResult, SaveAck, SaveEntity, ServiceEvent,
)
from .simulator import (
    FaultRule, ServicePlan, ServiceSim, inspect_pending, plan_faults, request_key, submit, tick,
)

__all__ = [
    "CONCURRENCY_CONFLICT", "CONNECTION_ERROR", "TIMEOUT", "Completion", "EntityResult", "Fault",
    "FetchPage", "LoadEntity", "PageResult", "SaveAck", "SaveEntity", "ServiceEvent", "FaultRule",
    "ServicePlan", "ServiceSim", "inspect_pending", "plan_faults", "request_key", "submit", "tick",
]
