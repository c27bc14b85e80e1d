"""Keystroke interpretation against an input mask.

Mask grammar: ``#`` takes a digit, ``A`` an ASCII letter, ``*`` any printable
character; every other character is a literal the control types for the
user. Literals in front of the next slot are inserted before the keyed
character; literals trailing the last slot are appended once it is filled.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..mvc_core.messages import SetCharAt
from ..validation.rules import is_slot, mask_accepts


@dataclass(frozen=True)
class MaskStep:
    accepted: bool
    emitted: tuple[SetCharAt, ...]
    buffer: str
    cursor: int


def is_partial_fill(mask: str, buffer: str) -> bool:
    if len(buffer) > len(mask):
        return False
    for m, ch in zip(mask, buffer):
        if is_slot(m):
            if not mask_accepts(m, ch):
                return False
        elif m != ch:
            return False
    return True


def mask_step(mask: str, buffer: str, key: str, prop: str = "field") -> MaskStep:
    if len(key) != 1:
        raise ValueError("key must be a single character")
    if not is_partial_fill(mask, buffer):
        raise ValueError(f"buffer {buffer!r} is not a partial fill of mask {mask!r}")
    pos = len(buffer)
    while pos < len(mask) and not is_slot(mask[pos]):
        pos += 1
    if pos == len(mask) or not mask_accepts(mask[pos], key):
        return MaskStep(False, (), buffer, len(buffer))
    emitted = [SetCharAt(prop, i, mask[i]) for i in range(len(buffer), pos)]
    emitted.append(SetCharAt(prop, pos, key))
    tail = pos + 1
    while tail < len(mask) and not is_slot(mask[tail]):
        tail += 1
    if tail == len(mask):
        emitted.extend(SetCharAt(prop, i, mask[i]) for i in range(pos + 1, len(mask)))
        end = len(mask)
    else:
        end = pos + 1
    new_buffer = buffer + "".join(c.char for c in emitted)
    assert len(new_buffer) == end
    return MaskStep(True, tuple(emitted), new_buffer, end)
