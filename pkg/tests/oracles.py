"""Independent reference implementations the library is checked against.

Nothing here imports the code under test except plain value types.
"""

from __future__ import annotations

import re

DIGITS = set("0123456789")
LETTERS = set("abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ")


# -- input masks ----------------------------------------------------------------

def slot_takes(slot: str, ch: str) -> bool:
    if slot == "#":
        return ch in DIGITS
    if slot == "A":
        return ch in LETTERS
    if slot == "*":
        return ch.isprintable()
    raise AssertionError("not a slot")


def mask_display(mask: str, typed: list[str]) -> str:
    """Text shown after ``typed`` characters have filled the mask's slots.

    Literals appear once a later slot is being filled, or once every slot is
    full (trailing literals).
    """
    slots = [i for i, c in enumerate(mask) if c in "#A*"]
    if not typed:
        return ""
    if len(typed) == len(slots):
        end = len(mask)
    else:
        end = slots[len(typed) - 1] + 1
    out = []
    k = 0
    for i in range(end):
        if mask[i] in "#A*":
            out.append(typed[k])
            k += 1
        else:
            out.append(mask[i])
    return "".join(out)


def mask_session(mask: str, keys: str) -> list[tuple[bool, list[tuple[int, str]], str]]:
    """Per key: (accepted, [(position, char) written], display after)."""
    slots = [c for c in mask if c in "#A*"]
    typed: list[str] = []
    shown = ""
    out = []
    for key in keys:
        n = len(typed)
        if n < len(slots) and slot_takes(slots[n], key):
            typed.append(key)
            new = mask_display(mask, typed)
            writes = [(i, new[i]) for i in range(len(shown), len(new))]
            shown = new
            out.append((True, writes, shown))
        else:
            out.append((False, [], shown))
    return out


# -- edge recount ------------------------------------------------------------------

def recount_edges(envelopes) -> dict[tuple, int]:
    """Brute force: one full scan of the log per distinct key."""
    keys = []
    for env in envelopes:
        key = (str(env.source_kind), str(env.target_kind), env.verb, env.mutating)
        if key not in keys:
            keys.append(key)
    counts = {}
    for key in keys:
        counts[key] = sum(
            1 for env in envelopes
            if (str(env.source_kind), str(env.target_kind), env.verb, env.mutating) == key)
    return counts


# -- form rules --------------------------------------------------------------------

def form_ok(values: dict) -> bool:
    """The form demo's six rules over plain Python values (None = missing)."""
    name, age, zip_code = values["name"], values["age"], values["zip"]
    start, end = values["start"], values["end"]
    if name is None or age is None:
        return False
    if not 0 <= age <= 150:
        return False
    if zip_code is not None:
        if len(zip_code) != 6 or zip_code[2] != "-":
            return False
        if not all(c in DIGITS for c in zip_code[:2] + zip_code[3:]):
            return False
    if start is not None and end is not None and not start <= end:
        return False
    if end is not None and not 0 <= end <= 1000:
        return False
    return True


def formula_fine(text: str | None) -> bool:
    """Reduce innermost groups until none are left."""
    if text is None or not text.startswith("="):
        return True
    body = text[1:]
    if not body.strip():
        return False
    group = re.compile(r"\(([^()]*)\)")
    while True:
        m = group.search(body)
        if m is None:
            break
        if not m.group(1).strip():
            return False
        body = body[:m.start()] + "x" + body[m.end():]
    return "(" not in body and ")" not in body
