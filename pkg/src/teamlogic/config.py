"""Scope caps.

Evaluation on a single team is bounded by ``eval_cap`` variables; anything
that enumerates all teams on a scope (truth families, consequence,
equivalence) is bounded by ``family_cap``.  Defaults can be changed through
the TEAMLOGIC_EVAL_CAP / TEAMLOGIC_FAMILY_CAP environment variables or
locally with :func:`limits`.
"""

from __future__ import annotations

import os
from contextlib import contextmanager
from contextvars import ContextVar
from dataclasses import dataclass, replace

DEFAULT_EVAL_CAP = 16
DEFAULT_FAMILY_CAP = 4


@dataclass(frozen=True)
class Limits:
    eval_cap: int = DEFAULT_EVAL_CAP
    family_cap: int = DEFAULT_FAMILY_CAP

    def __post_init__(self):
        if self.eval_cap < 1 or self.family_cap < 1:
            raise ValueError("caps must be >= 1")


_override: ContextVar[Limits | None] = ContextVar("teamlogic_limits", default=None)


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None or raw.strip() == "":
        return default
    return int(raw)


def current_limits() -> Limits:
    active = _override.get()
    if active is not None:
        return active
    return Limits(
        eval_cap=_env_int("TEAMLOGIC_EVAL_CAP", DEFAULT_EVAL_CAP),
        family_cap=_env_int("TEAMLOGIC_FAMILY_CAP", DEFAULT_FAMILY_CAP),
    )


@contextmanager
def limits(eval_cap: int | None = None, family_cap: int | None = None):
    """Temporarily override the caps for the current context."""
    base = current_limits()
    changes = {}
    if eval_cap is not None:
        changes["eval_cap"] = eval_cap
    if family_cap is not None:
        changes["family_cap"] = family_cap
    token = _override.set(replace(base, **changes))
    try:
        yield _override.get()
    finally:
        _override.reset(token)
