"""Shared numerical tolerances and runtime switches.

Every comparison threshold used by the library lives in :class:`Tolerances`.
Functions look up the active record through :func:`get_tolerances`, so a
caller (the CLI, a test) can swap the whole set at once with
:func:`tolerance_scope`.
"""
from __future__ import annotations

import contextlib
import contextvars
import dataclasses
import math
import os
from typing import Iterator


@dataclasses.dataclass(frozen=True)
class Tolerances:
    norm: float = 1e-12  # unit norm of amplitudes / Schmidt coefficients
    unitary: float = 1e-12  # entrywise |u^H u - I|
    zero: float = 1e-9  # a Schmidt coefficient counts as vanishing
    phase: float = 1e-9  # phi snaps to 0 or pi
    gamma: float = 1e-9  # |gamma| counts as vanishing
    rho: float = 1e-9  # |rho - 1| counts as rho == 1
    cmp: float = 1e-9  # coefficientwise ASD comparison
    oracle: float = 1e-8  # brute-force search: equivalent iff F >= 1 - oracle
    load_norm: float = 1e-9  # normalization slack accepted when reading files

    def scaled(self, factor: float) -> "Tolerances":
        if not (math.isfinite(factor) and factor > 0):
            raise ValueError(f"tolerance scale must be a positive finite number, got {factor!r}")
        return Tolerances(**{f.name: getattr(self, f.name) * factor for f in dataclasses.fields(self)})

    def validate(self) -> list[str]:
        """Names of fields holding unusable values (non-positive, non-finite or >= 1e-3)."""
        bad = []
        for f in dataclasses.fields(self):
            v = getattr(self, f.name)
            if not (math.isfinite(v) and 0 < v < 1e-3):
                bad.append(f.name)
        return bad

    def as_dict(self) -> dict[str, float]:
        return dataclasses.asdict(self)


DEFAULT_TOLERANCES = Tolerances()

_active: contextvars.ContextVar[Tolerances] = contextvars.ContextVar(
    "ghzlu_tolerances", default=DEFAULT_TOLERANCES
)


def get_tolerances() -> Tolerances:
    return _active.get()


@contextlib.contextmanager
def tolerance_scope(tol: Tolerances) -> Iterator[Tolerances]:
    token = _active.set(tol)
    try:
        yield tol
    finally:
        _active.reset(token)


def _env_flag(name: str, default: bool) -> bool:
    raw = os.environ.get(name)
    if raw is None:
        return default
    return raw.strip().lower() not in ("0", "false", "no", "off", "")


# GHZLU_NUMBA=0 forces the pure-numpy kernels even when numba is importable.
USE_NUMBA = _env_flag("GHZLU_NUMBA", True)
