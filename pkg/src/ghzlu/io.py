"""State and report files.

A state file holds one JSON record per line::

    {"format": "amplitudes", "amplitudes": [[re, im], ... 8 pairs]}
    {"format": "asd", "lambda": [l0, l1, l2, l3, l4], "phi": 0.0}

An optional ``"name"`` field is carried through.  Floats are written with
Python's shortest round-trip repr, so save/load is bit-exact.
"""
from __future__ import annotations

import dataclasses
import json
import math
from pathlib import Path
from typing import Any, Iterable, Optional, Union

import numpy as np

from . import __version__
from .asd import ASDState, compute_asd
from .classify import ClassificationReport, canonical_asd, is_asd_unique
from .config import Tolerances, get_tolerances
from .errors import GhzluError
from .invariants import GhzInvariants
from .qstate import LocalUnitaryTriple, PureState3Q

TOOL_NAME = "ghzlu"


class StateFileError(GhzluError, ValueError):
    def __init__(self, source: str, line: int, column: int, message: str):
        super().__init__(f"{source}:{line}:{column}: {message}")
        self.source, self.line, self.column = source, line, column


@dataclasses.dataclass(frozen=True, eq=False)
class StateRecord:
    """One state read from a file: amplitudes or a Schmidt form, never both."""

    state: Optional[PureState3Q] = None
    asd: Optional[ASDState] = None
    name: Optional[str] = None

    @property
    def format(self) -> str:
        return "asd" if self.asd is not None else "amplitudes"

    def __eq__(self, other):
        if not isinstance(other, StateRecord) or self.format != other.format or self.name != other.name:
            return NotImplemented if not isinstance(other, StateRecord) else False
        if self.asd is not None:
            return self.asd == other.asd
        return bool(np.array_equal(self.state.amp, other.state.amp))

    def to_dict(self) -> dict[str, Any]:
        if self.asd is not None:
            d = {"format": "asd", "lambda": list(self.asd.lam), "phi": self.asd.phi}
        else:
            d = {"format": "amplitudes", "amplitudes": [[float(c.real), float(c.imag)] for c in self.state.amp]}
        if self.name is not None:
            d["name"] = self.name
        return d

    def resolve(self) -> tuple[ASDState, Optional[LocalUnitaryTriple]]:
        """Schmidt form of the record (decomposing amplitudes if needed) and the witness triple."""
        if self.asd is not None:
            return self.asd, None
        return compute_asd(self.state)

    def pure_state(self) -> PureState3Q:
        from .asd import reconstruct

        return self.state if self.state is not None else reconstruct(self.asd)


def dumps_record(rec: StateRecord) -> str:
    return json.dumps(rec.to_dict())


def _number(v: Any, where: str) -> float:
    if isinstance(v, bool) or not isinstance(v, (int, float)) or not math.isfinite(v):
        raise ValueError(f"{where}: expected a finite number, got {v!r}")
    return float(v)


def _normalized(values: np.ndarray, tol: Tolerances, what: str) -> np.ndarray:
    err = abs(float(np.sum(np.abs(values) ** 2)) - 1.0)
    if err <= tol.norm:
        return values
    if err <= tol.load_norm:
        return values / np.linalg.norm(values)
    raise ValueError(f"{what} not normalized (|norm^2 - 1| = {err:.3e} > {tol.load_norm:g})")


def record_from_dict(d: Any) -> StateRecord:
    tol = get_tolerances()
    if not isinstance(d, dict):
        raise ValueError("record must be a JSON object")
    fmt = d.get("format")
    name = d.get("name")
    if name is not None and not isinstance(name, str):
        raise ValueError("'name' must be a string")
    if fmt == "amplitudes":
        raw = d.get("amplitudes")
        if not isinstance(raw, list) or len(raw) != 8:
            raise ValueError("'amplitudes' must be a list of 8 [re, im] pairs")
        amp = np.empty(8, dtype=np.complex128)
        for i, pair in enumerate(raw):
            if not isinstance(pair, list) or len(pair) != 2:
                raise ValueError(f"amplitudes[{i}]: expected [re, im]")
            amp[i] = complex(_number(pair[0], f"amplitudes[{i}][0]"), _number(pair[1], f"amplitudes[{i}][1]"))
        return StateRecord(state=PureState3Q(_normalized(amp, tol, "amplitudes")), name=name)
    if fmt == "asd":
        lam = d.get("lambda")
        if not isinstance(lam, list) or len(lam) != 5:
            raise ValueError("'lambda' must be a list of 5 numbers")
        lam = np.array([_number(x, f"lambda[{i}]") for i, x in enumerate(lam)])
        if lam.min() < 0:
            raise ValueError("'lambda' entries must be nonnegative")
        phi = _number(d.get("phi", 0.0), "phi")
        lam = _normalized(lam, tol, "lambda")
        return StateRecord(asd=ASDState(tuple(float(x) for x in lam), phi), name=name)
    raise ValueError(f"unknown format {fmt!r} (expected 'amplitudes' or 'asd')")


def loads_records(text: str, source: str = "<string>") -> list[StateRecord]:
    out = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        try:
            d = json.loads(line)
        except json.JSONDecodeError as exc:
            raise StateFileError(source, lineno, exc.colno, exc.msg) from None
        try:
            out.append(record_from_dict(d))
        except (ValueError, GhzluError) as exc:
            raise StateFileError(source, lineno, 1, str(exc)) from None
    if not out:
        raise StateFileError(source, 1, 1, "no state records found")
    return out


def load_records(path: Union[str, Path]) -> list[StateRecord]:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise StateFileError(str(path), 0, 0, f"cannot read file: {exc.strerror}") from None
    return loads_records(text, str(path))


def save_records(path: Union[str, Path], records: Iterable[StateRecord]) -> None:
    Path(path).write_text("".join(dumps_record(r) + "\n" for r in records))


# --------------------------------------------------------------------------
# reports
# --------------------------------------------------------------------------

def _c(z: complex) -> list[float]:
    return [float(z.real), float(z.imag)]


def asd_to_dict(asd: ASDState) -> dict[str, Any]:
    return {"lambda": list(asd.lam), "phi": asd.phi}


def triple_to_dict(t: LocalUnitaryTriple) -> dict[str, Any]:
    return {k: [[_c(z) for z in row] for row in np.asarray(u)] for k, u in zip("abc", t)}


def invariants_to_dict(inv: GhzInvariants) -> dict[str, Any]:
    return {
        "gamma": _c(inv.gamma),
        "j1": inv.j1,
        "j4": inv.j4,
        "rho": inv.rho,
        "iota": _c(inv.iota),
        "ln_rho_abs": inv.ln_rho_abs,
        "measure": inv.measure,
    }


@dataclasses.dataclass(frozen=True)
class ReportFile:
    """Serializable classification result."""

    asd: dict[str, Any]
    ghz_class: bool
    family: Optional[str] = None
    subfamily: Optional[str] = None
    label: Optional[str] = None
    invariants: Optional[dict[str, Any]] = None
    lbps: Optional[int] = None
    margins: Optional[dict[str, float]] = None
    unique_asd: Optional[bool] = None
    uniqueness_modality: Optional[str] = None
    canonical_asd: Optional[dict[str, Any]] = None
    three_tangle: Optional[float] = None
    name: Optional[str] = None
    tool: str = TOOL_NAME
    version: str = __version__
    tolerances: dict[str, float] = dataclasses.field(default_factory=lambda: get_tolerances().as_dict())

    @classmethod
    def from_classification(cls, asd: ASDState, rep: ClassificationReport, name: Optional[str] = None) -> "ReportFile":
        unique, modality = is_asd_unique(asd)
        return cls(
            asd=asd_to_dict(asd),
            ghz_class=True,
            family=rep.label.family,
            subfamily=rep.label.subfamily,
            label=str(rep.label),
            invariants=invariants_to_dict(rep.invariants),
            lbps=rep.lbps,
            margins=dict(rep.margins),
            unique_asd=unique,
            uniqueness_modality=modality,
            canonical_asd=asd_to_dict(canonical_asd(asd)),
            three_tangle=4.0 * rep.invariants.j4,
            name=name,
        )

    @classmethod
    def not_ghz(cls, asd: ASDState, tangle: float, name: Optional[str] = None) -> "ReportFile":
        return cls(asd=asd_to_dict(asd), ghz_class=False, three_tangle=tangle, name=name)

    def to_dict(self) -> dict[str, Any]:
        d = dataclasses.asdict(self)
        if not self.ghz_class:
            d["status"] = "not GHZ class"
        return {k: v for k, v in d.items() if v is not None}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "ReportFile":
        names = {f.name for f in dataclasses.fields(cls)}
        return cls(**{k: v for k, v in d.items() if k in names})

    @classmethod
    def from_json(cls, text: str) -> "ReportFile":
        return cls.from_dict(json.loads(text))
