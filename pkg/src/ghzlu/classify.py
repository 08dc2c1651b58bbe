"""LU families of the GHZ SLOCC class.

Ten families, told apart by gamma, the pattern of vanishing Schmidt
coefficients and the phase:

    P1..P4  gamma = 0 (positive states)
    R1, R2  gamma != 0, lambda2*lambda3 != 0, real phase
    C1..C3  gamma != 0, lambda2*lambda3 = 0 (phase irrelevant)
    C4      5 nonzero coefficients, phase not 0 or pi

Each family splits into a prime subfamily (rho = 1) and a double-prime one.
"""
from __future__ import annotations

import dataclasses
import math
from typing import Optional

import numpy as np

from .asd import ASDState, lbps_count
from .config import get_tolerances
from .errors import ConsistencyError
from .invariants import (
    GhzInvariants,
    _require_ghz,
    compute_invariants,
    phase_shift_unitaries,
    rho_iota_transform,
)
from .qstate import LocalUnitaryTriple

FAMILIES = ("P1", "P2", "P3", "P4", "R1", "R2", "C1", "C2", "C3", "C4")
SUBFAMILIES = ("prime", "double_prime")
_MARK = {"prime": "'", "double_prime": "''"}

STRICT = "strict"
UP_TO_PHASE = "up_to_phase"
UP_TO_CONJUGATE = "up_to_conjugate"


@dataclasses.dataclass(frozen=True, order=True)
class FamilyLabel:
    family: str
    subfamily: str

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        if self.subfamily not in SUBFAMILIES:
            raise ValueError(f"unknown subfamily {self.subfamily!r}")

    def __str__(self) -> str:
        return self.family + _MARK[self.subfamily]

    @property
    def prime(self) -> bool:
        return self.subfamily == "prime"

    @classmethod
    def parse(cls, text: str) -> "FamilyLabel":
        """Parse ``P1'``, ``C4''``, ``R2″`` or ``R2_double_prime`` style labels."""
        s = text.strip().replace("″", "''").replace("′", "'")
        for suffix, sub in (("_double_prime", "double_prime"), ("_prime", "prime"), ("''", "double_prime"), ("'", "prime")):
            if s.endswith(suffix):
                fam = s[: -len(suffix)].upper()
                if fam in FAMILIES:
                    return cls(fam, sub)
                break
        raise ValueError(f"cannot parse family label {text!r} (expected e.g. P1' or C4'')")


ALL_LABELS = tuple(FamilyLabel(f, s) for f in FAMILIES for s in SUBFAMILIES)


def uniqueness_modality(family: str) -> str:
    if family in ("C1", "C2", "C3"):
        return UP_TO_PHASE
    if family == "C4":
        return UP_TO_CONJUGATE
    return STRICT


@dataclasses.dataclass(frozen=True)
class ClassificationReport:
    label: FamilyLabel
    invariants: GhzInvariants
    lbps: int
    margins: dict[str, float]
    unique_asd: bool
    uniqueness_modality: str

    def near_boundary(self, factor: float = 10.0) -> list[str]:
        """Tested quantities within a factor ``factor`` of their threshold, on either side.

        Values far below the threshold (exact zeros, rounding residue) sit
        firmly on their side and are not reported.
        """
        tol = get_tolerances()
        out = []
        for k, v in self.margins.items():
            eps = getattr(tol, _MARGIN_TOLERANCE[k])
            if eps / factor <= v + eps <= eps * factor:
                out.append(k)
        return out


# tolerance field each margin is measured against
_MARGIN_TOLERANCE = {
    "lambda0": "zero",
    "lambda4": "zero",
    "abs_gamma": "gamma",
    "lambda1": "zero",
    "lambda2": "zero",
    "lambda3": "zero",
    "phase_to_real": "phase",
    "abs_iota": "zero",
    "abs_rho_minus_1": "rho",
}


def _phase_distance(phi: float) -> float:
    return min(abs(phi), abs(phi - math.pi), abs(2 * math.pi - phi))


def _family(asd: ASDState, inv: GhzInvariants, margins: dict[str, float]) -> str:
    tol = get_tolerances()
    _, l1, l2, l3, _ = asd.lam
    z1, z2, z3 = l1 <= tol.zero, l2 <= tol.zero, l3 <= tol.zero
    margins["abs_gamma"] = abs(inv.gamma) - tol.gamma
    margins["lambda1"] = l1 - tol.zero
    margins["lambda2"] = l2 - tol.zero
    margins["lambda3"] = l3 - tol.zero
    if abs(inv.gamma) <= tol.gamma:
        # gamma = 0 forces a positive state
        if not z2 and not z3:
            return "P1"
        if not z3:
            return "P2"
        if not z2:
            return "P3"
        return "P4"
    real_phase = z1 or _phase_distance(asd.phi) <= tol.phase
    margins["phase_to_real"] = _phase_distance(asd.phi) - tol.phase
    if not z2 and not z3 and real_phase:
        margins["abs_iota"] = abs(inv.iota) - tol.zero
        if not z1 and abs(inv.iota) > tol.zero:
            return "R1"
        return "R2"
    if z2 and not z3:
        return "C1"
    if z3 and not z2:
        return "C2"
    if z2 and z3:
        return "C3"
    return "C4"


def classify(asd: ASDState) -> ClassificationReport:
    _require_ghz(asd)
    tol = get_tolerances()
    inv = compute_invariants(asd)
    margins: dict[str, float] = {"lambda0": asd.lam[0] - tol.zero, "lambda4": asd.lam[4] - tol.zero}
    family = _family(asd, inv, margins)
    margins["abs_rho_minus_1"] = abs(inv.rho - 1.0) - tol.rho
    prime = abs(inv.rho - 1.0) <= tol.rho
    return ClassificationReport(
        label=FamilyLabel(family, "prime" if prime else "double_prime"),
        invariants=inv,
        lbps=lbps_count(asd),
        margins=margins,
        unique_asd=prime,
        uniqueness_modality=uniqueness_modality(family),
    )


def _closed_form_residual(asd: ASDState, family: str) -> Optional[float]:
    """Distance from the family's closed-form uniqueness condition, if it has one."""
    l0, l1, l2, l3, l4 = asd.lam
    if family.startswith("P"):
        return abs(l0 - 1 / math.sqrt(2))
    if family.startswith("R"):
        delta = 1 if asd.phi == 0.0 else -1
        return abs(l0 * l0 + l1 * l1 - (0.5 + delta * l1 * l2 * l3 / l4))
    if family in ("C1", "C2", "C3"):
        return abs(l0 * l0 + l1 * l1 - 0.5)
    return None


def is_asd_unique(asd: ASDState) -> tuple[bool, str]:
    """Whether the Schmidt form is the only one in its LU class, and in which sense.

    Cross-checks the rho = 1 test against the family's closed-form
    condition; a disagreement raises :class:`ConsistencyError`.
    """
    rep = classify(asd)
    unique = rep.unique_asd
    res = _closed_form_residual(asd, rep.label.family)
    if res is not None:
        off = abs(rep.invariants.rho - 1.0)
        if unique and res > 1e-8:
            raise ConsistencyError(f"rho = 1 but closed-form residual is {res:.3e} for {asd}")
        if not unique and off > 1e-6 and res < 1e-10:
            raise ConsistencyError(f"closed form holds but |rho - 1| = {off:.3e} for {asd}")
    return unique, rep.uniqueness_modality


def canonical_asd(asd: ASDState) -> ASDState:
    """Representative of the LU class: rho <= 1, C1-C3 phase 0, C4' phase in [0, pi]."""
    tol = get_tolerances()
    rep = classify(asd)
    out = asd
    if rep.invariants.rho > 1.0 + tol.rho:
        out = rho_iota_transform(asd)
    fam = rep.label.family
    if fam in ("C1", "C2", "C3"):
        out = out.with_phase(0.0)
    elif fam == "C4" and rep.label.prime and out.phi > math.pi:
        out = out.conjugate()
    return out


@dataclasses.dataclass(frozen=True)
class LUDecision:
    equivalent: bool
    reason: str
    witness: Optional[LocalUnitaryTriple] = None
    # True when a witness exists in principle but only the brute-force search can produce it
    witness_via_oracle: bool = False

    def __bool__(self) -> bool:
        return self.equivalent


def _same(x: np.ndarray, y: np.ndarray, eps: float) -> bool:
    return bool(np.max(np.abs(x - y)) <= eps)


def decide_lu_equivalence(a: ASDState, b: ASDState) -> LUDecision:
    """Decide whether two GHZ-class Schmidt forms describe LU-equivalent states.

    Necessary conditions first (|ln rho| and family), then the family's
    membership rule: the LU class of ``a`` is ``{a, rho_iota(a)}``, with
    phases ignored for C1-C3.
    """
    tol = get_tolerances()
    ra, rb = classify(a), classify(b)
    la, lb = ra.invariants.ln_rho_abs, rb.invariants.ln_rho_abs
    if abs(la - lb) > tol.rho:
        return LUDecision(False, f"|ln rho| differs ({la:.12g} vs {lb:.12g}); |ln rho| is an LU invariant")
    fa, fb = ra.label.family, rb.label.family
    if fa != fb:
        return LUDecision(False, f"family mismatch ({ra.label} vs {rb.label}); families are LU-inequivalent")

    ca, cb = a.coefficients, b.coefficients
    partner = rho_iota_transform(a)
    eps = tol.cmp

    if fa in ("C1", "C2", "C3"):
        ma, mb, mp = np.abs(ca), np.abs(cb), np.abs(partner.coefficients)
        if _same(ma, mb, eps):
            witness = phase_shift_unitaries(a, b.phi)
            return LUDecision(True, f"{fa}: same Schmidt coefficients up to the phase", witness)
        if _same(mp, mb, eps):
            return LUDecision(True, f"{fa}: rho-iota partner up to the phase", None, True)
        return LUDecision(False, f"{fa}: neither the form nor its rho-iota partner (phases ignored)")

    if _same(ca, cb, eps):
        return LUDecision(True, f"{ra.label}: identical Schmidt forms", LocalUnitaryTriple.identity())
    if _same(partner.coefficients, cb, eps):
        what = "complex conjugate (rho = 1)" if (fa == "C4" and ra.label.prime) else "rho-iota partner"
        return LUDecision(True, f"{ra.label}: {what}", None, True)
    if fa == "C4" and not ra.label.prime and _same(a.conjugate().coefficients, cb, eps):
        return LUDecision(False, f"{ra.label} NCLU: the conjugate is not the rho-iota partner")
    return LUDecision(False, f"{ra.label}: not in {{psi, rho-iota(psi)}}")
