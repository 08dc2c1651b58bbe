"""Generalized Schmidt decomposition of three-qubit pure states.

Every three-qubit state is LU-equivalent to

    l0|000> + l1 e^{i phi}|100> + l2|101> + l3|110> + l4|111>

with l_i >= 0.  :func:`compute_asd` finds such a form together with the
local unitaries that produce it.
"""
from __future__ import annotations

import dataclasses
import math
from typing import Sequence

import numpy as np

from .config import get_tolerances
from .errors import DecompositionError, InvalidStateError
from .qstate import IDENTITY, LocalUnitaryTriple, PureState3Q, _contract

TWO_PI = 2.0 * math.pi
# amplitude index of each Schmidt coefficient
ASD_POSITIONS = (0, 4, 5, 6, 7)
_OFF_POSITIONS = (1, 2, 3)
# below this magnitude a coefficient's phase is treated as noise
_PHASE_FLOOR = 1e-12


def normalize_phase(phi: float, snap: float | None = None) -> float:
    """Map to [0, 2pi) and snap values within ``snap`` of 0, pi or 2pi."""
    if snap is None:
        snap = get_tolerances().phase
    phi = math.fmod(float(phi), TWO_PI)
    if phi < 0:
        phi += TWO_PI
    if phi < snap or TWO_PI - phi < snap:
        return 0.0
    if abs(phi - math.pi) < snap:
        return math.pi
    if phi >= TWO_PI:
        return 0.0
    return phi


@dataclasses.dataclass(frozen=True)
class ASDState:
    """Schmidt coefficients ``lam = (l0, ..., l4)`` and phase ``phi`` in [0, 2pi)."""

    lam: tuple[float, float, float, float, float]
    phi: float = 0.0

    def __post_init__(self):
        tol = get_tolerances()
        lam = tuple(float(x) for x in self.lam)
        if len(lam) != 5:
            raise InvalidStateError(f"expected 5 Schmidt coefficients, got {len(lam)}")
        if not all(math.isfinite(x) for x in lam) or not math.isfinite(self.phi):
            raise InvalidStateError("Schmidt coefficients and phase must be finite")
        if min(lam) < 0:
            raise InvalidStateError(f"Schmidt coefficients must be nonnegative: {lam}")
        err = abs(math.fsum(x * x for x in lam) - 1.0)
        if err > tol.norm:
            raise InvalidStateError(f"Schmidt coefficients not normalized (|sum l^2 - 1| = {err:.3e})")
        phi = 0.0 if lam[1] < tol.zero else normalize_phase(self.phi, tol.phase)
        object.__setattr__(self, "lam", lam)
        object.__setattr__(self, "phi", phi)

    @classmethod
    def normalized(cls, lam: Sequence[float], phi: float = 0.0) -> "ASDState":
        lam = np.abs(np.asarray(lam, dtype=float))
        n = math.sqrt(math.fsum(lam * lam))
        if n == 0:
            raise InvalidStateError("all Schmidt coefficients vanish")
        return cls(tuple(lam / n), phi)

    @classmethod
    def from_coefficients(cls, coeffs: Sequence[complex]) -> "ASDState":
        """From the tuple (l0, l1 e^{i phi}, l2, l3, l4); l0, l2, l3, l4 must be real nonnegative."""
        c = np.asarray(coeffs, dtype=np.complex128)
        if c.shape != (5,):
            raise InvalidStateError("expected 5 coefficients")
        return cls((c[0].real, abs(c[1]), c[2].real, c[3].real, c[4].real), float(np.angle(c[1])))

    @property
    def coefficients(self) -> np.ndarray:
        l0, l1, l2, l3, l4 = self.lam
        return np.array([l0, l1 * np.exp(1j * self.phi), l2, l3, l4], dtype=np.complex128)

    @property
    def delta(self) -> int:
        """Sign of a real |100> coefficient: +1 for phi = 0, -1 for phi = pi."""
        if self.phi == 0.0:
            return 1
        if self.phi == math.pi:
            return -1
        raise ValueError(f"phase {self.phi} is not real")

    def with_phase(self, phi: float) -> "ASDState":
        return ASDState(self.lam, phi)

    def conjugate(self) -> "ASDState":
        return ASDState(self.lam, -self.phi)

    def __str__(self) -> str:
        l0, l1, l2, l3, l4 = self.lam
        return f"({l0:.12g}, {l1:.12g}*e^(i*{self.phi:.12g}), {l2:.12g}, {l3:.12g}, {l4:.12g})"


def reconstruct(asd: ASDState) -> PureState3Q:
    amp = np.zeros(8, dtype=np.complex128)
    amp[list(ASD_POSITIONS)] = asd.coefficients
    return PureState3Q(amp)


def lbps_count(asd: ASDState) -> int:
    """Number of non-vanishing Schmidt coefficients."""
    eps = get_tolerances().zero
    return sum(1 for x in asd.lam if x > eps)


def is_ghz_class(asd: ASDState) -> bool:
    eps = get_tolerances().zero
    return asd.lam[0] > eps and asd.lam[4] > eps


def _slice_roots(t0: np.ndarray, t1: np.ndarray) -> list[tuple[complex, complex]]:
    """Both projective roots (x : y) of det(x t0 + y t1) = 0."""
    qa = np.linalg.det(t0)
    qc = np.linalg.det(t1)
    qb = np.linalg.det(t0 + t1) - qa - qc
    scale = max(abs(qa), abs(qb), abs(qc))
    if scale < 1e-300:
        # every combination is singular
        return [(1.0, 0.0), (0.0, 1.0)]
    if max(abs(qa), abs(qc)) <= 1e-15 * scale:
        # pure cross term: x*y = 0
        return [(1.0, 0.0), (0.0, 1.0)]
    flip = abs(qc) > abs(qa)
    lead, mid, tail = (qc, qb, qa) if flip else (qa, qb, qc)
    # stable quadratic formula on lead*z^2 + mid*z + tail
    disc = np.sqrt(mid * mid - 4 * lead * tail + 0j)
    if (mid.conjugate() * disc).real < 0:
        disc = -disc
    q = -0.5 * (mid + disc)
    z1 = q / lead
    z2 = tail / q if abs(q) > 0 else z1
    if flip:
        return [(1.0, complex(z1)), (1.0, complex(z2))]
    return [(complex(z1), 1.0), (complex(z2), 1.0)]


def _phase_unitaries(c: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Diagonal unitaries making the |000>, |101>, |110>, |111> coefficients of ``c`` real nonnegative.

    The residual phase is left on |100>.  When one of |101>, |110>, |111>
    vanishes the system has a spare parameter, which is used to make the
    |100> coefficient real as well.
    """
    def arg(i):
        return float(np.angle(c[i])) if abs(c[i]) > _PHASE_FLOOR else 0.0

    a0 = -arg(0)
    p100, p101, p110, p111 = arg(4), arg(5), arg(6), arg(7)
    present = [abs(c[i]) > _PHASE_FLOOR for i in (5, 6, 7)]
    if all(present):
        gamma1 = p110 - p111
        beta1 = p101 - p111
        alpha1 = -p101 - gamma1
    elif not present[0]:
        alpha1 = -p100
        beta1 = -p110 - alpha1
        gamma1 = -p111 - alpha1 - beta1
    elif not present[1]:
        alpha1 = -p100
        gamma1 = -p101 - alpha1
        beta1 = -p111 - alpha1 - gamma1
    else:
        alpha1 = -p100
        gamma1 = -p101 - alpha1
        beta1 = -p110 - alpha1
    ua = np.diag([np.exp(1j * a0), np.exp(1j * alpha1)])
    ub = np.diag([1.0, np.exp(1j * beta1)]).astype(np.complex128)
    uc = np.diag([1.0, np.exp(1j * gamma1)]).astype(np.complex128)
    return ua, ub, uc


def _candidate(tensor: np.ndarray, root: tuple[complex, complex]):
    x, y = root
    n = math.hypot(abs(x), abs(y))
    u0, u1 = x / n, y / n
    ua = np.array([[u0, u1], [-np.conj(u1), np.conj(u0)]], dtype=np.complex128)
    s = _contract(tensor, ua, IDENTITY, IDENTITY)
    left, _, right_h = np.linalg.svd(s[0])
    ub = left.conj().T
    uc = right_h.conj()
    s = _contract(s, IDENTITY, ub, uc)
    pa, pb, pc = _phase_unitaries(s.reshape(8))
    s = _contract(s, pa, pb, pc).reshape(8)
    triple = LocalUnitaryTriple(pa @ ua, pb @ ub, pc @ uc)
    return s, triple


def _asd_from_amplitudes(c: np.ndarray) -> tuple[ASDState, float]:
    """Read the Schmidt form off transformed amplitudes; second item is the off-form residual."""
    off = float(np.max(np.abs(c[list(_OFF_POSITIONS)])))
    imag = max(abs(c[i].imag) for i in (0, 5, 6, 7))
    neg = max(0.0, -min(c[i].real for i in (0, 5, 6, 7)))
    lam = np.array([c[0].real, abs(c[4]), c[5].real, c[6].real, c[7].real])
    lam = np.maximum(lam, 0.0)
    lam /= math.sqrt(math.fsum(lam * lam))
    phi = float(np.angle(c[4])) if abs(c[4]) > _PHASE_FLOOR else 0.0
    return ASDState(tuple(lam), phi), max(off, imag, neg)


def asd_candidates(state: PureState3Q) -> list[tuple[ASDState, LocalUnitaryTriple]]:
    """Both Schmidt forms reachable from ``state``, one per root of the slice quadratic.

    For GHZ-class input the two forms are related by the rho-iota
    transformation (and coincide when rho = 1 outside family C4).
    """
    tensor = state.tensor
    out = []
    residuals = {}
    for k, root in enumerate(_slice_roots(tensor[0], tensor[1])):
        amps, triple = _candidate(tensor, root)
        asd, res = _asd_from_amplitudes(amps)
        residuals[f"root{k}"] = res
        if res <= 1e-10:
            out.append((asd, triple))
    if not out:
        raise DecompositionError("no root of the slice quadratic produced a Schmidt form", residuals)
    return out


def compute_asd(state: PureState3Q) -> tuple[ASDState, LocalUnitaryTriple]:
    """Schmidt form of ``state`` and a triple ``t`` with ``t|state> = reconstruct(asd)``.

    Of the two candidate forms the one with the larger l0 is returned; on a
    tie the one with phi in [0, pi] wins.
    """
    cands = asd_candidates(state)
    best = cands[0]
    for cand in cands[1:]:
        d = cand[0].lam[0] - best[0].lam[0]
        if d > 1e-11 or (abs(d) <= 1e-11 and best[0].phi > math.pi >= cand[0].phi):
            best = cand
    return best
