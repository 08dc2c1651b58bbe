"""LU invariants of GHZ-class Schmidt forms and the rho-iota transformation."""
from __future__ import annotations

import dataclasses
import math

import numpy as np

from . import _kernels
from .asd import ASDState, is_ghz_class
from .config import get_tolerances
from .errors import DomainError, InvalidStateError, NotGHZClassError
from .qstate import LocalUnitaryTriple


@dataclasses.dataclass(frozen=True)
class GhzInvariants:
    gamma: complex
    j1: float
    j4: float
    rho: float
    iota: complex
    ln_rho_abs: float
    measure: float


def _require_ghz(asd: ASDState) -> None:
    if not is_ghz_class(asd):
        l0, l4 = asd.lam[0], asd.lam[4]
        raise NotGHZClassError(
            f"state is not in the GHZ SLOCC class: lambda0*lambda4 = {l0 * l4:.3e} "
            f"(lambda0 = {l0:.3e}, lambda4 = {l4:.3e}; both must exceed {get_tolerances().zero:g})"
        )


def _gamma_rho_iota(asd: ASDState) -> tuple[complex, float, complex]:
    l0, l1, l2, l3, l4 = asd.lam
    gamma = l1 * l4 * complex(math.cos(asd.phi), math.sin(asd.phi)) - l2 * l3
    j1 = abs(gamma) ** 2
    j4 = (l0 * l4) ** 2
    rho = math.sqrt(j4 + j1) / math.sqrt((l2 * l2 + l4 * l4) * (l3 * l3 + l4 * l4))
    iota = (l2 * l3 + gamma.conjugate() / rho**2) / l4
    return gamma, rho, iota


def compute_invariants(asd: ASDState) -> GhzInvariants:
    _require_ghz(asd)
    gamma, rho, iota = _gamma_rho_iota(asd)
    ln_abs = abs(math.log(rho))
    return GhzInvariants(
        gamma=gamma,
        j1=abs(gamma) ** 2,
        j4=(asd.lam[0] * asd.lam[4]) ** 2,
        rho=rho,
        iota=iota,
        ln_rho_abs=ln_abs,
        measure=1.0 / (1.0 + ln_abs),
    )


def rho_iota_transform(asd: ASDState) -> ASDState:
    """The partner Schmidt form ((1/rho) l0, rho*iota, rho l2, rho l3, rho l4).

    Applying the map twice returns the input, and the two forms describe
    LU-equivalent states.
    """
    _require_ghz(asd)
    _, rho, iota = _gamma_rho_iota(asd)
    z = rho * iota
    l0, _, l2, l3, l4 = asd.lam
    lam = (l0 / rho, abs(z), rho * l2, rho * l3, rho * l4)
    err = abs(math.fsum(x * x for x in lam) - 1.0)
    if err > 1e-10:
        raise InvalidStateError(f"rho-iota image is not normalized (|sum l^2 - 1| = {err:.3e})")
    if err > get_tolerances().norm:
        # conditioning loss for tiny lambda4; well below the 1e-10 consistency bound
        n = math.sqrt(math.fsum(x * x for x in lam))
        lam = tuple(x / n for x in lam)
    phi = math.atan2(z.imag, z.real) if abs(z) > 0 else 0.0
    return ASDState(lam, phi)


def lu_invariant_ln_rho(asd: ASDState) -> float:
    """|ln rho|, invariant under local unitaries on the whole GHZ class."""
    _require_ghz(asd)
    return abs(math.log(_gamma_rho_iota(asd)[1]))


def entanglement_measure(asd: ASDState) -> float:
    """1 / (1 + |ln rho|); equals 1 exactly when rho = 1."""
    return 1.0 / (1.0 + lu_invariant_ln_rho(asd))


def invariants_batch(lam: np.ndarray, phi: np.ndarray) -> dict[str, np.ndarray]:
    """Vectorized gamma, rho, iota, |ln rho| for many Schmidt forms at once.

    No GHZ-class validation is done; rows with lambda0*lambda4 = 0 yield inf/nan.
    """
    lam = np.ascontiguousarray(lam, dtype=np.float64)
    phi = np.ascontiguousarray(phi, dtype=np.float64)
    gamma, rho, iota = _kernels.rho_iota_batch(lam, phi)
    return {"gamma": gamma, "rho": rho, "iota": iota, "ln_rho_abs": np.abs(np.log(rho))}


def transform_batch(lam: np.ndarray, phi: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized rho-iota map; returns (lam', phi') with phi' in [0, 2pi)."""
    lam = np.ascontiguousarray(lam, dtype=np.float64)
    phi = np.ascontiguousarray(phi, dtype=np.float64)
    out, z = _kernels.transform_batch(lam, phi)
    return out, np.mod(np.angle(z), 2 * np.pi)


def phase_shift_unitaries(asd: ASDState, target_phase: float) -> LocalUnitaryTriple:
    """Diagonal local unitaries moving the |100> phase of ``asd`` to ``target_phase``.

    Defined when lambda2*lambda3 = 0 and lambda0*lambda1*lambda4 != 0.  With
    lambda3 = 0 (and lambda2 != 0) the factors are
    ``diag(e^{i f1}, e^{i(2 f1 + f2)}), diag(e^{-i f1}, e^{-i f1}), diag(1, e^{-i(f1 + f2)})``
    with f1 + f2 equal to the phase change; otherwise
    ``diag(e^{ia}, e^{ib}), diag(e^{-ia}, e^{-ib}), I`` with b - a equal to it.
    The free parameter is fixed at f1 = 0, a = 0.
    """
    eps = get_tolerances().zero
    l0, l1, l2, l3, l4 = asd.lam
    if not (l2 < eps or l3 < eps):
        raise DomainError(f"phase shifts need lambda2*lambda3 = 0 (lambda2 = {l2:.3e}, lambda3 = {l3:.3e})")
    if min(l0, l1, l4) < eps:
        raise DomainError(
            f"phase shifts need lambda0*lambda1*lambda4 != 0 (lambda0 = {l0:.3e}, "
            f"lambda1 = {l1:.3e}, lambda4 = {l4:.3e})"
        )
    shift = float(target_phase) - asd.phi
    e = np.exp
    if l3 < eps and l2 >= eps:
        f1, f2 = 0.0, shift
        ua = np.diag([e(1j * f1), e(1j * (2 * f1 + f2))])
        ub = np.diag([e(-1j * f1), e(-1j * f1)])
        uc = np.diag([1.0 + 0j, e(-1j * (f2 + f1))])
    else:
        alpha, beta = 0.0, shift
        ua = np.diag([e(1j * alpha), e(1j * beta)])
        ub = np.diag([e(-1j * alpha), e(-1j * beta)])
        uc = np.eye(2, dtype=np.complex128)
    return LocalUnitaryTriple(ua, ub, uc)
