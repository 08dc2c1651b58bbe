"""Brute-force LU-equivalence search and random members of each subfamily.

Nothing here relies on the analytic classification rules: the search only
maximizes |<b|Ua x Ub x Uc|a>|^2 numerically, so it can be used to check
them.
"""
from __future__ import annotations

import dataclasses
import math

import numpy as np

from . import _kernels
from .asd import ASDState
from .classify import FamilyLabel, classify
from .config import get_tolerances
from .invariants import rho_iota_transform
from .qstate import LocalUnitaryTriple, PureState3Q, SeedLike, apply_local_unitaries, overlap

DEFAULT_BUDGET = 64
MAX_SWEEPS = 400
# below this the oracle reports "inequivalent"; between it and 1 - tol.oracle it is undecided
INEQUIVALENCE_THRESHOLD = 1.0 - 1e-6


@dataclasses.dataclass(frozen=True)
class OracleVerdict:
    equivalent: bool
    best_fidelity: float
    witness: LocalUnitaryTriple
    restarts_used: int

    @property
    def infidelity(self) -> float:
        return 1.0 - self.best_fidelity

    @property
    def clearly_inequivalent(self) -> bool:
        return self.best_fidelity < INEQUIVALENCE_THRESHOLD


def angle_unitary(omega: float, theta: float, mu: float, nu: float) -> np.ndarray:
    """e^{i omega} [[cos t, -e^{i mu} sin t], [e^{i nu} sin t, e^{i(mu+nu)} cos t]]."""
    c, s = math.cos(theta), math.sin(theta)
    u = np.array(
        [[c, -np.exp(1j * mu) * s], [np.exp(1j * nu) * s, np.exp(1j * (mu + nu)) * c]],
        dtype=np.complex128,
    )
    return np.exp(1j * omega) * u


def _random_start(rng: np.random.Generator) -> np.ndarray:
    us = np.empty((3, 2, 2), dtype=np.complex128)
    for k in range(3):
        omega, mu, nu = rng.uniform(0, 2 * np.pi, 3)
        # sin^2(theta) uniform on [0, 1] matches the Haar marginal
        theta = math.asin(math.sqrt(rng.uniform()))
        us[k] = angle_unitary(omega, theta, mu, nu)
    return us


def brute_force_lu_equivalent(
    a: PureState3Q,
    b: PureState3Q,
    budget: int = DEFAULT_BUDGET,
    seed: int = 0,
) -> OracleVerdict:
    """Search local unitaries maximizing the fidelity between ``(Ua x Ub x Uc)|a>`` and ``|b>``.

    The first start is the identity, the rest are random and drawn from
    independent per-restart streams, so the result is deterministic for a
    given seed.  ``equivalent=True`` comes with a checkable witness;
    ``False`` only means nothing better was found within ``budget`` restarts.
    """
    if budget < 1:
        raise ValueError("budget must be at least 1")
    tol = get_tolerances()
    streams = np.random.SeedSequence(seed).spawn(budget)
    best_f, best_us, used = -1.0, None, 0
    for r in range(budget):
        us = np.array([np.eye(2)] * 3, dtype=np.complex128) if r == 0 else _random_start(np.random.default_rng(streams[r]))
        f, _ = _kernels.polish(a.amp, b.amp, us, MAX_SWEEPS, 1e-15)
        used = r + 1
        if f > best_f:
            best_f, best_us = f, us.copy()
        if best_f >= 1.0 - 1e-13:
            break
    witness = LocalUnitaryTriple(*(_reunitarize(u) for u in best_us))
    # recompute from scratch so the reported value does not depend on the kernel's bookkeeping
    fid = min(1.0, abs(overlap(b, apply_local_unitaries(a, witness))) ** 2)
    return OracleVerdict(fid >= 1.0 - tol.oracle, fid, witness, used)


def _reunitarize(u: np.ndarray) -> np.ndarray:
    w, _, vh = np.linalg.svd(u)
    return w @ vh


# --------------------------------------------------------------------------
# subfamily samplers
# --------------------------------------------------------------------------

_MIN_COEFF = 0.04
_MIN_GAMMA = 0.02
_MIN_IOTA = 0.02
_MIN_LN_RHO = 0.15
_MIN_PHASE_GAP = 0.2


def _direction(fam: str, rng: np.random.Generator) -> tuple[np.ndarray, float]:
    """Direction of (l1, l2, l3, l4) with the family's zero pattern, and a phase."""
    u = rng.uniform(0.2, 1.0, 4)
    phi = 0.0
    if fam == "P1":
        u[0] = u[1] * u[2] / u[3]
    elif fam == "P2":
        u[[0, 1]] = 0
    elif fam == "P3":
        u[[0, 2]] = 0
    elif fam == "P4":
        u[[0, 1, 2]] = 0
    elif fam == "R1":
        phi = math.pi * rng.integers(0, 2)
    elif fam == "R2":
        u[0] = 0
    elif fam in ("C1", "C2", "C3"):
        u[{"C1": [1], "C2": [2], "C3": [1, 2]}[fam]] = 0
        phi = rng.uniform(0, 2 * np.pi)
    elif fam == "C4":
        phi = rng.uniform(_MIN_PHASE_GAP, math.pi - _MIN_PHASE_GAP) + math.pi * rng.integers(0, 2)
    return u / np.linalg.norm(u), phi


def _prime_lambda0(u: np.ndarray, phi: float) -> float | None:
    """lambda0 making rho = 1 once (l1..l4) = sqrt(1 - lambda0^2) * u.

    With s^2 = 1 - l0^2, rho^2 = (l0^2/s^2) u4^2 / D + |gamma_u|^2 / D where
    D = (u2^2 + u4^2)(u3^2 + u4^2), so rho = 1 at l0^2/s^2 = (D - |gamma_u|^2)/u4^2.
    """
    u1, u2, u3, u4 = u
    g = u1 * u4 * complex(math.cos(phi), math.sin(phi)) - u2 * u3
    d = (u2 * u2 + u4 * u4) * (u3 * u3 + u4 * u4)
    r = (d - abs(g) ** 2) / (u4 * u4)
    if r <= 0:
        return None
    return math.sqrt(r / (1 + r))


def _robust(asd: ASDState, label: FamilyLabel) -> bool:
    """Reject draws too close to a decision boundary of the requested label."""
    rep = classify(asd)
    if rep.label != label:
        return False
    lam = np.array(asd.lam)
    nonzero = lam[lam > get_tolerances().zero]
    if nonzero.min() < _MIN_COEFF:
        return False
    inv = rep.invariants
    if label.family[0] != "P" and abs(inv.gamma) < _MIN_GAMMA:
        return False
    if label.family == "R1" and abs(inv.iota) < _MIN_IOTA:
        return False
    if not label.prime and inv.ln_rho_abs < _MIN_LN_RHO:
        return False
    return True


def sample_subfamily(label: FamilyLabel | str, seed: SeedLike = 0, max_tries: int = 10_000) -> ASDState:
    """A random Schmidt form that :func:`classify` maps to ``label``.

    Draws keep a safety margin from every classification boundary so that
    the label survives numerical round trips through local unitaries.
    """
    if isinstance(label, str):
        label = FamilyLabel.parse(label)
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    fam = label.family
    for _ in range(max_tries):
        u, phi = _direction(fam, rng)
        if label.prime:
            l0 = _prime_lambda0(u, phi)
            if l0 is None:
                continue
        else:
            l0 = rng.uniform(0.15, 0.95)
        s = math.sqrt(1.0 - l0 * l0)
        asd = ASDState.normalized((l0, *(s * u)), phi)
        if fam == "R2" and not label.prime and rng.uniform() < 0.5:
            # the 5-coefficient partner (iota = 0) of the 4-coefficient form
            asd = rho_iota_transform(asd)
        if _robust(asd, label):
            return asd
    raise RuntimeError(f"could not sample {label} in {max_tries} tries")


def random_ghz_asd(seed: SeedLike = None) -> ASDState:
    """Sample a subfamily uniformly at random, then a member of it."""
    from .classify import ALL_LABELS

    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    return sample_subfamily(ALL_LABELS[rng.integers(len(ALL_LABELS))], rng)
