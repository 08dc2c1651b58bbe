"""Three-qubit pure states and local unitary action.

Amplitudes are ordered |000>, |001>, ..., |111> with qubit A the most
significant bit, so ``amp.reshape(2, 2, 2)[a, b, c]`` is the coefficient of
|abc>.
"""
from __future__ import annotations

import dataclasses
from typing import NamedTuple, Sequence, Union

import numpy as np

from .config import get_tolerances
from .errors import InvalidStateError, NotUnitaryError

SeedLike = Union[int, np.random.Generator, np.random.SeedSequence, None]

BASIS_LABELS = tuple(f"{i:03b}" for i in range(8))
HADAMARD = np.array([[1, 1], [1, -1]], dtype=np.complex128) / np.sqrt(2)
IDENTITY = np.eye(2, dtype=np.complex128)


def as_generator(seed: SeedLike) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


@dataclasses.dataclass(frozen=True, eq=False)
class PureState3Q:
    """Normalized vector of 8 complex amplitudes."""

    amp: np.ndarray

    def __post_init__(self):
        amp = np.array(self.amp, dtype=np.complex128).reshape(-1)
        if amp.shape != (8,):
            raise InvalidStateError(f"expected 8 amplitudes, got {amp.size}")
        if not np.all(np.isfinite(amp)):
            raise InvalidStateError("amplitudes must be finite")
        err = abs(np.vdot(amp, amp).real - 1.0)
        if err > get_tolerances().norm:
            raise InvalidStateError(f"state is not normalized (|norm^2 - 1| = {err:.3e})")
        amp.setflags(write=False)
        object.__setattr__(self, "amp", amp)

    @classmethod
    def normalized(cls, amp: Sequence[complex] | np.ndarray) -> "PureState3Q":
        amp = np.asarray(amp, dtype=np.complex128).reshape(-1)
        n = np.linalg.norm(amp)
        if n == 0:
            raise InvalidStateError("zero vector cannot be normalized")
        return cls(amp / n)

    @classmethod
    def from_basis(cls, coeffs: dict[str, complex]) -> "PureState3Q":
        """Build from ``{"000": c0, "111": c1, ...}`` and normalize."""
        amp = np.zeros(8, dtype=np.complex128)
        for key, val in coeffs.items():
            amp[int(key, 2)] = val
        return cls.normalized(amp)

    @property
    def tensor(self) -> np.ndarray:
        return self.amp.reshape(2, 2, 2)

    def allclose(self, other: "PureState3Q", atol: float = 1e-12) -> bool:
        return bool(np.max(np.abs(self.amp - other.amp)) <= atol)

    def __repr__(self) -> str:
        terms = [f"{c:.6g}|{BASIS_LABELS[i]}>" for i, c in enumerate(self.amp) if abs(c) > 1e-15]
        return f"PureState3Q({' + '.join(terms) or '0'})"


class LocalUnitaryTriple(NamedTuple):
    """Factors acting on qubits A, B and C."""

    a: np.ndarray
    b: np.ndarray
    c: np.ndarray

    @classmethod
    def identity(cls) -> "LocalUnitaryTriple":
        return cls(IDENTITY.copy(), IDENTITY.copy(), IDENTITY.copy())

    def kron(self) -> np.ndarray:
        return np.kron(np.kron(self.a, self.b), self.c)


def check_unitary(u: np.ndarray, name: str = "u") -> np.ndarray:
    u = np.asarray(u, dtype=np.complex128)
    if u.shape != (2, 2):
        raise NotUnitaryError(f"{name}: expected a 2x2 matrix, got shape {u.shape}")
    dev = np.max(np.abs(u.conj().T @ u - IDENTITY))
    if not dev <= get_tolerances().unitary:
        raise NotUnitaryError(f"{name}: deviation from unitarity {dev:.3e}")
    return u


def _contract(tensor: np.ndarray, a: np.ndarray, b: np.ndarray, c: np.ndarray) -> np.ndarray:
    return np.einsum("ia,jb,kc,abc->ijk", a, b, c, tensor)


def apply_local_unitaries(state: PureState3Q, t: LocalUnitaryTriple) -> PureState3Q:
    """Return ``(a ⊗ b ⊗ c)|state>``."""
    a = check_unitary(t.a, "a")
    b = check_unitary(t.b, "b")
    c = check_unitary(t.c, "c")
    out = _contract(state.tensor, a, b, c).reshape(8)
    # rounding can push the norm a few ulps off; the input invariant guarantees it is tiny
    return PureState3Q(out / np.linalg.norm(out))


def overlap(a: PureState3Q, b: PureState3Q) -> complex:
    """<a|b>."""
    return complex(np.vdot(a.amp, b.amp))


def conjugate(state: PureState3Q) -> PureState3Q:
    return PureState3Q(state.amp.conj())


def haar_random_local_unitary(seed: SeedLike = None) -> np.ndarray:
    """Haar-distributed 2x2 unitary.

    QR of a complex Ginibre matrix, with the phases of R's diagonal moved
    into Q so the distribution is exactly Haar.
    """
    rng = as_generator(seed)
    z = (rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))


def haar_random_triple(seed: SeedLike = None) -> LocalUnitaryTriple:
    rng = as_generator(seed)
    return LocalUnitaryTriple(*(haar_random_local_unitary(rng) for _ in range(3)))


def hyperdeterminant(state: PureState3Q) -> complex:
    """Cayley's 2x2x2 hyperdeterminant of the amplitude tensor."""
    a = state.tensor
    d1 = (
        a[0, 0, 0] ** 2 * a[1, 1, 1] ** 2
        + a[0, 0, 1] ** 2 * a[1, 1, 0] ** 2
        + a[0, 1, 0] ** 2 * a[1, 0, 1] ** 2
        + a[1, 0, 0] ** 2 * a[0, 1, 1] ** 2
    )
    d2 = (
        a[0, 0, 0] * a[1, 1, 1] * a[0, 1, 1] * a[1, 0, 0]
        + a[0, 0, 0] * a[1, 1, 1] * a[1, 0, 1] * a[0, 1, 0]
        + a[0, 0, 0] * a[1, 1, 1] * a[1, 1, 0] * a[0, 0, 1]
        + a[0, 1, 1] * a[1, 0, 0] * a[1, 0, 1] * a[0, 1, 0]
        + a[0, 1, 1] * a[1, 0, 0] * a[1, 1, 0] * a[0, 0, 1]
        + a[1, 0, 1] * a[0, 1, 0] * a[1, 1, 0] * a[0, 0, 1]
    )
    d3 = (
        a[0, 0, 0] * a[1, 1, 0] * a[1, 0, 1] * a[0, 1, 1]
        + a[1, 1, 1] * a[0, 0, 1] * a[0, 1, 0] * a[1, 0, 0]
    )
    return complex(d1 - 2 * d2 + 4 * d3)


def three_tangle(state: PureState3Q) -> float:
    """Residual tangle 4|Det|; nonzero exactly on the GHZ SLOCC class."""
    return 4.0 * abs(hyperdeterminant(state))


def ghz_state() -> PureState3Q:
    return PureState3Q.from_basis({"000": 1, "111": 1})


def w_state() -> PureState3Q:
    return PureState3Q.from_basis({"001": 1, "010": 1, "100": 1})
