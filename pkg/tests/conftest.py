"""Independent reference computations used as test oracles."""
import numpy as np
import pytest
import sympy as sp

from ghzlu import PureState3Q

SY = np.array([[0, -1j], [1j, 0]])


def random_state(rng: np.random.Generator) -> PureState3Q:
    z = rng.standard_normal(8) + 1j * rng.standard_normal(8)
    return PureState3Q.normalized(z)


def reduced(state: PureState3Q, keep: tuple[int, ...]) -> np.ndarray:
    """Partial trace keeping the listed qubits (0 = A)."""
    t = state.tensor
    letters = "abc"
    traced = [q for q in range(3) if q not in keep]
    ket = "".join(letters[q] if q in traced else letters[q] for q in range(3))
    bra = "".join(letters[q] if q in traced else letters[q].upper() for q in range(3))
    out = "".join(letters[q] for q in keep) + "".join(letters[q].upper() for q in keep)
    rho = np.einsum(f"{ket},{bra}->{out}", t, t.conj())
    d = 2 ** len(keep)
    return rho.reshape(d, d)


def wootters_concurrence(rho: np.ndarray) -> float:
    """Concurrence of a two-qubit state of rank <= 2 (true for a reduced pure three-qubit state).

    Singular values of V^T (Y x Y) V with V the weighted eigenvectors avoid
    square roots of near-zero eigenvalues.
    """
    w, v = np.linalg.eigh(rho)
    vv = v[:, -2:] * np.sqrt(np.clip(w[-2:], 0, None))
    s = np.linalg.svd(vv.T @ np.kron(SY, SY) @ vv, compute_uv=False)
    return max(0.0, s[0] - s[1])


def ckw_tangle(state: PureState3Q) -> float:
    """Residual tangle C^2_{A(BC)} - C^2_{AB} - C^2_{AC} (Coffman-Kundu-Wootters)."""
    rho_a = reduced(state, (0,))
    c_a_bc = 4 * np.linalg.det(rho_a).real
    return c_a_bc - wootters_concurrence(reduced(state, (0, 1))) ** 2 - wootters_concurrence(reduced(state, (0, 2))) ** 2


def local_spectra(state: PureState3Q) -> np.ndarray:
    return np.concatenate([np.linalg.eigvalsh(reduced(state, (q,))) for q in range(3)])


def exact_invariants(lam, phi):
    """gamma, rho, iota evaluated in exact arithmetic (sympy) then rounded."""
    # doubles are dyadic rationals, so Rational() is exact
    l0, l1, l2, l3, l4 = (x if isinstance(x, sp.Basic) else sp.Rational(float(x)) for x in lam)
    phase = sp.exp(sp.I * (phi if isinstance(phi, sp.Basic) else sp.Rational(float(phi))))
    gamma = l1 * l4 * phase - l2 * l3
    j1 = sp.Abs(gamma) ** 2
    j4 = (l0 * l4) ** 2
    rho = sp.sqrt(j4 + j1) / sp.sqrt((l2**2 + l4**2) * (l3**2 + l4**2))
    iota = (l2 * l3 + sp.conjugate(gamma) / rho**2) / l4
    return complex(sp.N(gamma, 30)), float(sp.re(sp.N(rho, 30))), complex(sp.N(iota, 30))


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for r in sorted(RESULTS, key=lambda r: r.number):
            terminalreporter.write_line(r.line())
