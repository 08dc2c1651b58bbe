"""Hot numerical kernels.

Each kernel exists twice: a loop version compiled with numba and a
vectorized pure-numpy version.  Both are importable under explicit names
(``*_numba`` / ``*_numpy``) for benchmarking and cross-checking; the
unsuffixed names point at whichever path is active.  Set ``GHZLU_NUMBA=0``
to force the numpy path.
"""
from __future__ import annotations

import math

import numpy as np

from . import config

try:
    import numba

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is optional
    numba = None
    HAVE_NUMBA = False

NUMBA_ACTIVE = HAVE_NUMBA and config.USE_NUMBA


def _njit(fn):
    if not HAVE_NUMBA:
        return fn
    return numba.njit(cache=True, nogil=True)(fn)


# --------------------------------------------------------------------------
# rho / iota over batches of Schmidt coefficients
# --------------------------------------------------------------------------

def rho_iota_batch_numpy(lam: np.ndarray, phi: np.ndarray):
    """gamma, rho, iota for arrays ``lam`` (n, 5) and ``phi`` (n,)."""
    l0, l1, l2, l3, l4 = lam.T
    gamma = l1 * l4 * np.exp(1j * phi) - l2 * l3
    j1 = np.abs(gamma) ** 2
    j4 = (l0 * l4) ** 2
    rho = np.sqrt(j4 + j1) / np.sqrt((l2 * l2 + l4 * l4) * (l3 * l3 + l4 * l4))
    iota = (l2 * l3 + np.conj(gamma) / rho**2) / l4
    return gamma, rho, iota


def transform_batch_numpy(lam: np.ndarray, phi: np.ndarray):
    """Coefficients after the rho-iota map; returns (lam', raw complex rho*iota)."""
    _, rho, iota = rho_iota_batch_numpy(lam, phi)
    z = rho * iota
    out = np.empty_like(lam)
    out[:, 0] = lam[:, 0] / rho
    out[:, 1] = np.abs(z)
    out[:, 2:] = lam[:, 2:] * rho[:, None]
    return out, z


@_njit
def _rho_iota_loop(lam, phi, gamma, rho, iota):
    for k in range(lam.shape[0]):
        l0 = lam[k, 0]
        l1 = lam[k, 1]
        l2 = lam[k, 2]
        l3 = lam[k, 3]
        l4 = lam[k, 4]
        g = l1 * l4 * complex(math.cos(phi[k]), math.sin(phi[k])) - l2 * l3
        j1 = g.real * g.real + g.imag * g.imag
        j4 = (l0 * l4) * (l0 * l4)
        r = math.sqrt(j4 + j1) / math.sqrt((l2 * l2 + l4 * l4) * (l3 * l3 + l4 * l4))
        gamma[k] = g
        rho[k] = r
        iota[k] = (l2 * l3 + g.conjugate() / (r * r)) / l4


def rho_iota_batch_numba(lam: np.ndarray, phi: np.ndarray):
    lam = np.ascontiguousarray(lam, dtype=np.float64)
    phi = np.ascontiguousarray(phi, dtype=np.float64)
    n = lam.shape[0]
    gamma = np.empty(n, dtype=np.complex128)
    rho = np.empty(n, dtype=np.float64)
    iota = np.empty(n, dtype=np.complex128)
    _rho_iota_loop(lam, phi, gamma, rho, iota)
    return gamma, rho, iota


def transform_batch_numba(lam: np.ndarray, phi: np.ndarray):
    _, rho, iota = rho_iota_batch_numba(lam, phi)
    z = rho * iota
    out = np.empty_like(np.asarray(lam, dtype=np.float64))
    out[:, 0] = lam[:, 0] / rho
    out[:, 1] = np.abs(z)
    out[:, 2:] = lam[:, 2:] * rho[:, None]
    return out, z


# --------------------------------------------------------------------------
# alternating maximization of |<b| Ua x Ub x Uc |a>|^2
# --------------------------------------------------------------------------

def polish_numpy(a: np.ndarray, b: np.ndarray, us: np.ndarray, max_sweeps: int, tol: float):
    """Improve the triple ``us`` (3, 2, 2) in place by exact single-factor updates.

    Each update replaces one factor by the unitary maximizing the overlap
    with the other two held fixed (polar factor of the environment).
    Returns (fidelity, sweeps performed).
    """
    ta = a.reshape(2, 2, 2)
    tb = b.conj().reshape(2, 2, 2)
    fid = 0.0
    for sweep in range(max_sweeps):
        for k, subs in enumerate(("ijk,jb,kc,abc->ai", "ijk,ia,kc,abc->bj", "ijk,ia,jb,abc->ck")):
            others = [us[m] for m in range(3) if m != k]
            env = np.einsum(subs, tb, others[0], others[1], ta)
            w, _, vh = np.linalg.svd(env)
            us[k] = vh.conj().T @ w.conj().T
        ov = np.einsum("ijk,ia,jb,kc,abc->", tb, us[0], us[1], us[2], ta)
        new = float(abs(ov) ** 2)
        if new - fid <= tol or new >= 1.0 - tol:
            fid = max(new, fid)
            return min(fid, 1.0), sweep + 1
        fid = new
    return min(fid, 1.0), max_sweeps


@_njit
def _environment(k, tb, ta, us, env):
    for x in range(2):
        for y in range(2):
            env[x, y] = 0.0
    for i in range(2):
        for j in range(2):
            for l in range(2):
                cb = tb[i, j, l]
                if cb == 0:
                    continue
                for p in range(2):
                    for q in range(2):
                        for r in range(2):
                            if k == 0:
                                env[p, i] += cb * us[1, j, q] * us[2, l, r] * ta[p, q, r]
                            elif k == 1:
                                env[q, j] += cb * us[0, i, p] * us[2, l, r] * ta[p, q, r]
                            else:
                                env[r, l] += cb * us[0, i, p] * us[1, j, q] * ta[p, q, r]


@_njit
def _polar_update(env, u):
    # unitary maximizing Re tr(u env): polar factor of env^H, 2x2 closed form
    x00 = env[0, 0].conjugate()
    x01 = env[1, 0].conjugate()
    x10 = env[0, 1].conjugate()
    x11 = env[1, 1].conjugate()
    det = x00 * x11 - x01 * x10
    if abs(det) > 0:
        ph = det / abs(det)
    else:
        ph = 1.0 + 0.0j
    y00 = x00 + ph * x11.conjugate()
    y01 = x01 - ph * x10.conjugate()
    y10 = x10 - ph * x01.conjugate()
    y11 = x11 + ph * x00.conjugate()
    s = math.sqrt(abs(y00 * y11 - y01 * y10))
    if s == 0.0:
        return
    u[0, 0] = y00 / s
    u[0, 1] = y01 / s
    u[1, 0] = y10 / s
    u[1, 1] = y11 / s


@_njit
def _polish_loop(a, b, us, max_sweeps, tol):
    ta = a.reshape((2, 2, 2))
    tb = np.conj(b).reshape((2, 2, 2))
    env = np.zeros((2, 2), dtype=np.complex128)
    fid = 0.0
    for sweep in range(max_sweeps):
        for k in range(3):
            _environment(k, tb, ta, us, env)
            _polar_update(env, us[k])
        # overlap = tr(us[2] env_2) after the last update
        _environment(2, tb, ta, us, env)
        ov = 0.0 + 0.0j
        for x in range(2):
            for y in range(2):
                ov += us[2, x, y] * env[y, x]
        new = ov.real * ov.real + ov.imag * ov.imag
        if new - fid <= tol or new >= 1.0 - tol:
            if new > fid:
                fid = new
            return min(fid, 1.0), sweep + 1
        fid = new
    return min(fid, 1.0), max_sweeps


def polish_numba(a: np.ndarray, b: np.ndarray, us: np.ndarray, max_sweeps: int, tol: float):
    fid, sweeps = _polish_loop(
        np.ascontiguousarray(a, dtype=np.complex128),
        np.ascontiguousarray(b, dtype=np.complex128),
        us,
        int(max_sweeps),
        float(tol),
    )
    return float(fid), int(sweeps)


if NUMBA_ACTIVE:
    rho_iota_batch = rho_iota_batch_numba
    transform_batch = transform_batch_numba
    polish = polish_numba
else:
    rho_iota_batch = rho_iota_batch_numpy
    transform_batch = transform_batch_numpy
    polish = polish_numpy
