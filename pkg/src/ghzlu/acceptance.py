"""Self-test suite run by ``ghzlu selftest`` and the acceptance tests.

Each criterion returns a :class:`CriterionResult`; ``quick=True`` shrinks the
sample counts but keeps every tolerance and time limit.
"""
from __future__ import annotations

import dataclasses
import math
import time
from typing import Callable, Optional

import numpy as np

from .asd import ASDState, compute_asd, lbps_count, reconstruct
from .classify import ALL_LABELS, classify, decide_lu_equivalence, is_asd_unique
from .config import get_tolerances
from .invariants import (
    compute_invariants,
    entanglement_measure,
    phase_shift_unitaries,
    rho_iota_transform,
)
from .oracle import brute_force_lu_equivalent, random_ghz_asd, sample_subfamily
from .qstate import HADAMARD, LocalUnitaryTriple, apply_local_unitaries, ghz_state, haar_random_triple

SQ2 = math.sqrt(2.0)
PHI = ASDState((0.5, 0.0, 0.5, 0.5, 0.5), 0.0)
PHI_PRIME = ASDState((SQ2 / 2, SQ2 / 4, SQ2 / 4, SQ2 / 4, SQ2 / 4), math.pi)

# positive states with rho = 1 and the labels they must receive
RHO_ONE_CORPUS = (
    ((1 / SQ2, 0.0, 0.0, 0.0, 1 / SQ2), "P4'"),
    ((1 / SQ2, 0.0, 0.5, 0.0, 0.5), "P3'"),
    ((1 / SQ2, 0.0, 0.0, 0.5, 0.5), "P2'"),
    ((1 / SQ2, 0.0, 1 / (2 * SQ2), 1 / (2 * SQ2), 0.5), "R2'"),
    ((1 / SQ2, 1 / (2 * SQ2), 1 / (2 * SQ2), 1 / (2 * SQ2), 1 / (2 * SQ2)), "P1'"),
)


@dataclasses.dataclass(frozen=True)
class CriterionResult:
    number: int
    name: str
    passed: bool
    detail: str
    seconds: float

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] {self.number:2d} {self.name}: {self.detail} ({self.seconds:.3f} s)"


class _Check:
    """Collects failure messages; the first few are kept for the report."""

    def __init__(self):
        self.failures: list[str] = []
        self.count = 0

    def __call__(self, ok: bool, msg: str) -> None:
        self.count += 1
        if not ok:
            self.failures.append(msg)

    def summary(self, extra: str = "") -> tuple[bool, str]:
        if self.failures:
            shown = "; ".join(self.failures[:3])
            return False, f"{len(self.failures)}/{self.count} checks failed: {shown}"
        return True, f"{self.count} checks" + (f", {extra}" if extra else "")


def _maxdiff(x, y) -> float:
    return float(np.max(np.abs(np.asarray(x) - np.asarray(y))))


def _tolerances_usable() -> Optional[str]:
    bad = get_tolerances().validate()
    return f"unusable tolerance setting(s): {', '.join(bad)}" if bad else None


# --------------------------------------------------------------------------

def hadamard_pair(quick: bool) -> tuple[bool, str]:
    hhh = LocalUnitaryTriple(HADAMARD, HADAMARD, HADAMARD)
    chk = _Check()
    best = math.inf
    for _ in range(20):
        t0 = time.perf_counter()
        image = rho_iota_transform(PHI)
        mapped = apply_local_unitaries(reconstruct(PHI), hhh)
        back = apply_local_unitaries(reconstruct(PHI_PRIME), hhh)
        best = min(best, time.perf_counter() - t0)
    chk(_maxdiff(image.coefficients, PHI_PRIME.coefficients) <= 1e-12, f"transform off by {_maxdiff(image.coefficients, PHI_PRIME.coefficients):.2e}")
    chk(_maxdiff(mapped.amp, reconstruct(PHI_PRIME).amp) <= 1e-12, "H x H x H does not map phi to phi'")
    chk(_maxdiff(back.amp, reconstruct(PHI).amp) <= 1e-12, "H x H x H does not map phi' to phi")
    chk(best < 1e-3, f"runtime {best * 1e3:.3f} ms >= 1 ms")
    return chk.summary(f"best of 20 runs {best * 1e6:.0f} us")


def rho_values(quick: bool) -> tuple[bool, str]:
    chk = _Check()
    r, rp = compute_invariants(PHI).rho, compute_invariants(PHI_PRIME).rho
    chk(abs(r - 1 / SQ2) <= 1e-12, f"rho(phi) = {r!r}")
    chk(abs(rp - SQ2) <= 1e-12, f"rho(phi') = {rp!r}")
    chk(abs(r * rp - 1) <= 1e-12, f"product {r * rp!r}")
    return chk.summary(f"rho = {r!r}, rho' = {rp!r}")


def involution(quick: bool) -> tuple[bool, str]:
    n = 1000 if quick else 10_000
    rng = np.random.default_rng(3)
    samples = [random_ghz_asd(rng) for _ in range(n)]
    chk = _Check()
    worst = 0.0
    t0 = time.perf_counter()
    for a in samples:
        inv = compute_invariants(a)
        b = rho_iota_transform(a)
        raw_norm = (a.lam[0] / inv.rho) ** 2 + abs(inv.rho * inv.iota) ** 2 + inv.rho**2 * (a.lam[2] ** 2 + a.lam[3] ** 2 + a.lam[4] ** 2)
        iota_b = compute_invariants(b).iota
        back = rho_iota_transform(b)
        d = _maxdiff(back.coefficients, a.coefficients)
        e = abs(iota_b - inv.rho * a.lam[1] * complex(math.cos(a.phi), math.sin(a.phi)))
        worst = max(worst, d, e)
        chk(d <= 1e-10, f"double transform off by {d:.2e} for {a}")
        chk(abs(raw_norm - 1) <= 1e-10, f"image norm off by {abs(raw_norm - 1):.2e} for {a}")
        chk(e <= 1e-10, f"iota' law off by {e:.2e} for {a}")
    dt = time.perf_counter() - t0
    chk(dt < 10.0, f"runtime {dt:.1f} s >= 10 s")
    return chk.summary(f"{n} states, worst deviation {worst:.1e}")


def lu_invariance(quick: bool) -> tuple[bool, str]:
    n = 100 if quick else 1000
    rng = np.random.default_rng(4)
    chk = _Check()
    worst = 0.0
    t0 = time.perf_counter()
    for _ in range(n):
        a = random_ghz_asd(rng)
        rep = classify(a)
        image = apply_local_unitaries(reconstruct(a), haar_random_triple(rng))
        b, _ = compute_asd(image)
        rep_b = classify(b)
        d = abs(rep.invariants.ln_rho_abs - rep_b.invariants.ln_rho_abs)
        worst = max(worst, d)
        chk(d <= 1e-8, f"|ln rho| moved by {d:.2e} for {a}")
        chk(rep.label == rep_b.label, f"label {rep.label} became {rep_b.label} for {a}")
    dt = time.perf_counter() - t0
    chk(dt < 60.0, f"runtime {dt:.1f} s >= 60 s")
    return chk.summary(f"{n} pairs, worst |ln rho| drift {worst:.1e}")


def rho_one_corpus(quick: bool) -> tuple[bool, str]:
    chk = _Check()
    got = []
    for lam, expected in RHO_ONE_CORPUS:
        direct = ASDState(lam, 0.0)
        via_amplitudes, _ = compute_asd(reconstruct(direct))
        for a in (direct, via_amplitudes):
            rep = classify(a)
            unique, _ = is_asd_unique(a)
            chk(abs(rep.invariants.rho - 1) <= 1e-12, f"|rho - 1| = {abs(rep.invariants.rho - 1):.2e} for {lam}")
            chk(unique, f"{lam} not reported unique")
            chk(str(rep.label) == expected, f"{lam} classified {rep.label}, expected {expected}")
        got.append(str(classify(direct).label))
    return chk.summary("labels " + " ".join(got))


def _close(a: ASDState, b: ASDState, eps: float = 1e-9) -> bool:
    return _maxdiff(a.coefficients, b.coefficients) <= eps


def subfamily_atlas(quick: bool) -> tuple[bool, str]:
    seeds = 10 if quick else 100
    chk = _Check()
    for label in ALL_LABELS:
        fam = label.family
        for seed in range(seeds):
            a = sample_subfamily(label, seed)
            rep = classify(a)
            chk(rep.label == label, f"{label} seed {seed} classified {rep.label}")
            p = rho_iota_transform(a)
            chk(decide_lu_equivalence(a, p).equivalent, f"{label}: partner not equivalent")
            chk(decide_lu_equivalence(p, a).equivalent, f"{label}: partner relation not symmetric")
            other = sample_subfamily(label, 10_000 + seed)
            if decide_lu_equivalence(a, other).equivalent:
                if fam in ("C1", "C2", "C3"):
                    mags = [np.abs(x.coefficients) for x in (a, p, other)]
                    same = min(_maxdiff(mags[0], mags[2]), _maxdiff(mags[1], mags[2])) <= 1e-9
                else:
                    same = _close(a, other) or _close(p, other)
                chk(same, f"{label}: distinct samples judged equivalent")
            if fam in ("C1", "C2", "C3"):
                pm, am = np.abs(p.coefficients), np.abs(a.coefficients)
                chk((_maxdiff(pm, am) <= 1e-9) == label.prime, f"{label}: partner magnitudes {'differ' if label.prime else 'coincide'}")
            elif fam == "C4":
                conj = a.conjugate()
                chk(_close(p, conj) == label.prime, f"{label}: partner vs conjugate mismatch")
                chk(decide_lu_equivalence(a, conj).equivalent == label.prime, f"{label}: conjugate decision wrong")
                chk(not _close(p, a), f"{label}: partner equals the state")
            else:
                chk(_close(p, a) == label.prime, f"{label}: class of {a} has wrong size")
            la, lp = lbps_count(a), lbps_count(p)
            if fam == "R2" and not label.prime:
                chk({la, lp} == {4, 5}, f"R2'': LBPS pair {la}, {lp}")
            else:
                chk(la == lp, f"{label}: LBPS changed {la} -> {lp}")
    return chk.summary(f"20 labels x {seeds} seeds")


def _oracle_pairs(quick: bool):
    """(name, asd_a, state_b) triples: analytic side decides on compute_asd(state_b)."""
    rng = np.random.default_rng(7)
    per_label = 2 if quick else 10
    for li, label in enumerate(ALL_LABELS):
        for k in range(per_label):
            a = sample_subfamily(label, rng)
            kind = (k + li) % 10
            if kind == 0:
                name, b = "partner", reconstruct(rho_iota_transform(a))
            elif kind == 1:
                name, b = "haar image", apply_local_unitaries(reconstruct(a), haar_random_triple(rng))
            elif kind == 2:
                name, b = "conjugate", reconstruct(a.conjugate())
            elif kind in (3, 7):
                name, b = "same label", reconstruct(sample_subfamily(label, rng))
            elif kind == 4:
                name, b = "next label", reconstruct(sample_subfamily(ALL_LABELS[(li + 1) % 20], rng))
            elif kind == 5:
                name, b = "phase changed", reconstruct(a.with_phase(rng.uniform(0, 2 * math.pi)))
            elif kind == 6:
                name, b = "partner haar image", apply_local_unitaries(reconstruct(rho_iota_transform(a)), haar_random_triple(rng))
            elif kind == 8:
                name, b = "conjugate haar image", apply_local_unitaries(reconstruct(a.conjugate()), haar_random_triple(rng))
            else:
                name, b = "random label", reconstruct(sample_subfamily(ALL_LABELS[rng.integers(20)], rng))
            yield f"{label} {name}", a, b


def oracle_agreement(quick: bool) -> tuple[bool, str]:
    from .qstate import three_tangle

    chk = _Check()
    n_eq = n_ne = 0
    min_gap = math.inf
    t0 = time.perf_counter()
    for i, (name, a, state_b) in enumerate(_oracle_pairs(quick)):
        if three_tangle(state_b) <= 1e-9:
            continue
        b, _ = compute_asd(state_b)
        analytic = decide_lu_equivalence(a, b)
        verdict = brute_force_lu_equivalent(reconstruct(a), state_b, budget=64, seed=i)
        if analytic.equivalent:
            n_eq += 1
            chk(verdict.best_fidelity >= 1 - 1e-8, f"{name}: equivalent but oracle fidelity {verdict.best_fidelity:.12f}")
        else:
            n_ne += 1
            min_gap = min(min_gap, verdict.infidelity)
            chk(verdict.best_fidelity < 1 - 1e-6, f"{name}: inequivalent ({analytic.reason}) but oracle fidelity {verdict.best_fidelity:.12f}")
    # the C4'' state vs its conjugate must come out NCLU on both sides
    c = ASDState.normalized((1, 1, 1, 1, 1), math.pi / 2)
    decision = decide_lu_equivalence(c, c.conjugate())
    verdict = brute_force_lu_equivalent(reconstruct(c), reconstruct(c.conjugate()), budget=64, seed=12345)
    chk(not decision.equivalent and "NCLU" in decision.reason, f"C4'' conjugate: analytic says {decision.reason}")
    chk(verdict.clearly_inequivalent, f"C4'' conjugate: oracle fidelity {verdict.best_fidelity:.12f}")
    dt = time.perf_counter() - t0
    chk(dt < 300.0, f"runtime {dt:.0f} s >= 300 s")
    return chk.summary(f"{n_eq} equivalent, {n_ne} inequivalent pairs, smallest inequivalent infidelity {min_gap:.1e}")


def measure(quick: bool) -> tuple[bool, str]:
    chk = _Check()
    ghz, _ = compute_asd(ghz_state())
    m_ghz = entanglement_measure(ghz)
    m_phi = entanglement_measure(PHI)
    expected = 1 / (1 + math.log(SQ2))
    printed = 1 / (1 + SQ2)
    chk(m_ghz == 1.0, f"GHZ measure {m_ghz!r}")
    chk(abs(m_phi - expected) <= 1e-12, f"measure(phi) = {m_phi!r}, expected {expected!r}")
    return chk.summary(f"measure(phi) = {m_phi:.15f}; the value 1/(1+sqrt2) = {printed:.15f} does not follow from rho = 1/sqrt2 (discrepancy noted, not asserted)")


def phase_shift_retargets(quick: bool) -> tuple[bool, str]:
    rng = np.random.default_rng(9)
    chk = _Check()
    worst = 0.0
    for case, labels in (("lambda3 = 0", ("C2'", "C2''")), ("lambda2 = 0", ("C1'", "C1''", "C3'", "C3''"))):
        for i in range(100):
            a = sample_subfamily(labels[i % len(labels)], rng)
            target = rng.uniform(0, 2 * math.pi)
            u = phase_shift_unitaries(a, target)
            got = apply_local_unitaries(reconstruct(a), u)
            err = _maxdiff(got.amp, reconstruct(a.with_phase(target)).amp)
            worst = max(worst, err)
            chk(err < 1e-10, f"{case}: retarget error {err:.2e}")
    return chk.summary(f"200 retargets, worst error {worst:.1e}")


def closed_forms(quick: bool) -> tuple[bool, str]:
    n = 200 if quick else 1000
    rng = np.random.default_rng(10)
    chk = _Check()
    worst = 0.0
    pos = [lab for lab in ALL_LABELS if lab.family.startswith("P")]
    cpx = [lab for lab in ALL_LABELS if lab.family in ("C1", "C2", "C3")]
    for i in range(n):
        a = sample_subfamily(pos[i % len(pos)], rng)
        inv = compute_invariants(a)
        l0, l1 = a.lam[0], a.lam[1]
        d1 = abs(inv.rho - l0 / math.sqrt(1 - l0 * l0))
        d2 = abs(inv.iota - l1)
        worst = max(worst, d1, d2)
        chk(d1 <= 1e-10, f"gamma = 0: rho off by {d1:.2e}")
        chk(d2 <= 1e-10, f"gamma = 0: iota off by {d2:.2e}")
    for i in range(n):
        a = sample_subfamily(cpx[i % len(cpx)], rng)
        inv = compute_invariants(a)
        l0, l1 = a.lam[0], a.lam[1]
        s = l0 * l0 + l1 * l1
        rho = math.sqrt(s) / math.sqrt(1 - s)
        d1 = abs(inv.rho - rho)
        # iota carries the conjugate phase of the |100> coefficient
        d2 = abs(inv.iota - l1 / rho**2 * complex(math.cos(a.phi), -math.sin(a.phi)))
        worst = max(worst, d1, d2)
        chk(d1 <= 1e-10, f"lambda2 lambda3 = 0: rho off by {d1:.2e}")
        chk(d2 <= 1e-10, f"lambda2 lambda3 = 0: iota off by {d2:.2e}")
    return chk.summary(f"{2 * n} samples, worst deviation {worst:.1e}")


CRITERIA: tuple[tuple[int, str, Callable[[bool], tuple[bool, str]]], ...] = (
    (1, "Hadamard pair", hadamard_pair),
    (2, "rho values", rho_values),
    (3, "involution", involution),
    (4, "LU invariance", lu_invariance),
    (5, "rho = 1 corpus", rho_one_corpus),
    (6, "subfamily atlas", subfamily_atlas),
    (7, "oracle agreement", oracle_agreement),
    (8, "measure", measure),
    (9, "phase-shift retargets", phase_shift_retargets),
    (10, "closed forms", closed_forms),
)


def run_criterion(number: int, quick: bool = False) -> CriterionResult:
    num, name, fn = CRITERIA[number - 1]
    t0 = time.perf_counter()
    problem = _tolerances_usable()
    if problem is not None:
        return CriterionResult(num, name, False, problem, 0.0)
    try:
        passed, detail = fn(quick)
    except Exception as exc:  # a crash is a failed criterion, reported by name
        passed, detail = False, f"{type(exc).__name__}: {exc}"
    return CriterionResult(num, name, passed, detail, time.perf_counter() - t0)


def run_all(quick: bool = False, only: Optional[list[int]] = None) -> list[CriterionResult]:
    numbers = only or [c[0] for c in CRITERIA]
    return [run_criterion(n, quick) for n in numbers]
