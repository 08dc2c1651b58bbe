import math

import numpy as np
import pytest

from ghzlu import (
    ALL_LABELS,
    ASDState,
    FamilyLabel,
    apply_local_unitaries,
    brute_force_lu_equivalent,
    classify,
    compute_invariants,
    ghz_state,
    haar_random_triple,
    overlap,
    random_ghz_asd,
    reconstruct,
    sample_subfamily,
)
from ghzlu.oracle import INEQUIVALENCE_THRESHOLD, angle_unitary
from ghzlu.qstate import HADAMARD, LocalUnitaryTriple

SQ2 = math.sqrt(2)
PHI = ASDState((0.5, 0.0, 0.5, 0.5, 0.5), 0.0)
PHI_PRIME = ASDState((SQ2 / 2, SQ2 / 4, SQ2 / 4, SQ2 / 4, SQ2 / 4), math.pi)


def witness_error(a, b, verdict):
    moved = apply_local_unitaries(a, verdict.witness)
    ph = overlap(moved, b)
    return np.max(np.abs(moved.amp * (ph / abs(ph)) - b.amp))


def test_angle_unitary_is_unitary():
    rng = np.random.default_rng(0)
    for _ in range(100):
        u = angle_unitary(*rng.uniform(-7, 7, 4))
        assert np.max(np.abs(u.conj().T @ u - np.eye(2))) <= 1e-14


def test_self_pair():
    s = reconstruct(random_ghz_asd(3))
    v = brute_force_lu_equivalent(s, s)
    assert v.equivalent and v.best_fidelity == pytest.approx(1, abs=1e-14) and v.restarts_used == 1


def test_hadamard_pair():
    a, b = reconstruct(PHI), reconstruct(PHI_PRIME)
    v = brute_force_lu_equivalent(a, b)
    assert v.equivalent and v.best_fidelity >= 1 - 1e-8
    assert witness_error(a, b, v) <= 1e-6
    # H x H x H is one optimum
    hhh = apply_local_unitaries(a, LocalUnitaryTriple(HADAMARD, HADAMARD, HADAMARD))
    assert abs(overlap(hhh, b)) ** 2 == pytest.approx(1, abs=1e-14)


def test_c4_double_prime_conjugate_not_found():
    c = ASDState.normalized((1, 1, 1, 1, 1), math.pi / 2)
    v = brute_force_lu_equivalent(reconstruct(c), reconstruct(c.conjugate()), budget=64)
    assert not v.equivalent and v.best_fidelity < 1 - 1e-6 and v.restarts_used == 64
    assert v.clearly_inequivalent


def test_generalized_ghz_pair_bound():
    # the identity already reaches (a + b)^2 / 2; the pair is still inequivalent
    p, q = math.sqrt(0.6), math.sqrt(0.4)
    other = reconstruct(ASDState((p, 0, 0, 0, q)))
    v = brute_force_lu_equivalent(ghz_state(), other)
    assert (p + q) ** 2 / 2 - 1e-12 <= v.best_fidelity < INEQUIVALENCE_THRESHOLD


def test_haar_images_found_with_checkable_witness():
    rng = np.random.default_rng(1)
    for k in range(30):
        a = reconstruct(random_ghz_asd(rng))
        b = apply_local_unitaries(a, haar_random_triple(rng))
        v = brute_force_lu_equivalent(a, b, seed=k)
        assert v.equivalent, v.best_fidelity
        assert witness_error(a, b, v) <= 1e-6


def test_deterministic_for_seed():
    a = reconstruct(sample_subfamily("C4''", 2))
    b = reconstruct(sample_subfamily("C4''", 3))
    v1 = brute_force_lu_equivalent(a, b, budget=8, seed=5)
    v2 = brute_force_lu_equivalent(a, b, budget=8, seed=5)
    assert v1.best_fidelity == v2.best_fidelity
    assert all(np.array_equal(x, y) for x, y in zip(v1.witness, v2.witness))


def test_verdict_contract():
    a = reconstruct(sample_subfamily("R1''", 2))
    b = reconstruct(sample_subfamily("P2''", 2))
    v = brute_force_lu_equivalent(a, b, budget=4)
    assert v.equivalent == (v.best_fidelity >= 1 - 1e-8)
    assert 0 <= v.best_fidelity <= 1
    assert v.infidelity == 1 - v.best_fidelity
    with pytest.raises(ValueError):
        brute_force_lu_equivalent(a, b, budget=0)


@pytest.mark.parametrize("label", ALL_LABELS, ids=str)
def test_sampler_round_trip(label):
    for seed in range(100):
        assert classify(sample_subfamily(label, seed)).label == label


def test_sampler_examples():
    g = sample_subfamily("P4'", 123)
    assert np.max(np.abs(np.array(g.lam) - [1 / SQ2, 0, 0, 0, 1 / SQ2])) <= 1e-15
    for seed in range(20):
        a = sample_subfamily(FamilyLabel("R2", "prime"), seed)
        assert abs(a.lam[0] - 1 / SQ2) <= 1e-12 and a.lam[1] == 0.0


def test_sampler_prime_rho_is_exact():
    for lab in ALL_LABELS:
        if lab.prime:
            for seed in range(20):
                assert abs(compute_invariants(sample_subfamily(lab, seed)).rho - 1) <= 1e-12


def test_sampler_deterministic():
    for lab in ("C4'", "R2''", "P1''"):
        assert sample_subfamily(lab, 42) == sample_subfamily(lab, 42)
    assert random_ghz_asd(9) == random_ghz_asd(9)


def test_sampler_rejects_unknown_label():
    with pytest.raises(ValueError):
        sample_subfamily("Q1'", 0)
