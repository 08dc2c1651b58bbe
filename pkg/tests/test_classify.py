import dataclasses
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from ghzlu import (
    ALL_LABELS,
    ASDState,
    ConsistencyError,
    FamilyLabel,
    NotGHZClassError,
    Tolerances,
    canonical_asd,
    classify,
    compute_invariants,
    decide_lu_equivalence,
    is_asd_unique,
    lbps_count,
    reconstruct,
    rho_iota_transform,
    sample_subfamily,
    tolerance_scope,
)
from ghzlu.qstate import conjugate

SQ2 = math.sqrt(2)
GHZ = ASDState((1 / SQ2, 0, 0, 0, 1 / SQ2))
PHI = ASDState((0.5, 0.0, 0.5, 0.5, 0.5), 0.0)
PHI_PRIME = ASDState((SQ2 / 2, SQ2 / 4, SQ2 / 4, SQ2 / 4, SQ2 / 4), math.pi)
C4_EXAMPLE = ASDState.normalized((1, 1, 1, 1, 1), math.pi / 2)
seeds = st.integers(min_value=0, max_value=2**32 - 1)


class TestFamilyLabel:
    @pytest.mark.parametrize("text,expected", [
        ("P1'", ("P1", "prime")),
        ("C4''", ("C4", "double_prime")),
        ("R2″", ("R2", "double_prime")),
        ("c3′", ("C3", "prime")),
        ("R1_double_prime", ("R1", "double_prime")),
    ])
    def test_parse(self, text, expected):
        assert FamilyLabel.parse(text) == FamilyLabel(*expected)

    @pytest.mark.parametrize("text", ["P5'", "C4", "", "R1'''x", "prime"])
    def test_parse_rejects(self, text):
        with pytest.raises(ValueError):
            FamilyLabel.parse(text)

    def test_str_round_trip(self):
        assert len(ALL_LABELS) == 20
        for lab in ALL_LABELS:
            assert FamilyLabel.parse(str(lab)) == lab


class TestClassifyExamples:
    def test_ghz(self):
        rep = classify(GHZ)
        assert str(rep.label) == "P4'" and rep.unique_asd and rep.lbps == 2

    def test_phi(self):
        assert classify(PHI).label == FamilyLabel("R2", "double_prime")

    def test_r2_prime_example(self):
        a = ASDState((1 / SQ2, 0, 1 / (2 * SQ2), 1 / (2 * SQ2), 0.5))
        rep = classify(a)
        assert rep.label == FamilyLabel("R2", "prime")
        assert rep.invariants.gamma == pytest.approx(-1 / 8, abs=1e-15)
        assert abs(rep.invariants.rho - 1) <= 1e-12

    def test_p1_prime_example(self):
        a = ASDState((1 / SQ2, *([1 / (2 * SQ2)] * 4)))
        assert classify(a).label == FamilyLabel("P1", "prime")

    def test_c4_example(self):
        rep = classify(C4_EXAMPLE)
        assert rep.label == FamilyLabel("C4", "double_prime")
        assert abs(rep.invariants.rho - math.sqrt(3) / 2) <= 1e-12

    def test_non_ghz(self):
        with pytest.raises(NotGHZClassError):
            classify(ASDState.normalized((1, 1, 1, 1, 0)))

    def test_margins_cover_every_test(self):
        rep = classify(PHI_PRIME)
        assert {"abs_gamma", "lambda1", "lambda2", "lambda3", "phase_to_real", "abs_iota", "abs_rho_minus_1"} <= set(rep.margins)
        assert rep.near_boundary() == []

    def test_near_boundary_flags_fragile_phase(self):
        a = ASDState.normalized((1, 1, 1, 1, 1), math.pi + 3e-9)
        assert "phase_to_real" in classify(a).near_boundary()


def test_totality_fuzz():
    rng = np.random.default_rng(99)
    for _ in range(100_000):
        lam = rng.uniform(0, 1, 5)
        # exercise the zero patterns as well as generic points
        lam[rng.uniform(size=5) < 0.25] = 0.0
        lam[0] = max(lam[0], 0.05)
        lam[4] = max(lam[4], 0.05)
        phi = rng.choice([0.0, math.pi, rng.uniform(0, 2 * math.pi)])
        rep = classify(ASDState.normalized(lam, phi))
        assert rep.label in ALL_LABELS


@given(seeds)
def test_conclusion_1_real_five_coefficient_states(seed):
    rng = np.random.default_rng(seed)
    a = ASDState.normalized(rng.uniform(0.05, 1, 5), math.pi * rng.integers(0, 2))
    inv = compute_invariants(a)
    if abs(inv.gamma) > 1e-6:
        assert not (abs(inv.rho - 1) <= 1e-9 and abs(inv.iota) <= 1e-9)


def test_conclusion_1_on_prime_r1_samples():
    for seed in range(200):
        inv = compute_invariants(sample_subfamily("R1'", seed))
        assert abs(inv.rho - 1) <= 1e-9 and abs(inv.iota) > 1e-9


def test_conclusion_2_three_conditions_coincide():
    rng = np.random.default_rng(5)
    for k in range(500):
        l2, l3, l4 = rng.uniform(0.1, 1, 3)
        l0 = 1 / SQ2 if k % 2 == 0 else rng.uniform(0.1, 0.95)
        s = math.sqrt((1 - l0 * l0) / (l2 * l2 + l3 * l3 + l4 * l4))
        a = ASDState((l0, 0.0, l2 * s, l3 * s, l4 * s))
        inv = compute_invariants(a)
        conds = (abs(inv.iota) <= 1e-9, abs(inv.rho - 1) <= 1e-9, abs(l0 - 1 / SQ2) <= 1e-9)
        assert len(set(conds)) == 1, (a, conds)


class TestUniqueness:
    def test_examples(self):
        assert is_asd_unique(GHZ) == (True, "strict")
        assert is_asd_unique(PHI) == (False, "strict")
        for phi in (0.0, 1.0, math.pi, 4.0):
            assert is_asd_unique(ASDState((0.5, 0.5, 0, 0, 1 / SQ2), phi)) == (True, "up_to_phase")
        assert is_asd_unique(sample_subfamily("C4'", 0)) == (True, "up_to_conjugate")

    def test_closed_forms_agree_on_samples(self):
        for lab in ALL_LABELS:
            for seed in range(30):
                unique, _ = is_asd_unique(sample_subfamily(lab, seed))
                assert unique == lab.prime

    def test_r2_prime_has_lambda0_one_over_sqrt2(self):
        for seed in range(50):
            a = sample_subfamily("R2'", seed)
            assert a.lam[1] == 0.0 and abs(a.lam[0] - 1 / SQ2) <= 1e-12

    def test_disagreement_raises(self):
        # loosening the rho test makes a near-prime R1 state "unique" while its closed form fails
        a = sample_subfamily("R1'", 1)
        lam = list(a.lam)
        lam[0] *= 1 + 1e-5
        b = ASDState.normalized(lam, a.phi)
        assert abs(compute_invariants(b).rho - 1) > 1e-9
        with tolerance_scope(Tolerances(rho=1e-3)):
            with pytest.raises(ConsistencyError):
                is_asd_unique(b)


class TestCanonical:
    def test_examples(self):
        assert np.max(np.abs(canonical_asd(PHI_PRIME).coefficients - PHI.coefficients)) <= 1e-12
        assert canonical_asd(PHI) == PHI

    def test_c4_prime_conjugate(self):
        a = next(x for x in (sample_subfamily("C4'", s) for s in range(100)) if x.phi > math.pi)
        c = canonical_asd(a)
        assert c.phi <= math.pi and abs(c.phi - (2 * math.pi - a.phi)) <= 1e-12
        # the chosen form is the ASD of the conjugated amplitudes
        assert np.max(np.abs(reconstruct(c).amp - conjugate(reconstruct(a)).amp)) <= 1e-15

    def test_c1_to_c3_phase_zero(self):
        for lab in ("C1''", "C2'", "C3''"):
            assert canonical_asd(sample_subfamily(lab, 3)).phi == 0.0

    def test_idempotent_and_class_invariant(self):
        for lab in ALL_LABELS:
            for seed in range(10):
                a = sample_subfamily(lab, seed)
                c = canonical_asd(a)
                assert canonical_asd(c) == c
                assert compute_invariants(c).rho <= 1 + 1e-9
                c2 = canonical_asd(rho_iota_transform(a))
                assert np.max(np.abs(np.abs(c2.coefficients) - np.abs(c.coefficients))) <= 1e-9


class TestDecide:
    def test_hadamard_pair(self):
        d = decide_lu_equivalence(PHI, PHI_PRIME)
        assert d.equivalent and "partner" in d.reason and d.witness_via_oracle

    def test_reflexive_with_identity_witness(self):
        d = decide_lu_equivalence(GHZ, GHZ)
        assert d and all(np.array_equal(u, np.eye(2)) for u in d.witness)

    def test_c4_double_prime_nclu(self):
        d = decide_lu_equivalence(C4_EXAMPLE, C4_EXAMPLE.conjugate())
        assert not d and "NCLU" in d.reason and "C4''" in d.reason

    def test_p4_rho_mismatch(self):
        d = decide_lu_equivalence(GHZ, ASDState((math.sqrt(0.6), 0, 0, 0, math.sqrt(0.4))))
        assert not d and "ln rho" in d.reason
        assert compute_invariants(ASDState((math.sqrt(0.6), 0, 0, 0, math.sqrt(0.4)))).rho == pytest.approx(math.sqrt(1.5), abs=1e-12)

    def test_family_mismatch(self):
        a = sample_subfamily("C1''", 0)
        # same |ln rho| but a different zero pattern
        b = ASDState.normalized((a.lam[0], a.lam[1], a.lam[3], a.lam[2], a.lam[4]), a.phi)
        d = decide_lu_equivalence(a, b)
        assert not d and "family" in d.reason

    def test_phase_variants_of_c1_to_c3(self):
        from ghzlu import apply_local_unitaries

        for lab in ("C1'", "C2''", "C3'"):
            a = sample_subfamily(lab, 7)
            b = a.with_phase(a.phi + 1.234)
            d = decide_lu_equivalence(a, b)
            assert d.equivalent
            moved = apply_local_unitaries(reconstruct(a), d.witness)
            assert np.max(np.abs(moved.amp - reconstruct(b).amp)) <= 1e-10

    @given(seeds, seeds)
    def test_necessary_conditions_sound(self, s1, s2):
        rng1, rng2 = np.random.default_rng(s1), np.random.default_rng(s2)
        from ghzlu import random_ghz_asd

        a = random_ghz_asd(rng1)
        b = rho_iota_transform(a) if rng2.uniform() < 0.5 else random_ghz_asd(rng2)
        d = decide_lu_equivalence(a, b)
        if d:
            ra, rb = classify(a), classify(b)
            assert abs(ra.invariants.ln_rho_abs - rb.invariants.ln_rho_abs) <= 1e-9
            assert ra.label.family == rb.label.family

    def test_class_cardinality(self):
        for lab in ALL_LABELS:
            for seed in range(20):
                a = sample_subfamily(lab, seed)
                pool = [sample_subfamily(lab, 1000 + seed), rho_iota_transform(a), a.conjugate(), a]
                for b in pool:
                    if not decide_lu_equivalence(a, b):
                        continue
                    same = np.max(np.abs(a.coefficients - b.coefficients)) <= 1e-9
                    if lab.family[0] in "PR" and lab.prime:
                        assert same
                    if lab == FamilyLabel("C4", "prime"):
                        assert same or np.max(np.abs(a.conjugate().coefficients - b.coefficients)) <= 1e-9

    def test_lbps_invariance_except_r2_double_prime(self):
        for lab in ALL_LABELS:
            for seed in range(20):
                a = sample_subfamily(lab, seed)
                b = rho_iota_transform(a)
                if lab == FamilyLabel("R2", "double_prime"):
                    assert {lbps_count(a), lbps_count(b)} == {4, 5}
                else:
                    assert lbps_count(a) == lbps_count(b)

    def test_tolerance_scope_changes_decisions(self):
        a = ASDState.normalized((1, 1, 1, 1, 1), 1e-7)
        assert classify(a).label.family == "C4"
        with tolerance_scope(dataclasses.replace(Tolerances(), phase=1e-6)):
            assert ASDState.normalized((1, 1, 1, 1, 1), 1e-7).phi == 0.0
