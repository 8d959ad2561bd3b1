import math

import numpy as np
import pytest

from psiaut import catalogue, moebius
from psiaut.decision import check_conjugation_transfer, decide, decide_derivative_algebra
from psiaut.moebius import classify, compose, identity, inverse, parabolic, rotation, tau
from psiaut.numerics import ContourSpec, count_zeros_composed
from psiaut.psi_model import REASONS, make_spec

from conftest import random_phi, random_spec


def test_rotations_accepted_for_power_of_z():
    s = make_spec(interior=[(0, 4)])
    for th in np.linspace(0, 2 * math.pi, 13):
        v = decide(s, rotation(th))
        assert v.accepted
        assert v.certificate_lines() == ["0→0"]


def test_swap_rejected_when_multiplicities_differ():
    v = decide(make_spec(boundary=[(1, 2), (-1, 3)]), tau(0.5))
    assert not v.accepted and v.reason == "multiplicity-mismatch"


def test_parabolic_accepted_for_single_atom():
    assert decide(make_spec(atoms=[(1, 0.7)]), parabolic(1, 3)).accepted


def test_two_unequal_atoms_swap():
    v = decide(make_spec(atoms=[(1, 1.0), (-1, 3.0)]), tau(0.5))
    assert v.accepted and v.derived_rule
    assert sorted(v.permutation["atoms"], key=lambda p: p[0].real) == [(-1, 1), (1, -1)]


def test_unequal_zero_multiplicities_identity_only():
    b = -0.2 + 0.4j
    s = make_spec(interior=[(0.5, 1), (b, 2)])
    assert decide(s, identity()).accepted
    rng = np.random.default_rng(5)
    for _ in range(50):
        assert not decide(s, random_phi(rng)).accepted
    assert not decide(s, moebius.solve_interior_pair(0.5, b, b, 0.5)).accepted


def test_not_an_automorphism():
    v = decide(make_spec(interior=[(0, 1)]), lambda z: z * z)
    assert not v.accepted and v.reason == "not-an-automorphism"


def test_reasons_are_from_the_fixed_list(rng):
    for _ in range(200):
        v = decide(random_spec(rng), random_phi(rng))
        assert v.accepted or v.reason in REASONS
        assert (v.permutation is not None) == v.accepted


def test_rejection_reason_for_unmatched_zero():
    assert decide(make_spec(interior=[(0, 1)]), tau(0.5)).reason == "zero-set-not-permuted"


def test_atom_weight_failure_for_hyperbolic():
    for lam in (0.5, 2.0):
        v = decide(make_spec(atoms=[(1, 1.0)]), catalogue.hyperbolic_fixing_one(lam))
        assert v.reason == "atom-weight-equation-failed"


def test_mixed_site_rules_are_independent():
    s = make_spec(boundary=[(1, 1)], atoms=[(1, 2.0)])
    assert decide(s, parabolic(1, 1.5)).accepted
    # fixes 1 but with derivative 2 there: root rule holds, atom rule fails
    v = decide(s, catalogue.hyperbolic_fixing_one(2.0))
    assert not v.accepted and v.reason == "atom-weight-equation-failed" and v.derived_rule


def test_identity_always_accepted(rng):
    for _ in range(100):
        assert decide(random_spec(rng), identity()).accepted


def test_derivative_algebra_examples():
    assert decide_derivative_algebra(0, 3, rotation(0.3))
    assert not decide_derivative_algebra(0, 1, tau(0.5))
    t = tau(0.5)
    assert decide_derivative_algebra(0.5, 2, compose(t, compose(rotation(math.pi), t)))
    with pytest.raises(ValueError):
        decide_derivative_algebra(1.2, 1, identity())


def test_conjugation_transfer_examples():
    i_rot = moebius.multiply_by(1j)
    for case in catalogue.cases():
        if case.expected:
            assert check_conjugation_transfer(case.spec, case.phi, i_rot)
    assert check_conjugation_transfer(make_spec(interior=[(0.2, 1)]), tau(0.2), identity())
    s = make_spec(boundary=[(1, 1)])
    assert not decide(s, rotation(math.pi)).accepted
    assert check_conjugation_transfer(s, rotation(math.pi), i_rot)


def test_catalogue_decisions():
    for case in catalogue.cases():
        v = decide(case.spec, case.phi)
        assert v.accepted == case.expected, case.label
        if case.reason:
            assert v.reason == case.reason, case.label


def _accepted_pairs(rng, n):
    from psiaut.groups import enumerate_group

    out = []
    while len(out) < n:
        s = random_spec(rng, max_per_category=2)
        d = enumerate_group(s)
        out.append((s, d.random_member(rng), d.random_member(rng)))
    return out


def test_acceptance_closed_under_group_operations(rng):
    for s, f, g in _accepted_pairs(rng, 60):
        assert decide(s, f).accepted and decide(s, g).accepted
        assert decide(s, compose(f, g)).accepted
        assert decide(s, inverse(f)).accepted


def test_pure_blaschke_accepted_maps_are_elliptic(rng):
    for s, f, _ in _accepted_pairs(rng, 80):
        if s.interior and not s.boundary and not s.atoms:
            assert classify(f).kind in ("identity", "elliptic")


def test_multiplicity_invariance_for_accepted(rng):
    for s, f, _ in _accepted_pairs(rng, 40):
        for q in s.interior:
            w = q.a
            pre = [inverse(f)(p.a) for p in s.interior]
            r = min([0.05, (1 - abs(w)) / 2] + [abs(p - w) / 3 for p in pre if abs(p - w) > 1e-9])
            target = next(p for p in s.interior if abs(p.a - f(w)) < 1e-9)
            assert count_zeros_composed(s, f, ContourSpec(w, r)) == target.mult == q.mult


def test_witness_attached():
    v = decide(make_spec(atoms=[(1, 1.0), (-1, 3.0)]), tau(0.5), witness=True)
    sup, inf = v.numeric_witness
    assert sup == pytest.approx(1, abs=1e-6) and inf == pytest.approx(1, abs=1e-6)


def test_witness_disagreement_is_logged_not_raised(caplog):
    # a 10^-7 weight error is below the oracle's resolution, so the oracle still says invertible
    s = make_spec(atoms=[(1, 1.0), (-1, 3.0 * (1 + 1e-7))])
    v = decide(s, tau(0.5), witness=True)
    assert not v.accepted
    assert "disagrees" in caplog.text
