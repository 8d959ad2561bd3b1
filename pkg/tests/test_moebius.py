import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from psiaut import moebius
from psiaut.errors import DegenerateInputError, ModulusError, PoleProximityError
from psiaut.moebius import (DiscAutomorphism, classify, compose, derivative, evaluate, identity, inverse,
                            parabolic, pseudo_hyperbolic, rotation, solve_boundary_triple,
                            solve_interior_boundary, solve_interior_pair, tau)

from conftest import automorphisms, boundary_points, disc_points

PROBES = np.array([0, 0.3 + 0.4j, -0.7j, 0.9, -0.5 - 0.5j, 1, 1j, -1])


def same_map(f, g, tol=1e-12):
    return np.max(np.abs(evaluate(f, PROBES) - evaluate(g, PROBES))) <= tol


# -- examples ----------------------------------------------------------------

def test_eval_identity():
    assert identity()(0.3 + 0.4j) == pytest.approx(0.3 + 0.4j, abs=1e-15)


def test_eval_tau_swaps_zero_and_center():
    t = tau(0.5)
    assert t(0) == pytest.approx(0.5)
    assert abs(t(0.5)) < 1e-15


def test_eval_tau_swaps_plus_minus_one():
    t = tau(0.5)
    assert t(1) == pytest.approx(-1)
    assert t(-1) == pytest.approx(1)


def test_eval_arrays():
    z = np.linspace(-0.9, 0.9, 7) + 0.1j
    assert np.allclose(evaluate(tau(0.5), z), [tau(0.5)(complex(x)) for x in z])


def test_eval_near_pole_raises():
    phi = tau(0.5)
    with pytest.raises(PoleProximityError):
        phi(2.0)


def test_compose_tau_involution():
    assert compose(tau(0.5), tau(0.5)).is_identity()


def test_compose_identity_left():
    g = DiscAutomorphism(cmath.exp(0.4j), 0.2 - 0.3j)
    assert moebius.distance(compose(identity(), g), g) < 1e-14


def test_compose_rotation_after_tau():
    assert compose(rotation(math.pi), tau(0.5))(0) == pytest.approx(-0.5)


def test_inverse_examples():
    assert inverse(identity()).is_identity()
    assert moebius.distance(inverse(tau(0.3 + 0.2j)), tau(0.3 + 0.2j)) < 1e-14
    assert moebius.distance(inverse(rotation(0.7)), rotation(-0.7)) < 1e-14


def test_derivative_examples():
    assert derivative(identity(), 0.2 + 0.1j) == pytest.approx(1)
    assert abs(derivative(tau(0.5), 1)) == pytest.approx(3)
    for zeta in (-2, 0, 3):
        assert derivative(parabolic(1, zeta), 1) == pytest.approx(1, abs=1e-12)


def test_classify_rotation():
    c = classify(rotation(math.pi / 3))
    assert c.kind == "elliptic"
    assert abs(c.fixed_points[0]) < 1e-15
    assert c.multiplier == pytest.approx(math.pi / 3)


def test_classify_parabolic():
    c = classify(parabolic(1, 2))
    assert c.kind == "parabolic"
    assert c.fixed_points[0] == pytest.approx(1)
    assert c.multiplier == 1.0


def test_classify_tau_half():
    c = classify(tau(0.5))
    assert c.kind == "elliptic"
    assert c.fixed_points[0] == pytest.approx(2 - math.sqrt(3), abs=1e-14)


def test_classify_identity_and_hyperbolic():
    assert classify(identity()).kind == "identity"
    h = DiscAutomorphism(-1.0, -1 / 3)  # (z + 1/3)/(1 + z/3), fixes +-1
    c = classify(h)
    assert c.kind == "hyperbolic"
    # attracting point first: derivative at 1 is 1/2, at -1 it is 2
    assert c.fixed_points[0] == pytest.approx(1)
    assert c.fixed_points[1] == pytest.approx(-1)
    assert c.multiplier == pytest.approx(0.5)


def test_fixed_points_are_fixed():
    rng = np.random.default_rng(3)
    for _ in range(200):
        phi = DiscAutomorphism(cmath.exp(2j * math.pi * rng.uniform()), 0.9 * rng.uniform() * cmath.exp(2j * math.pi * rng.uniform()))
        for p in classify(phi).fixed_points:
            assert abs(phi(p) - p) < 1e-9


def test_pseudo_hyperbolic_examples():
    assert pseudo_hyperbolic(0, 0.3 - 0.4j) == pytest.approx(0.5)
    assert pseudo_hyperbolic(0.2j, 0.2j) == 0
    assert pseudo_hyperbolic(0.5, -0.5) == pytest.approx(0.8)
    with pytest.raises(ModulusError):
        pseudo_hyperbolic(1.0, 0)


def test_solve_interior_pair_examples():
    assert solve_interior_pair(0, 0, 0.5, 0.5).is_identity()
    assert moebius.distance(solve_interior_pair(0, 0.5, 0.5, 0), tau(0.5)) < 1e-12
    assert solve_interior_pair(0, 0, 0.5, 1 / 3) is None
    with pytest.raises(DegenerateInputError):
        solve_interior_pair(0.2, 0.1, 0.2, 0.3)


def test_solve_interior_boundary_examples():
    assert solve_interior_boundary(0, 0, 1, 1).is_identity()
    assert moebius.distance(solve_interior_boundary(0, 0, 1, 1j), rotation(math.pi / 2)) < 1e-12
    assert solve_interior_boundary(0.5, 0.5, 1, 1).is_identity()


def test_solve_boundary_triple_examples():
    assert solve_boundary_triple((1, 1j, -1), (1, 1j, -1)).is_identity()
    assert moebius.distance(solve_boundary_triple((1, -1, 1j), (-1, 1, -1j)), rotation(math.pi)) < 1e-12
    h = DiscAutomorphism(-1.0, -0.4)
    q = h(1j)
    q = q * (1 + 1e-3)  # radial perturbation off the circle
    assert solve_boundary_triple((1, -1, 1j), (1, -1, q)) is None


def test_solve_boundary_triple_orientation_reversed():
    # 1 -> 1, i -> -i, -1 -> -1 would be complex conjugation
    assert solve_boundary_triple((1, 1j, -1), (1, -1j, -1)) is None


def test_constructor_validation():
    with pytest.raises(ModulusError):
        DiscAutomorphism(1.0, 1.0)
    with pytest.raises(ModulusError):
        DiscAutomorphism(1.5, 0)
    phi = DiscAutomorphism(1 + 1e-11, 0.1)
    assert abs(abs(phi.eta) - 1) <= 1e-15


def test_from_coefficients_rejects_non_automorphism():
    # z -> 2z is not an automorphism
    assert moebius.from_coefficients(2, 0, 0, 1) is None


# -- properties --------------------------------------------------------------

@settings(max_examples=200, deadline=None)
@given(automorphisms(), automorphisms(), automorphisms())
def test_compose_associative(f, g, h):
    assert same_map(compose(f, compose(g, h)), compose(compose(f, g), h), tol=1e-11)


@settings(max_examples=200, deadline=None)
@given(automorphisms())
def test_inverse_two_sided(f):
    assert compose(f, inverse(f)).is_identity()
    assert compose(inverse(f), f).is_identity()


@settings(max_examples=200, deadline=None)
@given(automorphisms(), automorphisms(), disc_points())
def test_compose_pointwise(f, g, z):
    assert abs(compose(f, g)(z) - f(g(z))) <= 1e-12 * max(1.0, 1 / (1 - abs(g(z)) + 1e-3))


@settings(max_examples=200, deadline=None)
@given(automorphisms(), disc_points(), disc_points())
def test_isometry(phi, z, w):
    assert abs(pseudo_hyperbolic(phi(z), phi(w)) - pseudo_hyperbolic(z, w)) <= 1e-11


@settings(max_examples=200, deadline=None)
@given(automorphisms(), boundary_points())
def test_boundary_preserved(phi, w):
    assert abs(abs(phi(w)) - 1) <= 1e-11
    assert abs(derivative(phi, w)) == pytest.approx(moebius.boundary_derivative(phi, w), rel=1e-12)


@settings(max_examples=100, deadline=None)
@given(automorphisms(rmax=0.9), st.floats(0, 2 * math.pi))
def test_classify_kind_conjugation_invariant(phi, theta):
    r = rotation(theta)
    assert classify(moebius.conjugate_by(phi, r)).kind == classify(phi).kind


@settings(max_examples=200, deadline=None)
@given(disc_points(), disc_points(), automorphisms())
def test_solve_interior_pair_reproduces(a1, a2, phi):
    if abs(a1 - a2) < 1e-3:
        return
    sol = solve_interior_pair(a1, phi(a1), a2, phi(a2))
    assert sol is not None
    assert abs(sol(a1) - phi(a1)) <= 1e-10 and abs(sol(a2) - phi(a2)) <= 1e-10
    assert moebius.distance(sol, phi) < 1e-8


def test_parabolic_iterates_reach_fixed_point():
    # parabolic orbits approach the fixed point like 2 / (n |zeta|)
    for zeta in (-20.0, 25.0):
        phi = parabolic(1j, zeta)
        z = 0j
        for _ in range(200):
            z = phi(z)
        assert abs(z - 1j) < 1e-3
    phi = parabolic(1, 2.0)
    z = 0j
    for _ in range(2000):
        z = phi(z)
    assert abs(z - 1) < 1e-3
