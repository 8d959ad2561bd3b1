"""Shared random draws for the property and acceptance suites."""

import cmath
import math

import numpy as np
import pytest
from hypothesis import strategies as st

from psiaut.moebius import DiscAutomorphism
from psiaut.psi_model import make_spec

A_MAX = 0.95
MIN_SEPARATION = 0.05


def random_point(rng, rmax=A_MAX):
    return math.sqrt(rng.uniform(0, rmax**2)) * cmath.exp(2j * math.pi * rng.uniform())


def random_boundary(rng):
    return cmath.exp(2j * math.pi * rng.uniform())


def random_phi(rng, rmax=0.95):
    """eta uniform on the circle, a uniform (by area) in |a| <= rmax."""
    return DiscAutomorphism(random_boundary(rng), random_point(rng, rmax))


def _separated(rng, draw, k, taken):
    out = []
    while len(out) < k:
        p = draw(rng)
        if all(abs(p - q) >= MIN_SEPARATION for q in taken + out):
            out.append(p)
    return out


def random_spec(rng, max_per_category=3):
    """Up to max_per_category data per category, separated by MIN_SEPARATION."""
    ni, nb, na = rng.integers(0, max_per_category + 1, size=3)
    zeros = _separated(rng, random_point, ni, [])
    roots = _separated(rng, lambda r: random_boundary(r), nb, [])
    atoms = _separated(rng, lambda r: random_boundary(r), na, roots)
    return make_spec(
        interior=[(a, int(rng.integers(1, 4))) for a in zeros],
        boundary=[(w, int(rng.integers(1, 4))) for w in roots],
        atoms=[(w, float(rng.uniform(0.2, 3.0))) for w in atoms],
    )


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


# hypothesis strategies

unit = st.floats(0.0, 2 * math.pi, allow_nan=False)
radius = st.floats(0.0, 0.95, allow_nan=False)


@st.composite
def disc_points(draw, rmax=0.95):
    return draw(st.floats(0.0, rmax)) * cmath.exp(1j * draw(unit))


@st.composite
def boundary_points(draw):
    return cmath.exp(1j * draw(unit))


@st.composite
def automorphisms(draw, rmax=0.95):
    return DiscAutomorphism(cmath.exp(1j * draw(unit)), draw(disc_points(rmax)))


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[n])
