"""Catalogue of closed-form instances used by ``psiaut selftest`` and the tests.

Each entry pairs a psi with an automorphism and the decision it must get,
grouped under a short label describing the statement being reproduced.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import moebius
from .decision import decide, decide_derivative_algebra
from .groups import enumerate_group
from .moebius import DiscAutomorphism, compose, rotation, tau
from .psi_model import PsiSpec, make_spec


@dataclass(frozen=True)
class Case:
    label: str
    spec: PsiSpec
    phi: DiscAutomorphism
    expected: bool
    reason: str = None


def hyperbolic_fixing_one(lam: float) -> DiscAutomorphism:
    """(z + t)/(1 + t z) with t chosen so the derivative at 1 equals lam."""
    t = (1 - lam) / (1 + lam)
    return DiscAutomorphism(-1.0, -t)


A, B = 0.3 + 0.1j, -0.2 + 0.4j

SPECS = {
    "zero_at_origin": make_spec(interior=[(0, 3)]),
    "zero_at_point": make_spec(interior=[(0.5, 2)]),
    "boundary_root": make_spec(boundary=[(1, 2)]),
    "one_plus_z": make_spec(boundary=[(-1, 1)]),
    "boundary_pair_equal": make_spec(boundary=[(1, 2), (-1, 2)]),
    "boundary_pair_unequal": make_spec(boundary=[(1, 1), (-1, 2)]),
    "single_atom": make_spec(atoms=[(1, 1.5)]),
    "two_atoms_equal": make_spec(atoms=[(1, 1), (-1, 1)]),
    "two_atoms_unequal": make_spec(atoms=[(1, 1), (-1, 3)]),
    "two_zeros_equal": make_spec(interior=[(A, 2), (B, 2)]),
    "two_zeros_unequal": make_spec(interior=[(A, 1), (B, 2)]),
}


def _swap_two_zeros() -> DiscAutomorphism:
    c = tau(A)(B)
    return compose(tau(A), compose(tau(c), tau(A)))


def cases() -> list:
    S = SPECS
    out = []
    for th in (0.0, 0.7, math.pi / 2, 2.5, math.pi):
        out.append(Case("origin zero: rotations accepted", S["zero_at_origin"], rotation(th), True))
    out.append(Case("origin zero: rotations accepted", S["zero_at_origin"], tau(0.5), False, "zero-set-not-permuted"))
    for th in (0.4, 2.0):
        ta = tau(0.5)
        out.append(Case("interior zero: tau-conjugated rotations", S["zero_at_point"],
                        compose(ta, compose(rotation(th), ta)), True))
    out.append(Case("interior zero: tau-conjugated rotations", S["zero_at_point"], rotation(1.0), False))
    for c in (0.0, 0.5, -0.3 + 0.6j):
        base = DiscAutomorphism(-(c - 1).conjugate() / (c - 1), c)
        out.append(Case("boundary root: stabilizer of the root", S["boundary_root"], base, True))
    out.append(Case("boundary root: stabilizer of the root", S["boundary_root"], rotation(math.pi), False,
                    "boundary-root-mismatch"))
    out.append(Case("1 + z: tau_{1/2} is not an automorphism", S["one_plus_z"], tau(0.5), False,
                    "boundary-root-mismatch"))
    for a in (-0.6, 0.0, 0.45):
        out.append(Case("(z^2 - 1)^m: -tau_a and tau_a", S["boundary_pair_equal"], DiscAutomorphism(-1.0, a), True))
        out.append(Case("(z^2 - 1)^m: -tau_a and tau_a", S["boundary_pair_equal"], tau(a), True))
        out.append(Case("(z-1)^m (z+1)^n, m != n: only -tau_a", S["boundary_pair_unequal"],
                        DiscAutomorphism(-1.0, a), True))
        out.append(Case("(z-1)^m (z+1)^n, m != n: only -tau_a", S["boundary_pair_unequal"], tau(a), False,
                        "multiplicity-mismatch"))
    for zeta in range(-5, 6):
        out.append(Case("single atom: parabolic maps fixing the atom", S["single_atom"],
                        moebius.parabolic(1, zeta), True))
    for lam in (0.5, 2.0):
        out.append(Case("single atom: parabolic maps fixing the atom", S["single_atom"],
                        hyperbolic_fixing_one(lam), False, "atom-weight-equation-failed"))
    out.append(Case("two equal antipodal atoms: only +-z", S["two_atoms_equal"], moebius.identity(), True))
    out.append(Case("two equal antipodal atoms: only +-z", S["two_atoms_equal"], rotation(math.pi), True))
    out.append(Case("two equal antipodal atoms: only +-z", S["two_atoms_equal"], rotation(math.pi / 2), False))
    out.append(Case("two equal antipodal atoms: only +-z", S["two_atoms_equal"], tau(0.3), False))
    out.append(Case("two unequal atoms: weight-matched swap", S["two_atoms_unequal"], tau(0.5), True))
    out.append(Case("two unequal atoms: weight-matched swap", S["two_atoms_unequal"], rotation(math.pi), False,
                    "atom-weight-equation-failed"))
    out.append(Case("two zeros, equal multiplicity: identity and one swap", S["two_zeros_equal"],
                    _swap_two_zeros(), True))
    out.append(Case("two zeros, equal multiplicity: identity and one swap", S["two_zeros_equal"], tau(A), False))
    out.append(Case("two zeros, unequal multiplicity: identity only", S["two_zeros_unequal"], moebius.identity(), True))
    out.append(Case("two zeros, unequal multiplicity: identity only", S["two_zeros_unequal"], _swap_two_zeros(), False,
                    "multiplicity-mismatch"))
    return out


def group_checks() -> list:
    """(label, spec, predicate on the GroupDescriptor)."""
    S = SPECS

    def fam_names(desc):
        return sorted(f.name for f in desc.families)

    def elements_match(desc, expected):
        return (len(desc.elements) == len(expected)
                and all(min(moebius.distance(g, e) for g in desc.elements) < 1e-9 for e in expected))

    return [
        ("origin zero: rotations accepted", S["zero_at_origin"],
         lambda d: d.kind == "family_union" and fam_names(d) == ["rotation_conjugate"] and d.families[0].points[0] == 0),
        ("boundary root: stabilizer of the root", S["boundary_root"],
         lambda d: fam_names(d) == ["boundary_stabilizer"]),
        ("(z^2 - 1)^m: -tau_a and tau_a", S["boundary_pair_equal"],
         lambda d: fam_names(d) == ["boundary_pair_fixing", "boundary_pair_swapping"]),
        ("(z-1)^m (z+1)^n, m != n: only -tau_a", S["boundary_pair_unequal"],
         lambda d: fam_names(d) == ["boundary_pair_fixing"]),
        ("single atom: parabolic maps fixing the atom", S["single_atom"],
         lambda d: fam_names(d) == ["parabolic_at"]),
        ("two equal antipodal atoms: only +-z", S["two_atoms_equal"],
         lambda d: d.kind == "finite" and elements_match(d, [moebius.identity(), rotation(math.pi)])),
        ("two unequal atoms: weight-matched swap", S["two_atoms_unequal"],
         lambda d: d.kind == "finite" and elements_match(d, [moebius.identity(), tau(0.5)])),
        ("two zeros, equal multiplicity: identity and one swap", S["two_zeros_equal"],
         lambda d: d.kind == "finite" and elements_match(d, [moebius.identity(), _swap_two_zeros()])),
        ("two zeros, unequal multiplicity: identity only", S["two_zeros_unequal"],
         lambda d: d.kind == "identity_only"),
    ]


def derivative_algebra_cases() -> list:
    ta = tau(0.5)
    return [
        (0, 2, rotation(1.1), True),
        (0, 1, tau(0.5), False),
        (0.5, 3, compose(ta, compose(rotation(math.pi), ta)), True),
    ]


def run_selftest() -> list:
    """Run every catalogued check; returns [(label, passed, n_checks)] in first-seen order."""
    results = {}

    def record(label, ok):
        passed, n = results.get(label, (True, 0))
        results[label] = (passed and ok, n + 1)

    for case in cases():
        v = decide(case.spec, case.phi)
        ok = v.accepted == case.expected and (case.reason is None or v.reason == case.reason)
        record(case.label, ok)
    for label, spec, pred in group_checks():
        record(label, bool(pred(enumerate_group(spec))))
    for a, n, phi, expected in derivative_algebra_cases():
        record("derivative-vanishing algebras: conjugated rotations", decide_derivative_algebra(a, n, phi) == expected)
    return [(label, ok, n) for label, (ok, n) in results.items()]
