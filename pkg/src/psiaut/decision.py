"""Symbolic decision: is C_phi an algebra automorphism of psi * H-infinity?

C_phi is an automorphism exactly when psi o phi = psi * g with g invertible.
For the finite data model this splits into three independent rules:

* interior zeros are permuted by phi with multiplicities preserved;
* boundary roots are permuted by phi with multiplicities preserved;
* atoms are permuted by phi, and an atom p of weight alpha_p landing on
  w = phi(p) must satisfy alpha_w = alpha_p * |phi'(p)|.

The atom rule comes from the Poisson-kernel identity
P_{phi(p)}(phi(z)) = P_p(z) / |phi'(p)|, which makes the singular factors of
psi o phi and psi differ by a unimodular constant exactly when the weights
match.
"""

from __future__ import annotations

import logging

from . import moebius
from .moebius import MATCH_TOL, DiscAutomorphism
from .psi_model import PsiSpec, Verdict, conjugate_spec, uses_derived_rule

log = logging.getLogger(__name__)

WEIGHT_RTOL = 1e-9


def _match(points, target, tol):
    return [k for k, p in enumerate(points) if abs(p - target) <= tol]


def decide(spec: PsiSpec, phi, tol: float = MATCH_TOL, witness: bool = False) -> Verdict:
    derived = uses_derived_rule(spec)

    def reject(reason, detail=""):
        v = Verdict(False, reason=reason, derived_rule=derived, detail=detail)
        if witness and isinstance(phi, DiscAutomorphism):
            attach_witness(spec, phi, v)
        return v

    if not isinstance(phi, DiscAutomorphism):
        return reject("not-an-automorphism", f"{phi!r} is not a disc automorphism")

    perm = {"interior": [], "boundary": [], "atoms": []}

    locs = [q.a for q in spec.interior]
    for q in spec.interior:
        img = phi(q.a)
        hits = _match(locs, img, tol)
        if len(hits) != 1:
            return reject("zero-set-not-permuted", f"phi({q.a}) = {img} is not a zero")
        target = spec.interior[hits[0]]
        if target.mult != q.mult:
            return reject("multiplicity-mismatch", f"zero {q.a} (mult {q.mult}) -> {target.a} (mult {target.mult})")
        perm["interior"].append((q.a, target.a))

    locs = [r.w for r in spec.boundary]
    for r in spec.boundary:
        img = phi(r.w)
        hits = _match(locs, img, tol)
        if len(hits) != 1:
            return reject("boundary-root-mismatch", f"phi({r.w}) = {img} is not a boundary root")
        target = spec.boundary[hits[0]]
        if target.mult != r.mult:
            return reject("multiplicity-mismatch", f"root {r.w} (mult {r.mult}) -> {target.w} (mult {target.mult})")
        perm["boundary"].append((r.w, target.w))

    locs = [s.w for s in spec.atoms]
    for s in spec.atoms:
        img = phi(s.w)
        hits = _match(locs, img, tol)
        if len(hits) != 1:
            return reject("atom-weight-equation-failed", f"phi({s.w}) = {img} carries no atom")
        target = spec.atoms[hits[0]]
        expected = s.alpha * moebius.boundary_derivative(phi, s.w)
        if abs(target.alpha - expected) > WEIGHT_RTOL * target.alpha:
            return reject("atom-weight-equation-failed",
                          f"atom {s.w} -> {target.w}: weight {target.alpha} != {expected}")
        perm["atoms"].append((s.w, target.w))

    for pairs in perm.values():
        images = [t for _, t in pairs]
        if len(set(images)) != len(images):
            return reject("zero-set-not-permuted", "images are not distinct")

    verdict = Verdict(True, permutation=perm, derived_rule=derived)
    if witness:
        attach_witness(spec, phi, verdict)
    return verdict


def attach_witness(spec: PsiSpec, phi: DiscAutomorphism, verdict: Verdict):
    """Run the numeric oracle and record (sup, inf); disagreement is logged, not raised."""
    from .numerics import ratio_bounds

    report = ratio_bounds(spec, phi)
    verdict.numeric_witness = (report.sup_estimate, report.inf_estimate)
    if report.invertible_verdict != verdict.accepted:
        log.warning("numeric oracle disagrees with symbolic verdict (accepted=%s, sup=%g, inf=%g)",
                    verdict.accepted, report.sup_estimate, report.inf_estimate)
    return report


def decide_derivative_algebra(a, n: int, phi: DiscAutomorphism, tol: float = MATCH_TOL) -> bool:
    """Automorphism test for {f : f'(a) = ... = f^(n)(a) = 0}: phi must fix a."""
    a = moebius.as_point(a)
    if abs(a) >= 1.0:
        raise ValueError("a must lie in the open disc")
    if n < 1:
        raise ValueError("n must be a positive integer")
    return abs(phi(a) - a) <= tol


def check_conjugation_transfer(spec: PsiSpec, phi: DiscAutomorphism, rot: DiscAutomorphism) -> bool:
    """Decisions commute with rotating the data: compares (spec, phi) with (rot(spec), rot o phi o rot^-1)."""
    moved = conjugate_spec(spec, rot)
    return decide(spec, phi).accepted == decide(moved, moebius.conjugate_by(phi, rot)).accepted
