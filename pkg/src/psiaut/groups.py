"""Automorphism groups of psi * H-infinity for finite data.

Under-determined configurations (at most two constraint sites) come back as
named one- or two-parameter families; anything with enough constraints to
pin an automorphism is solved to a finite list, every element of which is
re-checked by the symbolic decision.
"""

from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from . import moebius
from .decision import decide
from .errors import OutOfRangeError, UnsupportedConfigurationError
from .moebius import DiscAutomorphism, compose, conjugate_by, inverse
from .numerics import find_parameter_roots
from .psi_model import PsiSpec, boundary_sites, has_mixed_site, uses_derived_rule

MAX_CANDIDATES = math.factorial(10)
DEDUPE_TOL = 1e-8

FAMILY_NAMES = (
    "rotation_conjugate",
    "boundary_stabilizer",
    "boundary_pair_fixing",
    "boundary_pair_swapping",
    "parabolic_at",
)


def _pair_normaliser(w1: complex, w2: complex) -> DiscAutomorphism:
    """Automorphism sending w1 -> 1, w2 -> -1 and the counter-clockwise arc midpoint -> i."""
    arc = cmath.phase(w2 / w1) % (2 * math.pi)
    mid = w1 * cmath.exp(0.5j * arc)
    sigma = moebius.solve_boundary_triple((w1, mid, w2), (1, 1j, -1))
    assert sigma is not None
    return sigma


@dataclass(frozen=True)
class FamilyDescriptor:
    name: str
    points: tuple

    @property
    def param_count(self) -> int:
        return 2 if self.name == "boundary_stabilizer" else 1

    @property
    def ranges(self) -> str:
        return {
            "rotation_conjugate": "theta in R",
            "boundary_stabilizer": "(re c, im c) with |c| < 1",
            "boundary_pair_fixing": "t in (-1, 1)",
            "boundary_pair_swapping": "t in (-1, 1)",
            "parabolic_at": "zeta in R",
        }[self.name]

    def sample(self, *params) -> DiscAutomorphism:
        return sample_family(self, list(params))

    def project(self, phi: DiscAutomorphism) -> list:
        """Parameters of the family member closest (in construction) to phi."""
        if self.name == "rotation_conjugate":
            a = self.points[0]
            return [cmath.phase(moebius.derivative(phi, a))]
        if self.name == "boundary_stabilizer":
            c = self.points[0].conjugate() * phi.a
            return [c.real, c.imag]
        if self.name == "parabolic_at":
            a1 = self.points[0].conjugate() * phi.a
            return [(2 * a1 / (1j * (1 - a1))).real]
        sigma = _pair_normaliser(*self.points)
        normal = conjugate_by(phi, sigma)
        return [-normal.a.real]

    def distance(self, phi: DiscAutomorphism) -> float:
        try:
            return moebius.distance(phi, self.sample(*self.project(phi)))
        except (OutOfRangeError, ValueError, ZeroDivisionError):
            return math.inf

    def random_member(self, rng) -> DiscAutomorphism:
        if self.name == "rotation_conjugate":
            return self.sample(rng.uniform(0, 2 * math.pi))
        if self.name == "boundary_stabilizer":
            c = math.sqrt(rng.uniform(0, 0.81)) * cmath.exp(2j * math.pi * rng.uniform())
            return self.sample(c.real, c.imag)
        if self.name == "parabolic_at":
            return self.sample(rng.uniform(-5, 5))
        return self.sample(rng.uniform(-0.9, 0.9))

    def to_json(self) -> dict:
        return {"name": self.name, "points": [[p.real, p.imag] for p in self.points],
                "param_count": self.param_count, "ranges": self.ranges}


@dataclass
class GroupDescriptor:
    kind: str
    elements: list = field(default_factory=list)
    families: list = field(default_factory=list)
    derived_rule: bool = False

    def contains(self, phi: DiscAutomorphism, tol: float = 1e-6) -> bool:
        return self.distance(phi) <= tol

    def distance(self, phi: DiscAutomorphism) -> float:
        if self.kind == "all_of_aut_d":
            return 0.0
        if self.kind in ("finite", "identity_only"):
            return min(moebius.distance(phi, g) for g in self.elements)
        return min(f.distance(phi) for f in self.families)

    def random_member(self, rng) -> DiscAutomorphism:
        if self.kind == "all_of_aut_d":
            a = math.sqrt(rng.uniform(0, 0.81)) * cmath.exp(2j * math.pi * rng.uniform())
            return DiscAutomorphism(cmath.exp(2j * math.pi * rng.uniform()), a)
        if self.kind in ("finite", "identity_only"):
            return self.elements[rng.integers(len(self.elements))]
        return self.families[rng.integers(len(self.families))].random_member(rng)


def sample_family(fam: FamilyDescriptor, params) -> DiscAutomorphism:
    params = [float(p) for p in params]
    if len(params) != fam.param_count:
        raise OutOfRangeError(f"{fam.name} takes {fam.param_count} parameter(s)")
    if fam.name == "rotation_conjugate":
        ta = moebius.tau(fam.points[0])
        return compose(ta, compose(moebius.rotation(params[0]), ta))
    if fam.name == "boundary_stabilizer":
        c = complex(*params)
        if abs(c) >= 1.0:
            raise OutOfRangeError("stabilizer center must lie in the open disc")
        base = DiscAutomorphism(-(c - 1).conjugate() / (c - 1), c)
        return conjugate_by(base, moebius.multiply_by(fam.points[0]))
    if fam.name == "parabolic_at":
        return moebius.parabolic(fam.points[0], params[0])
    if fam.name in ("boundary_pair_fixing", "boundary_pair_swapping"):
        t = params[0]
        if not -1.0 < t < 1.0:
            raise OutOfRangeError("pair-family parameter must lie in (-1, 1)")
        h = DiscAutomorphism(-1.0 if fam.name == "boundary_pair_fixing" else 1.0, -t)
        sigma = _pair_normaliser(*fam.points)
        return compose(inverse(sigma), compose(h, sigma))
    raise OutOfRangeError(f"unknown family {fam.name!r}")


def _canonical(elements):
    out = []
    for g in elements:
        if all(moebius.distance(g, h) > DEDUPE_TOL for h in out):
            out.append(g)
    return sorted(out, key=lambda g: (round(g.eta.real, 10), round(g.eta.imag, 10),
                                      round(g.a.real, 10), round(g.a.imag, 10)))


def _finite(spec, candidates, derived):
    survivors = _canonical([g for g in candidates if g is not None and decide(spec, g).accepted])
    kind = "identity_only" if len(survivors) == 1 and survivors[0].is_identity() else "finite"
    return GroupDescriptor(kind, elements=survivors, derived_rule=derived)


def _cut_pair_family(spec, fam, sites):
    """Members of a one-parameter pair family satisfying the atom weight equations."""
    (w1, _, al1), (w2, _, al2) = sites
    swap = fam.name == "boundary_pair_swapping"
    if al1 > 0:
        p, alpha_p, alpha_q = w1, al1, (al2 if swap else al1)
    else:
        p, alpha_p, alpha_q = w2, al2, (al1 if swap else al2)
    ratio = alpha_q / alpha_p

    def weight_eq(t):
        return moebius.boundary_derivative(fam.sample(t), p) - ratio

    return [fam.sample(t) for t in find_parameter_roots(weight_eq, -1.0, 1.0)]


def enumerate_group(spec: PsiSpec) -> GroupDescriptor:
    interior = list(spec.interior)
    sites = boundary_sites(spec)
    ni, nb = len(interior), len(sites)
    derived = uses_derived_rule(spec) or has_mixed_site(spec)
    has_atoms = bool(spec.atoms)

    if ni == 0 and nb == 0:
        return GroupDescriptor("all_of_aut_d")

    if ni == 1 and nb == 0:
        fam = FamilyDescriptor("rotation_conjugate", (interior[0].a,))
        return GroupDescriptor("family_union", families=[fam], derived_rule=derived)

    if ni == 0 and nb == 1:
        w, _, alpha = sites[0]
        name = "parabolic_at" if alpha > 0 else "boundary_stabilizer"
        return GroupDescriptor("family_union", families=[FamilyDescriptor(name, (w,))], derived_rule=derived)

    if ni == 0 and nb == 2:
        w1, w2 = sites[0][0], sites[1][0]
        fams = [FamilyDescriptor("boundary_pair_fixing", (w1, w2))]
        if _site_class(sites[0]) == _site_class(sites[1]):
            fams.append(FamilyDescriptor("boundary_pair_swapping", (w1, w2)))
        if not has_atoms:
            return GroupDescriptor("family_union", families=fams, derived_rule=derived)
        candidates = [moebius.identity()]
        for fam in fams:
            candidates += _cut_pair_family(spec, fam, sites)
        return _finite(spec, candidates, derived)

    return _finite(spec, _pinned_candidates(spec, interior, sites), derived)


def _site_class(site):
    _, mult, alpha = site
    return (mult, alpha > 0)


def _pinned_candidates(spec, interior, sites):
    """Automorphisms determined by the images of a pinning subset of the constraints."""
    ni, nb = len(interior), len(sites)
    out = []
    if ni >= 2:
        src = interior[:2]
        options = [[t for t in interior if t.mult == s.mult] for s in src]
        _guard(math.prod(len(o) for o in options), ni, nb)
        combos = [(x, y) for x, y in itertools.product(*options) if x is not y]
        for t1, t2 in combos:
            out.append(moebius.solve_interior_pair(src[0].a, t1.a, src[1].a, t2.a))
    elif ni == 1 and nb >= 1:
        a = interior[0].a
        options = [t for t in sites if _site_class(t) == _site_class(sites[0])]
        _guard(len(options), ni, nb)
        for t in options:
            out.append(moebius.solve_interior_boundary(a, a, sites[0][0], t[0]))
    elif nb >= 3:
        src = sites[:3]
        options = [[t for t in sites if _site_class(t) == _site_class(s)] for s in src]
        _guard(math.prod(len(o) for o in options), ni, nb)
        combos = [c for c in itertools.product(*options) if len({id(x) for x in c}) == 3]
        for c in combos:
            out.append(moebius.solve_boundary_triple([s[0] for s in src], [t[0] for t in c]))
    else:
        raise UnsupportedConfigurationError(f"no solver for profile interior={ni}, boundary_sites={nb}")
    return out


def _guard(count, ni, nb):
    """count is the product of per-constraint option counts, an upper bound on the candidates."""
    if count > MAX_CANDIDATES:
        raise UnsupportedConfigurationError(
            f"{count} candidate automorphisms exceed the cap of {MAX_CANDIDATES} "
            f"(profile interior={ni}, boundary_sites={nb})")


def group_closure_check(desc: GroupDescriptor, spec: PsiSpec, samples: int = 50, rng=None) -> bool:
    """Compose and invert sampled members; every result must still be accepted."""
    rng = np.random.default_rng(rng)
    if desc.kind in ("finite", "identity_only"):
        pairs = list(itertools.product(desc.elements, repeat=2))
    else:
        pairs = [(desc.random_member(rng), desc.random_member(rng)) for _ in range(samples)]
    for f, g in pairs:
        if not (decide(spec, compose(f, g)).accepted and decide(spec, inverse(f)).accepted):
            return False
    return True


def scan_grid(spec: PsiSpec, n_radii: int = 60, n_angles: int = 60, n_eta: int = 120,
              tol: float = moebius.MATCH_TOL) -> list:
    """Brute-force acceptance scan over a = (i/n_radii) e^{2 pi j i/n_angles}, eta = e^{2 pi k i/n_eta}.

    Returns the accepted automorphisms.  Used to check that enumerate_group
    misses nothing at grid resolution.
    """
    from . import _kernels
    from .psi_model import spec_arrays
    from .decision import WEIGHT_RTOL

    r = np.arange(n_radii) / n_radii
    beta = 2 * np.pi * np.arange(n_angles) / n_angles
    centers = (r[:, None] * np.exp(1j * beta)[None, :]).ravel()
    etas = np.exp(2j * np.pi * np.arange(n_eta) / n_eta)
    C = np.repeat(centers, n_eta)
    E = np.tile(etas, centers.size)
    mask = _kernels.accept_mask(E, C, *spec_arrays(spec), tol, WEIGHT_RTOL)
    return [DiscAutomorphism(e, c) for e, c in zip(E[mask], C[mask])]
