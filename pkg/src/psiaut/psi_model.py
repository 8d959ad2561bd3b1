"""Finite data model for psi = (Blaschke part) x (boundary-root polynomial) x (atomic singular inner part).

psi is only determined up to an invertible factor of H-infinity, which
never changes the algebra psi * H-infinity, so the unimodular constant of the
Blaschke product is dropped.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import moebius
from .errors import DuplicatePointError, ModulusError, SingularityProximityError, ValidationError
from .moebius import DiscAutomorphism, as_point

DUPLICATE_TOL = 1e-9
INTERIOR_MARGIN = 1e-12


@dataclass(frozen=True)
class InteriorZero:
    a: complex
    mult: int = 1


@dataclass(frozen=True)
class BoundaryRoot:
    w: complex
    mult: int = 1


@dataclass(frozen=True)
class SingularAtom:
    w: complex
    alpha: float = 1.0


@dataclass(frozen=True)
class PsiSpec:
    interior: tuple = ()
    boundary: tuple = ()
    atoms: tuple = ()

    @property
    def is_empty(self) -> bool:
        return not (self.interior or self.boundary or self.atoms)

    @property
    def size(self) -> int:
        return len(self.interior) + len(self.boundary) + len(self.atoms)

    def merged(self, other: "PsiSpec") -> "PsiSpec":
        """Product psi_self * psi_other (multiplicities add, atom weights add)."""
        return validate(_merge_raw(self, other))

    def to_json(self) -> dict:
        return {
            "interior": [{"a": _pair(z.a), "mult": z.mult} for z in self.interior],
            "boundary": [{"w": _pair(r.w), "mult": r.mult} for r in self.boundary],
            "atoms": [{"w": _pair(s.w), "alpha": s.alpha} for s in self.atoms],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "PsiSpec":
        if not isinstance(obj, dict):
            raise ValidationError("psi JSON must be an object")
        unknown = set(obj) - {"interior", "boundary", "atoms"}
        if unknown:
            raise ValidationError(f"unknown psi fields: {sorted(unknown)}")
        try:
            raw = cls(
                interior=tuple(InteriorZero(_point(d["a"]), _mult(d.get("mult", 1))) for d in obj.get("interior", [])),
                boundary=tuple(BoundaryRoot(_point(d["w"]), _mult(d.get("mult", 1))) for d in obj.get("boundary", [])),
                atoms=tuple(SingularAtom(_point(d["w"]), float(d["alpha"])) for d in obj.get("atoms", [])),
            )
        except (KeyError, TypeError) as exc:
            raise ValidationError(f"malformed psi JSON: {exc}") from exc
        return validate(raw)


@dataclass
class Verdict:
    """Outcome of a decision.

    ``permutation`` maps category -> list of (source, image) datum pairs and
    is present only when accepted; ``reason`` is present only when rejected.
    """

    accepted: bool
    permutation: Optional[dict] = None
    reason: Optional[str] = None
    numeric_witness: Optional[tuple] = None
    derived_rule: bool = False
    detail: str = ""

    def certificate_lines(self) -> list:
        if not self.accepted:
            return []
        return [f"{_fmt(s)}→{_fmt(t)}" for cat in ("interior", "boundary", "atoms")
                for s, t in self.permutation.get(cat, [])]


REASONS = (
    "not-an-automorphism",
    "zero-set-not-permuted",
    "multiplicity-mismatch",
    "boundary-root-mismatch",
    "atom-weight-equation-failed",
)


def _fmt(z: complex) -> str:
    z = complex(z)
    if z.imag == 0:
        return f"{z.real:.15g}"
    return f"{z.real:.15g}{z.imag:+.15g}i"


def _pair(z: complex) -> list:
    return [z.real, z.imag]


def _point(v) -> complex:
    if isinstance(v, (list, tuple)) and len(v) == 2:
        return as_point(complex(float(v[0]), float(v[1])))
    if isinstance(v, (int, float)):
        return as_point(v)
    raise ValidationError(f"point must be [re, im], got {v!r}")


def _mult(m) -> int:
    if isinstance(m, bool) or int(m) != m or m < 1:
        raise ValidationError(f"multiplicity must be a positive integer, got {m!r}")
    return int(m)


def _key(z: complex):
    return (z.real, z.imag)


def _check_distinct(points, what):
    for i in range(len(points)):
        for j in range(i + 1, len(points)):
            if abs(points[i] - points[j]) <= DUPLICATE_TOL:
                raise DuplicatePointError(f"duplicate {what} at {points[i]!r}; merge multiplicities instead")


def validate(spec: PsiSpec) -> PsiSpec:
    """Check and canonicalise: project boundary data onto the circle, sort, reject duplicates."""
    interior = []
    for z in spec.interior:
        a = as_point(z.a)
        if abs(a) >= 1.0 - INTERIOR_MARGIN:
            raise ModulusError(f"interior zero {a!r} is not inside the disc")
        interior.append(InteriorZero(a, _mult(z.mult)))
    boundary = [BoundaryRoot(moebius.to_boundary(r.w), _mult(r.mult)) for r in spec.boundary]
    atoms = []
    for s in spec.atoms:
        alpha = float(s.alpha)
        if not (alpha > 0 and math.isfinite(alpha)):
            raise ValidationError(f"atom weight must be positive, got {s.alpha!r}")
        atoms.append(SingularAtom(moebius.to_boundary(s.w), alpha))
    _check_distinct([z.a for z in interior], "interior zero")
    _check_distinct([r.w for r in boundary], "boundary root")
    _check_distinct([s.w for s in atoms], "atom")
    return PsiSpec(
        tuple(sorted(interior, key=lambda z: _key(z.a))),
        tuple(sorted(boundary, key=lambda r: _key(r.w))),
        tuple(sorted(atoms, key=lambda s: _key(s.w))),
    )


def _merge_raw(s1: PsiSpec, s2: PsiSpec) -> PsiSpec:
    def merge(items1, items2, loc, weight, make):
        out = list(items1)
        for it in items2:
            for k, old in enumerate(out):
                if abs(getattr(old, loc) - getattr(it, loc)) <= DUPLICATE_TOL:
                    out[k] = make(getattr(old, loc), getattr(old, weight) + getattr(it, weight))
                    break
            else:
                out.append(it)
        return tuple(out)

    return PsiSpec(
        merge(s1.interior, s2.interior, "a", "mult", InteriorZero),
        merge(s1.boundary, s2.boundary, "w", "mult", BoundaryRoot),
        merge(s1.atoms, s2.atoms, "w", "alpha", SingularAtom),
    )


def spec_arrays(spec: PsiSpec):
    """Flat numpy arrays (locations, weights) per category, for the kernels."""
    zi = np.array([z.a for z in spec.interior], dtype=np.complex128)
    mi = np.array([z.mult for z in spec.interior], dtype=np.float64)
    zb = np.array([r.w for r in spec.boundary], dtype=np.complex128)
    mb = np.array([r.mult for r in spec.boundary], dtype=np.float64)
    za = np.array([s.w for s in spec.atoms], dtype=np.complex128)
    wa = np.array([s.alpha for s in spec.atoms], dtype=np.float64)
    return zi, mi, zb, mb, za, wa


def _check_singular_distance(spec: PsiSpec, z, tol: float, include_zeros: bool):
    z = np.asarray(z)
    pts = [r.w for r in spec.boundary] + [s.w for s in spec.atoms]
    if include_zeros:
        pts += [q.a for q in spec.interior]
    for p in pts:
        if np.min(np.abs(z - p)) < tol:
            raise SingularityProximityError(f"evaluation point within {tol} of singular datum {p!r}")


def eval_psi(spec: PsiSpec, z):
    """psi(z) for scalar or array z inside the disc."""
    _check_singular_distance(spec, z, 1e-12, include_zeros=False)
    z = np.asarray(z, dtype=np.complex128)
    out = np.ones_like(z)
    for q in spec.interior:
        if q.a == 0:
            out = out * z**q.mult
        else:
            out = out * ((abs(q.a) / q.a) * (q.a - z) / (1.0 - q.a.conjugate() * z)) ** q.mult
    for r in spec.boundary:
        out = out * (z - r.w) ** r.mult
    for s in spec.atoms:
        out = out * np.exp(s.alpha * (z + s.w) / (z - s.w))
    return out[()] if out.ndim == 0 else out


def log_derivative(spec: PsiSpec, z):
    """psi'/psi at z, summed factor by factor."""
    _check_singular_distance(spec, z, 1e-9, include_zeros=True)
    z = np.asarray(z, dtype=np.complex128)
    out = np.zeros_like(z)
    for q in spec.interior:
        out = out + q.mult * (abs(q.a) ** 2 - 1.0) / ((q.a - z) * (1.0 - q.a.conjugate() * z))
    for r in spec.boundary:
        out = out + r.mult / (z - r.w)
    for s in spec.atoms:
        out = out - 2.0 * s.alpha * s.w / (z - s.w) ** 2
    return out[()] if out.ndim == 0 else out


def conjugate_spec(spec: PsiSpec, rot: DiscAutomorphism) -> PsiSpec:
    """Move every datum p to rot(p); rot must be a rotation."""
    if not rot.is_rotation():
        raise ValidationError("conjugate_spec needs a rotation (a = 0)")
    return validate(PsiSpec(
        tuple(InteriorZero(rot(q.a), q.mult) for q in spec.interior),
        tuple(BoundaryRoot(rot(r.w), r.mult) for r in spec.boundary),
        tuple(SingularAtom(rot(s.w), s.alpha) for s in spec.atoms),
    ))


def boundary_sites(spec: PsiSpec) -> list:
    """Distinct boundary locations as (w, root multiplicity or 0, atom weight or 0.0)."""
    sites = []
    for r in spec.boundary:
        sites.append([r.w, r.mult, 0.0])
    for s in spec.atoms:
        for site in sites:
            if abs(site[0] - s.w) <= DUPLICATE_TOL:
                site[2] = s.alpha
                break
        else:
            sites.append([s.w, 0, s.alpha])
    return [tuple(s) for s in sorted(sites, key=lambda s: _key(s[0]))]


def has_mixed_site(spec: PsiSpec) -> bool:
    return any(m > 0 and alpha > 0 for _, m, alpha in boundary_sites(spec))


def uses_derived_rule(spec: PsiSpec) -> bool:
    """True when the spec lies outside the cases settled in closed form.

    Settled: no atoms; a single atom alone; two antipodal atoms of equal
    weight alone.  Everything else with atoms relies on the general
    angular-derivative weight rule.
    """
    if not spec.atoms:
        return False
    if spec.interior or spec.boundary:
        return True
    if len(spec.atoms) == 1:
        return False
    if len(spec.atoms) == 2:
        s, t = spec.atoms
        return not (abs(s.w + t.w) <= DUPLICATE_TOL and abs(s.alpha - t.alpha) <= 1e-12 * s.alpha)
    return True


def make_spec(interior=(), boundary=(), atoms=()) -> PsiSpec:
    """Convenience constructor from (point, weight) pairs; validates."""
    return validate(PsiSpec(
        tuple(InteriorZero(complex(a), m) for a, m in interior),
        tuple(BoundaryRoot(complex(w), m) for w, m in boundary),
        tuple(SingularAtom(complex(w), al) for w, al in atoms),
    ))
