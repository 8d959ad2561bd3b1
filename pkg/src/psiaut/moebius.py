"""Disc automorphisms phi(z) = eta * (a - z) / (1 - conj(a) z).

Points are plain Python ``complex`` values (numpy complex arrays are
accepted wherever a function is evaluated pointwise).  Automorphisms are
immutable and stored in the canonical ``(eta, a)`` form with ``|eta| = 1``
and ``|a| < 1``; the identity is ``(-1, 0)``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import DegenerateInputError, ModulusError, PoleProximityError

POLE_TOL = 1e-14
BOUNDARY_TOL = 1e-9
IDENTITY_TOL = 1e-12
MATCH_TOL = 1e-9
# c = (1 + Re eta)/2 - |a|^2 is a quarter of |discriminant| of the fixed-point
# quadratic; values below this are treated as a double (parabolic) root.
PARABOLIC_TOL = 1e-12

_IDENTITY_PROBES = (0j, 0.5 + 0j, 0.5j)


def as_point(z) -> complex:
    """Coerce to a finite complex number."""
    z = complex(z)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise ValueError(f"non-finite point {z!r}")
    return z


def to_boundary(w, tol: float = BOUNDARY_TOL) -> complex:
    """Project a point within ``tol`` of the unit circle onto it."""
    w = as_point(w)
    r = abs(w)
    if abs(r - 1.0) > tol:
        raise ModulusError(f"boundary point {w!r} has modulus {r!r}, not within {tol} of 1")
    return w / r


@dataclass(frozen=True)
class DiscAutomorphism:
    eta: complex
    a: complex

    def __post_init__(self):
        eta = as_point(self.eta)
        a = as_point(self.a)
        if abs(a) >= 1.0:
            raise ModulusError(f"center a={a!r} must lie in the open unit disc")
        r = abs(eta)
        if abs(r - 1.0) > BOUNDARY_TOL:
            raise ModulusError(f"multiplier eta={eta!r} is not unimodular")
        object.__setattr__(self, "eta", eta / r)
        object.__setattr__(self, "a", a)

    def __call__(self, z):
        return evaluate(self, z)

    def __matmul__(self, other: "DiscAutomorphism") -> "DiscAutomorphism":
        return compose(self, other)

    def matrix(self) -> np.ndarray:
        return np.array([[-self.eta, self.eta * self.a], [-self.a.conjugate(), 1.0]])

    def is_identity(self, tol: float = IDENTITY_TOL) -> bool:
        return all(abs(evaluate(self, z) - z) <= tol for z in _IDENTITY_PROBES)

    def is_rotation(self, tol: float = 1e-15) -> bool:
        return abs(self.a) <= tol

    def __repr__(self):
        return f"DiscAutomorphism(eta={self.eta!r}, a={self.a!r})"


@dataclass(frozen=True)
class MoebiusClass:
    """Dynamical type of an automorphism.

    ``multiplier`` is the rotation angle at the interior fixed point for
    elliptic maps, the boundary derivative at the attracting fixed point
    (listed first) for hyperbolic maps, and 1 for parabolic maps and the
    identity.
    """

    kind: str
    fixed_points: tuple
    multiplier: float


# -- constructors ------------------------------------------------------------

def identity() -> DiscAutomorphism:
    return DiscAutomorphism(-1.0 + 0j, 0j)


def rotation(theta: float) -> DiscAutomorphism:
    """z -> exp(i theta) z."""
    return DiscAutomorphism(-cmath.exp(1j * theta), 0j)


def multiply_by(u) -> DiscAutomorphism:
    """z -> u z for unimodular u."""
    return DiscAutomorphism(-to_boundary(u), 0j)


def tau(a) -> DiscAutomorphism:
    """The involution (a - z)/(1 - conj(a) z) swapping 0 and a."""
    return DiscAutomorphism(1.0 + 0j, a)


def parabolic(w, zeta: float) -> DiscAutomorphism:
    """w + 2w(z - w)/(2w + i zeta (z - w)): parabolic with fixed point w, phi'(w) = 1."""
    w = to_boundary(w)
    iz = 1j * zeta
    # numerator 2w z + iz z - iz w ... written as (A z + B)/(C z + D)
    A = 2 * w + iz * w
    B = -iz * w * w
    C = iz
    D = 2 * w - iz * w
    return from_coefficients(A, B, C, D)


def from_coefficients(A, B, C, D, tol: float = 1e-9) -> Optional[DiscAutomorphism]:
    """Canonical form of z -> (A z + B)/(C z + D), or None if it is not a disc automorphism."""
    A, B, C, D = (complex(x) for x in (A, B, C, D))
    if abs(A) == 0.0 or abs(D) == 0.0:
        return None
    a = -B / A
    eta = -A / D
    if not (abs(a) < 1.0 and abs(abs(eta) - 1.0) <= tol):
        return None
    # denominator must be proportional to (1 - conj(a) z)
    scale = max(abs(C), abs(D))
    if abs(C + a.conjugate() * D) > tol * scale:
        return None
    return DiscAutomorphism(eta / abs(eta), a)


# -- group operations --------------------------------------------------------

def evaluate(phi: DiscAutomorphism, z):
    """phi(z); works on scalars and numpy arrays."""
    den = 1.0 - phi.a.conjugate() * z
    if np.min(np.abs(den)) < POLE_TOL:
        raise PoleProximityError(f"point too close to the pole 1/conj(a) of {phi!r}")
    return phi.eta * (phi.a - z) / den


def compose(f: DiscAutomorphism, g: DiscAutomorphism) -> DiscAutomorphism:
    """f o g."""
    (A, B), (C, D) = f.matrix() @ g.matrix()
    a = -B / A
    eta = -A / D
    return DiscAutomorphism(eta / abs(eta), a)


def inverse(phi: DiscAutomorphism) -> DiscAutomorphism:
    return DiscAutomorphism(phi.eta.conjugate(), phi.eta * phi.a)


def conjugate_by(phi: DiscAutomorphism, h: DiscAutomorphism) -> DiscAutomorphism:
    """h o phi o h^{-1}."""
    return compose(h, compose(phi, inverse(h)))


def derivative(phi: DiscAutomorphism, z):
    den = 1.0 - phi.a.conjugate() * z
    if np.min(np.abs(den)) < POLE_TOL:
        raise PoleProximityError(f"point too close to the pole 1/conj(a) of {phi!r}")
    return phi.eta * (abs(phi.a) ** 2 - 1.0) / den**2


def boundary_derivative(phi: DiscAutomorphism, p) -> float:
    """|phi'(p)| = (1 - |a|^2)/|1 - conj(a) p|^2 (angular derivative for |p| = 1)."""
    return (1.0 - abs(phi.a) ** 2) / abs(1.0 - phi.a.conjugate() * p) ** 2


def distance(f: DiscAutomorphism, g: DiscAutomorphism) -> float:
    """Parameter distance |eta_f - eta_g| + |a_f - a_g|."""
    return abs(f.eta - g.eta) + abs(f.a - g.a)


def pseudo_hyperbolic(z, w) -> float:
    z = as_point(z)
    w = as_point(w)
    if abs(z) >= 1.0 or abs(w) >= 1.0:
        raise ModulusError("pseudo-hyperbolic distance needs interior points")
    return abs(z - w) / abs(1.0 - w.conjugate() * z)


# -- classification ----------------------------------------------------------

def _fixed_point_roots(phi: DiscAutomorphism):
    """Roots of conj(a) z^2 - (1 + eta) z + eta a = 0 (from phi(z) = z), a != 0."""
    eta, a = phi.eta, phi.a
    ab = a.conjugate()
    b = 1.0 + eta
    s = cmath.sqrt(b * b - 4.0 * ab * eta * a)
    q = b + s if abs(b + s) >= abs(b - s) else b - s
    r1 = q / (2.0 * ab)
    r2 = eta * a / (ab * r1)
    return r1, r2


def classify(phi: DiscAutomorphism) -> MoebiusClass:
    if phi.is_identity():
        return MoebiusClass("identity", (), 1.0)
    eta, a = phi.eta, phi.a
    if abs(a) < 1e-15:
        return MoebiusClass("elliptic", (0j,), cmath.phase(-eta))
    c = 0.5 * (1.0 + eta.real) - abs(a) ** 2
    if c > PARABOLIC_TOL:
        r1, r2 = _fixed_point_roots(phi)
        p = r1 if abs(r1) < abs(r2) else r2
        return MoebiusClass("elliptic", (p,), cmath.phase(derivative(phi, p)))
    if c >= -PARABOLIC_TOL:
        p = (1.0 + eta) / (2.0 * a.conjugate())
        return MoebiusClass("parabolic", (p / abs(p),), 1.0)
    r1, r2 = (r / abs(r) for r in _fixed_point_roots(phi))
    d1, d2 = boundary_derivative(phi, r1), boundary_derivative(phi, r2)
    if d2 < d1:
        r1, r2, d1 = r2, r1, d2
    return MoebiusClass("hyperbolic", (r1, r2), d1)


# -- interpolation -----------------------------------------------------------

def _rotation_through(theta_factor: complex) -> DiscAutomorphism:
    return multiply_by(theta_factor / abs(theta_factor))


def solve_interior_pair(a1, b1, a2, b2, tol: float = MATCH_TOL) -> Optional[DiscAutomorphism]:
    """The automorphism with a1 -> b1 and a2 -> b2, or None when no such map exists."""
    a1, b1, a2, b2 = (as_point(p) for p in (a1, b1, a2, b2))
    if max(abs(a1), abs(b1), abs(a2), abs(b2)) >= 1.0:
        raise ModulusError("interior constraints must lie in the open disc")
    if abs(a1 - a2) <= tol:
        raise DegenerateInputError("source points coincide")
    u = tau(a1)(a2)
    v = tau(b1)(b2)
    if abs(abs(u) - abs(v)) > tol:
        return None
    phi = compose(tau(b1), compose(_rotation_through(v / u), tau(a1)))
    if abs(phi(a1) - b1) > tol or abs(phi(a2) - b2) > tol:
        return None
    return phi


def solve_interior_boundary(a, b, w, w_image, tol: float = MATCH_TOL) -> Optional[DiscAutomorphism]:
    """The automorphism with a -> b (interior) and w -> w_image (boundary)."""
    a, b = as_point(a), as_point(b)
    if abs(a) >= 1.0 or abs(b) >= 1.0:
        raise ModulusError("interior constraints must lie in the open disc")
    w, w_image = to_boundary(w), to_boundary(w_image)
    u = tau(a)(w)
    v = tau(b)(w_image)
    phi = compose(tau(b), compose(_rotation_through(v / u), tau(a)))
    if abs(phi(a) - b) > tol or abs(phi(w) - w_image) > tol:
        return None
    return phi


def _to_zero_one_infinity(z1, z2, z3):
    """Coefficients of the Moebius map sending z1, z2, z3 to 0, 1, infinity."""
    return np.array([[z2 - z3, -z1 * (z2 - z3)], [z2 - z1, -z3 * (z2 - z1)]])


def solve_boundary_triple(sources, targets, tol: float = MATCH_TOL) -> Optional[DiscAutomorphism]:
    """The automorphism sending three boundary points to three points, if any.

    Targets off the circle, or an orientation-reversing assignment, give None.
    """
    sources = [to_boundary(w) for w in sources]
    targets = [as_point(w) for w in targets]
    if len(sources) != 3 or len(targets) != 3:
        raise DegenerateInputError("need exactly three point pairs")
    for pts in (sources, targets):
        for i in range(3):
            for j in range(i + 1, 3):
                if abs(pts[i] - pts[j]) <= tol:
                    raise DegenerateInputError("three distinct points required")
    S = _to_zero_one_infinity(*sources)
    T = _to_zero_one_infinity(*targets)
    Ti = np.array([[T[1, 1], -T[0, 1]], [-T[1, 0], T[0, 0]]])
    (A, B), (C, D) = Ti @ S
    phi = from_coefficients(A, B, C, D, tol=tol)
    if phi is None:
        return None
    if any(abs(phi(s) - t) > tol for s, t in zip(sources, targets)):
        return None
    return phi
