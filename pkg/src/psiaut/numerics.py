"""Independent numerical oracles.

* argument-principle zero counting (trapezoid rule on circles),
* sampled sup/inf of |g| for g = (psi o phi)/psi, the invertibility witness,
* 1-D root finding used to cut one-parameter families.

None of this consults the symbolic decision rules; it only evaluates psi and
phi.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import brentq

from . import _kernels
from .errors import EmptyGridError, IllConditionedContourError
from .moebius import DiscAutomorphism, as_point, derivative, inverse
from .psi_model import PsiSpec, log_derivative, spec_arrays

DEFAULT_RADII = (0.1, 0.3, 0.5, 0.7, 0.9, 0.99, 0.999)
DEFAULT_ANGULAR = 720
DEFAULT_BOUND = 1e6
QUADRATURE_RESIDUAL = 1e-3

ZERO_EXCLUSION = 1e-6
ATOM_EXCLUSION = 1e-4
# approach sequences toward the places where g can blow up or vanish
RAY_LEVELS = (1 - 1e-1, 1 - 1e-2, 1 - 1e-3, 1 - 1e-4)
RING_LEVELS = (1e-3, 1e-4, 1e-5)
RING_POINTS = 16
# growth of log10|g| per decade of approach that counts as unbounded
GROWTH_SLOPE = 0.5


@dataclass(frozen=True)
class ContourSpec:
    center: complex
    radius: float
    samples: int = 4096

    def points(self):
        theta = 2.0 * np.pi * np.arange(self.samples) / self.samples
        e = np.exp(1j * theta)
        return self.center + self.radius * e, e


@dataclass
class RatioReport:
    sup_estimate: float
    inf_estimate: float
    grid: dict
    invertible_verdict: bool
    stable: bool = True
    raw_sup: float = float("nan")
    raw_inf: float = float("nan")
    growth: dict = field(default_factory=dict)


def _check_contour(contour: ContourSpec, singular_interior, margin=ZERO_EXCLUSION):
    c = as_point(contour.center)
    r = float(contour.radius)
    if not (r > 0 and contour.samples > 0):
        raise IllConditionedContourError("contour needs positive radius and sample count")
    if abs(c) + r > 1.0 - margin:
        raise IllConditionedContourError("contour leaves the disc or comes too close to the circle")
    for p in singular_interior:
        if abs(abs(p - c) - r) < margin:
            raise IllConditionedContourError(f"contour passes within {margin} of the zero {p!r}")


def _winding(values, e, radius):
    integral = radius * np.mean(values * e)
    n = int(round(integral.real))
    residual = abs(integral - n)
    if not np.isfinite(residual) or residual > QUADRATURE_RESIDUAL:
        raise IllConditionedContourError(f"argument-principle residual {residual:.3g} too large")
    return n


def count_zeros(spec: PsiSpec, contour: ContourSpec) -> int:
    """Number of zeros of psi inside the circle, with multiplicity."""
    _check_contour(contour, [q.a for q in spec.interior])
    z, e = contour.points()
    return _winding(log_derivative(spec, z), e, contour.radius)


def count_zeros_composed(spec: PsiSpec, phi: DiscAutomorphism, contour: ContourSpec) -> int:
    """Number of zeros of psi o phi inside the circle (chain rule integrand)."""
    pinv = inverse(phi)
    _check_contour(contour, [pinv(q.a) for q in spec.interior])
    z, e = contour.points()
    values = log_derivative(spec, phi(z)) * derivative(phi, z)
    return _winding(values, e, contour.radius)


def _polar_grid(radii, angular):
    theta = 2.0 * np.pi * np.arange(angular) / angular
    return (np.asarray(radii, dtype=np.float64)[:, None] * np.exp(1j * theta)[None, :]).ravel()


def _dedupe(points, tol=1e-12):
    out = []
    for p in points:
        if all(abs(p - q) > tol for q in out):
            out.append(p)
    return out


def ratio_bounds(spec: PsiSpec, phi: DiscAutomorphism, radii=DEFAULT_RADII,
                 angular: int = DEFAULT_ANGULAR, bound: float = DEFAULT_BOUND) -> RatioReport:
    """Sampled sup and inf of |psi(phi(z)) / psi(z)| on the disc.

    The polar grid radii x angular is complemented by rays toward every
    boundary datum of psi and of its pullback psi o phi, and by small rings
    around every zero of psi and of psi o phi.  Along those approach
    sequences a sustained power-law growth (or decay) of |g| is reported as an
    infinite sup (or zero inf), since g then has a pole (or zero) there.  The
    verdict is recomputed with the finest approach level dropped; ``stable``
    records whether both agree.
    """
    radii = tuple(float(r) for r in radii)
    if angular < 1 or not radii or any(not 0 < r < 1 for r in radii):
        raise ValueError("radii must lie in (0, 1) and angular must be positive")
    arrays = spec_arrays(spec)
    pinv = inverse(phi)

    zeros = _dedupe([q.a for q in spec.interior] + [complex(pinv(q.a)) for q in spec.interior])
    atoms = _dedupe([s.w for s in spec.atoms] + [complex(pinv(s.w)) for s in spec.atoms])
    bpts = [r.w for r in spec.boundary] + [s.w for s in spec.atoms]
    bpts = _dedupe(bpts + [complex(pinv(w)) for w in bpts])
    bpts = [w / abs(w) for w in bpts]

    grid = _polar_grid(radii, angular)
    ring_e = np.exp(2j * np.pi * (np.arange(RING_POINTS) + 0.5) / RING_POINTS)
    rays = [np.array([r * w for r in RAY_LEVELS]) for w in bpts]
    rings = [np.array([q + eps * ring_e for eps in RING_LEVELS]) for q in zeros]

    def keep(z):
        z = np.asarray(z)
        mask = np.abs(z) < 1.0
        for q in zeros:
            mask &= np.abs(z - q) >= ZERO_EXCLUSION
        for w in atoms:
            mask &= np.abs(z - w) >= ATOM_EXCLUSION
        return mask

    def log_ratio(z):
        z = np.asarray(z, dtype=np.complex128)
        return _kernels.log_abs_psi(phi(z), *arrays) - _kernels.log_abs_psi(z, *arrays)

    all_pts = np.concatenate([grid] + [r.ravel() for r in rays] + [r.ravel() for r in rings])
    mask = keep(all_pts)
    if not mask.any():
        raise EmptyGridError("every grid point was excluded")
    lg_all = log_ratio(all_pts[mask])
    raw_max = float(np.max(lg_all))
    raw_min = float(np.min(lg_all))

    # approach sequences: list of per-level arrays of log|g| (nan where excluded)
    sequences = []
    for ray in rays:
        lg = np.full(ray.shape, np.nan)
        m = keep(ray)
        lg[m] = log_ratio(ray[m])
        sequences.append(("ray", lg[:, None]))
    for ring in rings:
        lg = np.full(ring.shape, np.nan)
        m = keep(ring)
        if m.any():
            lg[m] = log_ratio(ring[m])
        sequences.append(("ring", lg))

    def growth(levels_used):
        grows = vanishes = False
        for _, lg in sequences:
            lg = lg[:levels_used]
            valid = [row[np.isfinite(row)] for row in lg]
            if len(valid) < 2 or valid[-1].size == 0 or valid[-2].size == 0:
                continue
            up = (valid[-1].max() - valid[-2].max()) / math.log(10.0)
            down = (valid[-1].min() - valid[-2].min()) / math.log(10.0)
            grows |= bool(up >= GROWTH_SLOPE)
            vanishes |= bool(down <= -GROWTH_SLOPE)
        return grows, vanishes

    def verdict(grows, vanishes, lmax, lmin):
        sup = math.inf if grows or lmax >= 709.0 else math.exp(lmax)
        inf = 0.0 if vanishes or lmin <= -745.0 else math.exp(lmin)
        return sup, inf, (sup <= bound and inf >= 1.0 / bound)

    grows, vanishes = growth(None)
    sup, inf, ok = verdict(grows, vanishes, raw_max, raw_min)

    # coarser check: drop the finest level of every approach sequence
    finest = np.concatenate([np.zeros(grid.size, bool)]
                            + [np.arange(len(RAY_LEVELS)) == len(RAY_LEVELS) - 1 for _ in rays]
                            + [np.repeat(np.arange(len(RING_LEVELS)) == len(RING_LEVELS) - 1, RING_POINTS)
                               for _ in rings])
    coarse_mask = mask & ~finest
    lg_coarse = log_ratio(all_pts[coarse_mask]) if coarse_mask.any() else lg_all
    g2, v2 = growth(-1)
    _, _, ok_coarse = verdict(g2, v2, float(np.max(lg_coarse)), float(np.min(lg_coarse)))

    return RatioReport(
        sup_estimate=sup,
        inf_estimate=inf,
        grid={
            "radii": list(radii),
            "angular": int(angular),
            "ray_levels": list(RAY_LEVELS),
            "ring_levels": list(RING_LEVELS),
            "rays": len(rays),
            "rings": len(rings),
            "points": int(mask.sum()),
        },
        invertible_verdict=bool(ok),
        stable=bool(ok == ok_coarse),
        raw_sup=math.exp(min(raw_max, 709.0)),
        raw_inf=math.exp(max(raw_min, -745.0)),
        growth={"unbounded": grows, "vanishing": vanishes},
    )


def find_parameter_roots(f, lo: float, hi: float, tol: float = 1e-12, step: float = 1e-3) -> list:
    """All sign-change roots of a real function on [lo, hi].

    The interval is scanned with the given step; points where ``f`` fails or
    is non-finite are skipped (so open-interval endpoints are harmless).
    Each bracket is refined with Brent's method to ``tol``.
    """
    if not hi > lo:
        raise ValueError("need lo < hi")
    n = max(2, int(math.ceil((hi - lo) / step)))
    ts = np.linspace(lo, hi, n + 1)

    def safe(t):
        try:
            with np.errstate(all="ignore"):
                v = float(f(t))
        except (ZeroDivisionError, ValueError, OverflowError, ArithmeticError):
            return math.nan
        return v if math.isfinite(v) else math.nan

    vals = [safe(t) for t in ts]
    roots = []
    for i in range(len(ts)):
        if vals[i] == 0.0:
            roots.append(float(ts[i]))
        if i + 1 < len(ts) and vals[i] * vals[i + 1] < 0:
            roots.append(float(brentq(f, ts[i], ts[i + 1], xtol=tol, rtol=4 * np.finfo(float).eps)))
    out = []
    for r in sorted(roots):
        if not out or r - out[-1] > 10 * tol:
            out.append(r)
    return out
