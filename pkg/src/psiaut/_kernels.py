"""Hot numeric kernels, in numba and pure-numpy flavours.

Set ``PSIAUT_DISABLE_NUMBA=1`` to force the numpy implementations (also used
automatically when numba cannot be imported).  Both flavours share one
signature and are cross-checked in the test suite; ``benchmarks/`` times them.

Spec data is passed as flat arrays (see ``psi_model.spec_arrays``):
interior zeros ``zi`` with multiplicities ``mi``, boundary roots ``zb`` with
multiplicities ``mb``, atoms ``za`` with weights ``wa``.
"""

import os

import numpy as np

try:
    from numba import njit
    _HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    _HAVE_NUMBA = False

USE_NUMBA = _HAVE_NUMBA and os.environ.get("PSIAUT_DISABLE_NUMBA", "0").lower() not in ("1", "true", "yes")
BACKEND = "numba" if USE_NUMBA else "numpy"


# -- log|psi| ----------------------------------------------------------------

def _log_abs_psi_numpy(z, zi, mi, zb, mb, za, wa):
    z = np.asarray(z, dtype=np.complex128)
    out = np.zeros(z.shape, dtype=np.float64)
    with np.errstate(divide="ignore"):
        for k in range(zi.shape[0]):
            out += mi[k] * (np.log(np.abs(zi[k] - z)) - np.log(np.abs(1.0 - np.conj(zi[k]) * z)))
        for k in range(zb.shape[0]):
            out += mb[k] * np.log(np.abs(z - zb[k]))
    for k in range(za.shape[0]):
        d = z - za[k]
        out -= wa[k] * (1.0 - (z.real**2 + z.imag**2)) / (d.real**2 + d.imag**2)
    return out


def _log_abs_psi_loop(z, zi, mi, zb, mb, za, wa):
    n = z.shape[0]
    out = np.zeros(n, dtype=np.float64)
    for j in range(n):
        zj = z[j]
        s = 0.0
        # half-logs of squared moduli: one log per factor and no hypot
        for k in range(zi.shape[0]):
            u = zi[k] - zj
            v = 1.0 - np.conj(zi[k]) * zj
            s += 0.5 * mi[k] * np.log((u.real * u.real + u.imag * u.imag) / (v.real * v.real + v.imag * v.imag))
        for k in range(zb.shape[0]):
            u = zj - zb[k]
            s += 0.5 * mb[k] * np.log(u.real * u.real + u.imag * u.imag)
        r2 = zj.real * zj.real + zj.imag * zj.imag
        for k in range(za.shape[0]):
            d = zj - za[k]
            s -= wa[k] * (1.0 - r2) / (d.real * d.real + d.imag * d.imag)
        out[j] = s
    return out


# -- psi'/psi ----------------------------------------------------------------

def _log_derivative_numpy(z, zi, mi, zb, mb, za, wa):
    z = np.asarray(z, dtype=np.complex128)
    out = np.zeros(z.shape, dtype=np.complex128)
    for k in range(zi.shape[0]):
        a = zi[k]
        out += mi[k] * (abs(a) ** 2 - 1.0) / ((a - z) * (1.0 - np.conj(a) * z))
    for k in range(zb.shape[0]):
        out += mb[k] / (z - zb[k])
    for k in range(za.shape[0]):
        out -= 2.0 * wa[k] * za[k] / (z - za[k]) ** 2
    return out


def _log_derivative_loop(z, zi, mi, zb, mb, za, wa):
    n = z.shape[0]
    out = np.zeros(n, dtype=np.complex128)
    for j in range(n):
        zj = z[j]
        s = 0j
        for k in range(zi.shape[0]):
            a = zi[k]
            s += mi[k] * (abs(a) ** 2 - 1.0) / ((a - zj) * (1.0 - np.conj(a) * zj))
        for k in range(zb.shape[0]):
            s += mb[k] / (zj - zb[k])
        for k in range(za.shape[0]):
            d = zj - za[k]
            s -= 2.0 * wa[k] * za[k] / (d * d)
        out[j] = s
    return out


# -- symbolic acceptance over a batch of automorphisms -------------------------

def _accept_mask_numpy(etas, centers, zi, mi, zb, mb, za, wa, tol, rtol):
    etas = np.asarray(etas, dtype=np.complex128)[:, None]
    centers = np.asarray(centers, dtype=np.complex128)[:, None]
    ok = np.ones(etas.shape[0], dtype=np.bool_)

    def images(pts):
        return etas * (centers - pts[None, :]) / (1.0 - np.conj(centers) * pts[None, :])

    for pts, mult in ((zi, mi), (zb, mb)):
        if pts.shape[0] == 0:
            continue
        img = images(pts)
        close = np.abs(img[:, :, None] - pts[None, None, :]) <= tol
        same = mult[:, None] == mult[None, :]
        ok &= np.all(np.any(close & same[None, :, :], axis=2), axis=1)
    if za.shape[0]:
        img = images(za)
        dnorm = (1.0 - np.abs(centers) ** 2) / np.abs(1.0 - np.conj(centers) * za[None, :]) ** 2
        close = np.abs(img[:, :, None] - za[None, None, :]) <= tol
        expected = wa[None, :, None] * dnorm[:, :, None]
        weight_ok = np.abs(wa[None, None, :] - expected) <= rtol * wa[None, None, :]
        ok &= np.all(np.any(close & weight_ok, axis=2), axis=1)
    return ok


def _accept_mask_loop(etas, centers, zi, mi, zb, mb, za, wa, tol, rtol):
    n = etas.shape[0]
    ok = np.ones(n, dtype=np.bool_)
    for j in range(n):
        eta = etas[j]
        a = centers[j]
        ab = np.conj(a)
        good = True
        for i in range(zi.shape[0]):
            img = eta * (a - zi[i]) / (1.0 - ab * zi[i])
            hit = False
            for k in range(zi.shape[0]):
                if abs(img - zi[k]) <= tol and mi[k] == mi[i]:
                    hit = True
                    break
            if not hit:
                good = False
                break
        if good:
            for i in range(zb.shape[0]):
                img = eta * (a - zb[i]) / (1.0 - ab * zb[i])
                hit = False
                for k in range(zb.shape[0]):
                    if abs(img - zb[k]) <= tol and mb[k] == mb[i]:
                        hit = True
                        break
                if not hit:
                    good = False
                    break
        if good:
            for i in range(za.shape[0]):
                den = 1.0 - ab * za[i]
                img = eta * (a - za[i]) / den
                dnorm = (1.0 - abs(a) ** 2) / abs(den) ** 2
                hit = False
                for k in range(za.shape[0]):
                    if abs(img - za[k]) <= tol and abs(wa[k] - wa[i] * dnorm) <= rtol * wa[k]:
                        hit = True
                        break
                if not hit:
                    good = False
                    break
        ok[j] = good
    return ok


if _HAVE_NUMBA:
    _log_abs_psi_numba = njit(cache=True)(_log_abs_psi_loop)
    _log_derivative_numba = njit(cache=True)(_log_derivative_loop)
    _accept_mask_numba = njit(cache=True)(_accept_mask_loop)

    def _flat(fn):
        def wrapper(z, *args):
            z = np.asarray(z, dtype=np.complex128)
            return fn(np.ascontiguousarray(z.ravel()), *args).reshape(z.shape)
        wrapper.__name__ = fn.__name__
        return wrapper

    NUMBA_KERNELS = {
        "log_abs_psi": _flat(_log_abs_psi_numba),
        "log_derivative": _flat(_log_derivative_numba),
        "accept_mask": lambda etas, centers, *rest: _accept_mask_numba(
            np.ascontiguousarray(etas, dtype=np.complex128),
            np.ascontiguousarray(centers, dtype=np.complex128), *rest),
    }
else:  # pragma: no cover
    NUMBA_KERNELS = None

NUMPY_KERNELS = {
    "log_abs_psi": _log_abs_psi_numpy,
    "log_derivative": _log_derivative_numpy,
    "accept_mask": _accept_mask_numpy,
}

_ACTIVE = NUMBA_KERNELS if USE_NUMBA else NUMPY_KERNELS
log_abs_psi = _ACTIVE["log_abs_psi"]
log_derivative = _ACTIVE["log_derivative"]
accept_mask = _ACTIVE["accept_mask"]
