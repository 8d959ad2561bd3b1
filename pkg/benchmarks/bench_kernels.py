"""Time the numba kernels against their numpy counterparts.

    python benchmarks/bench_kernels.py [--repeat N]

The numba timings exclude the first (compiling) call.  Results are printed
as a small table and checked for agreement between the backends.
"""

import argparse
import time

import numpy as np

from psiaut import _kernels, catalogue
from psiaut.decision import WEIGHT_RTOL
from psiaut.moebius import MATCH_TOL
from psiaut.psi_model import make_spec, spec_arrays


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def workloads():
    rng = np.random.default_rng(0)
    spec = make_spec(
        interior=[(0.3 + 0.1j, 2), (-0.5j, 1), (0.7, 3)],
        boundary=[(1, 2), (1j, 1), (-1, 1)],
        atoms=[(np.exp(0.4j), 1.0), (np.exp(2.5j), 0.5), (-1j, 2.0)],
    )
    z = np.sqrt(rng.uniform(0, 0.99, 1_000_000)) * np.exp(2j * np.pi * rng.uniform(size=1_000_000))
    arrays = spec_arrays(spec)

    r = np.arange(60) / 60
    centers = (r[:, None] * np.exp(2j * np.pi * np.arange(60) / 60)[None, :]).ravel()
    etas = np.exp(2j * np.pi * np.arange(120) / 120)
    E, C = np.tile(etas, centers.size), np.repeat(centers, etas.size)
    grid_spec = spec_arrays(catalogue.SPECS["boundary_pair_equal"])

    return [
        ("log_abs_psi (1e6 points, 9 data)", "log_abs_psi", (z, *arrays)),
        ("log_derivative (1e6 points, 9 data)", "log_derivative", (z, *arrays)),
        ("accept_mask (60x60x120 grid)", "accept_mask", (E, C, *grid_spec, MATCH_TOL, WEIGHT_RTOL)),
    ]


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--repeat", type=int, default=5)
    args = p.parse_args()

    if _kernels.NUMBA_KERNELS is None:
        print("numba is not importable; nothing to compare")
        return
    print(f"{'kernel':40s} {'numpy [s]':>10s} {'numba [s]':>10s} {'speedup':>8s}  agree")
    for label, name, call_args in workloads():
        fast, slow = _kernels.NUMBA_KERNELS[name], _kernels.NUMPY_KERNELS[name]
        fast(*call_args)  # compile
        t_np, a = best_of(lambda: slow(*call_args), args.repeat)
        t_nb, b = best_of(lambda: fast(*call_args), args.repeat)
        agree = np.array_equal(a, b) if a.dtype == bool else bool(np.allclose(a, b, rtol=1e-12, atol=1e-12))
        print(f"{label:40s} {t_np:10.4f} {t_nb:10.4f} {t_np / t_nb:8.1f}  {agree}")


if __name__ == "__main__":
    main()
