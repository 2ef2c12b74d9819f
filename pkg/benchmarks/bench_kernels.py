"""Benchmark the compiled kernel against the numpy fallback.

Times the two hot operations of the trio search (unitary synthesis from
angles and the full penalty evaluation) plus an end-to-end slice of the
search itself.

Run:  python benchmarks/bench_kernels.py [--number 2000]
"""

import argparse
import timeit

import numpy as np

from chm_mub import kernels
from chm_mub.presets import preset_matrix


def bench_callable(fn, number):
    total = timeit.timeit(fn, number=number)
    return total / number


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--number", type=int, default=2000, help="timing repetitions per kernel call")
    args = parser.parse_args()

    mods = kernels.backends()
    if "cython" not in mods:
        print("compiled backend not available; build it with `pip install -e .`")
    m = preset_matrix("eq5")
    rng = np.random.default_rng(0)
    angles = rng.uniform(0, 2 * np.pi, 36)
    angles2 = rng.uniform(0, 2 * np.pi, 36)

    rows = []
    for op_name, make in (
        ("unitary_from_angles", lambda mod: (lambda: mod.unitary_from_angles(angles))),
        ("trio_penalty_angles", lambda mod: (lambda: mod.trio_penalty_angles(m, angles, angles2))),
    ):
        timings = {}
        for backend, mod in mods.items():
            timings[backend] = bench_callable(make(mod), args.number)
        rows.append((op_name, timings))

    print(f"{'operation':<22} " + " ".join(f"{b + ' (us)':>14}" for b in mods))
    for op_name, timings in rows:
        print(f"{op_name:<22} " + " ".join(f"{timings[b] * 1e6:>14.2f}" for b in mods))
        if "python" in timings and "cython" in timings:
            print(f"{'':<22} speedup: {timings['python'] / timings['cython']:.1f}x")

    # end-to-end: a short search under each backend (same seed, same work)
    import os

    print("\ntrio_extension_search, 2 restarts x 500 iterations:")
    for backend in mods:
        if backend == "python":
            os.environ["CHM_MUB_NO_EXT"] = "1"
        else:
            os.environ.pop("CHM_MUB_NO_EXT", None)
        import importlib

        import chm_mub.kernels as kmod
        import chm_mub.mub as mubmod

        importlib.reload(kmod)
        importlib.reload(mubmod)
        t0 = timeit.default_timer()
        res = mubmod.trio_extension_search(m, restarts=2, max_iters=500, seed=1)
        dt = timeit.default_timer() - t0
        print(f"  {backend:<8} {dt:.3f}s  (best penalty {res.best_penalty:.6f})")
    os.environ.pop("CHM_MUB_NO_EXT", None)


if __name__ == "__main__":
    main()
