"""Multistart derivative-free local search shared by the optimizers.

Thin wrapper around Nelder-Mead simplex minimization (reflection 1.0,
expansion 2.0, contraction 0.5) with deterministic merging: ties between
restarts are broken by restart index, so the outcome does not depend on
worker scheduling.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor

import numpy as np
from scipy.optimize import minimize

__all__ = ["multistart_minimize"]


def _run_one(objective, x0: np.ndarray, max_iters: int):
    if max_iters <= 0:
        return float(objective(np.asarray(x0, dtype=float))), np.asarray(x0, dtype=float), 0
    result = minimize(
        objective,
        np.asarray(x0, dtype=float),
        method="Nelder-Mead",
        options={
            "maxiter": max_iters,
            # scipy's default maxfev (200 * dim) would silently cap long
            # runs before maxiter does
            "maxfev": 4 * max_iters + 1000,
            "xatol": 1e-12,
            "fatol": 1e-14,
            "adaptive": False,
        },
    )
    return float(result.fun), np.asarray(result.x, dtype=float), int(result.nit)


def multistart_minimize(objective, starts, max_iters: int, threads: int = 1):
    """Minimize from every start point; return (best value, best point,
    total iterations).

    ``starts`` is an ordered sequence of start vectors.  The best result is
    the minimum value, with the earliest start winning ties, independent of
    how many worker threads ran.
    """
    starts = [np.asarray(x, dtype=float) for x in starts]
    if threads > 1 and len(starts) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(lambda x0: _run_one(objective, x0, max_iters), starts))
    else:
        results = [_run_one(objective, x0, max_iters) for x0 in starts]
    best_idx = min(range(len(results)), key=lambda i: (results[i][0], i))
    best_fun, best_x, _ = results[best_idx]
    total_iters = sum(r[2] for r in results)
    return best_fun, best_x, total_iters
