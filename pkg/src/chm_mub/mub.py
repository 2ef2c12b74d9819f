"""Unbiasedness predicates and trio-exclusion machinery.

A trio is three order-six CHMs that are pairwise unbiased (together with
the identity they would form four mutually unbiased bases).  Known
necessary conditions exclude candidates containing a real 3x2/2x3
submatrix (up to a global phase), a 3x3 subunitary submatrix, or a
rank-one 2x3 submatrix; this module scans for those patterns, runs a
penalty-based numerical search for trio extensions, and evaluates the
closed-form no-solution scan for the one-zero structural family.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .numerics import DEFAULT_TOL, Tolerances, as_cmatrix, dagger
from .chm import INV_SQRT6, NotCHMError, NotUnitaryError, is_chm
from .kernels import N_ANGLES, trio_penalty_angles, unitary_from_angles
from .search import multistart_minimize

__all__ = [
    "UnbiasedCheck",
    "ExclusionFinding",
    "TrioSearchResult",
    "AppendixCReport",
    "unbiased",
    "exclusion_scan",
    "trio_exclusion_scan",
    "is_trio",
    "trio_penalty",
    "trio_extension_search",
    "cos_theta1",
    "cos_sq_theta2",
    "appendix_c_scan",
]


@dataclass(frozen=True)
class UnbiasedCheck:
    """Unbiasedness predicate outcome with the worst entry deviation."""

    ok: bool
    max_deviation: float

    def __bool__(self) -> bool:
        return self.ok


def unbiased(a: np.ndarray, b: np.ndarray, tol: Tolerances = DEFAULT_TOL) -> UnbiasedCheck:
    """True when every entry of a^dag b has modulus 1/sqrt(6) within
    tolerance.  Both inputs must be unitary."""
    a = as_cmatrix(a, 6, 6)
    b = as_cmatrix(b, 6, 6)
    for name, m in (("a", a), ("b", b)):
        res = float(np.max(np.abs(m @ dagger(m) - np.eye(6))))
        if res >= tol.unitarity_tol:
            raise NotUnitaryError(f"{name} is not unitary (residual {res:.3e})")
    dev = float(np.max(np.abs(np.abs(dagger(a) @ b) - INV_SQRT6)))
    return UnbiasedCheck(ok=dev < tol.modulus_tol, max_deviation=dev)


@dataclass(frozen=True)
class ExclusionFinding:
    """One flagged submatrix; indices are 1-based row/column labels."""

    kind: str  # real_3x2 | real_2x3 | subunitary_3x3 | rank1_2x3 | rank1_3x2
    rows: tuple[int, ...]
    cols: tuple[int, ...]
    residual: float


def _real_residual(sub: np.ndarray, strict: bool) -> float:
    """Distance from 'entrywise real up to one global phase'.

    The least-squares phase doubles every entry phase, so the optimal 2*phi
    is the argument of sum(entry^2); strict mode skips the phase fit.
    """
    if strict:
        return float(np.max(np.abs(sub.imag)))
    s2 = np.sum(sub * sub)
    if abs(s2) < 1e-300:
        return float(np.max(np.abs(sub)))
    phi = 0.5 * np.angle(s2)
    return float(np.max(np.abs((sub * np.exp(-1j * phi)).imag)))


def _subunitary_residual(sub: np.ndarray) -> float:
    gram = sub @ dagger(sub)
    scale = float(np.trace(gram).real) / 3.0
    return float(np.linalg.norm(gram - scale * np.eye(3)))


def _rank1_residual(sub: np.ndarray) -> float:
    s = np.linalg.svd(sub, compute_uv=False)
    if s[0] == 0.0:
        return 0.0
    return float(s[1] / s[0])


def exclusion_scan(
    m: np.ndarray, tol: Tolerances = DEFAULT_TOL, strict_real: bool = False
) -> list[ExclusionFinding]:
    """Enumerate all 3x2/2x3/3x3 submatrices and flag exclusion patterns.

    Real findings use the up-to-global-phase reading by default (the
    strict mode drops the phase fit).  Rank-one 2x3/3x2 findings are
    scanned separately (singular value ratio) and merged into the list.
    Findings come out in deterministic kind-then-index order.
    """
    m = as_cmatrix(m, 6, 6)
    idx = range(6)
    triples = list(combinations(idx, 3))
    pairs = list(combinations(idx, 2))
    findings: list[ExclusionFinding] = []

    for rows in triples:
        for cols in pairs:
            sub = m[np.ix_(rows, cols)]
            res = _real_residual(sub, strict_real)
            if res < tol.modulus_tol:
                findings.append(_finding("real_3x2", rows, cols, res))
    for rows in pairs:
        for cols in triples:
            sub = m[np.ix_(rows, cols)]
            res = _real_residual(sub, strict_real)
            if res < tol.modulus_tol:
                findings.append(_finding("real_2x3", rows, cols, res))
    for rows in triples:
        for cols in triples:
            sub = m[np.ix_(rows, cols)]
            res = _subunitary_residual(sub)
            if res < tol.unitarity_tol:
                findings.append(_finding("subunitary_3x3", rows, cols, res))
    for rows in pairs:
        for cols in triples:
            sub = m[np.ix_(rows, cols)]
            res = _rank1_residual(sub)
            if res < tol.rank_rel_tol:
                findings.append(_finding("rank1_2x3", rows, cols, res))
    for rows in triples:
        for cols in pairs:
            sub = m[np.ix_(rows, cols)]
            res = _rank1_residual(sub)
            if res < tol.rank_rel_tol:
                findings.append(_finding("rank1_3x2", rows, cols, res))
    return findings


def _finding(kind: str, rows, cols, res: float) -> ExclusionFinding:
    return ExclusionFinding(
        kind=kind,
        rows=tuple(r + 1 for r in rows),
        cols=tuple(c + 1 for c in cols),
        residual=res,
    )


def trio_exclusion_scan(
    members: list[np.ndarray],
    tol: Tolerances = DEFAULT_TOL,
    strict_real: bool = False,
    scan_products: bool = False,
) -> list[tuple[str, list[ExclusionFinding]]]:
    """Scan every member and, optionally, every pairwise product a^dag b.

    The product scan is the stronger criterion set; it is off by default.
    """
    out = []
    for i, m in enumerate(members):
        out.append((f"member_{i + 1}", exclusion_scan(m, tol, strict_real)))
    if scan_products:
        for i, j in combinations(range(len(members)), 2):
            prod = dagger(members[i]) @ members[j]
            out.append((f"product_{i + 1}_{j + 1}", exclusion_scan(prod, tol, strict_real)))
    return out


def is_trio(b1: np.ndarray, b2: np.ndarray, b3: np.ndarray, tol: Tolerances = DEFAULT_TOL) -> bool:
    """Three CHMs, pairwise unbiased."""
    bs = [as_cmatrix(b, 6, 6) for b in (b1, b2, b3)]
    if not all(is_chm(b, tol) for b in bs):
        return False
    for i, j in combinations(range(3), 2):
        if not unbiased(bs[i], bs[j], tol):
            return False
    return True


def trio_penalty(m: np.ndarray, b2: np.ndarray, b3: np.ndarray) -> float:
    """Matrix-level trio penalty: squared unbiasedness deviations for all
    three pairs, plus CHM modulus and unitarity violations of the two
    candidates.  Zero exactly when (m, b2, b3) is a trio."""
    m = as_cmatrix(m, 6, 6)
    b2 = as_cmatrix(b2, 6, 6)
    b3 = as_cmatrix(b3, 6, 6)
    pen = 0.0
    for a, b in ((m, b2), (m, b3), (b2, b3)):
        dev = np.abs(dagger(a) @ b) - INV_SQRT6
        pen += float(np.sum(dev * dev))
    for b in (b2, b3):
        dev = np.abs(b) - INV_SQRT6
        pen += float(np.sum(dev * dev))
        pen += float(np.sum(np.abs(b @ dagger(b) - np.eye(6)) ** 2))
    return pen


@dataclass(frozen=True)
class TrioSearchResult:
    """Outcome of the multistart trio-extension search."""

    best_penalty: float
    iterations: int
    restarts_used: int
    best_candidates: tuple[np.ndarray, np.ndarray]


def trio_extension_search(
    m: np.ndarray,
    restarts: int = 20,
    max_iters: int = 2000,
    seed: int = 42,
    tol: Tolerances = DEFAULT_TOL,
    threads: int = 1,
) -> TrioSearchResult:
    """Search for two further CHMs completing ``m`` to a trio.

    Candidates are parametrized by 36 Givens-style angles each (always
    exactly unitary), so the penalty reduces to unbiasedness plus CHM
    modulus terms.  Start points derive from ``seed + restart_index``;
    results merge by minimum penalty with index tie-breaking, making the
    search deterministic for fixed arguments.  ``restarts=0`` evaluates
    the seed point without optimizing.
    """
    m = as_cmatrix(m, 6, 6)
    check = is_chm(m, tol)
    if not check:
        raise NotCHMError(
            f"trio search requires a CHM (unitarity residual {check.unitarity_residual:.3e}, "
            f"modulus deviation {check.modulus_deviation:.3e})"
        )
    if restarts < 0:
        raise ValueError(f"restarts must be >= 0, got {restarts}")
    if max_iters < 0:
        raise ValueError(f"max_iters must be >= 0, got {max_iters}")

    def objective(x: np.ndarray) -> float:
        return trio_penalty_angles(m, x[:N_ANGLES], x[N_ANGLES:])

    def start(r: int) -> np.ndarray:
        rng = np.random.default_rng(seed + r)
        return rng.uniform(0.0, 2.0 * np.pi, 2 * N_ANGLES)

    if restarts == 0:
        x0 = start(0)
        pen = float(objective(x0))
        cands = (unitary_from_angles(x0[:N_ANGLES]), unitary_from_angles(x0[N_ANGLES:]))
        return TrioSearchResult(best_penalty=pen, iterations=0, restarts_used=0, best_candidates=cands)

    starts = [start(r) for r in range(restarts)]
    best_fun, best_x, total_iters = multistart_minimize(objective, starts, max_iters=max_iters, threads=threads)
    cands = (unitary_from_angles(best_x[:N_ANGLES]), unitary_from_angles(best_x[N_ANGLES:]))
    return TrioSearchResult(
        best_penalty=float(best_fun),
        iterations=total_iters,
        restarts_used=restarts,
        best_candidates=cands,
    )


def cos_theta1(alpha1, alpha2):
    """Closed form for the first structural phase cosine of the one-zero
    family (singular where cos 2a vanishes)."""
    a1 = np.asarray(alpha1, dtype=float)
    a2 = np.asarray(alpha2, dtype=float)
    c1 = np.cos(2 * a1)
    c2 = np.cos(2 * a2)
    num = -((c1 - c2) ** 2) + 6 * c1**2 * np.cos(a2) ** 2 + 6 * np.cos(a1) ** 2 * c2**2
    den = 12 * np.cos(a1) * c1 * np.cos(a2) * c2
    return num / den


def cos_sq_theta2(alpha1, alpha2):
    """Closed form for the squared second structural phase cosine of the
    one-zero family."""
    a1 = np.asarray(alpha1, dtype=float)
    a2 = np.asarray(alpha2, dtype=float)
    c1 = np.cos(2 * a1)
    c2 = np.cos(2 * a2)
    num = (-2 + c1) ** 2 / np.cos(a2) ** 2 + 8 * c1 / c2 * (4 + c1 * (2 + 1 / c2))
    den = 24 * (1 + 3 * c1 + 3 * c2)
    return num / den


@dataclass(frozen=True)
class AppendixCReport:
    """Grid-scan evidence that the forbidden phase pairs are never hit."""

    grid_n: int
    margin: float
    min_dist_to_minus1_1: float
    argmin_minus1_1: tuple[float, float]
    min_dist_to_0_0: float
    argmin_0_0: tuple[float, float]

    @property
    def no_solutions(self) -> bool:
        return self.min_dist_to_minus1_1 > 0.0 and self.min_dist_to_0_0 > 0.0


def appendix_c_scan(grid_n: int, margin: float = 1e-3) -> AppendixCReport:
    """Evaluate (cos theta1, cos^2 theta2) over both admissible angle
    regions and report the minimum distances to (-1, 1) and (0, 0).

    Open intervals are shrunk by ``margin`` to stay clear of the boundary
    singularities (cos 2a = 0); nonfinite values from the interior
    singular line count as infinitely far."""
    if grid_n < 10:
        raise ValueError(f"grid_n must be >= 10, got {grid_n}")
    a_low = np.linspace(margin, np.pi / 4 - margin, grid_n)
    a_high = np.linspace(np.pi / 4 + margin, np.pi / 2 - margin, grid_n)

    best_neg = (np.inf, (np.nan, np.nan))
    best_zero = (np.inf, (np.nan, np.nan))
    for a1_axis, a2_axis in ((a_low, a_high), (a_high, a_low)):
        g1, g2 = np.meshgrid(a1_axis, a2_axis, indexing="ij")
        with np.errstate(divide="ignore", invalid="ignore"):
            t1 = cos_theta1(g1, g2)
            t2 = cos_sq_theta2(g1, g2)
        finite = np.isfinite(t1) & np.isfinite(t2)
        t1 = np.where(finite, t1, np.inf)
        t2 = np.where(finite, t2, np.inf)
        with np.errstate(invalid="ignore"):
            d_neg = np.hypot(t1 + 1.0, t2 - 1.0)
            d_zero = np.hypot(t1, t2)
        d_neg = np.where(np.isfinite(d_neg), d_neg, np.inf)
        d_zero = np.where(np.isfinite(d_zero), d_zero, np.inf)
        for dist, best_name in ((d_neg, "neg"), (d_zero, "zero")):
            flat = int(np.argmin(dist))
            loc = (float(g1.reshape(-1)[flat]), float(g2.reshape(-1)[flat]))
            value = float(dist.reshape(-1)[flat])
            if best_name == "neg" and value < best_neg[0]:
                best_neg = (value, loc)
            elif best_name == "zero" and value < best_zero[0]:
                best_zero = (value, loc)

    return AppendixCReport(
        grid_n=grid_n,
        margin=margin,
        min_dist_to_minus1_1=best_neg[0],
        argmin_minus1_1=best_neg[1],
        min_dist_to_0_0=best_zero[0],
        argmin_0_0=best_zero[1],
    )
