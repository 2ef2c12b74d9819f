import math

import numpy as np
import pytest
from scipy.linalg import polar

from chm_mub.chm import (
    INV_SQRT6,
    NotCHMError,
    NotUnitaryError,
    build_eq5,
    build_h3,
    four_zero_v_params,
    monomial_v_params,
)
from chm_mub.kernels import trio_penalty_angles
from chm_mub.mub import (
    appendix_c_scan,
    cos_sq_theta2,
    cos_theta1,
    exclusion_scan,
    is_trio,
    trio_exclusion_scan,
    trio_extension_search,
    trio_penalty,
    unbiased,
)
from chm_mub.presets import lemma2i_params


def fourier6():
    w = np.exp(2j * np.pi / 6)
    j, k = np.meshgrid(np.arange(6), np.arange(6), indexing="ij")
    return (w ** (j * k)) / np.sqrt(6)


def random_chm_like(seed):
    """Random-phase matrix re-unitarized by polar projection."""
    rng = np.random.default_rng(seed)
    m = np.exp(2j * np.pi * rng.uniform(size=(6, 6))) / np.sqrt(6)
    u, _ = polar(m)
    return u


def test_unbiased_identity_vs_eq5():
    chk = unbiased(np.eye(6, dtype=complex), build_eq5())
    assert chk and chk.max_deviation < 1e-12


def test_unbiased_identity_vs_identity_false():
    assert not unbiased(np.eye(6, dtype=complex), np.eye(6, dtype=complex))


def test_unbiased_identity_vs_fourier():
    assert unbiased(np.eye(6, dtype=complex), fourier6())


def test_unbiased_symmetry():
    a, b = fourier6(), build_eq5()
    assert unbiased(a, b).max_deviation == unbiased(b, a).max_deviation


def test_unbiased_rejects_non_unitary():
    with pytest.raises(NotUnitaryError):
        unbiased(np.eye(6) * 2.0, np.eye(6))


def test_exclusion_scan_eq5_real_block():
    findings = exclusion_scan(build_eq5())
    hits = [f for f in findings if f.kind == "real_3x2" and f.rows == (4, 5, 6) and f.cols == (1, 2)]
    assert hits and hits[0].residual < 1e-12


def test_exclusion_scan_lemma2i_subunitary():
    findings = exclusion_scan(build_h3(lemma2i_params()))
    assert any(f.kind == "subunitary_3x3" for f in findings)


def test_exclusion_scan_monomial_v_instances():
    rng = np.random.default_rng(61)
    for _ in range(5):
        m = build_h3(monomial_v_params(rng))
        findings = exclusion_scan(m)
        assert any(f.kind == "subunitary_3x3" for f in findings)


def test_exclusion_scan_four_zero_v_rank_one():
    rng = np.random.default_rng(67)
    for _ in range(5):
        m = build_h3(four_zero_v_params(rng))
        findings = exclusion_scan(m)
        assert any(f.kind == "rank1_2x3" for f in findings)


def test_exclusion_scan_random_chm_typically_empty():
    for seed in (0, 1, 2):
        m = random_chm_like(seed)
        first = exclusion_scan(m)
        second = exclusion_scan(m)
        assert first == second
        assert first == []


def test_exclusion_scan_permutation_invariance():
    m = build_eq5()
    rng = np.random.default_rng(71)
    perm = rng.permutation(6)
    pm = m[np.ix_(perm, perm)]
    base = exclusion_scan(m)
    moved = exclusion_scan(pm)
    assert len(base) == len(moved)
    # the permuted index sets must match up
    inv = {int(old) + 1: new + 1 for new, old in enumerate(perm)}
    remapped = {
        (f.kind, tuple(sorted(inv[r] for r in f.rows)), tuple(sorted(inv[c] for c in f.cols)))
        for f in base
    }
    got = {(f.kind, f.rows, f.cols) for f in moved}
    assert remapped == got


def test_strict_real_mode_narrows():
    m = build_eq5()
    loose = exclusion_scan(m)
    strict = exclusion_scan(m, strict_real=True)
    kinds = ("real_3x2", "real_2x3")
    loose_real = {(f.kind, f.rows, f.cols) for f in loose if f.kind in kinds}
    strict_real_set = {(f.kind, f.rows, f.cols) for f in strict if f.kind in kinds}
    assert strict_real_set <= loose_real
    assert ("real_3x2", (4, 5, 6), (1, 2)) in strict_real_set


def test_is_trio_counterexamples():
    f6 = fourier6()
    assert not is_trio(f6, f6, f6)
    phased = f6 @ np.diag(np.exp(1j * np.arange(6)))
    assert not is_trio(f6, phased, f6)
    assert not is_trio(np.eye(6, dtype=complex), f6, build_eq5())


def test_trio_penalty_hand_value():
    m = build_eq5()
    expected = 36.0 * (1.0 - INV_SQRT6)
    assert abs(trio_penalty(m, m, m) - expected) < 1e-10


def test_trio_penalty_positive_and_consistent_with_is_trio():
    m = build_eq5()
    rng = np.random.default_rng(73)
    from chm_mub.kernels import unitary_from_angles

    for _ in range(5):
        b2 = unitary_from_angles(rng.uniform(0, 2 * np.pi, 36))
        b3 = unitary_from_angles(rng.uniform(0, 2 * np.pi, 36))
        pen = trio_penalty(m, b2, b3)
        assert pen > 0.0
        assert not is_trio(m, b2, b3)


def test_trio_search_zero_restarts_returns_seed_point():
    m = build_eq5()
    res = trio_extension_search(m, restarts=0, max_iters=100, seed=42)
    rng = np.random.default_rng(42)
    x0 = rng.uniform(0.0, 2.0 * np.pi, 72)
    assert res.best_penalty == trio_penalty_angles(m, x0[:36], x0[36:])
    assert res.iterations == 0
    assert res.restarts_used == 0


def test_trio_search_deterministic():
    m = build_eq5()
    a = trio_extension_search(m, restarts=3, max_iters=300, seed=7)
    b = trio_extension_search(m, restarts=3, max_iters=300, seed=7)
    assert a.best_penalty == b.best_penalty
    assert np.array_equal(a.best_candidates[0], b.best_candidates[0])
    assert a.iterations == b.iterations


def test_trio_search_threads_match_serial():
    m = build_eq5()
    serial = trio_extension_search(m, restarts=4, max_iters=200, seed=3, threads=1)
    threaded = trio_extension_search(m, restarts=4, max_iters=200, seed=3, threads=4)
    assert serial.best_penalty == threaded.best_penalty


def test_trio_search_candidates_unitary():
    m = build_eq5()
    res = trio_extension_search(m, restarts=2, max_iters=200, seed=5)
    for cand in res.best_candidates:
        assert np.max(np.abs(cand @ cand.conj().T - np.eye(6))) < 1e-12


def test_trio_search_validation():
    with pytest.raises(NotCHMError):
        trio_extension_search(np.eye(6, dtype=complex), restarts=1, max_iters=10, seed=0)
    with pytest.raises(ValueError):
        trio_extension_search(build_eq5(), restarts=-1, max_iters=10, seed=0)
    with pytest.raises(ValueError):
        trio_extension_search(build_eq5(), restarts=1, max_iters=-5, seed=0)


def test_trio_exclusion_scan_products():
    f6 = fourier6()
    out = trio_exclusion_scan([np.eye(6, dtype=complex), f6], scan_products=True)
    labels = [label for label, _ in out]
    assert labels == ["member_1", "member_2", "product_1_2"]


def test_cos_theta_spot_values():
    # independent closed-form values at (pi/6, pi/3)
    assert abs(cos_theta1(np.pi / 6, np.pi / 3) - (-2.0 * math.sqrt(3.0) / 9.0)) < 1e-12
    assert abs(cos_sq_theta2(np.pi / 6, np.pi / 3) - (-23.0 / 24.0)) < 1e-12


def test_cos_theta1_term_by_term_oracle():
    # re-assemble the closed form with plain-python scalars
    a1, a2 = np.pi / 6, np.pi / 3
    c1 = math.cos(2 * a1)
    c2 = math.cos(2 * a2)
    num = -((c1 - c2) ** 2)
    num += 6.0 * c1 * c1 * math.cos(a2) ** 2
    num += 6.0 * math.cos(a1) ** 2 * c2 * c2
    den = 12.0 * math.cos(a1) * c1 * math.cos(a2) * c2
    assert abs(cos_theta1(a1, a2) - num / den) < 1e-14
    num2 = (-2.0 + c1) ** 2 / math.cos(a2) ** 2
    num2 += 8.0 * c1 / c2 * (4.0 + c1 * (2.0 + 1.0 / c2))
    den2 = 24.0 * (1.0 + 3.0 * c1 + 3.0 * c2)
    assert abs(cos_sq_theta2(a1, a2) - num2 / den2) < 1e-14


def test_appendix_c_scan_minima_positive():
    rep = appendix_c_scan(200)
    assert rep.no_solutions
    assert rep.min_dist_to_minus1_1 > 0.0
    assert rep.min_dist_to_0_0 > 0.0
    # frozen regression values for the default margin
    assert abs(rep.min_dist_to_minus1_1 - 0.002330469214822912) < 1e-9
    assert abs(rep.min_dist_to_0_0 - 0.2528670324215908) < 1e-9


def test_appendix_c_scan_rejects_small_grid():
    with pytest.raises(ValueError):
        appendix_c_scan(9)


def test_appendix_c_boundary_margin():
    # shrinking the margin moves the (-1,1) minimum but keeps it positive
    rep = appendix_c_scan(50, margin=1e-4)
    assert rep.min_dist_to_minus1_1 > 0.0
    assert rep.min_dist_to_0_0 > 0.0
