import numpy as np
import pytest

from chm_mub import kernels
from chm_mub.chm import build_eq5


def test_backend_reported():
    assert kernels.BACKEND in ("python", "cython")


def test_unitary_from_angles_is_unitary():
    rng = np.random.default_rng(1)
    for _ in range(20):
        u = kernels.unitary_from_angles(rng.uniform(0, 2 * np.pi, 36))
        assert np.max(np.abs(u @ u.conj().T - np.eye(6))) < 1e-13


def test_unitary_from_angles_zero_is_identity():
    u = kernels.unitary_from_angles(np.zeros(36))
    assert np.allclose(u, np.eye(6), atol=1e-15)


def test_backends_agree():
    mods = kernels.backends()
    if len(mods) < 2:
        pytest.skip("compiled backend not built")
    rng = np.random.default_rng(5)
    m = build_eq5()
    for _ in range(10):
        angles = rng.uniform(0, 2 * np.pi, 36)
        angles2 = rng.uniform(0, 2 * np.pi, 36)
        u_py = mods["python"].unitary_from_angles(angles)
        u_cy = mods["cython"].unitary_from_angles(angles)
        assert np.max(np.abs(u_py - u_cy)) < 1e-13
        p_py = mods["python"].trio_penalty_angles(m, angles, angles2)
        p_cy = mods["cython"].trio_penalty_angles(m, angles, angles2)
        assert abs(p_py - p_cy) < 1e-12


def test_kernels_deterministic():
    rng = np.random.default_rng(9)
    angles = rng.uniform(0, 2 * np.pi, 36)
    angles2 = rng.uniform(0, 2 * np.pi, 36)
    m = build_eq5()
    assert np.array_equal(kernels.unitary_from_angles(angles), kernels.unitary_from_angles(angles))
    assert kernels.trio_penalty_angles(m, angles, angles2) == kernels.trio_penalty_angles(m, angles, angles2)


def test_angle_count_validation():
    with pytest.raises(ValueError):
        kernels.unitary_from_angles(np.zeros(35))
    with pytest.raises(ValueError):
        kernels.trio_penalty_angles(build_eq5(), np.zeros(36), np.zeros(12))


def test_penalty_matches_matrix_route():
    from chm_mub.mub import trio_penalty

    rng = np.random.default_rng(13)
    m = build_eq5()
    a2 = rng.uniform(0, 2 * np.pi, 36)
    a3 = rng.uniform(0, 2 * np.pi, 36)
    b2 = kernels.unitary_from_angles(a2)
    b3 = kernels.unitary_from_angles(a3)
    # candidates are exactly unitary, so the matrix-route unitarity terms vanish
    assert abs(kernels.trio_penalty_angles(m, a2, a3) - trio_penalty(m, b2, b3)) < 1e-10
