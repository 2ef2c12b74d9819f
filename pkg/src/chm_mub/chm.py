"""Complex Hadamard matrices of order six with qubit-qutrit block structure.

Builders for the three-angle-family 6x6 unitaries, the explicit rank-three
CHM example, block/realignment machinery (Schmidt rank), equivalence
transforms, and structural validators for the zero-pattern families of the
inner 3x3 unitary factor.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .numerics import (
    DEFAULT_TOL,
    DimensionMismatchError,
    Tolerances,
    as_cmatrix,
    dagger,
    kron,
    numerical_rank,
    unitarity_residual,
)

__all__ = [
    "OMEGA",
    "FOURIER3",
    "INV_SQRT6",
    "NotUnitaryError",
    "NotCHMError",
    "H3Params",
    "h3_params",
    "Eq5Params",
    "BlockDecomposition",
    "ChmCheck",
    "StructureReport",
    "middle_factor",
    "build_h3",
    "build_h4",
    "build_eq5",
    "eq5_matrix_raw",
    "split_blocks",
    "assemble_blocks",
    "realignment",
    "schmidt_rank",
    "is_chm",
    "is_monomial_unitary",
    "random_monomial_unitary",
    "equivalence_transform",
    "adjoint_params",
    "permute_params",
    "structure_report",
    "monomial_v_params",
    "four_zero_v_params",
]

OMEGA = np.exp(2j * np.pi / 3)
FOURIER3 = np.array(
    [[1, 1, 1], [1, OMEGA, OMEGA**2], [1, OMEGA**2, OMEGA]], dtype=complex
) / np.sqrt(3)
INV_SQRT6 = 1.0 / np.sqrt(6.0)

# Entries of a 3x3 unitary below this are classified as structural zeros.
V_ZERO_TOL = 1e-9


class NotUnitaryError(ValueError):
    """A factor required to be unitary is not, beyond tolerance."""


class NotCHMError(ValueError):
    """Input fails the complex-Hadamard predicate where one is required."""


def _check_unitary(m: np.ndarray, name: str, tol: Tolerances) -> np.ndarray:
    m = as_cmatrix(m)
    if m.shape[0] != m.shape[1]:
        raise NotUnitaryError(f"{name} must be square, got {m.shape}")
    res = unitarity_residual(m)
    if res >= tol.unitarity_tol:
        raise NotUnitaryError(f"{name} is not unitary (residual {res:.3e})")
    return m


@dataclass(frozen=True)
class H3Params:
    """Parameters of the three-angle 6x6 family: two 3x3 unitaries plus
    per-level angle triples.

    ``alpha`` entries live in [0, pi/2]; ``beta``/``gamma`` are phases in
    [0, 2pi).  The first column of ``w`` must be entrywise nonnegative real
    (use :func:`h3_params` to absorb stray phases into ``v`` automatically).
    """

    alpha: tuple[float, float, float]
    beta: tuple[float, float, float]
    gamma: tuple[float, float, float]
    v: np.ndarray
    w: np.ndarray

    def __post_init__(self) -> None:
        for name in ("alpha", "beta", "gamma"):
            vals = tuple(float(x) for x in getattr(self, name))
            if len(vals) != 3 or not all(np.isfinite(vals)):
                raise ValueError(f"{name} must be 3 finite reals")
            object.__setattr__(self, name, vals)
        if not all(-1e-12 <= a <= np.pi / 2 + 1e-12 for a in self.alpha):
            raise ValueError(f"alpha must lie in [0, pi/2], got {self.alpha}")
        object.__setattr__(self, "v", _check_unitary(self.v, "v", DEFAULT_TOL))
        object.__setattr__(self, "w", _check_unitary(self.w, "w", DEFAULT_TOL))
        if self.v.shape != (3, 3) or self.w.shape != (3, 3):
            raise DimensionMismatchError("v and w must be 3x3")
        col = self.w[:, 0]
        if np.max(np.abs(col.imag)) >= DEFAULT_TOL.modulus_tol or np.min(col.real) <= -DEFAULT_TOL.modulus_tol:
            raise ValueError("first column of w must be nonnegative real; use h3_params() to normalize")


def h3_params(alpha, beta, gamma, v, w) -> H3Params:
    """Validated constructor that enforces the w-column convention.

    Phases of w's first column are absorbed into v (legal because the
    middle factor commutes with I_2 kron diag), and beta/gamma are wrapped
    into [0, 2pi).
    """
    v = _check_unitary(v, "v", DEFAULT_TOL)
    w = _check_unitary(w, "w", DEFAULT_TOL)
    col = w[:, 0]
    phases = np.where(np.abs(col) > 1e-14, col / np.where(np.abs(col) > 1e-14, np.abs(col), 1.0), 1.0)
    d = np.diag(phases)
    return H3Params(
        alpha=tuple(float(a) for a in alpha),
        beta=tuple(float(b) % (2 * np.pi) for b in beta),
        gamma=tuple(float(g) % (2 * np.pi) for g in gamma),
        v=v @ d,
        w=dagger(d) @ w,
    )


@dataclass(frozen=True)
class Eq5Params:
    """Unit-modulus parameters (x, y, z) of the explicit rank-three CHM."""

    x: complex = 1.0
    y: complex = 1.0
    z: complex = 1.0

    def __post_init__(self) -> None:
        for name in ("x", "y", "z"):
            val = complex(getattr(self, name))
            object.__setattr__(self, name, val)
            if abs(abs(val) - 1.0) >= DEFAULT_TOL.modulus_tol:
                raise ValueError(f"{name} must have modulus 1, got |{name}| = {abs(val)}")
        if abs(self.z / self.y + np.conj(self.z) / self.x) <= 1e-9:
            raise ValueError("degenerate parameters: z/y = -conj(z)/x")


@dataclass(frozen=True)
class BlockDecomposition:
    """The four 3x3 corner blocks of a 6x6 matrix (row-major order)."""

    c: np.ndarray
    d: np.ndarray
    e: np.ndarray
    f: np.ndarray

    @property
    def blocks(self) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        return (self.c, self.d, self.e, self.f)


@dataclass(frozen=True)
class ChmCheck:
    """CHM predicate outcome with its two diagnostics."""

    ok: bool
    unitarity_residual: float
    modulus_deviation: float

    def __bool__(self) -> bool:
        return self.ok


def middle_factor(alpha, beta, gamma) -> np.ndarray:
    """Sparse 6x6 middle factor: level j mixes coordinates j and j+3."""
    m = np.zeros((6, 6), dtype=complex)
    for j in range(3):
        a, b, g = float(alpha[j]), float(beta[j]), float(gamma[j])
        m[j, j] = np.cos(a)
        m[j, 3 + j] = np.exp(1j * g) * np.sin(a)
        m[3 + j, j] = np.exp(1j * b) * np.sin(a)
        m[3 + j, 3 + j] = -np.exp(1j * (b + g)) * np.cos(a)
    return m


def build_h3(p: H3Params) -> np.ndarray:
    """Assemble (I2 kron v) @ middle_factor @ (I2 kron w); always unitary."""
    eye2 = np.eye(2, dtype=complex)
    return kron(eye2, p.v) @ middle_factor(p.alpha, p.beta, p.gamma) @ kron(eye2, p.w)


def build_h4(p: H3Params) -> np.ndarray:
    """The 3x4 angle matrix, row j = (cos a_j, e^{ib_j} sin a_j,
    e^{ig_j} sin a_j, -e^{i(b_j+g_j)} cos a_j)."""
    rows = []
    for a, b, g in zip(p.alpha, p.beta, p.gamma):
        rows.append(
            [
                np.cos(a),
                np.exp(1j * b) * np.sin(a),
                np.exp(1j * g) * np.sin(a),
                -np.exp(1j * (b + g)) * np.cos(a),
            ]
        )
    return np.array(rows, dtype=complex)


def build_eq5(p: Eq5Params = Eq5Params()) -> np.ndarray:
    """The explicit order-six CHM of Schmidt rank three."""
    return eq5_matrix_raw(p.x, p.y, p.z)


def eq5_matrix_raw(x: complex, y: complex, z: complex) -> np.ndarray:
    """The explicit matrix without the rank-three degeneracy guard.

    Unitary with constant entry moduli for any unit-modulus phases; the
    Schmidt rank drops below three when z/y = -conj(z)/x.
    """
    w = OMEGA
    zc = np.conj(z)
    m = np.array(
        [
            [y, -y, z, 1, 1, 1],
            [y * w**2, -y * w**2, z * w, 1, 1, w],
            [y * w, -y * w, z * w**2, 1, 1, w**2],
            [1, 1, 1, x, -x, -zc],
            [1, 1, w, x * w**2, -x * w**2, -zc * w],
            [1, 1, w**2, x * w, -x * w, -zc * w**2],
        ],
        dtype=complex,
    )
    return m / np.sqrt(6.0)


def split_blocks(m: np.ndarray) -> BlockDecomposition:
    """Corner 3x3 blocks (upper-left, upper-right, lower-left, lower-right)."""
    m = as_cmatrix(m, 6, 6)
    return BlockDecomposition(
        c=m[:3, :3].copy(), d=m[:3, 3:].copy(), e=m[3:, :3].copy(), f=m[3:, 3:].copy()
    )


def assemble_blocks(b: BlockDecomposition) -> np.ndarray:
    """Inverse of split_blocks."""
    m = np.zeros((6, 6), dtype=complex)
    m[:3, :3] = b.c
    m[:3, 3:] = b.d
    m[3:, :3] = b.e
    m[3:, 3:] = b.f
    return m


def realignment(m: np.ndarray) -> np.ndarray:
    """4x9 matrix whose rows are the vectorized corner blocks."""
    b = split_blocks(m)
    return np.array([blk.reshape(-1) for blk in b.blocks])


def schmidt_rank(m: np.ndarray, tol: Tolerances = DEFAULT_TOL) -> int:
    """Number of linearly independent corner blocks (realignment rank)."""
    return numerical_rank(realignment(m), tol)


def is_chm(m: np.ndarray, tol: Tolerances = DEFAULT_TOL) -> ChmCheck:
    """Unitary with every entry modulus within tolerance of 1/sqrt(6)."""
    m = as_cmatrix(m, 6, 6)
    ures = unitarity_residual(m)
    mdev = float(np.max(np.abs(np.abs(m) - INV_SQRT6)))
    return ChmCheck(ok=ures < tol.unitarity_tol and mdev < tol.modulus_tol, unitarity_residual=ures, modulus_deviation=mdev)


def is_monomial_unitary(m: np.ndarray, tol: Tolerances = DEFAULT_TOL) -> bool:
    """Exactly one nonzero (unit-modulus) entry per row and column."""
    m = as_cmatrix(m)
    if m.shape[0] != m.shape[1]:
        return False
    mask = np.abs(m) > V_ZERO_TOL
    if not (np.all(mask.sum(axis=0) == 1) and np.all(mask.sum(axis=1) == 1)):
        return False
    if np.max(np.abs(np.abs(m[mask]) - 1.0)) >= tol.modulus_tol:
        return False
    return unitarity_residual(m) < tol.unitarity_tol


def random_monomial_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    """Random permutation matrix with random unit-modulus entries."""
    perm = rng.permutation(n)
    phases = np.exp(2j * np.pi * rng.uniform(size=n))
    m = np.zeros((n, n), dtype=complex)
    m[perm, np.arange(n)] = phases
    return m


def equivalence_transform(
    m: np.ndarray,
    p: np.ndarray,
    q: np.ndarray,
    r: np.ndarray,
    s: np.ndarray,
    tol: Tolerances = DEFAULT_TOL,
) -> np.ndarray:
    """(p kron q) @ m @ (r kron s) for monomial unitary factors.

    Preserves both the CHM property and the Schmidt rank.
    """
    m = as_cmatrix(m, 6, 6)
    for name, fac, size in (("p", p, 2), ("q", q, 3), ("r", r, 2), ("s", s, 3)):
        fac = as_cmatrix(fac, size, size)
        if not is_monomial_unitary(fac, tol):
            raise NotUnitaryError(f"factor {name} must be a monomial unitary")
    return kron(p, q) @ m @ kron(r, s)


def adjoint_params(p: H3Params) -> H3Params:
    """Parameters of the conjugate transpose of build_h3(p).

    The middle factor's adjoint swaps the roles of beta and gamma with a
    sign flip, so the adjoint stays inside the family.
    """
    return h3_params(
        alpha=p.alpha,
        beta=tuple(-g for g in p.gamma),
        gamma=tuple(-b for b in p.beta),
        v=dagger(p.w),
        w=dagger(p.v),
    )


def permute_params(p: H3Params, perm) -> H3Params:
    """Relabel the three levels by ``perm`` without changing build_h3(p).

    New level i carries old level perm[i]; v's columns and w's rows move
    with the levels.
    """
    perm = tuple(int(i) for i in perm)
    if sorted(perm) != [0, 1, 2]:
        raise ValueError(f"perm must be a permutation of (0,1,2), got {perm}")
    q = np.zeros((3, 3), dtype=complex)
    for new, old in enumerate(perm):
        q[new, old] = 1.0
    return h3_params(
        alpha=tuple(p.alpha[i] for i in perm),
        beta=tuple(p.beta[i] for i in perm),
        gamma=tuple(p.gamma[i] for i in perm),
        v=p.v @ dagger(q),
        w=q @ p.w,
    )


@dataclass(frozen=True)
class StructureReport:
    """Zero-pattern classification of v plus the matching angle residuals.

    ``g_modulus_residual`` is only meaningful for the one-zero class (None
    otherwise, or when the two relevant cos-2a values coincide and the
    modulus formula degenerates).
    """

    v_zero_count: int
    v_zero_positions: tuple[tuple[int, int], ...]
    v_class: str  # monomial | four_zero | one_zero | no_zero
    alpha_constraints: tuple[tuple[str, float], ...]
    w_form: str  # fourier | conjugate_fourier | general
    g_modulus_residual: float | None


def _dephase(m: np.ndarray) -> np.ndarray:
    """Normalize row phases by the first column, then column phases by the
    first row (zero entries contribute phase 1)."""
    m = m.copy()
    col = m[:, 0]
    rp = np.where(np.abs(col) > 1e-14, np.conj(col) / np.where(np.abs(col) > 1e-14, np.abs(col), 1.0), 1.0)
    m = m * rp[:, None]
    row = m[0, :]
    cp = np.where(np.abs(row) > 1e-14, np.conj(row) / np.where(np.abs(row) > 1e-14, np.abs(row), 1.0), 1.0)
    return m * cp[None, :]


def classify_w_form(w: np.ndarray, atol: float = 1e-8) -> str:
    """Compare w, up to row/column phases, against the two Fourier forms."""
    dw = _dephase(w)
    if np.max(np.abs(dw - FOURIER3)) < atol:
        return "fourier"
    if np.max(np.abs(dw - np.conj(FOURIER3))) < atol:
        return "conjugate_fourier"
    return "general"


def _classify_zero_pattern(v: np.ndarray) -> tuple[int, tuple[tuple[int, int], ...], str]:
    mask = np.abs(v) < V_ZERO_TOL
    positions = tuple((int(i), int(j)) for i, j in zip(*np.nonzero(mask)))
    count = len(positions)
    if count == 6:
        cls = "monomial"
    elif count == 4:
        cls = "four_zero"
    elif count == 1:
        cls = "one_zero"
    elif count == 0:
        cls = "no_zero"
    else:
        # Unreachable for an exactly unitary matrix; tolerate borderline input.
        cls = f"irregular_{count}_zeros"
    return count, positions, cls


def _classify_v_structure(v: np.ndarray, alpha) -> tuple[int, tuple, str, tuple, float | None]:
    """Zero-pattern classification plus the angle residuals it implies.

    Shared by structure_report; split out so tests can exercise the
    classification on bare (v, alpha) pairs without a full CHM.
    """
    count, positions, cls = _classify_zero_pattern(v)
    a1, a2, a3 = (float(a) for a in alpha)
    cos_sq_sum = np.cos(a1) ** 2 + np.cos(a2) ** 2 + np.cos(a3) ** 2
    sum_res = ("cos_sq_alpha_sum_minus_three_halves", abs(cos_sq_sum - 1.5))
    alpha_arr = (a1, a2, a3)
    constraints: list[tuple[str, float]] = []
    g_res: float | None = None

    if cls == "monomial":
        for i in range(3):
            constraints.append((f"alpha{i + 1}_minus_quarter_pi", abs(alpha_arr[i] - np.pi / 4)))
    elif cls == "four_zero":
        mask = np.abs(v) >= V_ZERO_TOL
        iso_rows = [i for i in range(3) if mask[i].sum() == 1]
        if iso_rows:
            iso_col = int(np.nonzero(mask[iso_rows[0]])[0][0])
            pair = [j for j in range(3) if j != iso_col]
            constraints.append(("isolated_alpha_minus_quarter_pi", abs(alpha_arr[iso_col] - np.pi / 4)))
            constraints.append(
                ("alpha_pair_sum_minus_half_pi", abs(alpha_arr[pair[0]] + alpha_arr[pair[1]] - np.pi / 2))
            )
    elif cls == "one_zero":
        (zr, zc) = positions[0]
        others = [j for j in range(3) if j != zc]
        candidates = []
        for i, j in (others, others[::-1]):
            c2i, c2j = np.cos(2 * alpha_arr[i]), np.cos(2 * alpha_arr[j])
            den = c2j - c2i
            if abs(den) < 1e-9:
                continue
            r1 = abs(abs(v[zr, i]) ** 2 - c2j / den)
            r2 = abs(abs(v[zr, j]) ** 2 - (-c2i) / den)
            candidates.append(max(r1, r2))
        g_res = min(candidates) if candidates else None

    constraints.append(sum_res)
    return count, positions, cls, tuple(constraints), g_res


def structure_report(p: H3Params, tol: Tolerances = DEFAULT_TOL) -> StructureReport:
    """Classify v's zero pattern and report the structural residuals the
    pattern forces on a genuine CHM instance.

    Raises NotCHMError when build_h3(p) is not a CHM.
    """
    check = is_chm(build_h3(p), tol)
    if not check:
        raise NotCHMError(
            "structure_report requires a CHM instance "
            f"(unitarity residual {check.unitarity_residual:.3e}, "
            f"modulus deviation {check.modulus_deviation:.3e})"
        )
    count, positions, cls, constraints, g_res = _classify_v_structure(p.v, p.alpha)
    return StructureReport(
        v_zero_count=count,
        v_zero_positions=positions,
        v_class=cls,
        alpha_constraints=constraints,
        w_form=classify_w_form(p.w),
        g_modulus_residual=g_res,
    )


def monomial_v_params(rng: np.random.Generator, conjugate: bool | None = None) -> H3Params:
    """Random CHM instance with monomial v (quarter-pi angle triple).

    Follows the monomial-v recipe: random monomial v, random beta/gamma,
    w = (Fourier or its conjugate) times a diagonal phase.
    """
    v = random_monomial_unitary(3, rng)
    if conjugate is None:
        conjugate = bool(rng.integers(2))
    w1 = np.conj(FOURIER3) if conjugate else FOURIER3
    d1 = np.diag(np.exp(1j * np.concatenate([[0.0], rng.uniform(0, 2 * np.pi, 2)])))
    return h3_params(
        alpha=(np.pi / 4, np.pi / 4, np.pi / 4),
        beta=tuple(rng.uniform(0, 2 * np.pi, 3)),
        gamma=tuple(rng.uniform(0, 2 * np.pi, 3)),
        v=v,
        w=w1 @ d1,
    )


def four_zero_v_params(rng: np.random.Generator, perm=None) -> H3Params:
    """Random CHM instance whose v has exactly four zero entries.

    The 2x2 balanced block sits on levels 2 and 3; the CHM modulus
    conditions then force the isolated level to pi/4 and the paired levels
    to complementary angles, realizable at (0, pi/2).  ``perm`` optionally
    relabels the levels (the built matrix is unchanged by relabeling, but
    the zero pattern of v moves).
    """
    theta = rng.uniform(0, 2 * np.pi)
    g = np.array([[1, np.exp(1j * theta)], [1, -np.exp(1j * theta)]], dtype=complex) / np.sqrt(2)
    v = np.zeros((3, 3), dtype=complex)
    v[0, 0] = np.exp(1j * rng.uniform(0, 2 * np.pi))
    v[1:, 1:] = g
    # a left monomial factor scrambles the rows of v without leaving the
    # family (it is an equivalence transform of the built matrix)
    v = random_monomial_unitary(3, rng) @ v
    w1 = np.conj(FOURIER3) if rng.integers(2) else FOURIER3
    d1 = np.diag(np.exp(1j * np.concatenate([[0.0], rng.uniform(0, 2 * np.pi, 2)])))
    pair = (0.0, np.pi / 2) if rng.integers(2) else (np.pi / 2, 0.0)
    p = h3_params(
        alpha=(np.pi / 4, pair[0], pair[1]),
        beta=tuple(rng.uniform(0, 2 * np.pi, 3)),
        gamma=tuple(rng.uniform(0, 2 * np.pi, 3)),
        v=v,
        w=w1 @ d1,
    )
    if perm is None:
        perm = tuple(rng.permutation(3))
    return permute_params(p, perm)
