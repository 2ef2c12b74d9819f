"""Entangling power of the qubit-qutrit controlled unitaries.

A controlled unitary here is a triple of 2x2 unitaries applied to the
qubit side conditioned on the qutrit computational basis.  The reduced
state of the qubit-plus-ancilla pair after acting on a product input has
rank at most three, so the output entanglement is capped at log2(3) ebits;
this module computes the reduction, its entropy, the orthogonality
certificate for reaching the cap, a multistart maximizer over product
inputs, and the one-parameter gate family behind the sweep curves.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .numerics import DEFAULT_TOL, Tolerances, as_cmatrix, dagger, kron, unitarity_residual
from .chm import NotUnitaryError
from .search import multistart_minimize

__all__ = [
    "LOG2_3",
    "ACOS_M13",
    "SWEEP_C",
    "ControlledUnitary",
    "ProductInput",
    "EntanglementResult",
    "SweepSpec",
    "SweepRow",
    "build_uab",
    "controlled_from_matrices",
    "as_matrix6",
    "rho_aa",
    "entropy",
    "aa_entanglement",
    "max_condition_residuals",
    "ep_lower_bound",
    "ep_optimize",
    "uab_family_x",
    "sweep",
    "figure_specs",
    "sweep_csv_lines",
    "FIGURE_D_TRIPLES",
]

LOG2_3 = math.log2(3.0)
# Phase offset that makes consecutive control branches orthogonal on the
# balanced input: arccos(-1/3).
ACOS_M13 = math.acos(-1.0 / 3.0)
# Input-state coefficients fixed for the sweep curves (balanced qubit pair).
SWEEP_C = (1.0 / math.sqrt(2.0), 0.0, 1.0 / math.sqrt(2.0))


def _angle_gate(a: float, b: float, g: float) -> np.ndarray:
    return np.array(
        [
            [math.cos(a), np.exp(1j * g) * math.sin(a)],
            [np.exp(1j * b) * math.sin(a), -np.exp(1j * (b + g)) * math.cos(a)],
        ],
        dtype=complex,
    )


@dataclass(frozen=True)
class ControlledUnitary:
    """Three 2x2 unitaries, one per control level, with optional source
    angles recording how they were generated."""

    u1: np.ndarray
    u2: np.ndarray
    u3: np.ndarray
    source_angles: tuple[tuple[float, float, float], ...] | None = None

    def __post_init__(self) -> None:
        for name in ("u1", "u2", "u3"):
            u = as_cmatrix(getattr(self, name), 2, 2)
            res = unitarity_residual(u)
            if res >= DEFAULT_TOL.unitarity_tol:
                raise NotUnitaryError(f"{name} is not unitary (residual {res:.3e})")
            object.__setattr__(self, name, u)
        if self.source_angles is not None:
            angles = tuple(tuple(float(x) for x in triple) for triple in self.source_angles)
            if len(angles) != 3 or any(len(t) != 3 for t in angles):
                raise ValueError("source_angles must be (alpha, beta, gamma) triples")
            object.__setattr__(self, "source_angles", angles)
            alpha, beta, gamma = angles
            for k, u in enumerate(self.units):
                tmpl = _angle_gate(alpha[k], beta[k], gamma[k])
                if np.max(np.abs(u - tmpl)) >= 1e-12:
                    raise ValueError(f"u{k + 1} does not match its angle template")

    @property
    def units(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        return (self.u1, self.u2, self.u3)


def build_uab(alpha, beta, gamma) -> ControlledUnitary:
    """Controlled unitary from three (alpha, beta, gamma) angle levels."""
    alpha = tuple(float(a) for a in alpha)
    beta = tuple(float(b) for b in beta)
    gamma = tuple(float(g) for g in gamma)
    us = [_angle_gate(alpha[k], beta[k], gamma[k]) for k in range(3)]
    return ControlledUnitary(us[0], us[1], us[2], source_angles=(alpha, beta, gamma))


def controlled_from_matrices(u1, u2, u3) -> ControlledUnitary:
    """Controlled unitary from explicit 2x2 unitaries (no angle record)."""
    return ControlledUnitary(u1, u2, u3, source_angles=None)


def as_matrix6(u: ControlledUnitary, ordering: str = "ab") -> np.ndarray:
    """6x6 matrix sum_k U_k kron |k><k| ("ab") or its block-diagonal
    B-major reordering ("ba")."""
    out = np.zeros((6, 6), dtype=complex)
    for k, uk in enumerate(u.units):
        proj = np.zeros((3, 3), dtype=complex)
        proj[k, k] = 1.0
        if ordering == "ab":
            out += kron(uk, proj)
        elif ordering == "ba":
            out += kron(proj, uk)
        else:
            raise ValueError(f"ordering must be 'ab' or 'ba', got {ordering!r}")
    return out


@dataclass(frozen=True)
class ProductInput:
    """Normalized product-input coefficients.

    The qubit-plus-ancilla factor is c1|11> + c2|12> + c3|22> (c1, c2
    nonnegative, c3 complex); the control-side weights d are nonnegative
    with unit square sum.
    """

    c1: float
    c2: float
    c3: complex
    d1: float
    d2: float
    d3: float

    def __post_init__(self) -> None:
        for name in ("c1", "c2", "d1", "d2", "d3"):
            val = float(getattr(self, name))
            object.__setattr__(self, name, val)
            if val < -1e-15:
                raise ValueError(f"{name} must be nonnegative, got {val}")
        object.__setattr__(self, "c3", complex(self.c3))
        cnorm = self.c1**2 + self.c2**2 + abs(self.c3) ** 2
        dnorm = self.d1**2 + self.d2**2 + self.d3**2
        if abs(cnorm - 1.0) >= 1e-12 or abs(dnorm - 1.0) >= 1e-12:
            raise ValueError(f"input not normalized: |c|^2 = {cnorm}, |d|^2 = {dnorm}")

    @property
    def c(self) -> tuple[float, float, complex]:
        return (self.c1, self.c2, self.c3)

    @property
    def d(self) -> tuple[float, float, float]:
        return (self.d1, self.d2, self.d3)

    def delta_vector(self) -> np.ndarray:
        """Coefficients in the 4-dim qubit-ancilla basis |11>,|12>,|21>,|22>."""
        return np.array([self.c1, self.c2, 0.0, self.c3], dtype=complex)


def input_from_spherical(a: float, b: float, psi: float, p: float, q: float) -> ProductInput:
    """Map five free angles onto a valid ProductInput.

    Absolute values keep the nonnegativity constraints without any
    projection step, so optimizers can roam over all of R^5.
    """
    c1 = abs(math.cos(a))
    c2 = abs(math.sin(a) * math.cos(b))
    c3m = abs(math.sin(a) * math.sin(b))
    d1 = abs(math.cos(p))
    d2 = abs(math.sin(p) * math.cos(q))
    d3 = abs(math.sin(p) * math.sin(q))
    return ProductInput(c1, c2, c3m * np.exp(1j * psi), d1, d2, d3)


def rho_aa(u: ControlledUnitary, inp: ProductInput) -> np.ndarray:
    """Reduced density matrix of the qubit-ancilla pair after the gate.

    rho = sum_k d_k^2 (U_k kron I) |delta><delta| (U_k kron I)^dag.  The
    control-side ancilla states drop out because the control index is
    orthonormal, so they are not represented.  The result provably has a
    zero eigenvalue (three vectors cannot span C^4).
    """
    delta = inp.delta_vector()
    eye2 = np.eye(2, dtype=complex)
    rho = np.zeros((4, 4), dtype=complex)
    for d_k, u_k in zip(inp.d, u.units):
        vec = kron(u_k, eye2) @ delta
        rho += (d_k**2) * np.outer(vec, np.conj(vec))
    return rho


def entropy(r: np.ndarray, tol: Tolerances = DEFAULT_TOL) -> float:
    """Von Neumann entropy in base 2 of a density matrix.

    Eigenvalues below ``tol.eig_clamp`` contribute zero (x log x -> 0).
    """
    r = as_cmatrix(r)
    if r.shape[0] != r.shape[1]:
        raise ValueError("density matrix must be square")
    herm = float(np.linalg.norm(r - dagger(r)))
    if herm >= tol.unitarity_tol:
        raise ValueError(f"density matrix is not Hermitian (residual {herm:.3e})")
    tr = float(np.trace(r).real)
    if abs(tr - 1.0) >= 1e-10:
        raise ValueError(f"density matrix trace must be 1, got {tr}")
    ev = np.linalg.eigvalsh(r)
    if ev[0] < -tol.eig_clamp:
        raise ValueError(f"density matrix is not PSD (min eigenvalue {ev[0]:.3e})")
    ev = ev[ev > tol.eig_clamp]
    return float(-np.sum(ev * np.log2(ev)))


@dataclass(frozen=True)
class EntanglementResult:
    """Eigenvalues (ascending) of the 4x4 reduction and their entropy."""

    eigenvalues: tuple[float, float, float, float]
    entropy_ebits: float


def aa_entanglement(u: ControlledUnitary, inp: ProductInput, tol: Tolerances = DEFAULT_TOL) -> EntanglementResult:
    """Full spectrum view of rho_aa plus its entropy."""
    r = rho_aa(u, inp)
    ev = np.linalg.eigvalsh(r)
    clamped = ev[ev > tol.eig_clamp]
    ent = float(-np.sum(clamped * np.log2(clamped))) if clamped.size else 0.0
    return EntanglementResult(eigenvalues=tuple(float(x) for x in ev), entropy_ebits=ent)


def max_condition_residuals(u: ControlledUnitary, inp: ProductInput) -> tuple[float, float, float]:
    """Moduli of the three pairwise overlaps <delta| U_j^dag U_k kron I |delta>.

    All three vanish exactly when the gate reaches log2(3) ebits on this
    input (the branch images are pairwise orthogonal).
    """
    delta = inp.delta_vector()
    eye2 = np.eye(2, dtype=complex)
    u1, u2, u3 = u.units
    out = []
    for ua, ub in ((u2, u1), (u3, u2), (u1, u3)):
        op = kron(dagger(ua) @ ub, eye2)
        out.append(float(abs(np.conj(delta) @ (op @ delta))))
    return tuple(out)


def ep_lower_bound(u: ControlledUnitary, inp: ProductInput, tol: Tolerances = DEFAULT_TOL) -> float:
    """Output entanglement for one product input: a lower bound on the
    entangling power."""
    return entropy(rho_aa(u, inp), tol)


def ep_optimize(
    u: ControlledUnitary,
    restarts: int = 8,
    seed: int = 42,
    tol: Tolerances = DEFAULT_TOL,
    max_iters: int = 4000,
    threads: int = 1,
) -> tuple[float, ProductInput]:
    """Multistart derivative-free maximization of the entangling-power
    lower bound over product inputs.

    Five free parameters (spherical coordinates for both normalized
    coefficient vectors plus the phase of c3).  Deterministic for a fixed
    seed; the returned value never exceeds log2(3) + 1e-9.
    """
    if restarts < 1:
        raise ValueError(f"restarts must be >= 1, got {restarts}")

    def objective(x: np.ndarray) -> float:
        inp = input_from_spherical(*x)
        return -ep_lower_bound(u, inp, tol)

    starts = []
    for r in range(restarts):
        rng = np.random.default_rng(seed + r)
        x0 = np.concatenate(
            [rng.uniform(0, np.pi / 2, 2), rng.uniform(0, 2 * np.pi, 1), rng.uniform(0, np.pi / 2, 2)]
        )
        starts.append(x0)
    best_fun, best_x, _ = multistart_minimize(objective, starts, max_iters=max_iters, threads=threads)
    best_inp = input_from_spherical(*best_x)
    return -best_fun, best_inp


@dataclass(frozen=True)
class SweepSpec:
    """Grid and gate parameters for one sweep curve."""

    x_grid: tuple[float, ...]
    beta1: float
    beta3: float
    d: tuple[float, float, float]
    gamma1: float = 0.0
    alpha3_mode: str = "chm"

    def __post_init__(self) -> None:
        grid = tuple(float(x) for x in self.x_grid)
        if any(b - a < -1e-15 for a, b in zip(grid, grid[1:])):
            raise ValueError("x_grid must be sorted ascending")
        if grid and (grid[0] < -np.pi / 6 - 1e-12 or grid[-1] > 1e-12):
            raise ValueError("x_grid must lie within [-pi/6, 0]")
        object.__setattr__(self, "x_grid", grid)
        d = tuple(float(v) for v in self.d)
        if len(d) != 3 or any(v < 0 for v in d) or abs(sum(v * v for v in d) - 1.0) >= 1e-9:
            raise ValueError(f"d must be nonnegative and normalized, got {d}")
        object.__setattr__(self, "d", d)
        if self.alpha3_mode not in ("chm", "pinned"):
            raise ValueError(f"alpha3_mode must be 'chm' or 'pinned', got {self.alpha3_mode!r}")


@dataclass(frozen=True)
class SweepRow:
    x: float
    value_ebits: float


def uab_family_x(x: float, spec: SweepSpec) -> ControlledUnitary:
    """Gate family behind the sweep curves.

    The first two levels carry pi/3 + x; the third is re-solved from the
    CHM constraint cos^2 a1 + cos^2 a2 + cos^2 a3 = 3/2 (mode "chm") or
    pinned at zero (mode "pinned").  Phase relations follow the maximal
    example: beta2 = beta1 - arccos(-1/3), gamma2 = gamma1 + arccos(-1/3),
    gamma3 = beta1 + gamma1 - beta3 - pi.
    """
    x = float(x)
    if x < -np.pi / 6 - 1e-12 or x > 1e-12:
        raise ValueError(f"x must lie in [-pi/6, 0], got {x}")
    a = np.pi / 3 + x
    if spec.alpha3_mode == "pinned":
        a3 = 0.0
    else:
        s = 1.5 - 2.0 * math.cos(a) ** 2
        # snap the representation error of pi/3 so x = 0 lands exactly on
        # the maximal-example gate (a3 = 0) and x = -pi/6 on a3 = pi/2
        if s >= 1.0 - 1e-13:
            a3 = 0.0
        elif s <= 0.0:
            a3 = math.pi / 2
        else:
            a3 = math.acos(math.sqrt(s))
    beta1, beta3, gamma1 = spec.beta1, spec.beta3, spec.gamma1
    alpha = (a, a, a3)
    beta = (beta1 % (2 * np.pi), (beta1 - ACOS_M13) % (2 * np.pi), beta3 % (2 * np.pi))
    gamma = (
        gamma1 % (2 * np.pi),
        (gamma1 + ACOS_M13) % (2 * np.pi),
        (beta1 + gamma1 - beta3 - np.pi) % (2 * np.pi),
    )
    return build_uab(alpha, beta, gamma)


def sweep(spec: SweepSpec, tol: Tolerances = DEFAULT_TOL) -> list[SweepRow]:
    """Entanglement lower bound along the grid at the fixed balanced input."""
    rows = []
    for x in spec.x_grid:
        u = uab_family_x(x, spec)
        inp = ProductInput(SWEEP_C[0], SWEEP_C[1], SWEEP_C[2], *spec.d)
        rows.append(SweepRow(x=float(x), value_ebits=ep_lower_bound(u, inp, tol)))
    return rows


# Labels stay comma-free so the sweep CSV needs no quoting.
_D_UNIFORM = (1.0 / math.sqrt(3.0),) * 3
FIGURE_D_TRIPLES: tuple[tuple[str, tuple[float, float, float]], ...] = (
    ("d=(1/sqrt(3); 1/sqrt(3); 1/sqrt(3))", _D_UNIFORM),
    ("d=(1/2; 1/2; sqrt(2)/2)", (0.5, 0.5, math.sqrt(2.0) / 2.0)),
    ("d=(1/sqrt(5); 1/sqrt(5); sqrt(3)/sqrt(5))", (1 / math.sqrt(5), 1 / math.sqrt(5), math.sqrt(3.0 / 5.0))),
    ("d=(1/sqrt(6); 1/sqrt(6); 2/sqrt(6))", (1 / math.sqrt(6), 1 / math.sqrt(6), 2 / math.sqrt(6))),
    ("d=(1/sqrt(3); 1/sqrt(6); 1/sqrt(2))", (1 / math.sqrt(3), 1 / math.sqrt(6), 1 / math.sqrt(2))),
    ("d=(1/sqrt(7); sqrt(2)/sqrt(7); 2/sqrt(7))", (1 / math.sqrt(7), math.sqrt(2.0 / 7.0), 2 / math.sqrt(7))),
    ("d=(1/(2sqrt(2)); 1/2; sqrt(5)/(2sqrt(2)))", (1 / (2 * math.sqrt(2)), 0.5, math.sqrt(5.0) / (2 * math.sqrt(2)))),
)

_FIG3_BETA3 = (
    ("beta3=0", 0.0),
    ("beta3=pi/6", math.pi / 6),
    ("beta3=pi/4", math.pi / 4),
    ("beta3=pi/3", math.pi / 3),
    ("beta3=pi/2", math.pi / 2),
    ("beta3=pi", math.pi),
    ("beta3=3pi/2", 3 * math.pi / 2),
)
_FIG4_BETA1 = (
    ("beta1=0", 0.0),
    ("beta1=pi/6", math.pi / 6),
    ("beta1=pi/4", math.pi / 4),
    ("beta1=pi/2", math.pi / 2),
)


def figure_specs(figure: int, grid_points: int = 61, alpha3_mode: str = "chm") -> list[tuple[str, SweepSpec]]:
    """Labelled sweep specs for the three figure presets.

    Figure 3: beta1 = pi, uniform d, seven beta3 values.
    Figure 4: beta3 = 0, uniform d, four beta1 values.
    Figure 5: beta1 = beta3 = 0, seven d triples.
    """
    grid = tuple(np.linspace(-np.pi / 6, 0.0, grid_points))
    if figure == 3:
        return [
            (label, SweepSpec(grid, beta1=math.pi, beta3=b3, d=_D_UNIFORM, alpha3_mode=alpha3_mode))
            for label, b3 in _FIG3_BETA3
        ]
    if figure == 4:
        return [
            (label, SweepSpec(grid, beta1=b1, beta3=0.0, d=_D_UNIFORM, alpha3_mode=alpha3_mode))
            for label, b1 in _FIG4_BETA1
        ]
    if figure == 5:
        return [
            (label, SweepSpec(grid, beta1=0.0, beta3=0.0, d=d, alpha3_mode=alpha3_mode))
            for label, d in FIGURE_D_TRIPLES
        ]
    raise ValueError(f"figure must be 3, 4 or 5, got {figure}")


def sweep_csv_lines(curves: list[tuple[str, list[SweepRow]]]) -> list[str]:
    """Sweep CSV: header plus one row per grid point per curve, floats with
    12 significant digits.  Labels must not contain commas (no quoting)."""
    lines = ["x,value_ebits,curve_label"]
    for label, rows in curves:
        if "," in label or "\n" in label:
            raise ValueError(f"curve label {label!r} would break the CSV schema")
        for row in rows:
            lines.append(f"{row.x:.12g},{row.value_ebits:.12g},{label}")
    return lines
