"""Named parameter sets used by the CLI and the test suite.

``eq5``      explicit rank-three CHM with x = y = z = 1.
``lemma2i``  quarter-pi angle triple, Fourier v, identity w: a CHM whose
             four blocks are three-wise linearly independent.
``lemma2ii`` equal-angle family with one phase split: the leftmost 3x3 of
             the angle matrix has rank two (not a CHM; Schmidt rank two).
``example1`` the maximal-entangling-power controlled unitary (beta1 =
             gamma1 = beta3 = 0); emitted with identity v and w since the
             gate itself is the object of interest.
"""

from __future__ import annotations

import math

import numpy as np

from .chm import FOURIER3, Eq5Params, H3Params, build_eq5, build_h3, h3_params
from .entangle import ACOS_M13, ControlledUnitary, build_uab

__all__ = [
    "eq5_params",
    "lemma2i_params",
    "lemma2ii_params",
    "example1_params",
    "example1_angles",
    "example1_unitary",
    "preset_params",
    "preset_matrix",
    "PRESET_NAMES",
]

PRESET_NAMES = ("eq5", "lemma2i", "lemma2ii", "example1")


def eq5_params() -> Eq5Params:
    return Eq5Params(1.0, 1.0, 1.0)


def lemma2i_params() -> H3Params:
    return h3_params(
        alpha=(math.pi / 4, math.pi / 4, math.pi / 4),
        beta=(0.0, math.pi / 6, math.pi / 3),
        gamma=(0.0, math.pi / 3, 2 * math.pi / 3),
        v=FOURIER3,
        w=np.eye(3, dtype=complex),
    )


def lemma2ii_params() -> H3Params:
    # Equal angles, first two levels share both phases, third splits them.
    return h3_params(
        alpha=(1.0, 1.0, 1.0),
        beta=(0.0, 0.0, math.pi / 2),
        gamma=(0.0, 0.0, math.pi / 3),
        v=np.eye(3, dtype=complex),
        w=np.eye(3, dtype=complex),
    )


def example1_angles() -> tuple[tuple[float, float, float], ...]:
    alpha = (math.pi / 3, math.pi / 3, 0.0)
    beta = (0.0, (-ACOS_M13) % (2 * math.pi), 0.0)
    gamma = (0.0, ACOS_M13, math.pi)
    return (alpha, beta, gamma)


def example1_params() -> H3Params:
    alpha, beta, gamma = example1_angles()
    return h3_params(alpha, beta, gamma, v=np.eye(3, dtype=complex), w=np.eye(3, dtype=complex))


def example1_unitary() -> ControlledUnitary:
    return build_uab(*example1_angles())


def preset_params(name: str) -> H3Params | Eq5Params:
    if name == "eq5":
        return eq5_params()
    if name == "lemma2i":
        return lemma2i_params()
    if name == "lemma2ii":
        return lemma2ii_params()
    if name == "example1":
        return example1_params()
    raise KeyError(f"unknown preset {name!r}; expected one of {PRESET_NAMES}")


def preset_matrix(name: str) -> np.ndarray:
    p = preset_params(name)
    if isinstance(p, Eq5Params):
        return build_eq5(p)
    return build_h3(p)
