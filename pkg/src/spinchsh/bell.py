"""CHSH Bell operators for two qutrits and their correlation-matrix form.

A measurement scenario is four unit directions (a, a', b, b'). Its Bell
operator is the four-term CHSH combination of spin observables on the
9-dimensional product space; equivalently it is the coupling operator of
the 3x3 correlation matrix M = a (b + b')^T + a' (b - b')^T.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .spin import check_unit_vector, spin_along, spin_generators

_GENERATORS = np.stack(spin_generators())


@dataclass(frozen=True)
class MeasurementScenario:
    """Four measurement directions, two per party."""

    a: np.ndarray
    a_prime: np.ndarray
    b: np.ndarray
    b_prime: np.ndarray

    def __post_init__(self):
        for name in ("a", "a_prime", "b", "b_prime"):
            object.__setattr__(self, name, check_unit_vector(getattr(self, name)))

    def directions(self) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        return self.a, self.a_prime, self.b, self.b_prime


def correlation_matrix(sc: MeasurementScenario) -> np.ndarray:
    """The 3x3 matrix a (b + b')^T + a' (b - b')^T coupling the parties' generators.

    A sum of two rank-one terms, so rank at most 2; its squared Frobenius
    norm is 4 for any scenario because b + b' and b - b' are orthogonal.
    """
    return np.outer(sc.a, sc.b + sc.b_prime) + np.outer(sc.a_prime, sc.b - sc.b_prime)


def coupling_operator(M) -> np.ndarray:
    """sum_ij M_ij S_i (x) S_j on the two-qutrit space, for any real 3x3 M.

    The Kronecker factors are ordered with party A first, so the composite
    basis index is 3*m + n for A level m and B level n.
    """
    M = np.asarray(M, dtype=float)
    if M.shape != (3, 3):
        raise ValueError(f"expected a 3x3 matrix, got shape {M.shape}")
    K = np.einsum("ij,iab,jcd->acbd", M, _GENERATORS, _GENERATORS)
    return np.ascontiguousarray(K.reshape(9, 9))


def bell_operator(sc: MeasurementScenario) -> np.ndarray:
    """The CHSH Bell operator S(a)S(b) + S(a)S(b') + S(a')S(b) - S(a')S(b')."""
    sa, sap = spin_along(sc.a), spin_along(sc.a_prime)
    sb, sbp = spin_along(sc.b), spin_along(sc.b_prime)
    return (
        np.kron(sa, sb) + np.kron(sa, sbp) + np.kron(sap, sb) - np.kron(sap, sbp)
    )


def canonical_operator(s: float, t: float) -> np.ndarray:
    """The two-parameter canonical form s S_x (x) S_x + t S_z (x) S_z."""
    return coupling_operator(np.diag([float(s), 0.0, float(t)]))
