"""Special-orthogonal reduction of rank <= 2 correlation matrices.

Any such 3x3 matrix M admits R M Q^T = diag(s, 0, t) with R and Q proper
rotations. An ordinary SVD delivers orthogonal factors; because the third
singular value is zero, flipping the sign of their last row costs nothing,
which lets us force both determinants to +1, and a fixed permutation then
moves the zero into the middle slot. The rotations double as certificates:
conjugating the coupling operator by their spin representations maps it to
the two-parameter canonical form.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bell import MeasurementScenario, canonical_operator, correlation_matrix
from .errors import RankDeficiencyError
from .tolerances import TOL

# sign flip on the third coordinate; absorbed by a zero third singular value
_J = np.diag([1.0, 1.0, -1.0])
# proper rotation with P diag(s, t, 0) P^T = diag(s, 0, t)
_P = np.array([[1.0, 0.0, 0.0], [0.0, 0.0, 1.0], [0.0, -1.0, 0.0]])


@dataclass(frozen=True)
class CanonicalReduction:
    """Certificate that R M Q^T = diag(s, 0, t) with det R = det Q = 1 and s >= t >= 0."""

    R: np.ndarray
    Q: np.ndarray
    s: float
    t: float

    def diagonal_form(self) -> np.ndarray:
        return np.diag([self.s, 0.0, self.t])

    def certificate(self, M) -> dict:
        """JSON-ready certificate with the residuals a verifier needs."""
        M = np.asarray(M, dtype=float)
        return {
            "R": self.R,
            "Q": self.Q,
            "s": self.s,
            "t": self.t,
            "sum_of_squares": self.s**2 + self.t**2,
            "reconstruction_residual": float(
                np.linalg.norm(self.R @ M @ self.Q.T - self.diagonal_form())
            ),
            "det_R_residual": float(abs(np.linalg.det(self.R) - 1.0)),
            "det_Q_residual": float(abs(np.linalg.det(self.Q) - 1.0)),
            "orthogonality_R_residual": float(np.linalg.norm(self.R.T @ self.R - np.eye(3))),
            "orthogonality_Q_residual": float(np.linalg.norm(self.Q.T @ self.Q - np.eye(3))),
        }


def svd3(M) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Singular value decomposition of a real 3x3 matrix as O1 M O2^T = diag(sigma).

    Returns (O1, O2, sigma) with sigma sorted descending and O1, O2 orthogonal
    (determinants not fixed). Signs are made deterministic by pointing the
    largest-magnitude entry of each left singular vector in the positive
    direction.
    """
    M = np.asarray(M, dtype=float)
    if M.shape != (3, 3):
        raise ValueError(f"expected a 3x3 matrix, got shape {M.shape}")
    U, sigma, Vt = np.linalg.svd(M)
    for k in range(3):
        lead = int(np.argmax(np.abs(U[:, k])))
        if U[lead, k] < 0.0:
            U[:, k] = -U[:, k]
            Vt[k, :] = -Vt[k, :]
    return U.T, Vt, sigma


def canonical_reduction(M, rank_tol: float = TOL.rank) -> CanonicalReduction:
    """Reduce a rank <= 2 matrix to diag(s, 0, t) by proper rotations.

    Raises RankDeficiencyError when the third singular value exceeds
    ``rank_tol``: a genuinely rank-3 matrix cannot absorb the determinant
    fix.
    """
    M = np.asarray(M, dtype=float)
    O1, O2, sigma = svd3(M)
    if sigma[2] >= rank_tol:
        raise RankDeficiencyError(float(sigma[2]))
    s, t = float(sigma[0]), float(sigma[1])
    if np.linalg.det(O1) < 0.0:
        O1 = _J @ O1
    if np.linalg.det(O2) < 0.0:
        O2 = _J @ O2
    return CanonicalReduction(R=_P @ O1, Q=_P @ O2, s=s, t=t)


def reduced_bell(sc: MeasurementScenario) -> tuple[float, float, np.ndarray]:
    """The canonical parameters of a scenario and its reduced Bell operator.

    The returned operator s S_x (x) S_x + t S_z (x) S_z is unitarily
    equivalent to the scenario's Bell operator, so their spectra agree.
    """
    reduction = canonical_reduction(correlation_matrix(sc))
    return reduction.s, reduction.t, canonical_operator(reduction.s, reduction.t)
