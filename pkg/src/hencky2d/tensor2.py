"""Closed-form 2x2 kinematics.

Everything a planar finite-strain code needs from linear algebra, in exact
closed form: singular value decomposition, polar decomposition, the matrix
logarithm of a symmetric positive definite matrix, and the 2D deviatoric
projection.  No iterative solvers: the 2x2 case reduces to stable quadratic
root finding and rotation angles.

All functions accept a single ``(2, 2)`` array or a stacked ``(..., 2, 2)``
array and broadcast over the leading axes.  They are pure and never modify
their inputs, so they are safe to call concurrently.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "NonInvertible",
    "NotSPD",
    "SpectralData",
    "rot",
    "det2",
    "trace2",
    "frob2",
    "dev2",
    "svd2",
    "polar_right",
    "sym_eig2",
    "log_spd",
]

# absolute tolerance on ||X - X^T|| before a matrix is rejected as asymmetric
SYM_TOL = 1e-10


class NonInvertible(ValueError):
    """Raised when an operation requires det F > 0 and the input fails it."""


class NotSPD(ValueError):
    """Raised when a matrix is not symmetric positive definite."""


def rot(theta):
    """Rotation matrix (or stack of them) for angle(s) ``theta``."""
    theta = np.asarray(theta, dtype=float)
    c, s = np.cos(theta), np.sin(theta)
    return np.stack(
        [np.stack([c, -s], axis=-1), np.stack([s, c], axis=-1)], axis=-2
    )


def _as_mat2(X):
    X = np.asarray(X, dtype=float)
    if X.shape[-2:] != (2, 2):
        raise ValueError(f"expected trailing shape (2, 2), got {X.shape}")
    return X


def det2(F):
    """Determinant of a 2x2 matrix (stack)."""
    F = _as_mat2(F)
    return F[..., 0, 0] * F[..., 1, 1] - F[..., 0, 1] * F[..., 1, 0]


def trace2(X):
    """Trace of a 2x2 matrix (stack)."""
    X = _as_mat2(X)
    return X[..., 0, 0] + X[..., 1, 1]


def frob2(X):
    """Frobenius norm of a 2x2 matrix (stack)."""
    X = _as_mat2(X)
    return np.sqrt(np.sum(X * X, axis=(-2, -1)))


def dev2(X):
    """Trace-free part ``X - tr(X)/2 * I`` of a 2x2 matrix (stack)."""
    X = _as_mat2(X)
    out = X.copy()
    half_tr = 0.5 * trace2(X)
    out[..., 0, 0] -= half_tr
    out[..., 1, 1] -= half_tr
    return out


@dataclass(frozen=True)
class SpectralData:
    """Ordered singular values and rotation factors of a 2x2 matrix.

    The factors reconstruct the input as
    ``left_rot @ diag(lambda1, lambda2) @ right_rot`` with
    ``lambda1 >= lambda2 >= 0``.  ``left_rot`` is always a proper rotation;
    ``right_rot`` is orthogonal and carries the sign of the determinant
    (a reflection when det < 0).
    """

    lambda1: np.ndarray
    lambda2: np.ndarray
    left_rot: np.ndarray
    right_rot: np.ndarray

    def reconstruct(self):
        """Reassemble the decomposed matrix."""
        d = np.zeros(self.left_rot.shape, dtype=float)
        d[..., 0, 0] = self.lambda1
        d[..., 1, 1] = self.lambda2
        return self.left_rot @ d @ self.right_rot


def svd2(F) -> SpectralData:
    """Closed-form singular value decomposition of a 2x2 matrix (stack).

    Works for any finite matrix; a singular input yields ``lambda2 = 0``.
    For equal singular values the rotation ambiguity is resolved towards
    the identity (the identity matrix decomposes into identity factors).

    Parameters
    ----------
    F : array_like, shape (..., 2, 2)

    Returns
    -------
    SpectralData
    """
    F = _as_mat2(F)
    if not np.all(np.isfinite(F)):
        raise ValueError("svd2 requires finite entries")
    a, b = F[..., 0, 0], F[..., 0, 1]
    c, d = F[..., 1, 0], F[..., 1, 1]
    # split into conformal and anti-conformal parts; their magnitudes give
    # the singular values without cancellation
    e, f = 0.5 * (a + d), 0.5 * (a - d)
    g, h = 0.5 * (c + b), 0.5 * (c - b)
    q = np.hypot(e, h)
    r = np.hypot(f, g)
    s1 = q + r
    s2 = q - r  # negative exactly when det F < 0
    a1 = np.arctan2(g, f)
    a2 = np.arctan2(h, e)
    left = rot(0.5 * (a2 + a1))
    right = rot(0.5 * (a2 - a1))
    # absorb the determinant sign into the right factor so both singular
    # values are nonnegative
    sign = np.where(s2 < 0.0, -1.0, 1.0)
    right = right.copy()
    right[..., 1, :] *= sign[..., None]
    return SpectralData(
        lambda1=s1, lambda2=np.abs(s2), left_rot=left, right_rot=right
    )


def polar_right(F):
    """Right polar decomposition ``F = rotation @ stretch``.

    Parameters
    ----------
    F : array_like, shape (..., 2, 2)
        Must have positive determinant.

    Returns
    -------
    rotation : ndarray
        Proper rotation factor.
    stretch : ndarray
        Symmetric positive definite right stretch ``sqrt(F^T F)``.

    Raises
    ------
    NonInvertible
        If any determinant is <= 0.
    """
    F = _as_mat2(F)
    if np.any(det2(F) <= 0.0):
        raise NonInvertible("polar decomposition requires det F > 0")
    s = svd2(F)
    rotation = s.left_rot @ s.right_rot
    d = np.zeros(F.shape, dtype=float)
    d[..., 0, 0] = s.lambda1
    d[..., 1, 1] = s.lambda2
    rt = np.swapaxes(s.right_rot, -1, -2)
    stretch = rt @ d @ s.right_rot
    # exact symmetry is cheap insurance for downstream log_spd calls
    stretch = 0.5 * (stretch + np.swapaxes(stretch, -1, -2))
    return rotation, stretch


def sym_eig2(S):
    """Eigendecomposition of a symmetric 2x2 matrix (stack).

    Returns ``(e1, e2, theta)`` with ``e1 >= e2`` and eigenvector basis
    ``rot(theta)`` (first column belongs to ``e1``).  Ties resolve to
    ``theta = 0``.
    """
    S = _as_mat2(S)
    m = 0.5 * (S[..., 0, 0] + S[..., 1, 1])
    half_gap = 0.5 * (S[..., 0, 0] - S[..., 1, 1])
    rad = np.hypot(half_gap, S[..., 0, 1])
    theta = 0.5 * np.arctan2(2.0 * S[..., 0, 1], 2.0 * half_gap)
    return m + rad, m - rad, theta


def log_spd(U):
    """Matrix logarithm of a symmetric positive definite 2x2 matrix (stack).

    The input is symmetrized before decomposition; asymmetry beyond
    ``SYM_TOL`` (absolute, Frobenius) or a non-positive eigenvalue raises
    :class:`NotSPD`.  Satisfies ``expm(log_spd(U)) == U`` to round-off.
    """
    U = _as_mat2(U)
    asym = frob2(U - np.swapaxes(U, -1, -2))
    if np.any(asym > SYM_TOL):
        raise NotSPD(f"asymmetry {np.max(asym):.3e} exceeds {SYM_TOL:.1e}")
    S = 0.5 * (U + np.swapaxes(U, -1, -2))
    e1, e2, theta = sym_eig2(S)
    if np.any(e2 <= 0.0):
        raise NotSPD("matrix has a non-positive eigenvalue")
    v = rot(theta)
    d = np.zeros(S.shape, dtype=float)
    d[..., 0, 0] = np.log(e1)
    d[..., 1, 1] = np.log(e2)
    out = v @ d @ np.swapaxes(v, -1, -2)
    return 0.5 * (out + np.swapaxes(out, -1, -2))
