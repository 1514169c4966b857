"""Exponentiated logarithmic-strain energy and its stress response.

The stored energy density is

    W(F) = mu/k * exp(k * ||dev2 log U||^2)
         + kappa/(2*k_hat) * exp(k_hat * (log det F)^2)      for det F > 0,
    W(F) = +inf                                              otherwise,

with U the right stretch of F.  The first term depends only on the shape
change F / sqrt(det F), the second only on the area change det F.  The +inf
branch is a value, not an error: minimizers use it as a barrier.

The isochoric exponent is evaluated through the singular values,
``||dev2 log U||^2 = log(lambda1/lambda2)^2 / 2``; the matrix-logarithm
route survives only in the test suite as an independent oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .tensor2 import NonInvertible, det2, svd2

__all__ = [
    "MaterialParams",
    "EnergyValue",
    "iso_invariant",
    "energy",
    "batch_energy",
    "pk1_stress",
    "stress_consistency",
]

# exp() argument beyond this saturates the energy to the +inf marker
EXP_ARG_LIMIT = 700.0
# determinants below this are treated as the barrier to avoid log overflow
DET_FLOOR = 1e-300


@dataclass(frozen=True)
class MaterialParams:
    """Elastic moduli and dimensionless fit parameters.

    ``mu`` and ``kappa`` are the infinitesimal shear and bulk moduli (stress
    units); ``k`` and ``k_hat`` steepen the isochoric and volumetric
    exponentials.  ``lame_lambda`` may be supplied redundantly, in which
    case it must satisfy kappa = (2*mu + 3*lame_lambda)/3.

    Defaults sit exactly at the planar convexity thresholds k = 1/4,
    k_hat = 1/8 with unit moduli.  Instances are immutable.
    """

    mu: float = 1.0
    kappa: float = 1.0
    k: float = 0.25
    k_hat: float = 0.125
    lame_lambda: float | None = None

    def __post_init__(self):
        for name in ("mu", "kappa", "k", "k_hat"):
            if not getattr(self, name) > 0.0:
                raise ValueError(f"{name} must be positive")
        if self.lame_lambda is not None:
            implied = (2.0 * self.mu + 3.0 * self.lame_lambda) / 3.0
            if abs(implied - self.kappa) > 1e-12 * abs(self.kappa):
                raise ValueError(
                    "inconsistent moduli: kappa != (2*mu + 3*lambda)/3"
                )

    @classmethod
    def from_lame(cls, mu, lame_lambda, k=0.25, k_hat=0.125):
        """Build params from the Lame pair, deriving the bulk modulus."""
        kappa = (2.0 * mu + 3.0 * lame_lambda) / 3.0
        return cls(mu=mu, kappa=kappa, k=k, k_hat=k_hat,
                   lame_lambda=lame_lambda)

    def rest_energy(self):
        """Energy of the undeformed state, mu/k + kappa/(2*k_hat)."""
        return self.mu / self.k + self.kappa / (2.0 * self.k_hat)


@dataclass(frozen=True)
class EnergyValue:
    """Energy evaluation with its additive split.

    ``value`` is ``math.inf`` for inadmissible states (det F <= 0 or an
    exponent too large to represent; the latter also sets ``overflow``).
    When finite, ``value == iso_part + vol_part`` with
    ``iso_part >= mu/k`` and ``vol_part >= kappa/(2*k_hat)``.
    """

    value: float
    iso_part: float
    vol_part: float
    overflow: bool = False

    @property
    def finite(self) -> bool:
        return math.isfinite(self.value)


def iso_invariant(F):
    """Squared norm of the deviatoric logarithmic strain.

    Equals ``0.5 * log(lambda1/lambda2)^2`` in terms of the singular values
    of F, which is also ``0.5 * log(lambda1^2 / det F)^2``.  Accepts a
    stacked ``(..., 2, 2)`` input.

    Raises
    ------
    NonInvertible
        If any det F <= 0.
    """
    F = np.asarray(F, dtype=float)
    if np.any(det2(F) <= 0.0):
        raise NonInvertible("iso_invariant requires det F > 0")
    s = svd2(F)
    return 0.5 * np.log(s.lambda1 / s.lambda2) ** 2


def _exponents(p: MaterialParams, F):
    """Exponent arguments (k*iso, k_hat*(log det)^2) plus det, elementwise."""
    d = det2(F)
    admissible = d > DET_FLOOR
    d_safe = np.where(admissible, d, 1.0)
    s = svd2(F)
    lam1 = np.where(admissible, s.lambda1, 1.0)
    lam2 = np.where(admissible, s.lambda2, 1.0)
    arg_iso = p.k * 0.5 * np.log(lam1 / lam2) ** 2
    arg_vol = p.k_hat * np.log(d_safe) ** 2
    return arg_iso, arg_vol, admissible


def energy(p: MaterialParams, F) -> EnergyValue:
    """Evaluate the stored energy at a single deformation gradient.

    Never raises on bad F: det F <= 0 returns the +inf marker, and an
    exponent beyond ``EXP_ARG_LIMIT`` returns it with ``overflow=True``.
    """
    F = np.asarray(F, dtype=float)
    if F.shape != (2, 2):
        raise ValueError("energy expects a single 2x2 matrix; "
                         "use batch_energy for stacks")
    arg_iso, arg_vol, admissible = _exponents(p, F)
    if not admissible:
        return EnergyValue(math.inf, math.inf, math.inf)
    if arg_iso > EXP_ARG_LIMIT or arg_vol > EXP_ARG_LIMIT:
        return EnergyValue(math.inf, math.inf, math.inf, overflow=True)
    iso = p.mu / p.k * math.exp(arg_iso)
    vol = p.kappa / (2.0 * p.k_hat) * math.exp(arg_vol)
    return EnergyValue(iso + vol, iso, vol)


def batch_energy(p: MaterialParams, F):
    """Energy values over a stack of deformation gradients.

    Returns a float array shaped like the leading axes of ``F`` with
    ``np.inf`` marking inadmissible or overflowing entries.
    """
    F = np.asarray(F, dtype=float)
    arg_iso, arg_vol, admissible = _exponents(p, F)
    ok = admissible & (arg_iso <= EXP_ARG_LIMIT) & (arg_vol <= EXP_ARG_LIMIT)
    arg_iso = np.where(ok, arg_iso, 0.0)
    arg_vol = np.where(ok, arg_vol, 0.0)
    vals = (p.mu / p.k * np.exp(arg_iso)
            + p.kappa / (2.0 * p.k_hat) * np.exp(arg_vol))
    return np.where(ok, vals, np.inf)


def pk1_stress(p: MaterialParams, F):
    """First Piola-Kirchhoff stress, the F-gradient of the stored energy.

    Computed through the singular value decomposition: with
    F = L diag(l1, l2) R and s = log(l1/l2), t = log(l1*l2),

        a  = mu * exp(k s^2 / 2),   b = kappa * exp(k_hat t^2) * t,
        S1 = L diag((a s + b)/l1, (-a s + b)/l2) R.

    This equals ``[2 mu e^{k||dev2 log V||^2} dev2 log V
    + kappa e^{k_hat (tr log V)^2} tr(log V) I] F^{-T}`` with V the *left*
    stretch sqrt(F F^T); the logarithmic strain must live in the spatial
    basis for the product with F^{-T} to be the energy gradient.
    Vanishes exactly at any pure rotation.  Accepts stacked input.

    Raises
    ------
    NonInvertible
        If any det F <= 0.
    """
    F = np.asarray(F, dtype=float)
    if np.any(det2(F) <= 0.0):
        raise NonInvertible("pk1_stress requires det F > 0")
    sv = svd2(F)
    s = np.log(sv.lambda1 / sv.lambda2)
    t = np.log(sv.lambda1) + np.log(sv.lambda2)
    a = p.mu * np.exp(p.k * 0.5 * s * s)
    b = p.kappa * np.exp(p.k_hat * t * t) * t
    d = np.zeros(F.shape, dtype=float)
    d[..., 0, 0] = (a * s + b) / sv.lambda1
    d[..., 1, 1] = (-a * s + b) / sv.lambda2
    return sv.left_rot @ d @ sv.right_rot


def stress_consistency(p: MaterialParams, F, h=1e-5):
    """Normalized residual between pk1_stress and a finite-difference gradient.

    Central differences with step ``h`` on each of the four entries of F;
    the result is ``max_ij |fd_ij - S1_ij| / (1 + max_ij |S1_ij|)``.  If a
    perturbed matrix leaves det > 0, the step is reduced tenfold and the
    check retried once before raising.

    Parameters
    ----------
    p : MaterialParams
    F : array_like, shape (2, 2), det F > 0
    h : float, 0 < h < 1e-3
    """
    F = np.asarray(F, dtype=float)
    if F.shape != (2, 2):
        raise ValueError("stress_consistency expects a single 2x2 matrix")
    if not 0.0 < h < 1e-3:
        raise ValueError("step must satisfy 0 < h < 1e-3")
    if det2(F) <= 0.0:
        raise NonInvertible("stress_consistency requires det F > 0")
    s1 = pk1_stress(p, F)
    for attempt in range(2):
        perturbed = np.broadcast_to(F, (2, 2, 2, 2)).copy()
        plus = perturbed.copy()
        minus = perturbed.copy()
        for i in range(2):
            for j in range(2):
                plus[i, j, i, j] += h
                minus[i, j, i, j] -= h
        stacked = np.concatenate([plus.reshape(4, 2, 2),
                                  minus.reshape(4, 2, 2)])
        vals = batch_energy(p, stacked)
        if np.all(np.isfinite(vals)):
            fd = (vals[:4] - vals[4:]).reshape(2, 2) / (2.0 * h)
            return float(np.max(np.abs(fd - s1)) / (1.0 + np.max(np.abs(s1))))
        h /= 10.0
    raise NonInvertible("perturbed states leave det F > 0 even after "
                        "reducing the step")
