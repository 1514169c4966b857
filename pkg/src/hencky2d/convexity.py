"""Numerical certification of the energy's convexity structure.

The planar energy owes its good variational behavior to a chain of scalar
and matrix facts: a one-dimensional profile Y that is convex above the
parameter threshold k >= 1/4, a volumetric factor that is convex for
k_hat >= 1/8, the polyconvexity of Z(F) = lambda_max^2 / det F, the
classical trace inequality for singular values, and the convexity of
singular-value sums.  This module turns each of those statements into a
margin function (nonnegative when the property holds) plus seeded,
reproducible random scans that hunt for counterexamples.

Scans draw F = Q1 diag(l1, l2) Q2 with log l_i uniform on [-2, 2] and
rotation factors uniform in angle: this stresses the log-strain
nonlinearity across compression and tension without reaching float
limits.  Every scan is deterministic given its seed; reports serialize
to JSON with matrices flattened row-major.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .constitutive import MaterialParams, batch_energy
from .tensor2 import NonInvertible, det2, rot, svd2

__all__ = [
    "DomainError",
    "UnsupportedExponent",
    "InvalidWeights",
    "DEFAULT_SEED",
    "ScanReport",
    "ScalarCurve",
    "haar_rotation",
    "random_orthogonal",
    "random_defgrad",
    "random_matrix",
    "random_unit_vectors",
    "y_value",
    "y_second_derivative",
    "y_convexity_factor",
    "sample_y_curve",
    "curve_nonconvex_interval",
    "vol_convexity_margin",
    "vol_second_derivative",
    "vol_margin_report",
    "z_value",
    "power_ratio_hessian",
    "power_ratio_hessian_margin",
    "polyconvex_witness",
    "polyconvex_midpoint_margin",
    "polyconvex_scan",
    "rank_one_margin",
    "rank_one_scan",
    "von_neumann_margin",
    "von_neumann_scan",
    "von_neumann_sup",
    "singular_value_convexity_margin",
    "lambda_max_scan",
    "coercivity_probe",
    "coercivity_report",
]

DEFAULT_SEED = 0x45484559

# slack for delta == det F up to round-off in the witness domain check
_WITNESS_SLACK = 1e-9


class DomainError(ValueError):
    """Argument outside the mathematical domain of the checked function."""


class UnsupportedExponent(ValueError):
    """Volumetric exponent m outside the supported set {2, 3}."""


class InvalidWeights(ValueError):
    """Weight vector for singular-value sums must satisfy r1 >= r2 >= 0."""


@dataclass(frozen=True)
class ScanReport:
    """Outcome of a randomized property scan.

    ``worst_margin`` is the minimum margin over all evaluated samples
    (nonnegative means the property held everywhere); ``witness`` holds the
    inputs attaining it, matrices flattened row-major, and re-evaluates to
    ``worst_margin`` exactly.
    """

    samples: int
    worst_margin: float
    witness: dict
    seed: int

    def to_dict(self):
        return {
            "samples": self.samples,
            "worst_margin": self.worst_margin,
            "witness": self.witness,
            "seed": self.seed,
        }

    def to_json(self, indent=2):
        return json.dumps(self.to_dict(), indent=indent)


@dataclass(frozen=True)
class ScalarCurve:
    """Sampled profile Y over a strictly increasing grid of theta >= 1."""

    grid: np.ndarray
    values: np.ndarray
    k: float

    def __post_init__(self):
        if np.any(np.diff(self.grid) <= 0.0) or self.grid[0] < 1.0:
            raise ValueError("grid must be strictly increasing with theta >= 1")
        if np.any(self.values <= 0.0):
            raise ValueError("curve values must be positive")

    def to_csv(self):
        lines = ["theta,y"]
        lines += [f"{t!r},{y!r}" for t, y in zip(self.grid, self.values)]
        return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# random sampling
# ---------------------------------------------------------------------------

def haar_rotation(rng, n):
    """n rotations with angle uniform on [0, 2*pi)."""
    return rot(rng.uniform(0.0, 2.0 * np.pi, size=n))


def random_orthogonal(rng, n):
    """n orthogonal matrices covering both components of O(2)."""
    q = haar_rotation(rng, n)
    flip = rng.integers(0, 2, size=n).astype(bool)
    q[flip, 1, :] *= -1.0
    return q


def random_defgrad(rng, n, log_range=2.0):
    """n deformation gradients Q1 diag(l1, l2) Q2, log l_i ~ U[-range, range]."""
    lam = np.exp(rng.uniform(-log_range, log_range, size=(n, 2)))
    d = np.zeros((n, 2, 2))
    d[:, 0, 0] = lam[:, 0]
    d[:, 1, 1] = lam[:, 1]
    return haar_rotation(rng, n) @ d @ haar_rotation(rng, n)


def random_matrix(rng, n, log_range=2.0):
    """Like random_defgrad but with a random reflection, so det < 0 occurs."""
    f = random_defgrad(rng, n, log_range)
    flip = rng.integers(0, 2, size=n).astype(bool)
    f[flip, 1, :] *= -1.0
    return f


def random_unit_vectors(rng, n):
    """n unit vectors with angle uniform on [0, 2*pi)."""
    th = rng.uniform(0.0, 2.0 * np.pi, size=n)
    return np.stack([np.cos(th), np.sin(th)], axis=-1)


# ---------------------------------------------------------------------------
# scalar profile Y(theta) = exp(k/2 * log(theta)^2)
# ---------------------------------------------------------------------------

def y_value(k, theta):
    """Profile value exp(k/2 * log(theta)^2) for theta >= 1.

    Raises DomainError below 1: the profile is only used on the range of
    the stretch-ratio argument, where it is increasing.
    """
    theta = np.asarray(theta, dtype=float)
    if np.any(theta < 1.0):
        raise DomainError("profile argument must satisfy theta >= 1")
    out = np.exp(0.5 * k * np.log(theta) ** 2)
    return float(out) if out.ndim == 0 else out


def y_second_derivative(k, theta):
    """Analytic second derivative of the profile.

    Equals exp(k/2 s^2) * (k^2 s^2 - k s + k) / theta^2 with s = log theta;
    its sign is the sign of ``y_convexity_factor`` for k > 0.
    """
    theta = np.asarray(theta, dtype=float)
    s = np.log(theta)
    out = np.exp(0.5 * k * s * s) * (k * k * s * s - k * s + k) / (theta * theta)
    return float(out) if out.ndim == 0 else out


def y_convexity_factor(k, s):
    """Quadratic k*s^2 - s + 1 whose nonnegativity decides profile convexity.

    Nonnegative for every s >= 0 exactly when k >= 1/4; below the threshold
    it dips negative around s = 1/(2k).
    """
    s = np.asarray(s, dtype=float)
    out = k * s * s - s + 1.0
    return float(out) if out.ndim == 0 else out


def sample_y_curve(k, theta_max, n_points):
    """Log-spaced samples of the profile on [1, theta_max]."""
    if not theta_max > 1.0:
        raise ValueError("theta_max must exceed 1")
    if n_points < 2:
        raise ValueError("need at least two grid points")
    grid = np.exp(np.linspace(0.0, np.log(theta_max), n_points))
    grid[0] = 1.0
    return ScalarCurve(grid=grid, values=y_value(k, grid), k=k)


def curve_nonconvex_interval(curve, tol=1e-8):
    """Grid interval where discrete second differences turn negative.

    Uses second divided differences, which are nonnegative for any convex
    function on any grid; a value below ``-tol * (1 + y)`` flags genuine
    nonconvexity rather than round-off.  Returns (theta_lo, theta_hi) or
    None.
    """
    t, y = curve.grid, curve.values
    slope = np.diff(y) / np.diff(t)
    dd2 = 2.0 * np.diff(slope) / (t[2:] - t[:-2])
    bad = dd2 < -tol * (1.0 + y[1:-1])
    if not np.any(bad):
        return None
    idx = np.nonzero(bad)[0]
    return float(t[idx[0]]), float(t[idx[-1] + 2])


# ---------------------------------------------------------------------------
# volumetric factor exp(k_hat * log(t)^m)
# ---------------------------------------------------------------------------

def _check_exponent(m):
    if m not in (2, 3):
        raise UnsupportedExponent("volumetric exponent must be 2 or 3")


def vol_convexity_margin(m, k_hat, t):
    """Threshold polynomial m*k_hat*s^m + (m-1) - s at s = log t.

    For m = 2 its sign equals the sign of the second derivative of
    t -> exp(k_hat log(t)^2) everywhere, and it stays nonnegative exactly
    for k_hat >= 1/8 (double root at s = 1/(4 k_hat) on the boundary).
    For m = 3 it is the factor whose positivity on s >= 0 is equivalent to
    k_hat >= 1/81; see ``vol_second_derivative`` for the full second
    derivative, which additionally vanishes at t = 1 and changes sign just
    below it regardless of k_hat.
    """
    _check_exponent(m)
    t = np.asarray(t, dtype=float)
    if np.any(t <= 0.0):
        raise DomainError("volumetric argument must be positive")
    s = np.log(t)
    out = m * k_hat * s**m + (m - 1.0) - s
    return float(out) if out.ndim == 0 else out


def vol_second_derivative(m, k_hat, t):
    """Analytic second derivative of t -> exp(k_hat * log(t)^m).

    Equals exp(k_hat s^m) * m * k_hat * s^(m-2) / t^2 * (m*k_hat*s^m
    + (m-1) - s); for m = 2 the prefactor is positive, so the sign matches
    ``vol_convexity_margin``.
    """
    _check_exponent(m)
    t = np.asarray(t, dtype=float)
    if np.any(t <= 0.0):
        raise DomainError("volumetric argument must be positive")
    s = np.log(t)
    bracket = m * k_hat * s**m + (m - 1.0) - s
    out = np.exp(k_hat * s**m) * m * k_hat * s ** (m - 2) / (t * t) * bracket
    return float(out) if out.ndim == 0 else out


def _vol_argmin(m, k_hat):
    # stationary point of the threshold polynomial on s > 0
    if m == 2:
        return 1.0 / (4.0 * k_hat)
    return 1.0 / np.sqrt(9.0 * k_hat)


def vol_margin_report(m, k_hat, s_lo=-10.0, s_hi=10.0, n=4001):
    """Grid scan of the volumetric threshold polynomial.

    The violation region below threshold is thin, so the uniform grid is
    augmented with points clustered around the analytic minimizer of the
    polynomial.  Deterministic; the report's seed field is 0.
    """
    _check_exponent(m)
    s = np.linspace(s_lo, s_hi, n)
    s_star = _vol_argmin(m, k_hat)
    if s_lo < s_star < s_hi:
        s = np.concatenate([s, s_star + np.linspace(-0.5, 0.5, 201)])
    s = np.sort(s)
    margins = vol_convexity_margin(m, k_hat, np.exp(s))
    i = int(np.argmin(margins))
    return ScanReport(
        samples=len(s),
        worst_margin=float(margins[i]),
        witness={"s": float(s[i]), "t": float(np.exp(s[i])),
                 "m": m, "k_hat": k_hat},
        seed=0,
    )


# ---------------------------------------------------------------------------
# polyconvexity building blocks
# ---------------------------------------------------------------------------

def z_value(F):
    """Shape-change measure lambda_max^2 / det F, >= 1 with equality iff
    the singular values coincide (conformal F)."""
    F = np.asarray(F, dtype=float)
    d = det2(F)
    if np.any(d <= 0.0):
        raise NonInvertible("z_value requires det F > 0")
    out = svd2(F).lambda1 ** 2 / d
    return float(out) if out.ndim == 0 else out


def power_ratio_hessian(p, q, a, b):
    """Hessian of f(a, b) = a^p / b^q at (a, b), a, b > 0."""
    if not (a > 0.0 and b > 0.0):
        raise ValueError("Hessian evaluation requires a, b > 0")
    faa = p * (p - 1.0) * a ** (p - 2.0) / b**q
    fab = -p * q * a ** (p - 1.0) / b ** (q + 1.0)
    fbb = q * (q + 1.0) * a**p / b ** (q + 2.0)
    return np.array([[faa, fab], [fab, fbb]])


def power_ratio_hessian_margin(p, q, a, b):
    """Smaller Hessian eigenvalue of a^p / b^q at (a, b).

    Nonnegative for all positive (a, b) exactly when q <= p - 1 (and
    p >= 1); at p = 2, q = 1 the determinant vanishes identically and the
    margin is 0 everywhere.
    """
    h = power_ratio_hessian(p, q, a, b)
    mean = 0.5 * (h[0, 0] + h[1, 1])
    rad = np.hypot(0.5 * (h[0, 0] - h[1, 1]), h[0, 1])
    return float(mean - rad)


def _witness_values(p: MaterialParams, lam1, delta):
    """Vectorized witness P; nan where the argument drops below 1."""
    theta = lam1 * lam1 / delta
    ok = theta >= 1.0 - _WITNESS_SLACK
    theta = np.maximum(np.where(ok, theta, 1.0), 1.0)
    vals = (p.mu / p.k * np.exp(p.k * 0.5 * np.log(theta) ** 2)
            + p.kappa / (2.0 * p.k_hat) * np.exp(p.k_hat * np.log(delta) ** 2))
    return np.where(ok, vals, np.nan)


def polyconvex_witness(p: MaterialParams, F, delta):
    """Jointly convex lift P(F, delta) of the energy.

    P(F, delta) = mu/k * Y(lambda_max(F)^2 / delta)
                + kappa/(2 k_hat) * exp(k_hat log(delta)^2),

    defined for delta > 0 with lambda_max(F)^2 >= delta (a round-off slack
    of 1e-9 relative covers delta = det F for conformal F).  Restricted to
    delta = det F it reproduces the stored energy exactly.

    Raises
    ------
    DomainError
        If delta <= 0 or lambda_max(F)^2 < delta.
    """
    F = np.asarray(F, dtype=float)
    delta = np.asarray(delta, dtype=float)
    if np.any(delta <= 0.0):
        raise DomainError("delta must be positive")
    vals = _witness_values(p, svd2(F).lambda1, delta)
    if np.any(np.isnan(vals)):
        raise DomainError("lambda_max(F)^2 >= delta is required")
    return float(vals) if vals.ndim == 0 else vals


def polyconvex_midpoint_margin(p: MaterialParams, F1, d1, F2, d2):
    """Normalized midpoint convexity margin of the witness.

    (P(x1) + P(x2))/2 - P((x1+x2)/2), normalized by 1 + the endpoint
    average; nonnegative whenever the witness is convex.
    """
    v1 = polyconvex_witness(p, F1, d1)
    v2 = polyconvex_witness(p, F2, d2)
    F1, F2 = np.asarray(F1, dtype=float), np.asarray(F2, dtype=float)
    vm = polyconvex_witness(p, 0.5 * (F1 + F2),
                            0.5 * (np.asarray(d1) + np.asarray(d2)))
    avg = 0.5 * (v1 + v2)
    return (avg - vm) / (1.0 + np.abs(avg))


def polyconvex_scan(p: MaterialParams, n_samples, seed=DEFAULT_SEED):
    """Midpoint convexity scan of the witness over random point pairs.

    Each endpoint pairs a random deformation gradient with a delta drawn
    log-uniformly between det F / 2 and lambda_max(F)^2, covering the
    witness domain off the graph delta = det F.  The rare pair whose
    midpoint leaves the domain is redrawn.
    """
    rng = np.random.default_rng(seed)

    def draw(n):
        f1 = random_defgrad(rng, n)
        f2 = random_defgrad(rng, n)
        out = []
        for f in (f1, f2):
            s = svd2(f)
            lo = np.log(0.5 * s.lambda1 * s.lambda2)
            hi = np.log(s.lambda1**2)
            out.append(np.exp(rng.uniform(lo, hi)))
        return f1, out[0], f2, out[1]

    def margins(f1, d1, f2, d2):
        l1 = svd2(f1).lambda1
        l2 = svd2(f2).lambda1
        lm = svd2(0.5 * (f1 + f2)).lambda1
        v1 = _witness_values(p, l1, d1)
        v2 = _witness_values(p, l2, d2)
        vm = _witness_values(p, lm, 0.5 * (d1 + d2))
        avg = 0.5 * (v1 + v2)
        return (avg - vm) / (1.0 + np.abs(avg))

    kept_m, kept_w = [], []
    remaining = n_samples
    while remaining > 0:
        batch = draw(remaining)
        m = margins(*batch)
        ok = np.isfinite(m)
        kept_m.append(m[ok])
        kept_w.append(tuple(np.asarray(b)[ok] for b in batch))
        remaining -= int(ok.sum())
    m_all = np.concatenate(kept_m)
    i = int(np.argmin(m_all))
    off = i
    for m_part, w_part in zip(kept_m, kept_w):
        if off < len(m_part):
            f1, d1, f2, d2 = w_part
            witness = {
                "F1": f1[off].ravel().tolist(),
                "delta1": float(d1[off]),
                "F2": f2[off].ravel().tolist(),
                "delta2": float(d2[off]),
            }
            break
        off -= len(m_part)
    return ScanReport(samples=n_samples, worst_margin=float(m_all[i]),
                      witness=witness, seed=seed)


# ---------------------------------------------------------------------------
# rank-one convexity scan
# ---------------------------------------------------------------------------

def rank_one_margin(p: MaterialParams, F, xi, eta, step=1e-4):
    """Second difference quotient of the energy along a rank-one line.

    Evaluates t -> W(F + t xi eta^T) at t in {-step, 0, step} and returns
    (W+ + W- - 2 W0) / step^2, normalized by 1 + W0.  nan if any of the
    three states is inadmissible.  Accepts stacked inputs.
    """
    F = np.asarray(F, dtype=float)
    xi = np.asarray(xi, dtype=float)
    eta = np.asarray(eta, dtype=float)
    d = xi[..., :, None] * eta[..., None, :]
    w0 = batch_energy(p, F)
    wp = batch_energy(p, F + step * d)
    wm = batch_energy(p, F - step * d)
    with np.errstate(invalid="ignore"):
        out = (wp + wm - 2.0 * w0) / (step * step) / (1.0 + np.abs(w0))
    out = np.where(np.isfinite(w0) & np.isfinite(wp) & np.isfinite(wm),
                   out, np.nan)
    return float(out) if out.ndim == 0 else out


def rank_one_scan(p: MaterialParams, n_samples, seed=DEFAULT_SEED, step=1e-4):
    """Legendre-Hadamard scan: rank-one second differences at random states.

    Samples where a probe state F +- step * xi eta^T leaves det > 0 are
    redrawn (the sampling ranges make this essentially impossible, but the
    scan guards it anyway).
    """
    rng = np.random.default_rng(seed)
    kept_m, kept_w = [], []
    remaining = n_samples
    while remaining > 0:
        f = random_defgrad(rng, remaining)
        xi = random_unit_vectors(rng, remaining)
        eta = random_unit_vectors(rng, remaining)
        m = rank_one_margin(p, f, xi, eta, step)
        m = np.atleast_1d(m)
        ok = np.isfinite(m)
        kept_m.append(m[ok])
        kept_w.append((f[ok], xi[ok], eta[ok]))
        remaining -= int(ok.sum())
    m_all = np.concatenate(kept_m)
    i = int(np.argmin(m_all))
    off = i
    for m_part, (f, xi, eta) in zip(kept_m, kept_w):
        if off < len(m_part):
            witness = {
                "F": f[off].ravel().tolist(),
                "xi": xi[off].tolist(),
                "eta": eta[off].tolist(),
                "step": 1e-4 if step == 1e-4 else float(step),
            }
            break
        off -= len(m_part)
    return ScanReport(samples=n_samples, worst_margin=float(m_all[i]),
                      witness=witness, seed=seed)


# ---------------------------------------------------------------------------
# singular-value inequalities
# ---------------------------------------------------------------------------

def von_neumann_margin(A, B):
    """Trace inequality slack <alpha, beta> - |tr(A B)|, nonnegative always.

    alpha and beta are the ordered singular values of A and B.  Accepts
    stacked inputs.
    """
    A = np.asarray(A, dtype=float)
    B = np.asarray(B, dtype=float)
    sa, sb = svd2(A), svd2(B)
    ip = sa.lambda1 * sb.lambda1 + sa.lambda2 * sb.lambda2
    tr = np.einsum("...ij,...ji->...", A, B)
    out = ip - np.abs(tr)
    return float(out) if out.ndim == 0 else out


def von_neumann_scan(n_samples, seed=DEFAULT_SEED):
    """Trace inequality scan over random matrix pairs (both orientations)."""
    rng = np.random.default_rng(seed)
    a = random_matrix(rng, n_samples)
    b = random_matrix(rng, n_samples)
    m = von_neumann_margin(a, b)
    i = int(np.argmin(m))
    witness = {"A": a[i].ravel().tolist(), "B": b[i].ravel().tolist()}
    return ScanReport(samples=n_samples, worst_margin=float(m[i]),
                      witness=witness, seed=seed)


def von_neumann_sup(A, B, n_orth_samples, seed=DEFAULT_SEED):
    """Sharpness of the trace inequality over orthogonal factors.

    Maximizes |tr(A Q B R)| over sampled orthogonal pairs (Q, R) from both
    components of O(2) together with the closed-form optimizer assembled
    from the decompositions A = Q1 diag(alpha) R1, B = Q2 diag(beta) R2:
    Q = R1^T Q2^T, R = R2^T Q1^T attains <alpha, beta>.

    Returns
    -------
    (sup_found, analytic) : tuple of float
        The sampled-plus-constructed maximum and <alpha, beta>; they agree
        to round-off and no sample exceeds the analytic value.
    """
    A = np.asarray(A, dtype=float)
    B = np.asarray(B, dtype=float)
    rng = np.random.default_rng(seed)
    sa, sb = svd2(A), svd2(B)
    analytic = float(sa.lambda1 * sb.lambda1 + sa.lambda2 * sb.lambda2)
    q_opt = sa.right_rot.T @ sb.left_rot.T
    r_opt = sb.right_rot.T @ sa.left_rot.T
    constructed = abs(float(np.trace(A @ q_opt @ B @ r_opt)))
    qs = random_orthogonal(rng, n_orth_samples)
    rs = random_orthogonal(rng, n_orth_samples)
    vals = np.abs(np.einsum("ij,njk,kl,nli->n", A, qs, B, rs))
    return max(constructed, float(vals.max())), analytic


def singular_value_convexity_margin(F1, F2, t, r=None):
    """Convexity margin of the singular-value sum <r, lambda> along a segment.

    margin = (1-t) g(F1) + t g(F2) - g((1-t) F1 + t F2) with
    g(F) = r1 lambda1(F) + r2 lambda2(F).  The default r = (1, 0) checks
    the largest singular value.  Accepts stacked inputs.

    Raises
    ------
    InvalidWeights
        Unless r1 >= r2 >= 0.
    ValueError
        If t falls outside [0, 1].
    """
    if r is None:
        r = (1.0, 0.0)
    r = np.asarray(r, dtype=float)
    if r.shape[-1] != 2:
        raise InvalidWeights("weight vector must have two entries")
    if np.any(r[..., 1] < 0.0) or np.any(r[..., 0] < r[..., 1]):
        raise InvalidWeights("weights must satisfy r1 >= r2 >= 0")
    t = np.asarray(t, dtype=float)
    if np.any(t < 0.0) or np.any(t > 1.0):
        raise ValueError("interpolation parameter must lie in [0, 1]")
    F1 = np.asarray(F1, dtype=float)
    F2 = np.asarray(F2, dtype=float)

    def g(f):
        s = svd2(f)
        return r[..., 0] * s.lambda1 + r[..., 1] * s.lambda2

    mid = (1.0 - t)[..., None, None] * F1 + t[..., None, None] * F2
    out = (1.0 - t) * g(F1) + t * g(F2) - g(mid)
    return float(out) if out.ndim == 0 else out


def lambda_max_scan(n_samples, seed=DEFAULT_SEED, weighted=False):
    """Convexity scan of lambda_max (or random ordered <r, lambda>) over
    random matrix segments."""
    rng = np.random.default_rng(seed)
    f1 = random_matrix(rng, n_samples)
    f2 = random_matrix(rng, n_samples)
    t = rng.uniform(0.0, 1.0, size=n_samples)
    if weighted:
        u = rng.uniform(0.0, 1.0, size=(n_samples, 2))
        r = np.sort(u, axis=1)[:, ::-1]
    else:
        r = np.broadcast_to(np.array([1.0, 0.0]), (n_samples, 2))
    m = singular_value_convexity_margin(f1, f2, t, r)
    i = int(np.argmin(m))
    witness = {
        "F1": f1[i].ravel().tolist(),
        "F2": f2[i].ravel().tolist(),
        "t": float(t[i]),
        "r": r[i].tolist(),
    }
    return ScanReport(samples=n_samples, worst_margin=float(m[i]),
                      witness=witness, seed=seed)


# ---------------------------------------------------------------------------
# coercivity probe
# ---------------------------------------------------------------------------

def coercivity_probe(p: MaterialParams, q, t_grid):
    """Growth ratios W(F_t) / ||F_t||^q along two stretch rays.

    F_t = diag(t, t) exercises the volumetric exponential, F_t =
    diag(t, 1/t) the isochoric one.  Both ratio sequences are eventually
    strictly increasing in t for any finite q; the turnover happens once
    log t exceeds about q / (8 k_hat) resp. q / (4 k).

    Returns a dict with keys "volumetric" and "isochoric".
    """
    t = np.asarray(t_grid, dtype=float)
    if np.any(t <= 1.0) or np.any(np.diff(t) <= 0.0):
        raise ValueError("t_grid must be strictly increasing with t > 1")
    n = len(t)
    vol_ray = np.zeros((n, 2, 2))
    vol_ray[:, 0, 0] = t
    vol_ray[:, 1, 1] = t
    iso_ray = np.zeros((n, 2, 2))
    iso_ray[:, 0, 0] = t
    iso_ray[:, 1, 1] = 1.0 / t
    out = {}
    for name, ray in (("volumetric", vol_ray), ("isochoric", iso_ray)):
        norms = np.sqrt(np.sum(ray * ray, axis=(-2, -1)))
        out[name] = batch_energy(p, ray) / norms**q
    return out


def coercivity_report(p: MaterialParams, qs=(1.0, 2.0, 10.0)):
    """Growth certification with per-q grids past the turnover point.

    For each exponent q the grid is t = exp(q + 1), exp(q + 2), exp(q + 3),
    beyond the point where the super-polynomial terms dominate; the margin
    is the smallest normalized consecutive ratio increment over both rays.
    Deterministic; the seed field is 0.
    """
    worst = np.inf
    witness = {}
    samples = 0
    for q in qs:
        t_grid = np.exp([q + 1.0, q + 2.0, q + 3.0])
        ratios = coercivity_probe(p, q, t_grid)
        for ray, r in ratios.items():
            samples += len(r)
            inc = (r[1:] - r[:-1]) / (1.0 + np.abs(r[1:]))
            j = int(np.argmin(inc))
            if inc[j] < worst:
                worst = float(inc[j])
                witness = {"ray": ray, "q": float(q),
                           "t": [float(t_grid[j]), float(t_grid[j + 1])],
                           "ratios": [float(r[j]), float(r[j + 1])]}
    return ScanReport(samples=samples, worst_margin=worst,
                      witness=witness, seed=0)
