"""Moments of transmuted distributions and moment-matching calibration.

For a normal base under ``P(z; a1, a2)`` the raw moments are affine in
the map parameters:

    E[X]   = a1 / sqrt(pi)
    E[X^2] = 1 + sqrt(3) a2 / (2 pi)
    E[X^3] = 5 a1 / (2 sqrt(pi))
    E[X^4] = 3 + 13 a2 / (2 pi sqrt(3))

Quadrature of ``x^k f2(x)`` is kept as an independent check of these.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import numeric
from .base_dist import BaseDistribution, NormalBase
from .errors import (
    MomentsUndefinedError,
    ParameterError,
    UnreachableTargetError,
    UnsupportedBaseError,
)
from .numeric import DEFAULT_QUADRATURE, QuadratureSpec
from .rtm import QuadraticRTM, alpha1_bounds, validate_params
from .transmuted import TransmutedDistribution, integration_points

SQRT_PI = math.sqrt(math.pi)
SQRT_3 = math.sqrt(3.0)


@dataclass(frozen=True)
class MomentSummary:
    raw: tuple[float, ...]
    mean: float
    variance: float
    skewness: float
    excess_kurtosis: float

    @classmethod
    def from_raw(cls, raw) -> "MomentSummary":
        raw = tuple(float(r) for r in raw)
        if len(raw) < 4:
            raise ValueError("need the first four raw moments")
        m1, m2, m3, m4 = raw[:4]
        var = m2 - m1 * m1
        if not var > 0:
            raise ValueError(f"non-positive variance {var!r}")
        mu3 = m3 - 3.0 * m1 * m2 + 2.0 * m1**3
        mu4 = m4 - 4.0 * m1 * m3 + 6.0 * m1 * m1 * m2 - 3.0 * m1**4
        return cls(raw, m1, var, mu3 / var**1.5, mu4 / (var * var) - 3.0)


@dataclass(frozen=True)
class CalibrationTarget:
    skewness: float
    excess_kurtosis: float

    def __post_init__(self):
        if not (math.isfinite(self.skewness) and math.isfinite(self.excess_kurtosis)):
            raise ValueError("calibration targets must be finite")


# ---------------------------------------------------------------------------
# analytic and numerical moments
# ---------------------------------------------------------------------------


def _normal_raw(alpha1: float, alpha2: float) -> tuple[float, float, float, float]:
    return (
        alpha1 / SQRT_PI,
        1.0 + SQRT_3 * alpha2 / (2.0 * math.pi),
        5.0 * alpha1 / (2.0 * SQRT_PI),
        3.0 + 13.0 * alpha2 / (2.0 * math.pi * SQRT_3),
    )


def analytic_moments_normal(alpha1: float, alpha2: float) -> MomentSummary:
    """Closed-form moments of the skew-kurtotic normal ``N(0,1) o P(.; a1, a2)``."""
    report = validate_params(alpha1, alpha2)
    if not report.valid:
        raise ParameterError(
            f"(a1, a2) = ({alpha1!r}, {alpha2!r}) is outside the admissible region "
            f"(min slope {report.min_slope!r} at z={report.argmin!r})"
        )
    return MomentSummary.from_raw(_normal_raw(alpha1, alpha2))


def analytic_moments(d: TransmutedDistribution) -> MomentSummary:
    """Analytic moments for a normal base with an unclipped polynomial map."""
    if not isinstance(d.base, NormalBase):
        raise UnsupportedBaseError("analytic moments need the standard normal base")
    if d.map.clip and d.map.report.clip_intervals:
        raise UnsupportedBaseError("analytic moments do not cover clipped maps")
    return analytic_moments_normal(d.map.alpha1, d.map.alpha2)


def quadrature_raw_moments(
    d: BaseDistribution, k_max: int = 4, spec: QuadratureSpec = DEFAULT_QUADRATURE
) -> tuple[float, ...]:
    if not d.has_moments:
        raise MomentsUndefinedError(f"{d.name}: moments do not exist")
    lo, hi, pts = integration_points(d)
    out = []
    for k in range(1, k_max + 1):
        out.append(numeric.integrate(lambda x, k=k: x**k * d.pdf(x), lo, hi, spec, pts))
    return tuple(out)


def quadrature_moments(
    d: BaseDistribution, k_max: int = 4, spec: QuadratureSpec = DEFAULT_QUADRATURE
) -> MomentSummary:
    """Raw moments ``E[X^k]``, ``k = 1..k_max``, by quadrature of ``x^k pdf``.

    Raises
    ------
    MomentsUndefinedError
        For bases without finite moments (Cauchy).
    """
    if k_max < 4:
        raise ValueError("k_max must be at least 4")
    return MomentSummary.from_raw(quadrature_raw_moments(d, k_max, spec))


def sample_moments(x, k_max: int = 4) -> tuple[MomentSummary, tuple[float, ...]]:
    """Empirical raw moments and their standard errors."""
    x = np.asarray(x, dtype=float)
    if x.size < 2:
        raise ValueError("need at least two samples")
    raw, se = [], []
    for k in range(1, k_max + 1):
        xk = x**k
        raw.append(float(xk.mean()))
        se.append(float(xk.std(ddof=1) / math.sqrt(x.size)))
    return MomentSummary.from_raw(raw), tuple(se)


# ---------------------------------------------------------------------------
# standardisation
# ---------------------------------------------------------------------------


class StandardizedForm(BaseDistribution):
    """Law of ``(X - mu) / sigma`` for ``X`` drawn from ``underlying``."""

    def __init__(self, mu: float, sigma: float, underlying: BaseDistribution):
        if not sigma > 0:
            raise ParameterError("sigma must be positive")
        self.mu = float(mu)
        self.sigma = float(sigma)
        self.underlying = underlying

    def __repr__(self):
        return f"StandardizedForm(mu={self.mu!r}, sigma={self.sigma!r}, {self.underlying!r})"

    @property
    def name(self):
        return f"std({self.underlying.name})"

    @property
    def support(self):
        lo, hi = self.underlying.support
        return ((lo - self.mu) / self.sigma, (hi - self.mu) / self.sigma)

    @property
    def has_moments(self):
        return self.underlying.has_moments

    def pdf(self, x):
        x = np.asarray(x, dtype=float)
        return numeric._out(self.sigma * np.asarray(self.underlying.pdf(self.sigma * x + self.mu)))

    def cdf(self, x):
        x = np.asarray(x, dtype=float)
        return self.underlying.cdf(self.sigma * x + self.mu)

    def quantile(self, p):
        q = np.asarray(self.underlying.quantile(p), dtype=float)
        return numeric._out((q - self.mu) / self.sigma)

    def sample(self, stream, n):
        return (self.underlying.sample(stream, n) - self.mu) / self.sigma


def standardize(d: TransmutedDistribution) -> StandardizedForm:
    """Standardise a transmuted normal using its analytic mean and variance."""
    m = analytic_moments(d)
    return StandardizedForm(m.mean, math.sqrt(m.variance), d)


def skew_normal_standardize(lam: float) -> StandardizedForm:
    """Zero-mean, unit-variance version of ``N(0,1) o (u + lam u (1-u))``.

    The shift is ``-lam / sqrt(pi)`` and the scale ``sqrt(1 - lam^2 / pi)``.
    """
    if abs(lam) > 1.0:
        raise ParameterError("|lambda| must be at most 1")
    return standardize(TransmutedDistribution(NormalBase(), QuadraticRTM(lam)))


# ---------------------------------------------------------------------------
# calibration
# ---------------------------------------------------------------------------


def standardized_shape(alpha1: float, alpha2: float) -> tuple[float, float]:
    """``(skewness, excess kurtosis)`` of the skew-kurtotic normal."""
    m = MomentSummary.from_raw(_normal_raw(alpha1, alpha2))
    return m.skewness, m.excess_kurtosis


def project_valid(alpha1: float, alpha2: float) -> tuple[float, float]:
    """Pull ``(alpha1, alpha2)`` into the admissible region.

    ``alpha2`` is clamped to its attainable range [-2, 4], then ``alpha1``
    into the admissible interval for that ``alpha2``.
    """
    if validate_params(alpha1, alpha2).valid:
        return alpha1, alpha2
    alpha2 = min(max(alpha2, -2.0), 4.0)
    lo, hi = alpha1_bounds(alpha2)
    return min(max(alpha1, lo), hi), alpha2


def _newton(goal, x0, tol, max_iter, fd_step):
    """Projected damped Newton; returns the final iterate and residual."""

    def resid(x):
        return np.array(standardized_shape(*x)) - goal

    x = np.array(project_valid(*x0), dtype=float)
    r = resid(x)
    for _ in range(max_iter):
        if np.linalg.norm(r) <= 1e-13:
            break
        jac = np.empty((2, 2))
        for j in range(2):
            e = np.zeros(2)
            e[j] = fd_step
            jac[:, j] = (resid(x + e) - resid(x - e)) / (2.0 * fd_step)
        try:
            step = np.linalg.solve(jac, -r)
        except np.linalg.LinAlgError:
            step = np.linalg.lstsq(jac, -r, rcond=None)[0]
        t = 1.0
        for _ in range(40):
            trial = np.array(project_valid(*(x + t * step)))
            r_trial = resid(trial)
            if np.linalg.norm(r_trial) < np.linalg.norm(r):
                break
            t *= 0.5
        else:
            break
        moved = np.linalg.norm(trial - x)
        x, r = trial, r_trial
        if moved <= tol:
            break
    return x, r


_CONTINUATION_STEPS = 8
_SOLVED = 1e-9


def _restarts():
    """Deterministic fallback starting points spread over the region."""
    for a2 in (1.0, -1.0, 2.5, 3.5, -1.8, 0.0):
        lo, hi = alpha1_bounds(a2)
        for frac in (0.5, -0.5, 0.9, -0.9):
            yield (frac * (hi if frac > 0 else -lo), a2)


def calibrate(
    target: CalibrationTarget,
    tol: float = 1e-10,
    max_iter: int = 100,
    fd_step: float = 1e-6,
) -> tuple[float, float]:
    """Find ``(alpha1, alpha2)`` matching a target skewness and excess kurtosis.

    The shape map folds over the admissible region, so a target can have
    several preimages. The preferred one lies on the branch through the
    base normal: damped Newton (central-difference Jacobian, steps
    projected onto the region and halved until the residual drops) tracks
    the targets ``t * target`` for ``t`` rising from 0 to 1. If that path
    hits a fold, Newton is rerun from a fixed set of starting points and the
    converged solution nearest the origin is returned.

    Raises
    ------
    UnreachableTargetError
        When no run gets the moments within 1e-6 of the target.
        ``nearest`` carries the closest attained shape.
    """
    goal = np.array([target.skewness, target.excess_kurtosis])
    x = np.zeros(2)
    for t in np.linspace(0.0, 1.0, _CONTINUATION_STEPS + 1)[1:]:
        x, r = _newton(t * goal, x, tol, max_iter, fd_step)
    if float(np.max(np.abs(r))) <= _SOLVED:
        return float(x[0]), float(x[1])

    best = (float(np.max(np.abs(r))), x, r)
    solutions = []
    for x0 in _restarts():
        x, r = _newton(goal, x0, tol, max_iter, fd_step)
        miss = float(np.max(np.abs(r)))
        if miss <= _SOLVED:
            solutions.append(x)
        elif miss < best[0]:
            best = (miss, x, r)
    if solutions:
        x = min(solutions, key=lambda v: float(np.hypot(*v)))
        return float(x[0]), float(x[1])
    miss, x, r = best
    if miss > 1e-6:
        nearest = tuple(float(v) for v in r + goal)
        raise UnreachableTargetError(
            f"target (skew={target.skewness!r}, exkurt={target.excess_kurtosis!r}) is not "
            f"attainable; nearest attainable (skew={nearest[0]!r}, exkurt={nearest[1]!r}) "
            f"at (a1={float(x[0])!r}, a2={float(x[1])!r})",
            nearest=nearest,
            params=(float(x[0]), float(x[1])),
        )
    return float(x[0]), float(x[1])


def calibrate_raw(mean: float, second_moment: float) -> tuple[float, float]:
    """Solve the affine system for target ``E[X]`` and ``E[X^2]`` directly."""
    a1 = mean * SQRT_PI
    a2 = (second_moment - 1.0) * 2.0 * math.pi / SQRT_3
    report = validate_params(a1, a2)
    if not report.valid:
        raise UnreachableTargetError(
            f"raw moments ({mean!r}, {second_moment!r}) need (a1, a2) = ({a1!r}, {a2!r}), "
            "outside the admissible region",
            params=(a1, a2),
        )
    return a1, a2
