"""Rank transmutation maps of the unit interval.

Every map here belongs to the two-parameter cubic family

    P(z) = z - z (1 - z) (a1 + (z - 1/2) a2),

which fixes 0 and 1.  The quadratic (skew) map ``u + lam u (1 - u)`` is
the member ``a1 = -lam, a2 = 0`` and the symmetric cubic map
``u - gamma u (1 - u) (u - 1/2)`` is ``a1 = 0, a2 = gamma``.  One
analyzer therefore handles validity for all of them.

In clip mode the raw polynomial is projected onto [0, 1]. The projected
map is accepted only if it is still non-decreasing; it is then constant
0 on ``[0, z_lo]``, increasing on the *active interval* ``[z_lo, z_hi]``
and constant 1 on ``[z_hi, 1]``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidMapError, ParameterError, SpecParseError
from .numeric import (
    RootBracket,
    _out,
    _real_quadratic_roots,
    bracketed_newton,
    solve_cubic_monic,
    solve_monotone,
)

#: slack on the minimum slope so that boundary maps such as (0, 4) pass
SLOPE_TOL = 1e-14


@dataclass(frozen=True)
class ValidityReport:
    valid: bool
    min_slope: float
    argmin: float
    endpoint_slopes: tuple[float, float]
    clip_intervals: tuple[tuple[float, float], ...] = ()

    def lines(self) -> list[str]:
        clips = ";".join(f"[{a!r},{b!r}]" for a, b in self.clip_intervals) or "none"
        return [
            f"valid={str(self.valid).lower()}",
            f"min_slope={self.min_slope!r}",
            f"argmin={self.argmin!r}",
            f"endpoint_slopes={self.endpoint_slopes[0]!r},{self.endpoint_slopes[1]!r}",
            f"clip_intervals={clips}",
        ]


# ---------------------------------------------------------------------------
# raw polynomial family
# ---------------------------------------------------------------------------


def _raw_forward(a1, a2, z):
    return z - z * (1.0 - z) * (a1 + (z - 0.5) * a2)


def _raw_derivative(a1, a2, z):
    # centred form keeps P'(1/2) = 1 - a2/4 exact
    w = z - 0.5
    return 1.0 + 2.0 * a1 * w + a2 * (3.0 * w * w - 0.25)


def _vertex(a1: float, a2: float):
    """Interior minimiser of P' and its value, or None when a2 <= 0."""
    if a2 <= 0.0:
        return None
    z = 0.5 - a1 / (3.0 * a2)
    if not 0.0 < z < 1.0:
        return None
    return z, 1.0 - 0.25 * a2 - a1 * a1 / (3.0 * a2)


def _min_slope(a1: float, a2: float, intervals) -> tuple[float, float]:
    """Minimum of P' over a union of closed sub-intervals of [0, 1]."""
    cands = []
    for lo, hi in intervals:
        cands += [lo, hi]
        if lo < 0.5 < hi:
            cands.append(0.5)
    best = [(_raw_derivative(a1, a2, z), z) for z in cands]
    vert = _vertex(a1, a2)
    if vert is not None and any(lo <= vert[0] <= hi for lo, hi in intervals):
        best.append((vert[1], vert[0]))
    value, where = min(best)
    return float(value), float(where)


def validate_params(alpha1: float, alpha2: float) -> ValidityReport:
    """Check that the unclipped map is monotone on [0, 1].

    ``P'`` is a quadratic, so it suffices to look at the end points, the
    midpoint, and the vertex when it is a minimum inside (0, 1).
    """
    if not (math.isfinite(alpha1) and math.isfinite(alpha2)):
        raise ParameterError("map parameters must be finite")
    m, z = _min_slope(alpha1, alpha2, [(0.0, 1.0)])
    ends = (float(_raw_derivative(alpha1, alpha2, 0.0)), float(_raw_derivative(alpha1, alpha2, 1.0)))
    return ValidityReport(m >= -SLOPE_TOL, m, z, ends)


def _roots_in_unit(a: float, b: float, c: float) -> list[float]:
    return [r for r in _real_quadratic_roots(a, b, c) if 0.0 < r < 1.0]


def analyze_clipped(alpha1: float, alpha2: float) -> tuple[ValidityReport, tuple[float, float]]:
    """Validity of the map projected onto [0, 1], and its active interval."""
    if not (math.isfinite(alpha1) and math.isfinite(alpha2)):
        raise ParameterError("map parameters must be finite")
    a = alpha1 - 0.5 * alpha2
    zeros = _roots_in_unit(alpha2, a - alpha2, 1.0 - a)  # P(z) = 0, z != 0
    ones = _roots_in_unit(alpha2, a, 1.0)  # P(z) = 1, z != 1
    crit = [
        r + 0.5
        for r in _real_quadratic_roots(3.0 * alpha2, 2.0 * alpha1, 1.0 - 0.25 * alpha2)
        if 0.0 < r + 0.5 < 1.0
    ]
    knots = sorted({0.0, 1.0, *zeros, *ones, *crit})
    inside, clipped = [], []
    for lo, hi in zip(knots[:-1], knots[1:]):
        v = _raw_forward(alpha1, alpha2, 0.5 * (lo + hi))
        target = inside if 0.0 <= v <= 1.0 else clipped
        if target and target[-1][1] == lo:
            target[-1] = (target[-1][0], hi)
        else:
            target.append((lo, hi))
    m, z = _min_slope(alpha1, alpha2, inside)
    ends = (float(_raw_derivative(alpha1, alpha2, 0.0)), float(_raw_derivative(alpha1, alpha2, 1.0)))
    report = ValidityReport(m >= -SLOPE_TOL, m, z, ends, tuple(clipped))
    z_lo = max([0.0, *zeros])
    z_hi = min([1.0, *ones])
    return report, (z_lo, z_hi)


def poly_forward(alpha1: float, alpha2: float, z, clip: bool = False):
    """``z - z(1-z)(alpha1 + (z - 1/2) alpha2)``, optionally projected onto [0, 1]."""
    return PolynomialRTM(alpha1, alpha2, clip).forward(z)


def poly_derivative(alpha1: float, alpha2: float, z):
    """Slope of the raw polynomial map: ``1 - a1(1-2z) + a2(3z^2 - 3z + 1/2)``."""
    return _out(_raw_derivative(alpha1, alpha2, np.asarray(z, dtype=float)))


def poly_inverse(alpha1: float, alpha2: float, u, clip: bool = False):
    """Unique ``z`` in [0, 1] with ``poly_forward(z) == u``."""
    return PolynomialRTM(alpha1, alpha2, clip).inverse(u)


def alpha1_bounds(alpha2: float, tol: float = 1e-12) -> tuple[float, float]:
    """Extreme admissible ``alpha1`` for a given ``alpha2``, by bisection.

    The admissible set is convex and symmetric under ``alpha1 -> -alpha1``
    (reflection ``z -> 1 - z``), so it always contains ``alpha1 = 0`` when
    it is non-empty. Uses an exact ``min_slope >= 0`` test so tangential
    boundary points such as ``alpha2 = 4`` collapse to width zero.
    Returns ``(nan, nan)`` when no ``alpha1`` is admissible.
    """

    def ok(a1):
        return validate_params(a1, alpha2).min_slope >= 0.0

    if not ok(0.0):
        return (math.nan, math.nan)
    reach = 2.0 + abs(alpha2)  # P'(0) or P'(1) is negative beyond this
    out = []
    for sign in (1.0, -1.0):
        lo, hi = 0.0, sign * reach
        while abs(hi - lo) > tol:
            mid = 0.5 * (lo + hi)
            if ok(mid):
                lo = mid
            else:
                hi = mid
        out.append(lo)
    return (out[1], out[0])


def trace_region(alpha2_grid) -> list[tuple[float, float, float]]:
    """Rows ``(alpha2, alpha1_min, alpha1_max)`` of the admissible region."""
    return [(float(a2), *alpha1_bounds(float(a2))) for a2 in alpha2_grid]


# ---------------------------------------------------------------------------
# quadratic and symmetric cubic maps in their own parametrisation
# ---------------------------------------------------------------------------


def _quadratic_inverse(lam: float, u):
    u = np.asarray(u, dtype=float)
    if lam == 0.0:
        return u.copy()
    b = 1.0 + lam
    disc = np.sqrt(np.maximum(b * b - 4.0 * lam * u, 0.0))
    if b >= 0.0:
        # rationalised: no cancellation, finite as lam -> 0
        with np.errstate(invalid="ignore", divide="ignore"):
            z = 2.0 * u / (b + disc)
        return np.where(u == 0.0, 0.0, z)
    return (b - disc) / (2.0 * lam)


def quadratic_forward(lam: float, u, clip: bool = False):
    """``u + lam u (1 - u)``; clipped to [0, 1] in clip mode."""
    return QuadraticRTM(lam, clip).forward(u)


def quadratic_inverse(lam: float, u):
    """Inverse of :func:`quadratic_forward` for ``|lam| <= 1``.

    Uses ``2u / (1 + lam + sqrt((1 + lam)^2 - 4 lam u))``, algebraically
    equal to ``(1 + lam - sqrt(...)) / (2 lam)`` but exact at ``lam = 0``.
    """
    return QuadraticRTM(lam).inverse(u)


def scrtm_forward(gamma: float, u):
    """``min(max(u - gamma u (1-u)(u - 1/2), 0), 1)``."""
    return SymmetricCubicRTM(gamma).forward(u)


# ---------------------------------------------------------------------------
# map objects
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PolynomialRTM:
    """Two-parameter skew/kurtosis map ``P(z; alpha1, alpha2)``.

    Raises
    ------
    InvalidMapError
        If the (possibly clipped) map is not non-decreasing on [0, 1].
    """

    alpha1: float = 0.0
    alpha2: float = 0.0
    clip: bool = False
    report: ValidityReport = field(init=False, repr=False, compare=False)
    active: tuple[float, float] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "alpha1", float(self.alpha1))
        object.__setattr__(self, "alpha2", float(self.alpha2))
        if self.clip:
            report, active = analyze_clipped(self.alpha1, self.alpha2)
        else:
            report, active = validate_params(self.alpha1, self.alpha2), (0.0, 1.0)
        object.__setattr__(self, "report", report)
        object.__setattr__(self, "active", active)
        if not report.valid:
            raise InvalidMapError(f"{self.spec()} is not monotone on [0, 1]", report)

    def validity(self) -> ValidityReport:
        return self.report

    @property
    def is_identity(self) -> bool:
        return self.alpha1 == 0.0 and self.alpha2 == 0.0

    def _check_unit(self, u):
        u = np.asarray(u, dtype=float)
        if np.any(~((u >= 0.0) & (u <= 1.0))):
            raise ParameterError("map argument must lie in [0, 1]")
        return u

    def _raw(self, u):
        return _raw_forward(self.alpha1, self.alpha2, u)

    def forward(self, u):
        v = self._raw(self._check_unit(u))
        if self.clip:
            v = np.clip(v, 0.0, 1.0)
        return _out(v)

    def derivative(self, u):
        u = self._check_unit(u)
        d = _raw_derivative(self.alpha1, self.alpha2, u)
        if self.clip:
            lo, hi = self.active
            d = np.where((u >= lo) & (u <= hi), d, 0.0)
        return _out(d)

    def inverse(self, u):
        u = self._check_unit(u)
        lo, hi = self.active
        if self.alpha2 == 0.0:
            z = _quadratic_inverse(-self.alpha1, u)
        elif u.ndim == 0:
            z = np.asarray(self._inverse_scalar(float(u)))
        else:
            z = bracketed_newton(
                lambda t: self._raw(t) - u,
                lambda t: _raw_derivative(self.alpha1, self.alpha2, t),
                np.full(u.shape, lo),
                np.full(u.shape, hi),
                x0=lo + u * (hi - lo),
            )
        z = np.clip(z, lo, hi)
        z = np.where(u == 0.0, lo, np.where(u == 1.0, hi, z))
        return _out(z)

    def _inverse_scalar(self, u: float) -> float:
        """Closed-form cubic root, falling back to safeguarded Newton."""
        a1, a2 = self.alpha1, self.alpha2
        lo, hi = self.active
        if u <= 0.0 or u >= 1.0:
            return lo if u <= 0.0 else hi

        def f(z):
            return float(self._raw(z)) - u

        def fp(z):
            return float(_raw_derivative(a1, a2, z))

        if abs(a2) >= 1e-6:
            c2 = (a1 - 1.5 * a2) / a2
            c1 = (1.0 - a1 + 0.5 * a2) / a2
            slack = 1e-9
            for z in solve_cubic_monic(c2, c1, -u / a2):
                if lo - slack <= z <= hi + slack:
                    z = min(max(z, lo), hi)
                    if abs(f(z)) <= 1e-13:
                        return z
        bracket = RootBracket.around(f, lo, hi)
        return solve_monotone(f, bracket, tol=1e-15, fprime=fp)

    def spec(self) -> str:
        tail = ",clip" if self.clip else ""
        return f"poly:a1={self.alpha1!r},a2={self.alpha2!r}{tail}"


@dataclass(frozen=True, init=False)
class QuadraticRTM(PolynomialRTM):
    """Skew map ``u + lam u (1 - u)``; ``|lam| <= 1`` unless clipped."""

    lam: float = 0.0

    def __init__(self, lam: float, clip: bool = False):
        lam = float(lam)
        if not math.isfinite(lam):
            raise ParameterError("lambda must be finite")
        if not clip and abs(lam) > 1.0:
            raise ParameterError(f"|lambda| = {abs(lam)!r} > 1 requires clip mode")
        object.__setattr__(self, "lam", lam)
        object.__setattr__(self, "alpha1", -lam)
        object.__setattr__(self, "alpha2", 0.0)
        object.__setattr__(self, "clip", bool(clip))
        self.__post_init__()

    def _raw(self, u):
        return u + self.lam * u * (1.0 - u)

    def spec(self) -> str:
        return f"quad:lambda={self.lam!r}" + (",clip" if self.clip else "")


@dataclass(frozen=True, init=False)
class SymmetricCubicRTM(PolynomialRTM):
    """Map ``u - gamma u (1-u)(u - 1/2)``, always projected onto [0, 1].

    ``gamma`` plays the role of ``alpha2``, so ``G'(1/2) = 1 - gamma/4``:
    positive values flatten the centre (``gamma = 4`` gives a zero
    density at the median), negative values sharpen it.

    Satisfies ``G(1 - u) = 1 - G(u)``. Projection repairs the end-point
    overshoot for ``gamma < -2``; for ``gamma > 4`` the map decreases
    through the fixed point 1/2 and is rejected.
    """

    gamma: float = 0.0

    def __init__(self, gamma: float):
        gamma = float(gamma)
        object.__setattr__(self, "gamma", gamma)
        object.__setattr__(self, "alpha1", 0.0)
        object.__setattr__(self, "alpha2", gamma)
        object.__setattr__(self, "clip", True)
        self.__post_init__()

    def _raw(self, u):
        return u - self.gamma * u * (1.0 - u) * (u - 0.5)

    def spec(self) -> str:
        return f"cubic:gamma={self.gamma!r}"


# ---------------------------------------------------------------------------
# spec strings
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MapSpec:
    """Parsed map spec; building may still fail on invalid parameters."""

    kind: str
    params: tuple[tuple[str, float], ...]
    clip: bool = False

    def build(self) -> PolynomialRTM:
        p = dict(self.params)
        if self.kind == "quad":
            return QuadraticRTM(p["lambda"], self.clip)
        if self.kind == "cubic":
            return SymmetricCubicRTM(p["gamma"])
        return PolynomialRTM(p["a1"], p["a2"], self.clip)

    def polynomial(self) -> tuple[float, float, bool]:
        """``(alpha1, alpha2, clip)`` of the equivalent polynomial member."""
        p = dict(self.params)
        if self.kind == "quad":
            return -p["lambda"], 0.0, self.clip
        if self.kind == "cubic":
            return 0.0, p["gamma"], True
        return p["a1"], p["a2"], self.clip

    def report(self) -> ValidityReport:
        a1, a2, clip = self.polynomial()
        if clip:
            return analyze_clipped(a1, a2)[0]
        return validate_params(a1, a2)


_MAP_KEYS = {"quad": ("lambda",), "cubic": ("gamma",), "poly": ("a1", "a2")}


def parse_map(text: str) -> MapSpec:
    """Parse ``quad:lambda=r[,clip]``, ``cubic:gamma=r`` or ``poly:a1=r,a2=r[,clip]``."""
    head, _, rest = text.strip().partition(":")
    kind = head.strip().lower()
    if kind not in _MAP_KEYS:
        raise SpecParseError(f"unknown map kind in {text!r}")
    values: dict[str, float] = {}
    clip = False
    for item in filter(None, (s.strip() for s in rest.split(","))):
        if item == "clip":
            clip = True
            continue
        key, eq, value = item.partition("=")
        if not eq or key.strip() not in _MAP_KEYS[kind]:
            raise SpecParseError(f"unexpected option {item!r} in map spec {text!r}")
        try:
            values[key.strip()] = float(value)
        except ValueError:
            raise SpecParseError(f"non-numeric value in map spec {text!r}") from None
        if not math.isfinite(values[key.strip()]):
            raise SpecParseError(f"non-finite value in map spec {text!r}")
    missing = [k for k in _MAP_KEYS[kind] if k not in values]
    if missing:
        raise SpecParseError(f"map spec {text!r} is missing {', '.join(missing)}")
    if kind == "cubic" and clip:
        raise SpecParseError("cubic maps are always clipped; drop the clip flag")
    return MapSpec(kind, tuple((k, values[k]) for k in _MAP_KEYS[kind]), clip)
