"""Numerical kernels: normal special functions, quadrature, root finding.

Everything here is a pure function of its arguments. The normal-law
functions accept scalars or numpy arrays; the root finders are scalar,
except :func:`bracketed_newton`, which iterates a whole array of
independent monotone problems at once.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from scipy import integrate as _integrate
from scipy import special as _special

from .errors import ConvergenceError, DomainError

SQRT_2PI = math.sqrt(2.0 * math.pi)


def _out(x):
    """Return a python float for 0-d results, the array otherwise."""
    x = np.asarray(x, dtype=float)
    return float(x) if x.ndim == 0 else x


# ---------------------------------------------------------------------------
# special functions
# ---------------------------------------------------------------------------


def erf(x):
    """Error function, odd by construction."""
    x = np.asarray(x, dtype=float)
    return _out(np.sign(x) * _special.erf(np.abs(x)))


def normal_pdf(x):
    x = np.asarray(x, dtype=float)
    return _out(np.exp(-0.5 * x * x) / SQRT_2PI)


def normal_cdf(x):
    """Standard normal CDF, ``0.5 * (1 + erf(x / sqrt(2)))``.

    Evaluated through the complementary error function so that the lower
    tail keeps full relative precision.
    """
    return _out(_special.ndtr(np.asarray(x, dtype=float)))


def normal_quantile(p):
    """Inverse of :func:`normal_cdf` on the open unit interval.

    Raises
    ------
    DomainError
        If any ``p`` lies outside ``(0, 1)``.
    """
    p = np.asarray(p, dtype=float)
    if np.any(~((p > 0.0) & (p < 1.0))):
        raise DomainError("normal_quantile requires 0 < p < 1")
    # reflect the upper half so that q(1 - p) == -q(p) exactly
    upper = p > 0.5
    q = _special.ndtri(np.where(upper, 1.0 - p, p))
    return _out(np.where(upper, -q, q))


# ---------------------------------------------------------------------------
# quadrature
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class QuadratureSpec:
    abs_tol: float = 1e-12
    rel_tol: float = 1e-10
    max_subdivisions: int = 200

    def __post_init__(self):
        if not (self.abs_tol > 0 and self.rel_tol > 0):
            raise ValueError("quadrature tolerances must be positive")
        if self.max_subdivisions < 1:
            raise ValueError("max_subdivisions must be >= 1")


DEFAULT_QUADRATURE = QuadratureSpec()


def integrate(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    spec: QuadratureSpec = DEFAULT_QUADRATURE,
    points: Sequence[float] = (),
) -> float:
    """Integrate ``f`` over ``(lo, hi)``; either endpoint may be infinite.

    Adaptive Gauss-Kronrod on finite pieces, with the usual rational
    change of variable on infinite ones. ``points`` are finite interior
    breakpoints (kinks, jumps) at which the range is split before
    integrating.

    Raises
    ------
    ConvergenceError
        If the subdivision budget runs out before the error estimate meets
        ``max(abs_tol, rel_tol * |I|)``.
    """
    if lo == hi:
        return 0.0
    if lo > hi:
        return -integrate(f, hi, lo, spec, points)
    cuts = sorted(p for p in points if lo < p < hi)
    edges = [lo, *cuts, hi]
    total = 0.0
    for a, b in zip(edges[:-1], edges[1:]):
        # full_output appends a message only when QUADPACK flags a problem
        value, err, _info, *message = _integrate.quad(
            f,
            a,
            b,
            epsabs=spec.abs_tol,
            epsrel=spec.rel_tol,
            limit=spec.max_subdivisions,
            full_output=1,
        )
        if message and err > max(spec.abs_tol, spec.rel_tol * abs(value)):
            raise ConvergenceError(
                f"quadrature on ({a}, {b}) did not converge: "
                f"estimate {value!r}, error {err!r}"
            )
        total += value
    return total


# ---------------------------------------------------------------------------
# root finding
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RootBracket:
    lo: float
    hi: float
    f_lo: float
    f_hi: float

    def __post_init__(self):
        if not self.lo < self.hi:
            raise ValueError(f"bracket needs lo < hi, got [{self.lo}, {self.hi}]")
        if self.f_lo * self.f_hi > 0:
            raise ValueError(
                f"no sign change on [{self.lo}, {self.hi}]: "
                f"f(lo)={self.f_lo!r}, f(hi)={self.f_hi!r}"
            )

    @classmethod
    def around(cls, f: Callable[[float], float], lo: float, hi: float) -> "RootBracket":
        return cls(lo, hi, f(lo), f(hi))


def solve_monotone(
    f: Callable[[float], float],
    bracket: RootBracket,
    tol: float = 1e-12,
    fprime: Callable[[float], float] | None = None,
    maxiter: int = 200,
) -> float:
    """Root of a continuous monotone ``f`` inside ``bracket``.

    Newton steps are taken when ``fprime`` is given and the step lands
    strictly inside the current bracket; otherwise the bracket is bisected.
    The iterate never leaves the bracket.
    """
    lo, hi, f_lo, f_hi = bracket.lo, bracket.hi, bracket.f_lo, bracket.f_hi
    if f_lo == 0.0:
        return lo
    if f_hi == 0.0:
        return hi
    increasing = f_hi > f_lo
    x = 0.5 * (lo + hi)
    for _ in range(maxiter):
        fx = f(x)
        if abs(fx) <= tol or hi - lo <= tol:
            return x
        if (fx < 0) == increasing:
            lo = x
        else:
            hi = x
        step_ok = False
        if fprime is not None:
            d = fprime(x)
            if d != 0 and math.isfinite(d):
                xn = x - fx / d
                if lo < xn < hi:
                    x, step_ok = xn, True
        if not step_ok:
            x = 0.5 * (lo + hi)
    if abs(f(x)) <= tol or hi - lo <= tol:
        return x
    raise ConvergenceError(f"solve_monotone: no convergence in {maxiter} iterations")


def bracketed_newton(f, fprime, lo, hi, x0=None, tol=1e-15, maxiter=200):
    """Vectorised safeguarded Newton for increasing functions.

    Solves ``f(x) = 0`` elementwise, where each ``f(., i)`` is continuous
    and non-decreasing on ``[lo[i], hi[i]]`` with a sign change. ``f`` and
    ``fprime`` take and return arrays of the working shape.
    """
    lo = np.array(lo, dtype=float, copy=True)
    hi = np.array(hi, dtype=float, copy=True)
    lo, hi = np.broadcast_arrays(lo, hi)
    lo, hi = lo.copy(), hi.copy()
    x = 0.5 * (lo + hi) if x0 is None else np.clip(np.asarray(x0, dtype=float), lo, hi)
    x = np.array(x, dtype=float)
    for _ in range(maxiter):
        fx = f(x)
        done = (np.abs(fx) <= tol) | (hi - lo <= tol * (1.0 + np.abs(x)))
        if np.all(done):
            return x
        below = fx < 0
        lo = np.where(below, x, lo)
        hi = np.where(below, hi, x)
        d = fprime(x)
        with np.errstate(divide="ignore", invalid="ignore"):
            xn = x - fx / d
        inside = np.isfinite(xn) & (xn > lo) & (xn < hi)
        xn = np.where(inside, xn, 0.5 * (lo + hi))
        x = np.where(done, x, xn)
    return x


def _real_quadratic_roots(a: float, b: float, c: float) -> list[float]:
    """Real roots of ``a x^2 + b x + c``, degrading to linear when a == 0."""
    if a == 0.0:
        if b == 0.0:
            return []
        return [-c / b]
    disc = b * b - 4.0 * a * c
    if disc < 0.0:
        return []
    s = math.sqrt(disc)
    q = -0.5 * (b + math.copysign(s, b))
    if q == 0.0:
        return [0.0, 0.0]
    return sorted([q / a, c / q])


def solve_cubic_monic(c2: float, c1: float, c0: float) -> list[float]:
    """Distinct real roots of ``z^3 + c2 z^2 + c1 z + c0``, ascending.

    Closed form on the depressed cubic (Cardano when there is one real
    root, trigonometric when there are three), followed by one Newton
    polish on the original polynomial.
    """

    def poly(z):
        return ((z + c2) * z + c1) * z + c0

    def dpoly(z):
        return (3.0 * z + 2.0 * c2) * z + c1

    shift = c2 / 3.0
    p = c1 - c2 * shift
    q = (2.0 * shift * shift - c1) * shift + c0
    half_q = 0.5 * q
    third_p = p / 3.0
    disc = half_q * half_q + third_p**3
    scale = max(half_q * half_q, abs(third_p) ** 3, np.finfo(float).tiny)

    if abs(disc) <= 1e-12 * scale:
        # (near) repeated root
        if abs(p) <= 1e-12 * max(1.0, c2 * c2):
            ts = [float(np.cbrt(-q))]
        else:
            ts = [3.0 * q / p, -1.5 * q / p]
    elif disc > 0.0:
        a = -math.copysign(float(np.cbrt(abs(half_q) + math.sqrt(disc))), q)
        b = -third_p / a if a != 0.0 else 0.0
        ts = [a + b]
    else:
        m = 2.0 * math.sqrt(-third_p)
        arg = 3.0 * q / (p * m)
        theta = math.acos(min(1.0, max(-1.0, arg))) / 3.0
        ts = [m * math.cos(theta - 2.0 * math.pi * k / 3.0) for k in range(3)]

    if len(ts) == 1:
        # a near-double pair can round into a complex pair; keep the vertex
        # of the deflated quadratic when it is numerically a root
        r = ts[0] - shift
        b = c2 + r
        if b * b - 4.0 * (c1 + r * b) < 0.0:
            v = -0.5 * b
            if abs(poly(v)) <= 1e-10:
                ts.append(v + shift)

    roots = []
    for t in ts:
        z = t - shift
        fz, dz = poly(z), dpoly(z)
        if dz != 0.0:
            zn = z - fz / dz
            if math.isfinite(zn) and abs(poly(zn)) <= abs(fz):
                z = zn
        roots.append(z)
    roots.sort()
    distinct: list[float] = []
    for z in roots:
        if distinct and abs(z - distinct[-1]) <= 1e-9 * max(1.0, abs(z)):
            continue
        distinct.append(z)
    return distinct
