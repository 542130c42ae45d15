"""Transmuted distributions: a base law composed with a rank transmutation map.

``F2 = G o F1``, ``f2 = f1 * G'(F1)`` and ``F2^-1 = F1^-1 o G^-1``, so
sampling costs one map inversion on top of the base quantile.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import numeric
from .base_dist import BaseDistribution, ExponentialBase, NormalBase, UniformBase, _check_prob
from .rtm import PolynomialRTM, QuadraticRTM, SymmetricCubicRTM

_U_SCALE = 2.0**-52


@dataclass(frozen=True)
class SampleStream:
    """Reproducible source of uniforms on the open interval (0, 1).

    ``(seed, stream_id)`` fully determines the sequence; distinct
    ``stream_id`` values give statistically independent streams, so
    parallel workers never share generator state.
    """

    seed: int
    stream_id: int = 0

    def generator(self) -> np.random.Generator:
        seq = np.random.SeedSequence(entropy=self.seed, spawn_key=(self.stream_id,))
        return np.random.Generator(np.random.Philox(seq))

    def uniforms(self, n: int) -> np.ndarray:
        k = self.generator().integers(0, 2**52, size=n, dtype=np.uint64)
        # (k + 1/2) / 2^52 is exact and never hits 0 or 1
        return (k.astype(float) + 0.5) * _U_SCALE


class TransmutedDistribution(BaseDistribution):
    """Distribution with CDF ``map.forward(base.cdf(x))``."""

    def __init__(self, base: BaseDistribution, map: PolynomialRTM):
        self.base = base
        self.map = map

    def __repr__(self):
        return f"TransmutedDistribution({self.base!r}, {self.map!r})"

    @property
    def name(self):
        return f"{self.base.spec()}|{self.map.spec()}"

    @property
    def support(self):
        """Base support, cut at the truncation points of a clipped map."""
        lo, hi = self.base.support
        z_lo, z_hi = self.map.active
        if z_lo > 0.0:
            lo = float(self.base.quantile(z_lo))
        if z_hi < 1.0:
            hi = float(self.base.quantile(z_hi))
        return (lo, hi)

    @property
    def has_moments(self):
        return self.base.has_moments

    def cdf(self, x):
        return self.map.forward(self.base.cdf(x))

    def pdf(self, x):
        return numeric._out(
            np.asarray(self.base.pdf(x)) * np.asarray(self.map.derivative(self.base.cdf(x)))
        )

    def quantile(self, p):
        p = _check_prob(p)
        z = np.asarray(self.map.inverse(p), dtype=float)
        # keep the base quantile total when z rounds onto an end point
        z = np.clip(z, np.nextafter(0.0, 1.0), np.nextafter(1.0, 0.0))
        return self.base.quantile(z)

    def sample(self, stream: SampleStream, n: int) -> np.ndarray:
        if n < 0:
            raise ValueError("sample size must be non-negative")
        if n == 0:
            return np.empty(0)
        return np.asarray(self.quantile(stream.uniforms(n)), dtype=float).reshape(n)


def t_cdf(d: TransmutedDistribution, x):
    return d.cdf(x)


def t_pdf(d: TransmutedDistribution, x):
    return d.pdf(x)


def t_quantile(d: TransmutedDistribution, p):
    return d.quantile(p)


def t_sample(d: TransmutedDistribution, stream: SampleStream, n: int) -> np.ndarray:
    return d.sample(stream, n)


def split_counts(n: int, k: int) -> list[int]:
    """Chunk sizes for spreading ``n`` draws over ``k`` streams."""
    if k < 1:
        raise ValueError("need at least one stream")
    q, r = divmod(n, k)
    return [q + (i < r) for i in range(k)]


def sample_streams(d: BaseDistribution, seed: int, n: int, streams: int = 1) -> np.ndarray:
    """Draw ``n`` values using ``streams`` independent sub-streams in parallel.

    Chunk ``i`` comes from ``SampleStream(seed, i)``; the concatenation
    depends only on ``(seed, n, streams)``.
    """
    counts = split_counts(n, streams)
    if streams == 1:
        return d.sample(SampleStream(seed, 0), n)
    with ThreadPoolExecutor(max_workers=streams) as pool:
        parts = list(pool.map(lambda i: d.sample(SampleStream(seed, i), counts[i]), range(streams)))
    return np.concatenate(parts)


def azzalini_pdf(alpha: float, x):
    """Azzalini skew-normal density ``2 phi(x) Phi(alpha x)``, for comparison only."""
    x = np.asarray(x, dtype=float)
    return numeric._out(2.0 * np.asarray(numeric.normal_pdf(x)) * np.asarray(numeric.normal_cdf(alpha * x)))


# named families ------------------------------------------------------------


def skew_uniform(lam: float, clip: bool = False) -> TransmutedDistribution:
    return TransmutedDistribution(UniformBase(), QuadraticRTM(lam, clip))


def skew_exponential(beta: float, lam: float) -> TransmutedDistribution:
    return TransmutedDistribution(ExponentialBase(beta), QuadraticRTM(lam))


def skew_normal(lam: float) -> TransmutedDistribution:
    return TransmutedDistribution(NormalBase(), QuadraticRTM(lam))


def skew_kurtotic_normal(alpha1: float, alpha2: float) -> TransmutedDistribution:
    return TransmutedDistribution(NormalBase(), PolynomialRTM(alpha1, alpha2))


def symmetric_cubic(base: BaseDistribution, gamma: float) -> TransmutedDistribution:
    return TransmutedDistribution(base, SymmetricCubicRTM(gamma))


def integration_points(d: BaseDistribution) -> tuple[float, float, list[float]]:
    """Range and breakpoints for integrating against ``d.pdf``."""
    lo, hi = d.support
    pts = [0.0] if lo < 0.0 < hi else []
    return lo, hi, pts
