"""Base distributions with closed-form pdf, cdf and quantile.

All methods accept scalars or numpy arrays and return the same shape.
Distributions are immutable; ``support`` is the closed interval outside of
which the density vanishes (endpoints may be infinite).
"""

from __future__ import annotations

import math
from abc import ABC, abstractmethod
from dataclasses import dataclass

import numpy as np

from . import numeric
from .errors import DomainError, ParameterError, SpecParseError


def _check_prob(p):
    p = np.asarray(p, dtype=float)
    if np.any(~((p > 0.0) & (p < 1.0))):
        raise DomainError("quantile requires 0 < p < 1")
    return p


class BaseDistribution(ABC):
    """Continuous univariate law described by pdf, cdf and quantile."""

    #: short name used in spec strings and CSV metadata
    name: str = ""

    @property
    @abstractmethod
    def support(self) -> tuple[float, float]: ...

    @abstractmethod
    def pdf(self, x): ...

    @abstractmethod
    def cdf(self, x): ...

    @abstractmethod
    def quantile(self, p): ...

    @property
    def is_symmetric(self) -> bool:
        """Whether ``cdf(-x) == 1 - cdf(x)``."""
        return False

    @property
    def has_moments(self) -> bool:
        return True

    def spec(self) -> str:
        return self.name


@dataclass(frozen=True)
class UniformBase(BaseDistribution):
    """Standard uniform on [0, 1]."""

    name = "uniform"

    @property
    def support(self):
        return (0.0, 1.0)

    def pdf(self, x):
        x = np.asarray(x, dtype=float)
        return numeric._out(np.where((x >= 0.0) & (x <= 1.0), 1.0, 0.0))

    def cdf(self, x):
        return numeric._out(np.clip(np.asarray(x, dtype=float), 0.0, 1.0))

    def quantile(self, p):
        return numeric._out(_check_prob(p))


@dataclass(frozen=True)
class ExponentialBase(BaseDistribution):
    """Exponential law with rate ``beta``."""

    beta: float = 1.0
    name = "exp"

    def __post_init__(self):
        if not (self.beta > 0 and math.isfinite(self.beta)):
            raise ParameterError(f"exponential rate must be positive, got {self.beta}")

    @property
    def support(self):
        return (0.0, math.inf)

    def pdf(self, x):
        x = np.asarray(x, dtype=float)
        with np.errstate(over="ignore"):
            dens = self.beta * np.exp(-self.beta * np.maximum(x, 0.0))
        return numeric._out(np.where(x >= 0.0, dens, 0.0))

    def cdf(self, x):
        x = np.asarray(x, dtype=float)
        return numeric._out(-np.expm1(-self.beta * np.maximum(x, 0.0)))

    def quantile(self, p):
        p = _check_prob(p)
        return numeric._out(-np.log1p(-p) / self.beta)

    def spec(self):
        return f"exp:beta={self.beta!r}"


@dataclass(frozen=True)
class NormalBase(BaseDistribution):
    """Standard normal."""

    name = "normal"

    @property
    def support(self):
        return (-math.inf, math.inf)

    @property
    def is_symmetric(self):
        return True

    def pdf(self, x):
        return numeric.normal_pdf(x)

    def cdf(self, x):
        return numeric.normal_cdf(x)

    def quantile(self, p):
        return numeric.normal_quantile(p)


@dataclass(frozen=True)
class CauchyBase(BaseDistribution):
    """Standard Cauchy; heavy tailed, no finite moments."""

    name = "cauchy"

    @property
    def support(self):
        return (-math.inf, math.inf)

    @property
    def is_symmetric(self):
        return True

    @property
    def has_moments(self):
        return False

    def pdf(self, x):
        x = np.asarray(x, dtype=float)
        return numeric._out(1.0 / (math.pi * (1.0 + x * x)))

    def cdf(self, x):
        x = np.asarray(x, dtype=float)
        # arctan(1/x) form keeps relative accuracy deep in both tails
        with np.errstate(divide="ignore"):
            tail = np.arctan(1.0 / np.abs(x)) / math.pi
        tail = np.where(x == 0.0, 0.5, tail)
        return numeric._out(np.where(x < 0.0, tail, 1.0 - tail))

    def quantile(self, p):
        p = _check_prob(p)
        return numeric._out(np.tan(math.pi * (p - 0.5)))


def parse_base(text: str) -> BaseDistribution:
    """Parse ``uniform``, ``normal``, ``cauchy`` or ``exp:beta=<r>``."""
    head, _, rest = text.strip().partition(":")
    head = head.strip().lower()
    opts = {}
    if rest:
        for item in rest.split(","):
            key, eq, value = item.partition("=")
            if not eq:
                raise SpecParseError(f"malformed option {item!r} in base spec {text!r}")
            try:
                opts[key.strip()] = float(value)
            except ValueError:
                raise SpecParseError(f"non-numeric value in base spec {text!r}") from None
    simple = {"uniform": UniformBase, "normal": NormalBase, "cauchy": CauchyBase}
    if head in simple:
        if opts:
            raise SpecParseError(f"base {head!r} takes no options")
        return simple[head]()
    if head == "exp":
        if set(opts) - {"beta"}:
            raise SpecParseError(f"unknown option in {text!r}; expected beta")
        return ExponentialBase(opts.get("beta", 1.0))
    raise SpecParseError(f"unknown base distribution {text!r}")
