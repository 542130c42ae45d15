"""Exception hierarchy shared by the library and the CLI."""

from __future__ import annotations


class TransmuteError(Exception):
    """Base class for all library errors."""


class DomainError(TransmuteError, ValueError):
    """Argument outside the mathematical domain of a function."""


class ParameterError(TransmuteError, ValueError):
    """Distribution or map parameters are not admissible."""


class InvalidMapError(ParameterError):
    """A rank transmutation map is not monotone on [0, 1].

    The offending :class:`~transmute.rtm.ValidityReport` is kept on
    ``report`` so callers can print diagnostics.
    """

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class SpecParseError(TransmuteError, ValueError):
    """A textual base/map spec could not be parsed."""


class ConvergenceError(TransmuteError, RuntimeError):
    """An iterative method exhausted its budget without meeting tolerance."""


class UnsupportedBaseError(TransmuteError, ValueError):
    """Analytic formulas are not available for this base distribution."""


class MomentsUndefinedError(TransmuteError, ValueError):
    """The requested moments do not exist (e.g. Cauchy base)."""


class UnreachableTargetError(TransmuteError, ValueError):
    """Calibration target lies outside the attainable moment envelope.

    ``nearest`` holds the closest attainable ``(skewness, excess_kurtosis)``
    and ``params`` the parameters at which it is attained.
    """

    def __init__(self, message, nearest=None, params=None):
        super().__init__(message)
        self.nearest = nearest
        self.params = params
