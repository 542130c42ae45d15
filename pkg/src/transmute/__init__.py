"""Rank transmutation maps: skewed and kurtotic versions of familiar laws.

A rank transmutation map ``G`` is a monotone bijection of [0, 1]; composing
it with a base CDF ``F1`` gives a new distribution with CDF ``G(F1(x))``,
density ``f1(x) G'(F1(x))`` and quantile ``F1^-1(G^-1(p))``.
"""

from .base_dist import (
    BaseDistribution,
    CauchyBase,
    ExponentialBase,
    NormalBase,
    UniformBase,
    parse_base,
)
from .errors import (
    ConvergenceError,
    DomainError,
    InvalidMapError,
    MomentsUndefinedError,
    ParameterError,
    SpecParseError,
    TransmuteError,
    UnreachableTargetError,
    UnsupportedBaseError,
)
from .moments import (
    CalibrationTarget,
    MomentSummary,
    StandardizedForm,
    analytic_moments,
    analytic_moments_normal,
    calibrate,
    calibrate_raw,
    quadrature_moments,
    sample_moments,
    skew_normal_standardize,
    standardize,
    standardized_shape,
)
from .rtm import (
    PolynomialRTM,
    QuadraticRTM,
    SymmetricCubicRTM,
    ValidityReport,
    parse_map,
    poly_derivative,
    poly_forward,
    poly_inverse,
    quadratic_forward,
    quadratic_inverse,
    scrtm_forward,
    trace_region,
    validate_params,
)
from .transmuted import (
    SampleStream,
    TransmutedDistribution,
    azzalini_pdf,
    sample_streams,
    skew_exponential,
    skew_kurtotic_normal,
    skew_normal,
    skew_uniform,
    symmetric_cubic,
    t_cdf,
    t_pdf,
    t_quantile,
    t_sample,
)

__version__ = "0.1.0"
