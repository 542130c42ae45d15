import math

import numpy as np
import pytest

from transmute.base_dist import (
    CauchyBase,
    ExponentialBase,
    NormalBase,
    UniformBase,
    parse_base,
)
from transmute.errors import DomainError, ParameterError, SpecParseError
from transmute.numeric import integrate

BASES = [UniformBase(), ExponentialBase(1.0), ExponentialBase(2.5), NormalBase(), CauchyBase()]
IDS = ["uniform", "exp1", "exp2.5", "normal", "cauchy"]


def interior_points(d, n=50):
    p = np.linspace(0.02, 0.98, n)
    return np.asarray(d.quantile(p))


def test_cdf_examples():
    assert NormalBase().cdf(0.0) == 0.5
    assert ExponentialBase(1.0).cdf(math.log(2)) == pytest.approx(0.5, abs=1e-16)
    assert UniformBase().cdf(0.3) == 0.3


def test_quantile_examples():
    assert UniformBase().quantile(0.75) == 0.75
    assert ExponentialBase(2.0).quantile(1 - math.exp(-2)) == pytest.approx(1.0, abs=1e-15)
    assert CauchyBase().quantile(0.75) == pytest.approx(1.0, abs=1e-15)
    assert CauchyBase().quantile(0.5) == 0.0


def test_pdf_examples():
    assert ExponentialBase(1.0).pdf(-1.0) == 0.0
    assert NormalBase().pdf(0.0) == pytest.approx(0.3989422804014327, abs=1e-16)
    assert UniformBase().pdf(0.5) == 1.0


@pytest.mark.parametrize("d", BASES, ids=IDS)
def test_cdf_outside_support(d):
    lo, hi = d.support
    if math.isfinite(lo):
        assert d.cdf(lo - 1.0) == 0.0
        assert d.pdf(lo - 1.0) == 0.0
    if math.isfinite(hi):
        assert d.cdf(hi + 1.0) == 1.0
        assert d.pdf(hi + 1.0) == 0.0


@pytest.mark.parametrize("d", BASES, ids=IDS)
def test_normalisation(d):
    lo, hi = d.support
    pts = [0.0] if lo < 0 < hi else []
    assert abs(integrate(d.pdf, lo, hi, points=pts) - 1.0) <= 1e-10


@pytest.mark.parametrize("d", BASES, ids=IDS)
def test_quantile_cdf_roundtrip(d):
    p = np.linspace(1e-6, 1 - 1e-6, 1000)
    assert np.max(np.abs(d.cdf(d.quantile(p)) - p)) <= 1e-9


@pytest.mark.parametrize("d", BASES, ids=IDS)
def test_cdf_quantile_roundtrip_in_x(d):
    x = interior_points(d)
    np.testing.assert_allclose(d.quantile(d.cdf(x)), x, atol=1e-10, rtol=1e-10)


@pytest.mark.parametrize("d", BASES, ids=IDS)
def test_pdf_is_derivative_of_cdf(d):
    h = 1e-5
    x = interior_points(d)
    fd = (d.cdf(x + h) - d.cdf(x - h)) / (2 * h)
    assert np.max(np.abs(fd - d.pdf(x))) <= 1e-6


@pytest.mark.parametrize("d", BASES, ids=IDS)
def test_cdf_monotone(d):
    lo, hi = d.support
    x = np.linspace(max(lo, -50) - 1, min(hi, 50) + 1, 5001)
    assert np.all(np.diff(d.cdf(x)) >= 0)


@pytest.mark.parametrize("d", [NormalBase(), CauchyBase()], ids=["normal", "cauchy"])
def test_symmetry(d):
    x = np.linspace(-30, 30, 2001)
    assert np.max(np.abs(d.cdf(-x) - (1 - d.cdf(x)))) <= 1e-14


@pytest.mark.parametrize("d", BASES, ids=IDS)
@pytest.mark.parametrize("p", [0.0, 1.0, -0.5, 2.0])
def test_quantile_domain(d, p):
    with pytest.raises(DomainError):
        d.quantile(p)


def test_exponential_tail_accuracy():
    # -log1p(-p) keeps precision for tiny p
    assert ExponentialBase(1.0).quantile(1e-18) == pytest.approx(1e-18, rel=1e-12)


def test_exponential_rejects_bad_rate():
    with pytest.raises(ParameterError):
        ExponentialBase(0.0)
    with pytest.raises(ParameterError):
        ExponentialBase(-1.0)


def test_vectorised_shapes():
    d = NormalBase()
    x = np.linspace(-1, 1, 7).reshape(7, 1)
    assert d.pdf(x).shape == (7, 1)
    assert isinstance(d.cdf(0.3), float)


@pytest.mark.parametrize(
    "text,expected",
    [
        ("uniform", UniformBase()),
        ("normal", NormalBase()),
        ("cauchy", CauchyBase()),
        ("exp:beta=2", ExponentialBase(2.0)),
        (" Normal ", NormalBase()),
    ],
)
def test_parse_base(text, expected):
    assert parse_base(text) == expected


@pytest.mark.parametrize("text", ["gamma", "exp:rate=2", "exp:beta=abc", "normal:mu=1", "exp:beta"])
def test_parse_base_errors(text):
    with pytest.raises(SpecParseError):
        parse_base(text)


def test_spec_roundtrip():
    for d in BASES:
        assert parse_base(d.spec()) == d
