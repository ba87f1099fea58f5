import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nlshape.specfun import PoleError, digamma, gamma_ratio, log_gamma

# high-precision reference values (mpmath, 30 digits)
LOG_GAMMA_NEG_QUARTER = 1.58957531255118599031589721478
DIGAMMA_ONE = -0.577215664901532860606512090082
DIGAMMA_HALF = -1.963510026021423479440976333
RATIO_HALF_NEG_QUARTER = -0.361602271158019285633925362461


def test_log_gamma_trivial_values():
    assert log_gamma(1.0) == pytest.approx_sig = None
    one = log_gamma(1.0)
    assert one.sign == 1 and abs(one.magnitude) < 1e-14
    five = log_gamma(5.0)
    assert five.sign == 1
    assert five.magnitude == pytest.approx(math.log(24.0), rel=1e-14)
    half = log_gamma(0.5)
    assert half.magnitude == pytest.approx(0.5 * math.log(math.pi), rel=1e-14)


def test_log_gamma_negative_argument_reflection():
    got = log_gamma(-0.25)
    assert got.sign == -1  # Gamma is negative on (-1, 0)
    assert got.magnitude == pytest.approx(LOG_GAMMA_NEG_QUARTER, abs=1e-13)


@pytest.mark.parametrize(
    "x, sign, magnitude",
    [
        (37.25, 1, 96.6198845882781011789881316304),
        (-5.5, 1, -4.51783217400774135437868496098),
        (49.5, 1, 142.617282821145982604456099118),
    ],
)
def test_log_gamma_reference_values(x, sign, magnitude):
    got = log_gamma(x)
    assert got.sign == sign
    assert got.magnitude == pytest.approx(magnitude, rel=1e-13, abs=1e-13)


def test_pole_rejection():
    for x in (0.0, -1.0, -7.0):
        with pytest.raises(PoleError):
            log_gamma(x)
        with pytest.raises(PoleError):
            digamma(x)


def test_digamma_values():
    assert digamma(2.0) - digamma(1.0) == pytest.approx(1.0, abs=1e-13)
    assert digamma(1.0) == pytest.approx(DIGAMMA_ONE, abs=1e-13)
    assert digamma(0.5) == pytest.approx(DIGAMMA_HALF, abs=1e-13)
    assert digamma(0.5) == pytest.approx(digamma(1.0) - 2.0 * math.log(2.0), abs=1e-12)


def test_digamma_recurrence_grid():
    x = np.linspace(0.1, 40.0, 400)
    err = np.abs(digamma(x + 1.0) - digamma(x) - 1.0 / x)
    assert err.max() < 1e-11


def test_gamma_ratio_values():
    assert gamma_ratio(5.0, 4.0) == pytest.approx(4.0, rel=1e-13)
    assert gamma_ratio(1.5, 0.5) == pytest.approx(0.5, rel=1e-13)
    assert gamma_ratio(0.5, -0.25) == pytest.approx(RATIO_HALF_NEG_QUARTER, rel=1e-12)
    assert gamma_ratio(0.5, -0.25) < 0


@settings(max_examples=200, deadline=None)
@given(st.floats(min_value=0.05, max_value=45.0))
def test_gamma_ratio_recurrence(x):
    assert gamma_ratio(x + 1.0, x) == pytest.approx(x, rel=1e-12)


@settings(max_examples=200, deadline=None)
@given(st.floats(min_value=0.01, max_value=0.99))
def test_reflection_identity(x):
    for arg in (x, -x):
        a, b = log_gamma(arg), log_gamma(1.0 - arg)
        lhs = a.sign * b.sign * math.exp(a.magnitude + b.magnitude)
        assert lhs == pytest.approx(math.pi / math.sin(math.pi * arg), rel=1e-11)


def test_signed_log_value_roundtrip():
    sl = log_gamma(-2.5)
    assert sl.value() == pytest.approx(math.gamma(-2.5), rel=1e-13)
