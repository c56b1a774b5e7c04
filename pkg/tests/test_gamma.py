import math

import mpmath
import pytest
from hypothesis import given, strategies as st

from compdistinct.gammafn import gamma, log_gamma

LN2 = math.log(2)


def _rel(z):
    ref = complex(mpmath.gamma(z))
    return abs(gamma(z) - ref) / abs(ref)


@pytest.mark.parametrize("k", [1, 2, 3, 4, 5, -1, -3, -5])
def test_imaginary_axis_twelve_digits(k):
    assert _rel(2j * math.pi * k / LN2) < 1e-12


@given(st.floats(-6.0, 8.0), st.floats(-46.0, 46.0))
def test_against_mpmath(x, y):
    z = complex(x, y)
    if abs(z - round(x)) < 1e-3 and round(x) <= 0:
        return  # near a pole
    assert _rel(z) < 1e-12


def test_real_values():
    assert gamma(5).real == pytest.approx(24.0, rel=1e-14)
    assert gamma(0.5).real == pytest.approx(math.sqrt(math.pi), rel=1e-14)


def test_imaginary_axis_modulus_identity():
    # |Γ(iy)|^2 = π / (y sinh(πy))
    for y in (0.5, 3.0, 9.06, 27.0):
        assert abs(gamma(1j * y)) ** 2 == pytest.approx(math.pi / (y * math.sinh(math.pi * y)), rel=1e-12)


def test_pole():
    with pytest.raises(ZeroDivisionError):
        log_gamma(-2.0)
