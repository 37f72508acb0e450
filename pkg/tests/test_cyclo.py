import cmath
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sl3mtc.cyclo import (
    Cyclo,
    cyclotomic_polynomial,
    euler_phi,
    root_of_unity,
    root_of_unity_exponent,
    to_complex,
)

CONDUCTORS = [1, 3, 4, 5, 8, 12, 18, 24, 30]


def elements(n):
    coeffs = st.lists(
        st.fractions(min_value=-5, max_value=5, max_denominator=6), min_size=1, max_size=min(n, 8)
    )
    return coeffs.map(lambda cs: Cyclo.from_coeffs(n, cs))


@st.composite
def triple(draw):
    n = draw(st.sampled_from(CONDUCTORS))
    return n, draw(elements(n)), draw(elements(n)), draw(elements(n))


@pytest.mark.parametrize("n", range(1, 40))
def test_euler_phi_matches_gcd_count(n):
    assert euler_phi(n) == sum(1 for j in range(1, n + 1) if math.gcd(j, n) == 1)


@pytest.mark.parametrize("n", [1, 2, 3, 6, 7, 12, 15, 30, 54])
def test_cyclotomic_polynomial_vanishes_on_primitive_roots(n):
    poly = cyclotomic_polynomial(n)
    assert len(poly) - 1 == euler_phi(n)
    for j in range(1, n + 1):
        if math.gcd(j, n) == 1:
            z = cmath.exp(2j * math.pi * j / n)
            assert abs(np.polyval(list(reversed(poly)), z)) < 1e-8


def test_small_identities():
    w = root_of_unity(3)
    assert w + w * w == Cyclo.from_rational(-1, 3)
    z8 = root_of_unity(8)
    assert z8.conjugate() * z8 == Cyclo.one(8)
    assert w.embed(6) == root_of_unity(6, 2)
    assert sum((root_of_unity(5, j) for j in range(5)), Cyclo.zero(5)).is_zero()
    assert root_of_unity(7) ** 7 == Cyclo.one(7)


@settings(max_examples=60, deadline=None)
@given(triple())
def test_ring_axioms(data):
    _, a, b, c = data
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == Cyclo.zero(a.n)


@settings(max_examples=60, deadline=None)
@given(triple())
def test_inverse_and_division(data):
    _, a, b, _ = data
    if a.is_zero():
        with pytest.raises(ZeroDivisionError):
            a.inverse()
    else:
        assert a * a.inverse() == Cyclo.one(a.n)
        assert (b / a) * a == b


@settings(max_examples=60, deadline=None)
@given(triple())
def test_float_rendering_is_a_homomorphism(data):
    _, a, b, _ = data
    assert abs(to_complex(a * b) - to_complex(a) * to_complex(b)) < 1e-9
    assert abs(to_complex(a + b) - to_complex(a) - to_complex(b)) < 1e-9
    assert abs(to_complex(a.conjugate()) - to_complex(a).conjugate()) < 1e-9


@settings(max_examples=60, deadline=None)
@given(triple())
def test_json_round_trip(data):
    _, a, _, _ = data
    assert Cyclo.from_json(a.to_json()) == a


@given(st.sampled_from(CONDUCTORS), st.integers(0, 100))
def test_root_exponent_recovered(n, j):
    r = root_of_unity_exponent(root_of_unity(n, j))
    assert r == Fraction(j % n, n)


def test_exponent_of_non_root_is_none():
    assert root_of_unity_exponent(Cyclo.from_rational(2, 4)) is None


def test_embedding_mismatch_raises():
    with pytest.raises(ValueError, match="incompatible conductor"):
        root_of_unity(4).embed(6)


def test_equality_across_conductors():
    assert root_of_unity(3) == root_of_unity(12, 4)
    assert root_of_unity(3) != root_of_unity(12, 8)


def test_precision_bounds():
    with pytest.raises(ValueError):
        to_complex(Cyclo.one(3), precision=0)
    with pytest.raises(ValueError):
        to_complex(Cyclo.one(3), precision=16)
