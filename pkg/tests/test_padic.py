import pytest
from fractions import Fraction
from hypothesis import given, strategies as st

from padic_euler import padic
from padic_euler.errors import DivisionByZeroAtPrecision, InvalidPrime, PrimeMismatch
from padic_euler.errors import RequestedPrecisionUnavailable
from padic_euler.padic import Norm, agreement, eq_to_precision, from_rational, embed, inv
from padic_euler.padic import add, norm, pochhammer, pow_int, valuation, with_prec, zero

fractions = st.fractions(min_value=-200, max_value=200, max_denominator=60)


def test_from_rational():
    x = from_rational(Fraction(1, 2), 5, 2)
    assert x.valuation == 0 and x.unit == 13 and x.aprec == 2
    assert x.digits() == [3, 2]
    assert str(x) == "5^0 * (3 + 2*5) + O(5^2)"


def test_from_rational_valuation():
    x = from_rational(Fraction(3, 25), 5, 4)
    assert x.valuation == -2 and x.relprec == 6 and x.unit == 3
    assert from_rational(125, 5, 3).is_zero


def test_small_examples():
    x = from_rational(Fraction(1, 5), 5, 10)
    assert valuation(x) == -1 and x.unit == 1
    y = add(from_rational(2, 5, 10), from_rational(3, 5, 10))
    assert valuation(y) == 1 and y.unit == 1 and y.aprec == 10
    assert norm(from_rational(5, 5, 10)).value == Fraction(1, 5)
    assert norm(from_rational(1, 5, 10)).value == 1
    assert eq_to_precision(from_rational(1, 5, 10), from_rational(1 + 5**8, 5, 10), 8)
    assert not eq_to_precision(from_rational(1, 5, 10), from_rational(2, 5, 10), 1)
    assert valuation(zero(5, 4)) == padic.INFINITY


def test_inverse():
    x = inv(from_rational(7, 5, 2))
    assert x.unit == 18 and x.aprec == 2


def test_inverse_precision():
    x = inv(from_rational(5, 5, 4))
    assert x.valuation == -1 and x.aprec == 2


def test_division_by_zero():
    with pytest.raises(DivisionByZeroAtPrecision):
        inv(zero(5, 10))
    with pytest.raises(DivisionByZeroAtPrecision):
        from_rational(1, 5, 10) / from_rational(5**10, 5, 10)


@pytest.mark.parametrize("p", [2, 4, 9, 1, 0, -3])
def test_invalid_prime(p):
    with pytest.raises(InvalidPrime):
        from_rational(1, p, 5)


def test_prime_mismatch():
    with pytest.raises(PrimeMismatch):
        from_rational(1, 5, 5) + from_rational(1, 7, 5)


def test_precision_propagation():
    a = from_rational(Fraction(1, 3), 5, 5)
    b = from_rational(Fraction(2, 7), 5, 3)
    assert (a + b).aprec == 3
    assert (from_rational(5, 5, 4) * from_rational(3, 5, 3)).aprec == 4
    assert (zero(5, 3) * from_rational(25, 5, 10)).aprec == 5


def test_constant_coercion():
    a = from_rational(Fraction(1, 3), 5, 8)
    assert (a + Fraction(1, 2)).aprec == 8
    assert agreement(a + Fraction(1, 2), from_rational(Fraction(5, 6), 5, 8)) == 8
    assert agreement(2 * a, from_rational(Fraction(2, 3), 5, 8)) == 8


def test_zero():
    z = zero(5, 3)
    assert z.is_zero and z.relprec == 0
    assert str(z) == "O(5^3)"
    assert z.to_json() == {"p": 5, "val": None, "digits": [], "prec": 3}
    assert (from_rational(7, 5, 3) - from_rational(7 + 125, 5, 6)).is_zero


def test_to_json():
    x = from_rational(Fraction(1, 2), 5, 2)
    assert x.to_json() == {"p": 5, "val": 0, "digits": [3, 2], "prec": 2}


def test_embed():
    x = embed(Fraction(1, 25), 5, 4)
    assert x.valuation == -2 and x.relprec == 4 and x.aprec == 2


def test_with_prec():
    x = with_prec(from_rational(Fraction(1, 2), 5, 10), 2)
    assert x == from_rational(Fraction(1, 2), 5, 2)


def test_norm():
    assert norm(from_rational(Fraction(1, 25), 5, 5)) == Norm(Fraction(25), False)
    assert norm(from_rational(10, 5, 5)) == Norm(Fraction(1, 5), False)
    assert norm(zero(5, 3)) == Norm(Fraction(1, 125), True)


def test_eq_to_precision():
    a = from_rational(1, 5, 10)
    b = from_rational(1 + 5**3, 5, 10)
    assert agreement(a, b) == 3
    assert eq_to_precision(a, b, 3) and not eq_to_precision(a, b, 4)
    with pytest.raises(RequestedPrecisionUnavailable):
        eq_to_precision(a, from_rational(1, 5, 4), 6)


def test_pow_int():
    x = from_rational(Fraction(2, 5), 5, 6)
    assert agreement(pow_int(x, 3), from_rational(Fraction(8, 125), 5, 20)) >= pow_int(x, 3).aprec
    assert pow_int(x, 0) == padic.one(5, x.relprec)
    assert agreement(pow_int(x, -2) * pow_int(x, 2), from_rational(1, 5, 20)) >= 5


def test_pochhammer():
    s = from_rational(1, 5, 10)
    assert agreement(pochhammer(s, 3), from_rational(6, 5, 10)) == 10
    assert pochhammer(s, 0) == padic.one(5, 10)


@given(fractions, fractions, fractions)
def test_ring_laws(a, b, c):
    A, B, C = (from_rational(q, 5, 12) for q in (a, b, c))
    for lhs, rhs in [
        ((A + B) + C, A + (B + C)),
        (A * (B + C), A * B + A * C),
        (A * B, B * A),
        (A - B, -(B - A)),
    ]:
        assert agreement(lhs, rhs) >= min(lhs.aprec, rhs.aprec)


@given(fractions, st.sampled_from([3, 5, 7]))
def test_round_trip(q, p):
    x = from_rational(q, p, 8)
    assert from_rational(x.to_rational(), p, 8) == x


@given(fractions.filter(lambda q: q != 0))
def test_inverse_product(q):
    x = from_rational(q, 7, 10)
    product = x * inv(x)
    assert agreement(product, from_rational(1, 7, 20)) >= product.aprec
