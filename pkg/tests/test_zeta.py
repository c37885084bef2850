import pytest
from fractions import Fraction

from padic_euler.errors import BudgetExceeded, DomainError, ExponentNotIntegral, InLambda
from padic_euler.errors import NotInLambda, ReductionFailed, RequestedPrecisionUnavailable
from padic_euler.errors import SeriesNotApplicable, ZeroParameter
from padic_euler.loggamma import zeta_star_integral_oracle
from padic_euler.padic import agreement, from_rational
from padic_euler.settings import settings
from padic_euler.zeta import ParameterVector, Strategy, StrategyKind, ZetaRequest, in_lambda
from padic_euler.zeta import zeta, zeta_distribution, zeta_neg_int, zeta_series_derivative
from padic_euler.zeta import zeta_star


def request(s, x, omega, p=5, M=10, strategy=None):
    return ZetaRequest.create(p, M, s, x, omega, strategy)


def assert_close(value, expected, M):
    assert agreement(value, from_rational(expected, value.prime, M)) >= M


def test_strategy_parse():
    assert Strategy.parse("auto") == Strategy()
    assert Strategy.parse("Series") == Strategy.series()
    assert Strategy.parse("reduce(2)") == Strategy.reduce(2)
    assert Strategy.parse("integral:4") == Strategy.integral(4)
    assert str(Strategy.reduce(3)) == "reduce(3)" and str(Strategy()) == "auto"
    with pytest.raises(ValueError):
        Strategy.parse("fast")


def test_parameter_vector():
    omega = ParameterVector.of([1, Fraction(5, 3)], 5)
    assert omega.N == 2 and omega.min_valuation == 0 and omega.norm == 1
    assert omega.total == Fraction(8, 3)
    assert omega.contains(0) and omega.contains(Fraction(2, 3))
    assert omega.series_applies(Fraction(1, 5)) and not omega.series_applies(0)
    assert str(omega) == "(1, 5/3)"
    assert in_lambda(25, [5, 10], 5) and not in_lambda(1, [5, 10], 5)
    with pytest.raises(ZeroParameter):
        ParameterVector.of([1, 0], 5)


def test_series_value():
    result = zeta(request(0, Fraction(1, 5), [1]))
    assert result.strategy == "series" and result.guaranteed_prec == 10
    assert_close(result.value, Fraction(-3, 2), 10)


def test_s_one():
    result = zeta(request(1, Fraction(1, 5), [1, 2]))
    assert_close(result.value, Fraction(1), 10)


def test_negative_integer_closed_form():
    assert_close(zeta_neg_int(1, Fraction(1, 5), [1], 5, 10).value, Fraction(-3, 2), 10)
    assert_close(zeta_neg_int(2, Fraction(1, 5), [1], 5, 10).value, Fraction(-4), 10)


@pytest.mark.parametrize("p", [3, 5, 7])
@pytest.mark.parametrize("x", [(1, 1), (2, 1), (1, 2)])
@pytest.mark.parametrize("k", range(1, 7))
@pytest.mark.parametrize("omega", [[], [1], [1, 2], [1, 1]])
def test_interpolation(p, x, k, omega):
    x = Fraction(x[0], p ** x[1])
    series = zeta(request(1 - k, x, omega, p=p, M=30, strategy=Strategy.series()))
    closed = zeta_neg_int(k, x, omega, p, 30)
    assert agreement(series.value, closed.value) >= 30


@pytest.mark.parametrize("k", [1, 3])
def test_interpolation_several_parameters(k):
    x = Fraction(2, 5)
    series = zeta(request(1 - k, x, [1, 2, -3], M=20))
    closed = zeta_neg_int(k, x, [1, 2, -3], 5, 20)
    assert agreement(series.value, closed.value) >= 20


def test_in_lambda():
    with pytest.raises(InLambda) as e:
        zeta(request(0, 0, [1]))
    assert str(e.value) == "x in Lambda; use zeta-star"
    with pytest.raises(InLambda):
        zeta(request(0, Fraction(2, 3), [1, 2]))


def test_series_outside_its_regime():
    with pytest.raises(SeriesNotApplicable):
        zeta(request(0, Fraction(2, 3), [1], strategy=Strategy.series()))


@pytest.mark.parametrize("s", [0, 2, -3])
def test_strategies_agree(s):
    x, omega = Fraction(1, 2), [5]
    series = zeta(request(s, x, omega, M=8, strategy=Strategy.series()))
    for k in [1, 2]:
        reduced = zeta(request(s, x, omega, M=8, strategy=Strategy.reduce(k)))
        assert reduced.strategy == f"reduce({k})"
        assert agreement(series.value, reduced.value) >= 8


def test_numeric_strategy():
    x, omega = Fraction(1, 2), [5]
    series = zeta(request(0, x, omega, M=6, strategy=Strategy.series()))
    numeric = zeta(request(0, x, omega, M=6, strategy=Strategy.integral(3)))
    assert numeric.strategy == "integral(3)" and numeric.guaranteed_prec >= 2
    assert agreement(series.value, numeric.value) >= numeric.guaranteed_prec


def test_reduction_not_admissible():
    with pytest.raises(ReductionFailed):
        zeta(request(0, Fraction(2, 3), [1], strategy=Strategy.reduce(1)))


def test_reduction_budget():
    settings.term_budget = 10
    with pytest.raises(BudgetExceeded):
        zeta(request(0, Fraction(1, 2), [5], strategy=Strategy.reduce(2)))


def test_reduction_cap():
    settings.reduction_cap = 1
    with pytest.raises(ReductionFailed, match="reduction cap"):
        zeta(request(0, Fraction(1, 2), [5], strategy=Strategy.reduce(2)))
    result = zeta(request(0, Fraction(1, 2), [5], strategy=Strategy.reduce(1)))
    assert result.strategy == "reduce(1)"


def test_derivative():
    req = request(0, Fraction(1, 5), [1])
    assert_close(zeta_series_derivative(req, 1).value, Fraction(5), 10)
    assert zeta_series_derivative(req, 2).value.is_zero


@pytest.mark.parametrize("m", [1, 3, 5])
def test_distribution(m):
    req = request(2, Fraction(1, 5), [1], M=8)
    assert agreement(zeta_distribution(req, m).value, zeta(req).value) >= 8


def test_distribution_even():
    with pytest.raises(DomainError):
        zeta_distribution(request(2, Fraction(1, 5), [1]), 2)


def test_star():
    assert zeta_star(0, 0, [5], 5, 10).value.is_zero
    result = zeta_star(2, 0, [1], 5, 10)
    assert result.strategy == "star" and result.value.aprec == 10
    estimate = zeta_star_integral_oracle(2, 0, [1], 5, 10, 4)
    assert estimate.stable_digits >= 1
    assert agreement(result.value, estimate.value) >= estimate.stable_digits


def test_star_asymmetric_parameters():
    # x = 0 with omega = (1) or (5) gives symmetric zeros, omega = (1, 2) does not
    result = zeta_star(0, 0, [1, 2], 5, 10)
    estimate = zeta_star_integral_oracle(0, 0, [1, 2], 5, 10, 4)
    assert not result.value.is_zero
    assert estimate.stable_digits >= 2
    assert agreement(result.value, estimate.value) >= 2
    assert agreement(-result.value, estimate.value) < 2


def test_star_preconditions():
    with pytest.raises(NotInLambda):
        zeta_star(0, Fraction(1, 5), [1], 5, 10)
    with pytest.raises(DomainError):
        zeta_star(0, 0, [], 5, 10)


def test_request_validation():
    with pytest.raises(ExponentNotIntegral):
        request(Fraction(1, 5), Fraction(1, 5), [1])
    with pytest.raises(ValueError):
        request(0, Fraction(1, 5), [1], M=0)
    with pytest.raises(RequestedPrecisionUnavailable):
        request(from_rational(2, 5, 12), Fraction(1, 5), [1])
    req = request(from_rational(2, 5, 30), Fraction(1, 5), [1])
    assert req.s == 2 and req.strategy.kind is StrategyKind.auto


def test_to_json():
    result = zeta(request(1, Fraction(1, 5), [1], M=3))
    assert result.to_json() == {
        "schema": 1,
        "value": {"p": 5, "val": 0, "digits": [1, 0, 0], "prec": 3},
        "strategy": "series",
        "terms": result.terms,
        "guaranteed_prec": 3,
    }
