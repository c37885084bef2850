"""The multiple p-adic Diamond-Euler Log Gamma function and its derivatives psi^(k).

LogGamma(x; w) = (x / <x>) d/ds (zeta(s, x; w) / (s - 1)) at s = 0, which is also the fermionic
integral of y (log_p y - 1) at y = x + w . t. The production path is the Stirling series

    x (log_p x - 1) + E_{N,1}(0) log_p x + sum_{j>=2} (-1)^j E_{N,j}(0) x^(1-j) / (j (j-1))

together with the p^k distribution relation.
"""

from __future__ import annotations
from dataclasses import dataclass, field, replace
from fractions import Fraction
from math import factorial
from typing import Sequence

import sympy

from . import euler
from .errors import DomainError, InLambda, SeriesNotApplicable
from .fermionic import IntegrandSpec, IntegralEstimate, fermionic_integral_numeric
from .padic import PAdicNumber, RationalLike, embed, floor_log, from_rational, pow_int
from .padic import rational, vp_rational, zero
from .projection import angle_ratio, iwasawa_log
from .util import format_rational, logger as log
from .zeta import ParameterVector, Strategy, StrategyKind, ZetaRequest, check_reduction
from .zeta import check_series, check_starred, distribution_terms, finish, parameters
from .zeta import series_length, starred_terms, working_precision, zeta


@dataclass(frozen=True)
class LogGammaRequest:
    p: int
    M: int
    x: Fraction
    omega: ParameterVector
    strategy: Strategy = field(default_factory=Strategy)

    @staticmethod
    def create(
        p: int,
        M: int,
        x: RationalLike,
        omega: ParameterVector | Sequence[RationalLike],
        strategy: Strategy | None = None,
    ):
        if M < 1:
            raise ValueError(f"precision must be at least 1, got {M}")
        return LogGammaRequest(p, M, rational(x), parameters(omega, p), strategy or Strategy())

    def at(self, x: Fraction, **changes):
        return replace(self, x=x, **changes)

    def zeta_request(self, s: RationalLike, M: int | None = None):
        return ZetaRequest.create(self.p, M or self.M, s, self.x, self.omega, Strategy.series())


def _check_series(req: LogGammaRequest):
    if req.x == 0:
        raise SeriesNotApplicable("log_p x is undefined for x = 0")
    if req.omega.N > 0:
        check_series(req.x, req.omega)


def stirling_length(x: Fraction, omega: ParameterVector, W: int) -> int:
    """Smallest J such that every term j >= J is below p^W.

    Term j has valuation at least j (v_min - v(x)) + v(x) - floor(log_p j), which is
    non-decreasing in j.
    """
    p = omega.p
    delta = int(omega.min_valuation) - int(vp_rational(x, p))
    vx = int(vp_rational(x, p))
    j = 2
    while j * delta + vx - floor_log(p, j) < W:
        j += 1
    return j


def _log_and_embedding(x: Fraction, p: int, W: int):
    vx = int(vp_rational(x, p))
    X = embed(x, p, W + 2 * abs(vx) + 2)
    return X, iwasawa_log(X)


def log_gamma_stirling(req: LogGammaRequest) -> PAdicNumber:
    _check_series(req)
    p, x, omega = req.p, req.x, req.omega
    W = working_precision(req.M)
    X, log_x = _log_and_embedding(x, p, W)
    value = X * (log_x - 1)
    if omega.N > 0:
        J = stirling_length(x, omega, W)
        table = euler.build_table(omega.N, omega.omegas, max(J - 1, 1))
        tail = sum(
            ((-1) ** j * table.coeffs[j] * x ** (1 - j) / (j * (j - 1)) for j in range(2, J)),
            Fraction(0),
        )
        log.debug(f"Stirling series with {J} terms for x = {format_rational(x)}")
        value = value + log_x * table.coeffs[1] + from_rational(tail, p, W)
    return finish(value, req.M)


def _reduce(req: LogGammaRequest, k: int) -> PAdicNumber:
    check_reduction(req.x, req.omega, k)
    log.info(f"log_gamma: reducing with p^{k}, {req.p ** (k * req.omega.N)} series evaluations")
    total = zero(req.p, working_precision(req.M))
    for sign, y in distribution_terms(req.x, req.omega, req.p**k):
        term = log_gamma_stirling(req.at(y))
        total = total + (term if sign > 0 else -term)
    return finish(total * req.p**k, req.M)


def log_gamma(req: LogGammaRequest) -> PAdicNumber:
    kind = req.strategy.kind
    if kind is StrategyKind.series:
        return log_gamma_stirling(req)
    if kind is StrategyKind.reduce:
        return _reduce(req, req.strategy.k)
    if kind is StrategyKind.integral:
        return log_gamma_integral_oracle(req, req.strategy.k).value

    if req.omega.contains(req.x):
        raise InLambda("x in Lambda; use loggamma-star")
    return log_gamma_stirling(req)


def log_gamma_integral_oracle(req: LogGammaRequest, L: int) -> IntegralEstimate:
    """Numeric fermionic integral of y (log_p y - 1), with its stable digits."""
    spec = IntegrandSpec.xlogx_shift(req.x, req.omega.omegas)
    return fermionic_integral_numeric(spec, req.p, L, req.M)


def psi_integral_oracle(req: LogGammaRequest, L: int) -> IntegralEstimate:
    """Numeric fermionic integral of log_p y."""
    spec = IntegrandSpec.log_shift(req.x, req.omega.omegas)
    return fermionic_integral_numeric(spec, req.p, L, req.M)


def _psi_length(x: Fraction, omega: ParameterVector, W: int) -> int:
    # term j of the psi series has valuation >= j (v_min - v(x)) - floor(log_p j)
    if omega.N == 0:
        return 1
    p = omega.p
    delta = int(omega.min_valuation) - int(vp_rational(x, p))
    j = 1
    while j * delta - floor_log(p, j) < W:
        j += 1
    return j


def _falling(a: int, m: int) -> int:
    result = 1
    for i in range(m):
        result *= a - i
    return result


def psi_series(k: int, req: LogGammaRequest) -> PAdicNumber:
    """psi^(k) from the Laurent series.

    k = 1: log_p x + sum_{j>=1} (-1)^(j+1) E_{N,j}(0) x^-j / j
    k >= 2: sum_{j>=0} (-1)^j E_{N,j}(0) (-j-1)(-j-2)...(-j-k+2) x^(1-j-k)
    """
    assert k >= 1
    _check_series(req)
    p, x, omega = req.p, req.x, req.omega
    W = working_precision(req.M)
    if k == 1:
        J = _psi_length(x, omega, W)
        table = euler.build_table(omega.N, omega.omegas, J - 1)
        total = sum(
            ((-1) ** (j + 1) * table.coeffs[j] * x**-j / j for j in range(1, J)), Fraction(0)
        )
        _, log_x = _log_and_embedding(x, p, W)
        return finish(log_x + from_rational(total, p, W), req.M)

    vx = int(vp_rational(x, p))
    J = series_length(x, omega, W, shift=(1 - k) * vx)
    table = euler.build_table(omega.N, omega.omegas, J - 1)
    terms = (
        (-1) ** j * table.coeffs[j] * _falling(-j - 1, k - 2) * x ** (1 - j - k)
        for j in range(J)
    )
    total = sum(terms, Fraction(0))
    return finish(from_rational(total, p, W), req.M)


def psi(k: int, req: LogGammaRequest) -> PAdicNumber:
    """psi^(k) = D^k LogGamma.

    For k >= 2 this is (-1)^k (k-2)! (<x>/x)^(k-1) zeta(k, x): differentiating log_p y gives
    (-1)^k (k-2)! y^(1-k), and y^(1-k) = (<x>/x)^(k-1) <y>^(1-k) for y in x + w Z_p^N.
    """
    assert k >= 1
    if k == 1:
        if req.strategy.kind is StrategyKind.integral:
            return psi_integral_oracle(req, req.strategy.k).value
        return psi_series(1, req)

    _check_series(req)
    vx = int(vp_rational(req.x, req.p))
    shift = max(0, (k - 1) * vx)
    z = zeta(req.zeta_request(k, req.M + shift)).value
    relprec = working_precision(req.M) + abs((k - 1) * vx)
    ratio = pow_int(angle_ratio(embed(req.x, req.p, relprec)), k - 1)
    value = ratio * z * factorial(k - 2)
    return finish(value if k % 2 == 0 else -value, req.M)


def log_gamma_star(
    x: RationalLike, omega: ParameterVector | Sequence[RationalLike], p: int, M: int
) -> PAdicNumber:
    """Signed sum of LogGamma((x + j . w) / p) over j in [0, p)^N with |x + j . w|_p = |w|_p."""
    req = LogGammaRequest.create(p, M, x, omega, Strategy.series())
    check_starred(req.x, req.omega)
    if req.omega.min_valuation > 0:
        return zero(p, M)
    total = zero(p, working_precision(M))
    for sign, y in starred_terms(req.x, req.omega):
        term = log_gamma_stirling(req.at(y))
        total = total + (term if sign > 0 else -term)
    return finish(total, M)


def log_gamma_star_integral_oracle(
    x: RationalLike, omega: ParameterVector | Sequence[RationalLike], p: int, M: int, L: int
) -> IntegralEstimate:
    """Numeric integral of y (log_p y - 1) zeroed where |y|_p < |w|_p, divided by p.

    Splitting t = j + p u turns the zeroed integral into p times the starred sum.
    """
    omega = parameters(omega, p)
    check_starred(rational(x), omega)
    if omega.min_valuation > 0:
        return IntegralEstimate(zero(p, M), M, L, 0)
    spec = IntegrandSpec.xlogx_shift(x, omega.omegas, starred=True)
    estimate = fermionic_integral_numeric(spec, p, L, M + 1)
    value = estimate.value / p
    return IntegralEstimate(value, value.aprec, L, estimate.terms)


def zeta_star_integral_oracle(
    s: RationalLike,
    x: RationalLike,
    omega: ParameterVector | Sequence[RationalLike],
    p: int,
    M: int,
    L: int,
) -> IntegralEstimate:
    """Numeric integral of <y>^(1-s) zeroed where |y|_p < |w|_p."""
    omega = parameters(omega, p)
    check_starred(rational(x), omega)
    if omega.min_valuation > 0:
        return IntegralEstimate(zero(p, M), M, L, 0)
    spec = IntegrandSpec.angle_power(x, omega.omegas, s, starred=True)
    return fermionic_integral_numeric(spec, p, L, M)


def log_gamma_distribution_correction(req: LogGammaRequest, m: int) -> PAdicNumber:
    """E_{N,1}(x; w) log_p m, the term the distribution relation adds to the sum over j."""
    W = working_precision(req.M)
    correction = euler.euler_polynomial(1, req.x, req.omega.omegas)
    return iwasawa_log(embed(m, req.p, W + 1)) * correction


def log_gamma_distribution(req: LogGammaRequest, m: int) -> PAdicNumber:
    """m sum_j (-1)^|j| LogGamma((x + j . w) / m) + E_{N,1}(x; w) log_p m, for odd m."""
    if m < 1 or m % 2 == 0:
        raise DomainError(f"distribution relation needs an odd positive m, got {m}")
    W = working_precision(req.M)
    total = zero(req.p, W)
    for sign, y in distribution_terms(req.x, req.omega, m):
        term = log_gamma(req.at(y, strategy=Strategy()))
        total = total + (term if sign > 0 else -term)
    return finish(total * m + log_gamma_distribution_correction(req, m), req.M)


def log_gamma_difference_quotient(req: LogGammaRequest, r: int) -> PAdicNumber:
    """(x/<x>) (F(p^r) - F(0)) / p^r with F(s) = zeta(s, x; w) / (s - 1).

    Approaches LogGamma(x; w) as r grows; zeta is evaluated r digits deeper to pay for the
    division by the step.
    """
    p, h = req.p, req.p**r
    M = req.M + r
    f0 = -zeta(req.zeta_request(0, M)).value
    fh = zeta(req.zeta_request(h, M)).value / (h - 1)
    quotient = (fh - f0) / h
    vx = int(vp_rational(req.x, p))
    relprec = working_precision(req.M) + abs(vx)
    return quotient / angle_ratio(embed(req.x, p, relprec))


def _sympy_coeffs(omega: Sequence[RationalLike], degree: int):
    table = euler.build_table(len(omega), omega, degree)
    return [sympy.Rational(c.numerator, c.denominator) for c in table.coeffs]


laurent_variable = sympy.Symbol("x", positive=True)


def stirling_laurent(omega: Sequence[RationalLike], degree: int) -> sympy.Expr:
    """Stirling series through the x^(1-degree) term as a symbolic expression in x."""
    x, c = laurent_variable, _sympy_coeffs(omega, degree)
    expr = x * (sympy.log(x) - 1) + c[1] * sympy.log(x)
    for j in range(2, degree + 1):
        expr += (-1) ** j * c[j] * x ** (1 - j) / (j * (j - 1))
    return expr


def psi_laurent(omega: Sequence[RationalLike], degree: int, k: int = 1) -> sympy.Expr:
    """psi^(k) series through the x^(-degree) term (k = 1) or the x^(1-k-degree) term."""
    x, c = laurent_variable, _sympy_coeffs(omega, degree)
    if k == 1:
        expr = sympy.log(x)
        for j in range(1, degree + 1):
            expr += (-1) ** (j + 1) * c[j] * x ** (-j) / j
        return expr
    return sum(
        ((-1) ** j * c[j] * _falling(-j - 1, k - 2) * x ** (1 - j - k) for j in range(degree + 1)),
        sympy.Integer(0),
    )


def laurent_mismatch(lhs: sympy.Expr, rhs: sympy.Expr) -> sympy.Expr:
    """Difference of two truncated Laurent expansions, zero when they agree term by term."""
    return sympy.expand(lhs - rhs)


def differentiate(expr: sympy.Expr, k: int = 1) -> sympy.Expr:
    return sympy.diff(expr, laurent_variable, k)


def log_gamma_scaling_term(req: LogGammaRequest, c: RationalLike) -> PAdicNumber:
    """(x / <x>) zeta(0, x; w) log_p c, the correction in the scaling relation."""
    p = req.p
    W = working_precision(req.M)
    vx = int(vp_rational(req.x, p))
    z = zeta(req.zeta_request(0, req.M + abs(vx))).value
    log_c = iwasawa_log(embed(rational(c), p, W + abs(vx)))
    return z * log_c / angle_ratio(embed(req.x, p, W + 2 * abs(vx)))
