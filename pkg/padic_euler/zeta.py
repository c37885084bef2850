"""The p-adic multiple Barnes-Euler zeta function

    zeta_{p,E,N}(s, x; w) = integral over Z_p^N of <x + w . t>^(1-s)

evaluated through its Laurent series in 1/x when |x|_p > |w|_p, and through the p^k distribution
relation when a reduction is explicitly requested.
"""

from __future__ import annotations
import itertools
import re
from dataclasses import dataclass, field, replace
from enum import Enum
from fractions import Fraction
from functools import cached_property
from typing import Callable, Sequence

from . import euler
from .errors import BudgetExceeded, DomainError, InLambda, NotInLambda, ReductionFailed
from .errors import RequestedPrecisionUnavailable, SeriesNotApplicable, ZeroParameter
from .padic import PAdicNumber, RationalLike, INFINITY, check_prime, embed, from_rational
from .padic import pow_int, rational, vp_rational, with_prec, zero
from .projection import angle, angle_ratio, binomial, check_exponent, exponent, one_unit_pow
from .fermionic import IntegrandSpec, fermionic_integral_numeric
from .settings import settings
from .util import format_rational, logger as log


class StrategyKind(Enum):
    auto = "auto"
    series = "series"
    reduce = "reduce"
    integral = "integral"


@dataclass(frozen=True)
class Strategy:
    kind: StrategyKind = StrategyKind.auto
    k: int = 0  # reduction depth, or level of the numeric integral

    def __str__(self):
        if self.kind in (StrategyKind.reduce, StrategyKind.integral):
            return f"{self.kind.value}({self.k})"
        return self.kind.value

    @staticmethod
    def series():
        return Strategy(StrategyKind.series)

    @staticmethod
    def reduce(k: int):
        return Strategy(StrategyKind.reduce, k)

    @staticmethod
    def integral(level: int):
        return Strategy(StrategyKind.integral, level)

    @staticmethod
    def parse(text: str):
        text = text.strip().lower()
        if text in ("auto", ""):
            return Strategy()
        if text in ("series", "stirling"):
            return Strategy.series()
        if match := re.fullmatch(r"(reduce|integral)[(:]?(\d+)\)?", text):
            return Strategy(StrategyKind(match.group(1)), int(match.group(2)))
        raise ValueError(
            f"Unknown strategy '{text}', expected auto, series, reduce(k) or integral(L)"
        )


@dataclass(frozen=True)
class ParameterVector:
    """Parameters w = (w_1, ..., w_N) with |w|_p = max |w_i|_p.

    For rational parameters their Z_p-span is Lambda = p^v Z_p with v = min v_p(w_i), so
    x lies outside Lambda exactly when |x|_p > |w|_p.
    """

    omegas: tuple[Fraction, ...]
    p: int

    @staticmethod
    def of(omegas: Sequence[RationalLike], p: int):
        check_prime(p)
        omegas = tuple(rational(w) for w in omegas)
        if any(w == 0 for w in omegas):
            raise ZeroParameter("all parameters omega_i must be non-zero")
        return ParameterVector(omegas, p)

    @property
    def N(self):
        return len(self.omegas)

    @cached_property
    def min_valuation(self) -> int | float:
        return min((vp_rational(w, self.p) for w in self.omegas), default=INFINITY)

    @property
    def norm(self) -> Fraction:
        if self.N == 0:
            return Fraction(0)
        return Fraction(self.p) ** -int(self.min_valuation)

    @property
    def total(self) -> Fraction:
        return sum(self.omegas, Fraction(0))

    def contains(self, x: RationalLike):
        """Membership of x in Lambda."""
        x = rational(x)
        return x == 0 or vp_rational(x, self.p) >= self.min_valuation

    def series_applies(self, x: RationalLike):
        x = rational(x)
        return x != 0 and vp_rational(x, self.p) < self.min_valuation

    def shift(self, x: Fraction, j: Sequence[int]):
        return x + sum((ji * w for ji, w in zip(j, self.omegas)), Fraction(0))

    def scaled(self, c: RationalLike):
        return ParameterVector.of([rational(c) * w for w in self.omegas], self.p)

    def __str__(self):
        return "(" + ", ".join(format_rational(w) for w in self.omegas) + ")"


def parameters(omega: ParameterVector | Sequence[RationalLike], p: int) -> ParameterVector:
    if isinstance(omega, ParameterVector):
        assert omega.p == p, f"parameters were built for p = {omega.p}, not {p}"
        return omega
    return ParameterVector.of(omega, p)


def in_lambda(x: RationalLike, omega: Sequence[RationalLike], p: int):
    return ParameterVector.of(omega, p).contains(x)


@dataclass(frozen=True)
class ZetaRequest:
    p: int
    M: int
    s: Fraction
    x: Fraction
    omega: ParameterVector
    strategy: Strategy = field(default_factory=Strategy)

    @staticmethod
    def create(
        p: int,
        M: int,
        s: PAdicNumber | RationalLike,
        x: RationalLike,
        omega: ParameterVector | Sequence[RationalLike],
        strategy: Strategy | None = None,
    ):
        if isinstance(s, PAdicNumber) and s.aprec < M + settings.guard_digits:
            raise RequestedPrecisionUnavailable(M + settings.guard_digits, s.aprec)
        s = exponent(s)
        check_exponent(s, check_prime(p))
        if M < 1:
            raise ValueError(f"precision must be at least 1, got {M}")
        omega = parameters(omega, p)
        return ZetaRequest(p, M, s, rational(x), omega, strategy or Strategy())

    def at(self, x: Fraction, **changes):
        return replace(self, x=x, **changes)


@dataclass(frozen=True)
class ZetaValue:
    value: PAdicNumber
    strategy: str
    terms: int
    guaranteed_prec: int

    def to_json(self):
        return {
            "schema": 1,
            "value": self.value.to_json(),
            "strategy": self.strategy,
            "terms": self.terms,
            "guaranteed_prec": self.guaranteed_prec,
        }

    def __str__(self):
        return (
            f"{self.value}\nstrategy: {self.strategy}, terms: {self.terms},"
            f" guaranteed precision: {self.guaranteed_prec}"
        )


def working_precision(M: int):
    return M + settings.guard_digits


def check_series(x: Fraction, omega: ParameterVector):
    if not omega.series_applies(x):
        raise SeriesNotApplicable(
            f"series needs |x|_p > |omega|_p, got x = {format_rational(x)},"
            f" omega = {omega} at p = {omega.p}"
        )


def series_length(x: Fraction, omega: ParameterVector, W: int, shift: int = 0) -> int:
    """Smallest J with J * (v_min - v(x)) + shift >= W, at least 1.

    Series terms of index j have valuation at least j * (v_min - v(x)) + shift.
    """
    if omega.N == 0:
        return 1
    delta = int(omega.min_valuation) - int(vp_rational(x, omega.p))
    assert delta >= 1
    return max(1, -(-(W - shift) // delta))


def finish(value: PAdicNumber, M: int) -> PAdicNumber:
    if value.aprec < M:
        log.warning(f"Result known to {value.aprec} digits, {M} requested")
        raise RequestedPrecisionUnavailable(M, value.aprec)
    return with_prec(value, M)


def angle_pow(x: Fraction, p: int, a: Fraction, prec: int) -> PAdicNumber:
    """<x>^a at absolute precision prec."""
    return one_unit_pow(angle(embed(x, p, prec)), a)


def zeta_series(req: ZetaRequest) -> ZetaValue:
    """<x>^(1-s) sum_j C(1-s, j) E_{N,j}(0; w) x^-j, valid for |x|_p > |w|_p."""
    p, x, omega = req.p, req.x, req.omega
    W = working_precision(req.M)
    a = 1 - req.s
    if omega.N == 0:
        if x == 0:
            raise SeriesNotApplicable("<x> is undefined for x = 0")
        return ZetaValue(finish(angle_pow(x, p, a, W), req.M), "series", 1, req.M)

    check_series(x, omega)
    J = series_length(x, omega, W)
    table = euler.build_table(omega.N, omega.omegas, J - 1)
    total = sum((binomial(a, j) * table.coeffs[j] * x**-j for j in range(J)), Fraction(0))
    value = from_rational(total, p, W) * angle_pow(x, p, a, W)
    return ZetaValue(finish(value, req.M), "series", J, req.M)


def _falling(a: Fraction, m: int) -> Fraction:
    result = Fraction(1)
    for i in range(m):
        result *= a - i
    return result


def zeta_series_derivative(req: ZetaRequest, m: int) -> ZetaValue:
    """m-th x-derivative of the Laurent series, differentiated term by term:
    <x>^(1-s) sum_j C(1-s, j) E_{N,j}(0; w) (1-s-j)(-s-j)...(2-s-j-m) x^(-j-m)."""
    p, x, omega = req.p, req.x, req.omega
    if omega.N > 0:
        check_series(x, omega)
    elif x == 0:
        raise SeriesNotApplicable("<x> is undefined for x = 0")
    W = working_precision(req.M)
    a = 1 - req.s
    vx = int(vp_rational(x, p))
    J = series_length(x, omega, W, shift=-m * vx)
    table = euler.build_table(omega.N, omega.omegas, J - 1)
    total = sum(
        (binomial(a, j) * table.coeffs[j] * _falling(a - j, m) * x ** (-j - m) for j in range(J)),
        Fraction(0),
    )
    if total == 0:
        return ZetaValue(zero(p, req.M), "series", J, req.M)
    extra = abs(int(vp_rational(total, p)))
    value = from_rational(total, p, W) * angle_pow(x, p, a, W + extra)
    return ZetaValue(finish(value, req.M), "series", J, req.M)


def check_budget(m: int, N: int):
    count = m**N
    if count > settings.term_budget:
        log.warning(f"Distribution with m={m} needs {count} terms, budget {settings.term_budget}")
        raise BudgetExceeded(
            f"distribution over {m}^{N} = {count} terms exceeds the term budget of"
            f" {settings.term_budget}"
        )


def distribution_terms(x: Fraction, omega: ParameterVector, m: int):
    """(sign, (x + j . w) / m) for j in [0, m)^N."""
    check_budget(m, omega.N)
    for j in itertools.product(range(m), repeat=omega.N):
        yield (-1) ** sum(j), omega.shift(x, j) / m


def reduction_admissible(x: Fraction, omega: ParameterVector, k: int):
    m = omega.p**k
    return all(
        omega.series_applies(omega.shift(x, j) / m)
        for j in itertools.product(range(m), repeat=omega.N)
    )


def check_reduction(x: Fraction, omega: ParameterVector, k: int):
    """A p^k reduction needs k <= reduction_cap, p^(kN) terms within the term budget and every
    (x + j . w) / p^k in the series regime."""
    if k > settings.reduction_cap:
        raise ReductionFailed(
            f"p^{k} reduction exceeds the reduction cap of k <= {settings.reduction_cap}"
        )
    check_budget(omega.p**k, omega.N)
    if not reduction_admissible(x, omega, k):
        raise ReductionFailed(
            f"p^{k} reduction is not admissible for x = {format_rational(x)}, omega = {omega}"
        )


def signed_sum(
    req: ZetaRequest, m: int, evaluate: Callable[[ZetaRequest], ZetaValue]
) -> tuple[PAdicNumber, int]:
    total = zero(req.p, working_precision(req.M))
    terms = 0
    for sign, y in distribution_terms(req.x, req.omega, m):
        result = evaluate(req.at(y))
        total = total + (result.value if sign > 0 else -result.value)
        terms += result.terms
    return total, terms


def _reduce(req: ZetaRequest, k: int) -> ZetaValue:
    check_reduction(req.x, req.omega, k)
    log.info(f"zeta: reducing with p^{k}, {req.p ** (k * req.omega.N)} series evaluations")
    total, terms = signed_sum(req, req.p**k, zeta_series)
    return ZetaValue(finish(total, req.M), str(Strategy.reduce(k)), terms, req.M)


def _integral(req: ZetaRequest, level: int) -> ZetaValue:
    spec = IntegrandSpec.angle_power(req.x, req.omega.omegas, req.s)
    estimate = fermionic_integral_numeric(spec, req.p, level, req.M)
    return ZetaValue(
        estimate.value, str(Strategy.integral(level)), estimate.terms, estimate.stable_digits
    )


def zeta(req: ZetaRequest) -> ZetaValue:
    kind = req.strategy.kind
    if kind is StrategyKind.series:
        return zeta_series(req)
    if kind is StrategyKind.reduce:
        return _reduce(req, req.strategy.k)
    if kind is StrategyKind.integral:
        return _integral(req, req.strategy.k)

    # outside Lambda |x|_p > |w|_p, which is exactly the series regime
    if req.omega.contains(req.x):
        raise InLambda()
    log.info(f"zeta: series regime for x = {format_rational(req.x)}, omega = {req.omega}")
    return zeta_series(req)


def zeta_neg_int(
    k: int, x: RationalLike, omega: ParameterVector | Sequence[RationalLike], p: int, M: int
) -> ZetaValue:
    """Closed form (<x>/x)^k E_{N,k}(x; w) of zeta at s = 1 - k."""
    assert k >= 1
    omega = parameters(omega, p)
    x = rational(x)
    if x == 0 or (omega.N > 0 and not omega.series_applies(x)):
        check_series(x, omega)
    e = euler.euler_polynomial(k, x, omega.omegas)
    if e == 0:
        return ZetaValue(zero(p, M), "closed form", 1, M)
    v = int(vp_rational(e, p)) - k * int(vp_rational(x, p))
    relprec = working_precision(M) + abs(v)
    value = pow_int(angle_ratio(embed(x, p, relprec)), k) * embed(e, p, relprec)
    return ZetaValue(finish(value, M), "closed form", 1, M)


def starred_terms(x: Fraction, omega: ParameterVector):
    """Arguments (x + j . w) / p, j in [0, p)^N, with |x + j . w|_p = |w|_p, and their signs."""
    for j in itertools.product(range(omega.p), repeat=omega.N):
        y = omega.shift(x, j)
        if y != 0 and vp_rational(y, omega.p) == omega.min_valuation:
            yield (-1) ** sum(j), y / omega.p


def check_starred(x: Fraction, omega: ParameterVector):
    if omega.N == 0:
        raise DomainError("starred functions need at least one parameter")
    if not omega.contains(x):
        raise NotInLambda()


def zeta_star(
    s: PAdicNumber | RationalLike,
    x: RationalLike,
    omega: ParameterVector | Sequence[RationalLike],
    p: int,
    M: int,
) -> ZetaValue:
    req = ZetaRequest.create(p, M, s, x, omega, Strategy.series())
    check_starred(req.x, req.omega)
    if req.omega.min_valuation > 0:
        return ZetaValue(zero(p, M), "star", 0, M)
    total = zero(p, working_precision(M))
    terms = 0
    for sign, y in starred_terms(req.x, req.omega):
        result = zeta_series(req.at(y))
        total = total + (result.value if sign > 0 else -result.value)
        terms += result.terms
    return ZetaValue(finish(total, M), "star", terms, M)


def zeta_distribution(req: ZetaRequest, m: int) -> ZetaValue:
    """<m>^(1-s) sum_j (-1)^|j| zeta(s, (x + j . w) / m) for odd m."""
    if m < 1 or m % 2 == 0:
        raise DomainError(f"distribution relation needs an odd positive m, got {m}")
    series = req.at(req.x, strategy=Strategy())
    total, terms = signed_sum(series, m, zeta)
    factor = angle_pow(Fraction(m), req.p, 1 - req.s, working_precision(req.M))
    return ZetaValue(finish(total * factor, req.M), f"distribution({m})", terms, req.M)
