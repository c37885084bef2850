"""Fermionic p-adic integrals.

Two backends: the numeric one computes the truncated alternating sums
S_L = sum_{t < p^L} (-1)^(t_1 + ... + t_N) f(t) and certifies the digits on which S_L and
S_{L-1} agree. The exact one reads polynomial integrals off the Euler tables. The numeric backend
is a cross-check, library functions never depend on it.
"""

from __future__ import annotations
import itertools
import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Callable, NamedTuple, Sequence

import sympy

from . import euler
from .errors import BudgetExceeded, DomainError
from .padic import PAdicNumber, RationalLike, INFINITY, agreement, check_prime, embed
from .padic import from_rational, rational, to_padic, vp_rational, with_prec, zero
from .projection import angle, iwasawa_log, one_unit_pow
from .report import IdentityReport
from .settings import settings
from .util import logger as log

Callback = Callable[[tuple[int, ...], int, int], PAdicNumber | RationalLike]


class IntegrandKind(Enum):
    polynomial = "poly"
    log_shift = "log"
    xlogx_shift = "xlogx"
    angle_power = "angle"
    custom = "custom"


@dataclass(frozen=True)
class IntegrandSpec:
    """Integrand in the variables t = (t_1, ..., t_N), evaluated at y = x + omega . t

    * polynomial: y^n
    * log_shift: log_p y
    * xlogx_shift: y (log_p y - 1)
    * angle_power: <y>^(1-s)
    * custom: callback(t, p, prec)

    Starred integrands are zero where |y|_p < |omega|_p.
    """

    kind: IntegrandKind
    x: Fraction = Fraction(0)
    omega: tuple[Fraction, ...] = ()
    n: int = 0
    s: Fraction = Fraction(0)
    starred: bool = False
    callback: Callback | None = None
    dims: int = 0

    @property
    def N(self):
        return self.dims if self.kind is IntegrandKind.custom else len(self.omega)

    @staticmethod
    def polynomial(n: int, x: RationalLike, omega: Sequence[RationalLike]):
        return IntegrandSpec(IntegrandKind.polynomial, rational(x), _rationals(omega), n=n)

    @staticmethod
    def log_shift(x: RationalLike, omega: Sequence[RationalLike], starred=False):
        kind = IntegrandKind.log_shift
        return IntegrandSpec(kind, rational(x), _rationals(omega), starred=starred)

    @staticmethod
    def xlogx_shift(x: RationalLike, omega: Sequence[RationalLike], starred=False):
        kind = IntegrandKind.xlogx_shift
        return IntegrandSpec(kind, rational(x), _rationals(omega), starred=starred)

    @staticmethod
    def angle_power(x: RationalLike, omega: Sequence[RationalLike], s: RationalLike, starred=False):
        kind = IntegrandKind.angle_power
        return IntegrandSpec(kind, rational(x), _rationals(omega), s=rational(s), starred=starred)

    @staticmethod
    def custom(callback: Callback, dims: int):
        return IntegrandSpec(IntegrandKind.custom, callback=callback, dims=dims)

    def point(self, t: tuple[int, ...]) -> Fraction:
        return self.x + sum((w * ti for w, ti in zip(self.omega, t)), Fraction(0))

    def evaluate(self, t: tuple[int, ...], p: int, prec: int) -> PAdicNumber:
        if self.kind is IntegrandKind.custom:
            assert self.callback is not None
            return to_padic(self.callback(t, p, prec), p, prec)
        return self.evaluate_at(self.point(t), p, prec)

    def evaluate_at(self, y: Fraction, p: int, prec: int) -> PAdicNumber:
        vy = vp_rational(y, p)
        if self.starred and vy > _min_valuation(self.omega, p):
            return zero(p, prec)
        if self.kind is IntegrandKind.polynomial:
            return from_rational(y**self.n, p, prec)
        if vy == INFINITY:
            raise DomainError(f"integrand is singular at y = 0 (x = {self.x} is in Lambda)")
        Y = embed(y, p, prec + 2 * abs(int(vy)) + 2)
        if self.kind is IntegrandKind.log_shift:
            value = iwasawa_log(Y)
        elif self.kind is IntegrandKind.xlogx_shift:
            value = Y * (iwasawa_log(Y) - 1)
        else:
            value = one_unit_pow(angle(Y), 1 - self.s)
        return with_prec(value, prec)


def _rationals(values: Sequence[RationalLike]):
    return tuple(rational(v) for v in values)


def _min_valuation(omega: Sequence[Fraction], p: int) -> int | float:
    return min((vp_rational(w, p) for w in omega), default=INFINITY)


class IntegralEstimate(NamedTuple):
    value: PAdicNumber  # truncated to the stable digits
    stable_digits: int
    level: int
    terms: int


def fermionic_sum_1d(
    f: Callable[[int], PAdicNumber | RationalLike], p: int, L: int, M: int | None = None
) -> PAdicNumber:
    """S_L = sum_{a < p^L} (-1)^a f(a). Rational values are summed exactly and embedded at M."""
    check_prime(p)
    assert L >= 1
    M = M or settings.precision
    exact = Fraction(0)
    total: PAdicNumber | None = None
    for a in range(p**L):
        value = f(a)
        if a % 2 == 1:
            value = -value
        if isinstance(value, PAdicNumber):
            total = value if total is None else total + value
        else:
            exact += rational(value)
    if total is None:
        return from_rational(exact, p, M)
    return total + exact if exact else total


def alternating_moments(p: int, L: int, n: int) -> list[int]:
    """m_k = sum_{t < p^L} (-1)^t t^k for k = 0..n."""
    moments = [0] * (n + 1)
    for t in range(p**L):
        sign = -1 if t % 2 else 1
        power = 1
        for k in range(n + 1):
            moments[k] += sign * power
            power *= t
    return moments


def _polynomial_partial_sum(spec: IntegrandSpec, p: int, L: int) -> Fraction:
    # (x + omega . t)^n is separable: convolve the per-variable moment series like an Euler table
    n = spec.n
    coeffs = [spec.x**k for k in range(n + 1)]
    moments = alternating_moments(p, L, n)
    for w in spec.omega:
        coeffs = euler.egf_product(coeffs, [Fraction(m) * w**k for k, m in enumerate(moments)])
    return coeffs[n]


def fermionic_integral_numeric(spec: IntegrandSpec, p: int, L: int, M: int) -> IntegralEstimate:
    check_prime(p)
    assert L >= 1
    N = spec.N
    prec = M + settings.guard_digits
    if N == 0:
        return IntegralEstimate(with_prec(spec.evaluate((), p, prec), M), M, L, 1)

    size = p ** (L * N)
    work = _evaluation_count(spec, p, L)
    budget = settings.numeric_budget
    if work > budget:
        log.warning(f"Numeric integral needs {work} evaluations, budget is {budget}")
        raise BudgetExceeded(
            f"numeric integral over {p}^({L}*{N}) points needs {work} evaluations, more than the"
            f" budget of {budget}"
        )
    if spec.kind in (IntegrandKind.log_shift, IntegrandKind.xlogx_shift, IntegrandKind.angle_power):
        vx = vp_rational(spec.x, p)
        if not spec.starred and vx >= _min_valuation(spec.omega, p):
            raise DomainError(
                f"x = {spec.x} lies in Lambda, the integrand vanishes somewhere on Z_p^{N}"
            )

    if spec.kind is IntegrandKind.polynomial and not spec.starred:
        fine = from_rational(_polynomial_partial_sum(spec, p, L), p, prec)
        coarse = from_rational(_polynomial_partial_sum(spec, p, L - 1), p, prec)
    elif spec.kind is IntegrandKind.custom:
        fine, coarse = _enumerate(spec, p, L, prec)
    else:
        cache: dict[Fraction, PAdicNumber] = {}
        fine = _weighted_sum(spec, p, L, prec, cache)
        coarse = _weighted_sum(spec, p, L - 1, prec, cache)

    stable = min(M, agreement(fine, coarse))
    log.debug(f"Numeric integral {spec.kind.name} N={N} L={L}: {stable} stable digits")
    return IntegralEstimate(with_prec(fine, stable), stable, L, size)


def _integer_steps(omega: Sequence[Fraction]) -> tuple[int, list[int]]:
    denominator = math.lcm(*(w.denominator for w in omega))
    return denominator, [int(w * denominator) for w in omega]


def _evaluation_count(spec: IntegrandSpec, p: int, L: int) -> int:
    if spec.kind is IntegrandKind.custom:
        return p ** (L * spec.N)
    if spec.kind is IntegrandKind.polynomial and not spec.starred:
        return p**L
    _, steps = _integer_steps(spec.omega)
    return 1 + sum(abs(w) for w in steps) * (p**L - 1)


def alternating_weights(steps: Sequence[int], m: int) -> tuple[int, list[int]]:
    """Signed point counts of the box [0, m)^N grouped by the offset u = steps . t.

    Returns (lo, weights) with weights[i] = sum of (-1)^(t_1 + ... + t_N) over the t whose offset
    is lo + i. m must be odd.
    """
    assert m % 2 == 1
    lo, weights = 0, [1]
    for w in steps:
        a = abs(w)
        if a == 0:
            continue
        span = a * (m - 1)
        c = weights if w > 0 else weights[::-1]
        g = [0] * (len(c) + span)
        # alternating sum over a window of m steps of size a
        for u in range(len(g)):
            value = c[u] if u < len(c) else 0
            if 0 <= u - a * m < len(c):
                value += c[u - a * m]
            if u >= a:
                value -= g[u - a]
            g[u] = value
        if w > 0:
            weights = g
        else:
            weights = g[::-1]
            lo -= span
    return lo, weights


def _weighted_sum(
    spec: IntegrandSpec, p: int, L: int, prec: int, cache: dict[Fraction, PAdicNumber]
) -> PAdicNumber:
    # values depend on t only through y = x + omega . t, so each distinct y is evaluated once
    denominator, steps = _integer_steps(spec.omega)
    lo, weights = alternating_weights(steps, p**L)
    total = zero(p, prec)
    for i, weight in enumerate(weights):
        if weight == 0:
            continue
        y = spec.x + Fraction(lo + i, denominator)
        value = cache.get(y)
        if value is None:
            value = cache[y] = spec.evaluate_at(y, p, prec)
        total = total + value * weight
    return total


def _enumerate(spec: IntegrandSpec, p: int, L: int, prec: int):
    fine = zero(p, prec)
    coarse = zero(p, prec)
    bound = p ** (L - 1)
    for t in itertools.product(range(p**L), repeat=spec.N):
        value = spec.evaluate(t, p, prec)
        if sum(t) % 2 == 1:
            value = -value
        fine = fine + value
        if all(ti < bound for ti in t):
            coarse = coarse + value
    return fine, coarse


def fermionic_integral_exact_poly(
    n: int, x: RationalLike, omega: Sequence[RationalLike], p: int, M: int
) -> PAdicNumber:
    """Integral of (x + omega . t)^n, which is E_{N,n}(x; omega)."""
    return from_rational(euler.euler_polynomial(n, x, omega), p, M)


def integrate_polynomial(f: sympy.Poly) -> Fraction:
    """Exact single-variable integral of a polynomial with rational coefficients."""
    result = Fraction(0)
    for (k,), c in f.terms():
        c = sympy.Rational(c)
        result += Fraction(int(c.p), int(c.q)) * euler.euler_number_poly_at_zero(k)
    return result


def check_step_lemma(
    k: int, n: int, x: RationalLike, omega: Sequence[RationalLike], p: int, L: int
) -> IdentityReport:
    """Integrating E_{k-1,n}(x + w_k t; w_1..w_{k-1}) over t gives E_{k,n}(x; w_1..w_k)."""
    omega = _rationals(omega)
    assert 1 <= k <= len(omega)
    x, M = rational(x), settings.precision
    lower = euler.build_table(k - 1, omega[: k - 1], n)
    w = omega[k - 1]

    def f(t: int):
        return euler.euler_poly(lower, n, x + w * t)

    fine = fermionic_sum_1d(f, p, L, M)
    coarse = fermionic_sum_1d(f, p, L - 1, M) if L > 1 else from_rational(f(0), p, M)
    exact = fermionic_integral_exact_poly(n, x, omega[:k], p, M)
    stable = min(M, agreement(fine, coarse))
    params = dict(k=k, n=n, x=x, omega=list(omega), p=p, L=L)
    return IdentityReport("fermionic.step_lemma", params, min(M, agreement(fine, exact)), stable)
