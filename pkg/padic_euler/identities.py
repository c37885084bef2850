"""Registry of the identities behind `padic-euler check`.

Every identity is a function of explicit parameters returning an IdentityReport. Instances are
the fixed ones listed with the identity plus `instances` random ones drawn from a generator seeded
with (seed, identity name), so a run is reproducible identity by identity.
"""

from __future__ import annotations
import itertools
import random
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Iterable

import sympy
from tqdm import tqdm

from . import euler, padic
from .errors import PAdicError
from .fermionic import IntegralEstimate, IntegrandSpec, check_step_lemma
from .fermionic import fermionic_integral_exact_poly
from .fermionic import fermionic_integral_numeric, integrate_polynomial
from .loggamma import LogGammaRequest, differentiate, laurent_mismatch, log_gamma
from .loggamma import log_gamma_difference_quotient, log_gamma_distribution
from .loggamma import log_gamma_distribution_correction
from .loggamma import log_gamma_integral_oracle, log_gamma_scaling_term, log_gamma_star
from .loggamma import log_gamma_star_integral_oracle, psi, psi_integral_oracle, psi_laurent
from .loggamma import psi_series, stirling_laurent, zeta_star_integral_oracle
from .padic import agreement, embed, from_rational, pochhammer
from .projection import angle, angle_ratio, binom_falling, is_one_unit, iwasawa_log
from .projection import one_unit_pow, teichmuller
from .report import EXACT, IdentityReport, check
from .settings import settings
from .util import logger as log
from .zeta import Strategy, ZetaRequest, angle_pow, zeta, zeta_distribution, zeta_neg_int
from .zeta import zeta_series_derivative, zeta_star

Sample = Callable[[random.Random, int], dict[str, Any]]

suites = ("padic", "projection", "euler", "fermionic", "zeta", "gamma")


@dataclass
class Identity:
    name: str
    run: Callable[..., IdentityReport]
    fixed: list[dict[str, Any]] = field(default_factory=list)
    sample: Sample | None = None

    @property
    def suite(self):
        return self.name.split(".")[0]

    def instances(self, count: int, seed: int, M: int) -> list[dict[str, Any]]:
        result = [dict(params) for params in self.fixed]
        if self.sample is not None:
            rng = random.Random(f"{seed}:{self.name}")
            result += [self.sample(rng, M) for _ in range(count)]
        return result


registry: dict[str, Identity] = {}


def identity(name: str, fixed: Iterable[dict[str, Any]] = (), sample: Sample | None = None):
    def decorator(func: Callable[..., IdentityReport]):
        assert name not in registry, f"identity {name} registered twice"
        registry[name] = Identity(name, func, list(fixed), sample)
        return func

    return decorator


def run_suite(
    suite: str = "all", instances: int = 3, seed: int = 0, progress=False
) -> list[IdentityReport]:
    """Runs all identities of a suite, reports are ordered by identity name then instance."""
    M = settings.precision
    selected = [item for _, item in sorted(registry.items()) if suite in ("all", item.suite)]
    jobs = [(item, params) for item in selected for params in item.instances(instances, seed, M)]
    reports = []
    log.info(f"Running {len(jobs)} identity instances of suite '{suite}' with seed {seed}")
    for item, params in tqdm(jobs, desc=f"check {suite}", file=sys.stderr, disable=not progress):
        try:
            report = item.run(**params)
        except PAdicError as e:
            report = IdentityReport(item.name, dict(params, error=str(e)), 0, 1)
        if not report.passed:
            log.warning(f"{item.name} failed: {report.to_json()}")
        reports.append(report)
    return reports


def _exact(name: str, lhs: Fraction, rhs: Fraction, **params):
    return IdentityReport(name, params, EXACT if lhs == rhs else 0, settings.precision)


def _flag(name: str, ok: bool, **params):
    return IdentityReport(name, params, 1 if ok else 0, 1)


# digits a numeric oracle must certify before its agreement counts
oracle_digits = 4
star_oracle_digits = 2


def _oracle_check(name: str, lhs, rhs, estimate: IntegralEstimate, floor: int, **params):
    """Passes iff the oracle certifies `floor` or more digits and the sides match on all of them."""
    stable = estimate.stable_digits
    report = check(name, lhs, rhs, max(floor, stable), **params)
    report.agreement = min(report.agreement, stable)
    return report


# Random instance generators


def _unit(rng: random.Random, p: int, bound=60) -> int:
    while True:
        a = rng.randint(-bound, bound)
        if a % p != 0:
            return a


def _rational(rng: random.Random, p: int) -> Fraction:
    return Fraction(_unit(rng, p), abs(_unit(rng, p, 9))) * Fraction(p) ** rng.randint(-2, 2)


def _omega(rng: random.Random, N: int) -> list[Fraction]:
    return [Fraction(rng.choice([-3, -2, -1, 1, 2, 3, 4])) for _ in range(N)]


def _series_x(rng: random.Random, p: int) -> Fraction:
    """x with |x|_p > 1, outside Lambda for integral parameters."""
    return Fraction(_unit(rng, p), abs(_unit(rng, p, 7)) * p ** rng.randint(1, 2))


def _s(rng: random.Random, p: int) -> Fraction:
    return Fraction(rng.choice([0, 1, -1, 2, -2, rng.randrange(p**3)]))


def _prime(rng: random.Random) -> int:
    return rng.choice([3, 5, 7])


def _padic_sample(rng: random.Random, M: int):
    p = _prime(rng)
    return dict(p=p, M=M, a=_rational(rng, p), b=_rational(rng, p), c=_rational(rng, p))


def _zeta_sample(N_choices=(1, 2, 3)) -> Sample:
    def sample(rng: random.Random, M: int):
        p = _prime(rng)
        N = rng.choice(N_choices)
        return dict(p=p, M=M, s=_s(rng, p), x=_series_x(rng, p), omega=_omega(rng, N))

    return sample


def _gamma_sample(N_choices=(1, 2)) -> Sample:
    def sample(rng: random.Random, M: int):
        p = _prime(rng)
        N = rng.choice(N_choices)
        return dict(p=p, M=M, x=_series_x(rng, p), omega=_omega(rng, N))

    return sample


# padic


@identity("padic.ring_laws", sample=_padic_sample)
def _ring_laws(p: int, M: int, a: Fraction, b: Fraction, c: Fraction):
    A, B, C = (from_rational(q, p, M) for q in (a, b, c))
    pairs = [((A + B) + C, A + (B + C)), (A * (B + C), A * B + A * C)]
    agree = min(agreement(lhs, rhs) for lhs, rhs in pairs)
    required = min(min(lhs.aprec, rhs.aprec) for lhs, rhs in pairs)
    return IdentityReport("padic.ring_laws", dict(p=p, M=M, a=a, b=b, c=c), agree, required)


@identity("padic.round_trip", sample=_padic_sample)
def _round_trip(p: int, M: int, a: Fraction, b: Fraction, c: Fraction):
    q = Fraction(a.numerator, abs(_strip(b.denominator, p)))
    x = from_rational(q, p, M)
    lhs = x * q.denominator
    return check("padic.round_trip", lhs, Fraction(q.numerator), lhs.aprec, p=p, M=M, q=q)


def _strip(n: int, p: int):
    while n % p == 0:
        n //= p
    return n


@identity("padic.inverse", sample=_padic_sample)
def _inverse(p: int, M: int, a: Fraction, b: Fraction, c: Fraction):
    x = from_rational(a, p, M)
    product = x * padic.inv(x)
    return check("padic.inverse", product, Fraction(1), product.aprec, p=p, M=M, a=a)


@identity("padic.conservative_precision", sample=_padic_sample)
def _conservative(p: int, M: int, a: Fraction, b: Fraction, c: Fraction):
    def expression(prec: int):
        A, B, C = (from_rational(q, p, prec) for q in (a, b, c))
        return (A * B + C) / (A - C) if a != c else A * B + C

    low, high = expression(M), expression(M + 10)
    return check("padic.conservative_precision", low, high, low.aprec, p=p, M=M, a=a, b=b, c=c)


# projection


def _unit_sample(rng: random.Random, M: int):
    p = _prime(rng)
    a = Fraction(_unit(rng, p, 500), abs(_unit(rng, p, 30)))
    b = Fraction(_unit(rng, p, 500), abs(_unit(rng, p, 30)))
    return dict(p=p, M=M, a=a, b=b, s=_s(rng, p))


@identity("projection.teichmuller_root", sample=_unit_sample)
def _teichmuller_root(p: int, M: int, a: Fraction, b: Fraction, s: Fraction):
    lift = teichmuller(from_rational(a, p, M))
    return check("projection.teichmuller_root", lift ** (p - 1), Fraction(1), M, p=p, M=M, a=a)


@identity("projection.angle_multiplicative", sample=_unit_sample)
def _angle_multiplicative(p: int, M: int, a: Fraction, b: Fraction, s: Fraction):
    a = a * p ** (int(s) % 3)
    lhs = angle(from_rational(a * b, p, M + 3))
    rhs = angle(from_rational(a, p, M + 3)) * angle(from_rational(b, p, M))
    required = min(lhs.aprec, rhs.aprec)
    return check("projection.angle_multiplicative", lhs, rhs, required, p=p, M=M, a=a, b=b)


@identity("projection.angle_one_unit", sample=_unit_sample)
def _angle_one_unit(p: int, M: int, a: Fraction, b: Fraction, s: Fraction):
    x = from_rational(a * b, p, M)
    value = angle(x)
    report = check("projection.angle_one_unit", angle(-x), value, M, p=p, M=M, x=a * b)
    if not is_one_unit(value):
        report.agreement = 0
    return report


@identity("projection.log_power", sample=_unit_sample)
def _log_power(p: int, M: int, a: Fraction, b: Fraction, s: Fraction):
    z = angle(from_rational(a, p, M))
    lhs = iwasawa_log(one_unit_pow(z, s))
    rhs = iwasawa_log(z) * s
    return check("projection.log_power", lhs, rhs, M, p=p, M=M, a=a, s=s)


@identity("projection.log_homomorphism", sample=_unit_sample)
def _log_homomorphism(p: int, M: int, a: Fraction, b: Fraction, s: Fraction):
    a = a * p ** (int(s) % 3)
    lhs = iwasawa_log(embed(a * b, p, M))
    rhs = iwasawa_log(embed(a, p, M)) + iwasawa_log(embed(b, p, M))
    return check("projection.log_homomorphism", lhs, rhs, M, p=p, M=M, a=a, b=b)


@identity("projection.binomial_integrality", sample=_unit_sample)
def _binomial_integrality(p: int, M: int, a: Fraction, b: Fraction, s: Fraction):
    value = from_rational(a * s, p, M)
    worst = min(
        (c.valuation for j in range(3 * p) if not (c := binom_falling(value, j)).is_zero),
        default=0,
    )
    return _flag("projection.binomial_integrality", worst >= 0, p=p, M=M, s=a * s)


# euler


def _euler_sample(rng: random.Random, M: int):
    K = rng.randint(0, 2)
    return dict(
        K=K,
        n=rng.randint(0, 5),
        x=Fraction(rng.randint(-9, 9), rng.randint(1, 5)),
        omega=[Fraction(rng.choice([-3, -1, 1, 2, 3]), rng.randint(1, 3)) for _ in range(K + 1)],
        steps=rng.randint(1, 6),
    )


_fixed_omega = [Fraction(1), Fraction(2), Fraction(1, 2)]


@identity(
    "euler.alternating_sum",
    fixed=[
        dict(K=K, n=n, x=Fraction(1, 3), omega=_fixed_omega[: K + 1], steps=m)
        for K in (0, 2)
        for n in (0, 5)
        for m in (2, 3)
    ],
    sample=_euler_sample,
)
def _alternating_sum(K: int, n: int, x: Fraction, omega: list[Fraction], steps: int):
    lhs, rhs = euler.alternating_sum(K, n, x, omega, steps)
    return _exact("euler.alternating_sum", lhs, rhs, K=K, n=n, x=x, omega=omega, steps=steps)


@identity("euler.difference", sample=_euler_sample)
def _euler_difference(K: int, n: int, x: Fraction, omega: list[Fraction], steps: int):
    upper = euler.build_table(K + 1, omega, n)
    lower = euler.build_table(K, omega[:K], n)
    lhs = euler.euler_poly(upper, n, x + omega[K]) + euler.euler_poly(upper, n, x)
    rhs = 2 * euler.euler_poly(lower, n, x)
    return _exact("euler.difference", lhs, rhs, K=K, n=n, x=x, omega=omega)


@identity("euler.homogeneity", sample=_euler_sample)
def _homogeneity(K: int, n: int, x: Fraction, omega: list[Fraction], steps: int):
    c = Fraction(steps, 7) if steps % 2 else Fraction(-3, steps)
    lhs = euler.euler_polynomial(n, c * x, [c * w for w in omega])
    rhs = c**n * euler.euler_polynomial(n, x, omega)
    return _exact("euler.homogeneity", lhs, rhs, n=n, x=x, omega=omega, c=c)


@identity("euler.symmetry", sample=_euler_sample)
def _symmetry(K: int, n: int, x: Fraction, omega: list[Fraction], steps: int):
    base = euler.build_table(K + 1, omega, n).coeffs
    ok = all(
        euler.build_table(K + 1, list(order), n).coeffs == base
        for order in itertools.permutations(omega)
    )
    return _flag("euler.symmetry", ok, n=n, omega=omega)


@identity("euler.witt", fixed=[dict(n=n) for n in range(7)])
def _witt(n: int):
    expected = [1, 0, -1, 0, 5, 0, -61][n]
    lhs = euler.euler_polynomial(n, 1, [2])
    ok = lhs == euler.euler_number(n) == expected
    return IdentityReport("euler.witt", dict(n=n), EXACT if ok else 0, settings.precision)


# fermionic

_t = sympy.Symbol("t")


def _poly_sample(rng: random.Random, M: int):
    degree = rng.randint(0, 6)
    coeffs = [Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(degree + 1)]
    return dict(coeffs=coeffs, m=rng.choice([3, 5]))


def _poly(coeffs: list[Fraction]) -> sympy.Expr:
    return sum(
        (sympy.Rational(c.numerator, c.denominator) * _t**k for k, c in enumerate(coeffs)),
        sympy.Integer(0),
    )


def _integrate(expr: sympy.Expr) -> Fraction:
    return integrate_polynomial(sympy.Poly(sympy.expand(expr), _t))


@identity("fermionic.difference", sample=_poly_sample)
def _fermionic_difference(coeffs: list[Fraction], m: int):
    f = _poly(coeffs)
    lhs = _integrate(f.subs(_t, _t + 1)) + _integrate(f)
    rhs = 2 * (coeffs[0] if coeffs else Fraction(0))
    return _exact("fermionic.difference", lhs, rhs, coeffs=coeffs)


@identity("fermionic.negation_shift", sample=_poly_sample)
def _negation_shift(coeffs: list[Fraction], m: int):
    f = _poly(coeffs)
    lhs, rhs = _integrate(f.subs(_t, _t + 1)), _integrate(f.subs(_t, -_t))
    return _exact("fermionic.negation_shift", lhs, rhs, coeffs=coeffs)


@identity("fermionic.dilation", sample=_poly_sample)
def _dilation(coeffs: list[Fraction], m: int):
    f = _poly(coeffs)
    rhs = sum(((-1) ** j * _integrate(f.subs(_t, j + m * _t)) for j in range(m)), Fraction(0))
    return _exact("fermionic.dilation", _integrate(f), rhs, coeffs=coeffs, m=m)


def _backend_sample(rng: random.Random, M: int):
    p = _prime(rng)
    N = rng.randint(1, 2)
    x = Fraction(rng.randint(-20, 20), abs(_unit(rng, p, 9)))
    return dict(p=p, M=M, n=rng.randint(0, 6), x=x, omega=_omega(rng, N), L=5)


@identity(
    "fermionic.backend_agreement",
    fixed=[
        dict(p=5, M=20, n=2, x=Fraction(0), omega=[Fraction(1), Fraction(1)], L=5),
        dict(p=5, M=20, n=3, x=Fraction(1, 3), omega=[Fraction(1)], L=5),
        dict(p=5, M=20, n=4, x=Fraction(2), omega=[Fraction(1), Fraction(2)], L=5),
    ],
    sample=_backend_sample,
)
def _backend_agreement(p: int, M: int, n: int, x: Fraction, omega: list[Fraction], L: int):
    estimate = fermionic_integral_numeric(IntegrandSpec.polynomial(n, x, omega), p, L, M)
    exact = fermionic_integral_exact_poly(n, x, omega, p, M)
    params = dict(p=p, M=M, n=n, x=x, omega=omega, L=L)
    name = "fermionic.backend_agreement"
    return _oracle_check(name, estimate.value, exact, estimate, oracle_digits, **params)


def _step_sample(rng: random.Random, M: int):
    p = _prime(rng)
    N = rng.randint(1, 3)
    return dict(
        k=rng.randint(1, N),
        n=rng.randint(0, 4),
        x=Fraction(rng.randint(-9, 9), abs(_unit(rng, p, 5))),
        omega=_omega(rng, N),
        p=p,
        L=3,
    )


@identity(
    "fermionic.step_lemma",
    fixed=[
        dict(k=1, n=0, x=Fraction(0), omega=[Fraction(1)], p=5, L=3),
        dict(k=1, n=2, x=Fraction(0), omega=[Fraction(1)], p=5, L=3),
        dict(k=2, n=1, x=Fraction(0), omega=[Fraction(1), Fraction(2)], p=5, L=3),
    ],
    sample=_step_sample,
)
def _step_lemma(k: int, n: int, x: Fraction, omega: list[Fraction], p: int, L: int):
    return check_step_lemma(k, n, x, omega, p, L)


@identity("fermionic.witt", fixed=[dict(n=n, p=5, L=5) for n in range(7)])
def _fermionic_witt(n: int, p: int, L: int):
    M = settings.precision
    estimate = fermionic_integral_numeric(IntegrandSpec.polynomial(n, 1, [2]), p, L, M)
    expected = Fraction([1, 0, -1, 0, 5, 0, -61][n])
    params = dict(n=n, p=p, L=L)
    name = "fermionic.witt"
    return _oracle_check(name, estimate.value, expected, estimate, oracle_digits, **params)


# zeta


def _zeta_request(p: int, M: int, s: Fraction, x: Fraction, omega: list[Fraction], **kwargs):
    return ZetaRequest.create(p, M, s, x, omega, **kwargs)


@identity("zeta.difference", sample=_zeta_sample())
def _zeta_difference(p: int, M: int, s: Fraction, x: Fraction, omega: list[Fraction]):
    req = _zeta_request(p, M, s, x, omega)
    lhs = zeta(req.at(x + omega[-1])).value + zeta(req).value
    rhs = zeta(_zeta_request(p, M, s, x, omega[:-1])).value * 2
    return check("zeta.difference", lhs, rhs, M, p=p, M=M, s=s, x=x, omega=omega)


@identity("zeta.scaling", sample=_zeta_sample((1, 2)))
def _zeta_scaling(p: int, M: int, s: Fraction, x: Fraction, omega: list[Fraction]):
    c = Fraction(3 * p, 2) if x.numerator % 2 else Fraction(2, 5 * p)
    scaled = zeta(_zeta_request(p, M, s, c * x, [c * w for w in omega])).value
    rhs = angle_pow(c, p, 1 - s, M + 2) * zeta(_zeta_request(p, M, s, x, omega)).value
    return check("zeta.scaling", scaled, rhs, M, p=p, M=M, s=s, x=x, omega=omega, c=c)


@identity("zeta.reflection", sample=_zeta_sample((1, 2, 3)))
def _zeta_reflection(p: int, M: int, s: Fraction, x: Fraction, omega: list[Fraction]):
    lhs = zeta(_zeta_request(p, M, s, sum(omega, Fraction(0)) - x, omega)).value
    rhs = zeta(_zeta_request(p, M, s, x, omega)).value
    return check("zeta.reflection", lhs, rhs, M, p=p, M=M, s=s, x=x, omega=omega)


def _distribution_sample(rng: random.Random, M: int):
    params = _zeta_sample((1, 2))(rng, M)
    params["m"] = rng.choice([3, params["p"]])
    return params


@identity(
    "zeta.distribution",
    fixed=[
        dict(p=5, M=20, s=Fraction(s), x=Fraction(1, 5), omega=[Fraction(1)], m=m)
        for s in (0, 2)
        for m in (3, 5)
    ],
    sample=_distribution_sample,
)
def _zeta_distribution(p: int, M: int, s: Fraction, x: Fraction, omega: list[Fraction], m: int):
    req = _zeta_request(p, M, s, x, omega)
    lhs, rhs = zeta(req).value, zeta_distribution(req, m).value
    return check("zeta.distribution", lhs, rhs, M, p=p, M=M, s=s, x=x, omega=omega, m=m)


def _interpolation_sample(rng: random.Random, M: int):
    p = _prime(rng)
    omega = rng.choice([[], [1], [1, 2], [1, 1]])
    x = Fraction(rng.choice([1, 2]), p ** rng.randint(1, 2))
    return dict(p=p, M=M, k=rng.randint(1, 6), x=x, omega=[Fraction(w) for w in omega])


@identity(
    "zeta.interpolation",
    fixed=[
        dict(p=5, M=30, k=k, x=Fraction(1, 5), omega=[Fraction(w) for w in omega])
        for omega in ([], [1], [1, 2], [1, 1])
        for k in range(1, 7)
    ],
    sample=_interpolation_sample,
)
def _interpolation(p: int, M: int, k: int, x: Fraction, omega: list[Fraction]):
    lhs = zeta(_zeta_request(p, M, Fraction(1 - k), x, omega)).value
    rhs = zeta_neg_int(k, x, omega, p, M).value
    return check("zeta.interpolation", lhs, rhs, M, p=p, M=M, k=k, x=x, omega=omega)


def _derivative_sample(rng: random.Random, M: int):
    params = _zeta_sample((0, 1, 2))(rng, M)
    params["m"] = rng.choice([1, 2])
    return params


@identity(
    "zeta.derivative",
    fixed=[
        dict(p=5, M=20, s=Fraction(s), x=Fraction(1, 5), omega=[Fraction(1)], m=m)
        for s in (0, 3)
        for m in (1, 2)
    ],
    sample=_derivative_sample,
)
def _zeta_derivative(p: int, M: int, s: Fraction, x: Fraction, omega: list[Fraction], m: int):
    req = _zeta_request(p, M, s, x, omega)
    lhs = zeta_series_derivative(req, m).value
    vx = abs(int(padic.vp_rational(x, p)))
    W = M + settings.guard_digits + m * vx
    shifted = zeta(_zeta_request(p, M + m * vx, s + m, x, omega)).value
    factor = angle_ratio(embed(x, p, W)) ** m * pochhammer(from_rational(s - 1, p, W), m)
    rhs = factor * shifted * (-1) ** m
    return check("zeta.derivative", lhs, rhs, M, p=p, M=M, s=s, x=x, omega=omega, m=m)


def _strategy_sample(rng: random.Random, M: int):
    p = _prime(rng)
    return dict(p=p, M=M, s=_s(rng, p), x=_series_x(rng, p), omega=_omega(rng, 1), k=1)


@identity(
    "zeta.strategy_independence",
    fixed=[
        dict(p=5, M=20, s=Fraction(s), x=Fraction(1, 2), omega=[Fraction(5)], k=1)
        for s in (0, 2, 5)
    ],
    sample=_strategy_sample,
)
def _strategy_independence(p: int, M: int, s: Fraction, x: Fraction, omega: list[Fraction], k: int):
    lhs = zeta(_zeta_request(p, M, s, x, omega, strategy=Strategy.reduce(k))).value
    rhs = zeta(_zeta_request(p, M, s, x, omega, strategy=Strategy.reduce(k + 1))).value
    return check("zeta.strategy_independence", lhs, rhs, M, p=p, M=M, s=s, x=x, omega=omega, k=k)


@identity(
    "zeta.star",
    fixed=[
        dict(p=5, M=10, s=Fraction(0), x=Fraction(0), omega=[Fraction(1)], L=4),
        dict(p=5, M=10, s=Fraction(2), x=Fraction(0), omega=[Fraction(1)], L=4),
        dict(p=5, M=10, s=Fraction(1), x=Fraction(0), omega=[Fraction(1)], L=4),
        dict(p=5, M=10, s=Fraction(0), x=Fraction(0), omega=[Fraction(5)], L=4),
        dict(p=5, M=10, s=Fraction(0), x=Fraction(0), omega=[Fraction(1), Fraction(2)], L=4),
    ],
)
def _zeta_star(p: int, M: int, s: Fraction, x: Fraction, omega: list[Fraction], L: int):
    value = zeta_star(s, x, omega, p, M).value
    estimate = zeta_star_integral_oracle(s, x, omega, p, M, L)
    params = dict(p=p, M=M, s=s, x=x, omega=omega, L=L)
    return _oracle_check("zeta.star", value, estimate.value, estimate, star_oracle_digits, **params)


@identity(
    "zeta.integral_oracle",
    fixed=[
        dict(p=5, M=20, s=Fraction(0), x=Fraction(1, 5), omega=[Fraction(1)], L=5),
        dict(p=5, M=20, s=Fraction(3), x=Fraction(1, 5), omega=[Fraction(1), Fraction(1)], L=5),
    ],
)
def _zeta_integral(p: int, M: int, s: Fraction, x: Fraction, omega: list[Fraction], L: int):
    value = zeta(_zeta_request(p, M, s, x, omega)).value
    estimate = fermionic_integral_numeric(IntegrandSpec.angle_power(x, omega, s), p, L, M)
    params = dict(p=p, M=M, s=s, x=x, omega=omega, L=L)
    name = "zeta.integral_oracle"
    return _oracle_check(name, estimate.value, value, estimate, oracle_digits, **params)


# gamma


def _gamma_request(p: int, M: int, x: Fraction, omega: list[Fraction], **kwargs):
    return LogGammaRequest.create(p, M, x, omega, **kwargs)


@identity("gamma.difference", sample=_gamma_sample((1, 2, 3)))
def _gamma_difference(p: int, M: int, x: Fraction, omega: list[Fraction]):
    req = _gamma_request(p, M, x, omega)
    lhs = log_gamma(req.at(x + omega[-1])) + log_gamma(req)
    rhs = log_gamma(_gamma_request(p, M, x, omega[:-1])) * 2
    return check("gamma.difference", lhs, rhs, M, p=p, M=M, x=x, omega=omega)


@identity("gamma.scaling", sample=_gamma_sample())
def _gamma_scaling(p: int, M: int, x: Fraction, omega: list[Fraction]):
    c = Fraction(3, 2) if x.numerator % 2 else Fraction(2, 7 * p)
    M_inner = M + abs(int(padic.vp_rational(c, p)))
    lhs = log_gamma(_gamma_request(p, M, c * x, [c * w for w in omega]))
    req = _gamma_request(p, M_inner, x, omega)
    rhs = (log_gamma(req) + log_gamma_scaling_term(req, c)) * c
    return check("gamma.scaling", lhs, rhs, M, p=p, M=M, x=x, omega=omega, c=c)


@identity("gamma.reflection", sample=_gamma_sample((1, 2, 3)))
def _gamma_reflection(p: int, M: int, x: Fraction, omega: list[Fraction]):
    reflected = _gamma_request(p, M, sum(omega, Fraction(0)) - x, omega)
    lhs = log_gamma(reflected) + log_gamma(_gamma_request(p, M, x, omega))
    return check("gamma.reflection", lhs, Fraction(0), M, p=p, M=M, x=x, omega=omega)


def _gamma_distribution_sample(rng: random.Random, M: int):
    params = _gamma_sample()(rng, M)
    params["m"] = rng.choice([3, params["p"]])
    return params


@identity(
    "gamma.distribution",
    fixed=[dict(p=5, M=20, x=Fraction(1, 5), omega=[Fraction(1)], m=m) for m in (3, 5)],
    sample=_gamma_distribution_sample,
)
def _gamma_distribution(p: int, M: int, x: Fraction, omega: list[Fraction], m: int):
    req = _gamma_request(p, M, x, omega)
    lhs, rhs = log_gamma(req), log_gamma_distribution(req, m)
    report = check("gamma.distribution", lhs, rhs, M, p=p, M=M, x=x, omega=omega, m=m)
    # log_p m != 0 for m > 1 prime to p
    correction = log_gamma_distribution_correction(req, m)
    if m > 1 and m % p != 0 and euler.euler_polynomial(1, x, omega) != 0 and correction.is_zero:
        report.agreement = 0
    return report


def _psi_sample(rng: random.Random, M: int):
    params = _gamma_sample()(rng, M)
    params["k"] = rng.randint(1, 4)
    return params


@identity(
    "gamma.psi_closed_form",
    fixed=[dict(p=5, M=20, x=Fraction(1, 5), omega=[Fraction(1)], k=k) for k in (1, 2)],
    sample=_psi_sample,
)
def _psi_closed_form(p: int, M: int, x: Fraction, omega: list[Fraction], k: int):
    req = _gamma_request(p, M, x, omega)
    lhs, rhs = psi(k + 1, req), psi_series(k + 1, req)
    return check("gamma.psi_closed_form", lhs, rhs, M, p=p, M=M, x=x, omega=omega, k=k)


@identity(
    "gamma.definitional_derivative",
    fixed=[dict(p=5, M=20, x=Fraction(1, 5), omega=[Fraction(1)], steps=[3, 4, 5])],
)
def _definitional_derivative(p: int, M: int, x: Fraction, omega: list[Fraction], steps: list[int]):
    """Agreement of the finite difference quotient with LogGamma must grow with every step."""
    reference = log_gamma(_gamma_request(p, M + settings.guard_digits, x, omega))
    req = _gamma_request(p, M, x, omega)
    agreements = [agreement(log_gamma_difference_quotient(req, r), reference) for r in steps]
    growth = min(b - a for a, b in zip(agreements, agreements[1:]))
    params = dict(p=p, M=M, x=x, omega=omega, steps=steps, agreements=agreements)
    return IdentityReport("gamma.definitional_derivative", params, growth, 1)


@identity(
    "gamma.laurent_derivative",
    fixed=[dict(omega=[Fraction(1)], degree=12), dict(omega=[Fraction(1), Fraction(2)], degree=12)],
)
def _laurent_derivative(omega: list[Fraction], degree: int):
    """Differentiating the Stirling series gives the psi series, and so on for psi^(k)."""
    stirling = stirling_laurent(omega, degree)
    first = psi_laurent(omega, degree)
    mismatches = [laurent_mismatch(differentiate(stirling), first)]
    for k in (2, 3):
        expected = psi_laurent(omega, degree, k)
        mismatches.append(laurent_mismatch(differentiate(first, k - 1), expected))
    ok = all(m == 0 for m in mismatches)
    params = dict(omega=omega, degree=degree)
    agree = EXACT if ok else 0
    return IdentityReport("gamma.laurent_derivative", params, agree, settings.precision)


@identity(
    "gamma.star",
    fixed=[
        dict(p=5, M=10, x=Fraction(0), omega=[Fraction(1)], L=4),
        dict(p=5, M=10, x=Fraction(0), omega=[Fraction(5)], L=4),
    ],
)
def _gamma_star(p: int, M: int, x: Fraction, omega: list[Fraction], L: int):
    value = log_gamma_star(x, omega, p, M)
    estimate = log_gamma_star_integral_oracle(x, omega, p, M, L)
    params = dict(p=p, M=M, x=x, omega=omega, L=L)
    name = "gamma.star"
    return _oracle_check(name, value, estimate.value, estimate, star_oracle_digits, **params)


@identity(
    "gamma.integral_oracle",
    fixed=[
        dict(p=5, M=20, x=Fraction(1, 5), omega=[Fraction(1)], L=5, kind="xlogx"),
        dict(p=5, M=20, x=Fraction(1, 5), omega=[Fraction(1), Fraction(1)], L=5, kind="xlogx"),
        dict(p=5, M=20, x=Fraction(1, 5), omega=[Fraction(1)], L=5, kind="log"),
    ],
)
def _gamma_integral(p: int, M: int, x: Fraction, omega: list[Fraction], L: int, kind: str):
    req = _gamma_request(p, M, x, omega)
    if kind == "log":
        value, estimate = psi(1, req), psi_integral_oracle(req, L)
    else:
        value, estimate = log_gamma(req), log_gamma_integral_oracle(req, L)
    params = dict(p=p, M=M, x=x, omega=omega, L=L, kind=kind)
    name = "gamma.integral_oracle"
    return _oracle_check(name, estimate.value, value, estimate, oracle_digits, **params)
