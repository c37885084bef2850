"""Teichmüller representatives, the one-unit projection, the Iwasawa logarithm and
Z_p-powers of one-units."""

from __future__ import annotations
from fractions import Fraction
from functools import lru_cache

from .errors import NotAUnit, NotAOneUnit, ZeroInput, ExponentNotIntegral
from .padic import PAdicNumber, RationalLike, INFINITY, floor_log, from_rational, one, zero
from .padic import check_prime, rational, vp_rational, with_prec
from .util import logger as log


def teichmuller(a: PAdicNumber) -> PAdicNumber:
    if a.is_zero or a.valuation != 0:
        raise NotAUnit(f"Teichmüller lift needs a unit, got valuation {a.valuation}")
    p, M = a.prime, a.aprec
    modulus = p**M
    y = a.unit
    for _ in range(M + 1):
        z = pow(y, p, modulus)
        if z == y:
            break
        y = z
    else:
        assert False, "p-power iteration did not stabilize"
    return PAdicNumber(p, 0, y, M)


def teichmuller_character(a: PAdicNumber) -> PAdicNumber:
    """Teichmüller lift of the unit part p^-v * a."""
    if a.is_zero:
        raise ZeroInput("Teichmüller character of zero is undefined")
    return teichmuller(PAdicNumber(a.prime, 0, a.unit, a.relprec))


def angle(a: PAdicNumber) -> PAdicNumber:
    """<a> = p^-v * a / teichmuller(a), always congruent to 1 modulo p."""
    if a.is_zero:
        raise ZeroInput("<x> is undefined for x = 0")
    p, r = a.prime, a.relprec
    modulus = p**r
    lift = teichmuller_character(a)
    return PAdicNumber(p, 0, a.unit * pow(lift.unit, -1, modulus) % modulus, r)


def angle_ratio(a: PAdicNumber) -> PAdicNumber:
    """<a> / a, which has valuation -v(a)."""
    return angle(a) / a


def is_one_unit(z: PAdicNumber):
    return not z.is_zero and z.valuation == 0 and z.unit % z.prime == 1


def iwasawa_log(a: PAdicNumber) -> PAdicNumber:
    """log_p <a>, known to the relative precision of a."""
    z = angle(a) - 1
    p, T = a.prime, a.relprec
    if z.is_zero:
        return zero(p, T)
    vz = int(z.valuation)
    result = zero(p, T)
    power = z
    n = 1
    # v(z^n / n) >= n*v(z) - floor(log_p n), increasing in n
    while n * vz - floor_log(p, n) < T:
        term = power / n
        result = result + (term if n % 2 == 1 else -term)
        n += 1
        power = power * z
    log.debug(f"iwasawa_log: {n - 1} terms at precision {T}")
    return with_prec(result, T)


def exponent(s: PAdicNumber | RationalLike) -> Fraction:
    """Exact rational exponent in Z_p. p-adic exponents use their canonical representative."""
    if isinstance(s, PAdicNumber):
        if not s.is_zero and s.valuation < 0:
            raise ExponentNotIntegral(f"exponent {s} is not in Z_p")
        return s.to_rational()
    return rational(s)


def check_exponent(s: Fraction, p: int):
    v = vp_rational(s, p)
    if v != INFINITY and v < 0:
        raise ExponentNotIntegral(f"exponent {s} is not in Z_p for p = {p}")


@lru_cache(maxsize=4096)
def binomial(s: Fraction, j: int) -> Fraction:
    """C(s, j) for rational s, built by C(s, j) = C(s, j-1) * (s - j + 1) / j."""
    if j == 0:
        return Fraction(1)
    return binomial(s, j - 1) * (s - j + 1) / j


def binom_falling(s: PAdicNumber | RationalLike, j: int, p: int = 0, prec: int = 0):
    """C(s, j) as a p-adic number.

    For p-adic s the product s(s-1)...(s-j+1)/j! is formed in capped arithmetic and carries the
    propagated precision. Rational s gives the exact binomial, embedded in Q_p at `prec`.
    """
    if not isinstance(s, PAdicNumber):
        s = rational(s)
        check_exponent(s, check_prime(p))
        return from_rational(binomial(s, j), p, prec)
    if not s.is_zero and s.valuation < 0:
        raise ExponentNotIntegral(f"exponent {s} is not in Z_p")
    result = one(s.prime, max(s.aprec, 1))
    for i in range(1, j + 1):
        result = result * (s - (i - 1)) / i
    return result


def one_unit_pow(z: PAdicNumber, s: PAdicNumber | RationalLike) -> PAdicNumber:
    """z^s = sum_j C(s, j) (z - 1)^j for a one-unit z and s in Z_p."""
    if not is_one_unit(z):
        raise NotAOneUnit(f"{z} is not congruent to 1 modulo p")
    p, T = z.prime, z.aprec
    s = exponent(s)
    check_exponent(s, p)
    w = z - 1
    if w.is_zero or s == 0:
        return one(p, T)
    vw = int(w.valuation)
    terms = -(-T // vw)
    result = one(p, T)
    power = w
    for j in range(1, terms):
        c = binomial(s, j)
        if c != 0:
            result = result + from_rational(c, p, T) * power
        power = power * w
    return with_prec(result, T)
