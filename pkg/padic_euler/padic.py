"""Capped-precision arithmetic in Q_p.

Every number carries its absolute precision M: the represented value p^v * u is only known
modulo p^M. Operations propagate precision conservatively so that comparisons never look at
digits that are not guaranteed.
"""

from __future__ import annotations
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple, Union

import sympy

from .errors import InvalidPrime, PrimeMismatch, DivisionByZeroAtPrecision
from .errors import RequestedPrecisionUnavailable

RationalLike = Union[int, Fraction]

INFINITY = math.inf


@lru_cache(maxsize=64)
def is_prime(p: int) -> bool:
    return bool(sympy.isprime(p))


def check_prime(p: int):
    if not isinstance(p, int) or p < 3 or p % 2 == 0 or not is_prime(p):
        raise InvalidPrime(p)
    return p


def rational(value: RationalLike | str) -> Fraction:
    return value if isinstance(value, Fraction) else Fraction(value)


def vp(n: int, p: int) -> int:
    """Valuation of a non-zero integer."""
    assert n != 0
    return int(sympy.multiplicity(p, abs(n)))


def vp_rational(q: RationalLike, p: int) -> int | float:
    q = rational(q)
    if q == 0:
        return INFINITY
    return vp(q.numerator, p) - vp(q.denominator, p)


def floor_log(p: int, n: int) -> int:
    """Largest e with p^e <= n, for n >= 1."""
    e, power = 0, p
    while power <= n:
        e += 1
        power *= p
    return e


@dataclass(frozen=True)
class PAdicNumber:
    prime: int
    valuation: int | float  # INFINITY for zero-to-precision
    unit: int
    aprec: int

    @property
    def is_zero(self):
        return self.valuation == INFINITY

    @property
    def relprec(self):
        return 0 if self.is_zero else self.aprec - int(self.valuation)

    def digits(self) -> list[int]:
        p, u = self.prime, self.unit
        result = []
        for _ in range(self.relprec):
            u, d = divmod(u, p)
            result.append(d)
        return result

    def to_rational(self) -> Fraction:
        """Canonical representative p^v * u of the residue class."""
        if self.is_zero:
            return Fraction(0)
        return Fraction(self.unit) * Fraction(self.prime) ** int(self.valuation)

    def __str__(self):
        p = self.prime
        if self.is_zero:
            return f"O({p}^{self.aprec})"
        terms = []
        for i, d in enumerate(self.digits()):
            if i == 0:
                terms.append(str(d))
            elif i == 1:
                terms.append(f"{d}*{p}")
            else:
                terms.append(f"{d}*{p}^{i}")
        return f"{p}^{self.valuation} * ({' + '.join(terms)}) + O({p}^{self.aprec})"

    def to_json(self):
        return {
            "p": self.prime,
            "val": None if self.is_zero else self.valuation,
            "digits": self.digits(),
            "prec": self.aprec,
        }

    def _coerce(self, other: PAdicNumber | RationalLike) -> PAdicNumber:
        if isinstance(other, PAdicNumber):
            return other
        # exact constants are embedded deep enough to never limit the result
        q = rational(other)
        vq = vp_rational(q, self.prime)
        extra = 0 if vq == INFINITY else abs(int(vq))
        own = self.aprec if self.is_zero else abs(int(self.valuation))
        return from_rational(q, self.prime, self.aprec + extra + own + 1)

    def __add__(self, other):
        return add(self, self._coerce(other))

    def __radd__(self, other):
        return add(self._coerce(other), self)

    def __sub__(self, other):
        return sub(self, self._coerce(other))

    def __rsub__(self, other):
        return sub(self._coerce(other), self)

    def __mul__(self, other):
        return mul(self, self._coerce(other))

    def __rmul__(self, other):
        return mul(self._coerce(other), self)

    def __truediv__(self, other):
        return div(self, self._coerce(other))

    def __rtruediv__(self, other):
        return div(self._coerce(other), self)

    def __neg__(self):
        return neg(self)

    def __pow__(self, k: int):
        return pow_int(self, k)


def zero(p: int, M: int):
    return PAdicNumber(p, INFINITY, 0, M)


def one(p: int, M: int):
    return _normalize(p, 0, 1, M)


def _normalize(p: int, v: int, u: int, M: int) -> PAdicNumber:
    """Value p^v * u known modulo p^M, with u any integer."""
    if v >= M:
        return zero(p, M)
    u %= p ** (M - v)
    if u == 0:
        return zero(p, M)
    k = vp(u, p)
    if v + k >= M:
        return zero(p, M)
    return PAdicNumber(p, v + k, (u // p**k) % p ** (M - v - k), M)


def _v(a: PAdicNumber) -> int:
    """Valuation used by precision propagation: zero counts as its precision."""
    return a.aprec if a.is_zero else int(a.valuation)


def _check_same_prime(a: PAdicNumber, b: PAdicNumber):
    if a.prime != b.prime:
        raise PrimeMismatch(a.prime, b.prime)


def from_rational(q: RationalLike, p: int, M: int) -> PAdicNumber:
    check_prime(p)
    q = rational(q)
    if q == 0:
        return zero(p, M)
    vn, vd = vp(q.numerator, p), vp(q.denominator, p)
    v = vn - vd
    if v >= M:
        return zero(p, M)
    modulus = p ** (M - v)
    num = q.numerator // p**vn
    den = q.denominator // p**vd
    return PAdicNumber(p, v, num * pow(den, -1, modulus) % modulus, M)


def embed(q: RationalLike, p: int, relprec: int) -> PAdicNumber:
    """Embeds q with the given number of significant digits."""
    v = vp_rational(q, p)
    if v == INFINITY:
        return zero(p, relprec)
    return from_rational(q, p, int(v) + relprec)


def to_padic(value: PAdicNumber | RationalLike, p: int, M: int) -> PAdicNumber:
    if isinstance(value, PAdicNumber):
        if value.prime != p:
            raise PrimeMismatch(value.prime, p)
        return value
    return from_rational(value, p, M)


def with_prec(a: PAdicNumber, M: int) -> PAdicNumber:
    """Forget all digits at and above p^M."""
    M = min(M, a.aprec)
    if a.is_zero:
        return zero(a.prime, M)
    return _normalize(a.prime, int(a.valuation), a.unit, M)


def add(a: PAdicNumber, b: PAdicNumber) -> PAdicNumber:
    _check_same_prime(a, b)
    p, M = a.prime, min(a.aprec, b.aprec)
    if a.is_zero:
        return with_prec(b, M)
    if b.is_zero:
        return with_prec(a, M)
    va, vb = int(a.valuation), int(b.valuation)
    v = min(va, vb)
    u = a.unit * p ** (va - v) + b.unit * p ** (vb - v)
    return _normalize(p, v, u, M)


def neg(a: PAdicNumber) -> PAdicNumber:
    if a.is_zero:
        return a
    return _normalize(a.prime, int(a.valuation), -a.unit, a.aprec)


def sub(a: PAdicNumber, b: PAdicNumber) -> PAdicNumber:
    return add(a, neg(b))


def mul(a: PAdicNumber, b: PAdicNumber) -> PAdicNumber:
    _check_same_prime(a, b)
    p = a.prime
    M = min(a.aprec + _v(b), b.aprec + _v(a))
    if a.is_zero or b.is_zero:
        return zero(p, M)
    return _normalize(p, int(a.valuation) + int(b.valuation), a.unit * b.unit, M)


def inv(a: PAdicNumber) -> PAdicNumber:
    if a.is_zero:
        raise DivisionByZeroAtPrecision(a.aprec)
    v, r = int(a.valuation), a.relprec
    modulus = a.prime**r
    return PAdicNumber(a.prime, -v, pow(a.unit, -1, modulus), r - v)


def div(a: PAdicNumber, b: PAdicNumber) -> PAdicNumber:
    _check_same_prime(a, b)
    return mul(a, inv(b))


def pow_int(a: PAdicNumber, k: int) -> PAdicNumber:
    if k < 0:
        return inv(pow_int(a, -k))
    if k == 0:
        return one(a.prime, max(a.relprec, 1))
    result = None
    base = a
    while k:
        if k & 1:
            result = base if result is None else mul(result, base)
        k >>= 1
        if k:
            base = mul(base, base)
    assert result is not None
    return result


class Norm(NamedTuple):
    value: Fraction
    upper_bound: bool  # set for zero-to-precision, where only |a| <= p^-M is known


def norm(a: PAdicNumber) -> Norm:
    p = Fraction(a.prime)
    if a.is_zero:
        return Norm(p ** (-a.aprec), True)
    return Norm(p ** (-int(a.valuation)), False)


def valuation(a: PAdicNumber) -> int | float:
    return a.valuation


def eq_to_precision(a: PAdicNumber, b: PAdicNumber, M: int) -> bool:
    _check_same_prime(a, b)
    available = min(a.aprec, b.aprec)
    if M > available:
        raise RequestedPrecisionUnavailable(M, available)
    d = sub(a, b)
    return d.is_zero or d.valuation >= M


def agreement(a: PAdicNumber, b: PAdicNumber) -> int:
    """Number of absolute digits on which a and b agree, limited by what both guarantee."""
    d = sub(a, b)
    return d.aprec if d.is_zero else int(d.valuation)


def pochhammer(s: PAdicNumber, m: int) -> PAdicNumber:
    """Rising factorial s(s+1)...(s+m-1)."""
    result = one(s.prime, max(s.aprec, 1))
    for i in range(m):
        result = mul(result, s + i)
    return result
