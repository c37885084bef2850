"""Higher-order Euler polynomials over Q.

E_{N,n}(x; w) are the coefficients of 2^N e^{xt} / prod_j (e^{w_j t} + 1). All arithmetic here is
exact; reduction to Q_p happens in the consumers.
"""

from __future__ import annotations
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Sequence

from .errors import ZeroParameter, DegreeOutOfRange, KmaxExceeded
from .padic import RationalLike, rational
from .settings import settings
from .util import logger as log


@lru_cache(maxsize=None)
def _euler_zero_values(kmax: int) -> tuple[Fraction, ...]:
    values = [Fraction(1)]
    for n in range(1, kmax + 1):
        s = sum(comb(n, k) * values[k] for k in range(n))
        values.append(-s / 2)
    return tuple(values)


def euler_number_poly_at_zero(n: int) -> Fraction:
    """E_n(0) from 2 E_n(0) = -sum_{k<n} C(n,k) E_k(0)."""
    assert n >= 0
    return _euler_zero_values(n)[n]


def egf_product(a: Sequence[Fraction], b: Sequence[Fraction]) -> list[Fraction]:
    """Coefficients of the product of two exponential generating functions."""
    n = min(len(a), len(b))
    return [
        sum((comb(m, k) * a[k] * b[m - k] for k in range(m + 1)), Fraction(0)) for m in range(n)
    ]


@dataclass(frozen=True)
class EulerTable:
    N: int
    omega: tuple[Fraction, ...]
    kmax: int
    coeffs: tuple[Fraction, ...]

    def __getitem__(self, k: int) -> Fraction:
        if k > self.kmax:
            raise DegreeOutOfRange(f"degree {k} exceeds table size {self.kmax}")
        return self.coeffs[k]

    def to_json(self):
        return [
            {"k": k, "num": c.numerator, "den": c.denominator} for k, c in enumerate(self.coeffs)
        ]


def check_kmax(kmax: int):
    if kmax > settings.kmax_cap:
        raise KmaxExceeded(
            f"Euler table of degree {kmax} requested, cap is {settings.kmax_cap}."
            " Lower the precision or raise kmax_cap."
        )


def build_table(N: int, omega: Sequence[RationalLike], kmax: int) -> EulerTable:
    omega = tuple(rational(w) for w in omega)
    assert N == len(omega), f"order {N} does not match {len(omega)} parameters"
    if any(w == 0 for w in omega):
        raise ZeroParameter("all parameters omega_i must be non-zero")
    check_kmax(kmax)
    return _build_table(omega, kmax)


@lru_cache(maxsize=256)
def _build_table(omega: tuple[Fraction, ...], kmax: int) -> EulerTable:
    base = _euler_zero_values(kmax)
    coeffs = [Fraction(1)] + [Fraction(0)] * kmax
    for w in omega:
        factor = [e * w**k for k, e in enumerate(base)]
        coeffs = egf_product(coeffs, factor)

    if all(w.denominator == 1 for w in omega):
        assert all(
            c.denominator & (c.denominator - 1) == 0 for c in coeffs
        ), "Euler coefficients of integral parameters must have 2-power denominators"
    log.debug(f"Built Euler table N={len(omega)} kmax={kmax}")
    return EulerTable(len(omega), omega, kmax, tuple(coeffs))


def euler_poly(table: EulerTable, n: int, x: RationalLike) -> Fraction:
    """E_{N,n}(x) = sum_k C(n,k) E_{N,k}(0) x^(n-k)."""
    if n > table.kmax or n < 0:
        raise DegreeOutOfRange(f"degree {n} is outside the table range 0..{table.kmax}")
    x = rational(x)
    return sum((comb(n, k) * table.coeffs[k] * x ** (n - k) for k in range(n + 1)), Fraction(0))


def euler_polynomial(n: int, x: RationalLike, omega: Sequence[RationalLike]) -> Fraction:
    return euler_poly(build_table(len(omega), omega, n), n, x)


def classical_zeta_special_value(table: EulerTable, k: int, x: RationalLike) -> Fraction:
    """zeta_{E,N}(-k, x; w) = 2^-N E_{N,k}(x; w)."""
    return euler_poly(table, k, x) / 2**table.N


def euler_number(n: int) -> Fraction:
    """Classical Euler number E_n = 2^n E_n(1/2), i.e. 1, 0, -1, 0, 5, 0, -61, ..."""
    return 2**n * euler_polynomial(n, Fraction(1, 2), [1])


def alternating_sum(
    K: int, n: int, x: RationalLike, omega: Sequence[RationalLike], M: int
) -> tuple[Fraction, Fraction]:
    """Both sides of the alternating sum relation for M steps in the last parameter.

    omega holds K + 1 parameters. Left: sum_{j<M} (-1)^j E_{K,n}(x + j w_{K+1}; w_1..w_K).
    Right: (E_{K+1,n}(x) - (-1)^M E_{K+1,n}(x + M w_{K+1})) / 2.
    """
    omega = [rational(w) for w in omega]
    assert len(omega) == K + 1
    x, last = rational(x), omega[K]
    lower = build_table(K, omega[:K], n)
    upper = build_table(K + 1, omega, n)
    lhs = sum(
        ((-1) ** j * euler_poly(lower, n, x + j * last) for j in range(M)), Fraction(0)
    )
    sign = 1 if M % 2 == 1 else -1
    rhs = (euler_poly(upper, n, x) + sign * euler_poly(upper, n, x + M * last)) / 2
    return lhs, rhs
