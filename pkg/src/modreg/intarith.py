"""Exact integer arithmetic underpinning the rest of the package.

Everything here is deliberately plain: trial division and textbook gcd are
plenty at the scales this library targets, and unbounded ``int`` arithmetic
keeps downstream matrix work exact.
"""

from dataclasses import dataclass
from math import gcd, lcm, prod
from typing import Iterable

from .errors import DomainError


def is_prime(n: int) -> bool:
    """Trial-division primality test for small integers."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class PrimePowerFactorization:
    """Map from prime to exponent; multiplies back to the factored integer."""

    factors: dict[int, int]

    def __post_init__(self):
        for p, e in self.factors.items():
            if not is_prime(p):
                raise DomainError(f"factor key {p} is not prime")
            if e < 1:
                raise DomainError(f"exponent for prime {p} must be >= 1, got {e}")

    def value(self) -> int:
        return prod(p**e for p, e in self.factors.items())


def gcd_ext(a: int, b: int) -> tuple[int, int, int]:
    """Extended gcd: (g, x, y) with g = gcd(|a|, |b|) >= 0 and a*x + b*y = g."""
    if a == 0 and b == 0:
        return 0, 0, 0
    old_r, r = a, b
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r != 0:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_x, x = x, old_x - q * x
        old_y, y = y, old_y - q * y
    if old_r < 0:
        old_r, old_x, old_y = -old_r, -old_x, -old_y
    return old_r, old_x, old_y


def factorize(n: int) -> PrimePowerFactorization:
    """Factor n >= 1 by trial division; n = 1 yields the empty factorization."""
    if n < 1:
        raise DomainError(f"factorize requires n >= 1, got {n}")
    factors: dict[int, int] = {}
    m = n
    d = 2
    while d * d <= m:
        while m % d == 0:
            factors[d] = factors.get(d, 0) + 1
            m //= d
        d += 1 if d == 2 else 2
    if m > 1:
        factors[m] = factors.get(m, 0) + 1
    return PrimePowerFactorization(factors)


def element_order(coords: Iterable[int], moduli: Iterable[int]) -> int:
    """Order of the element ``coords`` in the direct product of Z_{moduli[i]}.

    Equals lcm over i of moduli[i] / gcd(moduli[i], coords[i]); the identity
    (and the element of the empty product) has order 1.
    """
    cs = tuple(coords)
    ms = tuple(moduli)
    if len(cs) != len(ms):
        raise DomainError(f"coordinate count {len(cs)} != modulus count {len(ms)}")
    out = 1
    for c, m in zip(cs, ms):
        if m < 1:
            raise DomainError(f"modulus must be >= 1, got {m}")
        if not 0 <= c < m:
            raise DomainError(f"coordinate {c} out of range for modulus {m}")
        out = lcm(out, m // gcd(m, c))
    return out
