"""Exact integer primitives: primality, prime powers, gcd, numerical semigroups.

Everything here is plain integer arithmetic; no floating point is used
anywhere in this library.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import EmptyInput, NotAPrimePower

__all__ = [
    "PrimePowerOrder",
    "as_prime_power",
    "is_prime",
    "prime_power_decompose",
    "gcd_all",
    "semigroup_contains",
    "semigroup_reachable",
    "effective_order",
    "primes_up_to",
    "prime_powers_up_to",
]

# Witnesses proving Miller-Rabin deterministic for n < 3.317e24 (Sorenson-Webster).
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_MR_LIMIT = 3_317_044_064_679_887_385_961_981


def is_prime(n: int) -> bool:
    """Deterministic primality test for 0 <= n < 3.317e24.

    Uses Miller-Rabin with a fixed witness set that is proven complete in
    this range; larger inputs raise rather than degrade to a probabilistic
    answer.
    """
    if n < 0:
        raise ValueError("is_prime expects a nonnegative integer")
    if n >= _MR_LIMIT:
        raise ValueError(f"deterministic primality is only supported below {_MR_LIMIT}")
    if n < 2:
        return False
    for p in _MR_WITNESSES:
        if n == p:
            return True
        if n % p == 0:
            return False
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class PrimePowerOrder:
    """A candidate automorphism order q = p**r with p prime and r >= 1."""

    p: int
    r: int

    def __post_init__(self) -> None:
        if self.r < 1:
            raise ValueError("exponent r must be at least 1")
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")

    @property
    def q(self) -> int:
        return self.p**self.r

    def __str__(self) -> str:
        return f"{self.p}^{self.r}" if self.r > 1 else str(self.p)


def prime_power_decompose(q: int) -> PrimePowerOrder:
    """Write q >= 2 as p**r with p prime, or raise NotAPrimePower."""
    if q < 2:
        raise ValueError("q must be at least 2")
    if is_prime(q):
        return PrimePowerOrder(q, 1)
    # q is composite, so its least prime factor is at most sqrt(q).
    p = 0
    for cand in range(2, math.isqrt(q) + 1):
        if q % cand == 0:
            p = cand
            break
    if p == 0:  # unreachable for composite q, kept as a guard
        raise NotAPrimePower(f"{q} is not a prime power")
    r = 0
    m = q
    while m % p == 0:
        m //= p
        r += 1
    if m != 1:
        raise NotAPrimePower(f"{q} = {p}^{r} * {m} has two distinct prime factors")
    return PrimePowerOrder(p, r)


def as_prime_power(q: "int | PrimePowerOrder") -> PrimePowerOrder:
    """Coerce an integer or PrimePowerOrder to a PrimePowerOrder."""
    if isinstance(q, PrimePowerOrder):
        return q
    return prime_power_decompose(q)


def gcd_all(xs: Sequence[int]) -> int:
    """Greatest common divisor of a nonempty list of positive integers."""
    if not xs:
        raise EmptyInput("gcd_all needs at least one integer")
    g = 0
    for x in xs:
        if x < 1:
            raise ValueError("gcd_all expects positive integers")
        g = math.gcd(g, x)
    return g


def semigroup_reachable(generators: Iterable[int], limit: int) -> list[bool]:
    """Table t with t[k] true iff k <= limit is a sum of the generators.

    Plain unbounded-coin dynamic programming; exact and O(len * limit).
    """
    gens = sorted(set(generators))
    if not gens:
        raise EmptyInput("semigroup_reachable needs at least one generator")
    if any(g < 1 for g in gens):
        raise ValueError("generators must be positive")
    table = [False] * (limit + 1)
    table[0] = True
    for g in gens:
        for k in range(g, limit + 1):
            if table[k - g]:
                table[k] = True
    return table


def semigroup_contains(generators: Iterable[int], target: int) -> bool:
    """Whether target is a nonnegative integer combination of the generators."""
    if target < 0:
        raise ValueError("target must be nonnegative")
    return semigroup_reachable(generators, target)[target]


def _divisors_sorted(q: int) -> list[int]:
    divs = []
    for k in range(1, math.isqrt(q) + 1):
        if q % k == 0:
            divs.append(k)
            if k != q // k:
                divs.append(q // k)
    return sorted(divs)


def effective_order(sigma: Sequence[int], a: Sequence[int], q: int) -> int:
    """Order of the projective automorphism induced by the residue vector sigma.

    This is the least k >= 1 such that k*sigma is a multiple of a modulo q,
    i.e. the order of sigma in (Z/q)^(n+2) / <a mod q>.  Since every element
    of that quotient has order dividing q, only divisors of q are tested.
    """
    if len(sigma) != len(a):
        raise ValueError("sigma and a must have equal length")
    if q < 2:
        raise ValueError("q must be at least 2")
    sig = [s % q for s in sigma]
    avec = [w % q for w in a]
    for k in _divisors_sorted(q):
        scaled = [k * s % q for s in sig]
        for c in range(q):
            if all(c * w % q == s for w, s in zip(avec, scaled)):
                return k
        # no c matched; try the next divisor
    return q  # unreachable: k = q always matches with c = 0


def primes_up_to(limit: int) -> list[int]:
    """All primes <= limit, by sieve."""
    if limit < 2:
        return []
    sieve = bytearray([1]) * (limit + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, math.isqrt(limit) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(sieve[i * i :: i]))
    return [i for i, flag in enumerate(sieve) if flag]


def prime_powers_up_to(limit: int) -> list[PrimePowerOrder]:
    """All prime powers p**r <= limit in increasing order of value."""
    out = []
    for p in primes_up_to(limit):
        value = p
        r = 1
        while value <= limit:
            out.append(PrimePowerOrder(p, r))
            value *= p
            r += 1
    return sorted(out, key=lambda pp: pp.q)
