"""Weighted cyclic ("Klein") hypersurfaces and the maximal prime order.

A Klein hypersurface for (a, d) is cut out by the full cyclic polynomial

    x_0^{m_0} x_1 + x_1^{m_1} x_2 + ... + x_{n+1}^{m_{n+1}} x_0

for some ordering of the variables in which a_i * m_i + a_{i+1} = d holds
cyclically.  When every weight is prime to d, these are the hypersurfaces
realizing the largest prime that can occur as an automorphism order; the
candidate value of that prime is (prod(m_i) + (-1)^(n+1)) / d.

Degree d = 2 is admitted in this module only; the order criteria elsewhere
require d >= 3.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .ambient import WeightedFamily, enumerate_monomials
from .arith import is_prime
from .cycles import CYCLE_BUDGET, simple_cycles
from .errors import HypothesisViolated, NoKleinHypersurface
from .orders import CycleChain, chain_from_cycle, signature_from_chain, weight_digraph

__all__ = [
    "KleinData",
    "MaxPrimeResult",
    "klein_exists",
    "klein_quasismooth",
    "klein_singularity_R",
    "klein_max_prime",
    "klein_eigenspace_check",
    "eigenspace_filter",
]


@dataclass(frozen=True)
class KleinData:
    """A full cyclic ordering of the variables with its exponents and invariants."""

    family: WeightedFamily
    ordering: tuple[int, ...]
    exponents: tuple[int, ...]
    R: int
    max_prime_candidate: Optional[int]
    cycle_count: int

    @property
    def monomials(self) -> list[tuple[int, ...]]:
        nv = self.family.nvars
        out = []
        k = len(self.ordering)
        for j in range(k):
            e = [0] * nv
            e[self.ordering[j]] += self.exponents[j]
            e[self.ordering[(j + 1) % k]] += 1
            out.append(tuple(e))
        return out


@dataclass(frozen=True)
class MaxPrimeResult:
    """Outcome of the maximal-prime computation: a value or a reason it fails."""

    value: Optional[int]
    reason: Optional[str]  # "not-integral" | "not-prime" | "not-greater-than-d"
    candidate: Optional[int] = None  # the integer tested, when integral


def _singularity_R(exponents: tuple[int, ...], n: int) -> int:
    """R = 1 + sum_{i=1}^{n+1} (-1)^(n-i) * prod_{j=i}^{n+1} m_j, exactly."""
    total = 1
    for i in range(1, n + 2):
        prod = math.prod(exponents[i:])
        total += prod if (n - i) % 2 == 0 else -prod
    return total


def klein_exists(fam: WeightedFamily, budget: int = CYCLE_BUDGET) -> Optional[KleinData]:
    """The lexicographically first full cyclic ordering of all variables, if any.

    Orderings are Hamiltonian cycles of the weight digraph (edge i -> j iff
    a_i divides d - a_j with positive quotient); no primality hypotheses are
    imposed here.  The number of distinct cycles found is reported.
    """
    nv = fam.nvars
    adj = {i: sorted(out) for i, out in weight_digraph(fam).items()}
    first: Optional[tuple[int, ...]] = None
    count = 0
    for cyc in simple_cycles(adj, nv, nv, budget):
        count += 1
        if first is None:
            first = cyc
    if first is None:
        return None
    chain = chain_from_cycle(fam, first)
    prod = chain.product()
    n = fam.n
    numer = prod + (1 if (n + 1) % 2 == 0 else -1)
    candidate = numer // fam.degree if numer % fam.degree == 0 and numer > 0 else None
    return KleinData(
        family=fam,
        ordering=first,
        exponents=chain.exponents,
        R=_singularity_R(chain.exponents, n),
        max_prime_candidate=candidate,
        cycle_count=count,
    )


def klein_quasismooth(fam: WeightedFamily) -> bool:
    """Quasi-smoothness of the Klein hypersurface itself (coefficients all 1).

    False exactly for a = (1, ..., 1), d = 2, n = 2 mod 4; true otherwise.
    """
    if fam.degree < 2:
        raise HypothesisViolated("degree must be at least 2")
    if klein_exists(fam) is None:
        raise NoKleinHypersurface(f"no full cyclic ordering for {fam}")
    degenerate = (
        all(w == 1 for w in fam.weights) and fam.degree == 2 and fam.n % 4 == 2
    )
    return not degenerate


def klein_singularity_R(data: KleinData) -> int:
    """The alternating exponent-product sum whose vanishing signals the
    potentially singular case; K evaluates to R times a coordinate product
    at any would-be singular point with all coordinates nonzero."""
    return _singularity_R(data.exponents, data.family.n)


def klein_max_prime(fam: WeightedFamily) -> MaxPrimeResult:
    """The largest prime order candidate (prod(m) + (-1)^(n+1)) / d.

    Requires a Klein ordering and weights coprime to the degree.  Returns
    the value only when the division is exact and the result is a prime
    exceeding d; otherwise the reason code tells which test failed.
    """
    if any(math.gcd(w, fam.degree) != 1 for w in fam.weights):
        raise HypothesisViolated("every weight must be coprime to the degree")
    data = klein_exists(fam)
    if data is None:
        raise NoKleinHypersurface(f"no full cyclic ordering for {fam}")
    n = fam.n
    numer = math.prod(data.exponents) + (1 if (n + 1) % 2 == 0 else -1)
    if numer % fam.degree != 0:
        return MaxPrimeResult(None, "not-integral")
    candidate = numer // fam.degree
    if candidate < 2 or not is_prime(candidate):
        return MaxPrimeResult(None, "not-prime", candidate)
    if candidate <= fam.degree:
        return MaxPrimeResult(None, "not-greater-than-d", candidate)
    return MaxPrimeResult(candidate, None, candidate)


def klein_eigenspace_check(fam: WeightedFamily) -> bool:
    """Verify that the invariant degree-d monomials are exactly the cycle.

    Builds the full-length chain along the Klein ordering, takes its residue
    signature mod the maximal prime p, and filters all degree-d monomials e
    with sigma . e = 0 mod p.  True iff the filtered set equals the n+2
    Klein monomials exactly.
    """
    result = klein_max_prime(fam)
    if result.value is None:
        raise HypothesisViolated(f"maximal prime unavailable: {result.reason}")
    p = result.value
    data = klein_exists(fam)
    assert data is not None
    chain = CycleChain(data.ordering, data.exponents)
    sig = signature_from_chain(fam, chain, p)
    assert sig.complete
    invariant = set(_invariant_monomials(fam, sig.sigma, p))
    return invariant == set(data.monomials)


def eigenspace_filter(fam: WeightedFamily, p: int) -> tuple[int, int]:
    """(invariant count, total count) of degree-d monomials for the Klein
    signature mod p; the counts reported alongside the eigenspace check."""
    data = klein_exists(fam)
    if data is None:
        raise NoKleinHypersurface(f"no full cyclic ordering for {fam}")
    chain = CycleChain(data.ordering, data.exponents)
    sig = signature_from_chain(fam, chain, p)
    total = enumerate_monomials(fam)
    invariant = _invariant_monomials(fam, sig.sigma, p)
    return len(invariant), len(total)


def _invariant_monomials(fam: WeightedFamily, sigma, p: int) -> list[tuple[int, ...]]:
    out = []
    for e in enumerate_monomials(fam).monomials:
        if sum(s * x for s, x in zip(sigma, e)) % p == 0:
            out.append(e)
    return out
