"""Quasi-smoothness tests and a finite-field singular-point falsifier.

Two complementary verdicts are produced here and deliberately kept apart:

* combinatorial: the subset criterion (`exists_quasismooth`,
  `general_member_quasismooth`) decides whether the general member of a
  monomial linear system has a smooth affine cone away from the origin;
* point-witness: `singular_point_search` hunts for an explicit singular
  point of one explicit polynomial over a prime field.  A witness refutes
  quasi-smoothness of that reduction; finding none proves nothing.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional, Sequence

import numpy as np

from . import ambient
from .ambient import Monomial, MonomialSystem, WeightedFamily
from .arith import is_prime, semigroup_reachable
from .errors import CoefficientCollision, EmptySystem, NotWellFormed

__all__ = [
    "ExplicitPolynomial",
    "SingularSearchResult",
    "exists_quasismooth",
    "semigroup_subset_condition",
    "general_member_quasismooth",
    "subset_criterion",
    "required_monomial",
    "singular_point_search",
    "random_member",
]


def semigroup_subset_condition(fam: WeightedFamily) -> bool:
    """Semigroup subset condition for existence of a quasi-smooth member.

    For each nonempty index subset I, either d lies in the semigroup
    generated by the weights in I, or at least |I| indices j outside I have
    d - a_j in that semigroup.  Exhaustive over all 2^(n+2) - 1 subsets.
    """
    a = fam.weights
    d = fam.degree
    nv = len(a)
    for mask in range(1, 1 << nv):
        gens = [a[i] for i in range(nv) if mask >> i & 1]
        reach = semigroup_reachable(gens, d)
        if reach[d]:
            continue
        size = len(gens)
        hits = 0
        for j in range(nv):
            if mask >> j & 1:
                continue
            if d - a[j] >= 0 and reach[d - a[j]]:
                hits += 1
        if hits < size:
            return False
    return True


def exists_quasismooth(fam: WeightedFamily) -> bool:
    """Whether any quasi-smooth hypersurface of degree d exists for these weights.

    True iff some weight equals d (the linear-cone case) or the semigroup
    subset condition holds.
    """
    if not ambient.well_formed(fam):
        raise NotWellFormed(f"{fam} is not well-formed")
    if fam.degree in fam.weights:
        return True
    return semigroup_subset_condition(fam)


def subset_criterion(exponents: Sequence[Sequence[int]], nvars: int) -> bool:
    """Subset test for quasi-smoothness of the general member of a monomial span.

    For every nonempty subset I of variable indices, require either
    (a) some monomial supported inside I, or
    (b) at least |I| distinct indices j outside I such that some monomial is
        a monomial in the I-variables times x_j to the first power.

    An empty system fails for every I, hence returns False.
    """
    if nvars < 1:
        raise ValueError("need at least one variable")
    if not exponents:
        return False
    support = []
    unit_bits = []  # per monomial: bit j set iff exponent of x_j is exactly 1
    for e in exponents:
        s = 0
        u = 0
        for j in range(nvars):
            if e[j] > 0:
                s |= 1 << j
                if e[j] == 1:
                    u |= 1 << j
        support.append(s)
        unit_bits.append(u)
    for mask in range(1, 1 << nvars):
        size = bin(mask).count("1")
        outside_js = 0
        ok = False
        for s, u in zip(support, unit_bits):
            out = s & ~mask
            if out == 0:
                ok = True
                break
            if out & (out - 1) == 0 and out & u:
                outside_js |= out
        if not ok and bin(outside_js).count("1") < size:
            return False
    return True


def general_member_quasismooth(fam: WeightedFamily, system: MonomialSystem) -> bool:
    """Subset criterion applied to a monomial system of degree-d monomials."""
    if len(system) == 0:
        raise EmptySystem("the monomial system is empty")
    if system.family != fam:
        raise ValueError("system was built for a different family")
    return subset_criterion(system.monomials, fam.nvars)


def required_monomial(system: MonomialSystem, i: int) -> Optional[Monomial]:
    """A monomial of the form x_i^k or x_i^k * x_j from the system, if any.

    Pure powers are preferred; otherwise the lexicographically least
    near-power is returned.  Every quasi-smooth system has one for every i.
    """
    nv = system.family.nvars
    if not 0 <= i < nv:
        raise ValueError(f"index {i} out of range")
    best = None
    for e in sorted(system.monomials):
        if e[i] < 1:
            continue
        others = [(j, x) for j, x in enumerate(e) if j != i and x > 0]
        if not others:
            return e  # pure power, preferred unconditionally
        if best is None and len(others) == 1 and others[0][1] == 1:
            best = e
    return best


@dataclass(frozen=True)
class ExplicitPolynomial:
    """A member of a monomial system with explicit nonzero coefficients."""

    system: MonomialSystem
    coefficients: Mapping[Monomial, Fraction]

    def __post_init__(self) -> None:
        coeffs = {}
        members = set(self.system.monomials)
        for mono, c in self.coefficients.items():
            mono = tuple(mono)
            if mono not in members:
                raise ValueError(f"monomial {mono} is not in the system")
            frac = Fraction(c)
            if frac == 0:
                raise ValueError(f"zero coefficient stored for {mono}")
            coeffs[mono] = frac
        object.__setattr__(self, "coefficients", coeffs)

    @property
    def monomials(self) -> list[Monomial]:
        return sorted(self.coefficients)


def random_member(system: MonomialSystem, seed: int = 0, coeff_bound: int = 10**4) -> ExplicitPolynomial:
    """A member of the system with seeded random coefficients in [1, coeff_bound]."""
    rng = random.Random(seed)
    coeffs = {e: Fraction(rng.randint(1, coeff_bound)) for e in system.monomials}
    return ExplicitPolynomial(system, coeffs)


@dataclass(frozen=True)
class SingularSearchResult:
    """Outcome of a singular-point hunt over one prime field."""

    prime: int
    witness: Optional[tuple[int, ...]]
    tested: int
    mode: str  # "exhaustive" or "sampled"
    exhausted: bool  # budget ran out before the space was covered
    seed: int

    @property
    def found(self) -> bool:
        return self.witness is not None


def _reduce_coefficients(poly: ExplicitPolynomial, p: int) -> tuple[list[Monomial], list[int]]:
    monos = []
    coeffs = []
    for mono in sorted(poly.coefficients):
        frac = poly.coefficients[mono]
        num, den = frac.numerator % p, frac.denominator % p
        if den == 0:
            raise CoefficientCollision(f"denominator of coefficient of {mono} vanishes mod {p}")
        c = num * pow(den, -1, p) % p
        if c == 0:
            raise CoefficientCollision(f"coefficient of {mono} vanishes mod {p}")
        monos.append(mono)
        coeffs.append(c)
    return monos, coeffs


def _eval_batch(points: np.ndarray, monos: Sequence[Monomial], coeffs: Sequence[int], p: int) -> np.ndarray:
    """Evaluate sum(c * x^e) mod p on a batch of points, exactly in int64."""
    npts = points.shape[0]
    nv = points.shape[1]
    max_exp = [max((e[v] for e in monos), default=0) for v in range(nv)]
    pows: list[list[np.ndarray]] = []
    for v in range(nv):
        col = points[:, v].astype(np.int64)
        table = [np.ones(npts, dtype=np.int64)]
        for _ in range(max_exp[v]):
            table.append(table[-1] * col % p)
        pows.append(table)
    total = np.zeros(npts, dtype=np.int64)
    for mono, c in zip(monos, coeffs):
        term = np.full(npts, c, dtype=np.int64)
        for v, e in enumerate(mono):
            if e:
                term = term * pows[v][e] % p
        total = (total + term) % p
    return total


def _partials(monos: Sequence[Monomial], coeffs: Sequence[int], nv: int, p: int):
    """Coefficient data of all partial derivatives, reduced mod p."""
    out = []
    for v in range(nv):
        pm, pc = [], []
        for mono, c in zip(monos, coeffs):
            if mono[v] == 0:
                continue
            dc = c * mono[v] % p
            if dc == 0:  # characteristic kills this term
                continue
            de = list(mono)
            de[v] -= 1
            pm.append(tuple(de))
            pc.append(dc)
        out.append((pm, pc))
    return out


def _find_witness(
    points: np.ndarray,
    monos: Sequence[Monomial],
    coeffs: Sequence[int],
    parts,
    p: int,
) -> Optional[tuple[int, ...]]:
    if points.shape[0] == 0:
        return None
    alive = _eval_batch(points, monos, coeffs, p) == 0
    alive &= points.any(axis=1)  # the origin never counts
    if not alive.any():
        return None
    idx = np.flatnonzero(alive)
    sub = points[idx]
    for pm, pc in parts:
        if len(pm) == 0:
            continue  # identically zero partial vanishes everywhere
        keep = _eval_batch(sub, pm, pc, p) == 0
        idx = idx[keep]
        if idx.size == 0:
            return None
        sub = points[idx]
    return tuple(int(x) for x in points[idx[0]])


def _verify_witness(point: Sequence[int], monos, coeffs, parts, p: int) -> bool:
    def ev(ms, cs):
        total = 0
        for mono, c in zip(ms, cs):
            term = c
            for v, e in enumerate(mono):
                term = term * pow(int(point[v]), e, p) % p
            total = (total + term) % p
        return total

    if all(x % p == 0 for x in point):
        return False
    if ev(monos, coeffs) != 0:
        return False
    return all(ev(pm, pc) == 0 for pm, pc in parts)


def singular_point_search(
    poly: ExplicitPolynomial,
    field_prime: int,
    budget: int = 200_000,
    seed: int = 0,
) -> SingularSearchResult:
    """Hunt for a nonzero point of the affine cone where all partials vanish.

    Exhaustive when field_prime**nvars fits the budget.  Otherwise a
    deterministic small-coordinate box is swept first (singular loci defined
    over small integers are caught regardless of the prime), then seeded
    random sampling consumes the rest of the budget.  A returned witness is
    re-verified with plain integer arithmetic before being reported.
    """
    if not is_prime(field_prime):
        raise ValueError(f"{field_prime} is not prime")
    if budget < 0:
        raise ValueError("budget must be nonnegative")
    p = field_prime
    nv = poly.system.family.nvars
    monos, coeffs = _reduce_coefficients(poly, p)
    parts = _partials(monos, coeffs, nv, p)

    def result(witness, tested, mode, exhausted):
        if witness is not None and not _verify_witness(witness, monos, coeffs, parts, p):
            raise AssertionError(f"witness {witness} failed exact re-verification")
        return SingularSearchResult(p, witness, tested, mode, exhausted, seed)

    chunk = 1 << 12
    total_points = p**nv
    if total_points <= budget:
        tested = 0
        for start in range(0, total_points, chunk):
            stop = min(start + chunk, total_points)
            ranks = np.arange(start, stop, dtype=np.int64)
            pts = np.empty((stop - start, nv), dtype=np.int64)
            for v in range(nv - 1, -1, -1):
                pts[:, v] = ranks % p
                ranks //= p
            tested += stop - start
            w = _find_witness(pts, monos, coeffs, parts, p)
            if w is not None:
                return result(w, tested, "exhaustive", False)
        return result(None, tested, "exhaustive", False)

    tested = 0
    # Deterministic box of small coordinates: values {0, 1..b, p-b..p-1}.
    b = 1
    while (2 * (b + 1) + 1) ** nv <= max(budget // 2, 0):
        b += 1
    if (2 * b + 1) ** nv <= max(budget // 2, 0) and budget > 0:
        values = [0] + [x for k in range(1, b + 1) for x in (k, p - k)]
        box_total = len(values) ** nv
        vals = np.array(values, dtype=np.int64)
        for start in range(0, box_total, chunk):
            stop = min(start + chunk, box_total)
            ranks = np.arange(start, stop, dtype=np.int64)
            pts = np.empty((stop - start, nv), dtype=np.int64)
            for v in range(nv - 1, -1, -1):
                pts[:, v] = vals[ranks % len(values)]
                ranks //= len(values)
            tested += stop - start
            w = _find_witness(pts, monos, coeffs, parts, p)
            if w is not None:
                return result(w, tested, "sampled", False)

    rng = np.random.Generator(np.random.PCG64(seed))
    while tested < budget:
        take = min(chunk, budget - tested)
        pts = rng.integers(0, p, size=(take, nv), dtype=np.int64)
        tested += take
        w = _find_witness(pts, monos, coeffs, parts, p)
        if w is not None:
            return result(w, tested, "sampled", False)
    return result(None, tested, "sampled", True)
