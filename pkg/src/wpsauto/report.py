"""Deterministic JSON report assembly for the command-line surface.

Reports are plain dicts serialized with sorted keys and fixed separators,
so identical (arguments, seed, budget) produce byte-identical output.
Exact rationals are rendered as strings to avoid any float round-trip.
"""

from __future__ import annotations

import json
import math
from fractions import Fraction
from typing import Any

from . import __version__
from .ambient import WeightedFamily, is_linear_cone, lin_finite, mm_hypothesis, well_formed
from .errors import HypothesisViolated
from .klein import (
    eigenspace_filter,
    klein_eigenspace_check,
    klein_exists,
    klein_max_prime,
    klein_quasismooth,
)
from .orders import BoundReport, OrderVerdict, bound_coprime, bound_divides_d

__all__ = [
    "family_flags",
    "bounds_section",
    "klein_section",
    "verdict_json",
    "base_report",
    "dumps",
]


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def _exact(value: "int | Fraction") -> "int | str":
    if isinstance(value, Fraction) and value.denominator != 1:
        return f"{value.numerator}/{value.denominator}"
    return int(value)


def family_flags(fam: WeightedFamily) -> dict[str, bool]:
    return {
        "well_formed": well_formed(fam),
        "mm_hypothesis": mm_hypothesis(fam),
        "lin_finite": lin_finite(fam),
        "linear_cone": is_linear_cone(fam),
    }


def _bound_json(report: BoundReport) -> dict[str, Any]:
    return {
        "bound": _exact(report.bound),
        "kind": report.kind,
        "multiplicities": {str(w): nu for w, nu in report.multiplicities},
        "max_weight": report.max_weight,
    }


def bounds_section(fam: WeightedFamily) -> dict[str, Any]:
    out: dict[str, Any] = {"divides_d": None, "coprime": None}
    if all(fam.degree % w == 0 for w in fam.weights):
        out["divides_d"] = _bound_json(bound_divides_d(fam))
    if all(math.gcd(w, fam.degree) == 1 for w in fam.weights) and fam.degree > max(fam.weights):
        out["coprime"] = _bound_json(bound_coprime(fam))
    return out


def klein_section(fam: WeightedFamily) -> dict[str, Any]:
    data = klein_exists(fam)
    if data is None:
        return {"exists": False}
    out: dict[str, Any] = {
        "exists": True,
        "ordering": list(data.ordering),
        "exponents": list(data.exponents),
        "cycle_count": data.cycle_count,
        "R": data.R,
        "quasi_smooth": klein_quasismooth(fam),
        "max_prime": None,
        "eigenspace": None,
    }
    try:
        result = klein_max_prime(fam)
    except HypothesisViolated as exc:
        out["max_prime"] = {"value": None, "reason": f"hypothesis: {exc}"}
        return out
    out["max_prime"] = {"value": result.value, "reason": result.reason}
    if result.value is not None:
        invariant, total = eigenspace_filter(fam, result.value)
        out["eigenspace"] = {
            "check": klein_eigenspace_check(fam),
            "invariant_monomials": invariant,
            "total_monomials": total,
        }
    return out


def verdict_json(verdict: OrderVerdict) -> dict[str, Any]:
    chain = None
    if verdict.chain is not None:
        chain = {
            "indices": list(verdict.chain.indices),
            "exponents": list(verdict.chain.exponents),
        }
    signature = None
    if verdict.signature is not None:
        signature = [s for s in verdict.signature.sigma]
    witness = None
    if verdict.witness_system is not None:
        witness = [list(e) for e in verdict.witness_system.monomials]
    return {
        "q": verdict.q,
        "status": verdict.status,
        "provenance": verdict.provenance,
        "chain": chain,
        "signature": signature,
        "witness_monomials": witness,
        "notes": list(verdict.notes),
    }


def base_report(fam: WeightedFamily, seed: int) -> dict[str, Any]:
    return {
        "version": __version__,
        "seed": seed,
        "weights": list(fam.weights),
        "degree": fam.degree,
        "flags": family_flags(fam),
    }
