"""Why the chain congruence alone cannot certify an automorphism order.

Weights a = (3, 7, 2, 4, 5), degree d = 37, candidate order q = 23.  The
necessary cycle condition holds, yet no quasi-smooth hypersurface of this
degree admits an order-23 automorphism; this script walks through the whole
argument and then confirms it with the exhaustive signature-class oracle.
"""

from wpsauto import (
    WeightedFamily,
    chain_invariance_check,
    necessary_condition,
    oracle_exists_order,
    signature_from_chain,
    sufficient_condition,
)
from wpsauto.ambient import enumerate_monomials, lin_finite, mm_hypothesis, well_formed
from wpsauto.quasismooth import required_monomial

fam = WeightedFamily((3, 7, 2, 4, 5), 37)
print(f"family: weights {fam.weights}, degree {fam.degree} (dimension n = {fam.n})")
print(f"well-formed: {well_formed(fam)}, linearity hypothesis: {mm_hypothesis(fam)}, "
      f"finite linear group: {lin_finite(fam)}")

# 1. The necessary condition produces a qualifying cycle chain.
chain = necessary_condition(fam, 23)
print(f"\nqualifying chain: indices {chain.indices}, exponents {chain.exponents}")
print(f"signed product (-1)^{chain.ell + 1} * {chain.product()} = "
      f"{(-1) ** (chain.ell + 1) * chain.product()} = 1 mod 23")

# 2. The chain forces the signature residues on its variables.
sig = signature_from_chain(fam, chain, 23)
print(f"forced signature: {sig.sigma}  ('None' entries are unconstrained)")
print(f"cycle monomials invariant under it: {chain_invariance_check(chain, sig, 23)}")

# 3. The free variables x3, x4 need their own anchor monomials, and those
#    anchors impose incompatible residues.
system = enumerate_monomials(fam)
print(f"\nanchor for x3: {required_monomial(system, 3)}")
print(f"anchor for x4: {required_monomial(system, 4)}")
print("x4^6 x1 forces 6*s4 + 13 = 0 mod 23, i.e. s4 = 17")
print("x4^7 x2 forces 7*s4 +  4 = 0 mod 23, i.e. s4 = 6")
print("both monomials are needed for quasi-smoothness, so no signature works")

# 4. The partial converse cannot rescue it: no split witness exists.
print(f"\nsufficient condition: {sufficient_condition(fam, 23)}")

# 5. The oracle exhausts every signature class and refutes the order.
verdict = oracle_exists_order(fam, 23)
print(f"oracle verdict: {verdict.status}  ({verdict.notes[-1]})")
