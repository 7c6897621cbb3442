"""A walk through the q-Witt algebra.

We start from the q-shift sigma(t) = q t, find the sigma-derivation that
generates all others, read off a few structure constants and confirm that
they agree with composing the operators directly.
"""

import itertools

from homwitt.bracket import homlie_jacobi, oracle_coefficient
from homwitt.derivation import canonical_generator
from homwitt.families import (
    FamilyParams,
    basis_coefficient,
    coefficient_to_basis,
    family_context,
    qwitt_bracket,
)
from homwitt.homlie import HomLieElement
from homwitt.laurent import LaurentPoly
from homwitt.scalars import DEFAULT_PARAMS as P, evaluate
from homwitt.twist import MonomialEndo

q = P.gen("q")

# Step 1: the generator.  For the q-shift the divisor turns out to be a unit,
# so Delta = id - sigma up to a constant.
shift = MonomialEndo.univariate(q, 1)
canon = canonical_generator(shift, MonomialEndo.identity())
print("generator divisor:", canon.divisor)

# Step 2: a small table of brackets [d_n, d_m] = ({n} - {m}) d_{n+m}.
print("\nq-Witt brackets")
for n, m in [(1, -1), (2, 1), (3, -2), (-2, -1)]:
    print(f"  [d_{n}, d_{m}] = {qwitt_bracket(n, m)}")

# Step 3: the same numbers from operator composition alone.
p = FamilyParams("qwitt")
ctx = family_context(p)
probes = [LaurentPoly.monomial((r,)) for r in range(-6, 7)]
for n, m in [(2, 1), (3, -2)]:
    c = oracle_coefficient(ctx, basis_coefficient((n,), 1), basis_coefficient((m,), 1), probes)
    print(f"  operators give [d_{n}, d_{m}] = {coefficient_to_basis(c)}")

# Step 4: the hom-Lie Jacobi identity with twist d_n -> q^n d_n.
idx = [(n,) for n in range(-3, 4)]
ok = all(
    homlie_jacobi(
        lambda i, j: qwitt_bracket(i[0], j[0]),
        lambda i: HomLieElement.basis(i, q ** i[0]),
        HomLieElement.basis(x),
        HomLieElement.basis(y),
        HomLieElement.basis(z),
    ).is_zero
    for x, y, z in itertools.combinations(idx, 3)
)
print("\nhom-Lie Jacobi on |n| <= 3:", "holds" if ok else "fails")

# Step 5: at q = 1 the structure constants collapse to the classical Witt algebra.
for k, v in qwitt_bracket(3, -2).terms.items():
    print(f"[d_3, d_-2] at q=1: {evaluate(v, {'q': 1})} d_{k[0]}")
