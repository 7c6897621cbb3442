"""Brackets attached to the nonlinear twist sigma(t) = q t^s.

For s >= 2 the twist defect delta is no longer a constant, so the algebra is
not hom-Lie in the usual sense.  Still, the six-term twisted Jacobi identity
holds and the closed-form constants match the operators.
"""

import itertools

from homwitt.bracket import oracle_coefficient, six_term_jacobi
from homwitt.families import (
    FamilyParams,
    basis_coefficient,
    coefficient_to_basis,
    family_context,
    nonlinear_bracket,
)
from homwitt.laurent import LaurentPoly

for s, k in [(2, 0), (3, 1)]:
    p = FamilyParams("nonlinear", s=s, k=k)
    ctx = family_context(p)
    print(f"sigma(t) = q t^{s}, k = {k}")
    print("  Delta divisor:", ctx.deriv.divisor)
    print("  delta:", ctx.delta)
    for n, m in [(1, 0), (2, -1), (-1, -3)]:
        print(f"  [d_{n}, d_{m}] = {nonlinear_bracket(n, m, p)}")

    probes = [LaurentPoly.monomial((r,)) for r in range(-6, 7)]
    agree = all(
        coefficient_to_basis(
            oracle_coefficient(ctx, basis_coefficient((n,), 1), basis_coefficient((m,), 1), probes)
        )
        == nonlinear_bracket(n, m, p)
        for n, m in itertools.product(range(-3, 4), repeat=2)
    )
    print("  closed form equals operator bracket on |n|,|m| <= 3:", agree)

    coeffs = {i: basis_coefficient((i,), 1) for i in range(-3, 4)}
    jac = all(
        six_term_jacobi(ctx, coeffs[a], coeffs[b], coeffs[c]).is_zero
        for a, b, c in itertools.combinations(range(-3, 4), 3)
    )
    print("  six-term Jacobi on |n| <= 3:", jac)
    print()
