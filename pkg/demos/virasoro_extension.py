"""Central extensions of the q-Witt algebra.

We certify the q-deformed Virasoro cocycle, build the extension, and then
contrast it with a coboundary, which the triviality search recognises.
"""

from fractions import Fraction

from homwitt.extension import (
    CocycleData,
    build_extension,
    check_cocycle_conditions,
    qwitt_algebra,
    triviality_check,
    virasoro_cocycle_data,
)
from homwitt.homlie import CENTRAL, HomLieElement
from homwitt.scalars import DEFAULT_PARAMS as P, evaluate

q = P.gen("q")
base = qwitt_algebra()

cocycle = virasoro_cocycle_data(Fraction(1, 6))
print(check_cocycle_conditions(base, cocycle, window=5).summary())

ext = build_extension(base, cocycle, window=5)
for m in (2, 3):
    br = ext.bracket(HomLieElement.basis((m,)), HomLieElement.basis((-m,)))
    central = br.terms.get(CENTRAL, P.zero())
    print(f"[L_{m}, L_-{m}] central part: {central}  (at q=1: {evaluate(central, {'q': 1})})")

verdict = triviality_check(base, cocycle, window=5)
print("Virasoro cocycle trivial on the window?", verdict.is_trivial)


# A coboundary: g(d_m, d_n) = phi([d_m, d_n]) with phi(d_j) = 1/(j^2 + 1).
def phi(j):
    return Fraction(1, j * j + 1)


def g(i, j):
    (m,), (n,) = i, j
    return (base.bracket_on_basis(i, j).terms.get((m + n,), P.zero())) * phi(m + n)


cob = CocycleData(g, f_base=lambda i: (q ** i[0] - 1) * phi(i[0]))
print("\ncoboundary conditions:", check_cocycle_conditions(base, cob, window=4).passed)
verdict = triviality_check(base, cob, window=4)
print("coboundary trivial?", verdict.is_trivial)
print("recovered phi(d_2):", verdict.witness[(2,)])
