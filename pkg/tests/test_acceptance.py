"""Acceptance checks, one marked group per criterion.

Each check is exact.  A summary line per criterion is printed at the end of
the run (see ``pytest_terminal_summary`` in conftest).
"""

import itertools
import json
import subprocess
import sys
from fractions import Fraction

import pytest
import sympy

from homwitt.bracket import homlie_jacobi, oracle_coefficient, six_term_jacobi
from homwitt.cli import run
from homwitt.derivation import canonical_generator, delta_of, with_divisor
from homwitt.extension import (
    CocycleData,
    Nontrivial,
    Trivial,
    b1,
    b2,
    build_extension,
    check_cocycle_conditions,
    qwitt_algebra,
    recurrence_defect,
    triviality_check,
    virasoro_algebra,
    virasoro_cocycle_data,
)
from homwitt.families import (
    FamilyParams,
    basis_coefficient,
    coefficient_to_basis,
    family_bracket,
    family_context,
    family_twist,
    integer_eigenvectors,
    nonlinear_bracket,
    qwitt_bracket,
    submodule_bracket,
)
from homwitt.homlie import CENTRAL, HomLieElement
from homwitt.laurent import LaurentPoly
from homwitt.scalars import DEFAULT_PARAMS as P, evaluate, parse_scalar, q_number, subs
from homwitt.twist import MonomialEndo

q = P.gen("q")
t = LaurentPoly.monomial((1,))
Q_SYM = sympy.Symbol("q")

FAMILIES = (
    [FamilyParams("qwitt")]
    + [FamilyParams("nonlinear", s=s, k=k, alpha=a) for s in (2, 3) for k in (-1, 0, 2) for a in (1, 2)]
    + [FamilyParams("submodule", s=s, k=k) for s in (1, 2) for k in (0, 1)]
    + [FamilyParams("multivariate", S=((1, 1), (0, 1)), G=(0, 1), Q=1)]
    + [FamilyParams("symqdiff")]
)


def family_id(p):
    if p.kind in ("nonlinear", "submodule"):
        return f"{p.kind}-s{p.s}-k{p.k}-a{p.alpha}"
    return p.kind


def d(*idx, c=1):
    return HomLieElement.basis(idx, c)


def at_q1(x):
    return x.map_coefficients(lambda c: subs(c, {"q": 1}))


def report(number, ok, detail=""):
    print(f"criterion {number}: {'PASS' if ok else 'FAIL'} {detail}".rstrip())


# -- 1 ----------------------------------------------------------------------


def associate_of_t_minus_q_t_s(s):
    """Worked by hand: t - q t^s with the unit stripped (lowest term made 1)."""
    if s >= 1:
        return 1 - q * t ** (s - 1)
    return 1 - q**-1 * t ** (1 - s)


@pytest.mark.criterion(1, "generator / gcd")
def test_c1_q_shift_generator():
    shift = MonomialEndo.univariate(q, 1)
    canon = canonical_generator(shift, MonomialEndo.identity(), 4)
    assert canon.divisor.is_unit and canon.divisor == LaurentPoly.one()
    # D = -(id - sigma)/(q - 1)
    scaled = with_divisor(shift, MonomialEndo.identity(), LaurentPoly.constant(q - 1), -1)
    for m in range(-8, 9):
        assert scaled(t**m) == q_number(m) * t**m
    report(1, True, "sigma(t)=qt")


@pytest.mark.criterion(1, "generator / gcd")
@pytest.mark.parametrize("s", [-2, -1, 0, 2, 3])
def test_c1_power_twist_generator(s):
    sigma = MonomialEndo.univariate(q, s)
    canon = canonical_generator(sigma, MonomialEndo.identity(), 4)  # compares R=4 with R=5
    assert canon.divisor == associate_of_t_minus_q_t_s(s)
    report(1, True, f"s={s}")


# -- 2 ----------------------------------------------------------------------


def probes_for(p):
    return [LaurentPoly.monomial(r, 1, p.nvars) for r in itertools.product(range(-8, 9), repeat=p.nvars)]


def index_window(p):
    radius = 2 if p.nvars > 1 else 5
    return list(itertools.product(range(-radius, radius + 1), repeat=p.nvars))


@pytest.mark.criterion(2, "closed forms equal the operator-composition bracket")
@pytest.mark.parametrize("p", FAMILIES, ids=family_id)
def test_c2_oracle_equivalence(p):
    ctx = family_context(p)
    probes = probes_for(p)
    idx = index_window(p)
    coeff = {i: basis_coefficient(i, p.nvars) for i in idx}
    bad = []
    for left, right in itertools.product(idx, repeat=2):
        from_operators = coefficient_to_basis(oracle_coefficient(ctx, coeff[left], coeff[right], probes))
        if family_bracket(p, left, right) != from_operators:
            bad.append((left, right))
    report(2, not bad, family_id(p))
    assert not bad, bad[:5]


# -- 3 ----------------------------------------------------------------------


def jacobi_triples(p):
    # the defect is trilinear and alternating, so increasing triples cover every triple
    idx = list(itertools.product(range(-4, 5), repeat=p.nvars))
    return itertools.combinations(idx, 3)


@pytest.mark.criterion(3, "six-term twisted Jacobi")
@pytest.mark.parametrize("p", FAMILIES, ids=family_id)
def test_c3_six_term_jacobi(p):
    ctx = family_context(p)
    coeff = {}
    bad = []
    for triple in jacobi_triples(p):
        for i in triple:
            if i not in coeff:
                coeff[i] = basis_coefficient(i, p.nvars)
        if not six_term_jacobi(ctx, *(coeff[i] for i in triple)).is_zero:
            bad.append(triple)
    report(3, not bad, f"{family_id(p)} delta={ctx.delta}" + (f" ({len(bad)} violating triples)" if bad else ""))
    assert not bad, f"{len(bad)} violating triples, first {bad[:3]}"


@pytest.mark.criterion(3, "six-term twisted Jacobi")
def test_c3_alternation_and_nonscalar_delta():
    ctx = family_context(FamilyParams("nonlinear", s=3, k=0))
    assert ctx.delta == 1 + q * t**2 + q**2 * t**4
    # permuted and repeated triples, which the sweep above skips
    for p in FAMILIES[:-1]:
        c = family_context(p)
        n = p.nvars
        for triple in [((1,) * n, (-2,) * n, (3,) * n), ((2,) * n, (2,) * n, (-1,) * n)]:
            a, b, e = (basis_coefficient(i, n) for i in triple)
            base = six_term_jacobi(c, a, b, e)
            for perm in itertools.permutations((a, b, e)):
                assert six_term_jacobi(c, *perm).is_zero and base.is_zero
    report(3, True, "alternation and nonscalar delta")


# -- 4 ----------------------------------------------------------------------


def qwitt_twist(i):
    return d(*i, c=q ** i[0])


def qwitt_br(i, j):
    return qwitt_bracket(i[0], j[0])


@pytest.mark.criterion(4, "three-term hom-Lie Jacobi")
def test_c4_q_witt():
    idx = [(n,) for n in range(-5, 6)]
    for x, y, z in itertools.product(idx, repeat=3):
        assert homlie_jacobi(qwitt_br, qwitt_twist, d(*x), d(*y), d(*z)).is_zero
    report(4, True, "q-Witt |n| <= 5")


@pytest.mark.criterion(4, "three-term hom-Lie Jacobi")
def test_c4_multivariate():
    p = FamilyParams("multivariate", S=((1, 1), (0, 1)), G=(0, 1))
    S, G = p.S, p.G
    assert all(sum(S[i][k] * G[i] for i in range(2)) == G[k] for k in range(2))
    twist = family_twist(family_context(p))
    br = lambda i, j: family_bracket(p, i, j)  # noqa: E731
    idx = list(itertools.product(range(-2, 3), repeat=2))
    for x, y, z in itertools.combinations(idx, 3):
        assert homlie_jacobi(br, twist, d(*x), d(*y), d(*z)).is_zero
    # the alternating property of the defect, spot-checked on permutations and repeats
    for x, y, z in itertools.permutations([(1, 0), (0, 1), (-1, -1)]):
        assert homlie_jacobi(br, twist, d(*x), d(*y), d(*z)).is_zero
    assert homlie_jacobi(br, twist, d(1, 1), d(1, 1), d(0, -2)).is_zero
    report(4, True, "multivariate S^T G = G")


@pytest.mark.criterion(4, "three-term hom-Lie Jacobi")
def test_c4_identity_twist_negative_control():
    ident = lambda i: d(*i)  # noqa: E731
    defect = homlie_jacobi(qwitt_br, ident, d(1), d(2), d(-3))
    assert not defect.is_zero
    report(4, True, f"identity twist defect at (1,2,-3) = {defect}")


# -- 5 ----------------------------------------------------------------------


@pytest.mark.criterion(5, "classical limits")
def test_c5_witt():
    for n, m in itertools.product(range(-8, 9), repeat=2):
        expected = d(n + m, c=n - m) if n != m else HomLieElement.zero()
        assert at_q1(qwitt_bracket(n, m)) == expected
    report(5, True, "Witt")


@pytest.mark.criterion(5, "classical limits")
def test_c5_virasoro():
    alg = virasoro_algebra()
    for m in range(-8, 9):
        c = alg.bracket(d(m), d(-m)).coeff(CENTRAL)
        assert evaluate(c, {"q": 1}) == Fraction((m + 1) * m * (m - 1), 12)
    report(5, True, "Virasoro central charge")


@pytest.mark.criterion(5, "classical limits")
def test_c5_symmetric_family():
    p = FamilyParams("symqdiff")
    ctx = family_context(p)
    probes = [t**r for r in range(-8, 9)]
    for n, m in itertools.product(range(-5, 6), repeat=2):
        k = n - m
        sym = sympy.cancel((Q_SYM**k - Q_SYM**-k) / (Q_SYM - 1 / Q_SYM))
        expected = d(n + m, c=parse_scalar(str(sym).replace("**", "^"))) if k else HomLieElement.zero()
        c = oracle_coefficient(ctx, basis_coefficient((n,), 1), basis_coefficient((m,), 1), probes)
        assert coefficient_to_basis(c) == expected
        assert at_q1(expected) == (d(n + m, c=k) if k else HomLieElement.zero())
    report(5, True, "symmetric q-difference")


# -- 6 ----------------------------------------------------------------------


@pytest.mark.criterion(6, "q-Virasoro suite")
def test_c6_virasoro_suite():
    base = qwitt_algebra()
    cocycle = virasoro_cocycle_data()
    rep = check_cocycle_conditions(base, cocycle, 6)
    assert rep.passed, rep.summary()
    ext = build_extension(base, cocycle, 6)
    assert not ext.skew_violations(6)
    idx = [(n,) for n in range(-6, 7)] + [CENTRAL]
    assert not ext.jacobi_violations(6, itertools.product(idx, repeat=3))
    for n in range(-6, 7):
        assert ext.twist(d(n)) == d(n, c=q**n)
    assert ext.twist(HomLieElement.basis(CENTRAL)) == HomLieElement.basis(CENTRAL)
    for n in range(-6, 7):
        assert recurrence_defect(b1, n) == 0
        assert recurrence_defect(b2, n) == 0
    assert b1(1) == 0 and b2(1) != 0
    report(6, True)


# -- 7 ----------------------------------------------------------------------


@pytest.mark.criterion(7, "nontriviality")
def test_c7_virasoro_nontrivial():
    verdict = triviality_check(qwitt_algebra(), virasoro_cocycle_data(), 6)
    assert isinstance(verdict, Nontrivial)
    assert verdict.pair == (((1,), (-1,)), ((2,), (-2,)))
    report(7, True, f"contradiction {verdict.pair}")


@pytest.mark.criterion(7, "nontriviality")
def test_c7_trivial_cases():
    base = qwitt_algebra()
    zero = triviality_check(base, CocycleData(lambda i, j: 0), 6)
    assert isinstance(zero, Trivial) and all(v == 0 for v in zero.witness.values())

    def phi(j):
        return Fraction(1, j * j + 1)

    cob = CocycleData(lambda i, j: (q_number(i[0]) - q_number(j[0])) * phi(i[0] + j[0]))
    verdict = triviality_check(base, cob, 6)
    assert isinstance(verdict, Trivial)
    assert verdict.witness and all(v == phi(j) for (j,), v in verdict.witness.items())
    # the witness reproduces the cocycle on every pair of the window
    for m, n in itertools.product(range(-6, 7), repeat=2):
        br = base.bracket_on_basis((m,), (n,))
        s1 = sum((c * verdict.witness[k] for k, c in br.terms.items()), P.zero())
        assert cob.value(m, n) == s1
    report(7, True, "zero and coboundary")


# -- 8 ----------------------------------------------------------------------


@pytest.mark.criterion(8, "eigenvector search")
def test_c8_eigenvectors():
    assert integer_eigenvectors([[1, 0], [0, 1]]) == [(1, 0), (0, 1)]
    assert integer_eigenvectors([[1, 1], [0, 1]]) == [(0, 1)]
    assert integer_eigenvectors([[2, 0], [0, 2]]) == []
    scales = (P.gen("q1"), P.gen("q2"))
    for S in ([[1, 0], [0, 1]], [[1, 1], [0, 1]]):
        for G in integer_eigenvectors(S):
            ctx = family_context(FamilyParams("multivariate", S=S, G=G))
            delta = delta_of(ctx.deriv)
            expected = scales[0] ** G[0] * scales[1] ** G[1]
            assert delta.is_constant and delta.constant_value() == expected
    report(8, True)


# -- 9 ----------------------------------------------------------------------


@pytest.mark.criterion(9, "reduction consistency")
def test_c9_reductions():
    nl = FamilyParams("nonlinear", s=1, k=0, alpha=1)
    sub = FamilyParams("submodule", s=1, k=0)
    for n, m in itertools.product(range(-8, 9), repeat=2):
        assert nonlinear_bracket(n, m, nl) == qwitt_bracket(n, m)
        assert at_q1(submodule_bracket(n, m, sub)).is_zero
    report(9, True)


# -- 10 ---------------------------------------------------------------------


@pytest.mark.criterion(10, "CLI determinism and round trip")
def test_c10_cli_round_trip():
    import io

    argv = ["table", "--family", "qwitt", "--range", "-3..3", "--format", "json"]
    out = io.StringIO()
    assert run(argv, out, io.StringIO()) == 0
    data = json.loads(out.getvalue())
    ctx = family_context(FamilyParams("qwitt"))
    probes = [t**r for r in range(-8, 9)]
    seen = set()
    for e in data["entries"]:
        (n,), (m,) = e["left"], e["right"]
        seen.add((n, m))
        parsed = HomLieElement({tuple(r["index"]): parse_scalar(r["coeff"]) for r in e["result"]})
        c = oracle_coefficient(ctx, basis_coefficient((n,), 1), basis_coefficient((m,), 1), probes)
        assert parsed == coefficient_to_basis(c)
    assert seen == set(itertools.product(range(-3, 4), repeat=2))

    runs = [
        subprocess.run([sys.executable, "-m", "homwitt", *argv], capture_output=True, check=True).stdout
        for _ in range(2)
    ]
    assert runs[0] == runs[1] == out.getvalue().encode()
    report(10, True)
