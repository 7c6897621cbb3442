"""One-dimensional central extensions of hom-Lie algebras and the q-deformed Virasoro algebra.

Algebras here are abstract: a basis indexed by integer tuples, a bracket on
basis pairs and a twist acting diagonally.  An extension adjoins the central
basis vector :data:`~homwitt.homlie.CENTRAL` with
``[x, y]^ = [x, y] + g(x, y) c``.
"""

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from .bracket import homlie_jacobi
from .errors import CocycleInvalid, UnderdeterminedWindow
from .families import qwitt_bracket
from .homlie import CENTRAL, HomLieElement, bilinear, linear
from .scalars import DEFAULT_PARAMS, Scalar, as_scalar, q_number

__all__ = [
    "AbstractHomLie",
    "CocycleData",
    "CocycleReport",
    "ExtendedAlgebra",
    "Trivial",
    "Nontrivial",
    "window_indices",
    "qwitt_algebra",
    "check_cocycle_conditions",
    "build_extension",
    "virasoro_cocycle",
    "virasoro_cocycle_data",
    "virasoro_algebra",
    "virasoro_bracket",
    "recurrence_defect",
    "b1",
    "b2",
    "triviality_check",
]


def _idx(i):
    if i is CENTRAL:
        return i
    return (i,) if isinstance(i, int) else tuple(i)


def window_indices(arity, n):
    """Basis indices with every entry in ``[-n, n]``."""
    return list(itertools.product(range(-n, n + 1), repeat=arity))


@dataclass(frozen=True)
class AbstractHomLie:
    """A hom-Lie algebra given on a basis, with diagonal twist ``d_i -> eigenvalue(i) d_i``."""

    name: str
    bracket_on_basis: object
    twist_eigenvalue: object
    arity: int = 1
    params: object = DEFAULT_PARAMS

    def bracket(self, x, y):
        return bilinear(self.bracket_on_basis, x, y)

    def twist_on_basis(self, i):
        return HomLieElement.basis(i, self.twist_eigenvalue(i), self.params)

    def twist(self, x):
        return linear(self.twist_on_basis, x)

    def basis(self, i):
        return HomLieElement.basis(i, 1, self.params)

    def skew_violations(self, window):
        idx = window_indices(self.arity, window)
        return [
            (i, j)
            for i in idx
            for j in idx
            if self.bracket_on_basis(i, j) != -self.bracket_on_basis(j, i)
        ]


def qwitt_algebra(params=DEFAULT_PARAMS):
    """``[d_n, d_m] = ({n} - {m}) d_{n+m}`` with twist ``d_n -> q^n d_n``."""
    q = params.gen("q")
    return AbstractHomLie(
        "q-Witt",
        lambda i, j: qwitt_bracket(i[0], j[0], params),
        lambda i: q ** i[0],
        1,
        params,
    )


def _as_map(f):
    if callable(f):
        return f
    return lambda a: a * f


@dataclass(frozen=True)
class CocycleData:
    """A candidate cocycle ``g`` with the linear map ``f: L + C -> C``.

    ``f(x, a) = f_base(x) + f_center(a)``; ``f_center`` (the twist of the
    center) is a Scalar multiplier or a callable, ``f_base`` maps basis
    indices to Scalars and defaults to zero.
    """

    g: object
    f_center: object = 1
    f_base: object = None

    def value(self, i, j):
        return self.g(_idx(i), _idx(j))

    def center_map(self, a):
        return _as_map(self.f_center)(a)

    def base_value(self, i, params):
        if self.f_base is None:
            return params.zero()
        return as_scalar(self.f_base(_idx(i)), params)

    def on_elements(self, x, y):
        """g extended bilinearly to HomLieElements without central part."""
        total = x.params.zero()
        for i, a in x.terms.items():
            for j, b in y.terms.items():
                if i is CENTRAL or j is CENTRAL:
                    continue
                v = self.value(i, j)
                if v:
                    total = total + a * b * v
        return total

    def f(self, x, a, params):
        """``f(x, a)`` for a base element x and central coordinate a."""
        total = self.center_map(as_scalar(a, params))
        for i, c in x.terms.items():
            if i is not CENTRAL:
                total = total + c * self.base_value(i, params)
        return total


@dataclass
class CocycleReport:
    passed: bool = True
    violations: list = field(default_factory=list)
    checked: dict = field(default_factory=dict)

    def add(self, condition, where, detail):
        self.passed = False
        self.violations.append((condition, where, detail))

    def summary(self):
        if self.passed:
            parts = ", ".join(f"{k}: {v}" for k, v in self.checked.items())
            return f"all cocycle conditions hold ({parts})"
        cond, where, detail = self.violations[0]
        return f"{len(self.violations)} violations; first: {cond} at {where}: {detail}"


def check_cocycle_conditions(base, c, window=6):
    """Check alternation, ``f(0,a) = twist(a)``, compatibility with the twist and the cyclic condition."""
    pr = base.params
    rep = CocycleReport()
    idx = window_indices(base.arity, window)
    one = pr.one()

    n = 0
    for i in idx:
        for j in idx:
            n += 1
            gij, gji = c.value(i, j), c.value(j, i)
            if gij != -gji:
                rep.add("alternating", (i, j), f"g = {gij}, g(swapped) = {gji}")
    rep.checked["alternating"] = n

    # the central twist is f restricted to the center
    zero = HomLieElement.zero(pr)
    if c.f(zero, one, pr) != c.center_map(one):
        rep.add("f(0,a)", (), "f on the center differs from its twist")
    rep.checked["f(0,a)"] = 1

    n = 0
    for i in idx:
        for j in idx:
            n += 1
            lhs = c.on_elements(base.twist_on_basis(i), base.twist_on_basis(j))
            rhs = c.f(base.bracket_on_basis(i, j), c.value(i, j), pr)
            if lhs != rhs:
                rep.add("twist compatibility", (i, j), f"{lhs} != {rhs}")
    rep.checked["twist compatibility"] = n

    n = 0
    for x, y, z in itertools.product(idx, repeat=3):
        n += 1
        total = pr.zero()
        for u, v, w in ((x, y, z), (y, z, x), (z, x, y)):
            inner = base.bracket_on_basis(v, w)
            if inner:
                left = base.basis(u) + base.twist_on_basis(u)
                total = total + c.on_elements(left, inner)
        if total:
            rep.add("cyclic", (x, y, z), f"defect {total}")
    rep.checked["cyclic"] = n
    return rep


class ExtendedAlgebra:
    """``L + C c`` with bracket ``([x,y], g(x,y))`` and twist ``(twist x, f(x,a))``."""

    def __init__(self, base, cocycle):
        self.base = base
        self.cocycle = cocycle
        self.params = base.params

    def bracket_on_basis(self, i, j):
        if i is CENTRAL or j is CENTRAL:
            return HomLieElement.zero(self.params)
        out = self.base.bracket_on_basis(i, j)
        gij = self.cocycle.value(i, j)
        if gij:
            out = out + HomLieElement.basis(CENTRAL, gij, self.params)
        return out

    def twist_on_basis(self, i):
        pr = self.params
        if i is CENTRAL:
            return HomLieElement.basis(CENTRAL, self.cocycle.center_map(pr.one()), pr)
        out = self.base.twist_on_basis(i)
        fb = self.cocycle.base_value(i, pr)
        if fb:
            out = out + HomLieElement.basis(CENTRAL, fb, pr)
        return out

    def bracket(self, x, y):
        return bilinear(self.bracket_on_basis, x, y)

    def twist(self, x):
        return linear(self.twist_on_basis, x)

    def basis(self, i):
        return HomLieElement.basis(i, 1, self.params)

    def indices(self, window):
        return window_indices(self.base.arity, window) + [CENTRAL]

    def jacobi_defect(self, x, y, z):
        return homlie_jacobi(self.bracket_on_basis, self.twist_on_basis, x, y, z)

    def jacobi_violations(self, window, triples=None):
        idx = self.indices(window)
        if triples is None:
            triples = itertools.combinations(idx, 3)
        bad = []
        for i, j, k in triples:
            d = self.jacobi_defect(self.basis(i), self.basis(j), self.basis(k))
            if d:
                bad.append(((i, j, k), d))
        return bad

    def skew_violations(self, window):
        idx = self.indices(window)
        return [
            (i, j)
            for i in idx
            for j in idx
            if self.bracket_on_basis(i, j) != -self.bracket_on_basis(j, i)
        ]

    def homomorphism_violations(self, window):
        """Pairs where ``twist[x, y] != [twist x, twist y]``."""
        idx = self.indices(window)
        bad = []
        for i in idx:
            for j in idx:
                x, y = self.basis(i), self.basis(j)
                if self.twist(self.bracket(x, y)) != self.bracket(self.twist(x), self.twist(y)):
                    bad.append((i, j))
        return bad


def build_extension(base, cocycle, window=6):
    """The central extension, after certifying the cocycle and the result on the window."""
    rep = check_cocycle_conditions(base, cocycle, window)
    if not rep.passed:
        raise CocycleInvalid(rep.summary())
    ext = ExtendedAlgebra(base, cocycle)
    bad = ext.jacobi_violations(window)
    if bad:
        raise CocycleInvalid(f"extended algebra violates the hom-Lie Jacobi identity at {bad[0][0]}")
    return ext


def virasoro_cocycle(m, n, scale=1, params=DEFAULT_PARAMS):
    """``delta_{m+n,0} q^{-m}/(1+q^m) {m-1}{m}{m+1}``, times ``scale``."""
    m = m[0] if isinstance(m, tuple) else m
    n = n[0] if isinstance(n, tuple) else n
    if m + n != 0:
        return params.zero()
    q = params.gen("q")
    body = q_number(m - 1, params) * q_number(m, params) * q_number(m + 1, params)
    if not body:
        return params.zero()
    return body * q ** (-m) / (1 + q**m) * as_scalar(scale, params)


def virasoro_cocycle_data(scale=1, params=DEFAULT_PARAMS):
    return CocycleData(lambda i, j: virasoro_cocycle(i, j, scale, params))


def virasoro_algebra(params=DEFAULT_PARAMS):
    """q-Witt extended by the cocycle scaled by 1/6 (no certification)."""
    return ExtendedAlgebra(qwitt_algebra(params), virasoro_cocycle_data(Fraction(1, 6), params))


def virasoro_bracket(x, y, params=DEFAULT_PARAMS):
    """``[L_m, L_n] = ({m}-{n}) L_{m+n} + delta_{m+n,0} q^{-m}/(6(1+q^m)) {m-1}{m}{m+1} c``."""
    return virasoro_algebra(params).bracket(x, y)


def recurrence_defect(b, n, params=DEFAULT_PARAMS):
    """LHS - RHS of ``q(1+q^{n+1}){n-1} b(n+1) = (1+q^n){n+2} b(n) - (1+q){2n+1} b(1)``."""
    q = params.gen("q")
    qn = lambda k: q_number(k, params)  # noqa: E731
    lhs = q * (1 + q ** (n + 1)) * qn(n - 1) * b(n + 1)
    rhs = (1 + q**n) * qn(n + 2) * b(n) - (1 + q) * qn(2 * n + 1) * b(1)
    return lhs - rhs


def b1(m, params=DEFAULT_PARAMS):
    """``q^{-m} {m-1}{m}{m+1} / (1+q^m)``."""
    return virasoro_cocycle(m, -m, 1, params)


def b2(m, params=DEFAULT_PARAMS):
    """``q^{-m} {2m}``."""
    q = params.gen("q")
    return q ** (-m) * q_number(2 * m, params)


@dataclass(frozen=True)
class Trivial:
    """The cocycle is ``s1([x, y])`` on the window; ``witness`` maps indices to ``s1(d_i)``."""

    witness: dict

    is_trivial = True


@dataclass(frozen=True)
class Nontrivial:
    """``first`` fixes ``s1(d_index)`` to ``first_value``; ``conflict`` forces ``conflict_value``."""

    first: tuple
    conflict: tuple
    index: object
    first_value: Scalar
    conflict_value: Scalar

    is_trivial = False

    @property
    def pair(self):
        return (self.first, self.conflict)


def _pair_order(window, arity):
    if arity != 1:
        pairs = [(i, j) for i in window_indices(arity, window) for j in window_indices(arity, window) if i > j]
        return sorted(pairs, key=lambda p: (max(max(map(abs, p[0])), max(map(abs, p[1]))), tuple(-x for x in p[0])))
    pairs = [((m,), (n,)) for m in range(-window, window + 1) for n in range(-window, m)]
    return sorted(pairs, key=lambda p: (max(abs(p[0][0]), abs(p[1][0])), -p[0][0], -p[1][0]))


def triviality_check(base, cocycle, window=6):
    """Solve ``g(d_m, d_n) = s1([d_m, d_n])`` pair by pair, or exhibit a contradiction.

    Pairs are visited by increasing ``max(|m|, |n|)``.  Every bracket must be a
    single basis vector (or zero); otherwise UnderdeterminedWindow is raised.
    """
    pr = base.params
    zero = pr.zero()
    fixed = {}  # index -> (pair, value)
    for m, n in _pair_order(window, base.arity):
        g = cocycle.value(m, n)
        br = base.bracket_on_basis(m, n)
        if br.is_zero:
            if g:
                return Nontrivial((m, n), (m, n), None, zero, g)
            continue
        if len(br.terms) != 1:
            raise UnderdeterminedWindow(
                f"[d_{list(m)}, d_{list(n)}] = {br} has several basis terms; s1 is not determined pair by pair"
            )
        ((k, coeff),) = br.terms.items()
        value = g / coeff
        if k in fixed:
            pair, prev = fixed[k]
            if prev != value:
                return Nontrivial(pair, (m, n), k, prev, value)
        else:
            fixed[k] = ((m, n), value)
    return Trivial({k: v for k, (_, v) in sorted(fixed.items())})
