"""The twisted bracket on ``A * Delta`` and the identity checkers built on it.

Elements of ``A * Delta`` are represented by their coefficient ``a`` in ``A``;
since the Laurent ring has no zero divisors this is faithful.
"""

from .derivation import TwistedDerivation, check_delta, delta_of
from .errors import ArityMismatch, NotAUnit
from .homlie import HomLieElement, bilinear, linear
from .laurent import LaurentPoly, exact_div

__all__ = [
    "BracketContext",
    "bracket",
    "composition_bracket",
    "bracket_oracle_check",
    "oracle_coefficient",
    "six_term_jacobi",
    "homlie_jacobi",
    "base_change_check",
]


class BracketContext:
    """The data ``(sigma, Delta, delta)`` needed for the bracket and its Jacobi identity.

    With ``delta=None`` the twist defect is computed from the divisor
    (requires ``tau = id``).  An explicit ``delta`` is checked against
    ``Delta(sigma(a)) = delta * sigma(Delta(a))`` on a monomial window unless
    ``unchecked=True``, which exists only for negative controls.
    """

    __slots__ = ("deriv", "delta", "checked", "_monomial_brackets", "_outer", "_second_order")

    def __init__(self, deriv, delta=None, *, unchecked=False, window=None):
        if not isinstance(deriv, TwistedDerivation):
            raise TypeError("deriv must be a TwistedDerivation")
        if delta is None:
            delta = delta_of(deriv, window)
        else:
            if not isinstance(delta, LaurentPoly):
                delta = LaurentPoly.constant(delta, deriv.nvars, deriv.params)
            if not unchecked:
                check_delta(deriv, delta, deriv.window if window is None else window)
        self.deriv = deriv
        self.delta = delta
        self.checked = not unchecked
        self._monomial_brackets = {}
        self._outer = {}
        self._second_order = {}

    @property
    def sigma(self):
        return self.deriv.sigma

    @property
    def nvars(self):
        return self.deriv.nvars

    @property
    def params(self):
        return self.deriv.params

    def __repr__(self):
        return f"BracketContext({self.deriv!r}, delta={self.delta})"


def _check_arity(ctx, *polys):
    for p in polys:
        if p.nvars != ctx.nvars:
            raise ArityMismatch(f"context on {ctx.nvars} variables, element has nvars={p.nvars}")


def bracket(ctx, a, b):
    """Coefficient of ``[a*Delta, b*Delta]``, namely ``sigma(a)Delta(b) - sigma(b)Delta(a)``."""
    _check_arity(ctx, a, b)
    # bilinear over the scalars, so expand on monomials and reuse their brackets
    if len(a.terms) * len(b.terms) <= 4:
        cache = ctx._monomial_brackets
        total = LaurentPoly.zero(ctx.nvars, ctx.params)
        for ea, ca in a.terms.items():
            for eb, cb in b.terms.items():
                key = (ea, eb)
                m = cache.get(key)
                if m is None:
                    m = cache[key] = _product_formula(
                        ctx, LaurentPoly.monomial(ea, 1, ctx.nvars, ctx.params),
                        LaurentPoly.monomial(eb, 1, ctx.nvars, ctx.params),
                    )
                if m.terms:
                    total = total + m.scale(ca * cb)
        return total
    return _product_formula(ctx, a, b)


def _product_formula(ctx, a, b):
    s, d = ctx.sigma, ctx.deriv
    return s(a) * d(b) - s(b) * d(a)


def _delta_after(ctx, b, x):
    """``Delta(b * Delta(x))``, memoized per context."""
    key = (b, x)
    v = ctx._second_order.get(key)
    if v is None:
        d = ctx.deriv
        v = ctx._second_order[key] = d(b * d(x))
    return v


def composition_bracket(ctx, a, b, x):
    """``(sigma(a)*Delta)((b*Delta)(x)) - (sigma(b)*Delta)((a*Delta)(x))`` evaluated from the operators."""
    s = ctx.sigma
    return s(a) * _delta_after(ctx, b, x) - s(b) * _delta_after(ctx, a, x)


def bracket_oracle_check(ctx, a, b, probes):
    """Whether operator composition agrees with the product formula on every probe.

    By the twisted Leibniz rule the composition equals ``c * tau(Delta(x))``
    where ``c`` is the product-formula coefficient; for ``tau = id`` this is
    ``c * Delta(x)``.
    """
    c = bracket(ctx, a, b)
    tau, d = ctx.deriv.tau, ctx.deriv
    return all(composition_bracket(ctx, a, b, x) == c * tau(d(x)) for x in probes)


def oracle_coefficient(ctx, a, b, probes):
    """The coefficient c with composition ``= c * tau(Delta(x))``, read off from composition alone.

    ``c`` is divided out on the first probe where ``tau(Delta(x))`` is nonzero and
    then confirmed on every other probe; raises ValueError if they disagree.
    """
    tau, d = ctx.deriv.tau, ctx.deriv
    c = None
    for x in probes:
        base = tau(d(x))
        comp = composition_bracket(ctx, a, b, x)
        if c is None:
            if base.is_zero:
                if not comp.is_zero:
                    raise ValueError(f"composition is nonzero on {x} where Delta vanishes")
                continue
            c = exact_div(comp, base)
        elif comp != c * base:
            raise ValueError(f"composition is not a multiple of tau(Delta) on probe {x}")
    if c is None:
        raise ValueError("no probe with nonzero Delta")
    return c


def six_term_jacobi(ctx, a, b, c):
    """Coefficient of the cyclic sum of ``[sigma(x)D,[yD,zD]] + delta*[xD,[yD,zD]]``."""
    _check_arity(ctx, a, b, c)
    total = LaurentPoly.zero(ctx.nvars, ctx.params)
    for x, y, z in ((a, b, c), (b, c, a), (c, a, b)):
        inner = bracket(ctx, y, z)
        for ex, cx in x.terms.items():
            for ei, ci in inner.terms.items():
                m = _outer(ctx, ex, ei)
                if m.terms:
                    total = total + m.scale(cx * ci)
    return total


def _outer(ctx, ex, ei):
    """``[sigma(z^ex), z^ei] + delta * [z^ex, z^ei]`` as a coefficient, memoized."""
    key = (ex, ei)
    v = ctx._outer.get(key)
    if v is None:
        n, pr = ctx.nvars, ctx.params
        x = LaurentPoly.monomial(ex, 1, n, pr)
        y = LaurentPoly.monomial(ei, 1, n, pr)
        v = _product_formula(ctx, ctx.sigma(x), y)
        if not ctx.delta.is_zero:
            v = v + ctx.delta * _product_formula(ctx, x, y)
        ctx._outer[key] = v
    return v


def homlie_jacobi(bracket_fn, twist_fn, x, y, z):
    """The cyclic sum of ``[(id + twist)(x), [y, z]]`` for basis-level data.

    ``bracket_fn(i, j)`` and ``twist_fn(i)`` return HomLieElements.
    """
    total = HomLieElement.zero(x.params)
    for u, v, w in ((x, y, z), (y, z, x), (z, x, y)):
        inner = bilinear(bracket_fn, v, w)
        if inner.is_zero:
            continue
        left = u + linear(twist_fn, u)
        total = total + bilinear(bracket_fn, left, inner)
    return total


def base_change_check(ctx, u, a, b):
    """Whether ``sigma(u)[aD', bD']_{D'} = u[aD', bD']_D`` with ``D' = u*D``.

    Both sides are compared as coefficients of ``D``.
    """
    if not u.is_unit:
        raise NotAUnit(f"{u} is not a unit")
    d = ctx.deriv
    d_prime = TwistedDerivation(
        d.sigma, d.tau, exact_div(d.divisor, u), d.prescale, window=d.window, certify=False
    )
    ctx_prime = BracketContext(d_prime, ctx.delta, unchecked=True)
    lhs = d.sigma(u) * bracket(ctx_prime, a, b) * u
    rhs = u * bracket(ctx, a * u, b * u)
    return lhs == rhs
