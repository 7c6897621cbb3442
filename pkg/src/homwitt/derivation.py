"""Twisted (sigma, tau)-derivations of the Laurent polynomial ring.

A :class:`TwistedDerivation` represents ``Delta = prescale * (tau - sigma) / g``.
Every (sigma, tau)-derivation of ``C[t, 1/t]`` is ``a * Delta`` for the
canonical generator, which :func:`canonical_generator` computes by a GCD.
"""

import itertools

from .errors import (
    ArityMismatch,
    CompatFailed,
    EqualTwists,
    MultivariateUnsupported,
    NotDivisible,
    NotSigmaDerivation,
    Unstable,
    ZeroInput,
)
from .laurent import LaurentPoly, exact_div, gcd_up_to_unit
from .linalg import nullspace
from .scalars import as_scalar

__all__ = [
    "TwistedDerivation",
    "ModuleElement",
    "canonical_generator",
    "with_divisor",
    "apply_deriv",
    "apply_module",
    "basis_element",
    "leibniz_check",
    "delta_of",
    "coordinatize",
    "kernel_lemma_check",
    "monomial_window",
]


def monomial_window(nvars, radius, skip_zero=False):
    """Exponent tuples with every entry in ``[-radius, radius]``."""
    for e in itertools.product(range(-radius, radius + 1), repeat=nvars):
        if skip_zero and not any(e):
            continue
        yield e


def _difference_image(sigma, tau, exp):
    """(tau - sigma)(z^exp)."""
    cs, es = sigma.monomial_image(exp)
    ct, et = tau.monomial_image(exp)
    terms = {et: ct}
    if es == et:
        c = ct - cs
        terms = {et: c} if c else {}
    else:
        terms[es] = -cs
    return LaurentPoly._from_clean(terms, sigma.nvars, sigma.params)


class TwistedDerivation:
    """``Delta = prescale * (tau - sigma) / divisor``, certified on a monomial window."""

    __slots__ = ("sigma", "tau", "divisor", "prescale", "window", "_cache")

    def __init__(self, sigma, tau, divisor, prescale=1, window=8, certify=True):
        if sigma.nvars != tau.nvars or divisor.nvars != sigma.nvars:
            raise ArityMismatch("sigma, tau and divisor must share nvars")
        if sigma == tau:
            raise EqualTwists("sigma and tau coincide, so tau - sigma is zero")
        if divisor.is_zero:
            raise ZeroInput("divisor must be nonzero")
        prescale = as_scalar(prescale, sigma.params)
        if not prescale:
            raise ZeroInput("prescale must be nonzero")
        self.sigma = sigma
        self.tau = tau
        self.divisor = divisor
        self.prescale = prescale
        self.window = window
        self._cache = {}
        if certify:
            for e in monomial_window(self.nvars, window, skip_zero=True):
                self.on_monomial(e)

    @property
    def nvars(self):
        return self.sigma.nvars

    @property
    def params(self):
        return self.sigma.params

    def on_monomial(self, exp):
        hit = self._cache.get(exp)
        if hit is None:
            diff = _difference_image(self.sigma, self.tau, exp)
            try:
                hit = exact_div(diff, self.divisor).scale(self.prescale)
            except NotDivisible:
                raise NotDivisible(
                    f"divisor {self.divisor} does not divide (tau - sigma)(z^{list(exp)}) = {diff}"
                ) from None
            self._cache[exp] = hit
        return hit

    def __call__(self, f):
        return apply_deriv(self, f)

    def __repr__(self):
        return (
            f"TwistedDerivation(sigma=[{self.sigma.describe()}], tau=[{self.tau.describe()}], "
            f"divisor={self.divisor}, prescale={self.prescale})"
        )


class ModuleElement:
    """The operator ``x -> coeff * Delta(x)``."""

    __slots__ = ("coeff", "deriv")

    def __init__(self, coeff, deriv):
        self.coeff = coeff
        self.deriv = deriv

    def __call__(self, f):
        return apply_module(self, f)

    def __add__(self, other):
        return ModuleElement(self.coeff + other.coeff, self.deriv)

    def __neg__(self):
        return ModuleElement(-self.coeff, self.deriv)

    def __eq__(self, other):
        return isinstance(other, ModuleElement) and self.coeff == other.coeff and self.deriv is other.deriv

    __hash__ = None

    def __repr__(self):
        return f"ModuleElement(({self.coeff}) * Delta)"


def basis_element(deriv, exps):
    """``d_n = -z^n * Delta``."""
    exps = (exps,) if isinstance(exps, int) else tuple(exps)
    return ModuleElement(LaurentPoly.monomial(exps, -1, deriv.nvars, deriv.params), deriv)


def _sigma_tau_images(sigma, tau, radius):
    return [_difference_image(sigma, tau, (r,)) for r in range(-radius, radius + 1) if r]


def canonical_generator(sigma, tau, window=4):
    """The generator ``(tau - sigma)/g`` with g a GCD of ``(tau - sigma)(t^r)``, ``0 < |r| <= window``."""
    if sigma.nvars != 1 or tau.nvars != 1:
        raise MultivariateUnsupported("the canonical generator is computed for one variable")
    if sigma == tau:
        raise EqualTwists("sigma and tau coincide")
    g = gcd_up_to_unit(_sigma_tau_images(sigma, tau, window))
    g_next = gcd_up_to_unit(_sigma_tau_images(sigma, tau, window + 1))
    if g != g_next:
        raise Unstable(f"gcd changed from {g} to {g_next} between windows {window} and {window + 1}")
    return TwistedDerivation(sigma, tau, g, 1, window=max(window, 8))


def with_divisor(sigma, tau, g, prescale=1, window=8):
    """``prescale * (tau - sigma)/g`` after checking g divides on the window."""
    return TwistedDerivation(sigma, tau, g, prescale, window)


def apply_deriv(d, f):
    if f.nvars != d.nvars:
        raise ArityMismatch(f"derivation on {d.nvars} variables applied to nvars={f.nvars}")
    out = {}
    for e, c in f.terms.items():
        for e2, v in d.on_monomial(e).terms.items():
            v = v * c
            prev = out.get(e2)
            out[e2] = v if prev is None else prev + v
    return LaurentPoly._from_clean({e: c for e, c in out.items() if c}, f.nvars, f.params)


def apply_module(m, f):
    if m.coeff.is_zero:
        return LaurentPoly.zero(f.nvars, f.params)
    return m.coeff * apply_deriv(m.deriv, f)


def leibniz_check(d, f, g):
    """Whether ``D(fg) = D(f) tau(g) + sigma(f) D(g)``.

    ``d`` may be any callable carrying ``sigma`` and ``tau`` attributes.
    """
    return d(f * g) == d(f) * d.tau(g) + d.sigma(f) * d(g)


def delta_of(d, window=None):
    """The element ``delta = sigma(g)/g`` with ``Delta(sigma(a)) = delta * sigma(Delta(a))``."""
    if not d.tau.is_identity:
        raise NotSigmaDerivation("delta is defined for sigma-derivations (tau = id)")
    g = d.divisor
    delta = exact_div(d.sigma(g), g)
    check_delta(d, delta, d.window if window is None else window)
    return delta


def check_delta(d, delta, window):
    """Raise CompatFailed unless ``Delta(sigma(z^v)) = delta * sigma(Delta(z^v))`` on the window."""
    for e in monomial_window(d.nvars, window):
        x = LaurentPoly._from_clean({e: d.params.one()}, d.nvars, d.params)
        lhs = d(d.sigma(x))
        rhs = delta * d.sigma(d(x))
        if lhs != rhs:
            raise CompatFailed(
                f"Delta(sigma(a)) != delta*sigma(Delta(a)) at a = z^{list(e)}: {lhs} vs {rhs}"
            )


def _leibniz_values(sigma, tau, value_on_t, radius):
    """D(t^r) for |r| <= radius, expanded from D(t) by the twisted Leibniz rule."""
    t = LaurentPoly.monomial((1,), 1, 1, sigma.params)
    t_inv = LaurentPoly.monomial((-1,), 1, 1, sigma.params)
    d_inv = -(sigma(t) ** -1) * tau(t_inv) * value_on_t
    values = {0: LaurentPoly.zero(1, sigma.params), 1: value_on_t, -1: d_inv}
    power = t
    for r in range(1, radius):
        values[r + 1] = values[r] * tau(t) + sigma(power) * value_on_t
        power = power * t
    power = t_inv
    for r in range(1, radius):
        values[-(r + 1)] = values[-r] * tau(t_inv) + sigma(power) * d_inv
        power = power * t_inv
    return values


def coordinatize(sigma, tau, value_on_t, window=4):
    """The coefficient a with ``D = a * Delta`` for the derivation determined by ``D(t)``."""
    delta_gen = canonical_generator(sigma, tau)
    if value_on_t.is_zero:
        return LaurentPoly.zero(1, sigma.params)
    a = exact_div(value_on_t, delta_gen.on_monomial((1,)))
    for r, v in _leibniz_values(sigma, tau, value_on_t, window).items():
        if a * delta_gen.on_monomial((r,)) != v:
            raise NotDivisible(f"coordinate {a} fails to reproduce D(t^{r})")
    return a


def kernel_lemma_check(d, window=4):
    """Whether ``ker(tau - sigma)`` lies in ``ker Delta`` on monomials in the window."""
    monos = list(monomial_window(d.nvars, window))
    col = {e: i for i, e in enumerate(monos)}
    rows = {}
    for e in monos:
        for target, c in _difference_image(d.sigma, d.tau, e).terms.items():
            rows.setdefault(target, {})[col[e]] = c
    zero, one = d.params.zero(), d.params.one()
    for vec in nullspace(list(rows.values()), len(monos), zero, one):
        f = LaurentPoly({monos[i]: c for i, c in vec.items()}, d.nvars, d.params)
        if not d(f).is_zero:
            return False
    return True
