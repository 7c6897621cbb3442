"""Closed-form structure constants for concrete deformation families.

Each family comes with a :func:`family_context` building the underlying
sigma-derivation, so every closed form can be compared against the bracket
computed from operators.  Basis vectors are ``d_n = -z^n * Delta``.
"""

from dataclasses import dataclass
from functools import lru_cache

from .bracket import BracketContext, bracket
from .derivation import TwistedDerivation
from .errors import ArityMismatch, NotAUnit
from .homlie import HomLieElement
from .laurent import LaurentPoly
from .linalg import integer_kernel
from .scalars import DEFAULT_PARAMS, Scalar, as_scalar, q_number, sym_q_number
from .twist import MonomialEndo

__all__ = [
    "KINDS",
    "FamilyParams",
    "qwitt_bracket",
    "nonlinear_bracket",
    "submodule_bracket",
    "multivariate_bracket",
    "symqdiff_bracket",
    "family_bracket",
    "integer_eigenvectors",
    "family_context",
    "family_twist",
    "coefficient_to_basis",
    "basis_coefficient",
    "context_bracket",
]

KINDS = ("qwitt", "nonlinear", "submodule", "multivariate", "symqdiff")


def _matrix(rows):
    return tuple(tuple(int(x) for x in r) for r in rows)


@dataclass(frozen=True)
class FamilyParams:
    """Parameters of one family.  Unused fields are ignored by the other kinds."""

    kind: str
    s: int = 1
    k: int = 0
    alpha: Scalar = None
    Q: Scalar = None
    S: tuple = None
    G: tuple = None
    scales: tuple = None
    params: object = DEFAULT_PARAMS

    def __post_init__(self):
        kind = self.kind.lower()
        if kind not in KINDS:
            raise ValueError(f"unknown family {self.kind!r}; expected one of {', '.join(KINDS)}")
        object.__setattr__(self, "kind", kind)
        p = self.params
        object.__setattr__(self, "alpha", as_scalar(1 if self.alpha is None else self.alpha, p))
        object.__setattr__(self, "Q", as_scalar(1 if self.Q is None else self.Q, p))
        if not self.alpha or not self.Q:
            raise ValueError("alpha and Q must be nonzero")
        if kind == "multivariate":
            if self.S is None or self.G is None:
                raise ValueError("the multivariate family needs S and G")
            S = _matrix(self.S)
            n = len(S)
            if any(len(r) != n for r in S) or len(self.G) != n:
                raise ArityMismatch("S must be square and G must match its size")
            object.__setattr__(self, "S", S)
            object.__setattr__(self, "G", tuple(int(g) for g in self.G))
            scales = self.scales or tuple(f"q{i + 1}" for i in range(n))
            if len(scales) != n:
                raise ArityMismatch("one scale per variable is required")
            scales = tuple(as_scalar(c, p) for c in scales)
            if any(not c for c in scales):
                raise NotAUnit("scales must be nonzero")
            object.__setattr__(self, "scales", scales)

    @property
    def nvars(self):
        return len(self.S) if self.kind == "multivariate" else 1

    def describe(self):
        """JSON-friendly parameter summary."""
        out = {"kind": self.kind}
        if self.kind in ("nonlinear", "submodule"):
            out.update(s=self.s, k=self.k, alpha=str(self.alpha))
        if self.kind == "multivariate":
            out.update(
                S=[list(r) for r in self.S],
                G=list(self.G),
                Q=str(self.Q),
                scales=[str(c) for c in self.scales],
            )
        return out


def _d(idx, coeff, params):
    return HomLieElement.basis(idx, coeff, params)


def qwitt_bracket(n, m, params=DEFAULT_PARAMS):
    """``({n} - {m}) d_{n+m}``."""
    return _d(n + m, q_number(n, params) - q_number(m, params), params)


def symqdiff_bracket(n, m, params=DEFAULT_PARAMS):
    """``[n - m] d_{n+m}`` with the symmetric q-number."""
    return _d(n + m, sym_q_number(n - m, params), params)


def _sign(x):
    return (x > 0) - (x < 0)


def _nonlinear_closed(n, m, s, k, alpha, params):
    q = params.gen("q")
    terms = []
    if n >= 0 and m >= 0:
        sg = _sign(n - m)
        for l in range(min(n, m), max(n, m)):
            terms.append(((n + m - 1) * s - (s - 1) * l - (k - 1), sg * q ** (n + m - 1 - l)))
    elif n >= 0 > m:
        for l in range(-m):
            terms.append(((m + l) * (s - 1) + n * s + m - k, q ** (n + m + l)))
        for l in range(n):
            terms.append(((s - 1) * l + n + m * s - k, q ** (m + l)))
    elif m >= 0 > n:
        # mirror image of the previous case; skew-symmetry fixes the sign
        return -_nonlinear_closed(m, n, s, k, alpha, params)
    else:
        sg = _sign(n - m)
        for l in range(min(-n, -m), max(-n, -m)):
            terms.append(((m + n) * s + (s - 1) * l - k, sg * q ** (n + m + l)))
    out = HomLieElement.zero(params)
    for idx, c in terms:
        out = out + _d(idx, alpha * c, params)
    return out


def nonlinear_case2prime_as_printed(n, m, s, k, alpha, params=DEFAULT_PARAMS):
    """The n < 0 <= m sum exactly as usually displayed, kept to document its sign."""
    q = params.gen("q")
    out = HomLieElement.zero(params)
    for l in range(m):
        out = out + _d((s - 1) * l + m + n * s - k, alpha * q ** (n + l), params)
    for l in range(-n):
        out = out + _d((n + l) * (s - 1) + n + m * s - k, alpha * q ** (m + n + l), params)
    return out


def nonlinear_bracket(n, m, p):
    """Structure constants for ``sigma(t) = q t^s`` with ``D = alpha t^{1-k} (id - sigma)/(t - q t^s)``.

    The four sign cases use closed geometric sums for ``s >= 1``; for ``s <= 0``
    the bracket is computed from the operators instead.
    """
    if p.kind != "nonlinear":
        raise ValueError("nonlinear_bracket needs kind='nonlinear'")
    if p.s <= 0:
        return context_bracket(family_context(p), (n,), (m,))
    return _nonlinear_closed(n, m, p.s, p.k, p.alpha, p.params)


def submodule_bracket(n, m, p):
    """``alpha q^m d_{ms+n-k} - alpha q^n d_{ns+m-k}``."""
    if p.kind != "submodule":
        raise ValueError("submodule_bracket needs kind='submodule'")
    q, a, s, k = p.params.gen("q"), p.alpha, p.s, p.k
    return _d(m * s + n - k, a * q**m, p.params) - _d(n * s + m - k, a * q**n, p.params)


def _alpha_map(S, idx):
    n = len(S)
    return tuple(sum(S[i][r] * idx[i] for i in range(n)) for r in range(n))


def _qpow(scales, idx, params):
    out = params.one()
    for c, e in zip(scales, idx):
        if e:
            out = out * c**e
    return out


def multivariate_bracket(k_idx, l_idx, p):
    """``Q q^l d_{alpha(l)+k-G} - Q q^k d_{alpha(k)+l-G}`` with ``alpha_r(l) = sum_i S_ir l_i``."""
    if p.kind != "multivariate":
        raise ValueError("multivariate_bracket needs kind='multivariate'")
    k_idx, l_idx = tuple(k_idx), tuple(l_idx)
    if len(k_idx) != p.nvars or len(l_idx) != p.nvars:
        raise ArityMismatch(f"indices must have length {p.nvars}")
    G = p.G
    first = tuple(a + b - g for a, b, g in zip(_alpha_map(p.S, l_idx), k_idx, G))
    second = tuple(a + b - g for a, b, g in zip(_alpha_map(p.S, k_idx), l_idx, G))
    pr = p.params
    return _d(first, p.Q * _qpow(p.scales, l_idx, pr), pr) - _d(
        second, p.Q * _qpow(p.scales, k_idx, pr), pr
    )


def family_bracket(p, left, right):
    """Dispatch to the closed form of ``p.kind``; indices are tuples."""
    left, right = tuple(left), tuple(right)
    if p.kind == "multivariate":
        return multivariate_bracket(left, right, p)
    (n,), (m,) = left, right
    if p.kind == "qwitt":
        return qwitt_bracket(n, m, p.params)
    if p.kind == "symqdiff":
        return symqdiff_bracket(n, m, p.params)
    if p.kind == "nonlinear":
        return nonlinear_bracket(n, m, p)
    return submodule_bracket(n, m, p)


def integer_eigenvectors(S):
    """Lattice basis of integer G with ``S^T G = G`` (Hermite normal form, primitive rows)."""
    S = _matrix(S)
    n = len(S)
    m = [[S[i][r] - (1 if i == r else 0) for i in range(n)] for r in range(n)]
    return integer_kernel(m)


@lru_cache(maxsize=None)
def family_context(p):
    """BracketContext carrying the exact sigma, Delta and delta of the family."""
    pr = p.params
    q = pr.gen("q")
    if p.kind in ("qwitt", "symqdiff"):
        sigma = MonomialEndo.univariate(q, 1, pr)
        if p.kind == "qwitt":
            d = TwistedDerivation(sigma, MonomialEndo.identity(1, pr), LaurentPoly.constant(1 - q, 1, pr))
            return BracketContext(d)
        d = TwistedDerivation(sigma, sigma.inverse(), LaurentPoly.constant(q**-1 - q, 1, pr))
        # Delta commutes with sigma, so delta = 1 (checked on the window)
        return BracketContext(d, 1)
    identity = MonomialEndo.identity(p.nvars, pr)
    if p.kind == "nonlinear":
        sigma = MonomialEndo.univariate(q, p.s, pr)
        g = LaurentPoly({(p.k,): 1, (p.k - 1 + p.s,): -q}, 1, pr).scale(p.alpha.inverse())
        return BracketContext(TwistedDerivation(sigma, identity, g))
    if p.kind == "submodule":
        sigma = MonomialEndo.univariate(q, p.s, pr)
        g = LaurentPoly.monomial((p.k,), 1, 1, pr)
        return BracketContext(TwistedDerivation(sigma, identity, g, p.alpha))
    sigma = MonomialEndo(p.scales, p.S, pr)
    g = LaurentPoly.monomial(p.G, 1, p.nvars, pr)
    return BracketContext(TwistedDerivation(sigma, identity, g, p.Q))


def coefficient_to_basis(c):
    """Write ``c * Delta`` in the basis ``d_j = -z^j * Delta``."""
    return HomLieElement({e: -v for e, v in c.terms.items()}, c.params)


def basis_coefficient(idx, nvars, params=DEFAULT_PARAMS):
    """The coefficient ``-z^idx`` of ``d_idx``."""
    return LaurentPoly.monomial(tuple(idx), -1, nvars, params)


def context_bracket(ctx, left, right):
    """``[d_left, d_right]`` from the product formula, in the basis."""
    a = basis_coefficient(left, ctx.nvars, ctx.params)
    b = basis_coefficient(right, ctx.nvars, ctx.params)
    return coefficient_to_basis(bracket(ctx, a, b))


def family_twist(ctx):
    """The hom-Lie twist ``d_k -> sigma(-z^k)/delta`` in the basis; needs constant delta."""
    if not ctx.delta.is_constant or ctx.delta.is_zero:
        raise ValueError(f"the twist needs a nonzero constant delta, got {ctx.delta}")
    inv = ctx.delta.constant_value().inverse()

    def twist(idx):
        c = ctx.sigma(basis_coefficient(idx, ctx.nvars, ctx.params))
        return coefficient_to_basis(c.scale(inv))

    return twist
