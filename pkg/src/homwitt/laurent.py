"""Sparse multivariate Laurent polynomials with Scalar coefficients.

Variables are ``t`` when ``nvars == 1`` and ``z1 .. zn`` otherwise.  A
polynomial is an immutable map from integer exponent tuples to nonzero
Scalars.
"""

import json
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    AllZero,
    ArityMismatch,
    MultivariateUnsupported,
    NotAUnit,
    NotDivisible,
    ZeroInput,
)
from .parsing import parse_expression
from .scalars import DEFAULT_PARAMS, Scalar, as_scalar, parse_scalar

__all__ = [
    "LaurentPoly",
    "UnitNormalForm",
    "exact_div",
    "poly_divmod",
    "unit_normalize",
    "gcd_up_to_unit",
    "parse_laurent",
    "format_laurent",
    "var_names",
]


def var_names(nvars):
    return ("t",) if nvars == 1 else tuple(f"z{i}" for i in range(1, nvars + 1))


class LaurentPoly:
    __slots__ = ("nvars", "terms", "params", "_hash")

    def __init__(self, terms=None, nvars=1, params=DEFAULT_PARAMS):
        if nvars < 1:
            raise ValueError("nvars must be positive")
        clean = {}
        for exp, coeff in (terms or {}).items():
            exp = (exp,) if isinstance(exp, int) else tuple(exp)
            if len(exp) != nvars:
                raise ArityMismatch(f"exponent {exp} has length {len(exp)}, expected {nvars}")
            coeff = as_scalar(coeff, params)
            if coeff:
                clean[exp] = coeff
        self.nvars = nvars
        self.terms = clean
        self.params = params
        self._hash = None

    @classmethod
    def _from_clean(cls, terms, nvars, params):
        self = object.__new__(cls)
        self.nvars = nvars
        self.terms = terms
        self.params = params
        self._hash = None
        return self

    @classmethod
    def zero(cls, nvars=1, params=DEFAULT_PARAMS):
        return cls._from_clean({}, nvars, params)

    @classmethod
    def constant(cls, c, nvars=1, params=DEFAULT_PARAMS):
        return cls({(0,) * nvars: c}, nvars, params)

    @classmethod
    def one(cls, nvars=1, params=DEFAULT_PARAMS):
        return cls.constant(1, nvars, params)

    @classmethod
    def monomial(cls, exps, coeff=1, nvars=None, params=DEFAULT_PARAMS):
        exps = (exps,) if isinstance(exps, int) else tuple(exps)
        return cls({exps: coeff}, len(exps) if nvars is None else nvars, params)

    @classmethod
    def parse(cls, text, nvars=1, params=DEFAULT_PARAMS):
        return parse_laurent(text, nvars, params)

    # -- structure -------------------------------------------------------

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(sorted(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    @property
    def is_zero(self):
        return not self.terms

    @property
    def is_unit(self):
        return len(self.terms) == 1

    @property
    def is_constant(self):
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def coeff(self, exps):
        exps = (exps,) if isinstance(exps, int) else tuple(exps)
        return self.terms.get(exps, self.params.zero())

    def constant_value(self):
        """The coefficient of the constant monomial, requiring no other terms."""
        if not self.is_constant:
            raise ValueError(f"{self} is not constant")
        return self.coeff((0,) * self.nvars)

    def min_exponents(self):
        cols = zip(*self.terms)
        return tuple(min(c) for c in cols)

    def max_exponents(self):
        cols = zip(*self.terms)
        return tuple(max(c) for c in cols)

    def shift(self, exps):
        """Multiply by the monomial with exponent tuple ``exps``."""
        return LaurentPoly._from_clean(
            {tuple(a + b for a, b in zip(e, exps)): c for e, c in self.terms.items()},
            self.nvars,
            self.params,
        )

    def scale(self, c):
        c = as_scalar(c, self.params)
        if not c:
            return LaurentPoly.zero(self.nvars, self.params)
        return LaurentPoly._from_clean(
            {e: v * c for e, v in self.terms.items()}, self.nvars, self.params
        )

    def map_coefficients(self, fn):
        return LaurentPoly({e: fn(c) for e, c in self.terms.items()}, self.nvars, self.params)

    # -- arithmetic ------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, LaurentPoly):
            if other.nvars != self.nvars:
                raise ArityMismatch(f"nvars {self.nvars} vs {other.nvars}")
            if other.params is not self.params:
                raise ValueError("polynomials over different ParamSets")
            return other
        if isinstance(other, (int, Fraction, Scalar)):
            return LaurentPoly.constant(other, self.nvars, self.params)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if len(other.terms) > len(self.terms):
            self, other = other, self
        out = dict(self.terms)
        for e, c in other.terms.items():
            prev = out.get(e)
            if prev is None:
                out[e] = c
            else:
                s = prev + c
                if s:
                    out[e] = s
                else:
                    del out[e]
        return LaurentPoly._from_clean(out, self.nvars, self.params)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._from_clean(
            {e: -c for e, c in self.terms.items()}, self.nvars, self.params
        )

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Scalar)):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                prod = c1 * c2
                prev = out.get(e)
                out[e] = prod if prev is None else prev + prod
        return LaurentPoly._from_clean(
            {e: c for e, c in out.items() if c}, self.nvars, self.params
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        """Division by a Scalar or by a unit; use :func:`exact_div` for general divisors."""
        if isinstance(other, (int, Fraction, Scalar)):
            return self.scale(as_scalar(1, self.params) / other)
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return exact_div(self, other)

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            if not self.is_unit:
                raise NotAUnit(f"negative power of non-unit {self}")
            ((e, c),) = self.terms.items()
            return LaurentPoly._from_clean(
                {tuple(n * x for x in e): c**n}, self.nvars, self.params
            )
        result = LaurentPoly.one(self.nvars, self.params)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self.nvars == other.nvars and self.terms == other.terms
        if isinstance(other, (int, Fraction, Scalar)):
            return self == LaurentPoly.constant(other, self.nvars, self.params)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self.terms.items())))
        return self._hash

    def __str__(self):
        return format_laurent(self)

    def __repr__(self):
        return f"LaurentPoly({format_laurent(self)!r}, nvars={self.nvars})"

    # -- serialization ---------------------------------------------------

    def to_json_terms(self):
        return [
            {"exp": list(e), "num": _scalar_part(c, "num"), "den": _scalar_part(c, "den")}
            for e, c in sorted(self.terms.items(), reverse=True)
        ]

    @classmethod
    def from_json_terms(cls, items, nvars, params=DEFAULT_PARAMS):
        terms = {}
        for item in items:
            num = parse_scalar(item["num"], params)
            den = parse_scalar(item.get("den", "1"), params)
            terms[tuple(item["exp"])] = num / den
        return cls(terms, nvars, params)

    def to_json(self):
        return json.dumps(self.to_json_terms())


def _scalar_part(c, which):
    num = Scalar._raw(c.num, c.params.pone, c.params)
    den = Scalar._raw(c.den, c.params.pone, c.params)
    return str(num if which == "num" else den)


@dataclass(frozen=True)
class UnitNormalForm:
    """``original == unit_scalar * z**unit_exponents * core``."""

    core: LaurentPoly
    unit_exponents: tuple
    unit_scalar: Scalar

    def reassemble(self):
        return self.core.shift(self.unit_exponents).scale(self.unit_scalar)


def unit_normalize(a):
    """Split ``a`` into a unit times its canonical associate.

    The core has minimum exponent 0 in every variable and coefficient 1 on its
    lexicographically least term.
    """
    if a.is_zero:
        raise ZeroInput("cannot normalize the zero polynomial")
    mins = a.min_exponents()
    shifted = a.shift(tuple(-m for m in mins))
    lead = shifted.terms[min(shifted.terms)]
    core = shifted.scale(lead.inverse())
    return UnitNormalForm(core, mins, lead)


def _lex_lead(terms):
    e = max(terms)
    return e, terms[e]


def poly_divmod(a, b):
    """Division with remainder for polynomials with nonnegative exponents, lex order.

    Returns ``(quotient, remainder)`` with ``a == quotient*b + remainder`` and
    no term of the remainder divisible by the lex-leading monomial of ``b``.
    """
    if b.is_zero:
        raise ZeroDivisionError("polynomial division by zero")
    be, bc = _lex_lead(b.terms)
    binv = bc.inverse()
    rem = dict(a.terms)
    quo = {}
    out_rem = {}
    while rem:
        e, c = _lex_lead(rem)
        if all(x >= y for x, y in zip(e, be)):
            qe = tuple(x - y for x, y in zip(e, be))
            qc = c * binv
            quo[qe] = qc
            for f, d in b.terms.items():
                g = tuple(x + y for x, y in zip(f, qe))
                v = rem.get(g)
                v = -(d * qc) if v is None else v - d * qc
                if v:
                    rem[g] = v
                else:
                    rem.pop(g, None)
        else:
            out_rem[e] = c
            del rem[e]
    mk = LaurentPoly._from_clean
    return mk(quo, a.nvars, a.params), mk(out_rem, a.nvars, a.params)


def exact_div(a, b):
    """The Laurent polynomial c with ``b*c == a``; raises NotDivisible if none exists."""
    if isinstance(b, (int, Fraction, Scalar)):
        b = LaurentPoly.constant(b, a.nvars, a.params)
    if a.nvars != b.nvars:
        raise ArityMismatch(f"nvars {a.nvars} vs {b.nvars}")
    if b.is_zero:
        raise ZeroDivisionError("exact_div by the zero polynomial")
    if a.is_zero:
        return LaurentPoly.zero(a.nvars, a.params)
    if b.is_unit:
        ((be, bc),) = b.terms.items()
        inv = bc.inverse()
        return LaurentPoly._from_clean(
            {tuple(x - y for x, y in zip(e, be)): c * inv for e, c in a.terms.items()},
            a.nvars,
            a.params,
        )
    # Monomials are units: strip them, divide as ordinary polynomials, restore.
    amin, bmin = a.min_exponents(), b.min_exponents()
    quo, rem = poly_divmod(a.shift(tuple(-m for m in amin)), b.shift(tuple(-m for m in bmin)))
    if not rem.is_zero:
        raise NotDivisible(f"{b} does not divide {a}")
    return quo.shift(tuple(x - y for x, y in zip(amin, bmin)))


def _poly_gcd(a, b):
    """Monic Euclidean GCD of two univariate polynomials with nonnegative exponents."""
    while not b.is_zero:
        _, r = poly_divmod(a, b)
        if not r.is_zero:
            r = r.scale(_lex_lead(r.terms)[1].inverse())
        a, b = b, r
    return a


def gcd_up_to_unit(items):
    """Canonical associate of a GCD of univariate Laurent polynomials."""
    items = list(items)
    if not items:
        raise AllZero("gcd of an empty collection")
    if any(p.nvars != 1 for p in items):
        raise MultivariateUnsupported("Laurent GCD is implemented for one variable only")
    nonzero = [p for p in items if not p.is_zero]
    if not nonzero:
        raise AllZero("all inputs are zero")
    g = None
    for p in nonzero:
        core = unit_normalize(p).core
        g = core if g is None else _poly_gcd(g, core)
        if len(g) == 1:
            break
    g = unit_normalize(g).core
    for p in nonzero:
        exact_div(p, g)
    return g


def _format_monomial(exp, names):
    parts = []
    for name, e in zip(names, exp):
        if e == 1:
            parts.append(name)
        elif e:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def _needs_parens(s):
    return "/" in s or "+" in s or "-" in s[1:]


def format_laurent(a):
    """Deterministic text form; parse_laurent(format_laurent(a)) == a."""
    if a.is_zero:
        return "0"
    names = var_names(a.nvars)
    out = []
    for exp, coeff in sorted(a.terms.items(), reverse=True):
        mono = _format_monomial(exp, names)
        c = str(coeff)
        if _needs_parens(c):
            c = f"({c})"
        if not mono:
            term = c
        elif c == "1":
            term = mono
        elif c == "-1":
            term = "-" + mono
        else:
            term = f"{c}*{mono}"
        if out:
            out.append(" - " + term[1:] if term.startswith("-") else " + " + term)
        else:
            out.append(term)
    return "".join(out)


def parse_laurent(text, nvars=1, params=DEFAULT_PARAMS):
    """Parse a Laurent polynomial in ``t`` (nvars=1) or ``z1..zn``."""
    names = var_names(nvars)

    def resolve(name):
        if name in names:
            exp = [0] * nvars
            exp[names.index(name)] = 1
            return LaurentPoly({tuple(exp): 1}, nvars, params)
        if name in params:
            return LaurentPoly.constant(params.gen(name), nvars, params)
        if name == "t" or (name[0] == "z" and name[1:].isdigit()):
            raise ArityMismatch(f"variable {name!r} not available with nvars={nvars}")
        return None

    return parse_expression(
        text, lambda n: LaurentPoly.constant(n, nvars, params), resolve, exact_div
    )
