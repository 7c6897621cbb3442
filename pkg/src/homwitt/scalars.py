"""Exact rational functions in a fixed set of formal parameters.

A :class:`Scalar` is a reduced fraction of two integer polynomials in the
parameters of a :class:`ParamSet`.  Numerator and denominator are FLINT
``fmpz_mpoly`` objects with graded-lex term order; the canonical
form (coprime, joint integer content 1, positive leading denominator
coefficient) makes ``==`` a plain structural comparison.

>>> q = DEFAULT_PARAMS.gen("q")
>>> (q - 1) / (q**2 - 1)
Scalar('1/(q+1)')
>>> q_number(3)
Scalar('q^2+q+1')
"""

from fractions import Fraction
from functools import lru_cache
from math import gcd

import flint

from .errors import DivisionByZero, ParseError, PoleAtPoint
from .parsing import parse_expression

__all__ = [
    "ParamSet",
    "DEFAULT_PARAMS",
    "Scalar",
    "as_scalar",
    "q_number",
    "sym_q_number",
    "evaluate",
    "subs",
    "parse_scalar",
]


class ParamSet:
    """Ordered, immutable collection of parameter names.

    Instances are interned: two ParamSets with the same names are the same
    object, so scalars built from either interoperate.
    """

    _cache = {}

    def __new__(cls, names):
        names = tuple(names)
        cached = cls._cache.get(names)
        if cached is not None:
            return cached
        if not names:
            raise ValueError("a ParamSet needs at least one name")
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate parameter names in {names}")
        for name in names:
            if not name.isidentifier() or name in ("t",) or _is_laurent_var(name):
                raise ValueError(f"invalid parameter name {name!r}")
        self = super().__new__(cls)
        self.names = names
        self.ctx = flint.fmpz_mpoly_ctx.get(names, "deglex")
        self.pzero = self.ctx.from_dict({})
        self.pone = self.ctx.constant(1)
        self.pgens = self.ctx.gens()
        self._index = {n: i for i, n in enumerate(names)}
        cls._cache[names] = self
        return self

    def __repr__(self):
        return f"ParamSet({self.names!r})"

    def __reduce__(self):
        return (ParamSet, (self.names,))

    def __contains__(self, name):
        return name in self._index

    def index(self, name):
        return self._index[name]

    def gen(self, name):
        """The parameter ``name`` as a Scalar."""
        if name not in self._index:
            raise KeyError(f"parameter {name!r} not in {self.names}")
        return Scalar._raw(self.pgens[self._index[name]], self.pone, self)

    def zero(self):
        return Scalar._raw(self.pzero, self.pone, self)

    def one(self):
        return Scalar._raw(self.pone, self.pone, self)

    def poly(self, value):
        """Integer constant as a backing polynomial."""
        return self.ctx.constant(value)


def _is_laurent_var(name):
    return len(name) > 1 and name[0] == "z" and name[1:].isdigit()


DEFAULT_PARAMS = ParamSet(("q", "alpha", "Q", "q1", "q2", "q3", "q4"))


def _canonical(num, den):
    """Reduce num/den; returns a coprime pair with positive leading denominator coefficient."""
    if den.is_zero():
        raise DivisionByZero("division by the zero Scalar")
    if num.is_zero():
        return num, den.context().constant(1)
    if den.is_constant():
        dc = int(den.leading_coefficient())
        g = gcd(int(num.content()), dc)
        if dc < 0:
            g = -g
        if g == 1:
            return num, den
        return num / g, den / g
    g = num.gcd(den)
    if not g.is_one():
        num, den = num / g, den / g
    c = gcd(int(num.content()), int(den.content()))
    if den.leading_coefficient() < 0:
        c = -c
    if c != 1:
        num, den = num / c, den / c
    return num, den


class Scalar:
    """Element of the field of rational functions over a ParamSet."""

    __slots__ = ("num", "den", "params")

    def __init__(self, value=0, params=DEFAULT_PARAMS):
        s = as_scalar(value, params)
        self.num, self.den, self.params = s.num, s.den, s.params

    @classmethod
    def _raw(cls, num, den, params):
        self = object.__new__(cls)
        self.num = num
        self.den = den
        self.params = params
        return self

    @classmethod
    def fraction(cls, num, den, params=DEFAULT_PARAMS):
        """Build from two ring elements, normalizing."""
        n, d = _canonical(num, den)
        return cls._raw(n, d, params)

    def _coerce(self, other):
        if isinstance(other, Scalar):
            if other.params is not self.params:
                raise ValueError("scalars over different ParamSets")
            return other
        if isinstance(other, (int, Fraction)):
            return as_scalar(other, self.params)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not other.num:
            return self
        if not self.num:
            return other
        if self.den == other.den:
            if self.den.is_one():
                return Scalar._raw(self.num + other.num, self.den, self.params)
            return Scalar.fraction(self.num + other.num, self.den, self.params)
        return Scalar.fraction(
            self.num * other.den + other.num * self.den, self.den * other.den, self.params
        )

    __radd__ = __add__

    def __neg__(self):
        return Scalar._raw(-self.num, self.den, self.params)

    def __pos__(self):
        return self

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
        if type(other) is not Scalar:
            other = self._coerce(other)
            if other is NotImplemented:
                return NotImplemented
        elif other.params is not self.params:
            raise ValueError("scalars over different ParamSets")
        sn, on = self.num, other.num
        if not sn or not on:
            return self.params.zero()
        sd, od = self.den, other.den
        if sd.is_one() and od.is_one():
            return Scalar._raw(sn * on, sd, self.params)
        # both operands are reduced, so cancelling across is enough
        g = sn.gcd(od)
        if not g.is_one():
            sn, od = sn / g, od / g
        g = on.gcd(sd)
        if not g.is_one():
            on, sd = on / g, sd / g
        num, den = sn * on, sd * od
        if den.leading_coefficient() < 0:
            num, den = -num, -den
        return Scalar._raw(num, den, self.params)

    __rmul__ = __mul__

    def inverse(self):
        if not self.num:
            raise DivisionByZero("division by the zero Scalar")
        num, den = self.den, self.num
        if den.leading_coefficient() < 0:
            num, den = -num, -den
        return Scalar._raw(num, den, self.params)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not other.num:
            raise DivisionByZero("division by the zero Scalar")
        return Scalar.fraction(self.num * other.den, self.den * other.num, self.params)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        return Scalar._raw(self.num**n, self.den**n, self.params)

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.params is other.params and self.num == other.num and self.den == other.den
        if isinstance(other, (int, Fraction)):
            return self == as_scalar(other, self.params)
        return NotImplemented

    def __hash__(self):
        if self.is_constant:
            return hash(self.to_fraction())
        return hash((tuple(self.num.terms()), tuple(self.den.terms())))

    def __bool__(self):
        return bool(self.num)

    @property
    def is_zero(self):
        return not self.num

    @property
    def is_constant(self):
        return self.num.is_constant() and self.den.is_constant()

    def to_fraction(self):
        """The value as a Fraction; raises ValueError when parameters occur."""
        if not self.is_constant:
            raise ValueError(f"{self} is not a rational constant")
        n = int(self.num.leading_coefficient()) if self.num else 0
        return Fraction(n, int(self.den.leading_coefficient()))

    def free_params(self):
        used = set()
        for poly in (self.num, self.den):
            for e in poly.monoms():
                used.update(i for i, k in enumerate(e) if k)
        return tuple(self.params.names[i] for i in sorted(used))

    def __str__(self):
        names = self.params.names
        num = _poly_str(self.num, names)
        if self.den.is_one():
            return num
        if len(self.num) > 1:
            num = f"({num})"
        den = _poly_str(self.den, names)
        if len(self.den) > 1 or not _is_plain_power(self.den):
            den = f"({den})"
        return f"{num}/{den}"

    def __repr__(self):
        return f"Scalar({str(self)!r})"


def _is_plain_power(poly):
    """True for an integer, or a single parameter power with coefficient 1."""
    ((exp, coeff),) = poly.terms()
    if not any(exp):
        return True
    return coeff == 1 and sum(1 for e in exp if e) == 1


def _poly_str(poly, names):
    if not poly:
        return "0"
    out = []
    for exp, coeff in poly.terms():
        mono = "*".join(
            name if e == 1 else f"{name}^{e}" for name, e in zip(names, exp) if e
        )
        coeff = int(coeff)
        if not mono:
            term = str(coeff)
        elif coeff == 1:
            term = mono
        elif coeff == -1:
            term = "-" + mono
        else:
            term = f"{coeff}*{mono}"
        if out and not term.startswith("-"):
            out.append("+")
        out.append(term)
    return "".join(out)


def as_scalar(value, params=DEFAULT_PARAMS):
    """Coerce an int, Fraction, Scalar or expression string to a Scalar."""
    if isinstance(value, Scalar):
        if value.params is not params:
            raise ValueError("scalar belongs to a different ParamSet")
        return value
    if isinstance(value, bool):
        value = int(value)
    if isinstance(value, int):
        return Scalar._raw(params.poly(value), params.pone, params)
    if isinstance(value, Fraction):
        return Scalar._raw(params.poly(value.numerator), params.poly(value.denominator), params)
    if isinstance(value, str):
        return parse_scalar(value, params)
    raise TypeError(f"cannot convert {type(value).__name__} to Scalar")


@lru_cache(maxsize=None)
def _q_number(n, params, name):
    q = params.pgens[params.index(name)]
    m = abs(n)
    geometric = params.pzero
    for j in range(m):
        geometric += q**j
    if n >= 0:
        return Scalar._raw(geometric, params.pone, params)
    # {-m} = -q^{-m} {m}
    return Scalar.fraction(-geometric, q**m, params)


def q_number(n, params=DEFAULT_PARAMS, name="q"):
    """The q-number ``(q^n - 1)/(q - 1)``; a polynomial for n >= 0."""
    return _q_number(int(n), params, name)


@lru_cache(maxsize=None)
def _sym_q_number(k, params, name):
    q = params.pgens[params.index(name)]
    m = abs(k)
    if m == 0:
        return params.zero()
    # [m] = q^{1-m} (1 + q^2 + ... + q^{2(m-1)})
    body = params.pzero
    for j in range(m):
        body += q ** (2 * j)
    value = Scalar.fraction(body, q ** (m - 1), params)
    return value if k > 0 else -value


def sym_q_number(k, params=DEFAULT_PARAMS, name="q"):
    """The symmetric q-number ``(q^k - q^-k)/(q - q^-1)``."""
    return _sym_q_number(int(k), params, name)


def _coerce_point(assignment, params):
    point = {}
    for name, value in assignment.items():
        if name not in params:
            raise KeyError(f"unknown parameter {name!r}")
        if isinstance(value, str):
            value = Fraction(value)
        point[params.index(name)] = Fraction(value)
    return point


def _poly_at(poly, point):
    total = Fraction(0)
    for exp, coeff in poly.terms():
        term = Fraction(int(coeff))
        for i, e in enumerate(exp):
            if e:
                term *= point[i] ** int(e)
        total += term
    return total


def evaluate(s, assignment):
    """Exact value of ``s`` at a point assigning every parameter occurring in it."""
    s = as_scalar(s) if not isinstance(s, Scalar) else s
    point = _coerce_point(assignment, s.params)
    missing = [n for n in s.free_params() if s.params.index(n) not in point]
    if missing:
        raise ValueError(f"no value given for {', '.join(missing)}")
    den = _poly_at(s.den, point)
    if den == 0:
        raise PoleAtPoint(f"denominator of {s} vanishes at {assignment}")
    return _poly_at(s.num, point) / den


def subs(s, assignment):
    """Substitute rational values for some parameters, keeping the rest formal."""
    params = s.params
    point = _coerce_point(assignment, params)
    gens = [params.gen(n) for n in params.names]

    def partial(poly):
        total = params.zero()
        for exp, coeff in poly.terms():
            term = as_scalar(int(coeff), params)
            for i, e in enumerate(exp):
                if e:
                    term = term * (as_scalar(point[i] ** int(e), params) if i in point else gens[i] ** int(e))
            total = total + term
        return total

    den = partial(s.den)
    if den.is_zero:
        raise PoleAtPoint(f"denominator of {s} vanishes at {assignment}")
    return partial(s.num) / den


def parse_scalar(text, params=DEFAULT_PARAMS):
    """Parse integer literals, parameter names, ``+ - * / ^`` and parentheses."""

    def resolve(name):
        return params.gen(name) if name in params else None

    value = parse_expression(text, lambda n: as_scalar(n, params), resolve)
    if not isinstance(value, Scalar):
        raise ParseError("expression does not denote a scalar", 0)
    return value
