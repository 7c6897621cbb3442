"""Finite linear combinations of basis vectors of an abstract (hom-)Lie algebra.

Basis indices are integer tuples, plus one distinguished central index
:data:`CENTRAL` used by one-dimensional central extensions.
"""

from .scalars import DEFAULT_PARAMS, as_scalar

__all__ = ["CENTRAL", "HomLieElement", "index_key", "bilinear", "linear"]


class _Central:
    __slots__ = ()

    def __repr__(self):
        return "CENTRAL"

    def __str__(self):
        return "c"

    def __reduce__(self):
        return "CENTRAL"


CENTRAL = _Central()


def index_key(idx):
    """Sort key placing ordinary indices first (lexicographically), the central index last."""
    return (1, ()) if idx is CENTRAL else (0, idx)


def _norm_index(idx):
    if idx is CENTRAL:
        return idx
    return (idx,) if isinstance(idx, int) else tuple(idx)


class HomLieElement:
    __slots__ = ("terms", "params")

    def __init__(self, terms=None, params=DEFAULT_PARAMS):
        clean = {}
        for idx, c in (terms or {}).items():
            idx = _norm_index(idx)
            c = as_scalar(c, params)
            if c:
                prev = clean.get(idx)
                c = c if prev is None else prev + c
                if c:
                    clean[idx] = c
                else:
                    clean.pop(idx, None)
        self.terms = clean
        self.params = params

    @classmethod
    def basis(cls, idx, coeff=1, params=DEFAULT_PARAMS):
        return cls({_norm_index(idx): coeff}, params)

    @classmethod
    def zero(cls, params=DEFAULT_PARAMS):
        return cls({}, params)

    @property
    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def coeff(self, idx):
        return self.terms.get(_norm_index(idx), self.params.zero())

    def items(self):
        """Terms in canonical order."""
        return sorted(self.terms.items(), key=lambda kv: index_key(kv[0]))

    def support(self):
        return [idx for idx, _ in self.items()]

    def __add__(self, other):
        if not isinstance(other, HomLieElement):
            return NotImplemented
        out = dict(self.terms)
        for idx, c in other.terms.items():
            v = out.get(idx)
            v = c if v is None else v + c
            if v:
                out[idx] = v
            else:
                out.pop(idx, None)
        return _from_clean(out, self.params)

    def __neg__(self):
        return _from_clean({i: -c for i, c in self.terms.items()}, self.params)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = as_scalar(c, self.params)
        if not c:
            return HomLieElement.zero(self.params)
        return _from_clean({i: v * c for i, v in self.terms.items()}, self.params)

    def __mul__(self, c):
        if isinstance(c, HomLieElement):
            return NotImplemented
        return self.scale(c)

    __rmul__ = __mul__

    def map_coefficients(self, fn):
        return HomLieElement({i: fn(c) for i, c in self.terms.items()}, self.params)

    def __eq__(self, other):
        if isinstance(other, HomLieElement):
            return self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for idx, c in self.items():
            name = "c" if idx is CENTRAL else "d" + str(list(idx) if len(idx) > 1 else idx[0])
            parts.append(f"({c})*{name}")
        return " + ".join(parts)

    def __repr__(self):
        return f"HomLieElement({self})"

    def to_json(self):
        return [
            {"index": "c" if idx is CENTRAL else list(idx), "coeff": str(c)}
            for idx, c in self.items()
        ]


def _from_clean(terms, params):
    self = object.__new__(HomLieElement)
    self.terms = terms
    self.params = params
    return self


def linear(fn, x):
    """Extend ``fn: index -> HomLieElement`` linearly to ``x``."""
    out = HomLieElement.zero(x.params)
    for idx, c in x.terms.items():
        out = out + fn(idx).scale(c)
    return out


def bilinear(fn, x, y):
    """Extend ``fn: (index, index) -> HomLieElement`` bilinearly to ``(x, y)``."""
    out = HomLieElement.zero(x.params)
    for i, a in x.terms.items():
        for j, b in y.terms.items():
            v = fn(i, j)
            if v:
                out = out + v.scale(a * b)
    return out
