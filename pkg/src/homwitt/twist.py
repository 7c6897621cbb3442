"""Monomial endomorphisms of Laurent polynomial rings.

Every unital endomorphism of ``C[t, 1/t]`` sends ``t`` to a unit ``q*t^s``,
so the univariate case is covered completely.  In ``n`` variables an
endomorphism is given by scales ``c_i`` and an integer matrix ``S`` with
``sigma(z_i) = c_i * z^{S[i]}``.
"""

from fractions import Fraction

from .errors import ArityMismatch, NotAUnit, NotInvertible
from .laurent import LaurentPoly, parse_laurent
from .scalars import DEFAULT_PARAMS, as_scalar

__all__ = ["MonomialEndo"]


class MonomialEndo:
    __slots__ = ("nvars", "scale", "exponents", "params", "_image_cache")

    def __init__(self, scale, exponents, params=DEFAULT_PARAMS):
        scale = tuple(as_scalar(c, params) for c in scale)
        exponents = tuple(tuple(int(x) for x in row) for row in exponents)
        n = len(scale)
        if n == 0 or len(exponents) != n or any(len(row) != n for row in exponents):
            raise ArityMismatch("scale and exponent matrix must both have size n")
        if any(c.is_zero for c in scale):
            raise NotAUnit("images of the variables must be units (nonzero scale)")
        self.nvars = n
        self.scale = scale
        self.exponents = exponents
        self.params = params
        self._image_cache = {}

    @classmethod
    def identity(cls, nvars=1, params=DEFAULT_PARAMS):
        return cls(
            [1] * nvars,
            [[int(i == j) for j in range(nvars)] for i in range(nvars)],
            params,
        )

    @classmethod
    def univariate(cls, scale, power=1, params=DEFAULT_PARAMS):
        """The map ``t -> scale * t^power``."""
        return cls([scale], [[power]], params)

    @classmethod
    def from_images(cls, images, params=DEFAULT_PARAMS):
        """Build from the images of the variables, given as unit LaurentPolys or text."""
        nvars = len(images)
        scale, rows = [], []
        for img in images:
            if isinstance(img, str):
                img = parse_laurent(img, nvars, params)
            if not img.is_unit:
                raise NotAUnit(f"image {img} is not a unit")
            ((e, c),) = img.terms.items()
            scale.append(c)
            rows.append(e)
        return cls(scale, rows, params)

    @classmethod
    def parse(cls, text, params=DEFAULT_PARAMS):
        """Univariate endomorphism from the image of ``t``, e.g. ``"q*t^2"``."""
        return cls.from_images([text], params)

    def __eq__(self, other):
        if not isinstance(other, MonomialEndo):
            return NotImplemented
        return self.scale == other.scale and self.exponents == other.exponents

    def __hash__(self):
        return hash((self.scale, self.exponents))

    def __repr__(self):
        return f"MonomialEndo({self.describe()})"

    def describe(self):
        names = ("t",) if self.nvars == 1 else tuple(f"z{i + 1}" for i in range(self.nvars))
        return ", ".join(
            f"{name} -> {self.image(i)}" for i, name in enumerate(names)
        )

    def image(self, i):
        """sigma(z_i) as a LaurentPoly."""
        return LaurentPoly({self.exponents[i]: self.scale[i]}, self.nvars, self.params)

    @property
    def is_identity(self):
        return self == MonomialEndo.identity(self.nvars, self.params)

    def monomial_image(self, exp):
        """(coefficient, exponent) of sigma(z^exp)."""
        hit = self._image_cache.get(exp)
        if hit is not None:
            return hit
        coeff = self.params.one()
        new = [0] * self.nvars
        for i, v in enumerate(exp):
            if v:
                coeff = coeff * self.scale[i] ** v
                row = self.exponents[i]
                for j in range(self.nvars):
                    new[j] += v * row[j]
        hit = (coeff, tuple(new))
        self._image_cache[exp] = hit
        return hit

    def apply(self, f):
        if f.nvars != self.nvars:
            raise ArityMismatch(f"endomorphism on {self.nvars} variables applied to nvars={f.nvars}")
        out = {}
        for e, c in f.terms.items():
            k, e2 = self.monomial_image(e)
            v = c * k
            prev = out.get(e2)
            out[e2] = v if prev is None else prev + v
        return LaurentPoly._from_clean({e: c for e, c in out.items() if c}, f.nvars, f.params)

    __call__ = apply

    def compose(self, other):
        """``self o other``: apply ``other`` first."""
        if other.nvars != self.nvars:
            raise ArityMismatch("cannot compose endomorphisms of different arity")
        n = self.nvars
        scale, rows = [], []
        for i in range(n):
            coeff, exp = self.monomial_image(other.exponents[i])
            scale.append(other.scale[i] * coeff)
            rows.append(exp)
        return MonomialEndo(scale, rows, self.params)

    def inverse(self):
        n = self.nvars
        inv = _integer_inverse(self.exponents)
        if inv is None:
            raise NotInvertible("exponent matrix is not invertible over the integers")
        # tau(z_i) = c_i z^{T_i} with c_i = prod_j scale_j^{-T_ij}
        scale = []
        for i in range(n):
            c = self.params.one()
            for j in range(n):
                if inv[i][j]:
                    c = c * self.scale[j] ** (-inv[i][j])
            scale.append(c)
        return MonomialEndo(scale, inv, self.params)


def _integer_inverse(rows):
    """Inverse of an integer matrix when it is again integral (det = +-1), else None."""
    n = len(rows)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(rows)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if pivot is None:
            return None
        aug[col], aug[pivot] = aug[pivot], aug[col]
        p = aug[col][col]
        aug[col] = [x / p for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    inv = [row[n:] for row in aug]
    if any(x.denominator != 1 for row in inv for x in row):
        return None
    return tuple(tuple(int(x) for x in row) for row in inv)
