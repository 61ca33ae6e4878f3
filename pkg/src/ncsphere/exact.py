"""Exact scalars: Gaussian rationals, Laurent polynomials in the moduli
parameters and their fraction field.

Rationals are ``gmpy2.mpq``.  Nothing in this package ever touches a float.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Integral, Rational

from gmpy2 import mpq

__all__ = [
    "GaussRat",
    "LaurentPoly",
    "ParamScalar",
    "I",
    "ONE",
    "ZERO",
    "coerce",
    "is_zero",
    "star",
    "unit_circle_from_pythagorean",
    "lambda_vars",
    "parse_gauss",
    "gauss_to_json",
]


def _rat(x) -> mpq:
    if isinstance(x, str):
        return mpq(x.strip())
    return mpq(x)


def _rat_str(q: mpq) -> str:
    return str(q)


class GaussRat:
    """Element ``re + im*i`` of Q(i)."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = _rat(re)
        self.im = _rat(im)

    @classmethod
    def _make(cls, re, im):
        obj = object.__new__(cls)
        obj.re = re
        obj.im = im
        return obj

    # -- arithmetic -----------------------------------------------------
    def __add__(self, other):
        if isinstance(other, GaussRat):
            return GaussRat._make(self.re + other.re, self.im + other.im)
        if isinstance(other, (int, Integral, Rational, type(mpq()))):
            return GaussRat._make(self.re + other, self.im)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, GaussRat):
            return GaussRat._make(self.re - other.re, self.im - other.im)
        if isinstance(other, (int, Integral, Rational, type(mpq()))):
            return GaussRat._make(self.re - other, self.im)
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, (int, Integral, Rational, type(mpq()))):
            return GaussRat._make(other - self.re, -self.im)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, GaussRat):
            a, b, c, d = self.re, self.im, other.re, other.im
            return GaussRat._make(a * c - b * d, a * d + b * c)
        if isinstance(other, (int, Integral, Rational, type(mpq()))):
            return GaussRat._make(self.re * other, self.im * other)
        return NotImplemented

    __rmul__ = __mul__

    def inverse(self) -> GaussRat:
        n = self.re * self.re + self.im * self.im
        if not n:
            raise ZeroDivisionError("inverse of zero Gaussian rational")
        return GaussRat._make(self.re / n, -self.im / n)

    def __truediv__(self, other):
        if isinstance(other, GaussRat):
            return self * other.inverse()
        if isinstance(other, (int, Integral, Rational, type(mpq()))):
            if not other:
                raise ZeroDivisionError
            return GaussRat._make(self.re / other, self.im / other)
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, Integral, Rational, type(mpq()))):
            return self.inverse() * other
        return NotImplemented

    def __neg__(self):
        return GaussRat._make(-self.re, -self.im)

    def __pos__(self):
        return self

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conjugate(self) -> GaussRat:
        return GaussRat._make(self.re, -self.im)

    def star(self) -> GaussRat:
        return self.conjugate()

    def norm(self) -> mpq:
        return self.re * self.re + self.im * self.im

    # -- comparison -----------------------------------------------------
    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def is_zero(self) -> bool:
        return not (self.re or self.im)

    def __eq__(self, other):
        if isinstance(other, GaussRat):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Integral, Rational, type(mpq()))):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def sort_key(self):
        return (self.re, self.im)

    def __repr__(self):
        return f"GaussRat({_rat_str(self.re)!r}, {_rat_str(self.im)!r})"

    def __str__(self):
        if not self.im:
            return _rat_str(self.re)
        if not self.re:
            if self.im == 1:
                return "i"
            if self.im == -1:
                return "-i"
            return f"{_rat_str(self.im)}i"
        sign = "+" if self.im > 0 else "-"
        im = abs(self.im)
        im_s = "i" if im == 1 else f"{_rat_str(im)}i"
        return f"{_rat_str(self.re)}{sign}{im_s}"


ZERO = GaussRat(0)
ONE = GaussRat(1)
I = GaussRat(0, 1)


def coerce(x):
    """Lift ints and rationals to ``GaussRat``; leave field elements alone."""
    if isinstance(x, (GaussRat, ParamScalar)):
        return x
    if isinstance(x, (int, Integral, Rational, type(mpq()))):
        return GaussRat._make(mpq(x), mpq(0))
    if isinstance(x, complex):
        raise TypeError("floating point complex numbers are not exact")
    raise TypeError(f"cannot coerce {type(x).__name__} to an exact scalar")


def is_zero(x) -> bool:
    if isinstance(x, (GaussRat, ParamScalar)):
        return x.is_zero()
    return not x


def star(x):
    """Star involution: conjugate coefficients and invert every parameter."""
    if isinstance(x, (GaussRat, ParamScalar, LaurentPoly)):
        return x.star()
    return coerce(x)


def unit_circle_from_pythagorean(p: int, q: int) -> GaussRat:
    """Return ``((p^2-q^2) + 2pq i)/(p^2+q^2)``, a point of norm exactly one."""
    if p == 0 and q == 0:
        raise ValueError("pythagorean pair (0, 0) does not define a unit circle point")
    p, q = int(p), int(q)
    d = p * p + q * q
    return GaussRat._make(mpq(p * p - q * q, d), mpq(2 * p * q, d))


def parse_gauss(obj) -> GaussRat:
    """Parse ``int | "a/b" | {"re": .., "im": ..}`` into a GaussRat."""
    if isinstance(obj, GaussRat):
        return obj
    if isinstance(obj, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(obj, (int, Fraction)):
        return coerce(obj)
    if isinstance(obj, str):
        return GaussRat(mpq(obj.strip()))
    if isinstance(obj, dict):
        extra = set(obj) - {"re", "im"}
        if extra:
            raise ValueError(f"unexpected keys {sorted(extra)} in Gaussian rational")
        return GaussRat(_rat(obj.get("re", 0)), _rat(obj.get("im", 0)))
    raise TypeError(f"cannot parse {obj!r} as a Gaussian rational")


def gauss_to_json(x: GaussRat) -> dict:
    return {"re": _rat_str(x.re), "im": _rat_str(x.im)}


# ----------------------------------------------------------------------
# Laurent polynomials
# ----------------------------------------------------------------------

LAMBDA_NAMES = ("λ0", "λ1", "λ2", "λ3")


class LaurentPoly:
    """Sparse Laurent polynomial with Gaussian-rational coefficients.

    ``terms`` maps integer exponent tuples (negative entries allowed) to
    nonzero ``GaussRat`` coefficients.
    """

    __slots__ = ("terms", "names")

    def __init__(self, terms=None, names=LAMBDA_NAMES):
        self.names = tuple(names)
        clean = {}
        if terms:
            n = len(self.names)
            for e, c in terms.items():
                e = tuple(e)
                if len(e) != n:
                    raise ValueError("exponent length does not match variable count")
                c = coerce(c)
                if c:
                    clean[e] = c
        self.terms = clean

    @classmethod
    def _make(cls, terms, names):
        obj = object.__new__(cls)
        obj.terms = terms
        obj.names = names
        return obj

    @classmethod
    def constant(cls, c, names=LAMBDA_NAMES):
        c = coerce(c)
        names = tuple(names)
        return cls._make({(0,) * len(names): c} if c else {}, names)

    @classmethod
    def var(cls, i: int, names=LAMBDA_NAMES, power: int = 1):
        names = tuple(names)
        e = [0] * len(names)
        e[i] = power
        return cls._make({tuple(e): ONE}, names)

    @property
    def nvars(self):
        return len(self.names)

    def is_zero(self):
        return not self.terms

    __bool__ = lambda self: bool(self.terms)

    def _check(self, other):
        if other.names != self.names:
            raise ValueError("Laurent polynomials over different variable sets")

    def _lift(self, other):
        if isinstance(other, LaurentPoly):
            self._check(other)
            return other
        if isinstance(other, ParamScalar):
            return None
        return LaurentPoly.constant(other, self.names)

    def __add__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e)
            if v is None:
                out[e] = c
            else:
                v = v + c
                if v:
                    out[e] = v
                else:
                    del out[e]
        return LaurentPoly._make(out, self.names)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._make({e: -c for e, c in self.terms.items()}, self.names)

    def __sub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        if not self.terms or not other.terms:
            return LaurentPoly._make({}, self.names)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = out.get(e)
                out[e] = c1 * c2 if v is None else v + c1 * c2
        return LaurentPoly._make({e: c for e, c in out.items() if c}, self.names)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if len(self.terms) != 1:
                raise ValueError("only monomials are invertible in the Laurent ring")
            (e, c), = self.terms.items()
            return LaurentPoly._make({tuple(-x for x in e): c.inverse()}, self.names) ** (-n)
        result = LaurentPoly.constant(1, self.names)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self.names == other.names and self.terms == other.terms
        if isinstance(other, (GaussRat, int, Integral, Rational)):
            return self == LaurentPoly.constant(other, self.names)
        return NotImplemented

    def __hash__(self):
        return hash((self.names, frozenset(self.terms.items())))

    def star(self) -> LaurentPoly:
        return LaurentPoly._make(
            {tuple(-x for x in e): c.conjugate() for e, c in self.terms.items()}, self.names
        )

    def is_monomial(self):
        return len(self.terms) == 1

    def is_constant(self):
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def constant_value(self) -> GaussRat:
        return self.terms.get((0,) * self.nvars, ZERO)

    def shift(self, e) -> LaurentPoly:
        """Multiply by the monomial with exponent vector ``e``."""
        return LaurentPoly._make(
            {tuple(a + b for a, b in zip(k, e)): c for k, c in self.terms.items()}, self.names
        )

    def scale(self, c) -> LaurentPoly:
        c = coerce(c)
        if not c:
            return LaurentPoly._make({}, self.names)
        return LaurentPoly._make({e: v * c for e, v in self.terms.items()}, self.names)

    def min_exponents(self):
        it = iter(self.terms)
        m = list(next(it))
        for e in it:
            for i, x in enumerate(e):
                if x < m[i]:
                    m[i] = x
        return tuple(m)

    def leading(self):
        """Leading (exponent, coefficient) in lex order."""
        e = max(self.terms)
        return e, self.terms[e]

    def evaluate(self, values):
        """Evaluate at a point; ``values`` are field elements (GaussRat)."""
        values = [coerce(v) for v in values]
        total = ZERO
        pows = {}
        for e, c in self.terms.items():
            t = c
            for i, x in enumerate(e):
                if x:
                    key = (i, x)
                    p = pows.get(key)
                    if p is None:
                        p = values[i] ** x
                        pows[key] = p
                    t = t * p
            total = total + t
        return total

    def divexact(self, other: LaurentPoly):
        """Return ``self/other`` if the division is exact in the Laurent ring, else None."""
        self._check(other)
        if not other.terms:
            raise ZeroDivisionError
        if not self.terms:
            return self
        if len(other.terms) == 1:
            (e, c), = other.terms.items()
            inv = c.inverse()
            return LaurentPoly._make(
                {tuple(a - b for a, b in zip(k, e)): v * inv for k, v in self.terms.items()},
                self.names,
            )
        # shift both to genuine polynomials and run lex division
        sa = self.min_exponents()
        sb = other.min_exponents()
        a = self.shift(tuple(-x for x in sa))
        b = other.shift(tuple(-x for x in sb))
        lb, cb = b.leading()
        inv = cb.inverse()
        rem = dict(a.terms)
        quo = {}
        steps = 0
        limit = 50 * (len(a.terms) + 1) * (len(b.terms) + 1)
        while rem:
            steps += 1
            if steps > limit:
                return None
            la = max(rem)
            d = tuple(x - y for x, y in zip(la, lb))
            if any(x < 0 for x in d):
                return None
            q = rem[la] * inv
            quo[d] = q
            for e, c in b.terms.items():
                k = tuple(x + y for x, y in zip(e, d))
                v = rem.get(k)
                v = -(q * c) if v is None else v - q * c
                if v:
                    rem[k] = v
                else:
                    rem.pop(k, None)
        shift = tuple(x - y for x, y in zip(sa, sb))
        return LaurentPoly._make(quo, self.names).shift(shift)

    def substitute(self, values):
        """Substitute Laurent polynomials / ParamScalars / GaussRats for the variables."""
        result = None
        for e, c in self.terms.items():
            t = c
            for i, x in enumerate(e):
                if x:
                    t = t * (values[i] ** x)
            result = t if result is None else result + t
        return ZERO if result is None else result

    def __repr__(self):
        return f"LaurentPoly({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            mono = "*".join(
                n if x == 1 else f"{n}^{x}" for n, x in zip(self.names, e) if x
            )
            cs = str(c)
            if not mono:
                parts.append(cs)
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                if c.re and c.im:
                    cs = f"({cs})"
                parts.append(f"{cs}*{mono}")
        out = " + ".join(parts)
        return out.replace("+ -", "- ")


# ----------------------------------------------------------------------
# Fraction field of the Laurent ring
# ----------------------------------------------------------------------


class ParamScalar:
    """Quotient of two Laurent polynomials.

    Equality is decided by cross-multiplication; only monomial and
    constant factors are cancelled eagerly, plus an exact-division attempt.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if not isinstance(num, LaurentPoly):
            names = den.names if isinstance(den, LaurentPoly) else LAMBDA_NAMES
            num = LaurentPoly.constant(num, names)
        if den is None:
            den = LaurentPoly.constant(1, num.names)
        elif not isinstance(den, LaurentPoly):
            den = LaurentPoly.constant(den, num.names)
        if not den.terms:
            raise ZeroDivisionError("ParamScalar with zero denominator")
        self.num, self.den = _normalize(num, den)

    @classmethod
    def _make(cls, num, den):
        obj = object.__new__(cls)
        obj.num, obj.den = _normalize(num, den)
        return obj

    @classmethod
    def var(cls, i: int, names=LAMBDA_NAMES):
        return cls(LaurentPoly.var(i, names))

    @classmethod
    def constant(cls, c, names=LAMBDA_NAMES):
        return cls(LaurentPoly.constant(c, names))

    @property
    def names(self):
        return self.num.names

    def _lift(self, other):
        if isinstance(other, ParamScalar):
            return other
        if isinstance(other, LaurentPoly):
            return ParamScalar._make(other, LaurentPoly.constant(1, other.names))
        return ParamScalar._make(
            LaurentPoly.constant(other, self.names), LaurentPoly.constant(1, self.names)
        )

    def _den_is_one(self):
        return len(self.den.terms) == 1 and self.den.terms.get((0,) * self.num.nvars) == 1

    def __add__(self, other):
        other = self._lift(other)
        if self.den == other.den:
            return ParamScalar._make(self.num + other.num, self.den)
        return ParamScalar._make(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return ParamScalar._make(-self.num, self.den)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        other = self._lift(other)
        return ParamScalar._make(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self):
        if not self.num.terms:
            raise ZeroDivisionError("inverse of zero ParamScalar")
        return ParamScalar._make(self.den, self.num)

    def __truediv__(self, other):
        return self * self._lift(other).inverse()

    def __rtruediv__(self, other):
        return self._lift(other) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        return ParamScalar._make(self.num ** n, self.den ** n)

    def __bool__(self):
        return bool(self.num.terms)

    def is_zero(self):
        return not self.num.terms

    def __eq__(self, other):
        if isinstance(other, (ParamScalar, LaurentPoly, GaussRat, int, Integral, Rational)):
            other = self._lift(other)
            return (self.num * other.den - other.num * self.den).is_zero()
        return NotImplemented

    def __hash__(self):
        # cross-multiplied equality admits no cheap canonical hash
        return hash(self.names)

    def star(self) -> ParamScalar:
        return ParamScalar._make(self.num.star(), self.den.star())

    def conjugate(self):
        return self.star()

    def evaluate(self, values) -> GaussRat:
        d = self.den.evaluate(values)
        if not d:
            raise ZeroDivisionError("denominator vanishes at this specialization")
        return self.num.evaluate(values) / d

    def as_laurent(self):
        """The underlying Laurent polynomial when the denominator is 1, else None."""
        return self.num if self._den_is_one() else None

    def __repr__(self):
        return f"ParamScalar({self})"

    def __str__(self):
        if self._den_is_one():
            return str(self.num)
        return f"({self.num})/({self.den})"


def _normalize(num: LaurentPoly, den: LaurentPoly):
    if not num.terms:
        return num, LaurentPoly.constant(1, num.names)
    if len(den.terms) == 1:
        (e, c), = den.terms.items()
        inv = c.inverse()
        shift = tuple(-x for x in e)
        out = {tuple(a + b for a, b in zip(k, shift)): v * inv for k, v in num.terms.items()}
        return LaurentPoly._make(out, num.names), LaurentPoly.constant(1, num.names)
    q = num.divexact(den)
    if q is not None:
        return q, LaurentPoly.constant(1, num.names)
    # make the denominator a polynomial with lex-leading coefficient 1
    m = den.min_exponents()
    shift = tuple(-x for x in m)
    den = den.shift(shift)
    num = num.shift(shift)
    _, lc = den.leading()
    if lc != 1:
        inv = lc.inverse()
        den = den.scale(inv)
        num = num.scale(inv)
    return num, den


def lambda_vars(names=LAMBDA_NAMES):
    """The four symbolic parameters as ParamScalars."""
    return tuple(ParamScalar.var(i, names) for i in range(len(names)))
