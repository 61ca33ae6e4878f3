"""Commutative polynomials over exact fields and Buchberger's algorithm.

Coefficients are ``GaussRat`` (numeric parameters) or ``ParamScalar``
(symbolic parameters).  Ideal membership is decided by reduction against a
reduced Groebner basis; normal forms of monomials are memoised so repeated
reductions against one basis are linear in the number of input terms.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .exact import ONE, coerce, is_zero

__all__ = [
    "CommPoly",
    "GroebnerBasis",
    "groebner_basis",
    "reduce_mod",
    "poly_vars",
    "ORDERS",
]


def _degrevlex_key(e):
    return (sum(e), tuple(-x for x in reversed(e)))


def _lex_key(e):
    return e


ORDERS = {"degrevlex": _degrevlex_key, "lex": _lex_key}


class CommPoly:
    """Sparse commutative polynomial; ``terms`` maps exponent tuples to scalars."""

    __slots__ = ("terms", "names")

    def __init__(self, terms=None, names=("y0", "y1", "y2", "y3")):
        self.names = tuple(names)
        out = {}
        if terms:
            for e, c in terms.items():
                c = coerce(c)
                if not is_zero(c):
                    out[tuple(e)] = c
        self.terms = out

    @classmethod
    def _make(cls, terms, names):
        obj = object.__new__(cls)
        obj.terms = terms
        obj.names = names
        return obj

    @classmethod
    def constant(cls, c, names):
        names = tuple(names)
        c = coerce(c)
        return cls._make({} if is_zero(c) else {(0,) * len(names): c}, names)

    @classmethod
    def var(cls, i, names):
        names = tuple(names)
        e = [0] * len(names)
        e[i] = 1
        return cls._make({tuple(e): ONE}, names)

    @property
    def nvars(self):
        return len(self.names)

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def _lift(self, other):
        if isinstance(other, CommPoly):
            if other.names != self.names:
                raise ValueError(f"variable mismatch {self.names} vs {other.names}")
            return other
        return CommPoly.constant(other, self.names)

    def __add__(self, other):
        other = self._lift(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e)
            if v is None:
                out[e] = c
            else:
                v = v + c
                if is_zero(v):
                    del out[e]
                else:
                    out[e] = v
        return CommPoly._make(out, self.names)

    __radd__ = __add__

    def __neg__(self):
        return CommPoly._make({e: -c for e, c in self.terms.items()}, self.names)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, CommPoly):
            c = coerce(other)
            if is_zero(c):
                return CommPoly._make({}, self.names)
            return CommPoly._make({e: v * c for e, v in self.terms.items()}, self.names)
        other = self._lift(other)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = out.get(e)
                out[e] = c1 * c2 if v is None else v + c1 * c2
        return CommPoly._make({e: c for e, c in out.items() if not is_zero(c)}, self.names)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = CommPoly.constant(1, self.names)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        try:
            other = self._lift(other)
        except (TypeError, ValueError):
            return NotImplemented
        return (self - other).is_zero()

    def __hash__(self):
        return hash(self.names)

    def mul_monomial(self, e, c=ONE):
        return CommPoly._make(
            {tuple(a + b for a, b in zip(k, e)): v * c for k, v in self.terms.items()},
            self.names,
        )

    def degree(self):
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self):
        return len({sum(e) for e in self.terms}) <= 1

    def leading(self, order="degrevlex"):
        key = ORDERS[order]
        e = max(self.terms, key=key)
        return e, self.terms[e]

    def map_coeffs(self, f):
        out = {}
        for e, c in self.terms.items():
            v = coerce(f(c))
            if not is_zero(v):
                out[e] = v
        return CommPoly._make(out, self.names)

    def conjugate(self):
        """Conjugate the coefficients (the variables are left alone)."""
        return self.map_coeffs(lambda c: c.star())

    def subs(self, values, names=None):
        """Compose: substitute ``values[i]`` (CommPoly or scalars) for variable i."""
        if names is None:
            polys = [v for v in values if isinstance(v, CommPoly)]
            names = polys[0].names if polys else self.names
        cache = {}

        def power(i, k):
            key = (i, k)
            p = cache.get(key)
            if p is None:
                v = values[i]
                if not isinstance(v, CommPoly):
                    v = CommPoly.constant(v, names)
                p = v ** k
                cache[key] = p
            return p

        total = CommPoly._make({}, tuple(names))
        for e, c in self.terms.items():
            t = CommPoly.constant(c, names)
            for i, k in enumerate(e):
                if k:
                    t = t * power(i, k)
            total = total + t
        return total

    def evaluate(self, point):
        point = [coerce(p) for p in point]
        total = coerce(0)
        for e, c in self.terms.items():
            t = c
            for i, k in enumerate(e):
                if k:
                    t = t * point[i] ** k
            total = total + t
        return total

    def extend(self, names):
        """Embed into a larger variable set whose prefix is ``self.names``."""
        names = tuple(names)
        pad = (0,) * (len(names) - len(self.names))
        if names[: len(self.names)] != self.names:
            raise ValueError("new variable list must extend the old one")
        return CommPoly._make({e + pad: c for e, c in self.terms.items()}, names)

    def rename(self, names, positions=None):
        """Move variable i to position ``positions[i]`` of the new variable list."""
        names = tuple(names)
        positions = positions or list(range(len(self.names)))
        out = {}
        for e, c in self.terms.items():
            ne = [0] * len(names)
            for i, k in enumerate(e):
                ne[positions[i]] += k
            out[tuple(ne)] = c
        return CommPoly._make(out, names)

    def __repr__(self):
        return f"CommPoly({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, key=_degrevlex_key, reverse=True):
            c = self.terms[e]
            mono = "*".join(n if k == 1 else f"{n}^{k}" for n, k in zip(self.names, e) if k)
            cs = str(c)
            if not mono:
                parts.append(cs)
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"({cs})*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


def poly_vars(names):
    names = tuple(names)
    return tuple(CommPoly.var(i, names) for i in range(len(names)))


def _divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def _lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


@dataclass
class GroebnerBasis:
    """A Groebner basis together with a memo of monomial normal forms."""

    generators: list
    order: str = "degrevlex"
    reduced: bool = True
    names: tuple = ()
    _leads: list = field(default_factory=list, repr=False)
    _memo: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if self.generators and not self.names:
            self.names = self.generators[0].names
        self._leads = [g.leading(self.order) for g in self.generators]

    def _nf_monomial(self, e):
        memo = self._memo
        hit = memo.get(e)
        if hit is not None:
            return hit
        # iterative: resolve the chain of monomials that need normal forms
        stack = [e]
        while stack:
            m = stack[-1]
            if m in memo:
                stack.pop()
                continue
            for (le, lc), g in zip(self._leads, self.generators):
                if _divides(le, m):
                    shift = tuple(x - y for x, y in zip(m, le))
                    inv = 1 / lc
                    tail = []
                    missing = []
                    for ge, gc in g.terms.items():
                        if ge == le:
                            continue
                        t = tuple(x + y for x, y in zip(ge, shift))
                        tail.append((t, -(gc * inv)))
                        if t not in memo:
                            missing.append(t)
                    if missing:
                        stack.extend(missing)
                        break
                    acc = {}
                    for t, c in tail:
                        for k, v in memo[t].items():
                            x = acc.get(k)
                            x = c * v if x is None else x + c * v
                            if is_zero(x):
                                acc.pop(k, None)
                            else:
                                acc[k] = x
                    memo[m] = acc
                    stack.pop()
                    break
            else:
                memo[m] = {m: ONE}
                stack.pop()
        return memo[e]

    def reduce(self, p: CommPoly) -> CommPoly:
        if p.names != self.names:
            raise ValueError(f"variable mismatch {p.names} vs {self.names}")
        acc = {}
        for e, c in p.terms.items():
            for k, v in self._nf_monomial(e).items():
                x = acc.get(k)
                x = c * v if x is None else x + c * v
                if is_zero(x):
                    acc.pop(k, None)
                else:
                    acc[k] = x
        return CommPoly._make(acc, self.names)

    def contains(self, p: CommPoly) -> bool:
        return self.reduce(p).is_zero()

    def s_polynomials_vanish(self) -> bool:
        """Post-hoc Buchberger criterion: every S-polynomial reduces to 0."""
        for i, j in combinations(range(len(self.generators)), 2):
            if not self.reduce(_spoly(self.generators[i], self.generators[j], self.order)).is_zero():
                return False
        return True


def _spoly(f, g, order):
    ef, cf = f.leading(order)
    eg, cg = g.leading(order)
    l = _lcm(ef, eg)
    a = f.mul_monomial(tuple(x - y for x, y in zip(l, ef)), 1 / cf)
    b = g.mul_monomial(tuple(x - y for x, y in zip(l, eg)), 1 / cg)
    return a - b


def _reduce_full(p, basis, order, budget=None):
    """Plain multivariate division (used during completion)."""
    key = ORDERS[order]
    leads = [g.leading(order) for g in basis]
    rem = {}
    work = dict(p.terms)
    while work:
        if budget is not None:
            budget.check()
        e = max(work, key=key)
        c = work.pop(e)
        for (le, lc), g in zip(leads, basis):
            if _divides(le, e):
                shift = tuple(x - y for x, y in zip(e, le))
                q = c / lc
                for ge, gc in g.terms.items():
                    if ge == le:
                        continue
                    t = tuple(x + y for x, y in zip(ge, shift))
                    v = work.get(t)
                    v = -(q * gc) if v is None else v - q * gc
                    if is_zero(v):
                        work.pop(t, None)
                    else:
                        work[t] = v
                break
        else:
            rem[e] = c
    return CommPoly._make(rem, p.names)


def _monic(p, order):
    _, c = p.leading(order)
    return p * (1 / c)


def groebner_basis(gens, order="degrevlex", budget=None) -> GroebnerBasis:
    """Reduced Groebner basis by Buchberger's algorithm with the coprime criterion."""
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        raise ValueError("groebner_basis needs at least one nonzero generator")
    names = gens[0].names
    basis = []
    for g in gens:
        r = _reduce_full(g, basis, order, budget) if basis else g
        if not r.is_zero():
            basis.append(_monic(r, order))
    pairs = list(combinations(range(len(basis)), 2))
    while pairs:
        if budget is not None:
            budget.check()
        i, j = pairs.pop(0)
        ei, _ = basis[i].leading(order)
        ej, _ = basis[j].leading(order)
        if all(not (x and y) for x, y in zip(ei, ej)):
            continue  # coprime leading monomials
        r = _reduce_full(_spoly(basis[i], basis[j], order), basis, order, budget)
        if not r.is_zero():
            basis.append(_monic(r, order))
            n = len(basis) - 1
            pairs.extend((k, n) for k in range(n))
    # minimalise and interreduce
    leads = [b.leading(order)[0] for b in basis]
    keep = []
    for i, b in enumerate(basis):
        if any(_divides(leads[j], leads[i]) and (leads[j] != leads[i] or j < i)
               for j in range(len(basis)) if j != i):
            continue
        keep.append(b)
    reduced = []
    for i, b in enumerate(keep):
        others = keep[:i] + keep[i + 1:]
        r = _reduce_tail(b, others, order, budget)
        reduced.append(_monic(r, order))
    reduced.sort(key=lambda g: ORDERS[order](g.leading(order)[0]))
    return GroebnerBasis(reduced, order=order, reduced=True, names=names)


def _reduce_tail(b, others, order, budget):
    if not others:
        return b
    le, lc = b.leading(order)
    tail = CommPoly._make({e: c for e, c in b.terms.items() if e != le}, b.names)
    tail = _reduce_full(tail, others, order, budget)
    return tail + CommPoly._make({le: lc}, b.names)


def reduce_mod(p: CommPoly, gb: GroebnerBasis) -> CommPoly:
    return gb.reduce(p)
