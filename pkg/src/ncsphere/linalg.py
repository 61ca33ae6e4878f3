"""Exact Gaussian elimination over GaussRat or ParamScalar entries.

Vectors are sparse dicts ``column -> scalar``; columns can be any sortable
keys (integers, words, exponent tuples).
"""

from __future__ import annotations

from .exact import coerce, is_zero

__all__ = ["SparseEchelon", "rank", "row_space_equal", "nullspace", "det", "in_span"]


class SparseEchelon:
    """Incrementally maintained echelon basis of a span of sparse vectors.

    Pivots are chosen at the smallest column key of each reduced vector;
    stored rows are scaled so their pivot entry is one.
    """

    def __init__(self, budget=None):
        self.pivots = {}
        self.budget = budget

    def __len__(self):
        return len(self.pivots)

    def reduce(self, vec: dict) -> dict:
        v = {k: c for k, c in vec.items() if not is_zero(c)}
        out = {}
        while v:
            if self.budget is not None:
                self.budget.check()
            col = min(v)
            c = v.pop(col)
            row = self.pivots.get(col)
            if row is None:
                out[col] = c
                continue
            for k, r in row.items():
                if k == col:
                    continue
                x = v.get(k)
                x = -(c * r) if x is None else x - c * r
                if is_zero(x):
                    v.pop(k, None)
                else:
                    v[k] = x
        return out

    def _reduce_leading(self, vec: dict) -> dict:
        v = {k: c for k, c in vec.items() if not is_zero(c)}
        while v:
            col = min(v)
            row = self.pivots.get(col)
            if row is None:
                return v
            if self.budget is not None:
                self.budget.check()
            c = v.pop(col)
            for k, r in row.items():
                if k == col:
                    continue
                x = v.get(k)
                x = -(c * r) if x is None else x - c * r
                if is_zero(x):
                    v.pop(k, None)
                else:
                    v[k] = x
        return v

    def add(self, vec: dict) -> bool:
        """Insert a vector; return True if it enlarged the span."""
        v = self._reduce_leading(vec)
        if not v:
            return False
        col = min(v)
        inv = 1 / coerce(v[col])
        self.pivots[col] = {k: c * inv for k, c in v.items()}
        return True

    def contains(self, vec: dict) -> bool:
        return not self._reduce_leading(vec)

    def reduced_rows(self):
        """Fully reduced echelon rows, sorted by pivot (canonical for the span)."""
        cols = sorted(self.pivots)
        rows = {}
        for col in reversed(cols):
            row = dict(self.pivots[col])
            for k in sorted(k for k in row if k != col and k in rows):
                c = row.get(k)
                if c is None or is_zero(c):
                    continue
                for kk, rr in rows[k].items():
                    x = row.get(kk)
                    x = -(c * rr) if x is None else x - c * rr
                    if is_zero(x):
                        row.pop(kk, None)
                    else:
                        row[kk] = x
            rows[col] = row
        return [rows[c] for c in cols]


def rank(vectors, budget=None) -> int:
    ech = SparseEchelon(budget)
    for v in vectors:
        ech.add(v)
    return len(ech)


def in_span(vec, vectors) -> bool:
    ech = SparseEchelon()
    for v in vectors:
        ech.add(v)
    return ech.contains(vec)


def row_space_equal(a, b) -> bool:
    """True iff the sparse vectors ``a`` and ``b`` span the same space."""
    ea, eb = SparseEchelon(), SparseEchelon()
    for v in a:
        ea.add(v)
    for v in b:
        eb.add(v)
    if len(ea) != len(eb):
        return False
    return all(ea.contains(v) for v in b)


def nullspace(matrix):
    """Right kernel basis of a dense matrix (list of rows) over a field."""
    rows = [[coerce(x) for x in r] for r in matrix]
    if not rows:
        return []
    ncols = len(rows[0])
    pivcols = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(rows)) if not is_zero(rows[i][c])), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and not is_zero(rows[i][c]):
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivcols.append(c)
        r += 1
        if r == len(rows):
            break
    free = [c for c in range(ncols) if c not in pivcols]
    basis = []
    for fc in free:
        v = [coerce(0)] * ncols
        v[fc] = coerce(1)
        for i, pc in enumerate(pivcols):
            v[pc] = -rows[i][fc]
        basis.append(v)
    return basis


def det(matrix):
    """Determinant by cofactor expansion; entries may be any ring elements."""
    n = len(matrix)
    if n == 1:
        return matrix[0][0]
    if n == 2:
        return matrix[0][0] * matrix[1][1] - matrix[0][1] * matrix[1][0]
    total = None
    for j in range(n):
        a = matrix[0][j]
        if is_zero(a):
            continue
        minor = [row[:j] + row[j + 1:] for row in matrix[1:]]
        term = a * det(minor)
        if j % 2:
            term = -term
        total = term if total is None else total + term
    if total is None:
        return matrix[0][0] * 0
    return total
