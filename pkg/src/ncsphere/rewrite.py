"""Bounded-degree noncommutative rewriting (Bergman's diamond lemma).

Relations are completed overlap by overlap, in increasing degree, up to a
fixed degree bound.  Nothing beyond that bound is claimed: degenerate
parameter values give algebras whose completion never terminates.

Leading words are chosen in deg-lex order for a configurable letter
precedence (default z0 < z1 < z2 < z3).  Central letters of the alphabet
may occur in the elements being reduced but not in rule leads.
"""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass, field
from math import comb

from .exact import ONE, coerce, is_zero
from .freealg import Alphabet, FreeElt, commutator
from .linalg import SparseEchelon

__all__ = [
    "MonomialOrder",
    "RewriteRule",
    "RewriteSystem",
    "ResourceLimit",
    "complete",
    "normal_form",
    "is_central",
    "normal_word_counts",
    "graded_dimension",
    "oracle_dimension",
    "filtered_dimensions",
]


class ResourceLimit(RuntimeError):
    """Completion exceeded its rule or step allowance."""

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


@dataclass(frozen=True)
class MonomialOrder:
    precedence: tuple = (0, 1, 2, 3)

    def rank(self, letter: int) -> int:
        return self.precedence.index(letter)

    def key(self, word: tuple):
        return (len(word), tuple(self.precedence.index(x) for x in word))

    def heap_key(self, word: tuple):
        # max-heap through heapq: negate everything
        return (-len(word), tuple(-self.precedence.index(x) for x in word))

    def leading_word(self, elt: FreeElt) -> tuple:
        return max(elt.terms, key=self.key)


@dataclass(frozen=True)
class RewriteRule:
    lead: tuple
    rest: dict  # word -> coefficient, so that lead ≡ Σ rest

    def as_elt(self, alphabet) -> FreeElt:
        terms = {self.lead: ONE}
        for w, c in self.rest.items():
            terms[w] = -c
        return FreeElt(terms, alphabet)


@dataclass
class RewriteSystem:
    alphabet: Alphabet
    order: MonomialOrder
    degree_bound: int
    rules: dict = field(default_factory=dict)  # lead word -> rest dict
    confluent_up_to: int = 0
    _lead_lengths: set = field(default_factory=set, repr=False)
    _cache: dict = field(default_factory=dict, repr=False)

    # -- rules ----------------------------------------------------------
    def add_rule(self, lead, rest):
        self.rules[lead] = rest
        self._lead_lengths = {len(w) for w in self.rules}
        n = len(lead)
        for w in [w for w in self._cache if len(w) >= n]:
            del self._cache[w]

    def remove_rule(self, lead):
        del self.rules[lead]
        self._lead_lengths = {len(w) for w in self.rules}
        n = len(lead)
        for w in [w for w in self._cache if len(w) >= n]:
            del self._cache[w]

    def rule_list(self):
        return [RewriteRule(w, self.rules[w]) for w in sorted(self.rules, key=self.order.key)]

    def _split(self, word):
        cen = self.alphabet.central
        if not cen:
            return (), word
        k = 0
        while k < len(word) and word[k] in cen:
            k += 1
        return word[:k], word[k:]

    def find_lead(self, word):
        """First (position, lead) occurring in the noncentral part of ``word``."""
        prefix, core = self._split(word)
        rules = self.rules
        lengths = self._lead_lengths
        for p in range(len(core)):
            for n in lengths:
                if p + n <= len(core):
                    sub = core[p: p + n]
                    if sub in rules:
                        return len(prefix) + p, sub
        return None

    # -- normal forms ---------------------------------------------------
    def _nf_word(self, word) -> dict:
        hit = self._cache.get(word)
        if hit is not None:
            return hit
        order = self.order
        norm = self.alphabet.normalize if self.alphabet.central else None
        result = {}
        pending = {word: ONE}
        heap = [(order.heap_key(word), word)]
        while heap:
            _, w = heapq.heappop(heap)
            c = pending.pop(w, None)
            if c is None or is_zero(c):
                continue
            cached = self._cache.get(w)
            if cached is not None:
                _accumulate(result, cached, c)
                continue
            found = self.find_lead(w)
            if found is None:
                _accumulate(result, {w: ONE}, c)
                continue
            p, lead = found
            left, right = w[:p], w[p + len(lead):]
            for u, d in self.rules[lead].items():
                nw = left + u + right
                if norm is not None:
                    nw = norm(nw)
                v = pending.get(nw)
                if v is None:
                    pending[nw] = c * d
                    heapq.heappush(heap, (order.heap_key(nw), nw))
                else:
                    v = v + c * d
                    pending[nw] = v
        self._cache[word] = result
        return result

    def reduce_terms(self, terms: dict) -> dict:
        out = {}
        for w, c in terms.items():
            _accumulate(out, self._nf_word(w), c)
        return out

    def normal_form(self, x: FreeElt) -> FreeElt:
        if x.alphabet != self.alphabet:
            raise ValueError("element and rewrite system use different alphabets")
        if x.degree() > self.degree_bound:
            raise ValueError(
                f"degree {x.degree()} exceeds the rewrite system's bound {self.degree_bound}"
            )
        return FreeElt._make(self.reduce_terms(x.terms), self.alphabet)

    # -- certificates ---------------------------------------------------
    def overlaps(self, max_len=None):
        """All overlap ambiguities (word, lead1, lead2, shift) up to ``max_len``."""
        max_len = self.degree_bound if max_len is None else max_len
        leads = list(self.rules)
        for a in leads:
            for b in leads:
                for k in range(1, min(len(a), len(b))):
                    if a[len(a) - k:] == b[:k] and len(a) + len(b) - k <= max_len:
                        yield a + b[k:], a, b, len(a) - k

    def check_confluence(self, max_len=None):
        """Re-resolve every overlap ambiguity; return the list of failures."""
        bad = []
        for w, a, b, s in self.overlaps(max_len):
            left = _shift_terms(self.rules[a], (), w[len(a):])
            right = _shift_terms(self.rules[b], w[:s], ())
            diff = dict(self.reduce_terms(left))
            _accumulate(diff, self.reduce_terms(right), coerce(-1))
            if diff:
                bad.append((w, diff))
        return bad

    def to_json(self):
        from .serialize import scalar_to_json

        return {
            "alphabet": list(self.alphabet.names),
            "degree_bound": self.degree_bound,
            "confluent_up_to": self.confluent_up_to,
            "rules": [
                {
                    "lead": self.alphabet.render_word(r.lead),
                    "tail": [
                        {"word": self.alphabet.render_word(w), "coeff": scalar_to_json(c)}
                        for w, c in sorted(r.rest.items(), key=lambda t: self.order.key(t[0]))
                    ],
                }
                for r in self.rule_list()
            ],
        }


def _accumulate(acc, terms, c):
    for k, v in terms.items():
        x = acc.get(k)
        x = c * v if x is None else x + c * v
        if is_zero(x):
            acc.pop(k, None)
        else:
            acc[k] = x


def _shift_terms(terms, left, right):
    return {left + w + right: c for w, c in terms.items()}


def complete(relations, degree_bound: int, order: MonomialOrder | None = None,
             budget=None, max_rules: int = 20000) -> RewriteSystem:
    """Complete ``relations`` to a system confluent on words of length ≤ degree_bound."""
    relations = [r for r in relations if not r.is_zero()]
    if not relations:
        raise ValueError("complete() needs at least one nonzero relation")
    alphabet = relations[0].alphabet
    order = order or MonomialOrder(tuple(range(len(alphabet))))
    rs = RewriteSystem(alphabet, order, degree_bound)
    counter = itertools.count()
    queue = []
    for r in relations:
        if r.alphabet != alphabet:
            raise ValueError("relations over different alphabets")
        lead = order.leading_word(r)
        if any(x in alphabet.central for x in lead):
            raise ValueError("rule leads may not contain central letters")
        heapq.heappush(queue, (r.degree(), next(counter), dict(r.terms)))
    while queue:
        if budget is not None:
            budget.check()
        d, _, terms = heapq.heappop(queue)
        if d > degree_bound:
            continue
        g = rs.reduce_terms(terms)
        if not g:
            continue
        lead = max(g, key=order.key)
        if any(x in alphabet.central for x in lead):
            raise ValueError("completion produced a lead with a central letter")
        inv = 1 / coerce(g[lead])
        rest = {w: -(c * inv) for w, c in g.items() if w != lead}
        # leads that contain the new lead become reducible: requeue them
        for old in [w for w in rs.rules if len(w) > len(lead) and _contains(w, lead)]:
            old_terms = {old: ONE}
            _accumulate(old_terms, rs.rules[old], coerce(-1))
            rs.remove_rule(old)
            heapq.heappush(queue, (len(old), next(counter), old_terms))
        rs.add_rule(lead, rest)
        if len(rs.rules) > max_rules:
            raise ResourceLimit(f"more than {max_rules} rules", partial=rs)
        for other in list(rs.rules):
            for a, b in ((lead, other), (other, lead)) if other != lead else ((lead, lead),):
                for k in range(1, min(len(a), len(b))):
                    if a[len(a) - k:] != b[:k]:
                        continue
                    w = a + b[k:]
                    if len(w) > degree_bound:
                        continue
                    s = len(a) - k
                    sterm = _shift_terms(rs.rules[a], (), w[len(a):])
                    _accumulate(sterm, _shift_terms(rs.rules[b], w[:s], ()), coerce(-1))
                    heapq.heappush(queue, (len(w), next(counter), sterm))
    rs.confluent_up_to = degree_bound
    return rs


def _contains(word, sub):
    n = len(sub)
    return any(word[i: i + n] == sub for i in range(len(word) - n + 1))


def normal_form(x: FreeElt, rs: RewriteSystem) -> FreeElt:
    return rs.normal_form(x)


def is_central(x: FreeElt, rs: RewriteSystem):
    """Return (flag, certificate) where the certificate maps each generator to NF([x, g])."""
    if x.degree() + 1 > rs.degree_bound:
        raise ValueError("degree bound too small for the centrality test")
    cert = {}
    for i, name in enumerate(rs.alphabet.names):
        if i in rs.alphabet.central:
            continue
        g = FreeElt.gen(i, rs.alphabet)
        cert[name] = rs.normal_form(commutator(x, g))
    return all(v.is_zero() for v in cert.values()), cert


def normal_word_counts(rs: RewriteSystem, n_max: int | None = None):
    """Number of normal words of each length 0..n_max."""
    n_max = rs.degree_bound if n_max is None else n_max
    if rs.alphabet.central:
        raise ValueError("normal-word counting assumes no central letters")
    letters = range(len(rs.alphabet))
    leads = set(rs.rules)
    lengths = sorted({len(w) for w in leads})
    counts = [0] * (n_max + 1)

    def walk(word):
        counts[len(word)] += 1
        if len(word) == n_max:
            return
        for x in letters:
            w = word + (x,)
            if any(len(w) >= n and w[len(w) - n:] in leads for n in lengths):
                continue
            walk(w)

    walk(())
    return counts


def graded_dimension(relations, n: int, order=None, budget=None) -> int:
    """dim A_n by counting normal words of a completed system."""
    rs = complete(relations, max(n, 2), order, budget)
    return normal_word_counts(rs, n)[n]


def oracle_dimension(relations, n: int, budget=None) -> int:
    """dim A_n = 4^n - rank of span{u·r·v}: plain linear algebra, no rewriting.

    Words are handled as raw tuples; relations must be homogeneous.
    """
    if not relations:
        raise ValueError("need relations")
    size = len(relations[0].alphabet)
    ech = SparseEchelon(budget)
    for r in relations:
        if r.is_zero():
            continue
        if not r.is_homogeneous():
            raise ValueError("the oracle handles homogeneous relations only")
        d = r.degree()
        if d > n:
            continue
        for i in range(n - d + 1):
            for u in itertools.product(range(size), repeat=i):
                for v in itertools.product(range(size), repeat=n - d - i):
                    ech.add({u + w + v: c for w, c in r.terms.items()})
    return size ** n - len(ech)


def filtered_dimensions(relations_inhom, n_max: int, order=None, budget=None):
    """Counts of normal words of length ≤ n for an inhomogeneous presentation.

    These are dimensions of the filtration pieces only when the bounded
    completion happens to be a full Groebner basis up to ``n_max``; they
    are reported, not asserted.
    """
    rs = complete(relations_inhom, n_max, order, budget)
    counts = normal_word_counts(rs, n_max)
    return list(itertools.accumulate(counts)), rs


def commutative_dims(n_max: int, nvars: int = 4):
    return [comb(n + nvars - 1, nvars - 1) for n in range(n_max + 1)]
