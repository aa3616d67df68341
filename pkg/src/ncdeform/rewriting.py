"""Degree-truncated two-sided ideals in free r-pointed algebras.

Completion is Buchberger/Bergman style: overlap ambiguities between
leading words are resolved in increasing order of overlap length, and
only overlaps of length <= ``degree_bound`` are examined.  Elements are
kept in a single bimodule component e_i A e_j, so leading words of
degree 0 are idempotents and kill every path through their point.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from typing import Sequence

from .algebra import AlgebraSignature, NCPoly, deglex_key
from .errors import DegreeBoundError


class MonomialOrder:
    """Degree-lexicographic order, generator precedence = signature arrow order."""

    kind = "deglex"

    def key(self, p):
        return deglex_key(p)

    def less(self, p, q) -> bool:
        return deglex_key(p) < deglex_key(q)

    def __repr__(self):
        return "MonomialOrder('deglex')"


DEGLEX = MonomialOrder()


class Presentation:
    """Generators, relations and truncation degree N: the algebra A / (I + M^{N+1}).

    Zero relations are dropped and exact duplicates removed, keeping first occurrences.
    """

    __slots__ = ("signature", "relations", "truncation")

    def __init__(self, signature: AlgebraSignature, relations: Sequence[NCPoly] = (), truncation: int = 2):
        if not isinstance(truncation, int) or truncation < 1:
            raise ValueError("truncation degree must be >= 1")
        rels = []
        seen = set()
        for f in relations:
            if f.sig != signature:
                raise ValueError("relation over a different signature")
            if f.is_zero() or f in seen:
                continue
            seen.add(f)
            rels.append(f)
        self.signature = signature
        self.relations = tuple(rels)
        self.truncation = truncation

    def with_relations(self, extra: Sequence[NCPoly], truncation: int | None = None) -> "Presentation":
        return Presentation(
            self.signature,
            list(self.relations) + list(extra),
            self.truncation if truncation is None else truncation,
        )

    def max_relation_degree(self) -> int:
        return max((f.degree() for f in self.relations), default=0)

    def __eq__(self, other):
        if not isinstance(other, Presentation):
            return NotImplemented
        return (
            self.signature == other.signature
            and self.relations == other.relations
            and self.truncation == other.truncation
        )

    def __hash__(self):
        return hash((self.signature, self.relations, self.truncation))

    def __repr__(self):
        return f"Presentation(r={self.signature.r}, gens={len(self.signature.arrows)}, rels={len(self.relations)}, N={self.truncation})"

    def to_text(self) -> str:
        from .textformat import format_presentation

        return format_presentation(self)

    @classmethod
    def from_text(cls, text: str, field=None) -> "Presentation":
        from .textformat import parse_presentation

        return parse_presentation(text, field)


class _Elem:
    # monic element lead - sum(c * t for t, c in rule); i.e. rewrite lead -> rule
    __slots__ = ("lead", "word", "rule", "alive", "idx")

    def __init__(self, lead, rule, idx):
        self.lead = lead
        self.word = lead[1:]
        self.rule = rule
        self.alive = True
        self.idx = idx

    def poly(self, sig) -> NCPoly:
        terms = {t: -c for t, c in self.rule}
        terms[self.lead] = sig.field(1)
        return NCPoly._raw(sig, terms)


class _Rewriter:
    """Mutable rewriting system used during completion and for normal forms."""

    def __init__(self, sig: AlgebraSignature):
        self.sig = sig
        self.elems: list[_Elem] = []
        self.by_word: dict[tuple, _Elem] = {}
        self.by_len: dict[int, dict[tuple, _Elem]] = {}
        self.lengths: list[int] = []
        self.killed: set[int] = set()
        self.zero_elems: dict[int, _Elem] = {}

    def insert(self, e: _Elem):
        self.by_word[e.word] = e
        bucket = self.by_len.setdefault(len(e.word), {})
        bucket[e.word] = e
        if len(bucket) == 1:
            self.lengths = sorted(self.by_len)

    def remove(self, e: _Elem):
        del self.by_word[e.word]
        bucket = self.by_len[len(e.word)]
        del bucket[e.word]
        if not bucket:
            del self.by_len[len(e.word)]
            self.lengths = sorted(self.by_len)

    def find(self, p):
        """Return (elem, u_arrows, v_arrows) for the first reducer of path p, or None."""
        if self.killed:
            if p[0] in self.killed:
                return self.zero_elems[p[0]], None, None
            arrows = self.sig.arrows
            for k in p[1:]:
                if arrows[k].target in self.killed:
                    return self.zero_elems[arrows[k].target], None, None
        w = p[1:]
        n = len(w)
        by_word = self.by_word
        for ell in self.lengths:
            if ell > n:
                break
            for s in range(n - ell + 1):
                e = by_word.get(w[s:s + ell])
                if e is not None:
                    return e, w[:s], w[s + ell:]
        return None

    def reduce(self, terms: dict) -> dict:
        """Full normal form of a term dict (consumed)."""
        out = {}
        heap = [(-len(p), tuple(-x for x in p), p) for p in terms]
        heapq.heapify(heap)
        while heap:
            _, _, p = heapq.heappop(heap)
            c = terms.pop(p, None)
            if c is None:
                continue
            hit = self.find(p)
            if hit is None:
                out[p] = c
                continue
            e, u, v = hit
            if u is None:
                continue
            src = p[0]
            for t, tc in e.rule:
                q = (src,) + u + t[1:] + v
                old = terms.get(q)
                if old is None:
                    terms[q] = c * tc
                    heapq.heappush(heap, (-len(q), tuple(-x for x in q), q))
                else:
                    nv = old + c * tc
                    if nv:
                        terms[q] = nv
                    else:
                        del terms[q]
        return out


def _monic_elem(terms: dict, idx: int) -> _Elem:
    lead = max(terms, key=deglex_key)
    inv = 1 / terms[lead]
    rule = sorted(((t, -c * inv) for t, c in terms.items() if t != lead), key=lambda tc: deglex_key(tc[0]), reverse=True)
    return _Elem(lead, tuple(rule), idx)


class _Completion:
    def __init__(self, sig: AlgebraSignature, bound: int):
        self.sig = sig
        self.bound = bound
        self.rw = _Rewriter(sig)
        # proper prefix/suffix index of leading words; [0] monomial elements, [1] others
        self.prefix = ({}, {})
        self.suffix = ({}, {})
        self.heap = []
        self.counter = 0
        self.added_from_overlaps = 0
        self.overlaps_checked = 0

    def _index(self, e: _Elem, add: bool):
        w = e.word
        kind = 1 if e.rule else 0
        for t in range(1, len(w)):
            for table, key in ((self.prefix[kind], w[:t]), (self.suffix[kind], w[-t:])):
                if add:
                    table.setdefault(key, {})[e.idx] = e
                else:
                    bucket = table.get(key)
                    if bucket is not None:
                        bucket.pop(e.idx, None)

    def add(self, terms: dict, from_overlap: bool = False) -> None:
        rw = self.rw
        pending = [(terms, from_overlap)]
        while pending:
            t, counted = pending.pop(0)
            t = rw.reduce(t)
            if not t:
                continue
            e = _monic_elem(t, len(rw.elems))
            if counted:
                self.added_from_overlaps += 1
            rw.elems.append(e)
            # elements whose leading word is divisible by the new one become redundant
            if len(e.lead) == 1:
                i = e.lead[0]
                rw.killed.add(i)
                rw.zero_elems[i] = e
                victims = [
                    h for h in rw.by_word.values()
                    if h.lead[0] == i or any(self.sig.arrows[k].target == i for k in h.word)
                ]
            else:
                n = len(e.word)
                victims = [
                    h
                    for ell, bucket in rw.by_len.items()
                    if ell > n
                    for h in bucket.values()
                    if _contains(h.word, e.word)
                ]
            for h in sorted(victims, key=lambda h: h.idx):
                h.alive = False
                rw.remove(h)
                self._index(h, add=False)
                pending.append((dict(h.poly(self.sig)._terms), False))
            if len(e.lead) > 1:
                rw.insert(e)
                self._index(e, add=True)
                self._overlaps_of(e)

    def _push(self, length, g, h, t):
        self.counter += 1
        heapq.heappush(self.heap, (length, self.counter, g, h, t))

    def _overlaps_of(self, g: _Elem):
        # pairs (left, right, t): suffix of left.word of length t == prefix of right.word
        w = g.word
        p = len(w)
        kinds = (0, 1) if g.rule else (1,)
        for t in range(1, p):
            for kind in kinds:
                for h in list(self.prefix[kind].get(w[p - t:], {}).values()):
                    L = p + len(h.word) - t
                    if L <= self.bound:
                        self._push(L, g, h, t)
                for h in list(self.suffix[kind].get(w[:t], {}).values()):
                    if h is g:
                        continue
                    L = p + len(h.word) - t
                    if L <= self.bound:
                        self._push(L, h, g, t)

    def s_poly(self, left: _Elem, right: _Elem, t: int) -> dict:
        src = left.lead[0]
        u = left.word[: len(left.word) - t]
        v = right.word[t:]
        out: dict = {}
        for q, c in left.rule:
            key = q + v
            out[key] = out.get(key, 0) + c
        for q, c in right.rule:
            key = (src,) + u + q[1:]
            out[key] = out.get(key, 0) - c
        return {k: c for k, c in out.items() if c != 0}

    def run(self):
        while self.heap:
            _, _, g, h, t = heapq.heappop(self.heap)
            if not (g.alive and h.alive):
                continue
            self.overlaps_checked += 1
            s = self.s_poly(g, h, t)
            if s:
                self.add(s, from_overlap=True)
        self._interreduce_tails()

    def _interreduce_tails(self):
        rw = self.rw
        for e in sorted(rw.elems, key=lambda e: e.idx):
            if not e.alive or not e.rule:
                continue
            tail = rw.reduce({q: c for q, c in e.rule})
            e.rule = tuple(sorted(tail.items(), key=lambda tc: deglex_key(tc[0]), reverse=True))


def _contains(w: tuple, sub: tuple) -> bool:
    n, m = len(w), len(sub)
    for s in range(n - m + 1):
        if w[s:s + m] == sub:
            return True
    return False


class GroebnerBasis:
    """Inter-reduced, truncated completion of a presentation's ideal."""

    def __init__(self, presentation, order, rewriter, degree_bound, added_from_overlaps, overlaps_checked):
        self.presentation = presentation
        self.order = order
        self._rw = rewriter
        self.degree_bound = degree_bound
        self.complete_up_to = degree_bound
        self.added_from_overlaps = added_from_overlaps
        self.overlaps_checked = overlaps_checked
        sig = presentation.signature
        alive = [e for e in rewriter.elems if e.alive]
        alive.sort(key=lambda e: deglex_key(e.lead))
        self.elements = tuple(e.poly(sig) for e in alive)

    @property
    def signature(self):
        return self.presentation.signature

    @property
    def leading_words(self) -> tuple:
        return tuple(f.leading()[0] for f in self.elements)

    def normal_form(self, f: NCPoly) -> NCPoly:
        return normal_form(f, self)

    def is_normal(self, p) -> bool:
        return self._rw.find(p) is None

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __repr__(self):
        return f"GroebnerBasis({len(self.elements)} elements, complete_up_to={self.complete_up_to})"


def complete(pres: Presentation, degree_bound: int | None = None) -> GroebnerBasis:
    """Complete the relations of ``pres`` for all overlaps of length <= degree_bound.

    Normal forms are then well defined for polynomials of degree <= degree_bound
    (for homogeneous relations; inhomogeneous ones may acquire lower-degree
    consequences only from longer overlaps, which are not examined).
    """
    if degree_bound is None:
        degree_bound = pres.truncation
    if degree_bound < pres.max_relation_degree():
        raise DegreeBoundError(
            f"degree bound {degree_bound} is below the relation degree {pres.max_relation_degree()}"
        )
    sig = pres.signature
    comp = _Completion(sig, degree_bound)
    for f in pres.relations:
        for part in f.components().values():
            comp.add(dict(part._terms))
    comp.run()
    return GroebnerBasis(pres, DEGLEX, comp.rw, degree_bound, comp.added_from_overlaps, comp.overlaps_checked)


def normal_form(f: NCPoly, gb: GroebnerBasis) -> NCPoly:
    if f.sig != gb.signature:
        raise ValueError("signature mismatch")
    if f.degree() > gb.complete_up_to:
        raise DegreeBoundError(f"degree {f.degree()} exceeds completion bound {gb.complete_up_to}")
    return NCPoly._raw(f.sig, gb._rw.reduce(dict(f._terms)))


def overlaps(gb: GroebnerBasis, max_length: int | None = None):
    """All overlap ambiguities (left, right, t, word) among the basis elements, by brute force."""
    bound = gb.complete_up_to if max_length is None else max_length
    elems = [f for f in gb.elements if f.degree() >= 1]
    out = []
    for a in elems:
        wa = a.leading()[0][1:]
        for b in elems:
            wb = b.leading()[0][1:]
            for t in range(1, min(len(wa), len(wb))):
                if wa[-t:] == wb[:t] and len(wa) + len(wb) - t <= bound:
                    out.append((a, b, t, wa + wb[t:]))
    return out


def unresolved_overlaps(gb: GroebnerBasis, max_length: int | None = None) -> list:
    """Overlaps whose two one-step rewrites have different normal forms (diamond-lemma check)."""
    sig = gb.signature
    one = sig.field(1)
    bad = []
    for a, b, t, word in overlaps(gb, max_length):
        la, lb = a.leading()[0], b.leading()[0]
        u = word[: len(la) - 1 - t]
        v = word[len(la) - 1:]
        left = a * NCPoly(sig, {(sig.target(la),) + v: one})
        right = NCPoly(sig, {(la[0],) + u: one}) * b
        s = left - right
        if not normal_form(s, gb).is_zero():
            bad.append((a, b, word))
    return bad


def normal_word_counts(gb: GroebnerBasis, degree_bound: int) -> list[list[list[int]]]:
    """counts[d][i-1][j-1] = number of normal words of degree d from i to j."""
    sig = gb.signature
    rw = gb._rw
    r = sig.r
    lengths = rw.lengths
    keep = max(lengths, default=1) - 1
    words = rw.by_word
    out_arrows = {i: [a for a in sig.arrows if a.source == i and a.target not in rw.killed] for i in range(1, r + 1)}
    states: dict = {}
    first = [[0] * r for _ in range(r)]
    for i in range(1, r + 1):
        if i not in rw.killed:
            states[(i, i, ())] = 1
            first[i - 1][i - 1] = 1
    result = [first]
    for _ in range(degree_bound):
        new: dict = {}
        for (src, tgt, suf), cnt in states.items():
            for a in out_arrows[tgt]:
                w = suf + (a.index,)
                reducible = False
                n = len(w)
                for ell in lengths:
                    if ell > n:
                        break
                    if w[n - ell:] in words:
                        reducible = True
                        break
                if reducible:
                    continue
                key = (src, a.target, w[-keep:] if keep else ())
                new[key] = new.get(key, 0) + cnt
        states = new
        M = [[0] * r for _ in range(r)]
        for (src, tgt, _), cnt in states.items():
            M[src - 1][tgt - 1] += cnt
        result.append(M)
    return result


def normal_words(gb: GroebnerBasis, d: int) -> list:
    """Normal paths of degree d, in deglex order."""
    sig = gb.signature
    layer = [(i,) for i in range(1, sig.r + 1) if gb.is_normal((i,))]
    for _ in range(d):
        layer = [
            p + (a.index,)
            for p in layer
            for a in sig.arrows
            if a.source == sig.target(p) and gb.is_normal(p + (a.index,))
        ]
    return sorted(layer, key=deglex_key)


def quotient_dims(pres: Presentation, degree_bound: int, gb: GroebnerBasis | None = None) -> list[list[list[int]]]:
    """Dimension matrices of the graded (filtration) pieces of the quotient, d = 0..degree_bound."""
    if degree_bound < 1:
        raise ValueError("degree bound must be >= 1")
    if gb is None:
        gb = complete(pres, max(degree_bound, pres.max_relation_degree()))
    return normal_word_counts(gb, degree_bound)


def total_by_degree(dims) -> list[int]:
    return [sum(map(sum, M)) for M in dims]


@dataclass(frozen=True)
class Inconclusive:
    """No vanishing degree found up to ``bound``; ``partial_sums[d]`` = dim through degree d."""

    bound: int
    partial_sums: tuple

    def __bool__(self):
        return False


def total_dim_if_finite(pres: Presentation, degree_bound: int):
    """Exact total dimension if some degree <= degree_bound has no normal words, else Inconclusive."""
    dims = quotient_dims(pres, max(degree_bound, 1))
    totals = total_by_degree(dims)[: degree_bound + 1]
    partial = []
    acc = 0
    for d, t in enumerate(totals):
        if t == 0:
            return acc
        acc += t
        partial.append(acc)
    return Inconclusive(degree_bound, tuple(partial))


def abelianize(pres: Presentation) -> Presentation:
    """Add all commutators gh - hg (1-pointed presentations only)."""
    sig = pres.signature
    if sig.r != 1:
        raise ValueError("abelianization is only defined for 1-pointed presentations")
    gens = sig.gens()
    comms = [gens[i] * gens[j] - gens[j] * gens[i] for i in range(len(gens)) for j in range(i + 1, len(gens))]
    return pres.with_relations(comms, max(pres.truncation, 2 if comms else 1))


def dims_report(pres: Presentation, degree_bound: int) -> dict:
    dims = quotient_dims(pres, degree_bound)
    totals = total_by_degree(dims)
    finite = any(t == 0 for t in totals)
    if finite:
        total = sum(totals[: totals.index(0)])
    else:
        total = sum(totals)
    return {
        "degrees": [{"d": d, "dims": M} for d, M in enumerate(dims)],
        "total": total,
        "finite": finite,
    }


def hilbert_polynomial_ring(nvars: int, d: int) -> int:
    """Number of commutative monomials of degree d in nvars variables."""
    if nvars == 0:
        return int(d == 0)
    return math.comb(d + nvars - 1, d)
