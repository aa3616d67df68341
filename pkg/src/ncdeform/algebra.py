"""Free r-pointed algebras k^r<<E>> truncated to finite support.

A path is stored as a tuple ``(src, a_1, ..., a_d)`` of ints: the source
point followed by arrow indices (signature declaration order).  The
idempotent e_i is the degree-0 path ``(i,)``.  NC polynomials map paths
to nonzero field elements.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field as dc_field
from typing import Iterable, Iterator

from .fields import QQ

_IDEMPOTENT_RE = re.compile(r"e_(\d+)$")
_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*$")

Path = tuple


@dataclass(frozen=True)
class Arrow:
    name: str
    source: int
    target: int
    slot: int  # index s of this arrow inside E_{source,target}
    index: int  # position in the signature (generator precedence)


@dataclass(frozen=True, eq=False)
class AlgebraSignature:
    r: int
    arrows: tuple
    field: object = QQ
    _by_name: dict = dc_field(default=None, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_by_name", {a.name: a for a in self.arrows})

    def __eq__(self, other):
        if not isinstance(other, AlgebraSignature):
            return NotImplemented
        return (self is other) or (
            self.r == other.r and self.arrows == other.arrows and self.field == other.field
        )

    def __hash__(self):
        return hash((self.r, self.arrows, self.field))

    @property
    def dims(self) -> list[list[int]]:
        D = [[0] * self.r for _ in range(self.r)]
        for a in self.arrows:
            D[a.source - 1][a.target - 1] += 1
        return D

    def arrow(self, name: str) -> Arrow:
        try:
            return self._by_name[name]
        except KeyError:
            raise KeyError(f"unknown generator {name!r}") from None

    def has_arrow(self, name: str) -> bool:
        return name in self._by_name

    def check_point(self, i: int) -> None:
        if not (isinstance(i, int) and 1 <= i <= self.r):
            raise ValueError(f"point index {i} out of range 1..{self.r}")

    # path helpers

    def target(self, p: Path) -> int:
        return self.arrows[p[-1]].target if len(p) > 1 else p[0]

    def path_from_names(self, names: Iterable[str]) -> Path:
        arrows = [self.arrow(n) for n in names]
        if not arrows:
            raise ValueError("empty word; use an idempotent")
        for a, b in zip(arrows, arrows[1:]):
            if a.target != b.source:
                raise ValueError(f"{a.name}*{b.name} is not composable")
        return (arrows[0].source,) + tuple(a.index for a in arrows)

    def path_str(self, p: Path) -> str:
        if len(p) == 1:
            return f"e_{p[0]}"
        return "*".join(self.arrows[k].name for k in p[1:])

    # element constructors

    def zero(self) -> "NCPoly":
        return NCPoly(self, {})

    def idempotent(self, i: int) -> "NCPoly":
        self.check_point(i)
        return NCPoly(self, {(i,): self.field(1)})

    def one(self) -> "NCPoly":
        return NCPoly(self, {(i,): self.field(1) for i in range(1, self.r + 1)})

    def gen(self, name: str) -> "NCPoly":
        a = self.arrow(name)
        return NCPoly(self, {(a.source, a.index): self.field(1)})

    def gens(self) -> list["NCPoly"]:
        return [self.gen(a.name) for a in self.arrows]

    def word(self, *names: str) -> "NCPoly":
        return NCPoly(self, {self.path_from_names(names): self.field(1)})

    def scalar(self, c) -> "NCPoly":
        return self.one() * self.field(c)

    def parse(self, text: str) -> "NCPoly":
        from .textformat import parse_poly

        return parse_poly(text, self)

    def paths(self, d: int, i: int | None = None, j: int | None = None) -> Iterator[Path]:
        """All paths of degree d (optionally restricted to source i / target j), deglex order."""
        starts = [i] if i is not None else range(1, self.r + 1)
        out = []
        for s in starts:
            layer = [(s,)]
            for _ in range(d):
                layer = [
                    p + (a.index,)
                    for p in layer
                    for a in self.arrows
                    if a.source == self.target(p)
                ]
            out.extend(layer)
        if j is not None:
            out = [p for p in out if self.target(p) == j]
        out.sort(key=deglex_key)
        return iter(out)


def deglex_key(p: Path):
    """Sort key for the degree-lexicographic order on paths."""
    return (len(p), p)


def make_signature(r: int, arrow_specs, field=QQ) -> AlgebraSignature:
    """Build a signature from ``(name, source, target)`` triples, kept in the given order."""
    if not isinstance(r, int) or r < 1:
        raise ValueError(f"number of points must be >= 1, got {r!r}")
    arrows = []
    seen = set()
    slots: dict[tuple[int, int], int] = {}
    for k, (name, src, tgt) in enumerate(arrow_specs):
        if not _NAME_RE.match(name) or _IDEMPOTENT_RE.match(name):
            raise ValueError(f"invalid generator name {name!r}")
        if name in seen:
            raise ValueError(f"duplicate generator name {name!r}")
        for v in (src, tgt):
            if not (isinstance(v, int) and 1 <= v <= r):
                raise ValueError(f"point index {v} of {name!r} out of range 1..{r}")
        seen.add(name)
        s = slots.get((src, tgt), 0)
        slots[(src, tgt)] = s + 1
        arrows.append(Arrow(name, src, tgt, s, k))
    return AlgebraSignature(r, tuple(arrows), field)


class NCPoly:
    """Immutable finite linear combination of paths."""

    __slots__ = ("sig", "_terms", "_hash")

    def __init__(self, sig: AlgebraSignature, terms: dict | None = None):
        self.sig = sig
        self._terms = {p: c for p, c in (terms or {}).items() if c != 0}
        self._hash = None

    @classmethod
    def _raw(cls, sig, terms):
        # terms already zero-free and owned by the new object
        obj = cls.__new__(cls)
        obj.sig = sig
        obj._terms = terms
        obj._hash = None
        return obj

    # inspection

    def terms(self) -> list[tuple[Path, object]]:
        """Terms in decreasing deglex order (leading term first)."""
        return sorted(self._terms.items(), key=lambda t: deglex_key(t[0]), reverse=True)

    def coefficient(self, p: Path):
        return self._terms.get(p, self.sig.field(0))

    def support(self) -> set:
        return set(self._terms)

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def degree(self) -> int:
        """Maximal word length; -1 for the zero polynomial."""
        return max((len(p) - 1 for p in self._terms), default=-1)

    def low_degree(self) -> int:
        return min((len(p) - 1 for p in self._terms), default=-1)

    def leading(self) -> tuple[Path, object]:
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        p = max(self._terms, key=deglex_key)
        return p, self._terms[p]

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    # arithmetic

    def _check(self, other: "NCPoly"):
        if self.sig != other.sig:
            raise ValueError("signature mismatch")

    def __add__(self, other):
        if not isinstance(other, NCPoly):
            return NotImplemented
        self._check(other)
        t = dict(self._terms)
        for p, c in other._terms.items():
            v = t.get(p)
            if v is None:
                t[p] = c
            else:
                v = v + c
                if v:
                    t[p] = v
                else:
                    del t[p]
        return NCPoly._raw(self.sig, t)

    def __neg__(self):
        return NCPoly._raw(self.sig, {p: -c for p, c in self._terms.items()})

    def __sub__(self, other):
        if not isinstance(other, NCPoly):
            return NotImplemented
        return self + (-other)

    def scale(self, c) -> "NCPoly":
        c = self.sig.field(c)
        if not c:
            return self.sig.zero()
        return NCPoly._raw(self.sig, {p: v * c for p, v in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, NCPoly):
            return multiply(self, other)
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    def __rmul__(self, other):
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        out = self.sig.one()
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, NCPoly):
            return NotImplemented
        return self.sig == other.sig and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # decompositions

    def component(self, i: int, j: int) -> "NCPoly":
        return component(self, i, j)

    def graded_piece(self, d: int) -> "NCPoly":
        return graded_piece(self, d)

    def truncate(self, k: int) -> "NCPoly":
        """Image in A / M^{k+1}: drop words longer than k."""
        return NCPoly._raw(self.sig, {p: c for p, c in self._terms.items() if len(p) - 1 <= k})

    def components(self) -> dict[tuple[int, int], "NCPoly"]:
        out: dict[tuple[int, int], dict] = {}
        for p, c in self._terms.items():
            out.setdefault((p[0], self.sig.target(p)), {})[p] = c
        return {k: NCPoly._raw(self.sig, v) for k, v in sorted(out.items())}

    def monic(self) -> "NCPoly":
        _, c = self.leading()
        return self.scale(1 / c)

    # text

    def __str__(self):
        from .textformat import format_poly

        return format_poly(self)

    def __repr__(self):
        return f"NCPoly({self})"


def multiply(f: NCPoly, g: NCPoly) -> NCPoly:
    """Product in the path algebra: concatenation of composable paths, zero otherwise."""
    f._check(g)
    sig = f.sig
    by_source: dict[int, list] = {}
    for q, c in g._terms.items():
        by_source.setdefault(q[0], []).append((q[1:], c))
    out: dict = {}
    for p, a in f._terms.items():
        rhs = by_source.get(sig.target(p))
        if not rhs:
            continue
        for tail, b in rhs:
            key = p + tail
            v = out.get(key)
            v = a * b if v is None else v + a * b
            if v:
                out[key] = v
            else:
                out.pop(key, None)
    return NCPoly._raw(sig, out)


def component(f: NCPoly, i: int, j: int) -> NCPoly:
    """e_i f e_j."""
    f.sig.check_point(i)
    f.sig.check_point(j)
    sig = f.sig
    return NCPoly._raw(sig, {p: c for p, c in f._terms.items() if p[0] == i and sig.target(p) == j})


def graded_piece(f: NCPoly, d: int) -> NCPoly:
    if d < 0:
        raise ValueError("degree must be >= 0")
    return NCPoly._raw(f.sig, {p: c for p, c in f._terms.items() if len(p) - 1 == d})


def _matmul(A, B):
    n = len(A)
    return [[sum(A[i][k] * B[k][j] for k in range(n)) for j in range(n)] for i in range(n)]


def free_dim(sig: AlgebraSignature, d: int, i: int, j: int) -> int:
    """Number of degree-d paths from i to j, i.e. the (i, j) entry of D^d."""
    if d < 0:
        raise ValueError("degree must be >= 0")
    sig.check_point(i)
    sig.check_point(j)
    D = sig.dims
    P = [[int(a == b) for b in range(sig.r)] for a in range(sig.r)]
    for _ in range(d):
        P = _matmul(P, D)
    return P[i - 1][j - 1]
