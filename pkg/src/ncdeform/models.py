"""Worked examples: Grassmannian NC deformations, R_e, contraction algebras."""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass
from fractions import Fraction

from .algebra import make_signature
from .deformation import AInfinityData, BasisVector, BimoduleDims, InducedOracle
from .errors import ParseError
from .linalg import rank
from .rewriting import Presentation


@dataclass(frozen=True)
class GrassmannSpec:
    """An m-dimensional coordinate subspace of k^n."""

    m: int
    n: int

    def __post_init__(self):
        if not (0 <= self.m <= self.n):
            raise ValueError(f"need 0 <= m <= n, got m={self.m}, n={self.n}")

    @property
    def index_pairs(self) -> list[tuple[int, int]]:
        return [(i, j) for i in range(1, self.m + 1) for j in range(self.m + 1, self.n + 1)]


def grassmann_generator_names(spec: GrassmannSpec) -> dict[tuple[int, int], str]:
    pairs = spec.index_pairs
    if len(pairs) <= 4:
        return dict(zip(pairs, "abcd"))
    return {(i, j): f"a{i}_{j}" for i, j in pairs}


def grassmann_presentation(spec: GrassmannSpec) -> Presentation:
    """Generators a_ij (1 <= i <= m < j <= n) with the commutation relations of the deformed ideal.

    Relations, in order:
      a_ij a_il - a_il a_ij                          (i; j < l)
      a_ij a_kl - a_kl a_ij + a_kj a_il - a_il a_kj  (i < k; j < l)
    """
    names = grassmann_generator_names(spec)
    sig = make_signature(1, [(names[p], 1, 1) for p in spec.index_pairs])
    g = {p: sig.gen(nm) for p, nm in names.items()}
    m, n = spec.m, spec.n
    rels = []
    for i in range(1, m + 1):
        for j, l in itertools.combinations(range(m + 1, n + 1), 2):
            rels.append(g[i, j] * g[i, l] - g[i, l] * g[i, j])
    for i, k in itertools.combinations(range(1, m + 1), 2):
        for j, l in itertools.combinations(range(m + 1, n + 1), 2):
            rels.append(
                g[i, j] * g[k, l] - g[k, l] * g[i, j] + g[k, j] * g[i, l] - g[i, l] * g[k, j]
            )
    return Presentation(sig, rels, 2)


def grassmann_t2_dim(spec: GrassmannSpec) -> int:
    return math.comb(spec.m + 1, 2) * math.comb(spec.n - spec.m, 2)


def grassmann_counts(spec: GrassmannSpec) -> tuple[int, int, int]:
    """(dim T^1, dim T^2, rank of the quadratic relations over Q)."""
    t1 = spec.m * (spec.n - spec.m)
    t2 = grassmann_t2_dim(spec)
    pres = grassmann_presentation(spec)
    relation_rank = rank(f.graded_piece(2)._terms for f in pres.relations)
    if relation_rank != t2:
        raise AssertionError(f"relation rank {relation_rank} != dim T^2 = {t2} for {spec}")
    return t1, t2, relation_rank


def grassmann_dims(spec: GrassmannSpec) -> BimoduleDims:
    return BimoduleDims(1, [[spec.m * (spec.n - spec.m)]], [[grassmann_t2_dim(spec)]])


def grassmann_ainfinity(spec: GrassmannSpec) -> AInfinityData:
    """m_2 table whose dual reproduces grassmann_presentation; no higher products."""
    pres = grassmann_presentation(spec)
    sig = pres.signature
    t1 = [BasisVector(a.name, 1, 1) for a in sig.arrows]
    t2 = [BasisVector(f"z{l}", 1, 1) for l in range(1, len(pres.relations) + 1)]
    m2: dict = {}
    for l, f in enumerate(pres.relations, start=1):
        for p, c in f.terms():
            inputs = tuple(sig.arrows[k].name for k in p[1:])
            m2.setdefault(inputs, {})[f"z{l}"] = c
    return AInfinityData(1, t1, t2, {2: m2} if m2 else {}, max_d=2)


def grassmann_oracle(spec: GrassmannSpec) -> InducedOracle:
    pres = grassmann_presentation(spec)
    return InducedOracle(pres.relations, pres.signature)


_DEFAULT_CONSTANTS = (Fraction(0), Fraction(1), Fraction(-7, 3))


def recentering_identity_check(spec: GrassmannSpec, constants=_DEFAULT_CONSTANTS) -> bool:
    """(u - u0)(v - v0) - (v - v0)(u - u0) == uv - vu for all generator pairs and central constants."""
    pres = grassmann_presentation(spec)
    sig = pres.signature
    if len(sig.arrows) < 2:
        raise ValueError("need at least two generators")
    gens = sig.gens()
    consts = [sig.scalar(c) for c in constants]
    for u, v in itertools.product(gens, repeat=2):
        rhs = u * v - v * u
        for u0, v0 in itertools.product(consts, repeat=2):
            x, y = u - u0, v - v0
            if x * y - y * x != rhs:
                return False
    return True


# contraction algebras

@dataclass(frozen=True)
class DegenerationData:
    """mult[j][i] = multiplicity of C_i in the limit of the generic curve C^t_j."""

    r: int
    mult: tuple

    def __post_init__(self):
        mult = tuple(tuple(int(x) for x in row) for row in self.mult)
        object.__setattr__(self, "mult", mult)
        if self.r < 1:
            raise ValueError("r must be >= 1")
        for j, row in enumerate(mult, start=1):
            if len(row) != self.r:
                raise ValueError(f"row {j} has {len(row)} entries, expected {self.r}")
            if any(x < 0 for x in row):
                raise ValueError(f"row {j} has negative entries")
            if not any(row):
                raise ValueError(f"row {j} is zero")

    @property
    def s(self) -> int:
        return len(self.mult)

    @classmethod
    def from_json(cls, obj) -> "DegenerationData":
        if isinstance(obj, str):
            try:
                obj = json.loads(obj)
            except json.JSONDecodeError as exc:
                raise ParseError(exc.msg, exc.lineno, exc.colno) from None
        try:
            return cls(int(obj["r"]), obj["mult"])
        except (KeyError, TypeError) as exc:
            raise ParseError(f"bad degeneration data: {exc}") from None

    def to_json(self) -> dict:
        return {"r": self.r, "mult": [list(row) for row in self.mult]}


@dataclass(frozen=True)
class ContractionNumerics:
    m: tuple
    n_d: dict
    dim_R: int
    bimodule_dims: tuple


def contraction_numerics(data: DegenerationData) -> ContractionNumerics:
    m = tuple(sum(row) for row in data.mult)
    n_d: dict[int, int] = {}
    for mj in m:
        n_d[mj] = n_d.get(mj, 0) + 1
    n_d = dict(sorted(n_d.items()))
    dim_R = sum(mj * mj for mj in m)
    if dim_R != sum(c * d * d for d, c in n_d.items()):
        raise AssertionError("sum m_j^2 != sum n_d d^2")
    r = data.r
    B = tuple(
        tuple(sum(row[i] * row[k] for row in data.mult) for k in range(r))
        for i in range(r)
    )
    if sum(map(sum, B)) != dim_R:
        raise AssertionError("bimodule dimensions do not add up to dim R")
    return ContractionNumerics(m, n_d, dim_R, B)


def matrix_model_positions(data: DegenerationData) -> list[list[int]]:
    """For each block j, the point index of each of its m_j rows/columns."""
    return [
        [i + 1 for i in range(data.r) for _ in range(row[i])]
        for row in data.mult
    ]


def matrix_model(data: DegenerationData) -> Presentation:
    """r-pointed presentation of prod_j Mat(m_j x m_j) with e_i = sum of the type-i diagonal units.

    Generators are the matrix units E^j_{ab} except one diagonal unit per point,
    which is eliminated through e_i = sum of its diagonal units.
    """
    blocks = matrix_model_positions(data)
    designated = {}
    for j, types in enumerate(blocks):
        for a, i in enumerate(types):
            designated[i] = (j, a)
    specs = []
    unit = {}
    for j, types in enumerate(blocks):
        for a, b in itertools.product(range(len(types)), repeat=2):
            if a == b and designated[types[a]] == (j, a):
                continue
            name = f"u{j + 1}_{a + 1}_{b + 1}"
            specs.append((name, types[a], types[b]))
            unit[j, a, b] = name
    sig = make_signature(data.r, specs)

    def element(j, a, b):
        if (j, a, b) in unit:
            return sig.gen(unit[j, a, b])
        i = blocks[j][a]
        out = sig.idempotent(i)
        for jj, types in enumerate(blocks):
            for aa, t in enumerate(types):
                if t == i and (jj, aa, aa) in unit:
                    out = out - sig.gen(unit[jj, aa, aa])
        return out

    rels = []
    for i in range(1, data.r + 1):
        if i not in designated:
            rels.append(sig.idempotent(i))
    keys = list(unit)
    for (j1, a, b), (j2, c, d) in itertools.product(keys, repeat=2):
        if blocks[j1][b] != blocks[j2][c]:
            continue
        lhs = sig.gen(unit[j1, a, b]) * sig.gen(unit[j2, c, d])
        if j1 == j2 and b == c:
            rels.append(lhs - element(j1, a, d))
        else:
            rels.append(lhs)
    return Presentation(sig, rels, 3)


def trivial_extension_re(r: int) -> Presentation:
    """R_e = k^r + End(k^r) with End(k^r) square zero: arrows e_ij : i -> j, all products vanish."""
    if r < 1:
        raise ValueError("r must be >= 1")
    fmt = "e{}{}" if r < 10 else "e{}_{}"
    specs = [(fmt.format(i, j), i, j) for i in range(1, r + 1) for j in range(1, r + 1)]
    sig = make_signature(r, specs)
    gens = sig.gens()
    rels = [x * y for x in gens for y in gens if not (x * y).is_zero()]
    return Presentation(sig, rels, 2)
