"""Semi-universal deformation base algebras from tangent/obstruction data.

Two routes to the relations of T^(T^1)^* / (m^*((T^2)^*)):

* ``dualize_products`` reads them off a table of A-infinity products
  m_d : (T^1)^{(x)d} -> T^2 in one shot;
* ``lift_obstructions`` builds them degree by degree from an obstruction
  oracle, starting from s_{1,l} = 0 and refining s_{k,l} -> s_{k+1,l}.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .algebra import AlgebraSignature, NCPoly, make_signature
from .errors import MalformedTableError, OracleConsistencyError, ParseError
from .fields import QQ
from .rewriting import Presentation, quotient_dims


def _square(rows, r, what):
    rows = tuple(tuple(int(x) for x in row) for row in rows)
    if len(rows) != r or any(len(row) != r for row in rows):
        raise ValueError(f"{what} must be an {r}x{r} matrix")
    if any(x < 0 for row in rows for x in row):
        raise ValueError(f"{what} has negative entries")
    return rows


@dataclass(frozen=True)
class BimoduleDims:
    """dim T^1_{ij} and dim T^2_{ij}."""

    r: int
    t1: tuple
    t2: tuple

    def __post_init__(self):
        if self.r < 1:
            raise ValueError("r must be >= 1")
        object.__setattr__(self, "t1", _square(self.t1, self.r, "t1"))
        object.__setattr__(self, "t2", _square(self.t2, self.r, "t2"))

    @property
    def total_t1(self) -> int:
        return sum(map(sum, self.t1))

    @property
    def total_t2(self) -> int:
        return sum(map(sum, self.t2))

    def t2_components(self) -> list[tuple[int, int]]:
        """(source, target) of each obstruction basis vector z_l, row-major order."""
        return [
            (i + 1, j + 1)
            for i in range(self.r)
            for j in range(self.r)
            for _ in range(self.t2[i][j])
        ]

    @classmethod
    def for_relations(cls, sig: AlgebraSignature, relations: Sequence[NCPoly]) -> "BimoduleDims":
        """Dimensions for an obstruction space with one basis vector per relation.

        Relations are listed in the order they are to be matched with z_l, which
        must agree with row-major component order.
        """
        t2 = [[0] * sig.r for _ in range(sig.r)]
        comps = []
        for f in relations:
            parts = list(f.components())
            if len(parts) > 1:
                raise ValueError("relation spans several bimodule components")
            i, j = parts[0] if parts else (1, 1)
            t2[i - 1][j - 1] += 1
            comps.append((i, j))
        if comps != sorted(comps):
            raise ValueError("relations must be ordered by bimodule component")
        return cls(sig.r, sig.dims, t2)


@dataclass(frozen=True)
class BasisVector:
    name: str
    src: int
    tgt: int


class AInfinityData:
    """Multiplication tables m_d on chosen bases of T^1 and T^2.

    ``products`` maps d to {(x_1, ..., x_d): {z: coeff}} with basis names as keys.
    ``max_d`` (D) is the highest product supplied; higher ones are taken to be zero.
    """

    def __init__(self, r: int, t1_basis, t2_basis, products=None, max_d: int | None = None, field=QQ):
        self.r = r
        self.t1_basis = tuple(BasisVector(*b) if not isinstance(b, BasisVector) else b for b in t1_basis)
        self.t2_basis = tuple(BasisVector(*b) if not isinstance(b, BasisVector) else b for b in t2_basis)
        self.field = field
        self.products: dict[int, dict[tuple, dict[str, object]]] = {}
        for d, table in (products or {}).items():
            self.products[d] = {tuple(k): {z: field(c) for z, c in v.items()} for k, v in table.items()}
        top = max((d for d, t in self.products.items() if t), default=2)
        self.max_d = top if max_d is None else max_d
        if self.max_d < 2:
            raise MalformedTableError("products start at d = 2")
        if self.max_d < top:
            raise MalformedTableError(f"max_d = {self.max_d} but products of degree {top} are given")

    @property
    def dims(self) -> BimoduleDims:
        t1 = [[0] * self.r for _ in range(self.r)]
        t2 = [[0] * self.r for _ in range(self.r)]
        for b in self.t1_basis:
            t1[b.src - 1][b.tgt - 1] += 1
        for b in self.t2_basis:
            t2[b.src - 1][b.tgt - 1] += 1
        return BimoduleDims(self.r, t1, t2)

    def signature(self) -> AlgebraSignature:
        """Dual basis of T^1 as arrows, keeping the T^1_{ij} quiver shape (i -> j)."""
        return make_signature(self.r, [(b.name, b.src, b.tgt) for b in self.t1_basis], self.field)

    def entries(self):
        """Yield (d, inputs, z, coeff) for every nonzero table entry, in deterministic order."""
        for d in sorted(self.products):
            for inputs in sorted(self.products[d]):
                for z, c in sorted(self.products[d][inputs].items()):
                    if c != 0:
                        yield d, inputs, z, c

    def validate(self) -> None:
        t1 = {b.name: b for b in self.t1_basis}
        t2 = {b.name: b for b in self.t2_basis}
        if len(t1) != len(self.t1_basis) or len(t2) != len(self.t2_basis):
            raise MalformedTableError("duplicate basis names")
        for b in self.t1_basis + self.t2_basis:
            if not (1 <= b.src <= self.r and 1 <= b.tgt <= self.r):
                raise MalformedTableError(f"basis vector {b.name!r} has a point index out of range")
        for d, inputs, z, c in self.entries():
            if d < 2 or len(inputs) != d:
                raise MalformedTableError(f"m_{d} entry with {len(inputs)} inputs")
            if z not in t2:
                raise MalformedTableError(f"unknown obstruction basis vector {z!r}")
            try:
                xs = [t1[n] for n in inputs]
            except KeyError as exc:
                raise MalformedTableError(f"unknown tangent basis vector {exc.args[0]!r}") from None
            for x, y in zip(xs, xs[1:]):
                if x.tgt != y.src:
                    raise MalformedTableError(f"m_{d}{inputs} is not composable but has a nonzero entry")
            if (xs[0].src, xs[-1].tgt) != (t2[z].src, t2[z].tgt):
                raise MalformedTableError(f"m_{d}{inputs} -> {z}: component mismatch")

    # JSON

    @classmethod
    def from_json(cls, obj, field=QQ) -> "AInfinityData":
        if isinstance(obj, str):
            try:
                obj = json.loads(obj)
            except json.JSONDecodeError as exc:
                raise ParseError(exc.msg, exc.lineno, exc.colno) from None
        try:
            r = int(obj["r"])
            t1 = [BasisVector(str(b["name"]), int(b["src"]), int(b["tgt"])) for b in obj["t1_basis"]]
            t2 = [BasisVector(str(b["name"]), int(b["src"]), int(b["tgt"])) for b in obj["t2_basis"]]
            products: dict = {}
            for p in obj.get("products", []):
                d = int(p["d"])
                inputs = tuple(p["inputs"])
                if len(inputs) != d:
                    raise MalformedTableError(f"m_{d} entry with {len(inputs)} inputs")
                coeff = Fraction(str(p.get("coeff", "1")))
                cell = products.setdefault(d, {}).setdefault(inputs, {})
                if p["output"] in cell:
                    raise MalformedTableError(f"duplicate entry m_{d}{inputs} -> {p['output']}")
                cell[p["output"]] = coeff
            max_d = obj.get("max_d")
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, MalformedTableError):
                raise
            raise ParseError(f"bad A-infinity data: {exc}") from None
        return cls(r, t1, t2, products, None if max_d is None else int(max_d), field)

    def to_json(self) -> dict:
        return {
            "r": self.r,
            "t1_basis": [{"name": b.name, "src": b.src, "tgt": b.tgt} for b in self.t1_basis],
            "t2_basis": [{"name": b.name, "src": b.src, "tgt": b.tgt} for b in self.t2_basis],
            "products": [
                {"d": d, "inputs": list(inputs), "output": z, "coeff": self.field.format(c)}
                for d, inputs, z, c in self.entries()
            ],
            "max_d": self.max_d,
        }


def dual_relations(a: AInfinityData, sig: AlgebraSignature | None = None) -> list[NCPoly]:
    """s_l = sum_d sum_w <m_d(w), z_l> w^*, one per T^2 basis vector (zeros kept)."""
    a.validate()
    sig = sig or a.signature()
    acc = {b.name: {} for b in a.t2_basis}
    for d, inputs, z, c in a.entries():
        p = sig.path_from_names(inputs)
        cell = acc[z]
        cell[p] = cell.get(p, 0) + c
    return [NCPoly(sig, acc[b.name]) for b in a.t2_basis]


def dualize_products(a: AInfinityData) -> Presentation:
    """Presentation of the base algebra, correct modulo degree max_d + 1."""
    sig = a.signature()
    return Presentation(sig, dual_relations(a, sig), a.max_d)


class ObstructionOracle:
    """Degree-by-degree refinement of the obstruction relations.

    ``oracle(relations, k)`` receives s_{k,1..N} (degree <= k) and returns
    s_{k+1,1..N} (degree <= k+1), agreeing with the input modulo M^{k+1}.
    """

    signature: AlgebraSignature
    # (i, j) of each z_l in relation order; None means the row-major order of dims.t2
    t2_components: list | None = None

    def __call__(self, relations: list[NCPoly], k: int) -> list[NCPoly]:
        raise NotImplementedError


class InducedOracle(ObstructionOracle):
    """Oracle returning truncations of a fixed relation set."""

    def __init__(self, relations: Sequence[NCPoly], signature: AlgebraSignature | None = None):
        self.relations = list(relations)
        if signature is None:
            if not self.relations:
                raise ValueError("signature required for an empty relation set")
            signature = self.relations[0].sig
        self.signature = signature

    def __call__(self, relations, k):
        return [f.truncate(k + 1) for f in self.relations]


class AInfinityOracle(ObstructionOracle):
    """Adds the dual of m_{k+1} to each s_{k,l}."""

    def __init__(self, a: AInfinityData):
        a.validate()
        self.data = a
        self.signature = a.signature()
        self._index = {b.name: l for l, b in enumerate(a.t2_basis)}
        self.t2_components = [(b.src, b.tgt) for b in a.t2_basis]

    def __call__(self, relations, k):
        sig = self.signature
        d = k + 1
        extra = [dict() for _ in relations]
        for inputs, out in sorted(self.data.products.get(d, {}).items()):
            p = sig.path_from_names(inputs)
            for z, c in out.items():
                cell = extra[self._index[z]]
                cell[p] = cell.get(p, 0) + c
        return [s + NCPoly(sig, e) for s, e in zip(relations, extra)]


class FunctionOracle(ObstructionOracle):
    def __init__(self, signature: AlgebraSignature, fn: Callable[[list, int], list]):
        self.signature = signature
        self.fn = fn

    def __call__(self, relations, k):
        return self.fn(relations, k)


def lift_relations(dims: BimoduleDims, oracle: ObstructionOracle, degree_bound: int, verify: bool = False) -> list[NCPoly]:
    """Run the lifting loop and return s_{degree_bound, l} for l = 1..dim T^2."""
    if degree_bound < 2:
        raise ValueError("degree bound must be >= 2")
    sig = oracle.signature
    if sig.r != dims.r or tuple(map(tuple, sig.dims)) != dims.t1:
        raise ValueError("oracle signature does not match dim T^1")
    comps = dims.t2_components()
    declared = getattr(oracle, "t2_components", None)
    if declared is not None:
        declared = [tuple(c) for c in declared]
        if sorted(declared) != comps:
            raise ValueError("oracle's obstruction components do not match dim T^2")
        comps = declared
    s = [sig.zero() for _ in comps]
    for k in range(1, degree_bound):
        new = list(oracle(list(s), k))
        if len(new) != len(s):
            raise OracleConsistencyError(f"oracle returned {len(new)} relations, expected {len(s)}")
        for l, (f, g) in enumerate(zip(new, s)):
            if not isinstance(f, NCPoly) or f.sig != sig:
                raise OracleConsistencyError(f"s_{k + 1},{l + 1} is not a polynomial over the tangent algebra")
            if f.degree() > k + 1:
                raise OracleConsistencyError(f"s_{k + 1},{l + 1} has degree {f.degree()} > {k + 1}")
            if f.truncate(k) != g:
                raise OracleConsistencyError(f"s_{k + 1},{l + 1} disagrees with s_{k},{l + 1} modulo M^{k + 1}")
            i, j = comps[l]
            if f.component(i, j) != f:
                raise OracleConsistencyError(f"s_{k + 1},{l + 1} leaves the component ({i},{j}) of z_{l + 1}")
        s = new
        if verify and not _nakayama_step(sig, s, k + 1):
            raise OracleConsistencyError(f"Nakayama check failed at degree {k + 1}")
    return s


def _nakayama_step(sig, gens, k):
    # (s) + M(s) + (s)M must equal (s) in A / M^{k+1}
    gens = [f for f in gens if f]
    arrows = sig.gens()
    bigger = list(gens) + [x * f for f in gens for x in arrows] + [f * x for f in gens for x in arrows]
    return nakayama_reduce(bigger, gens, Presentation(sig, [], k))


def lift_obstructions(dims: BimoduleDims, oracle: ObstructionOracle, degree_bound: int, verify: bool = False) -> Presentation:
    s = lift_relations(dims, oracle, degree_bound, verify)
    return Presentation(oracle.signature, s, degree_bound)


def nakayama_reduce(ideal_gens: Sequence[NCPoly], candidate_gens: Sequence[NCPoly], pres: Presentation) -> bool:
    """Whether the candidates generate the same ideal as ideal_gens modulo M^{N+1}, N = pres.truncation.

    Compared through the quotient dimensions in every degree <= N.
    """
    N = pres.truncation
    full = pres.with_relations([f.truncate(N) for f in ideal_gens])
    cand = pres.with_relations([f.truncate(N) for f in candidate_gens])
    return quotient_dims(full, N) == quotient_dims(cand, N)


def two_path_agreement(a: AInfinityData, degree_bound: int):
    """quotient_dims of dualize_products(a) and of the lifted presentation, and whether they agree."""
    one_shot = dualize_products(a)
    lifted = lift_obstructions(a.dims, AInfinityOracle(a), degree_bound)
    da = quotient_dims(one_shot, degree_bound)
    db = quotient_dims(lifted, degree_bound)
    return da == db, da, db, lifted
