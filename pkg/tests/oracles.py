"""Independent reference computations used by the tests.

Nothing here calls the rewriting engine: ideal dimensions come from plain
linear algebra over Q on spanning sets, path counts from brute-force
enumeration, and matrix models from explicit matrices.
"""

from __future__ import annotations

import itertools
from fractions import Fraction


def brute_paths(sig, d, i=None, j=None):
    """Every composable arrow sequence of length d, plus idempotents at d = 0."""
    if d == 0:
        pts = range(1, sig.r + 1)
        return [(p,) for p in pts if (i is None or p == i) and (j is None or p == j)]
    out = []
    for seq in itertools.product(sig.arrows, repeat=d):
        if any(a.target != b.source for a, b in zip(seq, seq[1:])):
            continue
        if i is not None and seq[0].source != i:
            continue
        if j is not None and seq[-1].target != j:
            continue
        out.append((seq[0].source,) + tuple(a.index for a in seq))
    return out


def fraction_rank(rows):
    """Rank over Q of sparse rows {column: value}; plain Gaussian elimination."""
    pivots: dict = {}
    rank = 0
    for row in rows:
        row = {k: Fraction(v) for k, v in row.items() if v}
        while row:
            col = min(row)
            if col not in pivots:
                inv = 1 / row[col]
                pivots[col] = {k: v * inv for k, v in row.items()}
                rank += 1
                break
            piv = pivots[col]
            c = row[col]
            for k, v in piv.items():
                nv = row.get(k, 0) - c * v
                if nv:
                    row[k] = nv
                else:
                    row.pop(k, None)
    return rank


def ideal_piece_rank(sig, relations, d):
    """dim over Q of the degree-d part of the two-sided ideal of homogeneous relations."""
    rows = []
    for f in relations:
        k = f.degree()
        for a in range(d - k + 1):
            for u in brute_paths(sig, a):
                for v in brute_paths(sig, d - k - a):
                    g = _word(sig, u) * f * _word(sig, v)
                    if g:
                        rows.append(g._terms)
    return fraction_rank(rows)


def homogeneous_quotient_dims(sig, relations, bound):
    """Total quotient dimension per degree, by rank of the spanning set of the ideal."""
    return [len(brute_paths(sig, d)) - ideal_piece_rank(sig, relations, d) for d in range(bound + 1)]


def _word(sig, p):
    from ncdeform import NCPoly

    return NCPoly(sig, {p: sig.field(1)})


def avoiding_count(alphabet, length, forbidden):
    """Words over alphabet of the given length containing no forbidden factor."""
    n = 0
    for w in itertools.product(alphabet, repeat=length):
        s = "".join(w)
        if not any(f in s for f in forbidden):
            n += 1
    return n


# explicit matrices

def mat_zero(n):
    return [[Fraction(0)] * n for _ in range(n)]


def mat_mul(A, B):
    n = len(A)
    return [[sum((A[i][k] * B[k][j] for k in range(n)), Fraction(0)) for j in range(n)] for i in range(n)]


def mat_add(A, B, c=1):
    return [[a + c * b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def block_unit(sizes, j, a, b):
    """Matrix unit E^j_{ab} inside the block-diagonal algebra prod_j Mat(sizes[j])."""
    n = sum(sizes)
    off = sum(sizes[:j])
    M = mat_zero(n)
    M[off + a][off + b] = Fraction(1)
    return M


def evaluate(f, images, idempotents):
    """Image of an NC polynomial under generator -> matrix, e_i -> idempotent matrix."""
    sig = f.sig
    n = len(next(iter(idempotents.values())))
    out = mat_zero(n)
    for p, c in f._terms.items():
        M = idempotents[p[0]]
        for k in p[1:]:
            M = mat_mul(M, images[sig.arrows[k].name])
        out = mat_add(out, M, c)
    return out
