"""Exact Gaussian elimination on sparse rows."""

from __future__ import annotations


def echelon(rows):
    """Row-reduce sparse rows (dicts column -> coeff); return the pivot rows, keyed by pivot column."""
    pivots: dict = {}
    for row in rows:
        v = {k: c for k, c in row.items() if c != 0}
        while v:
            col = max(v)
            piv = pivots.get(col)
            if piv is None:
                inv = 1 / v[col]
                pivots[col] = {k: c * inv for k, c in v.items()}
                break
            f = v[col]
            for k, c in piv.items():
                nv = v.get(k, 0) - f * c
                if nv:
                    v[k] = nv
                else:
                    v.pop(k, None)
    return pivots


def rank(rows) -> int:
    return len(echelon(rows))
