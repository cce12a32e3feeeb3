"""Sparse exact linear algebra over Q (rows are dicts column -> Fraction)."""
from __future__ import annotations

from fractions import Fraction


def rref(rows):
    """Reduced row echelon form; returns {pivot column: normalized row}."""
    pivots: dict = {}
    for row in rows:
        r = {c: Fraction(v) for c, v in row.items() if v}
        for c in sorted(c for c in r if c in pivots):
            v = r.get(c)
            if v:
                for cc, pv in pivots[c].items():
                    nv = r.get(cc, 0) - v * pv
                    if nv:
                        r[cc] = nv
                    else:
                        r.pop(cc, None)
        if not r:
            continue
        p = min(r)
        inv = 1 / r[p]
        r = {c: v * inv for c, v in r.items()}
        for other in pivots.values():
            v = other.get(p)
            if v:
                for cc, pv in r.items():
                    nv = other.get(cc, 0) - v * pv
                    if nv:
                        other[cc] = nv
                    else:
                        other.pop(cc, None)
        pivots[p] = r
    return pivots


def _rows_from_columns(columns):
    rows: dict = {}
    for j, col in enumerate(columns):
        for i, v in col.items():
            if v:
                rows.setdefault(i, {})[j] = v
    return [rows[i] for i in sorted(rows)]


def nullspace(columns, ncols=None):
    """Basis of {x : sum_j x_j * columns[j] = 0}; one vector per free column.

    ``columns[j]`` maps row labels to entries.  Vectors are dicts column ->
    Fraction with a 1 in their free column.
    """
    ncols = len(columns) if ncols is None else ncols
    pivots = rref(_rows_from_columns(columns))
    basis = []
    for f in range(ncols):
        if f in pivots:
            continue
        vec = {f: Fraction(1)}
        for p, row in pivots.items():
            v = row.get(f)
            if v:
                vec[p] = -v
        basis.append(vec)
    return basis


def solve(columns, rhs):
    """Some x with sum_j x_j * columns[j] = rhs, or None if inconsistent."""
    n = len(columns)
    aug = list(columns) + [rhs]
    pivots = rref(_rows_from_columns(aug))
    if n in pivots:
        return None
    x = {}
    for p, row in pivots.items():
        v = row.get(n)
        if v:
            x[p] = v
    return x
