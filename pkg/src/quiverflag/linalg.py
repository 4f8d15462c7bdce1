"""Exact rank and row reduction over the rationals."""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence

Matrix = tuple[tuple[Fraction, ...], ...]


def to_matrix(rows: Sequence[Sequence]) -> Matrix:
    return tuple(tuple(Fraction(x) for x in row) for row in rows)


def _integer_rows(rows: Sequence[Sequence]) -> list[list[int]]:
    out = []
    for row in rows:
        fracs = [Fraction(x) for x in row]
        den = 1
        for f in fracs:
            den = den * f.denominator // gcd(den, f.denominator)
        out.append([int(f * den) for f in fracs])
    return out


def rank(rows: Sequence[Sequence]) -> int:
    """Rank by fraction-free (Bareiss) elimination on cleared denominators."""
    m = _integer_rows(rows)
    if not m or not m[0]:
        return 0
    nrows, ncols = len(m), len(m[0])
    r = 0
    prev = 1
    for c in range(ncols):
        pivot = next((i for i in range(r, nrows) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        p = m[r][c]
        for i in range(r + 1, nrows):
            f = m[i][c]
            m[i] = [(p * m[i][j] - f * m[r][j]) // prev for j in range(ncols)]
        prev = p
        r += 1
        if r == nrows:
            break
    return r


def rref(rows: Sequence[Sequence]) -> tuple[Matrix, tuple[int, ...]]:
    """Reduced row echelon form and pivot columns."""
    m = [[Fraction(x) for x in row] for row in rows]
    pivots: list[int] = []
    if not m:
        return (), ()
    nrows, ncols = len(m), len(m[0])
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, nrows) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(nrows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return tuple(tuple(row) for row in m), tuple(pivots)


def sparse_rank(columns: list[dict[int, int]]) -> int:
    """Rank of an integer matrix given as sparse columns ``{row: value}``.

    Suited to simplicial boundary matrices: entries stay small because each
    reduced column is divided by its content.
    """
    pivots: dict[int, dict[int, int]] = {}
    r = 0
    for col in columns:
        col = {k: v for k, v in col.items() if v}
        while col:
            low = max(col)
            other = pivots.get(low)
            if other is None:
                pivots[low] = col
                r += 1
                break
            a, b = col[low], other[low]
            merged = {k: b * v for k, v in col.items()}
            for k, v in other.items():
                merged[k] = merged.get(k, 0) - a * v
            col = {k: v for k, v in merged.items() if v}
            if col:
                g = 0
                for v in col.values():
                    g = gcd(g, v)
                if g > 1:
                    col = {k: v // g for k, v in col.items()}
    return r
