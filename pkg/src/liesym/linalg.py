"""Exact rational linear algebra: reduced row echelon, nullspaces.

Two layers: a dense Fraction implementation for small systems (algebra
bases, change-of-basis checks) and a sparse integer implementation for
the large homogeneous systems produced by determining equations.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Optional


def rref_dense(rows):
    """In-place-free reduced row echelon form; returns (rows, pivot cols)."""
    rows = [list(map(Fraction, r)) for r in rows]
    if not rows:
        return [], []
    ncols = len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = None
        for i in range(r, len(rows)):
            if rows[i][c] != 0:
                pivot = i
                break
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        pv = rows[r][c]
        rows[r] = [v / pv for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def rank_dense(rows) -> int:
    return len(rref_dense(rows)[0])


def nullspace_dense(rows, ncols: int):
    """Canonical nullspace basis (one vector per free column, ascending)."""
    red, pivots = rref_dense(rows) if rows else ([], [])
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        v = [Fraction(0)] * ncols
        v[free] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -red[i][free]
        basis.append(v)
    return basis


def express_in_basis(vectors, target) -> Optional[list]:
    """Exact coefficients c with sum c_i vectors[i] = target, or None.

    Solves the overdetermined system by RREF of the augmented matrix;
    when the vectors are dependent the representation with zero
    coefficients on non-pivot vectors is returned.
    """
    if not vectors:
        return None if any(Fraction(x) != 0 for x in target) else []
    m = len(target)
    aug = []
    for i in range(m):
        aug.append([Fraction(v[i]) for v in vectors] + [Fraction(target[i])])
    red, pivots = rref_dense(aug)
    n = len(vectors)
    if n in pivots:
        return None
    coeffs = [Fraction(0)] * n
    for i, p in enumerate(pivots):
        coeffs[p] = red[i][n]
    return coeffs


def independent(vectors) -> bool:
    if not vectors:
        return True
    return rank_dense(vectors) == len(vectors)


# ---------------------------------------------------------------------------
# Sparse integer rows for large homogeneous systems.


def _normalize_row(row: dict) -> dict:
    if not row:
        return row
    g = 0
    for v in row.values():
        g = math.gcd(g, abs(v))
    lead_col = min(row)
    if row[lead_col] < 0:
        g = -g
    return {c: v // g for c, v in row.items()}


def _int_rows(rows):
    out = []
    seen = set()
    for row in rows:
        items = {c: Fraction(v) for c, v in row.items() if v != 0}
        if not items:
            continue
        den_lcm = 1
        for v in items.values():
            den_lcm = den_lcm * v.denominator // math.gcd(den_lcm, v.denominator)
        introw = _normalize_row({c: int(v * den_lcm) for c, v in items.items()})
        key = tuple(sorted(introw.items()))
        if key not in seen:
            seen.add(key)
            out.append(introw)
    return out


def sparse_rref(rows, ncols: int):
    """RREF of sparse rows (dict col -> rational). Returns
    (pivot_rows: {pivot col -> integer row dict}, pivot cols sorted)."""
    work = _int_rows(rows)
    # index rows by smallest column for candidate lookup
    pivot_rows = {}
    for c in range(ncols):
        candidates = [r for r in work if c in r]
        if not candidates:
            continue
        candidates.sort(key=len)
        piv = candidates[0]
        work.remove(piv)
        pv = piv[c]
        new_work = []
        for row in work:
            if c in row:
                rv = row[c]
                combined = {}
                for col, v in row.items():
                    combined[col] = v * pv
                for col, v in piv.items():
                    nv = combined.get(col, 0) - v * rv
                    if nv:
                        combined[col] = nv
                    else:
                        combined.pop(col, None)
                combined = _normalize_row(combined)
                if combined:
                    new_work.append(combined)
            else:
                new_work.append(row)
        work = new_work
        pivot_rows[c] = piv
    # back substitution: clear pivot columns from earlier pivot rows
    pivots = sorted(pivot_rows)
    for i in range(len(pivots) - 1, -1, -1):
        c = pivots[i]
        piv = pivot_rows[c]
        pv = piv[c]
        for c2 in pivots[:i]:
            row = pivot_rows[c2]
            if c in row:
                rv = row[c]
                combined = {}
                for col, v in row.items():
                    combined[col] = v * pv
                for col, v in piv.items():
                    nv = combined.get(col, 0) - v * rv
                    if nv:
                        combined[col] = nv
                    else:
                        combined.pop(col, None)
                pivot_rows[c2] = _normalize_row(combined)
    return pivot_rows, pivots


def sparse_nullspace(rows, ncols: int):
    """Canonical nullspace basis as Fraction lists, one per free column."""
    pivot_rows, pivots = sparse_rref(rows, ncols)
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        v = [Fraction(0)] * ncols
        v[free] = Fraction(1)
        for c in pivots:
            row = pivot_rows[c]
            if free in row:
                v[c] = Fraction(-row[free], row[c])
        basis.append(v)
    return basis
