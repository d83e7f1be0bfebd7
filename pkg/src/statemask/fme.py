"""Fourier-Motzkin elimination for systems ``A z <= B``.

The right-hand side may be a matrix: each row of ``B`` is then a vector of
coefficients over a symbolic basis (e.g. mutual-information terms), so the
projection is computed once and evaluated for many numeric instances.
Arithmetic is exact (``fractions.Fraction``).
"""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

import numpy as np


def _frac(x) -> Fraction:
    # numpy scalars are not accepted by Fraction directly; floats convert exactly
    return Fraction(x.item() if hasattr(x, "item") else x)


def _row(coeffs, rhs):
    return tuple(map(_frac, coeffs)), tuple(map(_frac, rhs))


def _normalize(row):
    coeffs, rhs = row
    scale = max((abs(c) for c in coeffs), default=Fraction(0))
    if scale == 0:
        return row
    return tuple(c / scale for c in coeffs), tuple(r / scale for r in rhs)


def eliminate(rows, col: int):
    """Eliminate one column; returns the projected rows (column kept as zero)."""
    pos, neg, zero = [], [], []
    for row in rows:
        c = row[0][col]
        (pos if c > 0 else neg if c < 0 else zero).append(row)
    out = list(zero)
    for pc, pr in pos:
        for nc, nr in neg:
            wp, wn = 1 / pc[col], 1 / -nc[col]
            coeffs = tuple(wp * a + wn * b for a, b in zip(pc, nc))
            rhs = tuple(wp * a + wn * b for a, b in zip(pr, nr))
            out.append((coeffs, rhs))
    return out


def fourier_motzkin(A, B, eliminate_cols: Sequence[int]):
    """Project ``{z : A z <= B}`` onto the columns not in ``eliminate_cols``.

    Parameters
    ----------
    A : (m, n) array-like
        Constraint coefficients.
    B : (m,) or (m, k) array-like
        Right-hand sides; a 2-D ``B`` is a symbolic right-hand side.
    eliminate_cols : sequence of int
        Columns of ``A`` to eliminate, in order.

    Returns
    -------
    A_out : (p, n - len(eliminate_cols)) ndarray of float
    B_out : (p,) or (p, k) ndarray of float
        Rows with all-zero coefficients are kept only when their right-hand
        side is not identically zero (they encode feasibility conditions).
    """
    A = np.asarray(A)
    B = np.asarray(B)
    flat = B.ndim == 1
    B2 = B[:, None] if flat else B
    rows = [_row(a, b) for a, b in zip(A, B2)]
    for col in eliminate_cols:
        rows = eliminate(rows, col)
        seen, kept = set(), []
        for r in map(_normalize, rows):
            if r not in seen:
                seen.add(r)
                kept.append(r)
        rows = kept
    keep_cols = [j for j in range(A.shape[1]) if j not in set(eliminate_cols)]
    out_rows = []
    for coeffs, rhs in rows:
        c = [coeffs[j] for j in keep_cols]
        if all(x == 0 for x in c) and all(x == 0 for x in rhs):
            continue
        out_rows.append((c, rhs))
    A_out = np.array([[float(x) for x in c] for c, _ in out_rows]).reshape(-1, len(keep_cols))
    B_out = np.array([[float(x) for x in r] for _, r in out_rows]).reshape(-1, B2.shape[1])
    return A_out, (B_out[:, 0] if flat else B_out)
