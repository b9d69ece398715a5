"""Smith normal form over the integers.

Exact elementary row/column operations with pivoting by minimal absolute
value.  Entries are tracked against a 64-bit bound; exceeding it raises
instead of silently losing precision.  Boundary matrices are +-1-sparse
and the restricted matrices this package feeds in are small, so blow-up
is rare in practice.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import INT_LIMIT, BoundaryMatrix
from .errors import IntegerOverflow


@dataclass(frozen=True)
class SnfResult:
    """Invariant factors d_1 | d_2 | ... with trailing zeros."""

    diagonal: tuple[int, ...]
    rank: int

    def __post_init__(self):
        nonzero = [d for d in self.diagonal if d != 0]
        if len(nonzero) != self.rank:
            raise ValueError("rank disagrees with nonzero diagonal count")
        for a, b in zip(nonzero, nonzero[1:]):
            if b % a != 0:
                raise ValueError(f"diagonal violates divisibility: {a} does not divide {b}")
        if any(d != 0 for d in self.diagonal[self.rank :]):
            raise ValueError("zeros must trail the diagonal")


def _to_int_rows(matrix) -> list[list[int]]:
    if isinstance(matrix, BoundaryMatrix):
        matrix = matrix.to_dense()
    array = np.asarray(matrix)
    if array.ndim != 2:
        if array.size == 0:
            return []
        raise ValueError("expected a 2-d integer matrix")
    if array.dtype.kind == "f":
        if not np.all(array == np.round(array)):
            raise ValueError("matrix entries must be integers")
        array = array.astype(np.int64)
    rows = [[int(v) for v in row] for row in array.tolist()]
    for row in rows:
        for v in row:
            if abs(v) > INT_LIMIT:
                raise IntegerOverflow(f"input entry {v} exceeds 64-bit range")
    return rows


def _check(value: int) -> int:
    if abs(value) > INT_LIMIT:
        raise IntegerOverflow("entry exceeded 64-bit range during reduction")
    return value


def smith_normal_form(matrix) -> SnfResult:
    """Diagonal invariant factors of an integer matrix."""
    a = _to_int_rows(matrix)
    n_rows = len(a)
    n_cols = len(a[0]) if n_rows else 0
    size = min(n_rows, n_cols)
    diagonal = []
    t = 0
    while t < size:
        pivot = None
        best = None
        for i in range(t, n_rows):
            for j in range(t, n_cols):
                v = abs(a[i][j])
                if v and (best is None or v < best):
                    best, pivot = v, (i, j)
        if pivot is None:
            break
        pi, pj = pivot
        a[t], a[pi] = a[pi], a[t]
        for row in a:
            row[t], row[pj] = row[pj], row[t]
        while True:
            if a[t][t] < 0:
                a[t] = [-v for v in a[t]]
            # Reduce the pivot column, re-pivoting on any remainder.
            dirty = False
            for i in range(t + 1, n_rows):
                if a[i][t]:
                    q = a[i][t] // a[t][t]
                    a[i] = [_check(x - q * y) for x, y in zip(a[i], a[t])]
                    if a[i][t]:
                        a[t], a[i] = a[i], a[t]
                        dirty = True
                        break
            if dirty:
                continue
            for j in range(t + 1, n_cols):
                if a[t][j]:
                    q = a[t][j] // a[t][t]
                    for row in a:
                        row[j] = _check(row[j] - q * row[t])
                    if a[t][j]:
                        for row in a:
                            row[t], row[j] = row[j], row[t]
                        dirty = True
                        break
            if dirty:
                continue
            # Pivot must divide every remaining entry for the chain d_i | d_{i+1}.
            offender = next(
                (
                    i
                    for i in range(t + 1, n_rows)
                    if any(a[i][j] % a[t][t] for j in range(t + 1, n_cols))
                ),
                None,
            )
            if offender is None:
                break
            a[t] = [_check(x + y) for x, y in zip(a[t], a[offender])]
        diagonal.append(abs(a[t][t]))
        t += 1
    rank = len(diagonal)
    diagonal.extend([0] * (size - rank))
    return SnfResult(tuple(diagonal), rank)
