"""Shared GF(2) linear algebra kernel.

Matrices are numpy uint8 arrays with entries 0/1.  Used by the gflow
search and by circuit extraction (where recorded row operations become CX
gates).
"""

from __future__ import annotations

from typing import Optional

import numpy as np

__all__ = ["row_reduce", "rank", "solve"]


def row_reduce(m: np.ndarray) -> tuple[np.ndarray, list[tuple[int, int]], list[int]]:
    """Reduced row-echelon form over GF(2).

    Returns ``(rref, ops, pivot_cols)`` where each op ``(src, dst)`` means
    "row dst ^= row src" and replaying the ops on the input reproduces the
    output.  Row swaps are expressed as three xor ops so that every
    operation maps to a single CX gate during extraction.
    """
    a = m.copy().astype(np.uint8)
    rows, cols = a.shape
    ops: list[tuple[int, int]] = []
    pivots: list[int] = []

    def xor(src: int, dst: int) -> None:
        a[dst] ^= a[src]
        ops.append((src, dst))

    r = 0
    for c in range(cols):
        pivot = next((i for i in range(r, rows) if a[i, c]), None)
        if pivot is None:
            continue
        if pivot != r:
            xor(pivot, r)
            xor(r, pivot)
            xor(pivot, r)
        for i in range(rows):
            if i != r and a[i, c]:
                xor(r, i)
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return a, ops, pivots


def rank(m: np.ndarray) -> int:
    return len(row_reduce(m)[2])


def solve(a: np.ndarray, b: np.ndarray) -> Optional[np.ndarray]:
    """One solution x of ``a @ x = b (mod 2)``, or None if inconsistent."""
    rows, cols = a.shape
    aug = np.concatenate([a.astype(np.uint8), b.reshape(-1, 1).astype(np.uint8)], axis=1)
    red, _, pivots = row_reduce(aug)
    if cols in pivots:
        return None
    x = np.zeros(cols, dtype=np.uint8)
    for r, c in enumerate(pivots):
        x[c] = red[r, cols]
    return x
