"""Exterior powers of matrices at group level (minors) and algebra level (derivations).

Basis of the k-th exterior power: k-subsets of range(m) in lexicographic order.
Integer / Fraction inputs (object arrays) are handled exactly.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import comb

import numpy as np


@lru_cache(maxsize=None)
def subsets(m: int, k: int) -> tuple[tuple[int, ...], ...]:
    return tuple(combinations(range(m), k))


def _check(A: np.ndarray, k: int) -> int:
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {A.shape}")
    m = A.shape[0]
    if not 1 <= k <= m:
        raise ValueError(f"exterior degree k must lie in 1..{m}, got {k}")
    return m


def exact_det(M) -> Fraction:
    """Determinant by Gaussian elimination over the rationals."""
    a = [[Fraction(x) for x in row] for row in M]
    size = len(a)
    det = Fraction(1)
    for c in range(size):
        piv = next((r for r in range(c, size) if a[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        det *= a[c][c]
        for r in range(c + 1, size):
            f = a[r][c] / a[c][c]
            if f:
                for cc in range(c, size):
                    a[r][cc] -= f * a[c][cc]
    return det


def exact_rank(M) -> int:
    a = [[Fraction(x) for x in row] for row in M]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    rank = 0
    for c in range(cols):
        piv = next((r for r in range(rank, rows) if a[r][c] != 0), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        for r in range(rows):
            if r != rank and a[r][c] != 0:
                f = a[r][c] / a[rank][c]
                for cc in range(c, cols):
                    a[r][cc] -= f * a[rank][cc]
        rank += 1
    return rank


@lru_cache(maxsize=None)
def _laplace_plan(m: int, r: int):
    """Index arrays for expanding r x r minors along their first row."""
    prev = {S: a for a, S in enumerate(subsets(m, r - 1))}
    basis = subsets(m, r)
    first = np.array([I[0] for I in basis])
    rest = np.array([prev[I[1:]] for I in basis])
    terms = []
    for p in range(r):
        col = np.array([J[p] for J in basis])
        minor = np.array([prev[J[:p] + J[p + 1:]] for J in basis])
        terms.append((col, minor, -1 if p % 2 else 1))
    return first, rest, terms


def ext_power_group(A, k: int) -> np.ndarray:
    """k-th compound matrix: entry (I, J) is det A[I, J].

    All minors of order r are built from those of order r - 1 by expansion
    along the first row, so each level is a handful of array operations.
    """
    A = np.asarray(A)
    m = _check(A, k)
    if A.dtype != object:
        A = A.astype(np.result_type(A.dtype, np.float64))
    W = A.copy()
    for r in range(2, k + 1):
        first, rest, terms = _laplace_plan(m, r)
        nxt = None
        for col, minor, sign in terms:
            term = A[np.ix_(first, col)] * W[np.ix_(rest, minor)]
            if sign < 0:
                term = -term
            nxt = term if nxt is None else nxt + term
        W = nxt
    return W


@lru_cache(maxsize=None)
def _derivation_pattern(m: int, k: int):
    """Sparse pattern of the derivation action.

    Returns tuples (row, col, src, dst, sign): entry (row, col) gains
    sign * X[dst, src], where basis vector ``col`` has ``src`` replaced by ``dst``.
    """
    basis = subsets(m, k)
    index = {S: a for a, S in enumerate(basis)}
    pattern = []
    for col, J in enumerate(basis):
        members = set(J)
        for pos, src in enumerate(J):
            for dst in range(m):
                if dst != src and dst in members:
                    continue
                new = list(J)
                new[pos] = dst
                # parity of the permutation that sorts ``new``
                sign = 1
                for p in range(k):
                    for q in range(p + 1, k):
                        if new[p] > new[q]:
                            sign = -sign
                pattern.append((index[tuple(sorted(new))], col, src, dst, sign))
    return tuple(pattern)


def ext_power_algebra(X, k: int) -> np.ndarray:
    """Derivation action of X on the k-th exterior power."""
    X = np.asarray(X)
    m = _check(X, k)
    dim = comb(m, k)
    dtype = object if X.dtype == object else np.result_type(X.dtype, np.float64)
    out = np.zeros((dim, dim), dtype=dtype)
    for row, col, src, dst, sign in _derivation_pattern(m, k):
        out[row, col] += sign * X[dst, src]
    return out

