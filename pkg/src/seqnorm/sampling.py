"""Seeded random matrix samplers for the implication and block-form sweeps.

Entries are dyadic (multiples of ``1/levels`` with ``levels`` a power of two)
wherever possible, so block and partial sums are computed exactly and ties
and entrywise dominations are frequent.
"""

import numpy as np

from .matrices import norlund, weighted_mean


def dyadic_matrix(rng, n, m, levels=4):
    return rng.integers(0, levels + 1, size=(n, m)) / levels


def row_sorted(A):
    return -np.sort(-A, axis=1)


def col_sorted(A):
    return -np.sort(-A, axis=0)


def structured_matrix(rng, n, m, levels=4):
    """One of: raw, row-sorted, column-sorted, doubly sorted, or a random row/column shuffle."""
    A = dyadic_matrix(rng, n, m, levels)
    kind = rng.integers(5)
    if kind == 1:
        A = row_sorted(A)
    elif kind == 2:
        A = col_sorted(A)
    elif kind == 3:
        # sorting columns of a row-sorted matrix keeps the rows sorted
        A = col_sorted(row_sorted(A))
    elif kind == 4:
        A = col_sorted(row_sorted(A))[rng.permutation(n)][:, rng.permutation(m)]
    return A


def dyadic_summability(rng, n, denom=8):
    """Lower-triangular matrix whose row ``j`` splits ``denom`` units over columns ``1..j``."""
    A = np.zeros((n, n))
    for j in range(n):
        cuts = np.sort(rng.integers(0, denom + 1, size=j))
        parts = np.diff(np.concatenate(([0], cuts, [denom])))
        A[j, : j + 1] = parts / denom
    return A


def summability_matrix(rng, n):
    """Dyadic summability matrix, or a weighted-mean / Norlund matrix with random decreasing weights."""
    kind = rng.integers(3)
    if kind == 0:
        return dyadic_summability(rng, n)
    w = np.sort(rng.integers(1, 9, size=n))[::-1].astype(float)
    return weighted_mean(w, n) if kind == 1 else norlund(w, n)


def matrix_sampler(max_n=5, max_m=None, min_n=1):
    """Sampler drawing a structured matrix with random shape up to ``max_n x max_m``."""
    max_m = max_n if max_m is None else max_m

    def sample(rng):
        n = int(rng.integers(min_n, max_n + 1))
        m = int(rng.integers(1, max_m + 1))
        return structured_matrix(rng, n, m)

    return sample


def summability_sampler(max_n=5, min_n=1):
    def sample(rng):
        return summability_matrix(rng, int(rng.integers(min_n, max_n + 1)))

    return sample


def c31_pair(rng, n):
    """Non-negative ``(v, u)`` with prefix sums of ``v`` dominating the top-``r`` sums of ``u``."""
    u = rng.random(n) * (rng.random(n) < 0.8)
    base = -np.sort(-u)
    mode = rng.integers(3)
    if mode == 0:
        v = base
    elif mode == 1:
        v = base + rng.random(n) * 0.5
    else:
        # push mass forward: prefix sums only grow
        v = base.copy()
        for _ in range(n):
            i, j = sorted(rng.integers(0, n, size=2))
            t = v[j] * rng.random()
            v[j] -= t
            v[i] += t
    return v, u
