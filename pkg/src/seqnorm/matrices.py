"""Generators for the non-negative matrix families and their finite truncations.

Infinite matrices are never materialized: a :class:`MatrixFamily` records the
family and its parameters and produces leading ``n x m`` sections on demand.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from ._validation import check_matrix
from .spaces import WeightSeq

FAMILIES = ("hilbert", "wm", "nm", "cesaro", "gamma", "custom")


def hilbert(n, m=None):
    """Leading section of the Hilbert matrix, ``h[j, k] = 1 / (j + k - 1)`` (1-based)."""
    m = n if m is None else m
    if n < 1 or m < 1:
        raise ValueError("hilbert needs n, m >= 1")
    j = np.arange(1, n + 1)[:, None]
    k = np.arange(1, m + 1)[None, :]
    return 1.0 / (j + k - 1)


def _weights_for(w, n):
    w = w.entries if isinstance(w, WeightSeq) else np.asarray(w, dtype=float)
    if w.ndim != 1 or w.size < n:
        raise ValueError(f"need at least {n} weights, got {w.size}")
    w = w[:n]
    if not w[0] > 0:
        raise ValueError("the first weight must be positive")
    if np.any(w < 0) or not np.all(np.isfinite(w)):
        raise ValueError("weights must be finite and non-negative")
    return w


def weighted_mean(w, n):
    """n x n weighted mean matrix ``a[j, k] = w_k / (w_1 + ... + w_j)`` for ``k <= j``."""
    w = _weights_for(w, n)
    W = np.cumsum(w)
    A = np.tril(np.broadcast_to(w, (n, n)) / W[:, None])
    return A


def norlund(w, n):
    """n x n Norlund mean matrix ``a[j, k] = w_{j-k+1} / (w_1 + ... + w_j)`` for ``k <= j``."""
    w = _weights_for(w, n)
    W = np.cumsum(w)
    j = np.arange(n)[:, None]
    k = np.arange(n)[None, :]
    lag = np.clip(j - k, 0, None)
    return np.where(k <= j, w[lag] / W[:, None], 0.0)


def binomial_weights(alpha, n):
    """Weights ``binom(n + alpha - 2, n - 1)`` via ``w_{k+1} = w_k (k + alpha - 1) / k``.

    The recurrence avoids factorials, so non-integer orders and long
    sequences are fine.
    """
    if not alpha > 0:
        raise ValueError("alpha must be positive")
    if n < 1:
        raise ValueError("n must be at least 1")
    w = np.empty(n)
    w[0] = 1.0
    for k in range(1, n):
        w[k] = w[k - 1] * ((k + alpha - 1) / k)
    return WeightSeq(w)


def cesaro(alpha, n):
    return norlund(binomial_weights(alpha, n), n)


def gamma_matrix(alpha, n):
    return weighted_mean(binomial_weights(alpha, n), n)


def counterexample_l1(n=5):
    """Summability matrix with rows ``e_1, e_2, (0, 1/2, 1/2, 0, ...)`` and ``e_j`` after.

    Row-increasing in the triangular sense, yet its l_1 norm (3/2) exceeds
    the norm on decreasing inputs (5/4).
    """
    if n < 3:
        raise ValueError("the counterexample needs at least 3 rows")
    A = np.eye(n)
    A[2, 1] = A[2, 2] = 0.5
    return A


def counterexample_l2(n=3, m=3):
    """``a[1,1] = a[2,2] = a[2,3] = 1``, zero elsewhere; its l_2 norm needs a non-decreasing input."""
    if n < 2 or m < 3:
        raise ValueError("need at least 2 rows and 3 columns")
    A = np.zeros((n, m))
    A[0, 0] = A[1, 1] = A[1, 2] = 1.0
    return A


def counterexample_linf(n=2, m=2):
    """Single unit entry at (2, 2): rearranging ``e_2`` kills the l_inf norm of ``Ax``."""
    if n < 2 or m < 2:
        raise ValueError("need at least a 2 x 2 section")
    A = np.zeros((n, m))
    A[1, 1] = 1.0
    return A


def is_summability(A, tol=1e-12):
    """Lower triangular, non-negative, and unit row sums within ``tol``."""
    A = np.asarray(A, dtype=float)
    if A.ndim != 2 or np.any(A < 0) or not np.all(np.isfinite(A)):
        return False
    if np.any(np.triu(A, 1) != 0):
        return False
    return bool(np.all(np.abs(A.sum(axis=1) - 1.0) <= tol))


def transpose(A):
    return check_matrix(A).T.copy()


def truncate_rows(A, n):
    A = check_matrix(A)
    if not 1 <= n <= A.shape[0]:
        raise ValueError(f"row truncation {n} outside 1..{A.shape[0]}")
    return A[:n].copy()


def truncate_cols(A, m):
    A = check_matrix(A)
    if not 1 <= m <= A.shape[1]:
        raise ValueError(f"column truncation {m} outside 1..{A.shape[1]}")
    return A[:, :m].copy()


@dataclass(frozen=True, eq=False)
class MatrixFamily:
    """A matrix family with its parameters; ``section(n, m)`` yields the leading block.

    ``weights`` may be a :class:`WeightSeq` or a callable ``k -> w_k`` (1-based),
    the latter letting sweeps grow without a fixed length.
    """

    kind: str
    alpha: Optional[float] = None
    weights: object = None
    entries: Optional[np.ndarray] = None
    transposed: bool = False

    def __post_init__(self):
        if self.kind not in FAMILIES:
            raise ValueError(f"unknown family {self.kind!r}")
        if self.kind in ("cesaro", "gamma") and not (self.alpha is not None and self.alpha > 0):
            raise ValueError(f"{self.kind} requires alpha > 0")
        if self.kind in ("wm", "nm") and self.weights is None:
            raise ValueError(f"{self.kind} requires weights")
        if self.kind == "custom":
            if self.entries is None:
                raise ValueError("custom family requires entries")
            object.__setattr__(self, "entries", check_matrix(self.entries))

    def _weights(self, n):
        if callable(self.weights):
            return WeightSeq.from_function(self.weights, n)
        return self.weights

    def section(self, n, m=None):
        m = n if m is None else m
        if self.transposed:
            return MatrixFamily(self.kind, self.alpha, self.weights, self.entries).section(m, n).T.copy()
        size = max(n, m)
        if self.kind == "hilbert":
            return hilbert(n, m)
        if self.kind == "custom":
            return self.entries[:n, :m].copy()
        if self.kind == "wm":
            A = weighted_mean(self._weights(size), size)
        elif self.kind == "nm":
            A = norlund(self._weights(size), size)
        elif self.kind == "cesaro":
            A = cesaro(self.alpha, size)
        else:
            A = gamma_matrix(self.alpha, size)
        return A[:n, :m].copy()

    def T(self):
        return MatrixFamily(self.kind, self.alpha, self.weights, self.entries, not self.transposed)

    def to_dict(self):
        d = {"family": self.kind}
        if self.alpha is not None:
            d["alpha"] = self.alpha
        if self.weights is not None and not callable(self.weights):
            d["weights"] = self.weights.tolist()
        if self.entries is not None:
            d["entries"] = self.entries.tolist()
        if self.transposed:
            d["transposed"] = True
        return d

    @classmethod
    def from_dict(cls, d):
        w = d.get("weights")
        return cls(
            d["family"],
            alpha=d.get("alpha"),
            weights=None if w is None else WeightSeq(np.asarray(w, dtype=float)),
            entries=None if d.get("entries") is None else np.asarray(d["entries"], dtype=float),
            transposed=bool(d.get("transposed", False)),
        )
