"""Sequence-space norms on finite vectors.

Three families are supported: ``l_p``, the weighted space ``l_p(w)`` with norm
``(sum |x_k|^p w_k)^(1/p)`` and the Lorentz space ``d(w, p)`` whose norm is the
weighted norm of the decreasing rearrangement.  Finite vectors stand for
sequences padded with zeros.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from ._validation import check_vector, fp_guard

LP = "lp"
LP_WEIGHTED = "lp_weighted"
LORENTZ = "lorentz"
_KINDS = (LP, LP_WEIGHTED, LORENTZ)


@dataclass(frozen=True, eq=False)
class WeightSeq:
    """Positive weights with monotonicity metadata recomputed from the entries."""

    entries: np.ndarray
    ratio_rtol: float = field(default=1e-12, repr=False)

    def __post_init__(self):
        w = check_vector(self.entries, "weights")
        if w.size == 0:
            raise ValueError("weights must be non-empty")
        if np.any(w <= 0):
            raise ValueError("weights must be strictly positive")
        w = w.copy()
        w.setflags(write=False)
        object.__setattr__(self, "entries", w)

    def __len__(self):
        return self.entries.size

    def __eq__(self, other):
        return isinstance(other, WeightSeq) and np.array_equal(self.entries, other.entries)

    def __hash__(self):
        return hash(self.entries.tobytes())

    @property
    def is_decreasing(self) -> bool:
        return bool(np.all(self.entries[1:] <= self.entries[:-1]))

    @property
    def is_increasing(self) -> bool:
        return bool(np.all(self.entries[1:] >= self.entries[:-1]))

    @property
    def has_concave_ratio(self) -> bool:
        """``w[n+1]/w[n] <= w[n]/w[n-1]`` for every interior ``n``."""
        w = self.entries
        if w.size < 3:
            return True
        r = w[1:] / w[:-1]
        return bool(np.all(r[1:] <= r[:-1] * (1 + self.ratio_rtol)))

    @classmethod
    def from_function(cls, f, n):
        """Weights ``f(1), ..., f(n)``."""
        return cls(np.array([f(k) for k in range(1, n + 1)], dtype=float))

    def tolist(self):
        return self.entries.tolist()


def _as_weights(w):
    if w is None or isinstance(w, WeightSeq):
        return w
    return WeightSeq(np.asarray(w, dtype=float))


@dataclass(frozen=True)
class SpaceSpec:
    kind: str
    p: float
    weights: Optional[WeightSeq] = None

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"unknown space kind {self.kind!r}; expected one of {_KINDS}")
        p = float(self.p)
        if math.isnan(p) or p < 1:
            raise ValueError(f"p must lie in [1, inf], got {self.p}")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "weights", _as_weights(self.weights))
        if self.kind == LP:
            if self.weights is not None:
                raise ValueError("plain l_p spaces carry no weights")
        else:
            if self.weights is None:
                raise ValueError(f"{self.kind} spaces require weights")
            if math.isinf(p):
                raise ValueError("p = inf is only supported for plain l_p")
            if self.kind == LORENTZ and not self.weights.is_decreasing:
                raise ValueError("Lorentz weights must be decreasing")

    @classmethod
    def lp(cls, p):
        return cls(LP, p)

    @classmethod
    def weighted(cls, p, weights):
        return cls(LP_WEIGHTED, p, weights)

    @classmethod
    def lorentz(cls, p, weights):
        return cls(LORENTZ, p, weights)

    @property
    def is_weighted(self):
        return self.weights is not None

    def weight_vector(self, n):
        """Weights truncated to length ``n`` (all ones for plain l_p)."""
        if self.weights is None:
            return np.ones(n)
        if n > len(self.weights):
            raise ValueError(
                f"dimension {n} exceeds the {len(self.weights)} available weights")
        return self.weights.entries[:n]

    def to_dict(self):
        d = {"kind": self.kind, "p": "inf" if math.isinf(self.p) else self.p}
        if self.weights is not None:
            d["weights"] = self.weights.tolist()
        return d

    @classmethod
    def from_dict(cls, d):
        p = d["p"]
        p = math.inf if p in ("inf", "Infinity", math.inf) else float(p)
        return cls(d["kind"], p, d.get("weights"))

    def __str__(self):
        p = "inf" if math.isinf(self.p) else f"{self.p:g}"
        return {LP: f"l_{p}", LP_WEIGHTED: f"l_{p}(w)", LORENTZ: f"d(w,{p})"}[self.kind]


def decreasing_rearrangement(x):
    """Absolute values of ``x`` sorted in non-increasing order."""
    x = check_vector(x)
    return -np.sort(-np.abs(x))


def _weighted_pnorm_rows(X, w, p):
    if math.isinf(p):
        return np.max(X, axis=1, initial=0.0)
    if p == 1:
        return X @ w
    # Scale by the row maximum before powering to keep large p from overflowing.
    scale = np.max(X, axis=1, initial=0.0)
    safe = np.where(scale > 0, scale, 1.0)
    return scale * ((X / safe[:, None]) ** p @ w) ** (1.0 / p)


def norm_rows(spec, X):
    """``space_norm`` applied to each row of a 2-D array."""
    X = np.abs(np.asarray(X, dtype=float))
    if X.ndim != 2:
        raise ValueError("expected a 2-D array of row vectors")
    w = spec.weight_vector(X.shape[1])
    if spec.kind == LORENTZ:
        X = -np.sort(-X, axis=1)
    return _weighted_pnorm_rows(X, w, spec.p)


def space_norm(spec, x):
    """Norm of the finite vector ``x`` in the space described by ``spec``.

    >>> space_norm(SpaceSpec.lp(2), [3, 4])
    5.0
    """
    x = check_vector(x)
    if x.size == 0:
        return 0.0
    return float(norm_rows(spec, x[np.newaxis, :])[0])


def _pad(x, y):
    n = max(x.size, y.size)
    return np.pad(x, (0, n - x.size)), np.pad(y, (0, n - y.size))


def ps_majorization_holds(x, y):
    """Whether every prefix sum of ``y*`` is bounded by the matching prefix sum of ``x*``."""
    x, y = _pad(check_vector(x, "x"), check_vector(y, "y"))
    sx = np.cumsum(decreasing_rearrangement(x))
    sy = np.cumsum(decreasing_rearrangement(y))
    k = np.arange(1, sx.size + 1)
    return bool(np.all(sy <= sx + fp_guard(k, sx, sy)))


def _basis(i, n):
    e = np.zeros(n)
    e[i] = 1.0
    return e


def ps_violation_witness(spec, dim, n_random=1000, seed=0x5EED, rtol=1e-10):
    """Search for ``(x, y)`` with ``y`` weakly majorized by ``x`` but ``||y|| > ||x||``.

    Coordinate pairs ``(e_i, e_j)`` are tried first in lexicographic order of
    ``i < j`` (both orientations), followed by ``n_random`` seeded random pairs
    built so that the majorization premise holds.  Returns ``None`` when no
    violation turns up.
    """
    if dim < 2:
        raise ValueError("dim must be at least 2")

    def violates(x, y):
        if not ps_majorization_holds(x, y):
            return False
        nx, ny = space_norm(spec, x), space_norm(spec, y)
        return ny > nx * (1 + rtol)

    for i in range(dim):
        for j in range(i + 1, dim):
            for x, y in ((_basis(i, dim), _basis(j, dim)), (_basis(j, dim), _basis(i, dim))):
                if violates(x, y):
                    return x, y

    rng = np.random.default_rng(seed)
    for t in range(n_random):
        x = rng.random(dim)
        if t % 2 == 0:
            # shrunk rearrangement: y* <= x* entrywise
            y = x[rng.permutation(dim)] * rng.uniform(0.5, 1.0, dim)
        else:
            # convex mix of two rearrangements: majorized by x
            s = rng.random()
            y = s * x[rng.permutation(dim)] + (1 - s) * x[rng.permutation(dim)]
        if violates(x, y):
            return x, y
    return None


def tail_sum_map(d):
    """Map ``d >= 0`` to the decreasing vector ``x_k = sum_{i >= k} d_i``."""
    d = check_vector(d, "d", nonnegative=True)
    return np.cumsum(d[::-1])[::-1]


def tail_sum_inverse(x):
    """Successive differences recovering ``d`` from a decreasing non-negative ``x``."""
    x = check_vector(x)
    return x - np.append(x[1:], 0.0)
