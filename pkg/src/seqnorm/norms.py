"""Operator norms of non-negative matrices between sequence spaces.

``norm_estimate`` maximizes ``||Ax||_F`` over non-negative unit vectors of
``E``, optionally restricted to non-increasing ``x``.  The value returned is
always the objective at a feasible point, i.e. a lower bound on the true
norm of the section; the exact paths attain it.

Dispatch
--------
* ``E = l_1`` (or ``l_1(w)``, or ``d(w, 1)`` on the decreasing cone): the
  unit ball's non-negative part is a simplex, so the maximum sits at one of
  its vertices (``e_k / w_k``, or ``1_{[1,k]} / W_k`` when restricted).
* ``E = l_inf``: ``x = (1, ..., 1)`` dominates every feasible point and is
  decreasing, so it is optimal in both modes.
* otherwise: a generalized power iteration.  Each step replaces ``x`` by the
  maximizer over the feasible set of the linear functional ``<A^T g, x>``
  where ``g`` is a supergradient of ``||.||_F`` at ``Ax``.  For a convex
  objective this never decreases the value.  On the decreasing cone that
  linear maximization reduces to a weighted isotonic regression.  Several
  seeded starts are run and the best point is polished by projected gradient
  ascent on the ratio ``||Ax||_F / ||x||_E``.
"""

from __future__ import annotations

import functools
import itertools
import math
from dataclasses import dataclass

import numpy as np
from sklearn.isotonic import isotonic_regression

from ._validation import check_matrix, check_vector, matvec
from .spaces import LORENTZ, SpaceSpec, norm_rows, space_norm, tail_sum_map

METHODS = ("exact_p1", "exact_pinf", "fixed_point", "multistart_gradient", "grid_oracle")
SEED = 0x5EED


@dataclass
class NormEstimate:
    value: float
    maximizer: np.ndarray
    restricted: bool
    method: str
    iterations: int
    converged: bool
    truncation: tuple

    def to_dict(self):
        return {
            "value": self.value,
            "maximizer": np.asarray(self.maximizer).tolist(),
            "restricted": self.restricted,
            "method": self.method,
            "iterations": self.iterations,
            "converged": self.converged,
            "truncation": list(self.truncation),
        }


def apply(A, x):
    """``y_j = sum_k a[j,k] x_k``."""
    A = check_matrix(A)
    x = check_vector(x)
    if x.size != A.shape[1]:
        raise ValueError(f"x has length {x.size}, A has {A.shape[1]} columns")
    return matvec(A, x)


def _objective(A, F, x):
    return space_norm(F, A @ x)


# -- supergradients and linear maximization ---------------------------------------------

def _norm_grad(spec, y):
    """A supergradient ``g >= 0`` of ``||.||`` at ``y >= 0``, with ``<g, y> = ||y||``."""
    n = y.size
    w = spec.weight_vector(n)
    p = spec.p
    if math.isinf(p):
        g = np.zeros(n)
        g[int(np.argmax(y))] = 1.0
        return g
    order = np.argsort(-y, kind="stable") if spec.kind == LORENTZ else np.arange(n)
    ys = y[order]
    if p == 1:
        gs = w.copy()
    else:
        nrm = space_norm(spec, y)
        if nrm == 0:
            return w.copy()
        gs = w * (ys / nrm) ** (p - 1)
    g = np.empty(n)
    g[order] = gs
    return g


def _normalize(E, x):
    nrm = space_norm(E, x)
    return None if not nrm > 0 else x / nrm


def _lmo_decreasing(c, w, p):
    # argmax <c, x> over non-increasing x >= 0 with sum w x^p <= 1
    if p == 1:
        k = int(np.argmax(np.cumsum(c) / np.cumsum(w)))
        x = np.zeros(c.size)
        x[: k + 1] = 1.0
        return x
    fit = np.maximum(isotonic_regression(c / w, sample_weight=w, increasing=False), 0.0)
    top = fit.max()
    if not top > 0:
        return None
    return (fit / top) ** (1.0 / (p - 1))


def linear_maximizer(E, c, restricted):
    """Unit vector of ``E`` (non-negative, decreasing if ``restricted``) maximizing ``<c, x>``.

    ``c`` is assumed non-negative.  Returns ``None`` when ``c`` vanishes on the
    feasible set.
    """
    m = c.size
    p = E.p
    if math.isinf(p):
        return np.ones(m)
    w = E.weight_vector(m)
    if restricted:
        x = _lmo_decreasing(c, w, p)
    elif E.kind == LORENTZ:
        # rearrangement inequality: align x with c, then solve on the decreasing cone
        order = np.argsort(-c, kind="stable")
        xs = _lmo_decreasing(c[order], w, p)
        if xs is None:
            return None
        x = np.empty(m)
        x[order] = xs
    elif p == 1:
        x = np.zeros(m)
        k = int(np.argmax(c / w))
        x[k] = 1.0
    else:
        r = np.maximum(c, 0.0) / w
        top = r.max()
        x = None if not top > 0 else (r / top) ** (1.0 / (p - 1))
    return None if x is None else _normalize(E, x)


def _power_ascent(A, E, F, restricted, x0, tol, max_iter):
    x = _normalize(E, x0)
    if x is None:
        return None, -np.inf, 0, False
    val = _objective(A, F, x)
    converged = False
    it = 0
    for it in range(1, max_iter + 1):
        y = A @ x
        c = A.T @ _norm_grad(F, y)
        x_new = linear_maximizer(E, c, restricted)
        if x_new is None:
            converged = True
            break
        val_new = _objective(A, F, x_new)
        if val_new <= val * (1 + tol):
            if val_new > val:
                x, val = x_new, val_new
            converged = True
            break
        x, val = x_new, val_new
    return x, val, it, converged


# -- projected gradient polish ----------------------------------------------------------

def _ratio(A, E, F, x):
    nx = space_norm(E, x)
    return -np.inf if not nx > 0 else space_norm(F, A @ x) / nx


def _ratio_grad(A, E, F, x):
    ne = space_norm(E, x)
    nf = space_norm(F, A @ x)
    return (A.T @ _norm_grad(F, A @ x)) / ne - (nf / ne ** 2) * _norm_grad(E, x)


def _polish(A, E, F, restricted, x, steps=200):
    """Projected gradient ascent on the ratio, in tail-difference coordinates when restricted."""
    to_x = tail_sum_map if restricted else (lambda z: z)
    z = x - np.append(x[1:], 0.0) if restricted else x.copy()
    z = np.maximum(z, 0.0)
    best = _ratio(A, E, F, to_x(z))
    for _ in range(steps):
        gx = _ratio_grad(A, E, F, to_x(z))
        g = np.cumsum(gx) if restricted else gx
        gn = np.linalg.norm(g)
        if not gn > 0:
            break
        step = np.linalg.norm(z) / gn
        improved = False
        for _ in range(30):
            cand = np.maximum(z + step * g, 0.0)
            r = _ratio(A, E, F, to_x(cand))
            if r > best * (1 + 1e-15):
                z, best, improved = cand, r, True
                break
            step *= 0.5
        if not improved:
            break
    return _normalize(E, to_x(z)), best


# -- exact paths ------------------------------------------------------------------------

def _exact_p1(A, E, F, restricted):
    n, m = A.shape
    w = E.weight_vector(m)
    if restricted:
        X = np.tril(np.ones((m, m))) / np.cumsum(w)[:, None]
    elif E.kind == LORENTZ:
        if m > 16:
            return None
        W = np.cumsum(w)
        rows = []
        for k in range(1, m + 1):
            for S in itertools.combinations(range(m), k):
                v = np.zeros(m)
                v[list(S)] = 1.0 / W[k - 1]
                rows.append(v)
        X = np.array(rows)
    else:
        X = np.diag(1.0 / w)
    vals = norm_rows(F, X @ A.T)
    k = int(np.argmax(vals))
    return NormEstimate(float(vals[k]), X[k].copy(), restricted, "exact_p1", 1, True, (n, m))


def _exact_pinf(A, F, restricted):
    n, m = A.shape
    x = np.ones(m)
    return NormEstimate(_objective(A, F, x), x, restricted, "exact_pinf", 1, True, (n, m))


def _seeds(A, E, F, restricted, n_starts, seed):
    n, m = A.shape
    rng = np.random.default_rng(seed)
    e1 = np.zeros(m)
    e1[0] = 1.0
    seeds = [e1, np.ones(m)]
    for _ in range(max(n_starts - 2, 0)):
        v = rng.random(m)
        seeds.append(-np.sort(-v) if restricted else v)
    seeds = seeds[:n_starts]
    if E.p == 1 and E.kind != LORENTZ and m <= 256:
        # for l_1 the maximum sits at a vertex, and vertices can be fixed points of the iteration
        w = E.weight_vector(m)
        seeds += list(np.tril(np.ones((m, m))) if restricted else np.eye(m) / w)
    if math.isinf(F.p):
        # ||Ax||_inf = max_j <a_j, x>: each row's own maximizer is a candidate
        rows = np.argsort(-A.sum(axis=1), kind="stable")[:256]
        seeds += [linear_maximizer(E, A[j], restricted) for j in rows if A[j].any()]
    if E == F == SpaceSpec.lp(2) and min(n, m) > 1:
        v = np.abs(np.linalg.svd(A)[2][0])
        seeds.append(linear_maximizer(E, v, True) if restricted else v)
    return [s for s in seeds if s is not None]


def norm_estimate(A, E, F, restricted=False, n_starts=16, tol=1e-12, max_iter=10_000,
                  seed=SEED, polish=True, exact=True):
    """Estimate ``||A||_{E,F}`` (or its decreasing-input version when ``restricted``).

    Returns a :class:`NormEstimate` whose ``value`` is attained at
    ``maximizer``, a non-negative unit vector of ``E``.  ``exact=False``
    skips the closed-form paths and always runs the iteration.
    """
    A = check_matrix(A)
    n, m = A.shape
    E.weight_vector(m)
    F.weight_vector(n)
    if exact and E.p == 1:
        est = _exact_p1(A, E, F, restricted)
        if est is not None:
            return est
    if exact and math.isinf(E.p):
        return _exact_pinf(A, F, restricted)

    best = (None, -np.inf, 0, False)
    for x0 in _seeds(A, E, F, restricted, n_starts, seed):
        res = _power_ascent(A, E, F, restricted, x0, tol, max_iter)
        if res[1] > best[1]:
            best = res
    x, val, iters, converged = best
    if x is None:
        x = np.ones(m) / space_norm(E, np.ones(m))
        return NormEstimate(0.0, x, restricted, "fixed_point", 0, True, (n, m))
    method = "fixed_point"
    if polish:
        px, pval = _polish(A, E, F, restricted, x)
        if px is not None and pval > val * (1 + 1e-12):
            x, val, method = px, _objective(A, F, px), "multistart_gradient"
    return NormEstimate(float(val), x, restricted, method, iters, converged, (n, m))


# -- brute-force oracle -----------------------------------------------------------------

@functools.lru_cache(maxsize=16)
def _face_points(free, resolution, restricted):
    """Grid over ``[0, 1]^free`` (non-increasing tuples only when ``restricted``); read-only."""
    pts = _face_grid(free, resolution, restricted)
    pts.setflags(write=False)
    return pts


def _face_grid(free, resolution, restricted):
    ticks = np.arange(resolution + 1) / resolution
    if free == 0:
        return np.zeros((1, 0))
    if restricted:
        idx = np.array([c[::-1] for c in itertools.combinations_with_replacement(
            range(resolution + 1), free)])
        return ticks[idx]
    return np.stack(np.meshgrid(*([ticks] * free), indexing="ij"), axis=-1).reshape(-1, free)


def grid_oracle(A, E, F, restricted=False, resolution=100, chunk=200_000):
    """Exhaustive grid scan of the non-negative unit sphere of ``E``.

    The sphere is parametrized by the faces of the cube ``{x >= 0 : max x = 1}``:
    one coordinate is pinned to 1 and the rest run over ``k / resolution``.
    Since ``||Ax||_F / ||x||_E`` is scale invariant this covers every ray, and
    coordinate vectors, the all-ones vector and other face corners are hit
    exactly.  On the decreasing cone only the face ``x_1 = 1`` is needed.
    Independent of :func:`norm_estimate`; for at most 4 columns.
    """
    A = check_matrix(A)
    m = A.shape[1]
    if m > 4:
        raise ValueError("grid_oracle supports at most 4 columns")
    if not 1 <= resolution <= 200:
        raise ValueError("resolution must lie in 1..200")
    pts = _face_points(m - 1, resolution, restricted)
    faces = [0] if restricted else range(m)
    best = 0.0
    for i in faces:
        for s in range(0, len(pts), chunk):
            block = np.insert(pts[s:s + chunk], i, 1.0, axis=1)
            if restricted:
                block = block[np.all(block[:, :-1] >= block[:, 1:], axis=1)]
            vals = norm_rows(F, block @ A.T) / norm_rows(E, block)
            best = max(best, float(vals.max()))
    return best


# -- truncation sweeps ------------------------------------------------------------------

def truncation_sweep(family, E, F, sizes, restricted=False, **opts):
    """``norm_estimate`` on the leading ``n x n`` sections of ``family`` for each ``n`` in ``sizes``."""
    sizes = list(sizes)
    if any(b <= a for a, b in zip(sizes, sizes[1:])):
        raise ValueError("sizes must be strictly increasing")
    return [norm_estimate(family.section(n), E, F, restricted, **opts) for n in sizes]


def sweep_diagnostics(estimates, tol=1e-9):
    """Successive differences of a sweep and whether the values are non-decreasing."""
    vals = np.array([e.value for e in estimates])
    diffs = np.diff(vals)
    return {"values": vals.tolist(), "differences": diffs.tolist(),
            "monotone": bool(np.all(diffs >= -tol * np.maximum(1.0, vals[1:])))}
