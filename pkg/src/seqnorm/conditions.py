"""Checkers for the sufficient conditions on a non-negative matrix, with witnesses.

Every checker works on the stored finite section and returns a
:class:`ConditionReport`.  "For all r >= 1" is read as "for all stored
columns"; ``l_max``/``r_max`` on the report record the range actually checked.

Comparisons between entries are exact.  Comparisons between sums allow for
the floating-point summation error of the two sides (see
:func:`seqnorm._validation.fp_guard`) plus a user ``slack`` (default 0).

Index sets in witnesses are 1-based.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from ._validation import EnumerationCapError, check_matrix, check_vector, fp_guard
from .matrices import is_summability, truncate_rows
from .rearrangement import iter_R_union
from .spaces import decreasing_rearrangement

CONDITIONS = ("C12", "C13", "C31", "C41", "C41star", "C44", "C410", "C410star", "C411", "C412")


class NotApplicableError(ValueError):
    """The condition is only defined for a narrower class of matrices."""


@dataclass
class ConditionReport:
    condition: str
    holds: bool
    witness: Optional[dict] = None
    l_max: int = 0
    r_max: int = 0

    def __post_init__(self):
        if self.condition not in CONDITIONS:
            raise ValueError(f"unknown condition {self.condition!r}")
        if not self.holds and self.witness is None:
            raise ValueError("a failing report must carry a witness")

    def __bool__(self):
        return self.holds

    def to_dict(self):
        return {"condition": self.condition, "holds": self.holds, "witness": self.witness,
                "l_max": self.l_max, "r_max": self.r_max}


def _ge(lhs, rhs, nterms, slack):
    return lhs >= rhs - slack - fp_guard(nterms, lhs, rhs)


def _idx(a):
    return [int(i) + 1 for i in a]


# -- sequence conditions ---------------------------------------------------

def check_c31(v, u, slack=0.0):
    """Prefix sums of ``v`` dominate the sums of the ``r`` largest entries of ``u``, all ``r``."""
    v = check_vector(v, "v", nonnegative=True)
    u = check_vector(u, "u", nonnegative=True)
    if v.size != u.size:
        raise ValueError("v and u must have equal length")
    n = v.size
    order = np.argsort(-u, kind="stable")
    pv = np.cumsum(v)
    pu = np.cumsum(u[order])
    r = np.arange(1, n + 1)
    bad = np.flatnonzero(~_ge(pv, pu, r, slack))
    if bad.size:
        i = int(bad[0])
        return ConditionReport("C31", False, {
            "r": i + 1, "N_r": sorted(_idx(order[:i + 1])),
            "lhs": float(pv[i]), "rhs": float(pu[i])}, 1, n)
    return ConditionReport("C31", True, None, 1, n)


def rearrangement_dominates(v, u, x):
    """``sum v_k x*_k >= sum u_k x_k`` (up to summation rounding)."""
    v = check_vector(v, "v", nonnegative=True)
    u = check_vector(u, "u", nonnegative=True)
    x = check_vector(x, "x", nonnegative=True)
    if not v.size == u.size == x.size:
        raise ValueError("v, u and x must have equal length")
    lhs = float(v @ decreasing_rearrangement(x))
    rhs = float(u @ x)
    return bool(_ge(lhs, rhs, 2 * v.size, 0.0))


# -- C12: subset sums --------------------------------------------------------------

def _block_prefix(A):
    return np.cumsum(np.cumsum(A, axis=0), axis=1)


def _lr_terms(n, m):
    return np.arange(1, n + 1)[:, None] * np.arange(1, m + 1)[None, :]


def check_c12(A, l_max=None, r_max=None, slack=0.0, max_subsets=2 ** 20, chunk=4096):
    """Leading ``l x r`` block sum dominates every ``l x r`` sub-block sum.

    Only the row set ``N_l`` is enumerated: for fixed rows the heaviest
    ``N_r`` is the ``r`` columns with the largest column sums over ``N_l``.
    """
    A = check_matrix(A)
    n, m = A.shape
    l_max = n if l_max is None else l_max
    r_max = m if r_max is None else r_max
    if not (1 <= l_max <= n and 1 <= r_max <= m):
        raise ValueError(f"need 1 <= l_max <= {n} and 1 <= r_max <= {m}")
    total = sum(math.comb(n, l) for l in range(1, l_max + 1))
    if total > max_subsets:
        raise EnumerationCapError(f"{total} row subsets exceed the cap of {max_subsets}")
    lead = _block_prefix(A)
    r = np.arange(1, r_max + 1)
    for l in range(1, l_max + 1):
        combos = itertools.combinations(range(n), l)
        while True:
            block = np.array(list(itertools.islice(combos, chunk)), dtype=int).reshape(-1, l)
            if block.size == 0:
                break
            colsum = A[block].sum(axis=1)
            order = np.argsort(-colsum, axis=1, kind="stable")
            top = np.cumsum(np.take_along_axis(colsum, order, axis=1), axis=1)[:, :r_max]
            ok = _ge(lead[l - 1, :r_max], top, l * r, slack)
            if not ok.all():
                c, ri = np.argwhere(~ok)[0]
                return ConditionReport("C12", False, {
                    "l": l, "r": int(ri) + 1,
                    "N_l": _idx(block[c]), "N_r": sorted(_idx(order[c, :ri + 1])),
                    "lhs": float(lead[l - 1, ri]), "rhs": float(top[c, ri])}, l_max, r_max)
    return ConditionReport("C12", True, None, l_max, r_max)


# -- entrywise and partial-sum scans ---------------------------------------------------

def _first(mask):
    hits = np.argwhere(mask)
    return None if hits.size == 0 else tuple(int(i) + 1 for i in hits[0])


def _column_prefix_violation(A, slack):
    # first (l, k) with sum_{j<=l} a[j,k] < sum_{j<=l} a[j,k+1]
    P = np.cumsum(A, axis=0)
    l = np.arange(1, A.shape[0] + 1)[:, None]
    return _first(~_ge(P[:, :-1], P[:, 1:], l, slack))


def check_c41(A, slack=0.0):
    """Columns decrease downwards and column partial sums decrease to the right."""
    A = check_matrix(A)
    n, m = A.shape
    hit = _first(A[:-1] + slack < A[1:])
    if hit:
        return ConditionReport("C41", False, {"part": 1, "j": hit[0], "k": hit[1]}, n, m)
    hit = _column_prefix_violation(A, slack)
    if hit:
        return ConditionReport("C41", False, {"part": 2, "l": hit[0], "k": hit[1]}, n, m)
    return ConditionReport("C41", True, None, n, m)


def check_c41star(A, slack=0.0):
    """Rows decrease to the right and row partial sums decrease downwards."""
    A = check_matrix(A)
    n, m = A.shape
    hit = _first(A[:, :-1] + slack < A[:, 1:])
    if hit:
        return ConditionReport("C41star", False, {"part": 1, "j": hit[0], "k": hit[1]}, n, m)
    Q = np.cumsum(A, axis=1)
    r = np.arange(1, m + 1)[None, :]
    hit = _first(~_ge(Q[:-1], Q[1:], r, slack))
    if hit:
        return ConditionReport("C41star", False, {"part": 2, "j": hit[0], "r": hit[1]}, n, m)
    return ConditionReport("C41star", True, None, n, m)


def check_c411(A, slack=0.0):
    # equivalent to the partial-sum half of check_c41
    A = check_matrix(A)
    n, m = A.shape
    hit = _column_prefix_violation(A, slack)
    if hit:
        return ConditionReport("C411", False, {"l": hit[0], "k": hit[1]}, n, m)
    return ConditionReport("C411", True, None, n, m)


def check_c412(A, slack=0.0):
    """Row decreasing: ``a[j,k] >= a[j,k+1]``."""
    A = check_matrix(A)
    n, m = A.shape
    hit = _first(A[:, :-1] + slack < A[:, 1:])
    if hit:
        return ConditionReport("C412", False, {"j": hit[0], "k": hit[1]}, n, m)
    return ConditionReport("C412", True, None, n, m)


def check_c44(A, slack=0.0, tol=1e-12):
    """``a[j,k] >= max(a[j+1,k], a[j+1,k+1])`` for ``j >= k``; summability matrices only."""
    A = check_matrix(A)
    if not is_summability(A, tol):
        raise NotApplicableError("C44 is only defined for summability matrices")
    n, m = A.shape
    for j in range(n - 1):
        for k in range(min(j + 1, m)):
            below = A[j + 1, k] if k + 1 >= m else max(A[j + 1, k], A[j + 1, k + 1])
            if A[j, k] + slack < below:
                return ConditionReport("C44", False, {
                    "j": j + 1, "k": k + 1, "a_jk": float(A[j, k]), "max_below": float(below)}, n, m)
    return ConditionReport("C44", True, None, n, m)


# -- conditions over the block-form rearrangements -------------------------------------

def _rows_n(A, n):
    A = check_matrix(A)
    return A if n is None else truncate_rows(A, n)


def check_c410star(A, n=None, cap=7, slack=0.0):
    """For every block-form ``B`` of ``A_n`` and every ``l``, ``k -> sum_{j<=l} b[j,k]`` decreases."""
    An = _rows_n(A, n)
    rows, m = An.shape
    l = np.arange(1, rows + 1)[:, None]
    for B, form in iter_R_union(An, cap):
        P = np.cumsum(B, axis=0)
        hit = _first(~_ge(P[:, :-1], P[:, 1:], l, slack))
        if hit:
            w = form.to_dict()
            w.update(l=hit[0], k=hit[1])
            return ConditionReport("C410star", False, w, rows, m)
    return ConditionReport("C410star", True, None, rows, m)


def _top_r_sums(B):
    P = np.cumsum(B, axis=0)
    return np.cumsum(-np.sort(-P, axis=1), axis=1)


def check_c410(A, n=None, cap=7, slack=0.0):
    """For every block-form ``B`` of ``A_n``, leading block sums beat any ``N_r`` in the first ``l`` rows."""
    An = _rows_n(A, n)
    rows, m = An.shape
    terms = _lr_terms(rows, m)
    for B, form in iter_R_union(An, cap):
        hit = _first(~_ge(_block_prefix(B), _top_r_sums(B), terms, slack))
        if hit:
            w = form.to_dict()
            w.update(l=hit[0], r=hit[1])
            return ConditionReport("C410", False, w, rows, m)
    return ConditionReport("C410", True, None, rows, m)


def check_c13(A, n=None, cap=6, slack=0.0):
    """For every block-form ``B`` of ``A_n`` some row rearrangement ``C`` dominates it.

    ``C`` is searched over all row permutations of ``A_n`` in lexicographic
    order; the witness on failure is the first ``B`` with no valid ``C``.
    """
    An = _rows_n(A, n)
    rows, m = An.shape
    if rows > cap:
        raise EnumerationCapError(f"{rows} rows exceeds the enumeration cap of {cap}")
    perms = list(itertools.permutations(range(rows)))
    lead = np.stack([_block_prefix(An[list(p)]) for p in perms])
    terms = _lr_terms(rows, m)
    for B, form in iter_R_union(An, cap):
        need = _top_r_sums(B)
        ok = _ge(lead, need[None], terms[None], slack).all(axis=(1, 2))
        if not ok.any():
            return ConditionReport("C13", False, form.to_dict(), rows, m)
    return ConditionReport("C13", True, None, rows, m)


def c13_partner(A, B, slack=0.0):
    """First row permutation ``C`` of ``A`` (0-based) dominating ``B`` as required, else ``None``."""
    A = check_matrix(A)
    B = check_matrix(B, "B")
    need = _top_r_sums(B)
    terms = _lr_terms(*A.shape)
    for p in itertools.permutations(range(A.shape[0])):
        if _ge(_block_prefix(A[list(p)]), need, terms, slack).all():
            return p
    return None


# -- implication harness ---------------------------------------------------------------

@dataclass(frozen=True)
class Implication:
    name: str
    premise: Callable
    conclusion: Callable
    applies: Optional[Callable] = None


IMPLICATIONS = {
    imp.name: imp for imp in (
        Implication("C41=>C12", check_c41, check_c12),
        Implication("C41star=>C12", check_c41star, check_c12),
        Implication("C44=>C12", check_c44, check_c12, is_summability),
        Implication("C412=>C410star", check_c412, check_c410star),
        Implication("C410=>C410star", check_c410, check_c410star),
        Implication("C410star=>C410", check_c410star, check_c410),
        Implication("C410star=>C13", check_c410star, check_c13),
        Implication("C12=>C13", check_c12, check_c13),
    )
}


@dataclass
class ImplicationTally:
    name: str
    trials: int = 0
    applicable: int = 0
    premise_held: int = 0
    violations: list = field(default_factory=list)

    def to_dict(self):
        return {"name": self.name, "trials": self.trials, "applicable": self.applicable,
                "premise_held": self.premise_held,
                "violations": [v.tolist() for v in self.violations]}


def implication_suite(sampler, trials, implications=None, seed=0):
    """Sample matrices and test ``premise holds => conclusion holds`` for each implication.

    ``sampler(rng)`` returns a non-negative matrix.  Any recorded violation
    contradicts a claimed implication and should be treated as a failure.
    """
    names = list(IMPLICATIONS) if implications is None else list(implications)
    tallies = {name: ImplicationTally(name) for name in names}
    rng = np.random.default_rng(seed)
    for _ in range(trials):
        A = sampler(rng)
        for name in names:
            imp, tally = IMPLICATIONS[name], tallies[name]
            tally.trials += 1
            if imp.applies is not None and not imp.applies(A):
                continue
            tally.applicable += 1
            if imp.premise(A).holds:
                tally.premise_held += 1
                if not imp.conclusion(A).holds:
                    tally.violations.append(A)
    return tallies


CHECKERS = {
    "C12": check_c12, "C13": check_c13, "C41": check_c41, "C41star": check_c41star,
    "C44": check_c44, "C410": check_c410, "C410star": check_c410star,
    "C411": check_c411, "C412": check_c412,
}
