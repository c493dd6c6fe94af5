"""Row rearrangements in block form.

A row rearrangement ``B`` of ``A`` is in block form ``(gamma, lam)`` when its
rows split into

* a top chain, rows ``1..gamma``, each dominating (entrywise ``>=``) every
  later row;
* a middle block, rows ``gamma+1..lam``, in which no row dominates all the
  other middle rows and no row is dominated by all of them;
* a bottom chain, rows ``lam+1..n``, each dominated by every earlier row.

With an empty middle (``gamma == lam``) this is exactly a column-decreasing
matrix.  Block forms always exist (greedy construction below), and sorting
the middle rows by ``(Bx)_j`` makes ``Bx`` decreasing for any ``x >= 0``.

Row indices are 0-based in Python objects and 1-based in JSON.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from ._validation import EnumerationCapError, check_matrix, check_vector, matvec


@dataclass(frozen=True)
class BlockForm:
    gamma: int
    lam: int
    perm: tuple

    def __post_init__(self):
        perm = tuple(int(i) for i in self.perm)
        if sorted(perm) != list(range(len(perm))):
            raise ValueError(f"{perm} is not a permutation of 0..{len(perm) - 1}")
        object.__setattr__(self, "perm", perm)
        if not 0 <= self.gamma <= self.lam <= len(perm):
            raise ValueError(f"need 0 <= gamma <= lambda <= n, got ({self.gamma}, {self.lam})")

    @property
    def n(self):
        return len(self.perm)

    @property
    def middle(self):
        return range(self.gamma, self.lam)

    def to_dict(self):
        return {"gamma": self.gamma, "lambda": self.lam, "perm": [i + 1 for i in self.perm]}

    @classmethod
    def from_dict(cls, d):
        return cls(int(d["gamma"]), int(d["lambda"]), tuple(int(i) - 1 for i in d["perm"]))


def _check_perm(perm, n):
    perm = np.asarray(perm, dtype=int)
    if perm.shape != (n,) or sorted(perm.tolist()) != list(range(n)):
        raise ValueError(f"expected a permutation of 0..{n - 1}, got {perm.tolist()}")
    return perm


def apply_row_perm(A, perm):
    """Row ``j`` of the result is row ``perm[j]`` of ``A``."""
    A = check_matrix(A)
    return A[_check_perm(perm, A.shape[0])].copy()


def dominance_matrix(A):
    """``D[i, j]`` is true when row ``i`` of ``A`` is entrywise ``>=`` row ``j``."""
    A = np.asarray(A, dtype=float)
    return np.all(A[:, None, :] >= A[None, :, :], axis=2)


def _top_ok(D, order):
    # ok[g]: the first g rows each dominate every row after them
    n = len(order)
    ok = [True] * (n + 1)
    for g in range(1, n + 1):
        r = order[g - 1]
        ok[g] = ok[g - 1] and all(D[r, order[t]] for t in range(g, n))
    return ok


def _bottom_ok(D, order):
    # ok[l]: rows l+1..n (1-based) are each dominated by every earlier row
    n = len(order)
    ok = [True] * (n + 1)
    for l in range(n - 1, -1, -1):
        r = order[l]
        ok[l] = ok[l + 1] and all(D[order[t], r] for t in range(l))
    return ok


def _middle_ok(D, rows, allow_singleton=False):
    if len(rows) == 0:
        return True
    if len(rows) == 1:
        # a lone middle row dominates (and is dominated by) all the others vacuously
        return allow_singleton
    for a in rows:
        others = [b for b in rows if b != a]
        if all(D[a, b] for b in others) or all(D[b, a] for b in others):
            return False
    return True


def _valid_pairs(D, order, allow_singleton=False):
    n = len(order)
    top, bot = _top_ok(D, order), _bottom_ok(D, order)
    for g in range(n + 1):
        if not top[g]:
            break
        for l in range(g, n + 1):
            if bot[l] and _middle_ok(D, [order[t] for t in range(g, l)], allow_singleton):
                yield g, l


def is_in_R_gamma_lambda(B, gamma, lam, allow_singleton_middle=False):
    """Membership of ``B`` (taken as its own rearrangement) in block form ``(gamma, lam)``."""
    B = check_matrix(B, "B")
    n = B.shape[0]
    if not 0 <= gamma <= lam <= n:
        raise ValueError(f"need 0 <= gamma <= lambda <= {n}, got ({gamma}, {lam})")
    D = dominance_matrix(B)
    order = list(range(n))
    return bool(
        _top_ok(D, order)[gamma]
        and _bottom_ok(D, order)[lam]
        and _middle_ok(D, order[gamma:lam], allow_singleton_middle)
    )


def construct_R_member(A):
    """Greedy two-phase block form of ``A``.

    First repeatedly pull out the lowest-indexed remaining row that dominates
    all other remaining rows (top chain), then repeatedly pull out the
    lowest-indexed row dominated by all others (bottom chain, filled from the
    last row upward).  Leftover rows form the middle in their original order.
    """
    A = check_matrix(A)
    D = dominance_matrix(A)
    remaining = list(range(A.shape[0]))

    def extract(pred):
        taken = []
        while remaining:
            for j in remaining:
                if all(pred(j, i) for i in remaining if i != j):
                    taken.append(j)
                    remaining.remove(j)
                    break
            else:
                break
        return taken

    top = extract(lambda j, i: D[j, i])
    bottom = extract(lambda j, i: D[i, j])
    perm = tuple(top + remaining + bottom[::-1])
    return BlockForm(len(top), len(top) + len(remaining), perm)


def make_Bx_decreasing(A, x):
    """Block-form rearrangement ``B`` of ``A`` with ``Bx`` non-increasing.

    Returns ``(B, form)``; only the middle rows are reordered (stably, by
    descending ``(Bx)_j``) relative to :func:`construct_R_member`.
    """
    A = check_matrix(A)
    x = check_vector(x, nonnegative=True)
    if x.size != A.shape[1]:
        raise ValueError(f"x has length {x.size}, A has {A.shape[1]} columns")
    form = construct_R_member(A)
    perm = np.array(form.perm)
    y = matvec(A[perm], x)
    mid = np.arange(form.gamma, form.lam)
    perm[mid] = perm[mid][np.argsort(-y[mid], kind="stable")]
    form = BlockForm(form.gamma, form.lam, tuple(perm))
    return A[perm].copy(), form


def iter_R_union(A, cap=7, allow_singleton_middle=False):
    """Yield ``(B, form)`` over all block-form rearrangements, permutations in lexicographic order."""
    A = check_matrix(A)
    n = A.shape[0]
    if n > cap:
        raise EnumerationCapError(f"{n} rows exceeds the enumeration cap of {cap}")
    D = dominance_matrix(A)
    for order in itertools.permutations(range(n)):
        for g, l in _valid_pairs(D, order, allow_singleton_middle):
            yield A[list(order)], BlockForm(g, l, order)


def enumerate_R_union(A, cap=7, allow_singleton_middle=False):
    """All block-form rearrangements of ``A`` as a list of ``(B, BlockForm)``."""
    return list(iter_R_union(A, cap, allow_singleton_middle))
