"""Input validation helpers shared across the package."""

import numpy as np

EPS = np.finfo(float).eps


class EnumerationCapError(ValueError):
    """Raised when an exhaustive search would exceed its configured cap."""


def check_vector(x, name="x", nonnegative=False):
    x = np.asarray(x, dtype=float)
    if x.ndim != 1:
        raise ValueError(f"{name} must be one-dimensional, got shape {x.shape}")
    if not np.all(np.isfinite(x)):
        raise ValueError(f"{name} has non-finite entries")
    if nonnegative and np.any(x < 0):
        raise ValueError(f"{name} has negative entries")
    return x


def check_matrix(A, name="A"):
    """Return ``A`` as a float array after checking it is a finite, non-negative 2-D array."""
    A = np.asarray(A, dtype=float)
    if A.ndim != 2:
        raise ValueError(f"{name} must be two-dimensional, got shape {A.shape}")
    if A.shape[0] == 0 or A.shape[1] == 0:
        raise ValueError(f"{name} must have at least one row and one column")
    if not np.all(np.isfinite(A)):
        raise ValueError(f"{name} has non-finite entries")
    if np.any(A < 0):
        raise ValueError(f"{name} must be entrywise non-negative")
    return A


def fp_guard(nterms, lhs, rhs):
    """Rounding allowance when comparing two float sums of ``nterms`` non-negative terms.

    Bounds the accumulated summation error of both sides; genuine violations
    larger than a few ulps of the compared sums are never masked.
    """
    return 4.0 * (nterms + 1) * EPS * (np.abs(lhs) + np.abs(rhs))


def matvec(A, x):
    # Row sums of A*x reduce each row in the same order, so entrywise
    # domination between rows survives rounding.
    return np.sum(A * x[np.newaxis, :], axis=1)
