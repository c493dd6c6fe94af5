"""scikit-learn style wrappers.

``OperatorNorm`` treats a matrix as the training data and learns its norm;
``DecreasingRearrangement`` maps each sample (row) to its decreasing
rearrangement.
"""

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from .norms import SEED, norm_estimate
from .spaces import SpaceSpec


class OperatorNorm(BaseEstimator):
    """Estimate ``||A||_{E,F}`` or its decreasing-input version.

    Parameters
    ----------
    E, F : SpaceSpec or None
        Domain and codomain; ``None`` means ``l_2``.
    restricted : bool
        Maximize over non-increasing inputs only.
    n_starts, tol, max_iter, seed
        Passed to :func:`seqnorm.norms.norm_estimate`.

    Attributes
    ----------
    value_ : float
    maximizer_ : ndarray
    estimate_ : NormEstimate
    """

    def __init__(self, E=None, F=None, restricted=False, n_starts=16, tol=1e-12,
                 max_iter=10_000, seed=SEED):
        self.E = E
        self.F = F
        self.restricted = restricted
        self.n_starts = n_starts
        self.tol = tol
        self.max_iter = max_iter
        self.seed = seed

    def fit(self, A, y=None):
        A = check_array(A, dtype=float)
        if np.any(A < 0):
            raise ValueError("A must be entrywise non-negative")
        E = self.E if self.E is not None else SpaceSpec.lp(2)
        F = self.F if self.F is not None else SpaceSpec.lp(2)
        self.estimate_ = norm_estimate(A, E, F, self.restricted, n_starts=self.n_starts,
                                       tol=self.tol, max_iter=self.max_iter, seed=self.seed)
        self.value_ = self.estimate_.value
        self.maximizer_ = self.estimate_.maximizer
        self.n_features_in_ = A.shape[1]
        return self

    def score(self, A=None, y=None):
        check_is_fitted(self)
        return self.value_


class DecreasingRearrangement(TransformerMixin, BaseEstimator):
    """Replace every row by the decreasing rearrangement of its absolute values."""

    def fit(self, X, y=None):
        X = check_array(X, dtype=float)
        self.n_features_in_ = X.shape[1]
        return self

    def transform(self, X):
        check_is_fitted(self)
        X = check_array(X, dtype=float)
        if X.shape[1] != self.n_features_in_:
            raise ValueError(f"X has {X.shape[1]} features, expected {self.n_features_in_}")
        return -np.sort(-np.abs(X), axis=1)
