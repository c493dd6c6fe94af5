"""Order and scaling properties of the norm estimate on random small matrices."""

import math

import numpy as np
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from conftest import nonneg_matrices
from seqnorm import conditions as cond
from seqnorm.norms import norm_estimate
from seqnorm.spaces import SpaceSpec, WeightSeq

PAIRS = st.sampled_from([(1, 1), (1, 2), (2, 2), (2, 3), (3, 2), (1.5, 1.5), (2, math.inf), (math.inf, 2)])


def spaces(pair):
    return SpaceSpec.lp(pair[0]), SpaceSpec.lp(pair[1])


def tol(value):
    return 1e-6 * max(1.0, value)


@given(nonneg_matrices(4, 4, levels=8), PAIRS)
def test_restricted_below_unrestricted(A, pair):
    E, F = spaces(pair)
    full = norm_estimate(A, E, F).value
    assert norm_estimate(A, E, F, restricted=True).value <= full + tol(full)


@given(nonneg_matrices(4, 4, levels=8), PAIRS, st.floats(0.01, 100))
def test_scaling(A, pair, c):
    E, F = spaces(pair)
    for restricted in (False, True):
        a = norm_estimate(c * A, E, F, restricted).value
        b = c * norm_estimate(A, E, F, restricted).value
        assert abs(a - b) <= tol(b)


@given(nonneg_matrices(4, 4, levels=8).flatmap(
    lambda A: st.tuples(st.just(A), arrays(float, A.shape, elements=st.integers(0, 4).map(lambda k: k / 4)))),
    PAIRS)
def test_monotone_in_entries(pair_of_mats, pair):
    A, extra = pair_of_mats
    E, F = spaces(pair)
    for restricted in (False, True):
        small = norm_estimate(A, E, F, restricted).value
        big = norm_estimate(A + extra, E, F, restricted).value
        assert small <= big + tol(big)


@given(nonneg_matrices(5, 4, levels=4), st.sampled_from([(2, 2), (1.5, 3), (3, 1.5)]))
def test_equality_under_sufficient_condition(A, pair):
    # both modes are estimates, so compare with a margin that covers either one under-shooting
    if not (cond.check_c412(A).holds or cond.check_c12(A).holds):
        return
    E, F = spaces(pair)
    full = norm_estimate(A, E, F).value
    dec = norm_estimate(A, E, F, restricted=True).value
    assert abs(full - dec) <= 1e-6 * max(1.0, full)


@given(nonneg_matrices(4, 4, levels=4))
def test_equality_into_weighted_space(A):
    if not cond.check_c412(A).holds:
        return
    F = SpaceSpec.weighted(2, WeightSeq.from_function(lambda k: 1 / k, A.shape[0]))
    E = SpaceSpec.lp(2)
    full = norm_estimate(A, E, F).value
    assert abs(full - norm_estimate(A, E, F, restricted=True).value) <= 1e-6 * max(1.0, full)


@given(nonneg_matrices(4, 4, levels=8))
def test_transpose_duality(A):
    # ||A||_{p,q} = ||A^T||_{q',p'}
    for p, q in ((2, 3), (1.5, 2), (3, 1.5)):
        a = norm_estimate(A, SpaceSpec.lp(p), SpaceSpec.lp(q)).value
        b = norm_estimate(A.T, SpaceSpec.lp(q / (q - 1)), SpaceSpec.lp(p / (p - 1))).value
        assert abs(a - b) <= 1e-6 * max(1.0, a)


def test_svd_random(rng=np.random.default_rng(5)):
    for _ in range(20):
        n, m = rng.integers(1, 9, size=2)
        A = rng.random((n, m))
        assert abs(norm_estimate(A, SpaceSpec.lp(2), SpaceSpec.lp(2)).value
                   - np.linalg.svd(A, compute_uv=False)[0]) <= 1e-10
