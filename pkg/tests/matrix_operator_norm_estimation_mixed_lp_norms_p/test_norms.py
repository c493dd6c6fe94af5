import math

import numpy as np
import pytest

from seqnorm import matrices as mg
from seqnorm.norms import NormEstimate, apply, grid_oracle, linear_maximizer, norm_estimate, \
    sweep_diagnostics, truncation_sweep
from seqnorm.spaces import SpaceSpec, WeightSeq, space_norm

L1, L2, L3, LINF = (SpaceSpec.lp(p) for p in (1, 2, 3, math.inf))


def harmonic(n):
    return WeightSeq.from_function(lambda k: 1 / k, n)


class TestApply:
    def test_identity(self):
        np.testing.assert_array_equal(apply(np.eye(3), [1, 2, 3]), [1, 2, 3])

    def test_l1_counterexample_on_e2(self):
        np.testing.assert_array_equal(apply(mg.counterexample_l1(5), np.eye(5)[1]), [0, 1, 0.5, 0, 0])

    def test_hilbert(self):
        np.testing.assert_allclose(apply(mg.hilbert(2), [1, 1]), [1.5, 5 / 6])

    def test_mismatch(self):
        with pytest.raises(ValueError):
            apply(np.eye(3), [1, 2])


class TestCounterexampleValues:
    def test_l1_unrestricted(self):
        est = norm_estimate(mg.counterexample_l1(5), L1, L1)
        assert est.method == "exact_p1"
        assert est.value == 1.5
        np.testing.assert_array_equal(est.maximizer, np.eye(5)[1])

    def test_l1_restricted(self):
        est = norm_estimate(mg.counterexample_l1(5), L1, L1, restricted=True)
        assert est.value == pytest.approx(1.25, abs=1e-12)
        np.testing.assert_allclose(est.maximizer, [0.5, 0.5, 0, 0, 0])

    def test_l2_unrestricted(self):
        est = norm_estimate(mg.counterexample_l2(), L2, L2)
        assert est.value == pytest.approx(math.sqrt(2), abs=1e-9)
        np.testing.assert_allclose(est.maximizer, [0, 2 ** -0.5, 2 ** -0.5], atol=1e-6)

    def test_l2_restricted(self):
        est = norm_estimate(mg.counterexample_l2(), L2, L2, restricted=True)
        assert est.value == pytest.approx(math.sqrt(5 / 3), abs=1e-9)
        np.testing.assert_allclose(est.maximizer, [3 ** -0.5] * 3, atol=1e-6)


class TestExactPaths:
    def test_pinf(self, rng):
        A = rng.random((4, 3))
        est = norm_estimate(A, LINF, L2)
        assert est.method == "exact_pinf"
        assert est.value == pytest.approx(np.linalg.norm(A.sum(axis=1)))

    def test_p1_into_p1_is_max_column_sum(self, rng):
        A = rng.random((5, 4))
        assert norm_estimate(A, L1, L1).value == pytest.approx(A.sum(axis=0).max())

    def test_weighted_p1_vertices(self, rng):
        A = rng.random((3, 3))
        w = WeightSeq([1, 0.5, 0.25])
        est = norm_estimate(A, SpaceSpec.weighted(1, w), L1)
        assert est.value == pytest.approx((A.sum(axis=0) / w.entries).max())

    def test_lorentz_p1(self, rng):
        A = rng.random((3, 4))
        E = SpaceSpec.lorentz(1, harmonic(4))
        est = norm_estimate(A, E, L2)
        assert space_norm(E, est.maximizer) == pytest.approx(1)
        assert est.value >= norm_estimate(A, E, L2, restricted=True).value - 1e-12

    @pytest.mark.parametrize("F", [L1, L2, L3, LINF])
    @pytest.mark.parametrize("E", [L1, LINF])
    @pytest.mark.parametrize("restricted", [False, True])
    def test_exact_matches_iteration(self, rng, E, F, restricted):
        for _ in range(10):
            A = rng.random((4, 5)) * (rng.random((4, 5)) < 0.7)
            a = norm_estimate(A, E, F, restricted).value
            b = norm_estimate(A, E, F, restricted, exact=False).value
            assert a == pytest.approx(b, abs=1e-8)


class TestEstimateContract:
    @pytest.mark.parametrize("E, F", [(L2, L2), (L3, L2), (L2, L3), (SpaceSpec.lp(1.5), LINF),
                                      (L2, SpaceSpec.weighted(2, harmonic(6))),
                                      (SpaceSpec.lorentz(2, harmonic(5)), L2)])
    @pytest.mark.parametrize("restricted", [False, True])
    def test_unit_maximizer_and_value(self, rng, E, F, restricted):
        A = rng.random((6, 5))
        est = norm_estimate(A, E, F, restricted)
        assert est.value >= 0
        assert space_norm(E, est.maximizer) == pytest.approx(1, abs=1e-9)
        assert space_norm(F, A @ est.maximizer) == pytest.approx(est.value, rel=1e-12)
        assert np.all(est.maximizer >= 0)
        if restricted:
            assert np.all(np.diff(est.maximizer) <= 1e-15)
        assert est.method in ("fixed_point", "multistart_gradient")

    def test_zero_matrix(self):
        assert norm_estimate(np.zeros((2, 3)), L2, L2).value == 0

    def test_weights_too_short(self):
        with pytest.raises(ValueError):
            norm_estimate(np.ones((4, 4)), L2, SpaceSpec.weighted(2, [1, 1]))

    def test_deterministic(self, rng):
        A = rng.random((5, 5))
        a, b = norm_estimate(A, L3, L2), norm_estimate(A, L3, L2)
        assert a.value == b.value
        np.testing.assert_array_equal(a.maximizer, b.maximizer)

    def test_json(self):
        d = norm_estimate(mg.counterexample_l1(5), L1, L1).to_dict()
        assert {"value", "maximizer", "restricted", "method", "iterations", "converged"} <= set(d)
        assert isinstance(d["maximizer"], list)

    def test_svd_agreement(self, rng):
        for _ in range(5):
            A = rng.random((7, 6))
            assert norm_estimate(A, L2, L2).value == pytest.approx(np.linalg.svd(A, compute_uv=False)[0])


class TestLinearMaximizer:
    def test_l2(self):
        np.testing.assert_allclose(linear_maximizer(L2, np.array([3.0, 4.0]), False), [0.6, 0.8])

    def test_decreasing_cone(self):
        x = linear_maximizer(L2, np.array([0.0, 1.0, 1.0]), True)
        assert np.all(np.diff(x) <= 0)
        assert space_norm(L2, x) == pytest.approx(1)


class TestGridOracle:
    def test_identity(self):
        for res in (1, 7, 50):
            assert abs(grid_oracle(np.eye(2), L2, L2, resolution=res) - 1) <= 1 / res

    def test_l2_counterexample(self):
        A = mg.counterexample_l2()
        assert grid_oracle(A, L2, L2, resolution=200) == pytest.approx(1.4142, abs=0.01)
        assert grid_oracle(A, L2, L2, restricted=True, resolution=200) == pytest.approx(1.2910, abs=0.01)

    def test_limits(self):
        with pytest.raises(ValueError):
            grid_oracle(np.eye(5), L2, L2)
        with pytest.raises(ValueError):
            grid_oracle(np.eye(2), L2, L2, resolution=0)

    @pytest.mark.parametrize("p, q", [(1, 2), (2, 2), (3, 1), (math.inf, 3), (2, math.inf)])
    def test_agreement(self, rng, p, q):
        E, F = SpaceSpec.lp(p), SpaceSpec.lp(q)
        for _ in range(5):
            A = rng.random((3, 3))
            for restricted in (False, True):
                est = norm_estimate(A, E, F, restricted).value
                assert abs(est - grid_oracle(A, E, F, restricted, 100)) <= 2 / 100


class TestSweeps:
    def test_weighted_mean_equality(self):
        for n in (10, 20, 30):
            A = mg.weighted_mean(harmonic(n), n)
            for M in (A, A.T):
                assert abs(norm_estimate(M, L2, L2).value - norm_estimate(M, L2, L2, True).value) <= 1e-4

    def test_hilbert_equality(self):
        H = mg.hilbert(30)
        for F in (L2, SpaceSpec.weighted(2, harmonic(30))):
            assert abs(norm_estimate(H, L2, F).value - norm_estimate(H, L2, F, True).value) <= 1e-4

    def test_hilbert_sweep_monotone(self):
        ests = truncation_sweep(mg.MatrixFamily("hilbert"), L2, L2, (5, 10, 20))
        diag = sweep_diagnostics(ests)
        assert diag["monotone"]
        assert all(v < math.pi for v in diag["values"])

    def test_estimates_carry_truncation(self):
        ests = truncation_sweep(mg.MatrixFamily("hilbert"), L2, L2, (3, 4))
        assert [e.truncation for e in ests] == [(3, 3), (4, 4)]
        assert all(isinstance(e, NormEstimate) for e in ests)
