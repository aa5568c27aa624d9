import numpy as np
import pytest

from adibt.exceptions import DimensionMismatch, PoleHit, SingularE
from adibt.model import (
    DescriptorSystem,
    eval_transfer,
    eval_transfer_derivative,
    poles,
    random_stable_system,
    validate_system,
)

from conftest import random_eval_points
import refdata


def scalar_lag():
    # G(s) = 1/(s+1)
    return DescriptorSystem([[1.0]], [[-1.0]], [[1.0]], [[1.0]])


class TestValidate:
    def test_reference_system_is_valid(self, refsys):
        assert refsys.validated
        assert (refsys.n, refsys.m, refsys.p) == (8, 3, 2)

    def test_zero_e_rejected(self):
        sys = DescriptorSystem(np.zeros((2, 2)), -np.eye(2), np.ones((2, 1)), np.ones((1, 2)))
        with pytest.raises(SingularE):
            validate_system(sys)

    def test_wrong_b_rows_rejected(self):
        sys = DescriptorSystem(np.eye(2), -np.eye(2), np.ones((3, 1)), np.ones((1, 2)))
        with pytest.raises(DimensionMismatch):
            validate_system(sys)

    def test_nonsquare_a_rejected(self):
        with pytest.raises(DimensionMismatch):
            validate_system(
                DescriptorSystem(np.eye(2), -np.ones((2, 3)), np.ones((2, 1)), np.ones((1, 2)))
            )


class TestEvalTransfer:
    def test_scalar_lag_at_zero(self):
        assert eval_transfer(scalar_lag(), 0.0) == pytest.approx(1.0)

    def test_reference_column_values(self, refsys):
        # G(2.3710) column 1 appears as column 1 of the golden interim C
        G = eval_transfer(refsys, 2.3710)
        assert abs(G[0, 0] - 1.3142) < 5e-4
        assert abs(G[1, 0] - (-1.1009)) < 5e-4

    def test_pole_hit(self):
        with pytest.raises(PoleHit):
            eval_transfer(scalar_lag(), -1.0)

    def test_state_space_equivalence(self):
        rng = np.random.default_rng(5)
        sys = random_stable_system(6, 2, 3, seed=11)
        TL = rng.normal(size=(6, 6)) + 0.5 * np.eye(6)
        TR = rng.normal(size=(6, 6)) + 0.5 * np.eye(6)
        other = DescriptorSystem(TL @ sys.E @ TR, TL @ sys.A @ TR, TL @ sys.B, sys.C @ TR)
        for s in random_eval_points(rng):
            Ga = eval_transfer(sys, s)
            Gb = eval_transfer(other, s)
            assert np.linalg.norm(Ga - Gb) <= 1e-10 * np.linalg.norm(Ga)


class TestDerivative:
    def test_scalar_lag_closed_forms(self):
        sys = scalar_lag()
        assert eval_transfer_derivative(sys, 0.0) == pytest.approx(-1.0)
        assert eval_transfer_derivative(sys, 1.0) == pytest.approx(-0.25)

    @pytest.mark.parametrize("s", [1.1434, 0.7 + 1.3j])
    def test_matches_central_finite_difference(self, refsys, s):
        h = 1e-6 * (1.0 + abs(s))
        fd = (eval_transfer(refsys, s + h) - eval_transfer(refsys, s - h)) / (2 * h)
        d = eval_transfer_derivative(refsys, s)
        assert np.linalg.norm(d - fd) <= 1e-6 * np.linalg.norm(fd)

    def test_pole_hit(self):
        with pytest.raises(PoleHit):
            eval_transfer_derivative(scalar_lag(), -1.0)


class TestPoles:
    def test_diagonal_pencil(self):
        spec = poles(DescriptorSystem(np.eye(2), np.diag([-1.0, -2.0]), np.ones((2, 1)), np.ones((1, 2))))
        np.testing.assert_allclose(spec.values, [-2.0, -1.0], atol=1e-14)

    def test_pencil_scaling(self):
        spec = poles(DescriptorSystem([[2.0]], [[-1.0]], [[1.0]], [[1.0]]))
        np.testing.assert_allclose(spec.values, [-0.5], atol=1e-14)

    def test_sort_order(self):
        A = np.diag([-1.0 + 1j, -1.0 - 1j, -3.0])
        spec = poles(DescriptorSystem(np.eye(3), A, np.ones((3, 1)), np.ones((1, 3))))
        np.testing.assert_allclose(spec.values, [-3.0, -1.0 - 1j, -1.0 + 1j], atol=1e-12)

    def test_reference_system_stable(self, refsys):
        spec = poles(refsys)
        assert len(spec) == 8
        assert spec.values.real.max() < 0


class TestRandomStableSystem:
    def test_deterministic(self):
        a = random_stable_system(4, 1, 1, seed=7)
        b = random_stable_system(4, 1, 1, seed=7)
        assert np.array_equal(a.A, b.A)
        assert np.array_equal(a.E, b.E)
        assert np.array_equal(a.B, b.B)
        assert np.array_equal(a.C, b.C)

    @pytest.mark.parametrize("seed", range(5))
    def test_stable_and_valid(self, seed):
        sys = random_stable_system(5, 2, 1, seed=seed)
        assert sys.validated
        assert poles(sys).values.real.max() < 0
