import numpy as np
import pytest
import scipy.linalg

from src.walkzeta.errors import ParameterError, SizeError
from src.walkzeta.linalg.dense import (
    as_complex_matrix,
    expm,
    inf_norm,
    lu_determinant,
    matrix_power,
    matrix_power_trace,
)
from src.walkzeta.spectra.graphs import TorusSpec, build_torus_transition


def test_as_complex_matrix_validation():
    assert as_complex_matrix([[1, 2], [3, 4]]).dtype == np.complex128
    with pytest.raises(SizeError):
        as_complex_matrix([1, 2, 3])
    with pytest.raises(SizeError):
        as_complex_matrix(np.zeros((2, 3)))
    with pytest.raises(ParameterError):
        as_complex_matrix([[np.inf]])


def test_inf_norm():
    assert inf_norm(np.array([[1.0, -2.0], [0.5, 0.5]])) == 3.0


class TestDeterminant:
    def test_small_known(self):
        assert lu_determinant([[1.0, 2.0], [3.0, 4.0]]) == pytest.approx(-2.0)

    def test_pivoting_needed(self):
        assert lu_determinant([[0.0, 1.0], [1.0, 0.0]]) == pytest.approx(-1.0)

    def test_singular(self):
        assert lu_determinant([[1.0, 2.0], [2.0, 4.0]]) == 0.0

    def test_complex_matches_scipy(self):
        rng = np.random.default_rng(3)
        m = rng.normal(size=(9, 9)) + 1j * rng.normal(size=(9, 9))
        assert lu_determinant(m) == pytest.approx(scipy.linalg.det(m), rel=1e-10)

    def test_does_not_mutate_input(self):
        m = np.array([[2.0, 1.0], [1.0, 3.0]])
        lu_determinant(m)
        assert m.tolist() == [[2.0, 1.0], [1.0, 3.0]]


class TestExpm:
    def test_zero_is_identity(self):
        assert np.allclose(expm(np.zeros((3, 3))), np.eye(3))

    def test_diagonal(self):
        result = expm(np.diag([1.0, -2.0, 0.5j]))
        assert np.allclose(np.diag(result), np.exp([1.0, -2.0, 0.5j]), rtol=1e-13)

    @pytest.mark.parametrize("phase,t", [(1.0, 0.7), (1.0, 5.0), (1j, 3.0), (np.exp(0.4j), 12.0)])
    def test_torus_generator_matches_scipy(self, phase, t):
        p = build_torus_transition(TorusSpec(2, 4)).entries
        generator = phase * t * (p - np.eye(16))
        assert np.allclose(expm(generator), scipy.linalg.expm(generator), rtol=1e-10, atol=1e-12)

    def test_random_matches_scipy(self):
        rng = np.random.default_rng(11)
        a = 0.8 * rng.normal(size=(6, 6))
        assert np.allclose(expm(a), scipy.linalg.expm(a), rtol=1e-10, atol=1e-12)


class TestMatrixPower:
    @pytest.mark.parametrize("r", [0, 1, 3, 8, 9, 13, 32])
    def test_matches_numpy(self, r):
        rng = np.random.default_rng(r)
        m = rng.normal(size=(5, 5)) / 3.0
        assert np.allclose(matrix_power(m, r), np.linalg.matrix_power(m, r), rtol=1e-12, atol=1e-14)

    def test_negative_power(self):
        with pytest.raises(ParameterError):
            matrix_power(np.eye(2), -1)

    def test_trace(self):
        p = build_torus_transition(TorusSpec(1, 4)).entries
        assert matrix_power_trace(p, 0) == pytest.approx(4.0)
        # 2 steps on the 4-cycle return with probability 1/2 from every vertex
        assert matrix_power_trace(p, 2) == pytest.approx(2.0)
        assert matrix_power_trace(p, 3) == pytest.approx(0.0, abs=1e-15)


@pytest.mark.parametrize("seed", range(10))
def test_determinant_is_multiplicative(seed):
    rng = np.random.default_rng(100 + seed)
    a = rng.normal(size=(8, 8)) + 1j * rng.normal(size=(8, 8)) + 8.0 * np.eye(8)
    b = rng.normal(size=(8, 8)) + 1j * rng.normal(size=(8, 8)) + 8.0 * np.eye(8)
    assert lu_determinant(a @ b) == pytest.approx(lu_determinant(a) * lu_determinant(b), rel=1e-10)
