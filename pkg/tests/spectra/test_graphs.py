import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from src.walkzeta.errors import MatrixFormatError, SizeError
from src.walkzeta.spectra.graphs import (
    MomentumIndex,
    TorusSpec,
    TransitionMatrix,
    build_torus_transition,
    e_cos,
    momentum_grid,
    momentum_indices,
)


class TestTorusSpec:
    def test_vertex_count(self):
        assert TorusSpec(2, 3).vertex_count == 9
        assert TorusSpec(3, 4).vertex_count == 64

    def test_invalid_sizes(self):
        with pytest.raises(SizeError):
            TorusSpec(0, 4)
        with pytest.raises(SizeError):
            TorusSpec(1, 0)
        with pytest.raises(SizeError):
            TorusSpec(20, 10)

    def test_parse(self):
        assert TorusSpec.parse("2, 8") == TorusSpec(2, 8)
        with pytest.raises(SizeError):
            TorusSpec.parse("2")
        with pytest.raises(SizeError):
            TorusSpec.parse("a,b")

    def test_dimension_cap(self):
        assert TorusSpec(28, 1).vertex_count == 1
        with pytest.raises(SizeError, match="dimension"):
            TorusSpec(70, 1)
        with pytest.raises(SizeError):
            TorusSpec.parse("29,1")


def test_momentum_index_range():
    idx = MomentumIndex.from_k([0, 2], 4)
    assert idx.tilde_k == (0.0, math.pi)
    with pytest.raises(SizeError):
        MomentumIndex.from_k([4], 4)


def test_momentum_grid_row_major():
    grid = momentum_grid(TorusSpec(2, 3))
    assert grid.shape == (9, 2)
    assert grid[1] == pytest.approx([0.0, 2 * math.pi / 3])
    assert grid[3] == pytest.approx([2 * math.pi / 3, 0.0])
    lazy = [idx.tilde_k for idx in momentum_indices(TorusSpec(2, 3))]
    assert np.allclose(lazy, grid)


def test_e_cos():
    assert e_cos([0.0, math.pi]) == pytest.approx(0.0)
    assert np.allclose(e_cos(np.zeros((3, 2))), [2.0, 2.0, 2.0])
    with pytest.raises(SizeError):
        e_cos([])


class TestTransitionMatrix:
    def test_valid_symmetric(self):
        m = TransitionMatrix([[0.0, 1.0], [1.0, 0.0]])
        assert m.n == 2
        assert m.is_symmetric

    def test_non_symmetric(self):
        m = TransitionMatrix([[0.5, 0.3], [0.5, 0.7]])
        assert not m.is_symmetric

    def test_entries_read_only(self):
        m = TransitionMatrix([[1.0]])
        with pytest.raises(ValueError):
            m.entries[0, 0] = 2.0

    def test_rejects_negative(self):
        with pytest.raises(MatrixFormatError, match="Negative"):
            TransitionMatrix([[1.5, 0.0], [-0.5, 1.0]])

    def test_rejects_bad_column_sum(self):
        with pytest.raises(MatrixFormatError, match="Column 1"):
            TransitionMatrix([[0.5, 0.5], [0.5, 0.4]])

    def test_rejects_non_square(self):
        with pytest.raises(MatrixFormatError):
            TransitionMatrix([[1.0, 0.0]])


class TestBuildTorusTransition:
    def test_two_dimensional_three_side(self):
        m = build_torus_transition(TorusSpec(2, 3))
        assert m.entries.shape == (9, 9)
        for row in m.entries:
            assert np.count_nonzero(row) == 4
            assert np.allclose(row[row > 0], 0.25)
        assert np.allclose(m.entries.sum(axis=0), 1.0)

    def test_multigraph_sides(self):
        assert np.array_equal(build_torus_transition(TorusSpec(1, 1)).entries, [[1.0]])
        assert np.array_equal(build_torus_transition(TorusSpec(1, 2)).entries, [[0.0, 1.0], [1.0, 0.0]])

    def test_too_large(self):
        with pytest.raises(SizeError):
            build_torus_transition(TorusSpec(2, 100))

    @settings(max_examples=25, deadline=None)
    @given(d=st.integers(min_value=1, max_value=3), n=st.integers(min_value=1, max_value=6))
    def test_invariants(self, d, n):
        """Every torus matrix is symmetric, nonnegative and column-stochastic."""
        m = build_torus_transition(TorusSpec(d, n))
        assert m.is_symmetric
        assert np.all(m.entries >= 0)
        assert np.allclose(m.entries.sum(axis=0), 1.0, atol=1e-12)
