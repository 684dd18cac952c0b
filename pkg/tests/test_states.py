import numpy as np
import pytest

from qcorr import states
from qcorr.errors import (DimensionMismatch, NotHermitian, NotNormalized,
                          NotPSD, ParamOutOfRange, TraceNotOne, UnknownFamily)

SQRT2 = np.sqrt(2)


class TestFromDense:
    def test_maximally_mixed(self):
        rho = states.from_dense(np.eye(4) / 4, (2, 2))
        assert rho.dims == (2, 2)
        assert abs(np.trace(rho.matrix) - 1) < 1e-12

    def test_trace_not_one(self):
        with pytest.raises(TraceNotOne):
            states.from_dense(np.diag([1.0, 0.1]), [2])

    def test_not_psd(self):
        with pytest.raises(NotPSD):
            states.from_dense(np.diag([1.2, -0.2]), [2])

    def test_not_hermitian(self):
        m = np.array([[0.5, 0.5], [0.0, 0.5]], dtype=complex)
        with pytest.raises(NotHermitian):
            states.from_dense(m, [2])

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            states.from_dense(np.eye(4) / 4, (2, 3))


class TestFromPure:
    def test_ket00(self):
        rho = states.from_pure([1, 0, 0, 0], (2, 2))
        assert rho.matrix[0, 0] == 1

    def test_paper_example(self):
        rho = states.from_pure([1 / SQRT2, 0, 0.5, 0.5], (2, 2))
        w = rho.eigenvalues()
        assert abs(w[-1] - 1) < 1e-9
        assert np.all(w[:-1] <= 1e-9)

    def test_bell(self):
        rho = states.from_pure([1 / SQRT2, 0, 0, 1 / SQRT2], (2, 2))
        assert abs(rho.matrix[0, 3] - 0.5) < 1e-12

    def test_not_normalized(self):
        with pytest.raises(NotNormalized):
            states.from_pure([1, 1], [2])


class TestNamed:
    def test_paper_example(self):
        rho = states.named("paper_example")
        expected = states.from_pure([1 / SQRT2, 0, 0.5, 0.5], (2, 2))
        assert np.abs(rho.matrix - expected.matrix).max() < 1e-12

    def test_werner_zero(self):
        rho = states.named("werner", p=0.0)
        assert np.abs(rho.matrix - np.eye(4) / 4).max() < 1e-12

    def test_werner_out_of_range(self):
        with pytest.raises(ParamOutOfRange):
            states.named("werner", p=1.5)

    def test_ghz3(self):
        rho = states.named("ghz", n=3)
        psi = np.zeros(8)
        psi[0] = psi[7] = 1 / SQRT2
        assert np.abs(rho.matrix - np.outer(psi, psi)).max() < 1e-12

    def test_product(self):
        rho = states.named("product", bloch=[[0, 0, 1], [1, 0, 0]])
        expected = np.kron(np.diag([1.0, 0.0]), np.full((2, 2), 0.5))
        assert np.abs(rho.matrix - expected).max() < 1e-12

    def test_maximally_mixed(self):
        rho = states.named("maximally_mixed", dims=(2, 3))
        assert rho.dims == (2, 3)
        assert np.abs(rho.matrix - np.eye(6) / 6).max() < 1e-12

    def test_unknown_family(self):
        with pytest.raises(UnknownFamily):
            states.named("nope")


class TestReducedAndTensor:
    def test_reduced_product(self, rng):
        a = states.random_density([2], rng)
        b = states.random_density([3], rng)
        out = states.reduced(states.tensor(a, b), {0})
        assert np.abs(out.matrix - a.matrix).max() < 1e-10

    def test_reduced_paper_example(self):
        # by hand: Tr_B |psi><psi| for amplitudes (1/sqrt2, 0, 1/2, 1/2)
        rho = states.reduced(states.named("paper_example"), {0})
        expected = np.array([[0.5, 1 / (2 * SQRT2)], [1 / (2 * SQRT2), 0.5]])
        assert np.abs(rho.matrix - expected).max() < 1e-12

    def test_reduced_ghz_middle(self):
        rho = states.reduced(states.named("ghz", n=3), {1})
        assert np.abs(rho.matrix - np.eye(2) / 2).max() < 1e-12

    def test_tensor_dims(self):
        a = states.named("maximally_mixed", dims=[2])
        out = states.tensor(a, a)
        assert out.dims == (2, 2)
        assert np.abs(out.matrix - np.eye(4) / 4).max() < 1e-12
        assert abs(np.trace(out.matrix) - 1) < 1e-12


def test_random_density_valid(rng):
    for dims in [(2, 2), (2, 3), (2, 2, 2)]:
        rho = states.random_density(dims, rng)
        assert rho.eigenvalues()[0] >= -1e-9
        assert abs(np.trace(rho.matrix) - 1) < 1e-9


def test_random_bell_diagonal_marginals(rng):
    rho = states.random_bell_diagonal(rng)
    for k in (0, 1):
        assert np.abs(states.reduced(rho, {k}).matrix - np.eye(2) / 2).max() < 1e-10
