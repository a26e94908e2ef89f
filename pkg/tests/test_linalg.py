import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from jacobi_oracle import hermitian_eigenvalues

from qdcascade.errors import NumericalError, ParameterError
from qdcascade.linalg import (
    devectorize,
    eigenvalues_general,
    expm,
    hermitize,
    require_finite,
    vectorize,
)


def rand_complex(rng, n):
    return rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))


class TestHermitize:
    def test_identity_fixed_point(self):
        eye = np.eye(4, dtype=complex)
        assert np.array_equal(hermitize(eye), eye)

    def test_forced_by_definition(self):
        m = np.zeros((2, 2), dtype=complex)
        m[0, 1] = 1j
        out = hermitize(m)
        assert out[0, 1] == 0.5j
        assert out[1, 0] == -0.5j

    def test_idempotent_on_random(self):
        rng = np.random.default_rng(42)
        for _ in range(20):
            m = rand_complex(rng, 4)
            once = hermitize(m)
            np.testing.assert_allclose(hermitize(once), once, atol=1e-15)
            assert np.abs(once - once.conj().T).max() < 1e-15

    def test_rejects_non_square(self):
        with pytest.raises(ParameterError):
            hermitize(np.zeros((2, 3)))


class TestExpm:
    def test_zero_matrix(self):
        np.testing.assert_array_equal(expm(np.zeros((4, 4))), np.eye(4))

    def test_diagonal(self):
        out = expm(np.diag([1.0 + 0j, -2.0]))
        np.testing.assert_allclose(np.diag(out), [np.e, np.exp(-2.0)], rtol=1e-14)
        assert abs(out[0, 1]) == 0.0

    def test_nilpotent(self):
        out = expm(np.array([[0.0, 1.0], [0.0, 0.0]]))
        np.testing.assert_allclose(out, [[1.0, 1.0], [0.0, 1.0]], atol=1e-15)

    def test_inverse_property(self):
        rng = np.random.default_rng(7)
        for _ in range(10):
            m = rand_complex(rng, 4)
            m *= 5.0 / np.linalg.norm(m)
            prod = expm(m) @ expm(-m)
            np.testing.assert_allclose(prod, np.eye(4), atol=1e-9)

    def test_series_oracle(self):
        # independent route: scaling-and-squaring over a plain Taylor sum
        def taylor_expm(m, terms=30):
            k = 0
            while np.linalg.norm(m) > 0.25:
                m = m / 2.0
                k += 1
            out = np.eye(m.shape[0], dtype=complex)
            term = np.eye(m.shape[0], dtype=complex)
            for i in range(1, terms):
                term = term @ m / i
                out = out + term
            for _ in range(k):
                out = out @ out
            return out

        rng = np.random.default_rng(11)
        for _ in range(10):
            m = rand_complex(rng, 4)
            np.testing.assert_allclose(expm(m), taylor_expm(m), atol=1e-12)

    def test_overflow_raises(self):
        with pytest.raises(NumericalError):
            expm(np.diag([1.0e6, 0.0]))

    def test_rejects_non_finite_input(self):
        bad = np.array([[np.nan, 0.0], [0.0, 0.0]])
        with pytest.raises(NumericalError):
            expm(bad)


class TestEigenvaluesGeneral:
    def test_diagonal_readoff(self):
        vals = eigenvalues_general(np.diag([3.0, 1.0, 2.0, 0.0]))
        np.testing.assert_allclose(vals, [3.0, 2.0, 1.0, 0.0], atol=1e-14)

    def test_nilpotent(self):
        vals = eigenvalues_general(np.array([[0.0, 1.0], [0.0, 0.0]]))
        np.testing.assert_allclose(vals, [0.0, 0.0], atol=1e-14)

    def test_descending_real_then_imag(self):
        m = np.diag([1.0 + 2.0j, 1.0 - 1.0j, 2.0, 1.0 + 0.5j])
        vals = eigenvalues_general(m)
        np.testing.assert_allclose(
            vals, [2.0, 1.0 + 2.0j, 1.0 + 0.5j, 1.0 - 1.0j], atol=1e-14
        )

    def test_hermitian_against_jacobi_oracle(self):
        rng = np.random.default_rng(3)
        for n in (2, 4, 8, 16):
            for _ in range(5):
                h = hermitize(rand_complex(rng, n))
                mine = eigenvalues_general(h)
                oracle = hermitian_eigenvalues(h)
                assert np.abs(mine.imag).max() < 1e-10
                np.testing.assert_allclose(mine.real, oracle, atol=1e-9)

    def test_rejects_non_square(self):
        with pytest.raises(ParameterError):
            eigenvalues_general(np.zeros((3, 4)))


class TestVectorize:
    def test_column_stacking_convention(self):
        m = np.array([[1.0, 3.0], [2.0, 4.0]])
        np.testing.assert_array_equal(vectorize(m), [1.0, 2.0, 3.0, 4.0])

    def test_kronecker_identity(self):
        rng = np.random.default_rng(5)
        for _ in range(10):
            a = rand_complex(rng, 4)
            b = rand_complex(rng, 4)
            rho = rand_complex(rng, 4)
            lhs = vectorize(a @ rho @ b)
            rhs = np.kron(b.T, a) @ vectorize(rho)
            np.testing.assert_allclose(lhs, rhs, atol=1e-12)

    def test_round_trip_bit_identical(self):
        rng = np.random.default_rng(9)
        m = rand_complex(rng, 4)
        assert np.array_equal(devectorize(vectorize(m)), m)

    def test_devectorize_length_check(self):
        with pytest.raises(ParameterError):
            devectorize(np.zeros(5))


class TestRequireFinite:
    def test_passes_finite(self):
        m = np.ones((2, 2), dtype=complex)
        assert require_finite(m) is m

    @pytest.mark.parametrize("bad", [np.nan, np.inf, -np.inf])
    def test_raises(self, bad):
        with pytest.raises(NumericalError):
            require_finite(np.array([[bad, 0.0], [0.0, 0.0]]), "test input")


@settings(max_examples=50, deadline=None)
@given(
    st.lists(
        st.floats(min_value=-10, max_value=10, allow_nan=False),
        min_size=8,
        max_size=8,
    )
)
def test_hermitize_trace_is_real_property(values):
    m = np.array(values[:4]).reshape(2, 2) + 1j * np.array(values[4:]).reshape(2, 2)
    h = hermitize(m)
    assert abs(np.trace(h).imag) < 1e-12
    np.testing.assert_allclose(h, h.conj().T, atol=1e-15)
