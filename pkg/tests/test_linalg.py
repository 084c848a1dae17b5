import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cryptoherm import (
    SingularMatrix,
    Tolerance,
    adjoint,
    commutator_residual,
    cyclic_p,
    eig,
    frobenius,
    hermitian_sum,
    inverse,
    is_hermitian,
    is_positive_definite,
)
from cryptoherm.errors import DimensionMismatch
from cryptoherm.linalg import as_complex_matrix


def _random_complex(rng, n):
    return rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))


class TestTolerance:
    def test_defaults(self):
        tol = Tolerance()
        assert tol.rel == 1e-10
        assert tol.abs == 1e-12

    def test_bound_combines_both_parts(self):
        tol = Tolerance(rel=1e-2, abs=1e-3)
        assert tol.bound(10.0) == pytest.approx(0.1 + 1e-3)

    @pytest.mark.parametrize("bad", [{"rel": -1.0}, {"abs": -1.0}, {"rel": float("nan")}])
    def test_rejects_bad_values(self, bad):
        with pytest.raises(ValueError):
            Tolerance(**bad)


class TestCoercion:
    def test_rejects_non_square(self):
        with pytest.raises(DimensionMismatch):
            as_complex_matrix(np.zeros((2, 3)))

    def test_rejects_empty(self):
        with pytest.raises(DimensionMismatch):
            as_complex_matrix(np.zeros((0, 0)))

    def test_rejects_non_finite(self):
        with pytest.raises(ValueError):
            as_complex_matrix([[np.nan, 0], [0, 1]])
        with pytest.raises(ValueError):
            as_complex_matrix([[1, 1j * np.inf], [0, 1]])


@settings(max_examples=50, deadline=None)
@given(st.integers(min_value=2, max_value=6), st.integers(min_value=0, max_value=2**31 - 1))
def test_adjoint_is_an_involution(n, seed):
    m = _random_complex(np.random.default_rng(seed), n)
    assert np.array_equal(adjoint(adjoint(m)), m)


def test_commutator_residual_oracle():
    # diag(1,-1) against the swap: [P, X] = 2 antidiag(1,-1), norm 2*sqrt(2)
    p = np.diag([1.0, -1.0])
    x = np.array([[0.0, 1.0], [1.0, 0.0]])
    assert commutator_residual(p, x) == pytest.approx(2.8284271247461903, abs=1e-15)


def test_commutator_residual_vanishes_for_powers(rng):
    m = _random_complex(rng, 4)
    assert commutator_residual(m, m @ m) < 1e-12 * frobenius(m) ** 2


def test_commutator_shape_mismatch():
    with pytest.raises(DimensionMismatch):
        commutator_residual(np.eye(2), np.eye(3))


class TestHermitian:
    def test_accepts_hermitian(self, rng):
        m = _random_complex(rng, 5)
        assert is_hermitian(m + m.conj().T)

    def test_rejects_non_hermitian(self):
        assert not is_hermitian(np.array([[0, 1], [0, 0]], dtype=complex))

    def test_scale_aware(self):
        # perturbation far below rel * norm still counts as Hermitian
        m = 1e8 * np.eye(3, dtype=complex)
        m[0, 1] = 1e-4
        m[1, 0] = 0.0
        assert is_hermitian(m)


class TestPositiveDefinite:
    def test_accepts_gram_matrix(self, rng):
        m = _random_complex(rng, 4)
        assert is_positive_definite(m @ m.conj().T + np.eye(4))

    def test_rejects_indefinite(self):
        assert not is_positive_definite(np.diag([1.0, -1.0]))

    def test_rejects_non_hermitian_without_raising(self):
        assert not is_positive_definite(np.array([[1, 1], [0, 1]], dtype=complex))

    def test_rejects_singular(self):
        assert not is_positive_definite(np.diag([1.0, 0.0]))


class TestEig:
    def test_two_level_oracle(self):
        # roots of l^2 - l + 0.16: 0.2 and 0.8
        h = np.array([[1.0, 0.4j], [0.4j, 0.0]])
        values, vectors = eig(h)
        assert values == pytest.approx([0.2, 0.8], abs=1e-14)
        for k in range(2):
            assert np.linalg.norm(h @ vectors[:, k] - values[k] * vectors[:, k]) < 1e-13

    def test_ordering_ascending_re_then_im(self, rng):
        m = _random_complex(rng, 6)
        values, _ = eig(m)
        key = [(v.real, v.imag) for v in values]
        assert key == sorted(key)

    def test_unit_norm_columns(self, rng):
        _, vectors = eig(_random_complex(rng, 5))
        assert np.linalg.norm(vectors, axis=0) == pytest.approx(np.ones(5), abs=1e-13)


class TestInverse:
    def test_cyclic_inverse_is_adjoint(self):
        p = cyclic_p(5)
        assert np.allclose(inverse(p), p.conj().T, atol=1e-14)

    def test_refuses_singular(self):
        partner = hermitian_sum(cyclic_p(4)).matrix
        with pytest.raises(SingularMatrix) as info:
            inverse(partner)
        assert info.value.condition > 1e12

    def test_roundtrip(self, rng):
        m = _random_complex(rng, 4) + 3.0 * np.eye(4)
        assert np.allclose(m @ inverse(m), np.eye(4), atol=1e-12)
