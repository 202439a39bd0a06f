import numpy as np
import pytest

from bellcorr import sampling
from bellcorr.linalg import (
    X,
    Y,
    Z,
    check_density,
    clean_spectrum,
    eig_hermitian,
    is_density,
    kron,
    partial_trace,
    partial_transpose,
    psd_sqrt,
    uhlmann_fidelity,
)
from bellcorr.states import BellDiagonal, to_density


def test_eig_identity():
    w, v = eig_hermitian(np.eye(4))
    assert np.allclose(w, 1.0)
    assert np.allclose(v.conj().T @ v, np.eye(4))


def test_eig_diagonal_z():
    w, v = eig_hermitian(Z)
    assert np.allclose(w, [1, -1])
    assert np.allclose(np.abs(v), np.eye(2))


def test_eig_x_eigenvectors():
    w, v = eig_hermitian(X)
    assert np.allclose(w, [1, -1])
    plus = np.array([1, 1]) / np.sqrt(2)
    minus = np.array([1, -1]) / np.sqrt(2)
    assert abs(abs(plus @ v[:, 0]) - 1) < 1e-12
    assert abs(abs(minus @ v[:, 1]) - 1) < 1e-12


@pytest.mark.parametrize("dim", [2, 4, 8])
def test_eig_matches_numpy(rng, dim):
    for _ in range(20):
        m = sampling.hermitian(rng, dim)
        w, v = eig_hermitian(m)
        assert np.allclose(w, np.linalg.eigvalsh(m)[::-1], atol=1e-12)
        assert np.abs(v @ np.diag(w) @ v.conj().T - m).max() < 1e-10


def test_eig_degenerate_cluster():
    # Bell-diagonal state with a threefold eigenvalue.
    w, v = eig_hermitian(to_density(BellDiagonal(-1 / 3, -1 / 3, -1 / 3)))
    assert np.allclose(w, [0.5, 1 / 6, 1 / 6, 1 / 6])
    assert np.allclose(v.conj().T @ v, np.eye(4))


def test_eig_rejects_non_hermitian():
    with pytest.raises(ValueError, match="max asymmetry"):
        eig_hermitian(np.array([[0, 1], [0, 0]], dtype=complex))


def test_psd_sqrt_examples():
    assert np.allclose(psd_sqrt(np.eye(2)), np.eye(2))
    assert np.allclose(psd_sqrt(np.diag([4.0, 1.0])), np.diag([2.0, 1.0]))
    root = psd_sqrt(to_density(BellDiagonal(-1 / 3, -1 / 3, -1 / 3)))
    assert np.allclose(np.linalg.eigvalsh(root)[::-1], [np.sqrt(0.5)] + [np.sqrt(1 / 6)] * 3)


def test_psd_sqrt_rejects_negative():
    with pytest.raises(ValueError):
        psd_sqrt(np.diag([1.0, -0.1]))


def test_clean_spectrum_zeroes_roundoff():
    out = clean_spectrum(np.array([0.5, 1e-17, -1e-17]))
    assert out[1] == 0.0 and out[2] == 0.0


def test_kron_layout():
    a = np.array([[1, 2], [3, 4]])
    b = np.eye(2)
    assert np.array_equal(kron(a, b), np.kron(a, b))
    assert kron(X, Y, Z).shape == (8, 8)


def test_partial_trace_of_product(rng):
    a, b = sampling.density(rng, 2), sampling.density(rng, 2)
    ab = kron(a, b)
    assert np.abs(partial_trace(ab, "A") - a).max() < 1e-12
    assert np.abs(partial_trace(ab, "B") - b).max() < 1e-12
    c = sampling.density(rng, 2)
    abc = kron(ab, c)
    assert np.abs(partial_trace(abc, "A", dims=(4, 2)) - ab).max() < 1e-12
    assert np.abs(partial_trace(abc, "B", dims=(4, 2)) - c).max() < 1e-12


def test_partial_transpose_singlet_has_negative_eigenvalue():
    singlet = to_density(BellDiagonal(-1, -1, -1))
    assert np.linalg.eigvalsh(partial_transpose(singlet)).min() == pytest.approx(-0.5)


def test_check_density_rejects_bad_trace():
    with pytest.raises(ValueError):
        check_density(np.eye(2))
    assert not is_density(np.eye(2))
    assert is_density(np.eye(2) / 2)


def test_uhlmann_examples(random_density):
    assert uhlmann_fidelity(random_density, random_density) == pytest.approx(1.0, abs=1e-9)
    assert uhlmann_fidelity(np.diag([1.0, 0.0]), np.diag([0.0, 1.0])) == pytest.approx(0.0, abs=1e-12)
    par = to_density(BellDiagonal(1 / 3, 1 / 3, 1 / 3))
    anti = to_density(BellDiagonal(-1 / 3, -1 / 3, -1 / 3))
    assert uhlmann_fidelity(par, anti) == pytest.approx(np.sqrt(2) / 2, abs=1e-9)


def test_uhlmann_dimension_mismatch():
    with pytest.raises(ValueError):
        uhlmann_fidelity(np.eye(2) / 2, np.eye(4) / 4)
