import numpy as np
import pytest

from bellcorr import sampling
from bellcorr.channels import classical_seed
from bellcorr.linalg import I2, PAULIS, X, Z, kron
from bellcorr.states import (
    BellDiagonal,
    StateClass,
    bell_eigenvalues,
    class_of,
    correlation_rank,
    ensemble_decomposition,
    from_density,
    is_physical,
    is_separable,
    marginals,
    to_density,
    werner,
)


def test_bell_eigenvalues_werner():
    assert np.allclose(bell_eigenvalues(BellDiagonal(1 / 3, 1 / 3, 1 / 3)), [0, 1 / 3, 1 / 3, 1 / 3])
    assert np.allclose(bell_eigenvalues(BellDiagonal(-1 / 3, -1 / 3, -1 / 3)), [0.5, 1 / 6, 1 / 6, 1 / 6])


def test_bell_eigenvalues_sum(rng):
    for s in sampling.tetrahedron(rng, 200):
        assert abs(bell_eigenvalues(s).sum() - 1) <= 1e-15


def test_physical_and_separable_regions():
    assert is_physical(BellDiagonal(-1, -1, -1))
    assert not is_physical(BellDiagonal(1, 1, 1))
    assert is_separable(BellDiagonal(1 / 3, 1 / 3, 1 / 3))
    assert is_separable(BellDiagonal(0.5, -0.5, 0.0))
    assert not is_separable(BellDiagonal(-0.5, -0.5, -0.5))
    with pytest.raises(ValueError):
        is_separable(BellDiagonal(1, 1, 1))


def test_class_of():
    assert class_of(BellDiagonal(0.1, 0.2, 0.3)) is StateClass.PARALLEL
    assert class_of(BellDiagonal(-0.1, 0.2, 0.3)) is StateClass.ANTIPARALLEL
    assert class_of(BellDiagonal(0.1, 0.0, 0.3)) is StateClass.BOUNDARY


def test_state_class_parse():
    assert StateClass.parse("anti-parallel") is StateClass.ANTIPARALLEL
    assert StateClass.parse("PARALLEL") is StateClass.PARALLEL
    with pytest.raises(ValueError):
        StateClass.parse("sideways")


def test_to_density_rejects_unphysical():
    with pytest.raises(ValueError, match="not a physical state"):
        to_density(BellDiagonal(1, 1, 1))


def test_from_density_roundtrip(rng):
    for s in sampling.tetrahedron(rng, 100):
        assert np.allclose(from_density(to_density(s)).as_array(), s.as_array(), atol=1e-12)


def test_from_density_rejects_local_bloch_vector():
    rho = kron(np.diag([1.0, 0.0]), I2 / 2)
    with pytest.raises(ValueError, match="not Bell-diagonal"):
        from_density(rho)


def test_pauli_conjugation_flips_two_signs(rng):
    for s in sampling.tetrahedron(rng, 50):
        rho = to_density(s)
        u = kron(X, I2)
        assert np.allclose(from_density(u @ rho @ u).as_array(), [s.t1, -s.t2, -s.t3], atol=1e-12)
        for a in PAULIS:
            for b in PAULIS:
                v = kron(a, b)
                assert class_of(from_density(v @ rho @ v.conj().T)) is class_of(s)


def test_boundary_states_locally_convertible():
    a = BellDiagonal(0.3, 0.4, 0.0)
    u = kron(I2, Z)
    assert np.abs(u @ to_density(a) @ u - to_density(-a)).max() < 1e-12


def test_ensemble_reconstruction(admissible_triples):
    for s in admissible_triples:
        for cls, target in ((StateClass.PARALLEL, s), (StateClass.ANTIPARALLEL, -s)):
            ens = ensemble_decomposition(s, cls)
            assert np.abs(ens.density() - to_density(target)).max() < 1e-12


def test_ensemble_keeps_single_mixed_term():
    ens = ensemble_decomposition(BellDiagonal(0.1, 0.2, 0.0), StateClass.PARALLEL)
    mixed = [w for w, rho in ens.terms if np.allclose(rho, np.eye(4) / 4)]
    assert mixed == [pytest.approx(0.7)]
    # two axes, two spin orientations each, plus the mixed term
    assert len(ens) == 5


def test_ensemble_rejects_outside_octahedron():
    with pytest.raises(ValueError):
        ensemble_decomposition(BellDiagonal(0.5, 0.5, 0.5), StateClass.PARALLEL)
    with pytest.raises(ValueError):
        ensemble_decomposition(BellDiagonal(0.1, 0.1, 0.1), StateClass.BOUNDARY)


def test_werner_classes():
    assert werner(0.2, "parallel") == BellDiagonal(0.2, 0.2, 0.2)
    assert werner(0.2, StateClass.ANTIPARALLEL) == BellDiagonal(-0.2, -0.2, -0.2)
    with pytest.raises(ValueError):
        werner(0.5, StateClass.PARALLEL)
    assert werner(1.0, StateClass.ANTIPARALLEL, allow_entangled=True) == BellDiagonal(-1, -1, -1)


def test_correlation_rank_examples():
    assert correlation_rank(classical_seed(StateClass.PARALLEL)) == 2
    assert correlation_rank(to_density(werner(1 / 3, StateClass.PARALLEL))) == 4
    assert correlation_rank(np.eye(4) / 4) == 1
    assert correlation_rank(to_density(BellDiagonal(0.2, 0.0, 0.3))) == 3


def test_marginals_maximally_mixed(rng):
    for s in sampling.tetrahedron(rng, 20):
        a, b = marginals(to_density(s))
        assert np.allclose(a, I2 / 2) and np.allclose(b, I2 / 2)


def test_csv_roundtrip():
    s = BellDiagonal(0.1, -0.25, 1 / 3)
    assert BellDiagonal.from_csv(s.to_csv()) == s
    with pytest.raises(ValueError):
        BellDiagonal.from_csv("1,2")
