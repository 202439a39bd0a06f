import numpy as np
import pytest

from bellcorr import sampling
from bellcorr.fidelity import (
    fidelity_block,
    fidelity_difference_sq,
    fidelity_method_a,
    fidelity_method_b,
    fidelity_method_b_closed,
    fidelity_misaligned_closed,
    fidelity_misaligned_oracle,
    fidelity_werner_pair,
    method_b_state,
    tr_sqrt_2x2,
    x_blocks,
)
from bellcorr.linalg import uhlmann_fidelity
from bellcorr.states import BellDiagonal, StateClass, from_density, to_density, werner
from bellcorr.sweeps import method_crossover

PAR = StateClass.PARALLEL
ANTI = StateClass.ANTIPARALLEL
THIRD = BellDiagonal(1 / 3, 1 / 3, 1 / 3)


def test_tr_sqrt_examples():
    assert tr_sqrt_2x2(np.eye(2)) == pytest.approx(2.0)
    assert tr_sqrt_2x2(np.diag([4.0, 9.0])) == pytest.approx(5.0)
    with pytest.raises(ValueError):
        tr_sqrt_2x2(np.diag([1.0, -1.0]))


def test_tr_sqrt_matches_eigenvalues(rng):
    for _ in range(100):
        m = sampling.density(rng, 2) * 3
        assert tr_sqrt_2x2(m) == pytest.approx(np.sqrt(np.linalg.eigvalsh(m)).sum(), abs=1e-12)


def test_x_blocks_reassemble():
    s = BellDiagonal(0.1, 0.2, 0.3)
    a, b = x_blocks(s)
    rho = to_density(s)
    assert np.allclose(rho[np.ix_([0, 3], [0, 3])], a)
    assert np.allclose(rho[np.ix_([1, 2], [1, 2])], b)
    assert np.trace(a).real + np.trace(b).real == pytest.approx(1.0)


def test_misaligned_examples():
    assert fidelity_misaligned_closed(THIRD, PAR, 0.0) == pytest.approx(1.0)
    assert fidelity_misaligned_closed(THIRD, PAR, np.pi / 2) == pytest.approx(2 / 3, abs=1e-12)
    assert fidelity_misaligned_closed(THIRD, ANTI, np.pi / 2) == pytest.approx(1 / 3 + np.sqrt(3) / 3, abs=1e-12)
    assert fidelity_misaligned_closed(THIRD, ANTI, np.pi / 2) == pytest.approx(0.9106836025229591, abs=1e-12)


def test_misaligned_three_way(rng):
    for s in sampling.admissible(rng, 20):
        for th in np.linspace(0, np.pi, 9):
            for cls, signed in ((PAR, s), (ANTI, -s)):
                closed = fidelity_misaligned_closed(s, cls, th)
                assert fidelity_block(signed, th) == pytest.approx(closed, abs=1e-10)
                assert fidelity_misaligned_oracle(s, th, cls) == pytest.approx(closed, abs=1e-9)


def test_misaligned_pi_periodic():
    s = BellDiagonal(0.2, 0.3, 0.1)
    for th in (0.2, 1.0, 1.4):
        assert fidelity_misaligned_closed(s, PAR, th) == pytest.approx(fidelity_misaligned_closed(s, PAR, th + np.pi))
        assert fidelity_misaligned_closed(s, PAR, th) == pytest.approx(fidelity_misaligned_closed(s, PAR, np.pi - th))


def test_misaligned_rejects_bad_input():
    with pytest.raises(ValueError):
        fidelity_misaligned_closed(BellDiagonal(-0.1, 0.2, 0.2), PAR, 0.3)
    with pytest.raises(ValueError):
        fidelity_misaligned_closed(BellDiagonal(0.5, 0.5, 0.5), PAR, 0.3)


def test_difference_sq_examples():
    assert fidelity_difference_sq(THIRD, 0.0) == pytest.approx(0.0, abs=1e-15)
    assert fidelity_difference_sq(BellDiagonal(0.2, 0.5, 0.0), 1.1) == pytest.approx(0.0, abs=1e-15)
    want = (2 / 3) ** 2 - (1 / 3 + np.sqrt(3) / 3) ** 2
    assert fidelity_difference_sq(THIRD, np.pi / 2) == pytest.approx(want, abs=1e-12)
    assert want == pytest.approx(-0.384900179459750, abs=1e-12)


def test_difference_sq_matches_direct(rng):
    for s in sampling.admissible(rng, 100):
        th = rng.uniform(0, np.pi)
        direct = fidelity_misaligned_closed(s, PAR, th) ** 2 - fidelity_misaligned_closed(s, ANTI, th) ** 2
        assert fidelity_difference_sq(s, th) == pytest.approx(direct, abs=1e-9)
        assert fidelity_difference_sq(s, th) < 0


def test_werner_pair_examples():
    assert fidelity_werner_pair(0.2, 0.2) == pytest.approx(1.0)
    assert fidelity_werner_pair(1 / 3, -1 / 3) == pytest.approx(np.sqrt(2) / 2, abs=1e-12)
    assert fidelity_werner_pair(0.1, 0.7) == pytest.approx(fidelity_werner_pair(0.7, 0.1))
    with pytest.raises(ValueError):
        fidelity_werner_pair(-0.5, 0.1)


def test_werner_pair_vs_uhlmann(rng):
    for x, y in rng.uniform(-1 / 3, 1, size=(20, 2)):
        rx = to_density(BellDiagonal(-x, -x, -x))
        ry = to_density(BellDiagonal(-y, -y, -y))
        assert fidelity_werner_pair(x, y) == pytest.approx(uhlmann_fidelity(rx, ry), abs=1e-10)


def test_method_a_examples():
    assert fidelity_method_a(1 / 3, 0.0) == pytest.approx(1.0)
    assert abs(fidelity_method_a(1 / 3, np.pi / 2) - 2 / 3) < 1e-12
    for th in np.linspace(0, np.pi, 7):
        assert fidelity_method_a(0.25, th) == pytest.approx(fidelity_misaligned_closed(BellDiagonal(0.25, 0.25, 0.25), PAR, th))
    with pytest.raises(ValueError):
        fidelity_method_a(0.4, 0.1)


def test_method_b_state_is_shrunk_misaligned_parallel():
    from bellcorr.channels import apply_channel, classical_seed, misaligned_channel, not_shrink

    for n in (1, 7):
        for th in (0.0, 0.4):
            st = not_shrink(n) / 3
            want = apply_channel(misaligned_channel(BellDiagonal(st, st, st), th), classical_seed(PAR))
            assert np.abs(method_b_state(1 / 3, th, n) - want).max() < 1e-12
    assert np.allclose(from_density(method_b_state(1 / 3, 0.0, 1)).as_array(), 1 / 9)


def test_method_b_theta_zero_values():
    # F(W(t/3 parallel), W(1/3 parallel)) = 3/4 sqrt((1 + 1/9)(4/3))
    assert fidelity_method_b(1 / 3, 0.0, 1) == pytest.approx(0.75 * np.sqrt((10 / 9) * (4 / 3)), abs=1e-12)
    assert fidelity_method_b(1 / 3, 0.0, 1) == pytest.approx(0.912870929175, abs=1e-11)
    assert abs(fidelity_method_b(1 / 3, 0.0, 100) - fidelity_method_a(1 / 3, 0.0)) < 0.01


def test_method_b_closed_matches_numeric(rng):
    for _ in range(50):
        t, th, n = rng.uniform(0, 1 / 3), rng.uniform(0, np.pi), int(rng.integers(1, 200))
        assert fidelity_method_b_closed(t, th, n) == pytest.approx(fidelity_method_b(t, th, n), abs=1e-9)


def test_method_b_closed_within_unit_interval(rng):
    for _ in range(200):
        t, th, n = rng.uniform(0, 1 / 3), rng.uniform(0, np.pi), int(rng.integers(1, 200))
        assert 0 < fidelity_method_b_closed(t, th, n) <= 1 + 1e-12


def test_method_b_converges_to_method_a():
    for th in (0.0, 0.3, 1.2):
        assert fidelity_method_b(1 / 3, th, 10**7) == pytest.approx(fidelity_method_a(1 / 3, th), abs=1e-6)


def test_method_a_wins_at_small_misalignment():
    for th in np.linspace(0.0, 0.85, 20):
        vals = [fidelity_method_b(1 / 3, th, n) for n in (1, 5, 10, 100)] + [fidelity_method_a(1 / 3, th)]
        assert all(a < b for a, b in zip(vals, vals[1:]))


def test_method_b_overtakes_method_a_at_large_misalignment():
    # At theta = pi/2, F_A = 2/3 is below even the maximally mixed state's
    # fidelity sqrt(3)/2 with the parallel Werner target, so shrinking helps.
    target = to_density(werner(1 / 3, PAR))
    assert uhlmann_fidelity(np.eye(4) / 4, target) == pytest.approx(np.sqrt(3) / 2, abs=1e-12)
    fb = [fidelity_method_b(1 / 3, np.pi / 2, n) for n in (1, 5, 10, 100)]
    assert all(a > b for a, b in zip(fb, fb[1:]))
    assert fb[-1] > fidelity_method_a(1 / 3, np.pi / 2)


@pytest.mark.parametrize("n", [1, 5, 10, 100])
def test_crossover_angle_separates_regimes(n):
    th = method_crossover(1 / 3, n)
    assert 0.85 < th < 0.91
    assert fidelity_method_b(1 / 3, th, n) == pytest.approx(fidelity_method_a(1 / 3, th), abs=1e-12)
    assert fidelity_method_b(1 / 3, th - 0.01, n) < fidelity_method_a(1 / 3, th - 0.01)
    assert fidelity_method_b(1 / 3, th + 0.01, n) > fidelity_method_a(1 / 3, th + 0.01)
