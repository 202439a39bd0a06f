import numpy as np
import pytest

from bellcorr import sweeps

LQU_ANTI_THIRD = 1 - 0.5 * (np.sqrt(4 / 3) + 2 / 3)


def test_lqu_curve():
    tab = sweeps.lqu_curve(50)
    assert tab.columns == ("t", "lqu_parallel", "lqu_antiparallel")
    assert tab.rows.shape == (50, 3)
    assert np.allclose(tab.rows[0], 0.0, atol=1e-12)
    assert tab.rows[-1, 1] == pytest.approx(1 / 3, abs=1e-12)
    assert tab.rows[-1, 2] == pytest.approx(LQU_ANTI_THIRD, abs=1e-12)
    assert np.all(tab.column("lqu_parallel") >= tab.column("lqu_antiparallel") - 1e-12)
    for col in ("lqu_parallel", "lqu_antiparallel"):
        assert np.all(np.diff(tab.column(col)) > 0)


def test_fidelity_alignment():
    tab = sweeps.fidelity_alignment(1 / 3, 181)
    assert np.allclose(tab.rows[0, 1:], 1.0)
    mid = tab.rows[90]
    assert mid[0] == pytest.approx(np.pi / 2)
    assert mid[1] == pytest.approx(2 / 3, abs=1e-12)
    assert mid[2] == pytest.approx(1 / 3 + np.sqrt(3) / 3, abs=1e-12)
    assert np.all(tab.column("fidelity_antiparallel") >= tab.column("fidelity_parallel") - 1e-12)
    assert np.allclose(tab.rows[:, 1:], tab.rows[::-1, 1:], atol=1e-12)


def test_optnot_compare_columns_and_endpoints():
    tab = sweeps.optnot_compare(1 / 3, 19, (1, 5, 10, 100))
    assert tab.columns == ("theta", "fidelity_a", "fidelity_b_n1", "fidelity_b_n5", "fidelity_b_n10", "fidelity_b_n100")
    first = tab.rows[0]
    assert first[1] == pytest.approx(1.0)
    assert first[2] == pytest.approx(0.912870929175, abs=1e-11)
    assert first[1] - first[5] < 0.01


def test_entanglement_distribution():
    tab = sweeps.entanglement_distribution(40)
    t = tab.column("t")
    assert np.allclose(tab.column("concurrence_parallel"), 2 * t / (1 - t), atol=1e-10)
    assert np.allclose(tab.column("concurrence_antiparallel"), 2 * t / (1 + t), atol=1e-10)
    assert tab.rows[-1, 1:] == pytest.approx([1.0, 0.5], abs=1e-10)


def test_noise_robustness():
    tab = sweeps.noise_robustness(1 / 3, 21)
    assert tab.rows[0, 1:3] == pytest.approx([1 / 3, LQU_ANTI_THIRD], abs=1e-12)
    assert tab.rows[0, 3:] == pytest.approx([1.0, 1.0], abs=1e-12)
    assert tab.rows[-1, 1:3] == pytest.approx([0.0, 0.0], abs=1e-12)
    # p = 1 leaves I/4: sqrt(3)/2 for parallel, (sqrt(6) + sqrt(2))/4 for anti-parallel
    assert tab.rows[-1, 3] == pytest.approx(np.sqrt(3) / 2, abs=1e-12)
    assert tab.rows[-1, 4] == pytest.approx((np.sqrt(6) + np.sqrt(2)) / 4, abs=1e-12)
    assert np.all(tab.column("fidelity_parallel") <= tab.column("fidelity_antiparallel") + 1e-12)


def test_werner_signed():
    assert sweeps.werner_signed(0.2, "parallel") == -0.2
    assert sweeps.werner_signed(0.2, "antiparallel") == 0.2


def test_grids_reject_tiny():
    with pytest.raises(ValueError):
        sweeps.t_grid(1)
    with pytest.raises(ValueError):
        sweeps.theta_grid(1)


def test_table_rejects_non_finite():
    with pytest.raises(ValueError):
        sweeps.Table(("a",), np.array([[np.nan]]))
