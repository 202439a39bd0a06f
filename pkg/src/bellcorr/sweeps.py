"""Figure data as plain tables: a header tuple and a float array of rows."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .channels import depolarize
from .fidelity import fidelity_method_a, fidelity_method_b, fidelity_misaligned_closed, fidelity_werner_pair
from .measures import lqu
from .protocol import run_protocol
from .states import BellDiagonal, StateClass, to_density, werner

T_MAX = 1.0 / 3.0


@dataclass(frozen=True)
class Table:
    columns: tuple[str, ...]
    rows: np.ndarray

    def __post_init__(self):
        if self.rows.ndim != 2 or self.rows.shape[1] != len(self.columns):
            raise ValueError(f"rows of shape {self.rows.shape} do not match {len(self.columns)} columns")
        if not np.all(np.isfinite(self.rows)):
            raise ValueError("table contains non-finite values")

    def column(self, name: str) -> np.ndarray:
        return self.rows[:, self.columns.index(name)]


def t_grid(samples: int) -> np.ndarray:
    if samples < 2:
        raise ValueError(f"need at least 2 samples, got {samples}")
    return np.linspace(0.0, T_MAX, samples)


def theta_grid(steps: int) -> np.ndarray:
    if steps < 2:
        raise ValueError(f"need at least 2 theta steps, got {steps}")
    return np.linspace(0.0, np.pi, steps)


def p_grid(samples: int) -> np.ndarray:
    if samples < 2:
        raise ValueError(f"need at least 2 samples, got {samples}")
    return np.linspace(0.0, 1.0, samples)


def lqu_curve(samples: int = 200) -> Table:
    rows = []
    for t in t_grid(samples):
        par = lqu(to_density(werner(t, StateClass.PARALLEL))).value
        anti = lqu(to_density(werner(t, StateClass.ANTIPARALLEL))).value
        rows.append((t, par, anti))
    return Table(("t", "lqu_parallel", "lqu_antiparallel"), np.array(rows))


def fidelity_alignment(t: float = T_MAX, theta_steps: int = 181) -> Table:
    s = BellDiagonal(t, t, t)
    rows = [
        (th, fidelity_misaligned_closed(s, StateClass.PARALLEL, th), fidelity_misaligned_closed(s, StateClass.ANTIPARALLEL, th))
        for th in theta_grid(theta_steps)
    ]
    return Table(("theta", "fidelity_parallel", "fidelity_antiparallel"), np.array(rows))


def optnot_compare(t: float = T_MAX, theta_steps: int = 181, n_copies=(1, 5, 10, 100)) -> Table:
    cols = ("theta", "fidelity_a") + tuple(f"fidelity_b_n{n}" for n in n_copies)
    rows = []
    for th in theta_grid(theta_steps):
        rows.append([th, fidelity_method_a(t, th)] + [fidelity_method_b(t, th, n) for n in n_copies])
    return Table(cols, np.array(rows))


def entanglement_distribution(samples: int = 200) -> Table:
    rows = []
    for t in t_grid(samples):
        par = run_protocol(t, StateClass.PARALLEL)
        anti = run_protocol(t, StateClass.ANTIPARALLEL)
        rows.append((t, par.c_minus, anti.c_minus))
    return Table(("t", "concurrence_parallel", "concurrence_antiparallel"), np.array(rows))


def werner_signed(t: float, cls: StateClass) -> float:
    """Parameter of ``W(x) = (1-x) I/4 + x |singlet><singlet|`` for the class state.

    The anti-parallel Werner state is ``W(t)``; the parallel one is ``W(-t)``.
    """
    return -t if StateClass.parse(cls) is StateClass.PARALLEL else t


def noise_robustness(t: float = T_MAX, samples: int = 200) -> Table:
    """LQU of the one-side depolarized Werner pair, and its fidelity with the
    noiseless state, for both classes."""
    rows = []
    for p in p_grid(samples):
        row = [p]
        for cls in (StateClass.PARALLEL, StateClass.ANTIPARALLEL):
            row.append(lqu(depolarize(to_density(werner(t, cls)), "B", p)).value)
        for cls in (StateClass.PARALLEL, StateClass.ANTIPARALLEL):
            x = werner_signed(t, cls)
            row.append(fidelity_werner_pair(x, x * (1 - p)))
        rows.append(row)
    cols = ("p", "lqu_parallel", "lqu_antiparallel", "fidelity_parallel", "fidelity_antiparallel")
    return Table(cols, np.array(rows))


def method_crossover(t: float, n_copies: int) -> float:
    """Smallest ``theta`` in ``(0, pi/2]`` with ``F_B(N) = F_A``, or ``nan`` if
    method A stays ahead on the whole quarter turn."""
    def gap(th):
        return fidelity_method_a(t, th) - fidelity_method_b(t, th, n_copies)

    grid = np.linspace(0.0, np.pi / 2, 91)
    vals = [gap(th) for th in grid]
    for lo, hi, vlo, vhi in zip(grid[:-1], grid[1:], vals[:-1], vals[1:]):
        if vlo > 0 >= vhi:
            return float(brentq(gap, lo, hi, xtol=1e-14))
    return float("nan")
