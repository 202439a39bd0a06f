"""Quantum-correlation measures for two-qubit states.

Local quantum uncertainty (LQU) is the minimum skew information of ``rho``
with an observable ``(n . sigma) (x) I`` acting on qubit A. Three routes are
provided:

* ``lqu`` builds the 3x3 matrix ``W`` and returns ``1 - lambda_max(W)``;
* ``lqu_bell_closed`` evaluates the Bell-eigenvalue formula for
  Bell-diagonal states;
* ``lqu_oracle`` scans the unit sphere and refines the best point, never
  forming ``W``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import (
    EPS_NUM,
    PAULIS,
    check_density,
    check_hermitian,
    clean_spectrum,
    eig_hermitian,
    kron,
    psd_sqrt,
)
from .states import BellDiagonal, _require_physical, bell_eigenvalues, is_separable

RADICAND_TOL = 1e-12

_LOCAL_A = tuple(kron(p, np.eye(2)) for p in PAULIS[1:])
_SY_SY = kron(PAULIS[2], PAULIS[2])


@dataclass(frozen=True)
class LquReport:
    value: float
    w_matrix: np.ndarray
    w_eigen_max: float


def skew_information(rho, k) -> float:
    """Wigner-Yanase skew information ``-1/2 tr([sqrt(rho), K]^2)``."""
    rho = check_density(rho)
    k = check_hermitian(k, "observable")
    if k.shape != rho.shape:
        raise ValueError(f"observable shape {k.shape} does not match state {rho.shape}")
    root = psd_sqrt(rho)
    comm = root @ k - k @ root
    return float(-0.5 * np.trace(comm @ comm).real)


def lqu_w_matrix(rho) -> np.ndarray:
    rho = check_density(rho)
    if rho.shape != (4, 4):
        raise ValueError(f"LQU needs a two-qubit state, got shape {rho.shape}")
    root = psd_sqrt(rho)
    sandwiched = [root @ s @ root for s in _LOCAL_A]
    w = np.array([[np.trace(sandwiched[i] @ _LOCAL_A[j]).real for j in range(3)] for i in range(3)])
    return 0.5 * (w + w.T)


def lqu(rho) -> LquReport:
    w = lqu_w_matrix(rho)
    evals, _ = eig_hermitian(w)
    top = float(evals[0])
    return LquReport(value=float(np.clip(1.0 - top, 0.0, 1.0)), w_matrix=w, w_eigen_max=top)


def w_values(s: BellDiagonal) -> np.ndarray:
    """Diagonal of ``W`` for a Bell-diagonal state.

    ``w_i = 2 (sqrt(l0 l_i) + sqrt(l_j l_k))`` with ``(i, j, k)`` a cyclic
    order of ``(1, 2, 3)``. Valid for every physical triple, not just the
    non-negative octant: ``sigma_i (x) I`` swaps Bell state 0 with ``i`` and
    ``j`` with ``k``, which is all the derivation uses.
    """
    _require_physical(s)
    lam = np.clip(bell_eigenvalues(s), 0.0, None)
    out = np.empty(3)
    for i in range(1, 4):
        j = i % 3 + 1
        k = j % 3 + 1
        out[i - 1] = 2.0 * (np.sqrt(lam[0] * lam[i]) + np.sqrt(lam[j] * lam[k]))
    return out


def lqu_bell_closed(s: BellDiagonal) -> float:
    return float(1.0 - w_values(s).max())


def fibonacci_sphere(n: int) -> np.ndarray:
    """``n`` nearly uniform unit vectors on the golden-angle spiral."""
    if n < 1:
        raise ValueError("need at least one sphere point")
    i = np.arange(n) + 0.5
    z = 1.0 - 2.0 * i / n
    r = np.sqrt(1.0 - z * z)
    phi = np.pi * (3.0 - np.sqrt(5.0)) * i
    return np.column_stack([r * np.cos(phi), r * np.sin(phi), z])


def _skew_on_directions(root: np.ndarray, dirs: np.ndarray, chunk: int = 200_000) -> np.ndarray:
    # [sqrt(rho), n.sigma (x) I] is linear in n, so the commutators with the
    # three generators are formed once and mixed per direction.
    comms = np.stack([root @ s - s @ root for s in _LOCAL_A])
    out = np.empty(len(dirs))
    for start in range(0, len(dirs), chunk):
        block = dirs[start : start + chunk]
        c = np.einsum("ni,ijk->njk", block, comms)
        out[start : start + chunk] = -0.5 * np.einsum("njk,nkj->n", c, c).real
    return out


def _direction(theta: float, phi: float) -> np.ndarray:
    st = np.sin(theta)
    return np.array([[st * np.cos(phi), st * np.sin(phi), np.cos(theta)]])


def lqu_oracle(rho, resolution: int = 20_000, refine: bool = True) -> float:
    """Brute-force LQU: minimum skew information over the unit sphere.

    A Fibonacci-sphere scan with ``resolution`` points is followed, when
    ``refine`` is set, by coordinate descent in the polar and azimuthal
    angles from the best grid point, halving the step down to 1e-12.
    """
    rho = check_density(rho)
    root = psd_sqrt(rho)
    grid = fibonacci_sphere(resolution)
    values = _skew_on_directions(root, grid)
    best = int(np.argmin(values))
    fbest = float(values[best])
    if not refine:
        return fbest

    n = grid[best]
    theta = float(np.arccos(np.clip(n[2], -1.0, 1.0)))
    phi = float(np.arctan2(n[1], n[0]))
    step = 2.0 * np.sqrt(4.0 * np.pi / resolution)

    def f(th, ph):
        return float(_skew_on_directions(root, _direction(th, ph))[0])

    while step > 1e-12:
        improved = False
        for dth, dph in ((step, 0.0), (-step, 0.0), (0.0, step), (0.0, -step)):
            val = f(theta + dth, phi + dph)
            if val < fbest:
                theta, phi, fbest = theta + dth, phi + dph, val
                improved = True
                break
        if not improved:
            step *= 0.5
    return fbest


def oracle_error_bound(rho, resolution: int, probes: int = 2000, seed: int = 0) -> float:
    """Upper bound on the un-refined scan error: ``L * h``.

    ``L`` is the largest finite-difference slope of the skew information
    found along random tangent directions (times a 1.5 safety factor) and
    ``h`` the largest distance from a random probe direction to its nearest
    grid point.
    """
    rng = np.random.default_rng(seed)
    rho = check_density(rho)
    root = psd_sqrt(rho)
    grid = fibonacci_sphere(resolution)

    base = rng.normal(size=(probes, 3))
    base /= np.linalg.norm(base, axis=1, keepdims=True)
    tangent = rng.normal(size=(probes, 3))
    tangent -= np.sum(tangent * base, axis=1, keepdims=True) * base
    tangent /= np.linalg.norm(tangent, axis=1, keepdims=True)
    delta = 1e-5
    moved = base + delta * tangent
    moved /= np.linalg.norm(moved, axis=1, keepdims=True)
    f0 = _skew_on_directions(root, base)
    f1 = _skew_on_directions(root, moved)
    slope = np.abs(f1 - f0) / np.linalg.norm(moved - base, axis=1)
    lipschitz = 1.5 * float(slope.max())

    cover = 0.0
    for start in range(0, probes, 256):
        dots = base[start : start + 256] @ grid.T
        nearest = np.clip(dots.max(axis=1), -1.0, 1.0)
        cover = max(cover, float(np.sqrt(2.0 - 2.0 * nearest).max()))
    return lipschitz * cover


def def_a(t1: float, t2: float, t3: float) -> float:
    """``(1 - t1^2 - t2^2 - t3^2)^2 - 4 (t1^2 t2^2 + t1^2 t3^2 + t2^2 t3^2)``."""
    sq = (t1 * t1, t2 * t2, t3 * t3)
    return (1.0 - sum(sq)) ** 2 - 4.0 * (sq[0] * sq[1] + sq[0] * sq[2] + sq[1] * sq[2])


def shifted_radicands(t1: float, t2: float, t3: float) -> tuple[float, float]:
    """``(a - 8 t1 t2 t3, a + 8 t1 t2 t3)`` in cancellation-free form.

    ``a - 8 t1 t2 t3`` factors as ``256 * prod(bell_eigenvalues(t))`` and
    ``a + 8 t1 t2 t3`` as the same product at ``-t``. Evaluating the products
    keeps the radicands exactly zero on the face ``t1 + t2 + t3 = 1`` where
    the expanded polynomial only cancels to within roundoff.
    """
    s = BellDiagonal(t1, t2, t3)
    minus = 256.0 * float(np.prod(bell_eigenvalues(s)))
    plus = 256.0 * float(np.prod(bell_eigenvalues(-s)))
    return minus, plus


def _sqrt_radicand(x: float, label: str) -> float:
    if x < -RADICAND_TOL:
        raise ValueError(f"radicand {label} = {x:.3e} is negative; outside the formula's validity")
    return float(np.sqrt(max(x, 0.0)))


def wi_difference(s: BellDiagonal) -> float:
    """``w_i^2(parallel) - w_i^2(anti-parallel)``, the same for every ``i``.

    Equals ``(sqrt(a - 8 t1 t2 t3) - sqrt(a + 8 t1 t2 t3)) / 2`` for
    ``s`` with non-negative entries inside the separable octahedron.
    """
    if min(s) < -EPS_NUM:
        raise ValueError(f"wi_difference needs non-negative coefficients, got {s}")
    if not is_separable(s):
        raise ValueError(f"{s} is not separable")
    minus, plus = shifted_radicands(*s)
    return 0.5 * (_sqrt_radicand(minus, "a - 8 t1 t2 t3") - _sqrt_radicand(plus, "a + 8 t1 t2 t3"))


def concurrence(rho) -> float:
    """Wootters concurrence ``max(0, mu1 - mu2 - mu3 - mu4)``.

    The ``mu_i`` are the square roots of the eigenvalues of ``rho rho~``
    with ``rho~ = (Y (x) Y) conj(rho) (Y (x) Y)``. They are computed as the
    eigenvalues of the Hermitian ``sqrt(sqrt(rho) rho~ sqrt(rho))``, which
    has the same spectrum.
    """
    rho = check_density(rho)
    if rho.shape != (4, 4):
        raise ValueError(f"concurrence needs a two-qubit state, got shape {rho.shape}")
    tilde = _SY_SY @ rho.conj() @ _SY_SY
    root = psd_sqrt(rho)
    m = root @ tilde @ root
    evals, _ = eig_hermitian(0.5 * (m + m.conj().T))
    mu = np.sort(np.sqrt(clean_spectrum(evals, "sqrt(rho) rho~ sqrt(rho)")))[::-1]
    return float(max(0.0, mu[0] - mu[1] - mu[2] - mu[3]))
