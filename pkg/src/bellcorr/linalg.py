"""Small dense complex matrix kernel.

Everything here operates on plain ``numpy`` arrays of shape ``(d, d)`` with
``d <= 8``. The Hermitian eigensolver is a cyclic Jacobi iteration, which is
accurate to a few ulps for matrices this small and has no external
dependencies beyond array arithmetic.
"""

from __future__ import annotations

import numpy as np

EPS_HERM = 1e-10
EPS_TRACE = 1e-10
EPS_PSD = 1e-10
EPS_RECON = 1e-9
EPS_NUM = 1e-9

JACOBI_TOL = 1e-14
JACOBI_MAX_SWEEPS = 100

# Eigenvalues below this fraction of the largest one are numerically zero.
SPECTRAL_FLOOR = 32 * np.finfo(float).eps

I2 = np.eye(2, dtype=complex)
X = np.array([[0, 1], [1, 0]], dtype=complex)
Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS = (I2, X, Y, Z)


def max_asymmetry(m: np.ndarray) -> float:
    """Largest entry of ``|M - M^dagger|``."""
    return float(np.max(np.abs(m - m.conj().T))) if m.size else 0.0


def check_hermitian(m, name: str = "matrix", tol: float = EPS_HERM) -> np.ndarray:
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"{name} must be square, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError(f"{name} has non-finite entries")
    asym = max_asymmetry(m)
    if asym > tol:
        raise ValueError(f"{name} is not Hermitian: max asymmetry {asym:.3e}")
    return m


def check_density(rho, name: str = "rho") -> np.ndarray:
    """Validate Hermiticity and unit trace of a density matrix.

    Positivity is not checked here because it costs an eigendecomposition;
    routines that take a square root (``psd_sqrt``) reject negative spectra
    themselves.
    """
    rho = check_hermitian(rho, name)
    if rho.shape[0] not in (2, 4, 8):
        raise ValueError(f"{name} must be 2x2, 4x4 or 8x8, got {rho.shape}")
    tr = np.trace(rho).real
    if abs(tr - 1.0) > EPS_TRACE:
        raise ValueError(f"{name} has trace {tr!r}, expected 1")
    return rho


def is_density(rho) -> bool:
    try:
        rho = check_density(rho)
    except ValueError:
        return False
    return bool(eig_hermitian(rho)[0][-1] >= -EPS_PSD)


def _jacobi_pair(a: np.ndarray, v: np.ndarray, p: int, q: int) -> None:
    apq = a[p, q]
    r = abs(apq)
    if r == 0.0:
        return
    phase = apq / r
    tau = (a[q, q].real - a[p, p].real) / (2.0 * r)
    if abs(tau) > 1e150:
        t = 0.5 / tau
    else:
        t = (1.0 if tau >= 0 else -1.0) / (abs(tau) + np.sqrt(1.0 + tau * tau))
    c = 1.0 / np.sqrt(1.0 + t * t)
    s = t * c
    # G = diag(1, conj(phase)) @ [[c, s], [-s, c]]
    g00, g01 = c, s
    g10, g11 = -s * phase.conjugate(), c * phase.conjugate()

    ap = a[:, p].copy()
    aq = a[:, q]
    a[:, p] = ap * g00 + aq * g10
    a[:, q] = ap * g01 + aq * g11
    rp = a[p, :].copy()
    rq = a[q, :]
    a[p, :] = rp * g00 + rq * np.conj(g10)
    a[q, :] = rp * g01 + rq * np.conj(g11)
    a[p, q] = a[q, p] = 0.0
    a[p, p] = a[p, p].real
    a[q, q] = a[q, q].real

    vp = v[:, p].copy()
    vq = v[:, q]
    v[:, p] = vp * g00 + vq * g10
    v[:, q] = vp * g01 + vq * g11


def eig_hermitian(m) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition of a Hermitian matrix by cyclic Jacobi sweeps.

    Returns ``(evals, vecs)`` with eigenvalues sorted in descending order and
    the corresponding orthonormal eigenvectors as the columns of ``vecs``.
    Within a degenerate cluster the eigenvector basis is arbitrary.

    Raises:
        ValueError: if ``m`` is not Hermitian within ``EPS_HERM``.
        RuntimeError: if the sweeps fail to converge.
    """
    m = check_hermitian(m)
    n = m.shape[0]
    a = 0.5 * (m + m.conj().T)
    v = np.eye(n, dtype=complex)
    scale = max(1.0, float(np.linalg.norm(a)))
    pairs = [(p, q) for p in range(n - 1) for q in range(p + 1, n)]
    offmask = ~np.eye(n, dtype=bool)

    for _ in range(JACOBI_MAX_SWEEPS):
        off = np.sqrt(np.sum(np.abs(a[offmask]) ** 2))
        if off < JACOBI_TOL * scale:
            break
        for p, q in pairs:
            _jacobi_pair(a, v, p, q)
    else:
        raise RuntimeError(f"Jacobi iteration did not converge in {JACOBI_MAX_SWEEPS} sweeps")

    evals = np.diag(a).real
    order = np.argsort(-evals, kind="stable")
    return evals[order], v[:, order]


def clean_spectrum(evals: np.ndarray, name: str = "matrix") -> np.ndarray:
    """Clamp a PSD spectrum: reject real negatives, zero out roundoff.

    Eigenvalues in ``[-EPS_PSD, 0)`` and those below ``SPECTRAL_FLOOR`` times
    the largest eigenvalue are set to exactly zero, so that their square
    roots do not inject ``O(sqrt(eps))`` errors.
    """
    evals = np.asarray(evals, dtype=float)
    low = float(evals.min()) if evals.size else 0.0
    if low < -EPS_PSD:
        raise ValueError(f"{name} is not positive semidefinite: eigenvalue {low:.3e}")
    top = max(float(evals.max()), 0.0) if evals.size else 0.0
    out = evals.copy()
    out[out <= SPECTRAL_FLOOR * top] = 0.0
    return out


def psd_sqrt(m) -> np.ndarray:
    """Principal square root of a positive semidefinite Hermitian matrix."""
    evals, vecs = eig_hermitian(m)
    lam = clean_spectrum(evals)
    root = (vecs * np.sqrt(lam)) @ vecs.conj().T
    return 0.5 * (root + root.conj().T)


def kron(*ops) -> np.ndarray:
    """Kronecker product of one or more matrices, left factor outermost."""
    out = np.asarray(ops[0], dtype=complex)
    for op in ops[1:]:
        out = np.kron(out, np.asarray(op, dtype=complex))
    return out


def _subsystem_index(keep) -> int:
    if keep in ("A", "a", 0):
        return 0
    if keep in ("B", "b", 1):
        return 1
    raise ValueError(f"subsystem label must be 'A' or 'B', got {keep!r}")


def partial_trace(rho, keep="A", dims: tuple[int, int] = (2, 2)) -> np.ndarray:
    """Reduce an operator on ``A (x) B`` to the ``keep`` factor."""
    rho = np.asarray(rho, dtype=complex)
    da, db = dims
    if rho.shape != (da * db, da * db):
        raise ValueError(f"operator of shape {rho.shape} does not match dims {dims}")
    t = rho.reshape(da, db, da, db)
    if _subsystem_index(keep) == 0:
        return np.einsum("ijkj->ik", t)
    return np.einsum("ijil->jl", t)


def partial_transpose(rho, side="B", dims: tuple[int, int] = (2, 2)) -> np.ndarray:
    rho = np.asarray(rho, dtype=complex)
    da, db = dims
    if rho.shape != (da * db, da * db):
        raise ValueError(f"operator of shape {rho.shape} does not match dims {dims}")
    t = rho.reshape(da, db, da, db)
    if _subsystem_index(side) == 0:
        t = t.transpose(2, 1, 0, 3)
    else:
        t = t.transpose(0, 3, 2, 1)
    return t.reshape(da * db, da * db)


def uhlmann_fidelity(rho, sigma) -> float:
    """Root fidelity ``tr sqrt(sqrt(rho) sigma sqrt(rho))`` in ``[0, 1]``.

    Note this is the un-squared convention.
    """
    rho = check_density(rho, "rho")
    sigma = check_density(sigma, "sigma")
    if rho.shape != sigma.shape:
        raise ValueError(f"dimension mismatch: {rho.shape} vs {sigma.shape}")
    r = psd_sqrt(rho)
    m = r @ sigma @ r
    evals, _ = eig_hermitian(0.5 * (m + m.conj().T))
    lam = clean_spectrum(evals, "sqrt(rho) sigma sqrt(rho)")
    return float(min(np.sum(np.sqrt(lam)), 1.0))
