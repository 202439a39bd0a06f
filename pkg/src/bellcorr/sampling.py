"""Seeded random states, triples and unitaries for property checks."""

from __future__ import annotations

import numpy as np
from scipy.stats import unitary_group

from .states import BellDiagonal


def octahedron(rng: np.random.Generator, n: int) -> list[BellDiagonal]:
    """Uniform samples from ``|t1| + |t2| + |t3| <= 1`` by rejection from the cube."""
    out = []
    while len(out) < n:
        t = rng.uniform(-1.0, 1.0, size=(2 * n, 3))
        t = t[np.abs(t).sum(axis=1) <= 1.0]
        out.extend(BellDiagonal(*map(float, row)) for row in t)
    return out[:n]


def admissible(rng: np.random.Generator, n: int) -> list[BellDiagonal]:
    """Uniform non-negative triples with ``t1 + t2 + t3 <= 1``."""
    return [BellDiagonal(abs(s.t1), abs(s.t2), abs(s.t3)) for s in octahedron(rng, n)]


def tetrahedron(rng: np.random.Generator, n: int) -> list[BellDiagonal]:
    """Physical triples from Dirichlet-distributed Bell eigenvalues."""
    lam = rng.dirichlet(np.ones(4), size=n)
    t = 1.0 - 2.0 * (lam[:, [0]] + lam[:, 1:])
    return [BellDiagonal(*map(float, row)) for row in t]


def hermitian(rng: np.random.Generator, dim: int) -> np.ndarray:
    g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return 0.5 * (g + g.conj().T)


def density(rng: np.random.Generator, dim: int, rank: int | None = None) -> np.ndarray:
    """Ginibre-distributed density matrix of the given rank (full by default)."""
    g = rng.normal(size=(dim, rank or dim)) + 1j * rng.normal(size=(dim, rank or dim))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def pure_qubit(rng: np.random.Generator) -> np.ndarray:
    v = rng.normal(size=2) + 1j * rng.normal(size=2)
    return v / np.linalg.norm(v)


def unitary(rng: np.random.Generator, dim: int = 2) -> np.ndarray:
    return unitary_group.rvs(dim, random_state=rng)
