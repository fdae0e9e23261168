"""Shared test helpers."""

import numpy as np


def rng(seed: int) -> np.random.Generator:
    return np.random.default_rng(seed)


def random_matrix(seed: int, n: int, norm: float | None = None) -> np.ndarray:
    """Uniform [-1, 1] matrix, optionally rescaled to a given inf-norm."""
    a = rng(seed).uniform(-1.0, 1.0, size=(n, n))
    if norm is not None:
        current = np.abs(a).sum(axis=1).max()
        a *= norm / current
    return a


def well_conditioned_matrix(seed: int, n: int) -> np.ndarray:
    """Random matrix made strictly diagonally dominant."""
    g = rng(seed)
    a = g.uniform(-1.0, 1.0, size=(n, n))
    off = np.abs(a).sum(axis=1) - np.abs(np.diag(a))
    for i in range(n):
        a[i, i] = (off[i] + 0.5) * (1.0 if a[i, i] >= 0 else -1.0) * g.uniform(1.1, 2.0)
    return a


def random_signature(seed: int, n: int) -> np.ndarray:
    return rng(seed).choice([-1.0, 1.0], size=n)
