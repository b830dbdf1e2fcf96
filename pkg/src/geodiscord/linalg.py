"""Small fixed-size eigen-solvers."""

from __future__ import annotations

import math

import numpy as np

# 1 - r**2 below this means (nearly) repeated eigenvalues; acos is ill-conditioned there
_DISCRIMINANT_FLOOR = 1e-14


def sym3_eigvalsh(a: np.ndarray) -> np.ndarray:
    """Ascending eigenvalues of a real symmetric 3x3 matrix.

    Uses the closed-form trigonometric solution of the characteristic cubic.
    Falls back to LAPACK when the cubic is close to having a repeated root.
    """
    a = np.asarray(a, dtype=float)
    p1 = a[0, 1] ** 2 + a[0, 2] ** 2 + a[1, 2] ** 2
    if p1 == 0.0:
        return np.sort(np.diag(a).copy())
    q = (a[0, 0] + a[1, 1] + a[2, 2]) / 3.0
    p2 = (a[0, 0] - q) ** 2 + (a[1, 1] - q) ** 2 + (a[2, 2] - q) ** 2 + 2.0 * p1
    p = math.sqrt(p2 / 6.0)
    b = (a - q * np.eye(3)) / p
    r = float(np.linalg.det(b)) / 2.0
    if 1.0 - r * r < _DISCRIMINANT_FLOOR:
        return np.linalg.eigvalsh(a)
    phi = math.acos(r) / 3.0
    e1 = q + 2.0 * p * math.cos(phi)
    e3 = q + 2.0 * p * math.cos(phi + 2.0 * math.pi / 3.0)
    e2 = 3.0 * q - e1 - e3
    return np.array([e3, e2, e1])


def hermitian_eigvalsh(m: np.ndarray) -> np.ndarray:
    """Ascending eigenvalues of a dense Hermitian matrix."""
    return np.linalg.eigvalsh(np.asarray(m, dtype=complex))
