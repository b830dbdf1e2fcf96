"""Correlation measures for two-qubit states.

All entropies are in bits. Closed forms for Bell-diagonal and deformed
states live next to general matrix routines so each can be checked against
the other. ``classical_correlation_bruteforce`` is a numerical optimiser over
projective measurements on qubit B and is the reference for the closed-form
discord.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from geodiscord.errors import ConsistencyError, ValidationError
from geodiscord.linalg import hermitian_eigvalsh, sym3_eigvalsh
from geodiscord.qstate import (
    I2,
    PAULIS,
    SIGMA_Y,
    BellDiag,
    BellLike,
    DeformedBellDiag,
    TwoQubitDensity,
    as_bell_diag,
    as_density,
    density_to_bloch,
    partial_trace,
)

CLAMP_TOL = 1e-12
DEFAULT_GRID = (128, 256)
DEFAULT_REFINE_STEPS = 40

_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


def xlog2x(x):
    """Elementwise ``x * log2(x)`` with ``0 log 0 = 0``; negatives are treated as 0."""
    x = np.asarray(x, dtype=float)
    out = np.zeros_like(x)
    pos = x > 0
    out[pos] = x[pos] * np.log2(x[pos])
    return out if out.ndim else float(out)


def binary_entropy(x):
    x = np.asarray(x, dtype=float)
    return -(xlog2x(x) + xlog2x(1.0 - x))


def entropy_from_eigs(eigs) -> float:
    return float(-np.sum(xlog2x(np.asarray(eigs, dtype=float))))


def _clamp(value, what: str):
    """Clip rounding noise below zero; refuse anything larger."""
    v = np.asarray(value, dtype=float)
    if np.any(v < -CLAMP_TOL):
        raise ConsistencyError(f"{what} is negative: {v.min():.3g}")
    v = np.maximum(v, 0.0)
    return v if v.ndim else float(v)


def von_neumann_entropy(rho) -> float:
    if isinstance(rho, TwoQubitDensity):
        m = rho.m
    else:
        m = np.asarray(rho, dtype=complex)
        if m.shape != (4, 4) and m.shape != (2, 2):
            raise ValidationError(f"expected a 2x2 or 4x4 matrix, got {m.shape}")
    return entropy_from_eigs(hermitian_eigvalsh(m))


def mutual_information(rho) -> float:
    """``S(A) + S(B) - S(AB)`` from partial traces."""
    m = as_density(rho).m
    return (
        von_neumann_entropy(partial_trace(m, "A"))
        + von_neumann_entropy(partial_trace(m, "B"))
        - von_neumann_entropy(m)
    )


def mutual_information_belldiag(bd: BellLike) -> float:
    bd = as_bell_diag(bd).check()
    return 2.0 + float(np.sum(xlog2x(np.maximum(bd.lambdas, 0.0))))


def _j_bd(c):
    cmax = np.max(np.abs(np.asarray(c, dtype=float)), axis=-1)
    return 1.0 - binary_entropy((1.0 + cmax) / 2.0)


def classical_correlation_belldiag(bd: BellLike) -> float:
    bd = as_bell_diag(bd).check()
    return float(_j_bd(np.array(bd.c)))


def _qd_bd(c):
    """Closed-form discord, vectorised over the last axis of ``c``."""
    c = np.asarray(c, dtype=float)
    c1, c2, c3 = c[..., 0], c[..., 1], c[..., 2]
    terms = (
        xlog2x(np.asarray(1 - c1 - c2 - c3))
        + xlog2x(np.asarray(1 - c1 + c2 + c3))
        + xlog2x(np.asarray(1 + c1 - c2 + c3))
        + xlog2x(np.asarray(1 + c1 + c2 - c3))
    )
    cmax = np.max(np.abs(c), axis=-1)
    return terms / 4 - xlog2x(np.asarray(1 + cmax)) / 2 - xlog2x(np.asarray(1 - cmax)) / 2


def quantum_discord_belldiag(bd: BellLike) -> float:
    bd = as_bell_diag(bd).check()
    return _clamp(float(_qd_bd(np.array(bd.c))), "quantum discord")


def quantum_discord_belldiag_batch(c: np.ndarray) -> np.ndarray:
    """Closed-form discord for an ``(n, 3)`` array of physical triples."""
    return _clamp(_qd_bd(c), "quantum discord")


@dataclass(frozen=True)
class LocalProjectiveMeasurement:
    """Rank-1 projective measurement on qubit B along unit vector ``n``."""

    n: tuple[float, float, float]

    def __post_init__(self):
        n = np.asarray(self.n, dtype=float).reshape(3)
        norm = float(np.linalg.norm(n))
        if abs(norm - 1.0) > 1e-12:
            raise ValidationError(f"measurement direction must be a unit vector, |n| = {norm}")
        object.__setattr__(self, "n", tuple(n))

    @classmethod
    def from_angles(cls, theta: float, phi: float) -> "LocalProjectiveMeasurement":
        return cls(_direction(theta, phi))

    def projectors(self) -> tuple[np.ndarray, np.ndarray]:
        ns = sum(ni * s for ni, s in zip(self.n, PAULIS))
        return (I2 + ns) / 2, (I2 - ns) / 2

    def condition(self, rho) -> list[tuple[float, np.ndarray | None]]:
        """Outcome probabilities and post-measurement states ``rho_k``.

        Outcomes with zero probability carry ``None`` instead of a state.
        """
        m = as_density(rho).m
        out = []
        for proj in self.projectors():
            op = np.kron(I2, proj)
            unnorm = op @ m @ op
            pk = float(np.trace(unnorm).real)
            out.append((pk, unnorm / pk if pk > 0 else None))
        return out

    def conditional_entropy(self, rho) -> float:
        return sum(pk * von_neumann_entropy(rk) for pk, rk in self.condition(rho) if rk is not None)


def _direction(theta, phi):
    st = np.sin(theta)
    return np.stack([st * np.cos(phi), st * np.sin(phi), np.cos(theta) * np.ones_like(phi)], axis=-1)


def _h_bloch(length):
    """Entropy of a qubit with Bloch vector length ``length``."""
    length = np.clip(length, 0.0, 1.0)
    return binary_entropy((1.0 + length) / 2.0)


def _conditional_entropy_bloch(x, y, T, n):
    """Sum_k p_k S(rho_k) for measurements on B along directions ``n`` (..., 3)."""
    yn = n @ y
    Tn = n @ T.T
    total = np.zeros(yn.shape)
    for sign in (1.0, -1.0):
        w = 1.0 + sign * yn
        pk = w / 2.0
        safe = np.where(w > 0, w, 1.0)
        a = (x + sign * Tn) / safe[..., None]
        s = _h_bloch(np.linalg.norm(a, axis=-1))
        total = total + np.where(w > 0, pk * s, 0.0)
    return total


def _h_scalar(length: float) -> float:
    if length >= 1.0:
        return 0.0
    a, b = (1.0 + length) / 2.0, (1.0 - length) / 2.0
    return -(a * math.log2(a) + (b * math.log2(b) if b > 0 else 0.0))


def _conditional_entropy_scalar(x, y, T, theta: float, phi: float) -> float:
    """Scalar twin of ``_conditional_entropy_bloch`` for the refinement loop."""
    st = math.sin(theta)
    n = (st * math.cos(phi), st * math.sin(phi), math.cos(theta))
    yn = y[0] * n[0] + y[1] * n[1] + y[2] * n[2]
    tn = [T[i][0] * n[0] + T[i][1] * n[1] + T[i][2] * n[2] for i in range(3)]
    total = 0.0
    for sign in (1.0, -1.0):
        w = 1.0 + sign * yn
        if w <= 0.0:
            continue
        length = math.sqrt(sum((x[i] + sign * tn[i]) ** 2 for i in range(3))) / w
        total += (w / 2.0) * _h_scalar(length)
    return total


def _golden_max(f, lo: float, hi: float, steps: int) -> tuple[float, float]:
    a, b = lo, hi
    c = b - _INVPHI * (b - a)
    d = a + _INVPHI * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(steps):
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - _INVPHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INVPHI * (b - a)
            fd = f(d)
    return (c, fc) if fc >= fd else (d, fd)


def classical_correlation_bruteforce(
    rho,
    grid: tuple[int, int] = DEFAULT_GRID,
    refine_steps: int = DEFAULT_REFINE_STEPS,
    max_rounds: int = 12,
) -> tuple[float, np.ndarray]:
    """Maximise ``S(A) - sum_k p_k S(rho_k)`` over projective measurements on B.

    A ``grid = (n_theta, n_phi)`` scan over the sphere is followed by
    alternating golden-section searches on theta and phi, each over one grid
    step either side of the incumbent, until the objective stops improving by
    more than 1e-12 (objective tolerance well under 1e-8).

    Returns the maximal value in bits and the maximising unit direction.
    """
    rho = as_density(rho)
    n_theta, n_phi = grid
    if n_theta < 64 or n_phi < 128:
        raise ValidationError(f"measurement grid {grid} is below the 64x128 minimum")
    b = density_to_bloch(rho)
    x, y, T = np.asarray(b.x), np.asarray(b.y), np.asarray(b.T)
    s_a = float(_h_bloch(np.linalg.norm(x)))

    thetas = np.linspace(0.0, np.pi, n_theta)
    phis = np.linspace(0.0, 2 * np.pi, n_phi, endpoint=False)
    tt, pp = np.meshgrid(thetas, phis, indexing="ij")
    values = s_a - _conditional_entropy_bloch(x, y, T, _direction(tt, pp))
    # flat argmax is row-major, so ties resolve to the smallest (theta, phi)
    i, j = np.unravel_index(int(np.argmax(values)), values.shape)
    theta, phi, best = float(thetas[i]), float(phis[j]), float(values[i, j])

    xs, ys, Ts = x.tolist(), y.tolist(), T.tolist()

    def objective(th, ph):
        return s_a - _conditional_entropy_scalar(xs, ys, Ts, th, ph)

    d_theta = thetas[1] - thetas[0]
    d_phi = phis[1] - phis[0]
    for _ in range(max_rounds):
        prev = best
        t_new, f_t = _golden_max(lambda t: objective(t, phi), theta - d_theta, theta + d_theta, refine_steps)
        if f_t > best:
            theta, best = t_new, f_t
        p_new, f_p = _golden_max(lambda p: objective(theta, p), phi - d_phi, phi + d_phi, refine_steps)
        if f_p > best:
            phi, best = p_new, f_p
        if best - prev <= 1e-12:
            break
    return best, np.asarray(_direction(np.float64(theta), np.float64(phi)))


def quantum_discord_oracle(rho, grid: tuple[int, int] = DEFAULT_GRID, refine_steps: int = DEFAULT_REFINE_STEPS) -> float:
    """Discord with measurement on B, classical part from the numerical optimiser."""
    rho = as_density(rho)
    j, _ = classical_correlation_bruteforce(rho, grid, refine_steps)
    return _clamp(mutual_information(rho) - j, "quantum discord")


@dataclass(frozen=True)
class GeometricKernel:
    K: np.ndarray
    k_max: float


def geometric_discord_general(rho, side: str = "A") -> tuple[float, GeometricKernel]:
    """Hilbert-Schmidt geometric discord from the Bloch decomposition.

    ``(|x|^2 + ||T||_F^2 - k_max) / 4`` with ``K = x x^T + T T^T``, where
    ``||T||_F^2 = tr(T T^T)``. ``side="A"`` uses the local vector of A (the
    usual convention); ``side="B"`` uses ``y`` and ``T^T``, which is the
    variant matching measurements on B.
    """
    b = density_to_bloch(rho)
    if side == "A":
        v, T = np.asarray(b.x), np.asarray(b.T)
    elif side == "B":
        v, T = np.asarray(b.y), np.asarray(b.T).T
    else:
        raise ValidationError(f"side must be 'A' or 'B', got {side!r}")
    K = np.outer(v, v) + T @ T.T
    k_max = float(sym3_eigvalsh(K)[-1])
    dg = (float(v @ v) + float(np.trace(T @ T.T)) - k_max) / 4
    return _clamp(dg, "geometric discord"), GeometricKernel(K, k_max)


def _dg_bd(c):
    sq = np.asarray(c, dtype=float) ** 2
    return (np.sum(sq, axis=-1) - np.max(sq, axis=-1)) / 4


def geometric_discord_belldiag(bd: BellLike) -> float:
    bd = as_bell_diag(bd).check()
    return _clamp(float(_dg_bd(np.array(bd.c))), "geometric discord")


def geometric_discord_belldiag_batch(c: np.ndarray) -> np.ndarray:
    return _clamp(_dg_bd(c), "geometric discord")


def geometric_discord_deformed(d: DeformedBellDiag) -> float:
    """Closed form for the deformed family; independent of ``s``."""
    d.check()
    c1, c2, c3 = d.c
    sq = (c1 * c1, c2 * c2, c3 * c3 + d.r * d.r)
    return _clamp((sum(sq) - max(sq)) / 4, "geometric discord")


@dataclass(frozen=True)
class ConcurrencePieces:
    lambda1: float
    lambda2: float
    C: float


def concurrence_xstate(bd: BellLike) -> ConcurrencePieces:
    bd = as_bell_diag(bd).check()
    c1, c2, c3 = bd.c
    l1 = abs((c1 - c2) / 4) - abs((1 - c3) / 4)
    l2 = abs((c1 + c2) / 4) - abs((1 + c3) / 4)
    return ConcurrencePieces(l1, l2, 2 * max(0.0, l1, l2))


_YY = np.kron(SIGMA_Y, SIGMA_Y)


def concurrence(rho) -> float:
    """Wootters concurrence of an arbitrary two-qubit state."""
    m = as_density(rho).m
    tilde = _YY @ m.conj() @ _YY
    ev = np.sort(np.sqrt(np.abs(np.linalg.eigvals(m @ tilde))))[::-1]
    return max(0.0, float(ev[0] - ev[1] - ev[2] - ev[3]))


def nearest_classical_distance(bd: BellLike) -> tuple[float, int, float]:
    """Squared HS distance to the closest axis state ``(I + t sigma_i (x) sigma_i)/4``.

    Returns ``(distance, axis, t)`` with a 1-based axis; ties go to the
    smallest axis index.
    """
    bd = as_bell_diag(bd).check()
    c = np.array(bd.c)
    sq = c * c
    axis = int(np.argmax(sq))
    dist = float(np.sum(sq) - sq[axis]) / 4
    return dist, axis + 1, float(c[axis])


def hierarchy_margin(dg: float, d: float) -> float:
    """``2 D_G - D^2``; non-negative whenever the hierarchy holds."""
    return 2.0 * dg - d * d

