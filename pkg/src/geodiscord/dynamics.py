"""Phase-flip dynamics of Bell-diagonal states.

Under local phase flip (or, with a reparameterised strength, phase damping)
the correlations evolve as ``c1(p) = q^2 c1(0)``, ``c2(p) = q^2 c2(0)`` and
``c3(p) = c3(0)``. The geometric discord then follows a two-branch law whose
breakpoint is the sudden-change point, and stays exactly constant before
that point when ``c2(0) = 0``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from geodiscord.errors import PreconditionError, ValidationError
from geodiscord.measures import (
    ConcurrencePieces,
    concurrence_xstate,
    geometric_discord_belldiag_batch,
    quantum_discord_belldiag_batch,
)
from geodiscord.qstate import BellLike, as_bell_diag, bell_diag_matrix, partial_transpose_b

P_MAX = 1.0 - 1e-9


@dataclass(frozen=True)
class TrajectorySample:
    p: float
    c: tuple[float, float, float]
    D_G: float
    D: float
    C: float


@dataclass(frozen=True)
class Trajectory:
    samples: tuple[TrajectorySample, ...]

    def __len__(self) -> int:
        return len(self.samples)

    def column(self, name: str) -> np.ndarray:
        if name in ("c1", "c2", "c3"):
            k = int(name[1]) - 1
            return np.array([s.c[k] for s in self.samples])
        return np.array([getattr(s, name) for s in self.samples])


def phase_flip_c(c0, p):
    """Correlation triple(s) after phase flip with strength ``p`` (scalar or array)."""
    c0 = np.asarray(c0, dtype=float)
    q2 = (1.0 - np.asarray(p, dtype=float)) ** 2
    return np.stack([q2 * c0[0], q2 * c0[1], np.full_like(q2, c0[2])], axis=-1)


def phase_flip_trajectory(c0: BellLike, steps: int, p_max: float = P_MAX) -> Trajectory:
    """Sample the phase-flip trajectory on a uniform grid over ``[0, p_max]``."""
    bd = as_bell_diag(c0).check()
    if steps < 2:
        raise ValidationError(f"steps must be at least 2, got {steps}")
    ps = np.linspace(0.0, p_max, steps)
    cs = phase_flip_c(bd.c, ps)
    dg = geometric_discord_belldiag_batch(cs)
    d = quantum_discord_belldiag_batch(cs)
    samples = tuple(
        TrajectorySample(
            float(p), tuple(float(v) for v in c), float(g), float(dd), concurrence_xstate(c).C
        )
        for p, c, g, dd in zip(ps, cs, dg, d)
    )
    return Trajectory(samples)


def canonicalize(c0: BellLike) -> tuple[tuple[float, float, float], tuple[int, int, int]]:
    """Order the dephased axes so that ``|c1| >= |c2|``.

    Returns the relabelled triple and the permutation applied (0-based
    source index per slot). Axis 3 is never moved: it is the one the
    channel leaves untouched.
    """
    c = as_bell_diag(c0).c
    if abs(c[1]) > abs(c[0]):
        return (c[1], c[0], c[2]), (1, 0, 2)
    return c, (0, 1, 2)


def breakpoint(c1: float, c3: float) -> float:
    return 1.0 - math.sqrt(abs(c3) / abs(c1))


def piecewise_dg(c0: BellLike, p: float) -> tuple[float, str]:
    """Geometric discord along the phase-flip trajectory, with its branch label.

    Requires ``|c1(0)| >= |c2(0)|, |c3(0)|`` and ``c1(0) != 0``; relabel axes
    with :func:`canonicalize` first if necessary.
    """
    bd = as_bell_diag(c0).check()
    c1, c2, c3 = bd.c
    if c1 == 0.0 or abs(c1) < abs(c2) or abs(c1) < abs(c3):
        raise PreconditionError(
            f"piecewise law needs |c1| >= |c2|, |c3| and c1 != 0; got c = {bd.c}"
        )
    q2 = (1.0 - p) ** 2
    c1p, c2p = q2 * c1, q2 * c2
    if p <= breakpoint(c1, c3):
        return (c2p * c2p + c3 * c3) / 4, "early"
    return (c1p * c1p + c2p * c2p) / 4, "late"


def sudden_change_point(c0: BellLike) -> float | None:
    """Strength at which the dominant axis switches from 1 to 3, if it does."""
    (c1, _, c3), _perm = canonicalize(as_bell_diag(c0).check())
    if abs(c1) > abs(c3) > 0.0:
        return breakpoint(c1, c3)
    return None


@dataclass(frozen=True)
class FreezingInterval:
    p_lo: float
    p_hi: float
    value: float
    permutation: tuple[int, int, int]


def freezing_interval(c0: BellLike) -> FreezingInterval | None:
    """Range of ``p`` over which the geometric discord stays exactly constant.

    Ties ``|c1| = |c3|`` and ``c3 = 0`` are reported as no interval.
    """
    (c1, c2, c3), perm = canonicalize(as_bell_diag(c0).check())
    if c2 == 0.0 and abs(c1) > abs(c3) > 0.0:
        return FreezingInterval(0.0, breakpoint(c1, c3), c3 * c3 / 4, perm)
    return None


@dataclass(frozen=True)
class SeparabilityCertificate:
    separable: bool
    concurrence: ConcurrencePieces
    bound: float
    ppt_min_eigenvalue: float

    @property
    def ppt(self) -> bool:
        return self.ppt_min_eigenvalue >= -1e-10


def frozen_initial_is_separable(c0: BellLike) -> SeparabilityCertificate:
    """Check that a state able to freeze its geometric discord is separable.

    The freezing condition is ``c2 = 0`` with ``|c1| >= |c3|`` after
    relabelling. Returns the concurrence pieces, the analytic upper bound
    ``(|c1| + |c3| - 1)/4`` on both Lambdas, and the smallest eigenvalue of the
    partial transpose.
    """
    bd = as_bell_diag(c0).check()
    (c1, c2, c3), _perm = canonicalize(bd)
    if c2 != 0.0 or abs(c1) < abs(c3):
        raise PreconditionError(
            f"c = {bd.c} does not satisfy the freezing condition (c2 = 0, |c1| >= |c3|)"
        )
    pieces = concurrence_xstate(bd)
    ppt_min = float(np.linalg.eigvalsh(partial_transpose_b(bell_diag_matrix(bd.c)))[0])
    separable = pieces.C == 0.0 and ppt_min >= -1e-10
    return SeparabilityCertificate(separable, pieces, (abs(c1) + abs(c3) - 1) / 4, ppt_min)


def locate_kink(p: np.ndarray, f: np.ndarray, threshold: float = 10.0, window: int = 10) -> float | None:
    """Locate a single slope discontinuity of sampled ``f(p)`` on a uniform grid.

    The slope jump at sample ``i`` is ``|f[i+1] - 2 f[i] + f[i-1]| / h``. The
    largest jump counts as a kink when it exceeds ``threshold`` times the
    median jump among its neighbours (``window`` samples either side,
    excluding the two nearest). The location is refined to sub-grid accuracy
    by intersecting the secant lines on either side of the kink.
    """
    p = np.asarray(p, dtype=float)
    f = np.asarray(f, dtype=float)
    if len(p) < 7:
        return None
    h = p[1] - p[0]
    jumps = np.abs(f[2:] - 2 * f[1:-1] + f[:-2]) / h
    k = int(np.argmax(jumps))
    lo, hi = max(0, k - window), min(len(jumps), k + window + 1)
    neigh = np.concatenate([jumps[lo : max(lo, k - 2)], jumps[min(hi, k + 3) : hi]])
    ref = float(np.median(neigh)) if len(neigh) else 0.0
    if jumps[k] <= threshold * ref or jumps[k] == 0.0:
        return None
    i = k + 1
    if i - 2 < 0 or i + 2 >= len(p):
        return float(p[i])
    # left secant through i-2, i-1 and right secant through i+1, i+2
    sl = (f[i - 1] - f[i - 2]) / h
    sr = (f[i + 2] - f[i + 1]) / h
    if sl == sr:
        return float(p[i])
    x = (f[i + 1] - sr * p[i + 1] - f[i - 1] + sl * p[i - 1]) / (sl - sr)
    return float(np.clip(x, p[i - 1], p[i + 1]))


def kink_locations(c0: BellLike, resolution: float = 1e-3) -> tuple[float | None, float | None]:
    """Kink positions of ``D(p)`` and ``D_G(p)`` along the phase-flip trajectory."""
    bd = as_bell_diag(c0).check()
    n = int(round(P_MAX / resolution)) + 1
    ps = np.arange(n) * resolution
    cs = phase_flip_c(bd.c, ps)
    return (
        locate_kink(ps, quantum_discord_belldiag_batch(cs)),
        locate_kink(ps, geometric_discord_belldiag_batch(cs)),
    )
