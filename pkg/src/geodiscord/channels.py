"""Local decoherence channels acting identically on both qubits.

Each one-qubit channel is given by its Kraus list. The two-qubit map is
``rho -> sum_ij (E_i (x) E_j) rho (E_i (x) E_j)^dagger``. For Bell-diagonal
inputs every channel here keeps the correlation tensor diagonal, so the
evolved state is summarised by ``ChannelOutputParams``.

The parameter ``p`` is the channel strength, with ``q = 1 - p``. For
dephasing, ``p = 1 - exp(-Gamma t)`` relates it to a decay rate; see
:func:`p_from_gamma_time`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from geodiscord.errors import ValidationError
from geodiscord.measures import geometric_discord_general
from geodiscord.qstate import (
    I2,
    PAULIS,
    BellLike,
    TwoQubitDensity,
    as_bell_diag,
    as_density,
    bell_diag_to_density,
    bloch_matrix,
)

KINDS = (
    "amplitude_damping",
    "phase_damping",
    "depolarizing",
    "bit_flip",
    "phase_flip",
    "bit_phase_flip",
)

# Pauli axis (0-based) left untouched by each flip channel
FLIP_AXIS = {"bit_flip": 0, "bit_phase_flip": 1, "phase_flip": 2}


@dataclass(frozen=True)
class Channel:
    kind: str
    p: float

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValidationError(f"unknown channel {self.kind!r}; expected one of {', '.join(KINDS)}")
        p = float(self.p)
        if not (0.0 <= p <= 1.0):
            raise ValidationError(f"channel parameter p must lie in [0, 1], got {p}")
        object.__setattr__(self, "p", p)

    @property
    def q(self) -> float:
        return 1.0 - self.p


def p_from_gamma_time(gamma_t: float) -> float:
    """Channel strength for an exponential decay after ``Gamma * t``."""
    if gamma_t < 0:
        raise ValidationError(f"Gamma*t must be non-negative, got {gamma_t}")
    return -math.expm1(-gamma_t)


def kraus_operators(ch: Channel) -> list[np.ndarray]:
    """One-qubit Kraus operators of ``ch``.

    Zero operators (e.g. the second operator at ``p = 0``) are kept, so the
    list length depends only on the kind.
    """
    p, q = ch.p, ch.q
    if ch.kind == "amplitude_damping":
        e0 = np.diag([1.0, math.sqrt(q)]).astype(complex)
        e1 = math.sqrt(p) * (PAULIS[0] + 1j * PAULIS[1]) / 2
        return [e0, e1]
    if ch.kind == "phase_damping":
        return [
            np.diag([1.0, math.sqrt(q)]).astype(complex),
            np.diag([0.0, math.sqrt(p)]).astype(complex),
        ]
    if ch.kind == "depolarizing":
        return [math.sqrt(1 - 3 * p / 4) * I2] + [math.sqrt(p / 4) * s for s in PAULIS]
    axis = FLIP_AXIS[ch.kind]
    return [math.sqrt(1 - p / 2) * I2, math.sqrt(p / 2) * PAULIS[axis]]


def kraus_completeness(ops) -> np.ndarray:
    return sum(e.conj().T @ e for e in ops)


def apply_channel(rho, ch: Channel) -> TwoQubitDensity:
    m = as_density(rho).m
    ops = kraus_operators(ch)
    out = np.zeros((4, 4), dtype=complex)
    for ea in ops:
        for eb in ops:
            e = np.kron(ea, eb)
            out += e @ m @ e.conj().T
    # restore exact Hermiticity lost to rounding
    return TwoQubitDensity((out + out.conj().T) / 2)


@dataclass(frozen=True)
class ChannelOutputParams:
    x: tuple[float, float, float]
    y: tuple[float, float, float]
    Tdiag: tuple[float, float, float]

    def to_density(self) -> TwoQubitDensity:
        return TwoQubitDensity(bloch_matrix(self.x, self.y, np.diag(self.Tdiag)))


def evolve_params(bd: BellLike, ch: Channel) -> ChannelOutputParams:
    """Closed-form Bloch data of a Bell-diagonal state after the channel."""
    bd = as_bell_diag(bd).check()
    c1, c2, c3 = bd.c
    p, q = ch.p, ch.q
    zero = (0.0, 0.0, 0.0)
    if ch.kind == "amplitude_damping":
        local = (0.0, 0.0, p)
        return ChannelOutputParams(local, local, (q * c1, q * c2, p * p + q * q * c3))
    if ch.kind == "phase_damping":
        return ChannelOutputParams(zero, zero, (q * c1, q * c2, c3))
    q2 = q * q
    if ch.kind == "depolarizing":
        return ChannelOutputParams(zero, zero, (q2 * c1, q2 * c2, q2 * c3))
    axis = FLIP_AXIS[ch.kind]
    t = [q2 * c1, q2 * c2, q2 * c3]
    t[axis] = bd.c[axis]
    return ChannelOutputParams(zero, zero, tuple(t))


def geometric_discord_after(bd: BellLike, ch: Channel) -> float:
    """Geometric discord of the evolved state, from per-channel closed forms."""
    bd = as_bell_diag(bd).check()
    c1, c2, c3 = bd.c
    p, q = ch.p, ch.q
    if ch.kind == "amplitude_damping":
        t3 = p * p + c3 * q * q
        terms = ((q * c1) ** 2, (q * c2) ** 2, t3 * t3 + p * p)
    elif ch.kind == "phase_damping":
        terms = ((q * c1) ** 2, (q * c2) ** 2, c3 * c3)
    elif ch.kind == "depolarizing":
        q2 = q * q
        terms = ((q2 * c1) ** 2, (q2 * c2) ** 2, (q2 * c3) ** 2)
    else:
        q2 = q * q
        axis = FLIP_AXIS[ch.kind]
        terms = tuple(
            bd.c[k] ** 2 if k == axis else (q2 * bd.c[k]) ** 2 for k in range(3)
        )
    return max(0.0, (sum(terms) - max(terms)) / 4)


def geometric_discord_after_matrix(bd: BellLike, ch: Channel) -> float:
    """Same quantity via the Kraus sum and the general Bloch formula."""
    dg, _ = geometric_discord_general(apply_channel(bell_diag_to_density(bd), ch))
    return dg
