"""Random states and the Monte-Carlo check of ``2 D_G >= D^2``."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from geodiscord.measures import (
    DEFAULT_GRID,
    geometric_discord_belldiag_batch,
    geometric_discord_general,
    quantum_discord_belldiag_batch,
    quantum_discord_oracle,
)
from geodiscord.qstate import TwoQubitDensity, _bd_lambdas

BELL_SLACK = 1e-9
ORACLE_SLACK = 1e-5


def _rng(seed) -> np.random.Generator:
    return np.random.default_rng(seed)


def rejection_sample_tetrahedron(rng: np.random.Generator, n: int, batch: int = 4096) -> tuple[np.ndarray, int]:
    """Uniform points in the physical tetrahedron and the number of cube draws used."""
    out = np.empty((n, 3))
    filled = drawn = 0
    while filled < n:
        cand = rng.uniform(-1.0, 1.0, size=(batch, 3))
        drawn += batch
        ok = cand[np.all(_bd_lambdas(cand) >= 0.0, axis=-1)]
        take = min(len(ok), n - filled)
        out[filled : filled + take] = ok[:take]
        filled += take
    return out, drawn


def sample_bell_diag(seed, n: int) -> np.ndarray:
    """``(n, 3)`` array of physical correlation triples, uniform over the tetrahedron."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return rejection_sample_tetrahedron(_rng(seed), n)[0]


def ginibre_density(rng: np.random.Generator, n: int) -> np.ndarray:
    """``(n, 4, 4)`` densities ``G G^dagger / tr(G G^dagger)`` with complex Gaussian ``G``."""
    g = rng.standard_normal((n, 4, 4)) + 1j * rng.standard_normal((n, 4, 4))
    m = g @ np.conj(np.swapaxes(g, -1, -2))
    m = m / np.trace(m, axis1=-2, axis2=-1)[:, None, None]
    return (m + np.conj(np.swapaxes(m, -1, -2))) / 2


def sample_general_density(seed, n: int) -> list[TwoQubitDensity]:
    if n < 1:
        raise ValueError("n must be >= 1")
    return [TwoQubitDensity(m) for m in ginibre_density(_rng(seed), n)]


@dataclass(frozen=True)
class SampleReport:
    n_samples: int
    n_violations: int
    worst_margin: float
    seed: int

    @property
    def ok(self) -> bool:
        return self.n_violations == 0

    def merge(self, other: "SampleReport") -> "SampleReport":
        return SampleReport(
            self.n_samples + other.n_samples,
            self.n_violations + other.n_violations,
            min(self.worst_margin, other.worst_margin),
            self.seed,
        )


def _seeds(seed: int) -> tuple[int, int]:
    a, b = np.random.SeedSequence(seed).spawn(2)
    return int(a.generate_state(1)[0]), int(b.generate_state(1)[0])


def hierarchy_belldiag(seed: int, n: int) -> SampleReport:
    c = sample_bell_diag(_seeds(seed)[0], n)
    margin = 2 * geometric_discord_belldiag_batch(c) - quantum_discord_belldiag_batch(c) ** 2
    return SampleReport(n, int(np.sum(margin < -BELL_SLACK)), float(margin.min()), seed)


def hierarchy_general(seed: int, n: int, grid: tuple[int, int] = DEFAULT_GRID) -> SampleReport:
    """Random Ginibre states; discord from the measurement optimiser.

    Both measures are taken with respect to qubit B, the side the optimiser
    measures, so the comparison is like for like.
    """
    states = sample_general_density(_seeds(seed)[1], n)
    margins = np.array(
        [2 * geometric_discord_general(rho, side="B")[0] - quantum_discord_oracle(rho, grid) ** 2 for rho in states]
    )
    return SampleReport(n, int(np.sum(margins < -ORACLE_SLACK)), float(margins.min()), seed)


def verify_hierarchy(seed: int, n_belldiag: int, n_general: int, grid: tuple[int, int] = DEFAULT_GRID) -> SampleReport:
    if n_belldiag < 0 or n_general < 0 or n_belldiag + n_general == 0:
        raise ValueError("sample counts must be non-negative and not both zero")
    report = SampleReport(0, 0, float("inf"), seed)
    if n_belldiag:
        report = report.merge(hierarchy_belldiag(seed, n_belldiag))
    if n_general:
        report = report.merge(hierarchy_general(seed, n_general, grid))
    return report
