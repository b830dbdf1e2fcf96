"""Quantum discord, geometric discord and concurrence for two-qubit states.

The package is organised around Bell-diagonal states (correlation triple
``c = (c1, c2, c3)``) and a few related families, with dense 4x4 density
matrices used as the common reference representation.
"""

from geodiscord.errors import (
    ConsistencyError,
    GeodiscordError,
    PhysicalityError,
    PreconditionError,
    ValidationError,
)
from geodiscord.qstate import (
    BellDiag,
    BlochForm,
    DeformedBellDiag,
    TwoQubitDensity,
    bell_diag_to_density,
    bloch_to_density,
    deformed_to_density,
    density_to_bloch,
    partial_transpose_b,
)
from geodiscord.measures import (
    classical_correlation_belldiag,
    classical_correlation_bruteforce,
    concurrence_xstate,
    geometric_discord_belldiag,
    geometric_discord_deformed,
    geometric_discord_general,
    mutual_information,
    nearest_classical_distance,
    quantum_discord_belldiag,
    quantum_discord_oracle,
    von_neumann_entropy,
)
from geodiscord.channels import (
    Channel,
    apply_channel,
    evolve_params,
    geometric_discord_after,
    kraus_operators,
)

__version__ = "0.1.0"

__all__ = [
    "BellDiag",
    "BlochForm",
    "Channel",
    "ConsistencyError",
    "DeformedBellDiag",
    "GeodiscordError",
    "PhysicalityError",
    "PreconditionError",
    "TwoQubitDensity",
    "ValidationError",
    "apply_channel",
    "bell_diag_to_density",
    "bloch_to_density",
    "classical_correlation_belldiag",
    "classical_correlation_bruteforce",
    "concurrence_xstate",
    "deformed_to_density",
    "density_to_bloch",
    "evolve_params",
    "geometric_discord_after",
    "geometric_discord_belldiag",
    "geometric_discord_deformed",
    "geometric_discord_general",
    "kraus_operators",
    "mutual_information",
    "nearest_classical_distance",
    "partial_transpose_b",
    "quantum_discord_belldiag",
    "quantum_discord_oracle",
    "von_neumann_entropy",
]
