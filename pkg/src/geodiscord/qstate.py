"""Two-qubit state representations and conversions.

Conventions
-----------
Computational basis ordering is the standard Kronecker one,
``|00>, |01>, |10>, |11>`` with qubit A as the left factor. With this
ordering ``sum_i c_i sigma_i (x) sigma_i / 4 + I/4`` has ``(c1 - c2)/4`` in the
``|00><11|`` corner and ``(c1 + c2)/4`` in the ``|01><10|`` corner.

Bell states are ``|beta_ab> = (|0,b> + (-1)^a |1, 1^b>) / sqrt(2)``, so
``|beta_00>`` is ``(|00> + |11>)/sqrt(2)`` and corresponds to ``c = (1, -1, 1)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence, Union

import numpy as np

from geodiscord.errors import PhysicalityError, ValidationError

EQ_TOL = 1e-12
PSD_TOL = 1e-10

I2 = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS = (SIGMA_X, SIGMA_Y, SIGMA_Z)

# sigma_i (x) I, I (x) sigma_i, sigma_i (x) sigma_j
_SIGMA_A = np.array([np.kron(s, I2) for s in PAULIS])
_SIGMA_B = np.array([np.kron(I2, s) for s in PAULIS])
_SIGMA_AB = np.array([[np.kron(si, sj) for sj in PAULIS] for si in PAULIS])


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, copy=True)
    a.setflags(write=False)
    return a


def bell_vector(a: int, b: int) -> np.ndarray:
    """Return the Bell ket ``|beta_ab>`` as a length-4 complex array."""
    v = np.zeros(4, dtype=complex)
    v[b] = 1.0  # |0, b>
    v[2 + (1 ^ b)] = (-1) ** a  # |1, 1 xor b>
    return v / np.sqrt(2.0)


@dataclass(frozen=True)
class TwoQubitDensity:
    """A validated 4x4 density matrix (Hermitian, unit trace, PSD)."""

    m: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.m, dtype=complex)
        if m.shape != (4, 4):
            raise ValidationError(f"density matrix must be 4x4, got shape {m.shape}")
        if not np.all(np.isfinite(m)):
            raise ValidationError("density matrix has non-finite entries")
        if np.max(np.abs(m - m.conj().T)) > EQ_TOL:
            raise ValidationError("density matrix is not Hermitian")
        tr = np.trace(m)
        if abs(tr - 1.0) > EQ_TOL:
            raise ValidationError(f"density matrix trace is {tr.real!r}, expected 1")
        emin = float(np.linalg.eigvalsh(m)[0])
        if emin < -PSD_TOL:
            raise PhysicalityError(
                f"density matrix has negative eigenvalue {emin:.3g}",
                [f"lambda_min = {emin:.17g} < 0"],
            )
        object.__setattr__(self, "m", _frozen(m))

    def eigvals(self) -> np.ndarray:
        return np.linalg.eigvalsh(self.m)

    def reduced(self, keep: str) -> np.ndarray:
        """Partial trace keeping subsystem ``"A"`` or ``"B"`` (2x2 matrix)."""
        return partial_trace(self.m, keep)


@dataclass(frozen=True)
class BlochForm:
    """Local Bloch vectors ``x`` (A), ``y`` (B) and correlation tensor ``T``."""

    x: np.ndarray
    y: np.ndarray
    T: np.ndarray

    def __post_init__(self):
        x = np.asarray(self.x, dtype=float).reshape(3)
        y = np.asarray(self.y, dtype=float).reshape(3)
        T = np.asarray(self.T, dtype=float).reshape(3, 3)
        object.__setattr__(self, "x", _frozen(x))
        object.__setattr__(self, "y", _frozen(y))
        object.__setattr__(self, "T", _frozen(T))

    def to_density(self) -> TwoQubitDensity:
        return bloch_to_density(self)


def _bd_lambdas(c: np.ndarray) -> np.ndarray:
    c1, c2, c3 = c[..., 0], c[..., 1], c[..., 2]
    # order: (a, b) = 00, 01, 10, 11
    return np.stack(
        [
            (1 + c1 - c2 + c3) / 4,
            (1 + c1 + c2 - c3) / 4,
            (1 - c1 + c2 + c3) / 4,
            (1 - c1 - c2 - c3) / 4,
        ],
        axis=-1,
    )


_BD_INEQ = ("1+c1-c2+c3", "1+c1+c2-c3", "1-c1+c2+c3", "1-c1-c2-c3")


@dataclass(frozen=True)
class BellDiag:
    """Bell-diagonal state parameterised by its correlation triple.

    Construction does not enforce physicality so that points outside the
    tetrahedron can still be represented; use :meth:`check` or any
    operation that produces a density matrix to validate.
    """

    c: tuple[float, float, float]

    def __post_init__(self):
        c = tuple(float(v) for v in np.asarray(self.c, dtype=float).reshape(3))
        if not all(np.isfinite(c)):
            raise ValidationError("correlation triple has non-finite entries")
        object.__setattr__(self, "c", c)

    @property
    def c1(self) -> float:
        return self.c[0]

    @property
    def c2(self) -> float:
        return self.c[1]

    @property
    def c3(self) -> float:
        return self.c[2]

    @property
    def c_max(self) -> float:
        return max(abs(v) for v in self.c)

    @property
    def lambdas(self) -> np.ndarray:
        """Eigenvalues ``lambda_ab`` ordered ``00, 01, 10, 11``."""
        return _bd_lambdas(np.array(self.c))

    def is_physical(self, tol: float = PSD_TOL) -> bool:
        return bool(np.all(self.lambdas >= -tol))

    def check(self, tol: float = PSD_TOL) -> "BellDiag":
        lam = self.lambdas
        bad = [
            f"{name} = {4 * v:.17g} < 0"
            for name, v in zip(_BD_INEQ, lam)
            if v < -tol
        ]
        if bad:
            raise PhysicalityError(
                f"c = {self.c} is outside the physical tetrahedron: " + "; ".join(bad),
                bad,
            )
        return self


@dataclass(frozen=True)
class DeformedBellDiag:
    """Bell-diagonal correlations plus parallel local z-Bloch components r (A), s (B)."""

    r: float
    s: float
    c: tuple[float, float, float]

    def __post_init__(self):
        object.__setattr__(self, "r", float(self.r))
        object.__setattr__(self, "s", float(self.s))
        c = tuple(float(v) for v in np.asarray(self.c, dtype=float).reshape(3))
        if not all(np.isfinite((self.r, self.s) + c)):
            raise ValidationError("deformed state has non-finite parameters")
        object.__setattr__(self, "c", c)

    @property
    def mu(self) -> tuple[float, float]:
        """``(mu_plus, mu_minus)``."""
        c1, c2, c3 = self.c
        rad = np.hypot(self.r - self.s, c1 + c2)
        return ((1 - c3) + rad) / 4, ((1 - c3) - rad) / 4

    @property
    def nu(self) -> tuple[float, float]:
        """``(nu_plus, nu_minus)``."""
        c1, c2, c3 = self.c
        rad = np.hypot(self.r + self.s, c1 - c2)
        return ((1 + c3) + rad) / 4, ((1 + c3) - rad) / 4

    @property
    def eigenvalues(self) -> np.ndarray:
        return np.array([*self.mu, *self.nu])

    def is_physical(self, tol: float = PSD_TOL) -> bool:
        return min(self.mu[1], self.nu[1]) >= -tol

    def check(self, tol: float = PSD_TOL) -> "DeformedBellDiag":
        bad = []
        if self.mu[1] < -tol:
            bad.append(f"mu_minus = {self.mu[1]:.17g} < 0")
        if self.nu[1] < -tol:
            bad.append(f"nu_minus = {self.nu[1]:.17g} < 0")
        if bad:
            raise PhysicalityError(
                f"deformed state (r={self.r}, s={self.s}, c={self.c}) is not physical: "
                + "; ".join(bad),
                bad,
            )
        return self


BellLike = Union[BellDiag, Sequence[float], np.ndarray]


def as_bell_diag(bd: BellLike) -> BellDiag:
    return bd if isinstance(bd, BellDiag) else BellDiag(tuple(np.asarray(bd, dtype=float)))


def as_density(rho) -> TwoQubitDensity:
    return rho if isinstance(rho, TwoQubitDensity) else TwoQubitDensity(rho)


def bell_diag_matrix(c) -> np.ndarray:
    """Raw matrix for a correlation triple (no validation)."""
    c1, c2, c3 = (float(v) for v in c)
    return np.array(
        [
            [1 + c3, 0, 0, c1 - c2],
            [0, 1 - c3, c1 + c2, 0],
            [0, c1 + c2, 1 - c3, 0],
            [c1 - c2, 0, 0, 1 + c3],
        ],
        dtype=complex,
    ) / 4


def bell_diag_to_density(bd: BellLike) -> TwoQubitDensity:
    bd = as_bell_diag(bd).check()
    return TwoQubitDensity(bell_diag_matrix(bd.c))


def deformed_matrix(r: float, s: float, c) -> np.ndarray:
    c1, c2, c3 = (float(v) for v in c)
    return np.array(
        [
            [1 + r + s + c3, 0, 0, c1 - c2],
            [0, 1 + r - s - c3, c1 + c2, 0],
            [0, c1 + c2, 1 - r + s - c3, 0],
            [c1 - c2, 0, 0, 1 - r - s + c3],
        ],
        dtype=complex,
    ) / 4


def deformed_to_density(d: DeformedBellDiag) -> TwoQubitDensity:
    d.check()
    return TwoQubitDensity(deformed_matrix(d.r, d.s, d.c))


def density_to_bloch(rho) -> BlochForm:
    return bloch_of_matrix(as_density(rho).m)


def bloch_of_matrix(m) -> BlochForm:
    """Bloch data of any 4x4 Hermitian matrix (no density-matrix checks)."""
    m = np.asarray(m, dtype=complex)
    x = np.einsum("kij,ji->k", _SIGMA_A, m).real
    y = np.einsum("kij,ji->k", _SIGMA_B, m).real
    T = np.einsum("klij,ji->kl", _SIGMA_AB, m).real
    return BlochForm(x, y, T)


def bloch_matrix(x, y, T) -> np.ndarray:
    """Raw ``(I + x.sigma (x) I + I (x) y.sigma + T_ij sigma_i (x) sigma_j)/4``."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    T = np.asarray(T, dtype=float)
    m = np.eye(4, dtype=complex)
    m = m + np.einsum("k,kij->ij", x, _SIGMA_A) + np.einsum("k,kij->ij", y, _SIGMA_B)
    m = m + np.einsum("kl,klij->ij", T, _SIGMA_AB)
    return m / 4


def bloch_to_density(b: BlochForm) -> TwoQubitDensity:
    return TwoQubitDensity(bloch_matrix(b.x, b.y, b.T))


def partial_transpose_b(rho) -> np.ndarray:
    """Transpose the B factor. Returns a raw Hermitian matrix, possibly not PSD."""
    m = rho.m if isinstance(rho, TwoQubitDensity) else np.asarray(rho, dtype=complex)
    return m.reshape(2, 2, 2, 2).transpose(0, 3, 2, 1).reshape(4, 4)


def partial_trace(m: np.ndarray, keep: str) -> np.ndarray:
    t = np.asarray(m).reshape(2, 2, 2, 2)
    if keep == "A":
        return np.einsum("ajbj->ab", t)
    if keep == "B":
        return np.einsum("iaib->ab", t)
    raise ValidationError(f"keep must be 'A' or 'B', got {keep!r}")


def is_ppt(rho, tol: float = PSD_TOL) -> bool:
    """Positive partial transpose (equivalent to separability for two qubits)."""
    return bool(np.linalg.eigvalsh(partial_transpose_b(rho))[0] >= -tol)


def state_from_spec(spec: dict) -> tuple[TwoQubitDensity, BellDiag | DeformedBellDiag | None]:
    """Build a state from the JSON-style dictionary accepted by the CLI.

    Accepted forms are ``{"bell_diag": [c1, c2, c3]}``,
    ``{"deformed": {"r": ..., "s": ..., "c": [...]}}`` and
    ``{"matrix": [[[re, im], ...], ...]}``. Returns the density matrix and,
    when available, the parameterised form.
    """
    if not isinstance(spec, dict):
        raise ValidationError("state specification must be a JSON object")
    keys = [k for k in ("bell_diag", "deformed", "matrix") if k in spec]
    if len(keys) != 1:
        raise ValidationError(
            "state specification needs exactly one of 'bell_diag', 'deformed', 'matrix'"
        )
    key = keys[0]
    if key == "bell_diag":
        c = _float_list(spec["bell_diag"], 3, "bell_diag")
        bd = BellDiag(tuple(c))
        return bell_diag_to_density(bd), bd
    if key == "deformed":
        d = spec["deformed"]
        if not isinstance(d, dict):
            raise ValidationError("field 'deformed' must be an object with r, s, c")
        for k in ("r", "s", "c"):
            if k not in d:
                raise ValidationError(f"field 'deformed.{k}' is missing")
        r = _float_list([d["r"]], 1, "deformed.r")[0]
        s = _float_list([d["s"]], 1, "deformed.s")[0]
        c = _float_list(d["c"], 3, "deformed.c")
        dd = DeformedBellDiag(r, s, tuple(c))
        return deformed_to_density(dd), dd
    rows = spec["matrix"]
    if not isinstance(rows, list) or len(rows) != 4:
        raise ValidationError("field 'matrix' must be a 4x4 array of [re, im] pairs")
    m = np.zeros((4, 4), dtype=complex)
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != 4:
            raise ValidationError(f"field 'matrix[{i}]' must have 4 entries")
        for j, entry in enumerate(row):
            re, im = _float_list(entry, 2, f"matrix[{i}][{j}]")
            m[i, j] = complex(re, im)
    return TwoQubitDensity(m), None


def _float_list(v, n: int, name: str) -> list[float]:
    if not isinstance(v, (list, tuple)) or len(v) != n:
        raise ValidationError(f"field '{name}' must be a list of {n} numbers")
    out = []
    for item in v:
        if isinstance(item, bool) or not isinstance(item, (int, float)):
            raise ValidationError(f"field '{name}' must contain only numbers")
        out.append(float(item))
    return out
