"""Polytopes of Bell-diagonal state space and level sets of discord fields.

Scalar fields are sampled on a uniform grid over ``[-1, 1]^3`` (correlation
space). Surfaces come from marching cubes and plane contours from marching
squares (both via scikit-image); clipping, ordering and component labelling
are done here so that meshes are reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components as _cc
from skimage import measure

from geodiscord.errors import ValidationError
from geodiscord.measures import _dg_bd, _qd_bd
from geodiscord.qstate import _bd_lambdas

FIELDS = ("dg", "d", "dg_deformed")
_FIELD_ALIASES = {
    "dg": "dg",
    "D_G": "dg",
    "D_G_belldiag": "dg",
    "d": "d",
    "D": "d",
    "D_belldiag": "d",
    "dg_deformed": "dg_deformed",
    "D_G_deformed": "dg_deformed",
}
DEFAULT_RESOLUTION = 101
BOUNDARY_TOL = 1e-12


def in_tetrahedron(c, tol: float = BOUNDARY_TOL):
    """Whether ``c`` (shape ``(..., 3)``) describes a physical Bell-diagonal state."""
    lam4 = 4 * _bd_lambdas(np.asarray(c, dtype=float))
    out = np.all(lam4 >= -tol, axis=-1)
    return bool(out) if out.ndim == 0 else out


def in_octahedron(c, tol: float = BOUNDARY_TOL):
    """``|c1| + |c2| + |c3| <= 1``: the separable Bell-diagonal states."""
    out = np.sum(np.abs(np.asarray(c, dtype=float)), axis=-1) <= 1 + tol
    return bool(out) if out.ndim == 0 else out


def deformed_min_eig(c, r: float, s: float):
    """``min(mu_minus, nu_minus)`` for the deformed family, vectorised over ``c``."""
    c = np.asarray(c, dtype=float)
    c1, c2, c3 = c[..., 0], c[..., 1], c[..., 2]
    mu_m = ((1 - c3) - np.hypot(r - s, c1 + c2)) / 4
    nu_m = ((1 + c3) - np.hypot(r + s, c1 - c2)) / 4
    return np.minimum(mu_m, nu_m)


def _dg_deformed(c, r: float):
    c = np.asarray(c, dtype=float)
    sq = np.stack([c[..., 0] ** 2, c[..., 1] ** 2, c[..., 2] ** 2 + r * r], axis=-1)
    return (np.sum(sq, axis=-1) - np.max(sq, axis=-1)) / 4


def field_function(name: str, r: float = 0.0, s: float = 0.0) -> tuple[Callable, Callable]:
    """Return ``(field, physical_margin)`` callables over ``(..., 3)`` arrays.

    ``physical_margin`` is non-negative exactly on the physical region. The
    discord field ``d`` is extended outside the tetrahedron by treating the
    ``x log x`` terms of negative eigenvalues as zero, which is continuous
    across the boundary.
    """
    key = _FIELD_ALIASES.get(name)
    if key is None:
        raise ValidationError(f"unknown field {name!r}; expected one of {', '.join(FIELDS)}")
    if key == "dg_deformed":
        return (lambda c: _dg_deformed(c, r)), (lambda c: deformed_min_eig(c, r, s))
    margin = lambda c: np.min(_bd_lambdas(np.asarray(c, dtype=float)), axis=-1)  # noqa: E731
    if key == "dg":
        return _dg_bd, margin
    return _qd_bd, margin


def grid_axis(resolution: int) -> np.ndarray:
    return np.linspace(-1.0, 1.0, resolution)


def _check_resolution(resolution: int, minimum: int) -> None:
    if resolution < minimum or resolution % 2 == 0:
        raise ValidationError(f"resolution must be odd and >= {minimum}, got {resolution}")


def sample_grid(fn: Callable, resolution: int) -> np.ndarray:
    g = grid_axis(resolution)
    pts = np.stack(np.meshgrid(g, g, g, indexing="ij"), axis=-1)
    return fn(pts)


@dataclass
class IsoMesh:
    vertices: np.ndarray = field(default_factory=lambda: np.zeros((0, 3)))
    triangles: np.ndarray = field(default_factory=lambda: np.zeros((0, 3), dtype=np.int64))
    component_id: np.ndarray = field(default_factory=lambda: np.zeros(0, dtype=np.int64))

    def __post_init__(self):
        self.vertices = np.asarray(self.vertices, dtype=float).reshape(-1, 3)
        self.triangles = np.asarray(self.triangles, dtype=np.int64).reshape(-1, 3)
        if len(self.component_id) != len(self.triangles):
            self.component_id = label_components(self.triangles, len(self.vertices))

    @property
    def is_empty(self) -> bool:
        return len(self.triangles) == 0

    @property
    def n_components(self) -> int:
        return int(self.component_id.max()) + 1 if len(self.component_id) else 0


def label_components(triangles: np.ndarray, n_vertices: int) -> np.ndarray:
    """Per-triangle component label; triangles sharing a vertex are adjacent.

    Labels are numbered in order of first appearance.
    """
    nt = len(triangles)
    if nt == 0:
        return np.zeros(0, dtype=np.int64)
    rows = np.repeat(np.arange(nt), 3)
    cols = nt + triangles.ravel()
    n = nt + n_vertices
    graph = coo_matrix((np.ones(len(rows), dtype=np.int8), (rows, cols)), shape=(n, n))
    _, labels = _cc(graph, directed=False)
    tri_labels = labels[:nt]
    _, first, inverse = np.unique(tri_labels, return_index=True, return_inverse=True)
    order = np.argsort(np.argsort(first))
    return order[inverse].astype(np.int64)


def connected_components(mesh: IsoMesh) -> int:
    return mesh.n_components


def _marching_cubes(volume: np.ndarray, level: float, keep_cell: np.ndarray | None) -> IsoMesh:
    res = volume.shape[0]
    if not (np.nanmin(volume) < level < np.nanmax(volume)):
        return IsoMesh()
    h = 2.0 / (res - 1)
    verts, faces, _, _ = measure.marching_cubes(
        volume, level=level, spacing=(h, h, h), method="lewiner", allow_degenerate=False
    )
    verts = verts - 1.0
    cells = np.floor((verts[faces].mean(axis=1) + 1.0) / h).astype(np.int64)
    cells = np.clip(cells, 0, res - 2)
    lin = (cells[:, 0] * (res - 1) + cells[:, 1]) * (res - 1) + cells[:, 2]
    if keep_cell is not None:
        mask = keep_cell[cells[:, 0], cells[:, 1], cells[:, 2]]
        faces, lin = faces[mask], lin[mask]
    order = np.argsort(lin, kind="stable")
    faces = faces[order]
    used, inverse = np.unique(faces.ravel(), return_inverse=True)
    return IsoMesh(verts[used], inverse.reshape(-1, 3))


def _cells_touching(inside: np.ndarray) -> np.ndarray:
    """Cells with at least one physical corner."""
    keep = np.zeros(tuple(n - 1 for n in inside.shape), dtype=bool)
    for di in (0, 1):
        for dj in (0, 1):
            for dk in (0, 1):
                keep |= inside[di : di + keep.shape[0], dj : dj + keep.shape[1], dk : dk + keep.shape[2]]
    return keep


def iso_surface(
    field_name: str,
    level: float,
    resolution: int = DEFAULT_RESOLUTION,
    clip: bool = False,
    r: float = 0.0,
    s: float = 0.0,
) -> IsoMesh:
    """Level surface ``field = level`` as a triangle mesh in correlation space.

    With ``clip`` the cells lying wholly outside the physical region are
    dropped, leaving open cut ends on the region boundary. A level outside
    the field's range, or ``level <= 0``, gives an empty mesh.
    """
    _check_resolution(resolution, 33)
    if level <= 0:
        return IsoMesh()
    fn, margin = field_function(field_name, r, s)
    vol = sample_grid(fn, resolution)
    keep = _cells_touching(sample_grid(margin, resolution) >= -BOUNDARY_TOL) if clip else None
    return _marching_cubes(vol, level, keep)


def deformation_boundary(r: float, s: float, resolution: int = DEFAULT_RESOLUTION) -> IsoMesh:
    """Zero set of ``min(mu_minus, nu_minus)``: the deformed physical boundary."""
    if abs(r) >= 1 or abs(s) >= 1:
        raise ValidationError(f"need |r|, |s| < 1, got r={r}, s={s}")
    _check_resolution(resolution, 33)
    vol = sample_grid(lambda c: deformed_min_eig(c, r, s), resolution)
    return _marching_cubes(vol, 0.0, None)


@dataclass
class ContourSet:
    plane_c3: float
    level: float
    polylines: list[np.ndarray]

    @property
    def points(self) -> np.ndarray:
        return np.concatenate(self.polylines) if self.polylines else np.zeros((0, 2))


def contour_slice(
    field_name: str,
    level: float,
    plane_c3: float,
    resolution: int = 201,
    r: float = 0.0,
    s: float = 0.0,
) -> ContourSet:
    """Marching-squares contours of ``field(c1, c2, plane_c3) = level``."""
    if abs(plane_c3) > 1:
        raise ValidationError(f"|plane_c3| must be <= 1, got {plane_c3}")
    _check_resolution(resolution, 33)
    if level <= 0:
        return ContourSet(plane_c3, level, [])
    fn, _ = field_function(field_name, r, s)
    g = grid_axis(resolution)
    c1, c2 = np.meshgrid(g, g, indexing="ij")
    img = fn(np.stack([c1, c2, np.full_like(c1, plane_c3)], axis=-1))
    if not (img.min() < level < img.max()):
        return ContourSet(plane_c3, level, [])
    h = 2.0 / (resolution - 1)
    lines = [ln * h - 1.0 for ln in measure.find_contours(img, level)]
    return ContourSet(plane_c3, level, lines)


def contour_containment(level_alpha: float, plane_c3: float, resolution: int = 401) -> bool:
    """Check that the ``2 D_G = alpha^2`` contour lies inside the ``D = alpha`` one.

    Every physical point on the ``2 D_G = alpha^2`` contour must have
    ``D <= alpha + eps``. ``eps`` absorbs the interpolation error of the
    contour point itself: ``eps = max(0, sqrt(2 D_G(pt)) - alpha) + 1e-9``,
    i.e. a point that marching squares placed slightly off the level is
    held to the level it actually sits on.
    """
    if level_alpha == 0:
        return True
    if not 0 < level_alpha < 1:
        raise ValidationError(f"alpha must lie in (0, 1), got {level_alpha}")
    cs = contour_slice("dg", level_alpha**2 / 2, plane_c3, resolution)
    pts = cs.points
    if len(pts) == 0:
        return True
    c = np.column_stack([pts, np.full(len(pts), plane_c3)])
    c = c[in_tetrahedron(c)]
    if len(c) == 0:
        return True
    eps = np.maximum(0.0, np.sqrt(2 * _dg_bd(c)) - level_alpha) + 1e-9
    return bool(np.all(_qd_bd(c) <= level_alpha + eps))


def mesh_vertex_tolerance(resolution: int) -> float:
    """Grid cell diagonal, the positional tolerance for extracted vertices."""
    return float(np.sqrt(3.0) * 2.0 / (resolution - 1))
