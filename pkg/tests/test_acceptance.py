"""One test per acceptance criterion; each records a PASS/FAIL summary line."""

import time

import numpy as np
import pytest
from scipy.optimize import minimize_scalar
from scipy.spatial import cKDTree

from conftest import ACCEPTANCE_LINES
from geodiscord import channels, dynamics, geometry, measures, sampling
from geodiscord.qstate import (
    PAULIS,
    DeformedBellDiag,
    bell_diag_matrix,
    bell_diag_to_density,
    deformed_to_density,
    density_to_bloch,
)

SEED = 20240611


def record(num, title, ok, detail):
    ACCEPTANCE_LINES.append(f"{'PASS' if ok else 'FAIL'} [{num:>2}] {title}: {detail}")
    assert ok, detail


def test_01_closed_form_consistency():
    t0 = time.perf_counter()
    cs = sampling.sample_bell_diag(SEED, 10_000)
    err_dg = err_i = 0.0
    for c in cs:
        rho = bell_diag_to_density(c)
        err_dg = max(err_dg, abs(measures.geometric_discord_general(rho)[0] - measures.geometric_discord_belldiag(c)))
        err_i = max(err_i, abs(measures.mutual_information(rho) - measures.mutual_information_belldiag(c)))
    dt = time.perf_counter() - t0
    ok = err_dg <= 1e-12 and err_i <= 1e-12 and dt < 10
    record(1, "closed-form consistency", ok, f"max|dD_G|={err_dg:.2e} max|dI|={err_i:.2e} in {dt:.2f}s")


def test_02_oracle_equivalence():
    t0 = time.perf_counter()
    cs = sampling.sample_bell_diag(SEED + 1, 200)
    err = max(
        abs(measures.quantum_discord_oracle(bell_diag_to_density(c)) - measures.quantum_discord_belldiag(c))
        for c in cs
    )
    dt = time.perf_counter() - t0
    record(2, "oracle equivalence", err <= 1e-6 and dt < 60, f"max|dD|={err:.2e} in {dt:.2f}s")


def test_03_channel_equivalence():
    t0 = time.perf_counter()
    rng = np.random.default_rng(SEED + 2)
    cs = sampling.sample_bell_diag(SEED + 2, 1000)
    kinds = rng.integers(0, len(channels.KINDS), 1000)
    ps = rng.uniform(0, 1, 1000)
    err_b = err_dg = 0.0
    for c, k, p in zip(cs, kinds, ps):
        ch = channels.Channel(channels.KINDS[k], p)
        out = channels.apply_channel(bell_diag_to_density(c), ch)
        b = density_to_bloch(out)
        ref = channels.evolve_params(c, ch)
        err_b = max(
            err_b,
            np.max(np.abs(b.x - ref.x)),
            np.max(np.abs(b.y - ref.y)),
            np.max(np.abs(b.T - np.diag(ref.Tdiag))),
        )
        err_dg = max(err_dg, abs(measures.geometric_discord_general(out)[0] - channels.geometric_discord_after(c, ch)))
    dt = time.perf_counter() - t0
    ok = err_b <= 1e-12 and err_dg <= 1e-12 and dt < 10
    record(3, "channel equivalence", ok, f"max|dBloch|={err_b:.2e} max|dD_G|={err_dg:.2e} in {dt:.2f}s")


def test_04_freezing_reproduction():
    c0 = (0.6, 0.0, 0.3)
    p_star = 1 - np.sqrt(0.5)
    early = np.linspace(0, p_star, 2001)
    dg_early = geometry._dg_bd(dynamics.phase_flip_c(c0, early))
    dg_kraus = [channels.geometric_discord_after(c0, channels.Channel("phase_flip", p)) for p in early[::50]]
    err_freeze = max(np.max(np.abs(dg_early - 0.0225)), np.max(np.abs(np.array(dg_kraus) - 0.0225)))
    err_star = abs(dynamics.sudden_change_point(c0) - p_star)
    late = np.linspace(p_star, dynamics.P_MAX, 2001)[1:]
    dg_late = geometry._dg_bd(dynamics.phase_flip_c(c0, late))
    monotone = bool(np.all(np.diff(dg_late) < 0)) and dg_late[0] < 0.0225
    ok = err_freeze <= 1e-14 and err_star <= 1e-12 and monotone
    record(4, "freezing reproduction", ok, f"max|D_G-0.0225|={err_freeze:.1e} |dp*|={err_star:.1e} strict decay={monotone}")


def test_05_frozen_implies_separable():
    g = np.linspace(-1, 1, 201)
    checked = bad = 0
    for c1 in g:
        for c3 in g:
            c = (c1, 0.0, c3)
            if not (abs(c1) > abs(c3) > 0) or not geometry.in_tetrahedron(c, tol=0.0):
                continue
            cert = dynamics.frozen_initial_is_separable(c)
            checked += 1
            bad += not (cert.concurrence.C == 0.0 and cert.ppt)
    record(5, "frozen implies separable", bad == 0 and checked > 0, f"{checked} grid states, {bad} counterexamples")


def test_06_simultaneous_sudden_change():
    kd, kg = dynamics.kink_locations((0.6, 0.0, 0.3), resolution=1e-3)
    ok = kd is not None and kg is not None and abs(kd - kg) <= 1e-3
    record(6, "simultaneous sudden change", ok, f"kink D at {kd:.6f}, D_G at {kg:.6f}, p*={1 - np.sqrt(0.5):.6f}")


def test_07_hierarchy():
    t0 = time.perf_counter()
    rep = sampling.verify_hierarchy(SEED, 100_000, 1000)
    combos = [(a, z) for a in (0.05, 0.15, 0.3, 0.5) for z in (0.0, 0.3)]
    contained = [geometry.contour_containment(a, z) for a, z in combos]
    dt = time.perf_counter() - t0
    ok = rep.n_violations == 0 and rep.n_samples == 101_000 and all(contained)
    record(
        7,
        "hierarchy 2 D_G >= D^2",
        ok,
        f"{rep.n_violations} violations in {rep.n_samples} samples (worst margin {rep.worst_margin:.2e}), "
        f"containment {sum(contained)}/{len(combos)} in {dt:.1f}s",
    )


def test_08_mesh_topology():
    n1 = geometry.iso_surface("dg", 0.03, 101, clip=True).n_components
    n4 = geometry.iso_surface("dg", 0.35, 101, clip=True).n_components
    tol = geometry.mesh_vertex_tolerance(101)
    worst = 0.0
    for level in (0.03, 0.15, 0.35):
        v = geometry.iso_surface("dg", level, 101, clip=False).vertices
        tree = cKDTree(v)
        for axis in range(3):
            refl = v.copy()
            refl[:, axis] *= -1
            worst = max(worst, tree.query(refl)[0].max())
    ok = n1 == 1 and n4 == 4 and worst <= tol
    record(8, "mesh topology", ok, f"components {n1} @0.03, {n4} @0.35; reflection mismatch {worst:.1e} (tol {tol:.3f})")


def _random_deformed(rng, n):
    out = []
    while len(out) < n:
        r, s = rng.uniform(-1, 1, 2)
        c = rng.uniform(-1, 1, 3)
        d = DeformedBellDiag(r, s, c)
        if d.is_physical(tol=0.0):
            out.append(d)
    return out


def test_09_deformed_family():
    states = _random_deformed(np.random.default_rng(SEED + 9), 10_000)
    err_dg = err_eig = 0.0
    for d in states:
        rho = deformed_to_density(d)
        err_dg = max(err_dg, abs(measures.geometric_discord_deformed(d) - measures.geometric_discord_general(rho)[0]))
        err_eig = max(err_eig, np.max(np.abs(np.sort(d.eigenvalues) - np.linalg.eigvalsh(rho.m))))
    mesh = geometry.deformation_boundary(0.0, 0.0, 101)
    normals = np.array([[1, -1, 1], [1, 1, -1], [-1, 1, 1], [-1, -1, -1]], dtype=float)
    plane_dist = np.abs(1 + mesh.vertices @ normals.T) / np.sqrt(3)
    face_err = plane_dist.min(axis=1).max()
    faces_hit = len(set(np.argmin(plane_dist, axis=1).tolist()))
    tol = geometry.mesh_vertex_tolerance(101)
    ok = err_dg <= 1e-12 and err_eig <= 1e-12 and face_err <= tol and faces_hit == 4
    record(
        9,
        "deformed family",
        ok,
        f"max|dD_G|={err_dg:.2e} max|deig|={err_eig:.2e}; boundary off-face {face_err:.1e} (tol {tol:.3f}), faces {faces_hit}/4",
    )


def _hs_to_axis_state(c, axis, t):
    chi = (np.eye(4) + t * np.kron(PAULIS[axis], PAULIS[axis])) / 4
    diff = bell_diag_matrix(c) - chi
    return float(np.real(np.vdot(diff, diff)))


def test_10_nearest_classical():
    cs = sampling.sample_bell_diag(SEED + 10, 1000)
    err = 0.0
    for c in cs:
        best = min(
            minimize_scalar(lambda t: _hs_to_axis_state(c, k, t), bounds=(-1, 1), method="bounded",
                            options={"xatol": 1e-12}).fun
            for k in range(3)
        )
        err = max(err, abs(best - measures.geometric_discord_belldiag(c)))
    record(10, "nearest classical state", err <= 1e-10, f"max|d|={err:.2e} over {len(cs)} states")
