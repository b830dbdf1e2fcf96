import math

import numpy as np
import pytest

from conftest import random_physical_c
from geodiscord.channels import Channel, geometric_discord_after
from geodiscord.dynamics import (
    P_MAX,
    canonicalize,
    freezing_interval,
    frozen_initial_is_separable,
    kink_locations,
    locate_kink,
    phase_flip_trajectory,
    piecewise_dg,
    sudden_change_point,
)
from geodiscord.errors import PreconditionError, ValidationError
from geodiscord.geometry import in_tetrahedron

C0 = (0.6, 0.0, 0.3)
P_STAR = 1 - math.sqrt(0.5)


def test_trajectory_straight_segment():
    traj = phase_flip_trajectory(C0, 101)
    c = np.array([s.c for s in traj.samples])
    assert np.all(c[:, 1] == 0) and np.all(c[:, 2] == 0.3)
    assert np.all(np.diff(c[:, 0]) < 0)
    assert c[0, 0] == 0.6 and c[-1, 0] == pytest.approx(0, abs=1e-15)
    ps = traj.column("p")
    assert ps[0] == 0 and ps[-1] == P_MAX and np.all(np.diff(ps) > 0)
    assert all(in_tetrahedron(s.c) for s in traj.samples)


def test_trajectory_constant_for_axis_state():
    traj = phase_flip_trajectory((0, 0, 0.4), 20)
    assert all(s.c == (0.0, 0.0, 0.4) for s in traj.samples)


def test_trajectory_strictly_decreasing_dg():
    traj = phase_flip_trajectory((0.5, -0.5, 0.2), 500)
    assert np.all(np.diff(traj.column("D_G")) < 0)


def test_trajectory_needs_two_steps():
    with pytest.raises(ValidationError):
        phase_flip_trajectory(C0, 1)


def test_trajectory_matches_channel_closed_form(rng):
    for c in random_physical_c(rng, 20):
        for s in phase_flip_trajectory(c, 50).samples:
            assert abs(s.D_G - geometric_discord_after(c, Channel("phase_flip", s.p))) <= 1e-12


def test_trajectory_continuity():
    traj = phase_flip_trajectory((0.7, 0.2, -0.25), 2001)
    p, dg = traj.column("p"), traj.column("D_G")
    # |d D_G / dp| <= sum_i |c_i| |dc_i/dp| / 2 <= 2 * 0.7**2 / 2 * 2
    assert np.max(np.abs(np.diff(dg))) <= 2.0 * np.diff(p)[0]


def test_piecewise_examples():
    assert piecewise_dg(C0, 0.0) == (pytest.approx(0.0225, abs=1e-15), "early")
    early = piecewise_dg(C0, P_STAR)
    assert early[1] == "early" and early[0] == pytest.approx(0.0225, abs=1e-15)
    late_side = piecewise_dg(C0, np.nextafter(P_STAR, 1))
    assert late_side[1] == "late" and late_side[0] == pytest.approx(0.0225, abs=1e-14)
    val, label = piecewise_dg(C0, 0.9)
    assert label == "late" and val == pytest.approx(9e-6, abs=1e-18)


def test_piecewise_precondition():
    with pytest.raises(PreconditionError):
        piecewise_dg((0.3, 0, 0.6), 0.1)
    with pytest.raises(PreconditionError):
        piecewise_dg((0, 0, 0), 0.1)


def test_piecewise_matches_channel_and_is_continuous(rng):
    n = 0
    for c in random_physical_c(rng, 400):
        (c1, c2, c3), _ = canonicalize(c)
        if abs(c1) < abs(c3) or c1 == 0 or abs(c3) == 0:
            continue
        n += 1
        for p in np.linspace(0, P_MAX, 25):
            assert abs(piecewise_dg((c1, c2, c3), p)[0] - geometric_discord_after((c1, c2, c3), Channel("phase_flip", p))) <= 1e-12
        ps = sudden_change_point((c1, c2, c3))
        left = piecewise_dg((c1, c2, c3), ps)
        right = piecewise_dg((c1, c2, c3), np.nextafter(ps, 1))
        assert abs(left[0] - right[0]) <= 1e-14
    assert n > 50


def test_sudden_change_examples():
    assert sudden_change_point(C0) == pytest.approx(P_STAR, abs=1e-15)
    assert sudden_change_point((0.3, 0, 0.6)) is None
    assert sudden_change_point((0.6, 0, 0)) is None
    assert sudden_change_point((0.0, 0.6, 0.3)) == pytest.approx(P_STAR, abs=1e-15)


def test_canonicalize_records_permutation():
    assert canonicalize((0.1, -0.5, 0.2)) == ((-0.5, 0.1, 0.2), (1, 0, 2))
    assert canonicalize(C0) == (C0, (0, 1, 2))


def test_freezing_examples():
    fi = freezing_interval(C0)
    assert fi.p_lo == 0 and fi.p_hi == pytest.approx(P_STAR, abs=1e-15) and fi.value == pytest.approx(0.0225, abs=1e-17)
    assert freezing_interval((0.6, 0.1, 0.3)) is None
    assert freezing_interval((0.6, 0, 0)) is None
    assert freezing_interval((0.4, 0, 0.4)) is None
    for p in np.linspace(0, fi.p_hi, 1001):
        assert abs(piecewise_dg(C0, p)[0] - fi.value) <= 1e-15


@pytest.mark.parametrize("c", [C0, (0.9, 0, 0.1), (1, 0, 0), (0, -0.7, 0.2)])
def test_frozen_states_are_separable(c):
    cert = frozen_initial_is_separable(c)
    assert cert.separable and cert.ppt and cert.concurrence.C == 0
    assert cert.concurrence.lambda1 <= cert.bound + 1e-15
    assert cert.concurrence.lambda2 <= cert.bound + 1e-15
    assert cert.bound <= 1e-15


def test_separability_precondition():
    with pytest.raises(PreconditionError):
        frozen_initial_is_separable((0.6, 0.1, 0.3))


def test_locate_kink_on_synthetic_data():
    p = np.arange(1000) * 1e-3
    f = np.where(p < 0.4321, 1.0 - 0.1 * p, 1.0 - 0.1 * 0.4321 - 2.0 * (p - 0.4321))
    assert locate_kink(p, f) == pytest.approx(0.4321, abs=1e-9)
    assert locate_kink(p, np.sin(p)) is None


def test_kinks_coincide_on_frozen_trajectory():
    kd, kg = kink_locations(C0, 1e-3)
    assert abs(kd - kg) < 1e-3
    assert abs(kg - P_STAR) < 1e-3
