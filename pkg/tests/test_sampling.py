import numpy as np
import pytest

from geodiscord.measures import geometric_discord_belldiag, quantum_discord_belldiag
from geodiscord.sampling import (
    SampleReport,
    ginibre_density,
    hierarchy_belldiag,
    hierarchy_general,
    rejection_sample_tetrahedron,
    sample_bell_diag,
    sample_general_density,
    verify_hierarchy,
)
from geodiscord.geometry import in_tetrahedron


def test_rejection_acceptance_ratio():
    samples, drawn = rejection_sample_tetrahedron(np.random.default_rng(7), 100_000)
    assert samples.shape == (100_000, 3)
    assert np.all(in_tetrahedron(samples))
    # tetrahedron volume 8/3 over cube volume 8
    assert 0.32 <= 100_000 / drawn <= 0.35


def test_bell_samples_uniform_moments():
    c = sample_bell_diag(3, 100_000)
    np.testing.assert_allclose(c.mean(axis=0), 0.0, atol=0.01)
    # second moment of each coordinate over the tetrahedron is 1/5
    np.testing.assert_allclose((c**2).mean(axis=0), 0.2, atol=0.01)


def test_seed_repeatable():
    np.testing.assert_array_equal(sample_bell_diag(11, 100), sample_bell_diag(11, 100))
    assert not np.array_equal(sample_bell_diag(11, 100), sample_bell_diag(12, 100))
    a = sample_general_density(5, 3)
    b = sample_general_density(5, 3)
    for x, y in zip(a, b):
        np.testing.assert_array_equal(x.m, y.m)


def test_sample_count_validation():
    with pytest.raises(ValueError):
        sample_bell_diag(0, 0)
    with pytest.raises(ValueError):
        verify_hierarchy(0, 0, 0)


def test_ginibre_densities():
    m = ginibre_density(np.random.default_rng(1), 20_000)
    np.testing.assert_allclose(np.trace(m, axis1=1, axis2=2), 1.0, atol=1e-12)
    np.testing.assert_allclose(m, np.conj(np.swapaxes(m, 1, 2)), atol=0)
    eig = np.linalg.eigvalsh(m)
    assert eig.min() >= -1e-12
    purity = np.einsum("nij,nji->n", m, m).real
    assert np.all((purity >= 0.25 - 1e-12) & (purity <= 1 + 1e-12))
    # mean purity of induced measure with d = k = 4 is (d + k) / (d k + 1) = 8/17
    assert abs(purity.mean() - 8 / 17) < 0.01


def test_report_merge():
    a = SampleReport(10, 0, 0.5, 1)
    b = SampleReport(5, 2, -0.1, 1)
    m = a.merge(b)
    assert (m.n_samples, m.n_violations, m.worst_margin) == (15, 2, -0.1)
    assert a.ok and not m.ok


def test_belldiag_hierarchy_no_violations():
    rep = hierarchy_belldiag(2024, 20_000)
    assert rep.n_samples == 20_000 and rep.n_violations == 0
    assert rep.worst_margin >= -1e-9


def test_general_hierarchy_small():
    rep = hierarchy_general(9, 10, grid=(64, 128))
    assert rep.n_violations == 0


def test_bell_state_saturates_hierarchy():
    c = (-1.0, -1.0, -1.0)  # singlet: D = 1, D_G = 1/2
    assert 2 * geometric_discord_belldiag(c) == pytest.approx(quantum_discord_belldiag(c) ** 2, abs=1e-12)


def test_verify_hierarchy_counts():
    rep = verify_hierarchy(1, 1000, 2, grid=(64, 128))
    assert rep.n_samples == 1002 and rep.ok and rep.seed == 1
