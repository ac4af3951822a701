"""Sampler moments against quadrature moments (same piecewise-linear law)."""

import numpy as np
import pytest

from qfisher import GridDensity, GridSpec, sample_density, zoo


def test_seeded_draws_are_reproducible():
    g = zoo.gaussian_density(GridSpec.line(-10.0, 10.0, 512), 0.0, 1.0)
    a = sample_density(g, 1000, np.random.default_rng(42))
    b = sample_density(g, 1000, np.random.default_rng(42))
    np.testing.assert_array_equal(a, b)
    c = sample_density(g, 1000, np.random.default_rng(43))
    assert not np.array_equal(a, c)


def test_1d_moments_match_quadrature():
    grid = GridSpec.line(-10.0, 10.0, 1024)
    g = zoo.mixture_density(grid, (-1.0, 1.2), (0.6, 0.9), (0.4, 0.6))
    xs = sample_density(g, 400_000, np.random.default_rng(0))
    assert xs.shape == (1, 400_000)
    (x,) = grid.axes()
    mean_q = g.expectation(x)
    var_q = g.expectation((x - mean_q) ** 2)
    assert xs.mean() == pytest.approx(mean_q, abs=4.0 * np.sqrt(var_q / 400_000))
    assert xs.var() == pytest.approx(var_q, rel=2e-2)


def test_1d_histogram_tracks_density():
    grid = GridSpec.line(-8.0, 8.0, 512)
    g = zoo.gaussian_density(grid, 0.3, 1.1)
    xs = sample_density(g, 500_000, np.random.default_rng(7))[0]
    edges = np.linspace(-4.0, 4.0, 33)
    hist, _ = np.histogram(xs, bins=edges, density=True)
    (x,) = grid.axes()
    centers = 0.5 * (edges[:-1] + edges[1:])
    ref = np.interp(centers, x, g.values)
    assert np.max(np.abs(hist - ref)) < 0.01


def test_2d_moments_match_quadrature():
    grid = GridSpec.box(-10.0, 10.0, 192, 2)
    g = zoo.gaussian_density(grid, mean=(0.3, -0.5), sigma=(1.0, 1.3))
    xs = sample_density(g, 200_000, np.random.default_rng(3))
    assert xs.shape == (2, 200_000)
    assert xs[0].mean() == pytest.approx(0.3, abs=0.01)
    assert xs[1].mean() == pytest.approx(-0.5, abs=0.015)
    assert xs[0].var() == pytest.approx(1.0, rel=2e-2)
    assert xs[1].var() == pytest.approx(1.3**2, rel=2e-2)
    # independent axes: correlation is zero up to Monte Carlo noise
    corr = np.corrcoef(xs)[0, 1]
    assert abs(corr) < 0.01


def test_samples_stay_inside_domain():
    grid = GridSpec.line(-3.0, 3.0, 128)
    (x,) = grid.axes()
    g = GridDensity.from_values(grid, np.where(np.abs(x) < 2.0, 1.0, 0.0), check_boundary=False)
    xs = sample_density(g, 50_000, np.random.default_rng(11))[0]
    # the sampled law is the piecewise-linear interpolant, whose support
    # ramps to the first zero node one cell beyond the indicator edge
    h = grid.spacing[0]
    assert xs.min() >= -2.0 - h
    assert xs.max() <= 2.0 + h


def test_zero_mass_rejected():
    grid = GridSpec.line(-1.0, 1.0, 64)
    g = zoo.gaussian_density(GridSpec.line(-10.0, 10.0, 64), 0.0, 1.0)
    with pytest.raises(ValueError):
        sample_density(
            GridDensity(grid, np.zeros(64)),
            10,
            np.random.default_rng(0),
        )
    del g


def test_3d_unsupported():
    grid = GridSpec.box(-3.0, 3.0, 16, 3)
    vals = np.ones(grid.shape)
    g = GridDensity.from_values(grid, vals, check_boundary=False)
    with pytest.raises(ValueError):
        sample_density(g, 10, np.random.default_rng(0))
