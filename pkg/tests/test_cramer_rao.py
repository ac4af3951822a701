"""Estimation bounds: scalar, multidim, matrix-weighted, functional, single-density."""

import numpy as np
import pytest

from qfisher import (
    EstimationProblem,
    GridSpec,
    HolderPair,
    QGaussianParams,
    SingularFisherMatrix,
    covariance_bound_check,
    functional_cr_check,
    gaussian_location_family,
    make_q_gaussian,
    matrix_cr_check,
    multidim_cr_check,
    q_cr_check,
    scalar_cr_check,
    suggested_half_extent,
    zoo,
)
from qfisher.fisher import ParametricFamily

PAIR22 = HolderPair.from_alpha(2.0)


def _identity_problem(grid, sigma=1.0):
    fam = gaussian_location_family(grid, sigma=sigma)
    return EstimationProblem(
        fam=fam,
        statistic=lambda coords: coords[0],
        h=lambda theta: theta,
        h_jacobian=lambda theta: np.eye(1),
        g=fam.at(0.0),
        pair=PAIR22,
    )


def test_scalar_efficient_estimator_saturates():
    prob = _identity_problem(GridSpec.line(-12.0, 12.0, 4096))
    rep = scalar_cr_check(prob, 0.0)
    assert rep.rhs == pytest.approx(1.0, abs=1e-9)
    assert rep.lhs == pytest.approx(1.0, rel=1e-6)
    assert rep.margin == pytest.approx(0.0, abs=1e-6)
    assert rep.saturated
    assert rep.diagnostics["bias_divergence"] == pytest.approx(0.0, abs=1e-9)


def test_scalar_biased_statistic_shrinks_rhs():
    grid = GridSpec.line(-12.0, 12.0, 4096)
    fam = gaussian_location_family(grid, sigma=1.0)
    prob = EstimationProblem(
        fam=fam,
        statistic=lambda coords: 0.5 * coords[0],
        h=lambda theta: theta,
        h_jacobian=lambda theta: np.eye(1),
        g=fam.at(0.0),
        pair=PAIR22,
    )
    rep = scalar_cr_check(prob, 0.0)
    # E[T] = theta/2, so the bias derivative halves the rhs; T itself has
    # half the spread, so the bound stays saturated
    assert rep.rhs == pytest.approx(0.5, abs=1e-9)
    assert rep.lhs == pytest.approx(0.5, rel=1e-6)
    assert rep.saturated


def test_scalar_reparameterized_target():
    # estimating h(theta) = theta/2 with T = x/2: the jacobian dtheta/dh = 2
    # rescales the score, and the bound is again saturated at rhs = 1
    grid = GridSpec.line(-12.0, 12.0, 4096)
    fam = gaussian_location_family(grid, sigma=1.0)
    prob = EstimationProblem(
        fam=fam,
        statistic=lambda coords: 0.5 * coords[0],
        h=lambda theta: 0.5 * np.asarray(theta),
        h_jacobian=lambda theta: 2.0 * np.eye(1),
        g=fam.at(0.0),
        pair=PAIR22,
    )
    rep = scalar_cr_check(prob, 0.0)
    assert rep.rhs == pytest.approx(1.0, abs=1e-9)
    assert rep.lhs == pytest.approx(1.0, rel=1e-6)
    assert rep.saturated


def test_scalar_check_rejects_multidim():
    grid = GridSpec.box(-10.0, 10.0, 128, 2)
    fam = gaussian_location_family(grid, sigma=1.0)
    prob = EstimationProblem(
        fam=fam,
        statistic=lambda coords: np.stack(coords),
        h=lambda theta: theta,
        h_jacobian=lambda theta: np.eye(2),
        g=fam.at((0.0, 0.0)),
        pair=PAIR22,
        m_dim=2,
    )
    with pytest.raises(ValueError):
        scalar_cr_check(prob, (0.0, 0.0))
    rep = multidim_cr_check(prob, (0.0, 0.0))
    assert rep.rhs == pytest.approx(2.0, abs=1e-8)
    assert rep.lhs == pytest.approx(2.0, rel=1e-4)
    assert rep.saturated


def test_suboptimal_estimator_leaves_slack():
    grid = GridSpec.line(-12.0, 12.0, 4096)
    fam = gaussian_location_family(grid, sigma=1.0)
    prob = EstimationProblem(
        fam=fam,
        statistic=lambda coords: coords[0] + 0.8 * np.sin(2.0 * coords[0]),
        h=lambda theta: theta,
        h_jacobian=lambda theta: np.eye(1),
        g=fam.at(0.0),
        pair=PAIR22,
    )
    rep = scalar_cr_check(prob, 0.0)
    assert rep.margin > 0.05
    assert not rep.saturated


def test_matrix_weighted_bound_uses_inverse_information():
    grid = GridSpec((-11.0, -14.0), (11.0, 14.0), (192, 224))
    fam = gaussian_location_family(grid, sigma=(1.0, 1.5))
    target = lambda theta: np.atleast_1d(theta[0] + 0.3 * theta[1])
    prob = EstimationProblem(
        fam=fam,
        statistic=lambda coords: coords[0] + 0.3 * coords[1],
        h=target,
        h_jacobian=lambda theta: np.eye(1),  # unused by the matrix check
        g=fam.at((0.0, 0.0)),
        pair=PAIR22,
    )
    rep = matrix_cr_check(prob, (0.0, 0.0))
    expected = np.sqrt(1.0 + 0.09 * 1.5**2)
    assert rep.rhs == pytest.approx(expected, rel=1e-4)
    assert rep.lhs == pytest.approx(expected, rel=1e-4)
    assert rep.saturated


def test_matrix_check_requires_beta_two():
    prob = _identity_problem(GridSpec.line(-12.0, 12.0, 1024))
    bad = EstimationProblem(
        fam=prob.fam,
        statistic=prob.statistic,
        h=prob.h,
        h_jacobian=prob.h_jacobian,
        g=prob.g,
        pair=HolderPair.from_alpha(3.0),
    )
    with pytest.raises(ValueError):
        matrix_cr_check(bad, 0.0)


def test_singular_information_matrix_raises():
    grid = GridSpec.line(-12.0, 12.0, 1024)

    def build(theta):
        # theta[1] does nothing, so its information row/column vanishes
        return zoo.gaussian_density(grid, mean=float(theta[0]), sigma=1.0)

    fam = ParametricFamily(density_at=build, theta_dim=2, kind="generic")
    prob = EstimationProblem(
        fam=fam,
        statistic=lambda coords: coords[0],
        h=lambda theta: np.atleast_1d(theta[0]),
        h_jacobian=lambda theta: np.eye(1),
        g=fam.at((0.0, 0.0)),
        pair=PAIR22,
    )
    with pytest.raises(SingularFisherMatrix):
        matrix_cr_check(prob, (0.0, 0.0))


def test_functional_bound_gaussian_saturates():
    grid = GridSpec.line(-12.0, 12.0, 4096)
    g = zoo.gaussian_density(grid, 0.0, 1.0)
    rep = functional_cr_check(g, g, PAIR22)
    assert rep.rhs == 1.0
    assert rep.lhs == pytest.approx(1.0, rel=1e-5)
    assert rep.saturated
    assert rep.diagnostics["K"] == pytest.approx(1.0, rel=1e-3)


def test_functional_bound_recenters_offset_density():
    grid = GridSpec.line(-12.0, 12.0, 4096)
    centered = zoo.gaussian_density(grid, 0.0, 1.0)
    shifted = zoo.gaussian_density(grid, 0.7, 1.0)
    rep0 = functional_cr_check(centered, centered, PAIR22)
    rep1 = functional_cr_check(shifted, shifted, PAIR22)
    assert rep1.lhs == pytest.approx(rep0.lhs, rel=1e-6)
    assert rep1.saturated


def test_functional_bound_slack_for_mixture():
    grid = GridSpec.line(-14.0, 14.0, 4096)
    mix = zoo.mixture_density(grid, (-1.5, 1.5), (0.7, 0.7), (0.5, 0.5))
    rep = functional_cr_check(mix, mix, PAIR22)
    assert rep.margin > 0.0
    assert not rep.saturated


@pytest.mark.parametrize(
    "q,alpha",
    [(0.8, 2.0), (1.0, 2.0), (1.5, 2.0), (1.2, 1.5), (0.9, 3.0), (2.0, 2.0)],
)
def test_q_cr_saturates_on_generalized_gaussians(q, alpha):
    p = QGaussianParams(q=q, alpha=alpha, gamma=1.0)
    half = suggested_half_extent(p)
    g = make_q_gaussian(p, GridSpec.line(-half, half, 4097))
    rep = q_cr_check(g, HolderPair.from_alpha(alpha), q)
    assert rep.margin == pytest.approx(0.0, abs=2e-4)
    assert rep.saturated
    assert rep.diagnostics["K"] > 0.0


def test_q_cr_holds_strictly_on_zoo_members():
    grid = GridSpec.line(-10.0, 10.0, 2049)
    pair = HolderPair.from_alpha(2.0)
    for seed in range(8):
        g = zoo.random_density(grid, seed)
        rep = q_cr_check(g, pair, q=1.5)
        assert rep.margin > 1e-3
        assert not rep.saturated


def test_covariance_bound_efficient_1d():
    grid = GridSpec.line(-12.0, 12.0, 2048)
    prob = _identity_problem(grid)
    rep = covariance_bound_check(prob, 0.0, n_samples=60_000, seed=1)
    assert rep.empirical[0, 0] == pytest.approx(1.0, rel=2e-2)
    assert rep.bound[0, 0] == pytest.approx(1.0, rel=1e-5)
    assert rep.psd_margin >= 0.0


def test_covariance_bound_2d_statistic():
    grid = GridSpec.box(-11.0, 11.0, 176, 2)
    fam = gaussian_location_family(grid, sigma=(1.0, 1.5))
    prob = EstimationProblem(
        fam=fam,
        statistic=lambda coords: np.stack(coords),
        h=lambda theta: theta,
        h_jacobian=lambda theta: np.eye(2),
        g=fam.at((0.0, 0.0)),
        pair=PAIR22,
        m_dim=2,
    )
    rep = covariance_bound_check(prob, (0.0, 0.0), n_samples=100_000, seed=0)
    assert rep.bound[0, 0] == pytest.approx(1.0, rel=1e-3)
    assert rep.bound[1, 1] == pytest.approx(1.5**2, rel=1e-3)
    assert rep.min_eig > -3.0 * rep.stderr
    assert rep.psd_margin >= 0.0


def test_statistic_shape_validation():
    grid = GridSpec.line(-10.0, 10.0, 256)
    fam = gaussian_location_family(grid, sigma=1.0)
    prob = EstimationProblem(
        fam=fam,
        statistic=lambda coords: np.stack([coords[0], coords[0]]),
        h=lambda theta: theta,
        h_jacobian=lambda theta: np.eye(1),
        g=fam.at(0.0),
        pair=PAIR22,
        m_dim=1,
    )
    with pytest.raises(ValueError):
        prob.statistic_on_grid()
