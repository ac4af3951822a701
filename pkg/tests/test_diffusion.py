"""Nonlinear diffusion: conservation, classical limits, entropy production."""

import numpy as np
import pytest

from qfisher import (
    DiffusionState,
    GridDensity,
    GridSpec,
    UnstableStep,
    debruijn_check,
    debruijn_series,
    evolve,
    stable_dt,
    step,
    tsallis_entropy,
    zoo,
)


def _heat_state(sigma0=0.3, points=2048, half=3.0):
    grid = GridSpec.line(-half, half, points)
    return DiffusionState(
        density=zoo.gaussian_density(grid, 0.0, sigma0), t=0.0, m_exp=1.0, beta=2.0
    )


def test_state_validation():
    g1 = zoo.gaussian_density(GridSpec.line(-3.0, 3.0, 256), 0.0, 0.3)
    with pytest.raises(ValueError):
        DiffusionState(density=g1, t=0.0, m_exp=1.0, beta=1.0)
    with pytest.raises(ValueError):
        DiffusionState(density=g1, t=0.0, m_exp=0.0, beta=2.0)
    g2 = zoo.gaussian_density(GridSpec.box(-3.0, 3.0, 32, 2), 0.0, 0.3)
    with pytest.raises(ValueError):
        DiffusionState(density=g2, t=0.0, m_exp=1.0, beta=2.0)


def test_exponent_bookkeeping():
    s = DiffusionState(
        density=zoo.gaussian_density(GridSpec.line(-3.0, 3.0, 256), 0.0, 0.3),
        t=0.0,
        m_exp=1.2,
        beta=3.0,
    )
    assert s.alpha == pytest.approx(1.5)
    assert s.q == pytest.approx(1.2 + 1.0 - 0.5)


def test_step_conserves_mass_and_time():
    s = _heat_state()
    dt = stable_dt(s)
    s1 = step(s, dt)
    assert s1.t == pytest.approx(dt)
    assert s1.density.integral(s1.density.values) == pytest.approx(1.0, abs=1e-12)


def test_heat_flow_variance_growth():
    s = _heat_state(sigma0=0.3)
    out = evolve(s, 0.02)
    assert out.t == pytest.approx(0.02, abs=1e-14)
    (x,) = out.density.grid.axes()
    var = out.density.expectation(x**2) - out.density.expectation(x) ** 2
    assert var == pytest.approx(0.3**2 + 2.0 * 0.02, rel=1e-4)


def test_heat_flow_matches_gaussian_profile():
    s = _heat_state(sigma0=0.3)
    out = evolve(s, 0.02)
    sigma_t = np.sqrt(0.3**2 + 2.0 * 0.02)
    ref = zoo.gaussian_density(out.density.grid, 0.0, sigma_t)
    l1 = out.density.integral(np.abs(out.density.values - ref.values))
    assert l1 < 1e-4


def test_entropy_never_decreases():
    for m_exp, beta in [(1.0, 2.0), (2.0, 2.0), (1.0, 3.0), (1.5, 2.5)]:
        s = DiffusionState(
            density=zoo.mixture_density(
                GridSpec.line(-3.0, 3.0, 1024), (-0.6, 0.5), (0.18, 0.22), (0.5, 0.5)
            ),
            t=0.0,
            m_exp=m_exp,
            beta=beta,
        )
        q = s.q
        last = tsallis_entropy(s.density, q)
        for _ in range(40):
            s = step(s, stable_dt(s))
            cur = tsallis_entropy(s.density, q)
            assert cur >= last - 1e-12 * max(1.0, abs(last))
            last = cur


def test_unstable_dt_raises():
    # one explicit step goes negative once dt exceeds f/|f''| at the peak
    s = _heat_state(points=512)
    with pytest.raises(UnstableStep):
        step(s, 5000.0 * stable_dt(s))


def test_flat_state_has_no_stable_scale():
    grid = GridSpec.line(-1.0, 1.0, 128)
    flat = GridDensity.from_values(grid, np.ones(128), check_boundary=False)
    s = DiffusionState(density=flat, t=0.0, m_exp=1.0, beta=3.0)
    with pytest.raises(UnstableStep):
        stable_dt(s)
    # for beta = 2 the diffusivity does not involve the gradient, so a flat
    # state still has a step size and stepping it is a no-op
    s2 = DiffusionState(density=flat, t=0.0, m_exp=1.0, beta=2.0)
    dt = stable_dt(s2)
    assert np.isfinite(dt) and dt > 0.0
    np.testing.assert_array_equal(step(s2, dt).density.values, flat.values)


def test_porous_medium_self_similar_spreading():
    # m = 2, beta = 2 is the porous medium flow; the compact self-similar
    # profile c - x^2/(12 t^(2/3)) scaled by t^(-1/3) propagates in shape
    c = (3.0 / (4.0 * np.sqrt(12.0))) ** (2.0 / 3.0)

    def profile(grid, t):
        (x,) = grid.axes()
        vals = np.maximum(c - x**2 / (12.0 * t ** (2.0 / 3.0)), 0.0) / t ** (1.0 / 3.0)
        return GridDensity.from_values(grid, vals, check_boundary=False)

    grid = GridSpec.line(-2.0, 2.0, 1024)
    t0, t1 = 0.05, 0.15
    s = DiffusionState(density=profile(grid, t0), t=t0, m_exp=2.0, beta=2.0)
    out = evolve(s, t1)
    ref = profile(grid, t1)
    l1 = out.density.integral(np.abs(out.density.values - ref.values))
    assert l1 < 2e-2


def test_debruijn_heat_case_is_sharp():
    # m = 1, beta = 2 pairs with q = 1: dS/dt equals the Fisher information,
    # which for the evolving Gaussian is 1/sigma^2(t)
    sigma0 = 0.2
    s = _heat_state(sigma0=sigma0, points=4096, half=2.0)
    s = evolve(s, 0.004)
    rep = debruijn_check(s)
    assert rep.rel_err < 1e-6
    sigma_mid_sq = sigma0**2 + 2.0 * rep.t_mid
    assert rep.rhs == pytest.approx(1.0 / sigma_mid_sq, rel=1e-6)
    assert rep.excluded_mass < 1e-12


@pytest.mark.parametrize("m_exp,beta", [(1.0, 2.0), (2.0, 2.0), (1.5, 2.5), (1.0, 3.0)])
def test_debruijn_identity_along_flow(m_exp, beta):
    grid = GridSpec.line(-2.0, 2.0, 2048)
    s = DiffusionState(
        density=zoo.gaussian_density(grid, 0.0, 0.2), t=0.0, m_exp=m_exp, beta=beta
    )
    reports = debruijn_series(s, t_final=0.008, n_checks=3, t_burn=0.002)
    assert len(reports) == 3
    assert all(b.t_mid > a.t_mid for a, b in zip(reports, reports[1:]))
    worst = max(r.rel_err for r in reports)
    assert worst < 1e-3


def test_debruijn_rel_err_shrinks_under_refinement():
    errs = []
    for points in (1024, 2048, 4096):
        s = _heat_state(sigma0=0.25, points=points, half=2.0)
        s = DiffusionState(density=s.density, t=0.0, m_exp=1.5, beta=2.0)
        s = evolve(s, 0.004)
        errs.append(debruijn_check(s).rel_err)
    assert errs[1] < errs[0]
    assert errs[2] < errs[1]


def test_series_validates_n_checks():
    s = _heat_state(points=512)
    with pytest.raises(ValueError):
        debruijn_series(s, t_final=0.01, n_checks=0)
