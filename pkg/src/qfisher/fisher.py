"""Generalized Fisher information of parametric families on grids.

The central object is the score-like field grad_theta f / g averaged against
a reference density g.  Three views are provided: the beta-power p-norm
functional, its realization as the small-step limit of chi^beta divergences,
and the (beta, q) form driven by a single density via its escort pair.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .densities import m_q_functional
from .divergences import chi_beta_g
from .errors import NonConvergent, SupportMismatch
from .grid import GridDensity, GridSpec, dual_exponent, lp_norm

SUPPORT_REL_TOL = 1e-12
# Cells stripped from the edge of a compact support before quadrature.
EDGE_EXCLUSION_CELLS = 2


@dataclass(frozen=True)
class ParametricFamily:
    """theta -> GridDensity map, all outputs on one fixed grid.

    kind "translation" promises f(x; theta) = f0(x - theta) with theta_dim
    equal to the grid dimension, so theta-derivatives reduce to spatial ones.
    kind "generic" differentiates density_at by symmetric differences in
    theta with one Richardson pass.
    """

    density_at: Callable[[np.ndarray], GridDensity]
    theta_dim: int
    kind: str = "translation"
    fd_step: float = 1e-3

    def __post_init__(self):
        if self.kind not in ("translation", "generic"):
            raise ValueError("kind must be 'translation' or 'generic'")
        if self.theta_dim < 1:
            raise ValueError("theta_dim must be >= 1")

    def at(self, theta) -> GridDensity:
        return self.density_at(_as_theta(theta, self.theta_dim))


def _as_theta(theta, dim: int) -> np.ndarray:
    t = np.atleast_1d(np.asarray(theta, dtype=float))
    if t.shape != (dim,):
        raise ValueError(f"theta must have shape ({dim},)")
    return t


def theta_gradient(fam: ParametricFamily, theta) -> tuple[GridDensity, np.ndarray]:
    """Density at theta and d f / d theta_j, stacked over components."""
    t = _as_theta(theta, fam.theta_dim)
    d = fam.at(t)
    if fam.kind == "translation":
        if fam.theta_dim != d.grid.dims:
            raise ValueError("translation family needs theta_dim == grid dims")
        grads = np.stack([-a for a in d.spatial_gradient()])
        return d, grads
    comps = []
    for j in range(fam.theta_dim):
        e = np.zeros(fam.theta_dim)
        e[j] = 1.0
        h = fam.fd_step * max(1.0, abs(t[j]))

        def diff(step):
            up = fam.at(t + step * e).values
            dn = fam.at(t - step * e).values
            return (up - dn) / (2.0 * step)

        d1, d2 = diff(h), diff(h / 2.0)
        comps.append((4.0 * d2 - d1) / 3.0)
    return d, np.stack(comps)


@dataclass(frozen=True)
class ScoreField:
    """Components of grad_theta f / g on the grid (zero where both vanish)."""

    grid: GridSpec
    components: np.ndarray  # shape (theta_dim, *grid.shape)


def score_field(fam: ParametricFamily, g: GridDensity, theta) -> ScoreField:
    d, grads = theta_gradient(fam, theta)
    if g.grid != d.grid:
        raise ValueError("g must live on the family grid")
    gv = g.values
    tol = SUPPORT_REL_TOL * float(gv.max())
    mask = gv > tol
    out = np.zeros_like(grads)
    for j in range(grads.shape[0]):
        gj = grads[j]
        gmax = float(np.abs(gj).max())
        # rounding-scale tails below the mask are fine; O(1) overhang is not
        if gmax > 0.0 and bool(np.any(~mask & (np.abs(gj) > 1e-6 * gmax))):
            raise SupportMismatch("theta-gradient is nonzero where g vanishes")
        out[j, mask] = gj[mask] / gv[mask]
    return ScoreField(grid=g.grid, components=out)


def _masked_power_expectation(num_norm: np.ndarray, g: GridDensity, beta: float) -> float:
    """E_g[(num_norm/g)^beta] computed as integral of num_norm^beta * g^(1-beta).

    Nodes with g below the support floor are excluded; clamping g at the floor
    there UNDER-estimates their contribution, so if even the clamped total is
    material relative to the masked value the expectation is divergent in the
    continuum and we refuse to report a number.
    """
    gv = g.values
    tol = max(SUPPORT_REL_TOL * float(gv.max()), 1e-300)
    mask = (gv > tol) & (num_norm > 0.0)
    integrand = np.zeros_like(gv)
    integrand[mask] = num_norm[mask] ** beta * gv[mask] ** (1.0 - beta)
    value = g.integral(integrand)
    off = (gv <= tol) & (num_norm > 0.0)
    if bool(np.any(off)):
        leaked = g.integral(np.where(off, num_norm**beta * tol ** (1.0 - beta), 0.0))
        if leaked > 1e-6 * max(value, 1e-300):
            raise SupportMismatch("gradient field carries weight where g vanishes")
    return value


def generalized_fisher(
    fam: ParametricFamily, g: GridDensity, theta, beta: float, norm_p: float = 2.0
) -> float:
    """I_beta[f|g; theta] = E_g[ ||grad_theta f / g||_p^beta ]."""
    if not beta > 1.0:
        raise ValueError("beta must exceed 1")
    d, grads = theta_gradient(fam, theta)
    if g.grid != d.grid:
        raise ValueError("g must live on the family grid")
    return _masked_power_expectation(lp_norm(list(grads), norm_p), g, beta)


def generalized_fisher_components(
    fam: ParametricFamily, g: GridDensity, theta, beta: float
) -> np.ndarray:
    """Per-component E_g[|d_j f / g|^beta]; sums to the p = beta functional."""
    if not beta > 1.0:
        raise ValueError("beta must exceed 1")
    d, grads = theta_gradient(fam, theta)
    if g.grid != d.grid:
        raise ValueError("g must live on the family grid")
    return np.array(
        [_masked_power_expectation(np.abs(grads[j]), g, beta) for j in range(grads.shape[0])]
    )


@dataclass(frozen=True)
class LimitReport:
    """Divergence-ratio sequences and their extrapolated limits per component."""

    beta: float
    steps: tuple[float, ...]
    ratios: np.ndarray  # shape (theta_dim, len(steps))
    limits: np.ndarray  # shape (theta_dim,)
    converged: bool

    @property
    def limit(self) -> float:
        return float(self.limits.sum())


def _extrapolate_to_zero(u: np.ndarray, v: np.ndarray) -> float:
    """Value at 0 of the interpolating polynomial through (u_k, v_k)."""
    n = len(u)
    t = list(map(float, v))
    for level in range(1, n):
        for i in range(n - level):
            t[i] = (u[i + level] * t[i] - u[i] * t[i + 1]) / (u[i + level] - u[i])
    return t[0]


def chi2_limit_check(
    fam: ParametricFamily,
    g: GridDensity,
    theta,
    beta: float,
    steps=(0.2, 0.1, 0.05),
    cauchy_tol: float = 1e-2,
) -> LimitReport:
    """Realize the Fisher functional as lim chi_g^beta(f_{theta+t}, f_theta)/|t|^beta.

    The +t and -t one-sided ratios are averaged, which makes the result an
    even function of the step for every family and cancels odd-order error
    terms; extrapolation to t = 0 is polynomial in t^2.
    """
    t0 = _as_theta(theta, fam.theta_dim)
    steps = tuple(float(s) for s in steps)
    if len(steps) < 2 or any(s <= 0.0 for s in steps):
        raise ValueError("need at least two positive steps")
    if any(b >= a for a, b in zip(steps, steps[1:])):
        raise ValueError("steps must be strictly decreasing")
    f0 = fam.at(t0)
    ratios = np.zeros((fam.theta_dim, len(steps)))
    limits = np.zeros(fam.theta_dim)
    converged = True
    for j in range(fam.theta_dim):
        e = np.zeros(fam.theta_dim)
        e[j] = 1.0
        for k, s in enumerate(steps):
            up = chi_beta_g(fam.at(t0 + s * e), f0, g, beta).value
            dn = chi_beta_g(fam.at(t0 - s * e), f0, g, beta).value
            ratios[j, k] = 0.5 * (up + dn) / s**beta
        seq = ratios[j]
        scale = max(abs(seq[-1]), 1e-300)
        if abs(seq[-1] - seq[-2]) > cauchy_tol * scale:
            raise NonConvergent(
                f"component {j}: ratio sequence is not Cauchy at {cauchy_tol:g} "
                f"(last change {abs(seq[-1] - seq[-2]) / scale:.2e} relative)"
            )
        limits[j] = _extrapolate_to_zero(np.asarray(steps) ** 2, seq)
    return LimitReport(
        beta=float(beta), steps=steps, ratios=ratios, limits=limits, converged=converged
    )


def _erode_support(mask: np.ndarray, iterations: int) -> np.ndarray:
    """Shrink the support mask; cells beyond the domain edge count as inside."""
    m = mask
    for _ in range(iterations):
        p = np.pad(m, 1, mode="constant", constant_values=True)
        center = tuple(slice(1, -1) for _ in range(m.ndim))
        out = m.copy()
        for ax in range(m.ndim):
            lo = list(center)
            hi = list(center)
            lo[ax] = slice(0, -2)
            hi[ax] = slice(2, None)
            out = out & p[tuple(lo)] & p[tuple(hi)]
        m = out
    return m


def q_fisher(g: GridDensity, beta: float, q: float, norm_p: float = 2.0) -> float:
    """I_{beta,q}[g] = (q/M_q)^beta E_g[ g^{beta(q-1)} ||grad ln g||_*^beta ].

    The integrand is evaluated as ||grad g||_*^beta g^{beta(q-1)+1-beta},
    which stays bounded at compact-support edges; a 2-cell layer at the
    support boundary is excluded to keep one-sided kinks out of the sum.
    """
    if not beta > 1.0:
        raise ValueError("beta must exceed 1")
    if not (q > 0.0 and np.isfinite(q)):
        raise ValueError("q must be a positive real")
    pstar = dual_exponent(norm_p)
    grads = g.spatial_gradient()
    gnorm = lp_norm(grads, pstar)
    gv = g.values
    mask = gv > SUPPORT_REL_TOL * float(gv.max())
    if not np.all(mask):
        mask = _erode_support(mask, EDGE_EXCLUSION_CELLS)
    mask = mask & (gnorm > 0.0)
    expo = beta * (q - 1.0) + 1.0 - beta
    integrand = np.zeros_like(gv)
    integrand[mask] = gnorm[mask] ** beta * gv[mask] ** expo
    mq = m_q_functional(g, q)
    return (q / mq) ** beta * g.integral(integrand)


@dataclass(frozen=True)
class FisherMatrix:
    """Symmetric PSD matrix E_g[psi psi^T] with psi = grad_theta f / g."""

    entries: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.entries, dtype=float)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError("entries must be a square matrix")
        if not np.allclose(a, a.T, rtol=0.0, atol=1e-10 * max(1.0, float(np.abs(a).max()))):
            raise ValueError("entries must be symmetric")
        a = 0.5 * (a + a.T)
        eigmin = float(np.linalg.eigvalsh(a).min())
        if eigmin < -1e-10 * max(1.0, float(np.abs(a).max())):
            raise ValueError(f"matrix has negative eigenvalue {eigmin:.3e}")
        a.setflags(write=False)
        object.__setattr__(self, "entries", a)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]


def _matrix_from_parts(grads: np.ndarray, gv: np.ndarray, weights: np.ndarray) -> np.ndarray:
    tol = max(SUPPORT_REL_TOL * float(gv.max()), 1e-300)
    mask = gv > tol
    k = grads.shape[0]
    m = np.zeros((k, k))
    for i in range(k):
        gi = grads[i]
        for j in range(i, k):
            integrand = np.zeros_like(gv)
            integrand[mask] = gi[mask] * grads[j][mask] / gv[mask]
            m[i, j] = m[j, i] = float((weights * integrand).sum())
    # clamped-floor lower bound on the excluded diagonal contributions; the
    # off-diagonal leak is Cauchy-Schwarz dominated by the diagonals
    for i in range(k):
        off = ~mask & (grads[i] != 0.0)
        if bool(np.any(off)):
            leaked = float((weights * np.where(off, grads[i] ** 2 / tol, 0.0)).sum())
            if leaked > 1e-6 * max(m[i, i], 1e-300):
                raise SupportMismatch("theta-gradient carries weight where g vanishes")
    return m


def fisher_matrix(fam: ParametricFamily, g: GridDensity, theta) -> FisherMatrix:
    """Matrix form at beta = 2: entries integral of (d_i f)(d_j f)/g."""
    d, grads = theta_gradient(fam, theta)
    if g.grid != d.grid:
        raise ValueError("g must live on the family grid")
    m = _matrix_from_parts(grads, g.values, g.grid.trap_weights())
    return FisherMatrix(m)


def fisher_matrix_data_processing(
    fam: ParametricFamily, g: GridDensity, theta, factor: int
) -> tuple[FisherMatrix, FisherMatrix, float]:
    """Fisher matrices before/after block coarse-graining and the PSD margin.

    The coarse family gradient is the block mean of the fine gradient (the
    coarse map is linear in f), so the matrix ordering is structural rather
    than numerical luck.
    """
    from .densities import block_average, coarse_grain, coarse_grid

    d, grads = theta_gradient(fam, theta)
    if g.grid != d.grid:
        raise ValueError("g must live on the family grid")
    before = fisher_matrix(fam, g, theta)
    g_c = coarse_grain(g, factor)
    grads_c = np.stack([block_average(grads[j], factor) for j in range(grads.shape[0])])
    after_entries = _matrix_from_parts(
        grads_c, g_c.values, coarse_grid(g.grid, factor).trap_weights()
    )
    after = FisherMatrix(after_entries)
    diff = before.entries - after.entries
    psd_margin = float(np.linalg.eigvalsh(0.5 * (diff + diff.T)).min())
    return before, after, psd_margin


# -- common family constructors ----------------------------------------------


def gaussian_location_family(grid: GridSpec, sigma=1.0) -> ParametricFamily:
    """Translation family of a (diagonal) normal with fixed scale."""
    from .zoo import gaussian_density

    def build(theta: np.ndarray) -> GridDensity:
        return gaussian_density(grid, mean=theta, sigma=sigma)

    return ParametricFamily(density_at=build, theta_dim=grid.dims, kind="translation")


def laplace_location_family(grid: GridSpec, eps: float = 0.005) -> ParametricFamily:
    from .zoo import laplace_smoothed_density

    def build(theta: np.ndarray) -> GridDensity:
        return laplace_smoothed_density(grid, theta=float(theta[0]), eps=eps)

    return ParametricFamily(density_at=build, theta_dim=1, kind="translation")


def q_gaussian_location_family(grid: GridSpec, q: float, alpha: float, gamma: float) -> ParametricFamily:
    """Translation family of a 1D generalized Gaussian (use q < 1 to keep full support)."""
    from .densities import QGaussianParams, q_exponential_shape

    params = QGaussianParams(q=q, alpha=alpha, gamma=gamma, dims=grid.dims)

    def build(theta: np.ndarray) -> GridDensity:
        mesh = grid.mesh()
        r = lp_norm([x - t for x, t in zip(mesh, theta)], params.norm_p)
        vals = q_exponential_shape(params, r)
        return GridDensity.from_values(grid, vals, normalize=True, check_boundary=False)

    return ParametricFamily(density_at=build, theta_dim=grid.dims, kind="translation")


def gaussian_scale_family(grid: GridSpec) -> ParametricFamily:
    """N(0, theta^2) as a generic-kind family (theta differentiation by FD)."""
    from .zoo import gaussian_density

    def build(theta: np.ndarray) -> GridDensity:
        return gaussian_density(grid, mean=0.0, sigma=float(theta[0]))

    return ParametricFamily(density_at=build, theta_dim=1, kind="generic")
