"""Desk-scale numerical checks of the analytic inequalities.

Everything here is an independent verification tool: closed-form or
quadrature-based total-variation computations in one dimension, the data
processing inequality on small discrete channels, Gaussian-mixture
estimates of smoothed densities, and a greedy empirical cover estimator
for restrictions of function classes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

import numpy as np

# numpy renamed trapz to trapezoid in 2.0
_trapezoid = getattr(np, "trapezoid", None) or np.trapz


def _std_normal_cdf(x: float) -> float:
    return 0.5 * (1.0 + math.erf(x / math.sqrt(2.0)))


def tv_gaussians_1d(mu1: float, mu2: float, sigma: float) -> float:
    """Exact TV distance between N(mu1, sigma^2) and N(mu2, sigma^2).

    Equals 2 Phi(|mu1 - mu2| / (2 sigma)) - 1, which never exceeds the
    linear bound |mu1 - mu2| / (2 sigma).
    """
    if sigma <= 0:
        raise ValueError("sigma must be positive")
    return 2.0 * _std_normal_cdf(abs(mu1 - mu2) / (2.0 * sigma)) - 1.0


def tv_discrete(p: np.ndarray, q: np.ndarray) -> float:
    return 0.5 * float(np.abs(np.asarray(p) - np.asarray(q)).sum())


def dpi_check(channel: np.ndarray, p: np.ndarray, q: np.ndarray) -> tuple[float, float]:
    """TV before and after pushing two distributions through a channel.

    channel is row-stochastic: channel[i, j] = P(output j | input i). The
    data processing inequality says the second value never exceeds the
    first.
    """
    channel = np.asarray(channel, dtype=float)
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    if channel.ndim != 2 or channel.shape[0] != p.shape[0] or p.shape != q.shape:
        raise ValueError("inconsistent shapes")
    if np.any(channel < 0) or not np.allclose(channel.sum(axis=1), 1.0, atol=1e-9):
        raise ValueError("channel must be row-stochastic")
    if np.any(p < 0) or np.any(q < 0) or not (
        math.isclose(p.sum(), 1.0, abs_tol=1e-9) and math.isclose(q.sum(), 1.0, abs_tol=1e-9)
    ):
        raise ValueError("p and q must be probability distributions")
    return tv_discrete(p, q), tv_discrete(p @ channel, q @ channel)


@dataclass
class Density1D:
    """Density supported on [-B, B], tabulated on a uniform grid."""

    grid: np.ndarray
    values: np.ndarray
    B: float

    def __post_init__(self):
        self.grid = np.asarray(self.grid, dtype=float)
        self.values = np.asarray(self.values, dtype=float)
        if self.grid.shape != self.values.shape or self.grid.ndim != 1:
            raise ValueError("grid and values must be matching 1-D arrays")
        if np.any(self.values < 0):
            raise ValueError("density must be nonnegative")
        steps = np.diff(self.grid)
        if not np.allclose(steps, steps[0]):
            raise ValueError("grid must be uniform")
        total = _trapezoid(self.values, self.grid)
        if abs(total - 1.0) > 1e-6:
            raise ValueError(f"density integrates to {total}, not 1")

    @property
    def step(self) -> float:
        return float(self.grid[1] - self.grid[0])

    @classmethod
    def from_callable(cls, f, B: float, n: int = 4001) -> "Density1D":
        grid = np.linspace(-B, B, n)
        vals = np.maximum(np.asarray(f(grid), dtype=float), 0.0)
        vals = vals / _trapezoid(vals, grid)
        return cls(grid, vals, B)


@dataclass(frozen=True)
class GaussianMixture1D:
    means: np.ndarray
    weights: np.ndarray
    sigma: float

    def pdf(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        z = (x[:, None] - self.means[None, :]) / self.sigma
        kern = np.exp(-0.5 * z * z) / (self.sigma * math.sqrt(2.0 * math.pi))
        return kern @ self.weights


def _gaussian_pdf(x: np.ndarray, mu: float, sigma: float) -> np.ndarray:
    z = (x - mu) / sigma
    return np.exp(-0.5 * z * z) / (sigma * math.sqrt(2.0 * math.pi))


def smooth_density(f: Density1D, sigma: float, out_grid: np.ndarray) -> np.ndarray:
    """Convolution of a tabulated density with a centered Gaussian."""
    # trapezoid weights along the f grid
    wts = np.full(f.grid.shape, f.step)
    wts[0] = wts[-1] = f.step / 2.0
    weighted = f.values * wts
    out = np.empty(out_grid.shape)
    chunk = max(1, int(2e6 / f.grid.size))  # cap the kernel matrix size
    for lo in range(0, out_grid.size, chunk):
        block = out_grid[lo : lo + chunk]
        kern = _gaussian_pdf(block[:, None] - f.grid[None, :], 0.0, sigma)
        out[lo : lo + chunk] = kern @ weighted
    return out


def gmm_estimate_1d(
    f: Density1D, sigma: float, eta: float
) -> tuple[GaussianMixture1D, float]:
    """Estimate the sigma-smoothed density by a ceil(B/eta)-component mixture.

    Cells of width 2 eta partition [-B, B]; each contributes a Gaussian at
    its center weighted by the cell's mass under f. Returns the mixture and
    the quadrature TV distance to the true smoothed density, which the
    smoothing inequality caps at 2 eta / sigma in one dimension.
    """
    if sigma <= 0:
        raise ValueError("sigma must be positive")
    if not 0 < eta < f.B:
        raise ValueError("need 0 < eta < B")
    if f.step > sigma / 50.0:
        raise ValueError(
            f"quadrature resolution insufficient: grid step {f.step:.3g} > sigma/50"
        )
    k = math.ceil(f.B / eta)
    # cell centers, clipped so every mean stays inside the support
    means = np.minimum(np.array([-f.B + (2 * j + 1) * eta for j in range(k)]), f.B)
    edges = np.array([-f.B + 2 * j * eta for j in range(k + 1)])
    edges = np.minimum(edges, f.B)

    # cell masses by trapezoid over the tabulated density
    cdf_vals = np.concatenate([[0.0], np.cumsum(0.5 * (f.values[1:] + f.values[:-1]) * f.step)])
    cell_mass = np.diff(np.interp(edges, f.grid, cdf_vals))
    weights = np.maximum(cell_mass, 0.0)
    weights = weights / weights.sum()
    mixture = GaussianMixture1D(means, weights, sigma)

    # TV between f * g and the mixture, with support truncated at B + 8 sigma
    # (tail mass beyond the truncation is < 1e-12)
    span = f.B + 8.0 * sigma
    n = max(int(2 * span / (sigma / 50.0)) + 1, 2001)
    out_grid = np.linspace(-span, span, n)
    true_smoothed = smooth_density(f, sigma, out_grid)
    est = mixture.pdf(out_grid)
    tv_error = 0.5 * float(_trapezoid(np.abs(true_smoothed - est), out_grid))
    return mixture, tv_error


# --- empirical covers ---------------------------------------------------------


def _extended_dist(u: np.ndarray, v: np.ndarray, metric: str) -> float:
    diff = np.linalg.norm(u - v, axis=-1)  # per-input euclidean distances
    if metric == "ext-sup":
        return float(diff.max())
    if metric == "ext-l2":
        return float(np.sqrt(np.mean(diff**2)))
    raise ValueError(f"unknown metric {metric!r}")


def greedy_cover(points, epsilon: float, metric: str = "ext-sup") -> int:
    """Greedy internal epsilon-net size over restriction matrices.

    Each point is an (m, p) array: one function evaluated on m inputs. The
    first point not within epsilon of an existing center becomes a center,
    so the result is deterministic in the input order and upper-bounds the
    minimal internal cover.
    """
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    pts = [np.atleast_2d(np.asarray(p, dtype=float)) for p in points]
    if not pts:
        raise ValueError("no points given")
    centers: list[np.ndarray] = []
    for p in pts:
        if all(_extended_dist(p, c, metric) > epsilon for c in centers):
            centers.append(p)
    return len(centers)


def exact_min_cover(points, epsilon: float, metric: str = "ext-sup") -> int:
    """Smallest internal epsilon-cover by exhaustive subset search.

    Only feasible for small instances; used as the ground-truth companion
    of greedy_cover.
    """
    pts = [np.atleast_2d(np.asarray(p, dtype=float)) for p in points]
    if not pts:
        raise ValueError("no points given")
    n = len(pts)
    dist = np.zeros((n, n))
    for i in range(n):
        for j in range(i + 1, n):
            dist[i, j] = dist[j, i] = _extended_dist(pts[i], pts[j], metric)
    for size in range(1, n + 1):
        for centers in combinations(range(n), size):
            if np.all(dist[:, centers].min(axis=1) <= epsilon):
                return size
    return n
