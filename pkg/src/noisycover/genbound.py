"""Entropy-integral generalization bounds and the NVAC solver.

Both consumers take ln-covering-number callables produced by
bounds.ln_cover_fn, so any of the five methods (or a synthetic constant)
plugs in unchanged.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .bounds import BoundPreconditionError, ln_cover_fn, pdim_capacity
from .mlp import NetworkArch
from .norms import ArchQuantifiers

LOG10_M_CEILING = 400.0  # search ceiling for the replicated sample count
_LN10 = math.log(10.0)
_LN_MAX = math.log(1.7976931348623157e308)


class NvacError(ValueError):
    pass


@dataclass(frozen=True)
class DudleyResult:
    value: float
    best_epsilon: float
    integral_value: float


@dataclass(frozen=True)
class GbResult:
    gb_value: float
    best_epsilon: float
    delta: float
    integral_value: float


@dataclass(frozen=True)
class NvacResult:
    method: str
    epsilon_used: float
    ramp_loss_input: float
    n_star: float  # replication count; inf when beyond double range
    n_star_log10: float
    nvac: float | None  # m * n_star when representable as a double
    nvac_log10: float
    converged: bool


def default_eps_grid(n: int = 200, lo: float = 1e-4, hi: float = 0.5) -> np.ndarray:
    return np.geomspace(lo, hi, n)


def _sqrt_entropy(lncover: Callable[[float], float], grid: np.ndarray) -> np.ndarray:
    vals = np.array([lncover(float(nu)) for nu in grid])
    if np.any(vals < -1e-9):
        raise ValueError("ln covering number must be nonnegative")
    return np.sqrt(np.maximum(vals, 0.0))


def dudley_integral(
    lncover: Callable[[float], float],
    m: float,
    eps_grid: np.ndarray | None = None,
) -> DudleyResult:
    """Minimize 4 eps + (12/sqrt(m)) * int_eps^{1/2} sqrt(ln N(nu)) dnu.

    lncover maps nu -> ln N(nu, m) with m already fixed. The integral is a
    trapezoid rule on a geometric grid (default 200 points in [1e-4, 1/2])
    and the infimum is taken over the same grid points.
    """
    grid = default_eps_grid() if eps_grid is None else np.asarray(eps_grid, dtype=float)
    integrand = _sqrt_entropy(lncover, grid)
    # cumulative trapezoid of the tail integral int_{grid[j]}^{grid[-1]}
    seg = 0.5 * (integrand[1:] + integrand[:-1]) * np.diff(grid)
    tail = np.concatenate([np.cumsum(seg[::-1])[::-1], [0.0]])
    values = 4.0 * grid + (12.0 / math.sqrt(m)) * tail
    j = int(np.argmin(values))
    return DudleyResult(float(values[j]), float(grid[j]), float(tail[j]))


def full_gb(
    lncover: Callable[[float], float],
    m: float,
    ramp_loss: float,
    delta: float = 0.01,
    eps_grid: np.ndarray | None = None,
) -> GbResult:
    """Covering-number generalization bound at confidence 1 - delta.

    GB = 2 [4 eps + (12/sqrt(m)) int_eps^{1/2} sqrt(ln N) dnu]
         + 3 sqrt(ln(2/delta) / (2m)),
    minimized over eps. The bound on the 0-1 risk is ramp_loss + GB.
    """
    if not 0.0 < delta < 1.0:
        raise ValueError("delta must be in (0, 1)")
    if not 0.0 <= ramp_loss <= 1.0:
        raise ValueError("ramp_loss must be in [0, 1]")
    dud = dudley_integral(lncover, m, eps_grid)
    slack = 3.0 * math.sqrt(math.log(2.0 / delta) / (2.0 * m))
    return GbResult(2.0 * dud.value + slack, dud.best_epsilon, delta, dud.integral_value)


def _nvac_result(
    method: str,
    eps: float,
    ramp_loss: float,
    m: float,
    converged: bool,
    m_star: float | None = None,
    ln_m_star: float | None = None,
) -> NvacResult:
    """Package M* (the replicated count) as n* = ceil(M*/m) and NVAC = m n*.

    M* may arrive as a plain double or, beyond the double range, as ln M*.
    The ceiling is applied only while M*/m is exactly representable.
    """
    if m_star is None:
        m_star = math.exp(ln_m_star) if ln_m_star <= _LN_MAX else math.inf
    if ln_m_star is None:
        ln_m_star = math.log(m_star)

    if math.isfinite(m_star) and m_star / m < 2**53:
        n_star = max(1.0, float(math.ceil(m_star / m)))
        n_star_log10 = math.log10(n_star)
    else:
        ln_n = ln_m_star - math.log(m)
        n_star = math.exp(ln_n) if ln_n <= _LN_MAX else math.inf
        n_star_log10 = ln_n / _LN10
    nvac_log10 = math.log10(m) + n_star_log10
    nvac = m * n_star if (math.isfinite(n_star) and nvac_log10 < 308.0) else None
    return NvacResult(
        method=method,
        epsilon_used=eps,
        ramp_loss_input=ramp_loss,
        n_star=n_star,
        n_star_log10=n_star_log10,
        nvac=nvac,
        nvac_log10=nvac_log10,
        converged=converged,
    )


def solve_nvac(
    method: str,
    arch: NetworkArch,
    quant: ArchQuantifiers,
    m: float,
    gamma: float,
    ramp_loss: float,
    margin_adjusted: bool = True,
    ln_sigma: float | None = None,
) -> NvacResult:
    """Smallest replicated sample count at which the bound stops being vacuous.

    With eps = (1 - ramp_loss) / 10, find the smallest M = m * n satisfying
        (6 / sqrt(M)) sqrt(ln N(eps, M)) <= eps
    equivalently 36 ln N(eps, M) / eps^2 <= M. ln N grows at most
    logarithmically in M (or not at all), so the crossing point is unique;
    m-independent methods invert in closed form, the rest are bracketed by
    doubling and bisected in ln M to relative 1e-6. NVAC is m * ceil(M/m).
    """
    if ramp_loss < 0.0:
        raise NvacError("ramp_loss must be nonnegative")
    if ramp_loss >= 1.0:
        raise NvacError("ramp_loss >= 1: bound is vacuous already")
    if m < 1:
        raise NvacError("m must be >= 1")
    eps = (1.0 - ramp_loss) / 10.0

    if callable(method):
        fn = method
        method = getattr(method, "__name__", "custom")
    else:
        fn = ln_cover_fn(method, arch, quant, gamma, margin_adjusted, ln_sigma)
    factor = 36.0 / (eps * eps)
    ln_factor = math.log(36.0) - 2.0 * math.log(eps)

    ln_floor = math.log(m)
    if method == "pdim":
        if quant.W_rvo is None or quant.r_rvo is None:
            raise BoundPreconditionError("pseudo-dim bound needs depth >= 2")
        # the formula is only valid for M > P
        ln_floor = max(ln_floor, math.log(pdim_capacity(quant.W_rvo, quant.r_rvo)) + 1e-9)

    def excess(ln_big_m: float) -> float:
        # positive while the bound is still vacuous at M = exp(ln_big_m)
        return ln_factor + math.log(fn(eps, ln_big_m)) - ln_big_m

    ln_ceiling = LOG10_M_CEILING * _LN10

    # m-independent bounds invert in closed form
    probe = fn(eps, ln_floor)
    if not math.isfinite(probe):
        return _nvac_result(method, eps, ramp_loss, m, False, ln_m_star=ln_ceiling)
    if probe == fn(eps, ln_floor + math.log(4.0)):
        if probe == 0.0:
            return _nvac_result(method, eps, ramp_loss, m, True, m_star=float(m))
        crossing = factor * probe
        if math.isfinite(crossing):
            return _nvac_result(
                method, eps, ramp_loss, m, True, m_star=max(crossing, float(m))
            )
        return _nvac_result(
            method, eps, ramp_loss, m, True, ln_m_star=ln_factor + math.log(probe)
        )

    if excess(ln_floor) <= 0.0:
        return _nvac_result(method, eps, ramp_loss, m, True, ln_m_star=ln_floor)

    lo = ln_floor
    hi = lo
    while excess(hi) > 0.0:
        lo = hi
        hi += math.log(2.0)
        if hi > ln_ceiling:
            return _nvac_result(method, eps, ramp_loss, m, False, ln_m_star=ln_ceiling)
    while hi - lo > 1e-6:
        mid = 0.5 * (lo + hi)
        if excess(mid) > 0.0:
            lo = mid
        else:
            hi = mid
    return _nvac_result(method, eps, ramp_loss, m, True, ln_m_star=hi)
