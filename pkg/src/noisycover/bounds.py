"""Closed-form upper bounds on ln of the uniform covering number.

Five calculators share one query type. All of them bound
ln N_U(eps, F_gamma, m, ||.||_2^{l2}) for the class of T-layer sigmoid
networks composed with the margin-gamma ramp loss:

  ours        noise-composition bound for noisy networks (no weight norms)
  norm_based  incoming-l1-norm product bound
  pdim        pseudo-dimension counting bound
  lipschitz   weight-norm Lipschitz bound
  spectral    spectral-norm / (2,1)-norm product bound

Every product of factors is accumulated as a sum of logarithms; sigma and
the sample count enter only through their logs, so queries with sigma far
below the double underflow threshold (passed as ln_sigma) and replicated
sample counts beyond 1e308 (passed as ln m) evaluate exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from .mlp import NetworkArch
from .norms import ArchQuantifiers

METHODS = ("ours", "norm_based", "pdim", "lipschitz", "spectral")

_LN_MAX_DOUBLE = math.log(1.7976931348623157e308)


class BoundError(Exception):
    """Base class for bound-evaluation failures."""


class BoundPreconditionError(BoundError):
    """A precondition of the chosen formula is violated."""


class BoundOverflowError(BoundError):
    """ln of the covering number itself exceeds the double range."""

    def __init__(self, method: str, log10_ln_n: float):
        self.method = method
        self.log10_ln_n = log10_ln_n
        super().__init__(
            f"{method}: bound astronomically vacuous, "
            f"log10(ln N) = {log10_ln_n:.3f} exceeds double range"
        )


@dataclass(frozen=True)
class BoundQuery:
    method: str
    epsilon: float
    m: float
    gamma: float
    arch: NetworkArch
    quant: ArchQuantifiers

    def __post_init__(self):
        if self.method not in METHODS and not self.method.startswith("const:"):
            raise ValueError(f"unknown method {self.method!r}")
        if self.epsilon <= 0:
            raise ValueError("epsilon must be positive")
        if self.m < 1:
            raise ValueError("m must be >= 1")
        if self.gamma <= 0:
            raise ValueError("gamma must be positive")


@dataclass(frozen=True)
class LnCover:
    ln_n: float
    query: BoundQuery


def _check_eps(eps: float):
    if not eps > 0 or not math.isfinite(eps):
        raise BoundPreconditionError(f"epsilon must be positive and finite, got {eps}")


def _exp_guarded(ln_value: float, method: str) -> float:
    if ln_value > _LN_MAX_DOUBLE:
        raise BoundOverflowError(method, ln_value / math.log(10.0))
    return math.exp(ln_value)


# --- noise-composition bound ------------------------------------------------


def _ours_plain(dims: tuple[int, ...], eps: float, ln_sigma: float, ln_m: float) -> float:
    """Composed noisy-network bound in its un-margined form.

    Per inner layer i >= 2 the factor is
        30 (T sqrt(pT))^{3/2} p_{i-1}^{5/2}
          sqrt(ln((5 T sqrt(pT) p_{i-1} - eps sigma) / (eps sigma)))
          / (eps^{3/2} sigma^2) * ln(5 T p_{i-1} sqrt(pT) / (eps sigma))
    weighted by p_i * p_{i-1}; the first layer contributes
        d p_1 ln(T e m sqrt(pT) / (2 eps sigma)).
    """
    _check_eps(eps)
    d, *p = dims
    t = len(p)
    if t < 2:
        raise BoundPreconditionError("noise-composition bound needs depth >= 2")
    if not math.isfinite(ln_sigma):
        raise BoundPreconditionError("sigma must be positive (ln_sigma finite)")
    p_t = p[-1]
    total = 0.0
    for i in range(1, t):  # layers 2..T
        p_prev = p[i - 1]
        # ln of the ratio r = 5 T sqrt(pT) p_{i-1} / (eps sigma)
        ln_r = math.log(5.0 * t * math.sqrt(p_t) * p_prev) - math.log(eps) - ln_sigma
        if ln_r <= math.log(2.0):
            raise BoundPreconditionError(
                f"layer {i + 1}: log domain violated, need "
                f"5 T sqrt(pT) p_{{i-1}} > 2 eps sigma (ln ratio {ln_r:.3g})"
            )
        # ln(r - 1), guarded against exp underflow for huge r
        ln_r_minus_1 = ln_r + math.log1p(-math.exp(-ln_r)) if ln_r < 700 else ln_r
        ln_factor = (
            math.log(30.0)
            + 1.5 * math.log(t * math.sqrt(p_t))
            + 2.5 * math.log(p_prev)
            + 0.5 * math.log(ln_r_minus_1)
            - 1.5 * math.log(eps)
            - 2.0 * ln_sigma
            + math.log(ln_r)
        )
        total += p[i] * p_prev * ln_factor
    first = d * p[0] * (
        math.log(t * math.e * math.sqrt(p_t) / 2.0) + ln_m - math.log(eps) - ln_sigma
    )
    return total + first


def _ours_ln(
    dims, eps: float, gamma: float, ln_sigma: float, ln_m: float, margin_adjusted: bool
) -> float:
    # the ramp-composed form is the plain form evaluated at gamma*eps/2
    return _ours_plain(dims, gamma * eps / 2.0 if margin_adjusted else eps, ln_sigma, ln_m)


# --- norm-based bound -------------------------------------------------------


def _norm_based_ln(d: int, p_t: int, t: int, v: float, eps: float, gamma: float) -> float:
    """log2 N <= (pT/2) (2 sqrt(pT)/(gamma eps))^{2T} (2V)^{T(T+1)} log2(2d+2)."""
    _check_eps(eps)
    if v <= 0:
        raise BoundPreconditionError("norm-based bound needs V > 0")
    ln_ln_n = (
        math.log(p_t / 2.0)
        + 2.0 * t * (math.log(2.0 * math.sqrt(p_t)) - math.log(gamma * eps))
        + t * (t + 1) * math.log(2.0 * v)
        + math.log(math.log2(2.0 * d + 2.0))
        + math.log(math.log(2.0))
    )
    return _exp_guarded(ln_ln_n, "norm_based")


# --- pseudo-dimension bound -------------------------------------------------


def pdim_capacity(w_rvo: int, r_rvo: int) -> float:
    """Pseudo-dimension upper bound P for one real-valued output network."""
    a = (w_rvo + 2.0) * r_rvo
    return a * a + 11.0 * a * math.log2(18.0 * (w_rvo + 2.0) * r_rvo**2)


def _pdim_ln(
    p_t: int, w_rvo: int | None, r_rvo: int | None, eps: float, gamma: float, ln_m: float
) -> float:
    _check_eps(eps)
    if w_rvo is None or r_rvo is None:
        raise BoundPreconditionError("pseudo-dim bound needs depth >= 2")
    cap = pdim_capacity(w_rvo, r_rvo)
    if ln_m <= math.log(cap):
        err = BoundPreconditionError(
            f"pseudo-dim bound needs m > {cap:.6g} (capacity term)"
        )
        err.required_m = cap
        raise err
    return p_t * cap * (
        math.log(2.0 * math.sqrt(p_t) * math.e) + ln_m - math.log(cap) - math.log(gamma * eps)
    )


# --- Lipschitzness bound ----------------------------------------------------


def _lipschitz_ln(
    p_t: int, w_rvo: int | None, t: int, v: float, eps: float, gamma: float, ln_m: float
) -> float:
    _check_eps(eps)
    if w_rvo is None:
        raise BoundPreconditionError("Lipschitz bound needs depth >= 2")
    if v <= 1.0:
        raise BoundPreconditionError("Lipschitz bound undefined for V <= 1")
    return p_t * w_rvo * (
        math.log(4.0 * math.e * math.sqrt(p_t) * w_rvo)
        + ln_m
        + t * math.log(v)
        - math.log(gamma * eps)
        - math.log(v - 1.0)
    )


# --- spectral bound ---------------------------------------------------------


def _spectral_ln(
    w_max: int, s: tuple[float, ...], b: tuple[float, ...], x_frob: float,
    eps: float, gamma: float,
) -> float:
    """4 ||X||_F^2 ln(2 w^2) / (gamma eps)^2 * prod s_i^2 * (sum (b_i/s_i)^{2/3})^3."""
    _check_eps(eps)
    ratio_sum = 0.0
    for i, (s_i, b_i) in enumerate(zip(s, b)):
        if s_i < 0 or b_i < 0:
            raise BoundPreconditionError(f"layer {i + 1}: negative norm")
        if s_i == 0.0:
            if b_i > 0.0:
                raise BoundPreconditionError(
                    f"layer {i + 1}: zero spectral norm with nonzero (2,1) norm"
                )
            return 0.0  # zero layer collapses the class to a constant
        ratio_sum += (b_i / s_i) ** (2.0 / 3.0)
    if x_frob == 0.0 or ratio_sum == 0.0:
        return 0.0
    ln_value = (
        math.log(4.0)
        + 2.0 * math.log(x_frob)
        + math.log(math.log(2.0 * w_max**2))
        - 2.0 * math.log(gamma * eps)
        + 2.0 * sum(math.log(s_i) for s_i in s)
        + 3.0 * math.log(ratio_sum)
    )
    return _exp_guarded(ln_value, "spectral")


# --- public API ---------------------------------------------------------------


def ln_cover_fn(
    method: str,
    arch: NetworkArch,
    quant: ArchQuantifiers,
    gamma: float,
    margin_adjusted: bool = True,
    ln_sigma: float | None = None,
) -> Callable[[float, float], float]:
    """Build f(eps, ln_m) -> ln N for one method.

    ln_sigma overrides ln(arch.sigma); this is how noise scales below the
    double underflow threshold are queried. The synthetic method tag
    "const:<c>" yields a constant function, used for solver self-tests.
    """
    if method.startswith("const:"):
        c = float(method.split(":", 1)[1])
        if c < 0:
            raise ValueError("constant ln N must be nonnegative")
        return lambda eps, ln_m: c
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}")

    d = arch.input_dim
    p_t = arch.num_classes
    t = arch.depth
    if method == "ours":
        if ln_sigma is None:
            if arch.sigma <= 0:
                raise BoundPreconditionError("noise-composition bound needs sigma > 0")
            ln_sigma = math.log(arch.sigma)
        dims = arch.dims
        return lambda eps, ln_m: _ours_ln(dims, eps, gamma, ln_sigma, ln_m, margin_adjusted)
    if method == "norm_based":
        return lambda eps, ln_m: _norm_based_ln(d, p_t, t, quant.V, eps, gamma)
    if method == "pdim":
        return lambda eps, ln_m: _pdim_ln(p_t, quant.W_rvo, quant.r_rvo, eps, gamma, ln_m)
    if method == "lipschitz":
        return lambda eps, ln_m: _lipschitz_ln(p_t, quant.W_rvo, t, quant.V, eps, gamma, ln_m)
    # spectral
    return lambda eps, ln_m: _spectral_ln(quant.w, quant.s, quant.b, quant.x_frob, eps, gamma)


def ln_cover(query: BoundQuery, margin_adjusted: bool = True) -> LnCover:
    """Evaluate one bound at a query; raises typed BoundError subclasses."""
    fn = ln_cover_fn(query.method, query.arch, query.quant, query.gamma, margin_adjusted)
    ln_n = fn(query.epsilon, math.log(query.m))
    return LnCover(ln_n=ln_n, query=query)


def ln_cover_ours(query: BoundQuery, margin_adjusted: bool = True) -> LnCover:
    return ln_cover(_with_method(query, "ours"), margin_adjusted)


def ln_cover_norm_based(query: BoundQuery) -> LnCover:
    return ln_cover(_with_method(query, "norm_based"))


def ln_cover_pdim(query: BoundQuery) -> LnCover:
    return ln_cover(_with_method(query, "pdim"))


def ln_cover_lipschitz(query: BoundQuery) -> LnCover:
    return ln_cover(_with_method(query, "lipschitz"))


def ln_cover_spectral(query: BoundQuery) -> LnCover:
    return ln_cover(_with_method(query, "spectral"))


def _with_method(query: BoundQuery, method: str) -> BoundQuery:
    if query.method == method:
        return query
    return BoundQuery(method, query.epsilon, query.m, query.gamma, query.arch, query.quant)


def bound_report(result: LnCover) -> dict:
    """JSON-ready report row for one evaluated bound."""
    q = result.query
    return {
        "method": q.method,
        "epsilon": q.epsilon,
        "m": q.m,
        "gamma": q.gamma,
        "sigma": q.arch.sigma,
        "ln_n": result.ln_n,
        "log10_n": result.ln_n / math.log(10.0),
    }
