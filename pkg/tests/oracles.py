"""Independent arbitrary-precision evaluations of the five bound formulas.

These re-derive each displayed formula literally with mpmath at 60 digits,
with no log-space rearrangement, so they share nothing with the package's
evaluation path beyond the formula itself.
"""

import mpmath as mp

mp.mp.dps = 60


def ours_ramp_ln(dims, eps, gamma, sigma, m):
    """Ramp-composed noise-composition bound, term by term."""
    p = [mp.mpf(x) for x in dims[1:]]
    d = mp.mpf(dims[0])
    t = len(p)
    p_t = p[-1]
    eps, gamma, sigma, m = map(mp.mpf, (eps, gamma, sigma, m))
    total = mp.mpf(0)
    for i in range(1, t):
        pp = p[i - 1]
        inner = ((10 / gamma) * t * mp.sqrt(p_t) * pp - eps * sigma) / (eps * sigma)
        factor = (
            30
            * (2 * t * mp.sqrt(p_t)) ** mp.mpf(1.5)
            * pp ** mp.mpf(2.5)
            * mp.sqrt(mp.log(inner))
            / ((gamma * eps) ** mp.mpf(1.5) * sigma**2)
            * mp.log(10 * t * pp * mp.sqrt(p_t) / (gamma * eps * sigma))
        )
        total += p[i] * pp * mp.log(factor)
    total += d * p[0] * mp.log(t * mp.e * m * mp.sqrt(p_t) / (gamma * eps * sigma))
    return total


def ours_plain_ln(dims, eps, sigma, m):
    """Un-margined noise-composition bound."""
    p = [mp.mpf(x) for x in dims[1:]]
    d = mp.mpf(dims[0])
    t = len(p)
    p_t = p[-1]
    eps, sigma, m = map(mp.mpf, (eps, sigma, m))
    total = mp.mpf(0)
    for i in range(1, t):
        pp = p[i - 1]
        inner = (5 * t * mp.sqrt(p_t) * pp - eps * sigma) / (eps * sigma)
        factor = (
            30
            * (t * mp.sqrt(p_t)) ** mp.mpf(1.5)
            * pp ** mp.mpf(2.5)
            * mp.sqrt(mp.log(inner))
            / (eps ** mp.mpf(1.5) * sigma**2)
            * mp.log(5 * t * pp * mp.sqrt(p_t) / (eps * sigma))
        )
        total += p[i] * pp * mp.log(factor)
    total += d * p[0] * mp.log(t * mp.e * m * mp.sqrt(p_t) / (2 * eps * sigma))
    return total


def norm_based_ln(d, p_t, t, v, eps, gamma):
    d, p_t, t, v, eps, gamma = map(mp.mpf, (d, p_t, t, v, eps, gamma))
    log2_n = (
        p_t / 2
        * (2 * mp.sqrt(p_t) / (gamma * eps)) ** (2 * t)
        * (2 * v) ** (t * (t + 1))
        * mp.log(2 * d + 2, 2)
    )
    return log2_n * mp.log(2)


def pdim_capacity(w_rvo, r_rvo):
    w_rvo, r_rvo = mp.mpf(w_rvo), mp.mpf(r_rvo)
    a = (w_rvo + 2) * r_rvo
    return a**2 + 11 * a * mp.log(18 * (w_rvo + 2) * r_rvo**2, 2)


def pdim_ln(p_t, w_rvo, r_rvo, eps, gamma, m):
    p_t, eps, gamma, m = map(mp.mpf, (p_t, eps, gamma, m))
    cap = pdim_capacity(w_rvo, r_rvo)
    return p_t * cap * mp.log(2 * mp.sqrt(p_t) * mp.e * m / (cap * gamma * eps))


def lipschitz_ln(p_t, w_rvo, t, v, eps, gamma, m):
    p_t, w_rvo, t, v, eps, gamma, m = map(mp.mpf, (p_t, w_rvo, t, v, eps, gamma, m))
    return p_t * w_rvo * mp.log(
        4 * mp.e * m * mp.sqrt(p_t) * w_rvo * v**t / (gamma * eps * (v - 1))
    )


def spectral_ln(w_max, s, b, x_frob, eps, gamma):
    w_max, x_frob, eps, gamma = map(mp.mpf, (w_max, x_frob, eps, gamma))
    s = [mp.mpf(x) for x in s]
    b = [mp.mpf(x) for x in b]
    prod = mp.mpf(1)
    for s_i in s:
        prod *= s_i**2
    corr = sum((b_i / s_i) ** (mp.mpf(2) / 3) for s_i, b_i in zip(s, b)) ** 3
    return 4 * x_frob**2 * mp.log(2 * w_max**2) / (gamma * eps) ** 2 * prod * corr


def oracle_ln(method, arch, quant, eps, gamma, m, sigma=None):
    """Dispatch matching bounds.ln_cover_fn for ramp-composed classes."""
    sigma = arch.sigma if sigma is None else sigma
    d, p_t, t = arch.input_dim, arch.num_classes, arch.depth
    if method == "ours":
        return ours_ramp_ln(arch.dims, eps, gamma, sigma, m)
    if method == "norm_based":
        return norm_based_ln(d, p_t, t, quant.V, eps, gamma)
    if method == "pdim":
        return pdim_ln(p_t, quant.W_rvo, quant.r_rvo, eps, gamma, m)
    if method == "lipschitz":
        return lipschitz_ln(p_t, quant.W_rvo, t, quant.V, eps, gamma, m)
    if method == "spectral":
        return spectral_ln(quant.w, quant.s, quant.b, quant.x_frob, eps, gamma)
    raise ValueError(method)
