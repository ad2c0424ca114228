"""
Weak limit of X_n / n, its moments and CDF, plus Jacobi polynomials.

The limit density on (-|a|, |a|) is

    f(x) = sqrt(1 - |a|^2) / (pi (1 - x^2) sqrt(|a|^2 - x^2)) * (1 - skew * x)

with skew = |alpha|^2 - |beta|^2 + theta_j / |a|^2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .coin import QubitState, UnitaryCoin, WalkType
from .errors import CoinHasZeroEntry, ParamOutOfRange
from .pathsum import _binomial_weights, theta

EPS_QUAD = 1e-8
PANELS = 4096


@dataclass(frozen=True)
class LimitDensity:
    mod_a: float
    skew: float
    walk_type: WalkType

    def __post_init__(self):
        if not 0.0 < self.mod_a < 1.0:
            raise CoinHasZeroEntry(f"limit density needs 0 < |a| < 1, got {self.mod_a}")


def make_limit_density(coin: UnitaryCoin, wt: WalkType, state: QubitState) -> LimitDensity:
    if not coin.abcd_nonzero:
        raise CoinHasZeroEntry("limit density needs abcd != 0")
    A = abs(coin.a) ** 2
    pol = abs(state.alpha) ** 2 - abs(state.beta) ** 2
    return LimitDensity(abs(coin.a), pol + theta(coin, wt, state) / A, wt)


def density(d: LimitDensity, x):
    """Evaluate f at x (scalar or array); zero outside the open support."""
    x = np.asarray(x, dtype=float)
    A = d.mod_a**2
    inside = np.abs(x) < d.mod_a
    xi = np.where(inside, x, 0.0)
    val = math.sqrt(1 - A) / (math.pi * (1 - xi**2) * np.sqrt(A - xi**2)) * (1 - d.skew * xi)
    out = np.where(inside, val, 0.0)
    return float(out) if out.ndim == 0 else out


def limit_second_moment(d: LimitDensity) -> float:
    return 1 - math.sqrt(1 - d.mod_a**2)


def limit_mean(d: LimitDensity) -> float:
    return -d.skew * limit_second_moment(d) + 0.0  # no signed zero


def limit_sd(d: LimitDensity) -> float:
    return math.sqrt(limit_second_moment(d) - limit_mean(d) ** 2)


def _simpson(f, lo: float, hi: float, panels: int) -> float:
    if hi <= lo:
        return 0.0
    t = np.linspace(lo, hi, panels + 1)
    y = f(t)
    h = (hi - lo) / panels
    return float(h / 3 * (y[0] + y[-1] + 4 * y[1:-1:2].sum() + 2 * y[2:-1:2].sum()))


def _transformed(d: LimitDensity, weight=None):
    # x = |a| sin t removes both inverse-square-root endpoint singularities
    A = d.mod_a**2
    c = math.sqrt(1 - A) / math.pi

    def g(t):
        x = d.mod_a * np.sin(t)
        val = c * (1 - d.skew * x) / (1 - A * np.sin(t) ** 2)
        return val if weight is None else val * weight(x)

    return g


def _angle(d: LimitDensity, x: float) -> float:
    return math.asin(max(-1.0, min(1.0, x / d.mod_a)))


def cdf_interval(d: LimitDensity, lo: float, hi: float, panels: int = PANELS) -> float:
    """P(lo <= Z <= hi) by Simpson's rule in the angle variable."""
    if lo > hi:
        raise ValueError(f"need lo <= hi, got [{lo}, {hi}]")
    return _simpson(_transformed(d), _angle(d, lo), _angle(d, hi), panels)


def integrate(d: LimitDensity, weight=None, panels: int = PANELS) -> float:
    """Integral of weight(x) * f(x) over the support (weight defaults to 1)."""
    return _simpson(_transformed(d, weight), -math.pi / 2, math.pi / 2, panels)


def cdf(d: LimitDensity, x, panels: int = PANELS) -> np.ndarray:
    """CDF at each point of x, one Simpson integral per point."""
    xs = np.atleast_1d(np.asarray(x, dtype=float))
    g = _transformed(d)
    out = np.empty(xs.shape)
    for i, v in enumerate(xs):
        out[i] = _simpson(g, -math.pi / 2, _angle(d, v), panels)
    return out


@dataclass(frozen=True)
class JacobiParams:
    nu: float
    mu: float
    degree: int
    x: float

    def __post_init__(self):
        if self.nu <= -1 or self.mu <= -1:
            raise ParamOutOfRange(f"Jacobi parameters need nu, mu > -1, got {self.nu}, {self.mu}")
        if self.degree < 0:
            raise ParamOutOfRange(f"degree must be >= 0, got {self.degree}")


def jacobi(p: JacobiParams) -> float:
    """P_n^(nu, mu)(x) from the terminating 2F1(-n, n+nu+mu+1; nu+1; (1-x)/2).

    The Gamma prefactor Gamma(n+nu+1) / (Gamma(n+1) Gamma(nu+1)) = C(n+nu, n)
    is built by the same kind of ratio update as the series terms.
    """
    n, nu, mu = p.degree, p.nu, p.mu
    y = (1 - p.x) / 2
    term = 1.0
    for i in range(1, n + 1):
        term *= (nu + i) / i
    terms = [term]
    for j in range(n):
        term *= (j - n) * (j + n + nu + mu + 1) / ((j + nu + 1) * (j + 1)) * y
        terms.append(term)
    return math.fsum(terms)


def jacobi_identity_residual(k: int, n: int, coin: UnitaryCoin) -> float:
    """Largest scaled residual |LHS - RHS| / max(1, |RHS|) over the pair of
    binomial-sum / Jacobi identities

        sum_g x^(g-1) C(k-1,g-1) C(n-k-1,g-1) / g = |a|^(-2(k-1)) P_{k-1}^(1,n-2k)(2|a|^2-1) / k
        sum_g x^(g-1) C(k-1,g-1) C(n-k-1,g-1)     = |a|^(-2(k-1)) P_{k-1}^(0,n-2k)(2|a|^2-1)

    with x = -|b|^2 / |a|^2. Both sides grow like 1e8 by k = 8, n = 40, so
    an unscaled difference only measures double-precision rounding there.
    """
    if not coin.abcd_nonzero:
        raise CoinHasZeroEntry("Jacobi identities need abcd != 0")
    if k < 1 or n < 2 * k:
        raise ValueError(f"need k >= 1 and n >= 2k, got k={k}, n={n}")
    A = abs(coin.a) ** 2
    x = -abs(coin.b) ** 2 / A
    weights = [w / x for w in _binomial_weights(k, n - k, x)]
    lhs1 = math.fsum(w / g for g, w in enumerate(weights, start=1))
    lhs2 = math.fsum(weights)
    scale = A ** (-(k - 1))
    arg = 2 * A - 1
    rhs1 = scale * jacobi(JacobiParams(1, n - 2 * k, k - 1, arg)) / k
    rhs2 = scale * jacobi(JacobiParams(0, n - 2 * k, k - 1, arg))
    return max(abs(lhs1 - rhs1) / max(1.0, abs(rhs1)), abs(lhs2 - rhs2) / max(1.0, abs(rhs2)))
