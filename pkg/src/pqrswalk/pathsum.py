"""
Path sums Xi(l, m): the sum of every ordered product of l P-factors and
m Q-factors. After n = l + m steps the walk sits at k = m - l with amplitude
Xi(l, m) @ phi. The coefficients of Xi in the PQRS basis do not depend on the
walk type.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .coin import EPS_UNIT, BasisCombo, PQRSBasis, QubitState, UnitaryCoin, WalkType, expand
from .errors import CoinHasZeroEntry, TooLarge

N_BRUTE = 14


@dataclass(frozen=True)
class PathSplit:
    l: int  # P-factors (left moves)
    m: int  # Q-factors (right moves)

    def __post_init__(self):
        if self.l < 0 or self.m < 0:
            raise ValueError(f"path split needs l, m >= 0, got ({self.l}, {self.m})")

    @property
    def n(self) -> int:
        return self.l + self.m

    @property
    def k(self) -> int:
        return self.m - self.l

    @classmethod
    def at(cls, n: int, k: int) -> "PathSplit":
        if (n + k) % 2 or abs(k) > n:
            raise ValueError(f"site {k} is unreachable at time {n}")
        return cls((n - k) // 2, (n + k) // 2)


def xi_bruteforce(split: PathSplit, basis: PQRSBasis, n_brute: int = N_BRUTE) -> BasisCombo:
    """Enumerate all C(n, l) step words and sum their matrix products.

    The first step of a word is the rightmost factor of its product.
    """
    n = split.n
    if n > n_brute:
        raise TooLarge(f"brute force capped at l+m <= {n_brute}, got {n}")
    total = np.zeros((2, 2), dtype=complex)
    for left_steps in itertools.combinations(range(n), split.l):
        chosen = set(left_steps)
        prod = np.eye(2, dtype=complex)
        for t in range(n):
            prod = (basis.P if t in chosen else basis.Q) @ prod
        total += prod
    return expand(total, basis)


def _binomial_weights(l: int, m: int, x: complex | float) -> list:
    """x^g * C(l-1, g-1) * C(m-1, g-1) for g = 1..min(l, m), by ratio updates."""
    out = []
    w = x
    for g in range(1, min(l, m) + 1):
        out.append(w)
        w = w * x * (l - g) * (m - g) / (g * g)
    return out


def xi_closed_form(split: PathSplit, basis: PQRSBasis) -> BasisCombo:
    coin = basis.coin
    a, b, c, d = coin.a, coin.b, coin.c, coin.d
    l, m = split.l, split.m
    wt = basis.walk_type
    if l == 0 and m == 0:
        return expand(np.eye(2), basis)
    if m == 0:
        return BasisCombo(a ** (l - 1), 0, 0, 0, wt)
    if l == 0:
        return BasisCombo(0, d ** (m - 1), 0, 0, wt)
    if not coin.abcd_nonzero:
        raise CoinHasZeroEntry("closed form for l, m >= 1 needs abcd != 0")
    x = -abs(b) ** 2 / abs(a) ** 2
    pre = a**l * d**m
    p = q = r = s = 0j
    for g, w in enumerate(_binomial_weights(l, m, x), start=1):
        p += w * (l - g) / (a * g)
        q += w * (m - g) / (d * g)
        r += w / c
        s += w / b
    return BasisCombo(pre * p, pre * q, pre * r, pre * s, wt)


def xi(split: PathSplit, basis: PQRSBasis) -> BasisCombo:
    """Closed form where it applies, brute force otherwise."""
    if split.l and split.m and not basis.coin.abcd_nonzero:
        return xi_bruteforce(split, basis)
    return xi_closed_form(split, basis)


def prob_at(split: PathSplit, state: QubitState, basis: PQRSBasis) -> float:
    amp = xi(split, basis).matrix(basis) @ state.vector
    return float(np.sum(np.abs(amp) ** 2))


@dataclass(frozen=True)
class MomentContext:
    gamma_j: float
    theta_j: float
    walk_type: WalkType
    coin: UnitaryCoin
    state: QubitState

    @property
    def polarization(self) -> float:
        """|alpha|^2 - |beta|^2"""
        return abs(self.state.alpha) ** 2 - abs(self.state.beta) ** 2


def theta(coin: UnitaryCoin, wt: WalkType, state: QubitState) -> float:
    al, be = state.alpha, state.beta
    if wt is WalkType.A:
        return 2 * (coin.a * al * (coin.b * be).conjugate()).real
    return 2 * (coin.a * be * (coin.c * al).conjugate()).real


def moment_context(coin: UnitaryCoin, wt: WalkType, state: QubitState) -> MomentContext:
    th = theta(coin, wt, state)
    pol = abs(state.alpha) ** 2 - abs(state.beta) ** 2
    if wt is WalkType.A:
        gamma = (abs(coin.a) ** 2 - abs(coin.b) ** 2) * pol + 2 * th
    else:
        gamma = pol
    return MomentContext(gamma, th, wt, coin, state)


def _scaled_sums(n: int, k: int, log_a: float, log_x: float, sign_x: float):
    """|a|^(n-1) * (S0, S1) with

        S0 = sum_g x^g C(k-1, g-1) C(n-k-1, g-1) / g,    S1 = same without 1/g,

    accumulated in log space so neither the binomials nor |a|^(n-1) overflow.
    """
    terms0, terms1 = [], []
    logw = (n - 1) * log_a + log_x
    sign = sign_x
    for g in range(1, k + 1):
        w = sign * math.exp(logw)
        terms1.append(w)
        terms0.append(w / g)
        if g < k:
            logw += log_x + math.log(k - g) + math.log(n - k - g) - 2 * math.log(g)
            sign *= sign_x
    return math.fsum(terms0), math.fsum(terms1)


def moment_closed_form(ctx: MomentContext, n: int, m: int) -> float:
    """E[X_n^m] from the closed-form moment expansion.

    Both the odd and the even formulas are sums over k < n/2 of weights that
    are quadratic forms in (S0, S1); see `_scaled_sums`.
    """
    coin = ctx.coin
    if not coin.abcd_nonzero:
        raise CoinHasZeroEntry("moment formula needs abcd != 0")
    if n < 1 or m < 1:
        raise ValueError(f"need n >= 1 and m >= 1, got n={n}, m={m}")
    A, B = abs(coin.a) ** 2, abs(coin.b) ** 2
    pol, th = ctx.polarization, ctx.theta_j
    log_a = 0.5 * math.log(A)
    log_x = math.log(B / A)
    odd = m % 2 == 1
    terms = []
    for k in range(1, (n - 1) // 2 + 1):
        s0, s1 = _scaled_sums(n, k, log_a, log_x, -1.0)
        y = n - 2 * k
        if not odd:
            quad = ((n - k) ** 2 + k**2) * s0 * s0 - 2 * n * s0 * s1 + (2 / B) * s1 * s1
            terms.append(float(y) ** m * quad)
        elif ctx.walk_type is WalkType.A:
            quad = (-n * (A - B) * pol - 2 * n * th) * s0 * s0 + 2 * (th / B - pol) * s0 * s1
            terms.append(float(y) ** (m + 1) * quad)
        else:
            quad = -n * pol * s0 * s0 + 2 * (pol - th / B) * s0 * s1
            terms.append(float(y) ** (m + 1) * quad)
    edge = A ** (n - 1) * float(n) ** m
    if odd:
        edge *= -ctx.gamma_j
    return math.fsum([edge, *terms])


def classify_symmetry(coin: UnitaryCoin, wt: WalkType, state: QubitState) -> bool:
    """True iff |alpha| = |beta| and theta_j = 0, i.e. the distribution is
    mirror-symmetric at every time."""
    if not coin.abcd_nonzero:
        raise CoinHasZeroEntry("symmetry classification needs abcd != 0")
    balanced = abs(abs(state.alpha) - abs(state.beta)) <= EPS_UNIT
    return balanced and abs(theta(coin, wt, state)) <= EPS_UNIT
