"""
First hits of site 0 for walks started at k >= 1, with site 0 (and
optionally site N) absorbing after every step.

The path sum for "first hit of 0 at time n, never touching N" only has P and
R components, Xi = p_k(n) P + r_k(n) R, and the pair v_k(n) = (p, r) obeys

    v_k(n) = [[a, c], [0, 0]] v_{k-1}(n-1) + [[0, 0], [b, d]] v_{k+1}(n-1)

with v_0(0) = (conj a, conj c) and v_0(n) = v_N(n) = 0 afterwards. The
coefficients are the same for both walk types; only the map from (p, r) to a
probability differs.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass

import numba
import numpy as np

from .coin import QubitState, UnitaryCoin, WalkType, hadamard
from .errors import (
    NoConvergence,
    OutOfRange,
    ParamOutOfRange,
    SingularPoint,
    UnsupportedCoin,
    ZeroDenominator,
)

EPS_NORM = 1e-9
EPS_VIETA = 1e-12
SINGULAR_TOL = 1e-12
WINDOW = 500
WINDOW_MASS = 1e-14
TAIL_FACTOR = 10.0
TAIL_TOL = 1e-10
CAP_FINITE = 200_000
CAP_SEMI = 100_000
SQRT2 = math.sqrt(2)


@dataclass(frozen=True)
class AbsorptionSpec:
    coin: UnitaryCoin
    walk_type: WalkType
    k: int
    N: int | None = None  # None: only site 0 absorbs

    def __post_init__(self):
        if self.k < 1:
            raise ParamOutOfRange(f"start site must be >= 1, got {self.k}")
        if self.N is not None:
            if self.N < 2:
                raise ParamOutOfRange(f"N must be >= 2, got {self.N}")
            if self.k > self.N - 1:
                raise ParamOutOfRange(f"start site must be <= N-1 = {self.N - 1}, got {self.k}")

    @property
    def semi_infinite(self) -> bool:
        return self.N is None

    def describe(self) -> dict:
        return {
            "walk_type": self.walk_type.value,
            "boundary": "semi" if self.N is None else "finite",
            "N": self.N,
            "k": self.k,
        }


@dataclass(frozen=True)
class HittingSeries:
    p: np.ndarray  # p[n] for n = 0..n_max
    r: np.ndarray
    n_max: int
    spec: AbsorptionSpec


@numba.njit(cache=True)
def _recurrence(a, b, c, d, k, n_max, N):
    # Only v_j(n) with j + n even can be nonzero, so both time levels share one
    # array: step n writes the parity-n slots and reads the parity-(n-1) ones.
    # Sites that cannot influence v_k(n') for n' <= n_max are skipped.
    width = k + n_max + 2 if N < 0 else N + 2
    p = np.zeros(width, np.complex128)
    r = np.zeros(width, np.complex128)
    p[0] = np.conj(a)
    r[0] = np.conj(c)
    out_p = np.zeros(n_max + 1, np.complex128)
    out_r = np.zeros(n_max + 1, np.complex128)
    tiny = 1e-280  # flush subnormals: they cost ~5x per operation and carry no mass
    for n in range(1, n_max + 1):
        lo = max(1, k - (n_max - n))
        hi = min(n, k + n_max - n)
        if N >= 0:
            hi = min(hi, N - 1)
        j = lo + ((lo + n) & 1)
        while j <= hi:
            pv = a * p[j - 1] + c * r[j - 1]
            rv = b * p[j + 1] + d * r[j + 1]
            if abs(pv.real) < tiny and abs(pv.imag) < tiny:
                pv = 0j
            if abs(rv.real) < tiny and abs(rv.imag) < tiny:
                rv = 0j
            p[j] = pv
            r[j] = rv
            j += 2
        if n == 1:
            p[0] = 0j
            r[0] = 0j
        if (k + n) % 2 == 0:
            out_p[n] = p[k]
            out_r[n] = r[k]
    return out_p, out_r


def hitting_series(spec: AbsorptionSpec, n_max: int) -> HittingSeries:
    if n_max < 1:
        raise ValueError(f"n_max must be >= 1, got {n_max}")
    coin = spec.coin
    N = -1 if spec.N is None else spec.N
    p, r = _recurrence(coin.a, coin.b, coin.c, coin.d, spec.k, n_max, N)
    p.flags.writeable = False
    r.flags.writeable = False
    return HittingSeries(p, r, n_max, spec)


def hit_coefficients(series: HittingSeries):
    """(C1, C2, C3) arrays so that P(n) = C1|alpha|^2 + C2|beta|^2 + 2 Re(C3 conj(alpha) beta)."""
    p, r = series.p, series.r
    if series.spec.walk_type is WalkType.A:
        coin = series.spec.coin
        u = coin.a * p + coin.c * r
        w = coin.b * p + coin.d * r
    else:
        u, w = p, r
    return np.abs(u) ** 2, np.abs(w) ** 2, np.conj(u) * w


def first_hit_probs(series: HittingSeries, state: QubitState) -> np.ndarray:
    c1, c2, c3 = hit_coefficients(series)
    al, be = state.alpha, state.beta
    return c1 * abs(al) ** 2 + c2 * abs(be) ** 2 + 2 * (c3 * al.conjugate() * be).real


def first_hit_prob(series: HittingSeries, state: QubitState, n: int) -> float:
    if not 0 <= n <= series.n_max:
        raise OutOfRange(f"n={n} outside the computed range 0..{series.n_max}")
    return float(first_hit_probs(series, state)[n])


@dataclass(frozen=True)
class AbsorptionResult:
    prob: float
    n_used: int
    tail_bound: float
    cond_mean_T0: float
    converged: bool = True


def _stop_index(probs: np.ndarray, k: int, window: int, mass: float) -> int | None:
    cs = np.cumsum(probs)
    ends = np.arange(k + window, len(probs))
    if ends.size == 0:
        return None
    hits = np.nonzero(cs[ends] - cs[ends - window] < mass)[0]
    return int(ends[hits[0]]) if hits.size else None


def absorption_prob(
    spec: AbsorptionSpec,
    state: QubitState,
    n_cap: int | None = None,
    *,
    strict: bool = False,
) -> AbsorptionResult:
    """Sum first-hit probabilities until WINDOW consecutive steps add less
    than WINDOW_MASS, or n_cap is reached.

    The horizon doubles from 1024 because the semi-infinite recurrence costs
    O(n_max^2). When the cap is hit, tail_bound is a heuristic (last window
    mass times TAIL_FACTOR), and the result is flagged unconverged if it
    exceeds TAIL_TOL.
    """
    if n_cap is None:
        n_cap = CAP_SEMI if spec.semi_infinite else CAP_FINITE
    n_try = min(1024, n_cap)
    while True:
        probs = first_hit_probs(hitting_series(spec, n_try), state)
        stop = _stop_index(probs, spec.k, WINDOW, WINDOW_MASS)
        if stop is not None or n_try >= n_cap:
            break
        n_try = min(2 * n_try, n_cap)
    if stop is None:
        n_used = n_try
        last = math.fsum(probs[max(1, n_used - WINDOW + 1) :])
        tail = TAIL_FACTOR * last
    else:
        n_used, tail = stop, 0.0
    used = probs[1 : n_used + 1]
    total = math.fsum(used)
    moment = math.fsum(np.arange(1, n_used + 1) * used)
    result = AbsorptionResult(
        prob=total,
        n_used=n_used,
        tail_bound=tail,
        cond_mean_T0=moment / total if total > 0 else math.nan,
        converged=tail <= TAIL_TOL,
    )
    if strict and not result.converged:
        raise NoConvergence(result)
    return result


def _require_hadamard(coin: UnitaryCoin | None) -> None:
    if coin is not None and not coin.close_to(hadamard()):
        raise UnsupportedCoin("closed form is only available for the Hadamard coin")


def semi_infinite_closed(state: QubitState, wt: WalkType, coin: UnitaryCoin | None = None) -> float:
    """Absorption probability at 0 from k = 1, Hadamard coin, no right boundary."""
    _require_hadamard(coin)
    al, be = state.alpha, state.beta
    if wt is WalkType.A:
        return 2 / math.pi + 2 * (1 - 2 / math.pi) * (al.conjugate() * be).real
    return abs(al) ** 2 + (4 / math.pi - 1) * abs(be) ** 2


@dataclass(frozen=True)
class HittingMoment:
    value: float  # closed form where available
    series_estimate: float


@dataclass(frozen=True)
class Divergent:
    """Witness that sum n^m P(n) keeps growing: partial sums at n_max, 2 n_max."""

    m: int
    n_max: int
    partial: float
    partial_doubled: float

    @property
    def growth(self) -> float:
        return self.partial_doubled - self.partial


def conditional_hitting_moment(
    spec: AbsorptionSpec,
    state: QubitState,
    m: int,
    n_max: int = 10_000,
    margin: float = 0.05,
) -> HittingMoment | Divergent | float:
    """E[T_0^m | T_0 < oo] for the semi-infinite Hadamard walk from k = 1.

    m = 1 gives 1/P in closed form plus the series estimate. For m >= 2 the
    partial sums at n_max and 2 n_max are compared: growth beyond `margin`
    returns a Divergent witness, otherwise the series value is returned.
    """
    _require_hadamard(spec.coin)
    if not spec.semi_infinite or spec.k != 1:
        raise ParamOutOfRange("conditional moments need the semi-infinite walk started at k = 1")
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")
    probs = first_hit_probs(hitting_series(spec, 2 * n_max), state)
    n = np.arange(len(probs), dtype=float)
    if m == 1:
        head = probs[: n_max + 1]
        est = math.fsum(n[: n_max + 1] * head) / math.fsum(head)
        return HittingMoment(1 / semi_infinite_closed(state, spec.walk_type), est)
    weighted = n**m * probs
    s1 = math.fsum(weighted[: n_max + 1])
    s2 = math.fsum(weighted)
    if s2 - s1 > margin:
        return Divergent(m, n_max, s1, s2)
    return s2 / math.fsum(probs)


def _lambda_arrays(coin: UnitaryCoin, z):
    z = np.asarray(z, dtype=complex)
    det, a = coin.det, coin.a
    disc = np.sqrt(det**2 * z**4 + 2 * det * (1 - 2 * abs(a) ** 2) * z**2 + 1)
    denom = 2 * det * a.conjugate() * z
    minus, plus = det * z**2 + 1 - disc, det * z**2 + 1 + disc
    # the smaller numerator cancels badly; recover that root from the product a/d
    big_plus = np.abs(plus) >= np.abs(minus)
    big = np.where(big_plus, plus, minus) / denom
    small = coin.a / coin.d / big
    return np.where(big_plus, small, big), np.where(big_plus, big, small)


def lambda_roots(coin: UnitaryCoin, z: complex) -> tuple[complex, complex]:
    """(lambda_plus, lambda_minus), the roots of d L^2 - (det z + 1/z) L + a = 0.

    lambda_plus takes minus the principal square root in the numerator
    det z^2 + 1 -/+ sqrt(...), lambda_minus takes plus it.
    """
    z = complex(z)
    if coin.a == 0 or z == 0:
        raise ZeroDenominator("lambda roots need a != 0 and z != 0")
    lp, lm = _lambda_arrays(coin, z)
    return complex(lp), complex(lm)


@dataclass(frozen=True)
class GenFunEval:
    z: complex
    lambda_plus: complex
    lambda_minus: complex
    p_tilde: complex
    r_tilde: complex
    C_z: complex
    E_z: complex
    J: tuple  # J_0 .. J_{N-3}


def _j_sequence(z, count: int):
    """J_n = sum_i lp^i lm^(n-i) via J_n = s J_{n-1} + J_{n-2} (lp lm = -1)."""
    z = np.asarray(z, dtype=complex)
    s = SQRT2 * (z - 1 / z)
    seq = [np.ones_like(z), s]
    while len(seq) < count:
        seq.append(s * seq[-1] + seq[-2])
    return seq[:count]


def _finite_hadamard_arrays(N: int, k: int, z):
    z = np.asarray(z, dtype=complex)
    lp, lm = _lambda_arrays(hadamard(), z)
    d1 = lp - lm
    if N == 3:
        # the printed C_z, E_z are 0/0 here; solve for the mode weights directly
        rp, rm = SQRT2 * lp / z - 1, SQRT2 * lm / z - 1
        det = rm * lm - rp * lp
        singular = np.minimum(np.abs(det), np.abs(d1)) < SINGULAR_TOL
        det = np.where(singular, 1, det)
        A = z * rm * lm / det
        C = rp * A * lp
        E = A - z / 2
    else:
        d2 = lp ** (N - 2) - lm ** (N - 2)
        d3 = lp ** (N - 3) - lm ** (N - 3)
        brace = d2**2 - z / SQRT2 * d2 * d3 - (-1) ** (N - 3) * d1**2
        singular = np.minimum.reduce([np.abs(d1), np.abs(d2), np.abs(brace)]) < SINGULAR_TOL
        brace = np.where(singular, 1, brace)
        d2 = np.where(singular, 1, d2)
        C = z**2 / SQRT2 * (-1) ** (N - 2) * d3 / brace
        E = -z / (2 * d2) * (2 * (-1) ** (N - 3) * d1 * d3 / brace + lp ** (N - 2) + lm ** (N - 2))
    p = (z / 2 + E) * lp ** (k - 1) + (z / 2 - E) * lm ** (k - 1)
    r = C * (lp ** (k - N + 1) - lm ** (k - N + 1))
    return p, r, C, E, lp, lm, singular


def _check_finite(N: int, k: int, least: int = 3) -> None:
    if N < least:
        raise ParamOutOfRange(f"N must be >= {least}, got {N}")
    if not 1 <= k <= N - 1:
        raise ParamOutOfRange(f"k must lie in 1..{N - 1}, got {k}")


SERIES_RADIUS = 0.5
SERIES_TERMS = 80


@functools.lru_cache(maxsize=64)
def _finite_series(N: int, k: int) -> HittingSeries:
    return hitting_series(AbsorptionSpec(hadamard(), WalkType.A, k, N), SERIES_TERMS)


def genfun_finite_hadamard(N: int, k: int, z: complex, series_radius: float = SERIES_RADIUS) -> GenFunEval:
    """Generating functions sum_n p_k(n) z^n and sum_n r_k(n) z^n for the
    Hadamard walk absorbed at 0 and N.

    The mode closed form divides by powers of lambda_minus ~ 1/z and loses
    relative accuracy as z -> 0, so for |z| <= series_radius p_tilde and
    r_tilde come from the first SERIES_TERMS recurrence coefficients instead
    (coefficients are bounded by 1, so the truncation error is below
    0.5^80). Pass series_radius=0 to force the closed form. C_z and E_z
    always come from the closed form and may overflow near z = 0.
    """
    _check_finite(N, k)
    z = complex(z)
    if z == 0:
        return GenFunEval(z, 0j, 0j, 0j, 0j, 0j, 0j, ())
    with np.errstate(all="ignore"):
        p, r, C, E, lp, lm, singular = _finite_hadamard_arrays(N, k, z)
    if abs(z) <= series_radius:
        series = _finite_series(N, k)
        powers = z ** np.arange(SERIES_TERMS + 1)
        p, r = np.dot(series.p, powers), np.dot(series.r, powers)
    elif singular:
        raise SingularPoint(f"generating function closed form is singular at z={z}")
    with np.errstate(all="ignore"):
        J = tuple(complex(v) for v in _j_sequence(z, N - 2))
    return GenFunEval(z, complex(lp), complex(lm), complex(p), complex(r), complex(C), complex(E), J)


def _jn_arrays(N: int, z):
    z = np.asarray(z, dtype=complex)
    if N == 2:
        return np.zeros_like(z), np.zeros(z.shape, dtype=bool)
    if N == 3:
        den = 2 - z**2
        singular = np.abs(den) < SINGULAR_TOL
        return z**3 / np.where(singular, 1, den), singular
    J = _j_sequence(z, N - 2)
    j3, j4 = J[N - 3], J[N - 4]
    den = SQRT2 * j3**2 - z * j3 * j4 - SQRT2 * (-1) ** (N - 3)
    singular = np.abs(den) < SINGULAR_TOL
    return -(z**2) * j3 * j4 / np.where(singular, 1, den), singular


def genfun_r1_jn(N: int, z: complex) -> complex:
    """sum_n r_1(n) z^n for the Hadamard walk on {0..N}, via the J_n sequence."""
    if N < 2:
        raise ParamOutOfRange(f"N must be >= 2, got {N}")
    z = complex(z)
    if z == 0:
        return 0j
    val, singular = _jn_arrays(N, z)
    if singular:
        raise SingularPoint(f"J_n closed form is singular at z={z}")
    return complex(val)


def _unit_circle_values(N: int, k: int, panels: int, shift: float):
    z = np.exp(1j * (2 * np.pi * np.arange(panels) / panels + shift))
    if N == 2:
        return z, np.zeros_like(z), False
    p, r, *_, singular = _finite_hadamard_arrays(N, k, z)
    return p, r, bool(np.any(singular))


def parseval_coefficients(N: int, k: int, wt: WalkType, panels: int = 2**13):
    """(C1, C2, C3) as trapezoid-rule averages over the unit circle."""
    _check_finite(N, k, least=2)
    p, r, singular = _unit_circle_values(N, k, panels, 0.0)
    if singular:
        p, r, singular = _unit_circle_values(N, k, panels, math.pi / panels)
        if singular:
            raise SingularPoint("quadrature nodes hit a singular point twice")
    if wt is WalkType.A:
        s = 1 / SQRT2
        u, w = s * (p + r), s * (p - r)
    else:
        u, w = p, r
    return (
        float(np.mean(np.abs(u) ** 2)),
        float(np.mean(np.abs(w) ** 2)),
        complex(np.mean(np.conj(u) * w)),
    )


def parseval_prob(N: int, k: int, state: QubitState, wt: WalkType, panels: int = 2**13) -> float:
    """Absorption probability at 0 for the Hadamard walk on {0..N} through
    Parseval: sum_n |c_n|^2 = (1/2pi) int |f(e^{it})|^2 dt."""
    c1, c2, c3 = parseval_coefficients(N, k, wt, panels)
    al, be = state.alpha, state.beta
    return c1 * abs(al) ** 2 + c2 * abs(be) ** 2 + 2 * (c3 * al.conjugate() * be).real


def conjecture_rhs(N: int) -> float:
    """(1/sqrt 2) ((3+2 sqrt 2)^(N-1) - 1) / ((3+2 sqrt 2)^(N-1) + 1), written
    as a tanh so large N does not overflow."""
    if N < 1:
        raise ParamOutOfRange(f"N must be >= 1, got {N}")
    return math.tanh((N - 1) * math.log(3 + 2 * SQRT2) / 2) / SQRT2


def taylor_coefficients(f, n_max: int, radius: float = 0.9, nodes: int = 256) -> np.ndarray:
    """Coefficients c_0..c_{n_max} of an analytic f, by a DFT of f sampled on
    |z| = radius. f must accept an array of points."""
    if n_max >= nodes:
        raise ValueError("need more nodes than coefficients")
    z = radius * np.exp(2j * np.pi * np.arange(nodes) / nodes)
    c = np.fft.fft(np.asarray(f(z), dtype=complex)) / nodes
    return c[: n_max + 1] / radius ** np.arange(n_max + 1)
