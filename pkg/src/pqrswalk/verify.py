"""
Built-in invariant batteries behind `pqrswalk verify <suite>`.

Each suite returns a list of Check records; a suite passes when all of its
checks do. Reference constants are computed from library functions, never
typed in as digits.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from . import absorption as ab
from .coin import (
    LABELS,
    STATE_L,
    STATE_R,
    STATE_SYM,
    QubitState,
    UnitaryCoin,
    WalkType,
    basis_product,
    expand,
    hadamard,
    named_coin,
    pqrs,
    random_coin,
    random_state,
)
from .limit import (
    cdf,
    integrate,
    jacobi_identity_residual,
    limit_mean,
    limit_sd,
    limit_second_moment,
    make_limit_density,
)
from .pathsum import (
    PathSplit,
    classify_symmetry,
    moment_closed_form,
    moment_context,
    xi_bruteforce,
    xi_closed_form,
)
from .walk import distribution, empirical_moment, evolve, step

SEED = 20240611
TYPES = (WalkType.A, WalkType.G)


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str

    def line(self) -> str:
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.name}: {self.detail}"


def _check(name: str, err: float, tol: float, what: str = "residual") -> Check:
    ok = bool(err < tol)
    return Check(name, ok, f"{what} {err:.3e} (tol {tol:.0e})")


def sample_coins(count: int, seed: int = SEED) -> list[UnitaryCoin]:
    rng = np.random.default_rng(seed)
    return [random_coin(rng) for _ in range(count)]


def sample_states(count: int, seed: int = SEED) -> list[QubitState]:
    rng = np.random.default_rng(seed)
    return [random_state(rng) for _ in range(count)]


def balanced_state(coin: UnitaryCoin, wt: WalkType) -> QubitState:
    """A state with |alpha| = |beta| and theta_j = 0."""
    if wt is WalkType.A:
        # theta = Re(a conj(b) e^{-i phi}) with beta = e^{i phi} alpha
        phi = cmath.phase(coin.a * coin.b.conjugate()) + math.pi / 2
    else:
        phi = math.pi / 2 - cmath.phase(coin.a * coin.c.conjugate())
    s = 1 / math.sqrt(2)
    return QubitState(s, s * cmath.exp(1j * phi))


def ks_distance(probs: np.ndarray, sites: np.ndarray, n: int, d) -> float:
    """sup_x |F_n(x) - F(x)| for the law of X_n / n against a limit CDF,
    checked on both sides of every jump."""
    keep = probs > 0
    x = sites[keep] / n
    p = probs[keep]
    right = np.cumsum(p)
    left = right - p
    F = cdf(d, x)
    return float(max(np.max(np.abs(right - F)), np.max(np.abs(left - F))))


def suite_pqrs(n_max: int | None = None) -> list[Check]:
    coins = [hadamard(), named_coin("gudder", [0.6]), named_coin("h_rho", [0.3]), *sample_coins(3)]
    gram = table = ident = 0.0
    for coin in coins:
        for wt in TYPES:
            basis = pqrs(coin, wt)
            gram = max(gram, float(np.max(np.abs(basis.gram() - np.eye(4)))))
            for lhs in LABELS:
                for rhs in LABELS:
                    scalar, label = basis_product(lhs, rhs, coin)
                    table = max(table, float(np.max(np.abs(basis[lhs] @ basis[rhs] - scalar * basis[label]))))
            coeffs = expand(np.eye(2), basis).as_array()
            want = np.conj([coin.a, coin.d, coin.c, coin.b])
            ident = max(ident, float(np.max(np.abs(coeffs - want))))
    checks = [
        _check("PQRS orthonormality", gram, 1e-12),
        _check("product table (16 entries x both types)", table, 1e-12),
        _check("identity expansion conj(a)P + conj(d)Q + conj(c)R + conj(b)S", ident, 1e-12),
    ]
    # P^2 Q P Q = a b^2 c R, and the first hit of 0 from 1 on {0..3} at n = 5
    h = hadamard()
    basis = pqrs(h, WalkType.A)
    P, Q = basis.P, basis.Q
    word = P @ P @ Q @ P @ Q
    target = h.a * h.b**2 * h.c
    err = float(np.max(np.abs(word - target * basis.R)))
    series = ab.hitting_series(ab.AbsorptionSpec(h, WalkType.A, 1, 3), 5)
    err = max(err, abs(series.r[5] - target), abs(series.p[5]))
    checks.append(_check("path value a b^2 c at n=5 on {0..3}", err, 1e-12))
    return checks


def suite_pathsums(n_max: int | None = None) -> list[Check]:
    top = 12 if n_max is None else n_max
    worst = 0.0
    for coin in sample_coins(10):
        for wt in TYPES:
            basis = pqrs(coin, wt)
            for n in range(top + 1):
                for l in range(n + 1):
                    split = PathSplit(l, n - l)
                    diff = xi_closed_form(split, basis).as_array() - xi_bruteforce(split, basis).as_array()
                    worst = max(worst, float(np.max(np.abs(diff))))
    return [_check(f"closed-form path sums vs brute force, l+m <= {top}", worst, 1e-10)]


def suite_moments(n_max: int | None = None) -> list[Check]:
    top = 25 if n_max is None else n_max
    coins = sample_coins(10, SEED + 1)
    states = sample_states(10, SEED + 2)
    worst = 0.0
    for i, (coin, state) in enumerate(zip(coins, states)):
        wt = TYPES[i % 2]
        ctx = moment_context(coin, wt, state)
        basis = pqrs(coin, wt)
        field = evolve(state, coin, wt, 0)
        for n in range(1, top + 1):
            field = step(field, basis)
            dist = distribution(field)
            for m in (1, 2, 3, 4):
                worst = max(worst, abs(moment_closed_form(ctx, n, m) - empirical_moment(dist, m)))
    return [_check(f"closed-form moments m=1..4 vs evolution, n <= {top}", worst, 1e-8)]


def _mirror_and_mean(state, coin, wt, top):
    basis = pqrs(coin, wt)
    field = evolve(state, coin, wt, 0)
    mirror = mean = 0.0
    for _ in range(top):
        field = step(field, basis)
        dist = distribution(field)
        mirror = max(mirror, float(np.max(np.abs(dist.probs - dist.probs[::-1]))))
        mean = max(mean, abs(empirical_moment(dist, 1)))
    return mirror, mean


def suite_symmetry(n_max: int | None = None) -> list[Check]:
    top = 15 if n_max is None else n_max
    coins = sample_coins(20, SEED + 3)
    mirror = mean = 0.0
    classified = True
    for i, coin in enumerate(coins):
        wt = TYPES[i % 2]
        state = balanced_state(coin, wt)
        classified &= classify_symmetry(coin, wt, state)
        mi, me = _mirror_and_mean(state, coin, wt, top)
        mirror, mean = max(mirror, mi), max(mean, me)
    weakest = math.inf
    for i, (coin, state) in enumerate(zip(coins, sample_states(20, SEED + 4))):
        wt = TYPES[i % 2]
        classified &= not classify_symmetry(coin, wt, state)
        weakest = min(weakest, _mirror_and_mean(state, coin, wt, top)[1])
    return [
        _check(f"balanced states give mirror-symmetric laws, n <= {top}", mirror, 1e-12),
        _check("balanced states give zero means", mean, 1e-12, "max |mean|"),
        Check("classification agrees with construction", bool(classified), "20 members, 20 non-members"),
        Check(
            "non-members show a nonzero mean",
            bool(weakest > 1e-6),
            f"smallest max_n |E X_n| = {weakest:.3e} (need > 1e-6)",
        ),
    ]


def hadamard_limit_checks(n: int = 1000) -> list[Check]:
    h = hadamard()
    checks = []
    for label, state in (("sym", STATE_SYM), ("R", STATE_R)):
        d = make_limit_density(h, WalkType.A, state)
        dist = distribution(evolve(state, h, WalkType.A, n))
        mean = empirical_moment(dist, 1) / n
        sd = math.sqrt(empirical_moment(dist, 2) / n**2 - mean**2)
        checks.append(_check(f"state {label}: sd/n vs {limit_sd(d):.7f}", abs(sd - limit_sd(d)), 1e-2, "error"))
        if label == "R":
            checks.append(
                _check(f"state R: mean/n vs {limit_mean(d):.7f}", abs(mean - limit_mean(d)), 1e-2, "error")
            )
        ks = ks_distance(dist.probs, dist.sites, n, d)
        checks.append(Check(f"state {label}: Kolmogorov distance", ks <= 0.05, f"{ks:.4f} (need <= 0.05)"))
    return checks


def suite_limit(n_max: int | None = None) -> list[Check]:
    checks = hadamard_limit_checks(1000 if n_max is None else n_max)
    norm = moments = 0.0
    worst_skew = 0.0
    rng = np.random.default_rng(SEED + 5)
    for i in range(20):
        coin, state, wt = random_coin(rng), random_state(rng), TYPES[i % 2]
        d = make_limit_density(coin, wt, state)
        worst_skew = max(worst_skew, abs(d.skew) * d.mod_a)
        norm = max(norm, abs(integrate(d) - 1))
        moments = max(
            moments,
            abs(integrate(d, lambda x: x) - limit_mean(d)),
            abs(integrate(d, lambda x: x * x) - limit_second_moment(d)),
        )
    checks += [
        _check("density normalization, 20 configurations", norm, 1e-8),
        _check("first and second moments vs closed forms", moments, 1e-8),
        Check("density nonnegative (|skew| |a| <= 1)", worst_skew <= 1 + 1e-12, f"max {worst_skew:.6f}"),
    ]
    jac = 0.0
    for coin in (hadamard(), named_coin("gudder", [0.6]), named_coin("h_rho", [0.3])):
        for k in range(1, 9):
            for n in range(2 * k, 41):
                jac = max(jac, jacobi_identity_residual(k, n, coin))
    checks.append(_check("binomial sums vs Jacobi polynomials, k <= 8, n <= 40", jac, 1e-9, "scaled residual"))
    return checks


def _binomial_r(n_max: int) -> np.ndarray:
    """Coefficients of (-1 + sqrt(1 + z^4)) / z from the series of sqrt(1+u)."""
    out = np.zeros(n_max + 1)
    coef = 1.0  # C(1/2, j)
    for j in range(1, n_max // 4 + 2):
        coef *= (0.5 - (j - 1)) / j
        if 4 * j - 1 <= n_max:
            out[4 * j - 1] = coef
    return out


def duality_residual(n_top: int = 60, sizes=(3, 4, 5, 6)) -> float:
    worst = 0.0
    h = hadamard()
    for N in sizes:
        for k in range(1, N):
            series = ab.hitting_series(ab.AbsorptionSpec(h, WalkType.A, k, N), n_top)

            def gen(z, which):
                vals = [ab.genfun_finite_hadamard(N, k, complex(w)) for w in z]
                return np.array([v.p_tilde if which == "p" else v.r_tilde for v in vals])

            cp = ab.taylor_coefficients(lambda z: gen(z, "p"), n_top)
            cr = ab.taylor_coefficients(lambda z: gen(z, "r"), n_top)
            worst = max(worst, float(np.max(np.abs(cp - series.p))), float(np.max(np.abs(cr - series.r))))
    return worst


def jn_form_residual(points: int = 50, sizes=(3, 4, 5, 6), seed: int = SEED + 6) -> float:
    rng = np.random.default_rng(seed)
    rad = 0.9 * np.sqrt(rng.uniform(size=points))
    zs = rad * np.exp(2j * np.pi * rng.uniform(size=points))
    worst = 0.0
    for N in sizes:
        for z in zs:
            diff = ab.genfun_r1_jn(N, z) - ab.genfun_finite_hadamard(N, 1, z, series_radius=0).r_tilde
            worst = max(worst, abs(diff))
    return worst


def suite_absorption(n_max: int | None = None) -> list[Check]:
    h = hadamard()
    cap = 20_000 if n_max is None else n_max
    semi = ab.AbsorptionSpec(h, WalkType.A, 1)
    semi_g = ab.AbsorptionSpec(h, WalkType.G, 1)
    two_pi = 2 / math.pi
    checks = []
    for label, state in (("R", STATE_R), ("L", STATE_L)):
        res = ab.absorption_prob(semi, state, n_cap=cap)
        checks.append(_check(f"semi-infinite A, state {label}: series vs 2/pi", abs(res.prob - two_pi), 1e-4, "error"))
        checks.append(
            _check(
                f"semi-infinite A, state {label}: closed form vs 2/pi",
                abs(ab.semi_infinite_closed(state, WalkType.A) - two_pi),
                1e-12,
                "error",
            )
        )
    worst = 0.0
    lo, in_range = (4 - math.pi) / math.pi, True
    for state in sample_states(20, SEED + 7):
        for spec in (semi, semi_g):
            closed = ab.semi_infinite_closed(state, spec.walk_type)
            worst = max(worst, abs(ab.absorption_prob(spec, state, n_cap=cap).prob - closed))
            in_range &= lo - 1e-12 <= closed <= 1 + 1e-12
    checks.append(_check("semi-infinite closed forms vs series, 20 states x 2 types", worst, 1e-4))
    checks.append(Check("(4-pi)/pi <= P <= 1", bool(in_range), "all sampled states"))

    mom = ab.conditional_hitting_moment(semi, STATE_R, 1, n_max=cap)
    checks.append(
        _check("conditional mean (A, R) series vs pi/2", abs(mom.series_estimate - math.pi / 2), 1e-2, "error")
    )
    checks.append(_check("conditional mean closed form vs pi/2", abs(mom.value - math.pi / 2), 1e-12, "error"))
    div = ab.conditional_hitting_moment(semi, STATE_R, 2, n_max=10_000)
    fired = isinstance(div, ab.Divergent)
    checks.append(
        Check("second moment diverges (A, R)", fired, f"growth {div.growth:.3f}" if fired else f"finite {div}")
    )

    series = ab.hitting_series(semi, 200)
    checks.append(
        _check("r(n) vs binomial series of (-1+sqrt(1+z^4))/z, n <= 200", float(np.max(np.abs(series.r - _binomial_r(200)))), 1e-12)
    )

    t8 = 0.0
    for N in (2, 3, 4, 5):
        for k in range(1, N):
            for wt in TYPES:
                for state in (STATE_R, STATE_L, STATE_SYM):
                    spec = ab.AbsorptionSpec(h, wt, k, N)
                    t8 = max(t8, abs(ab.parseval_prob(N, k, state, wt) - ab.absorption_prob(spec, state).prob))
    checks.append(_check("unit-circle integrals vs series on {0..N}, N <= 5", t8, 1e-6))
    checks.append(_check("Taylor coefficients vs recurrence, n <= 60, N <= 6", duality_residual(), 1e-9))
    checks.append(_check("J_n closed form vs mode closed form, 50 points", jn_form_residual(), 1e-10))

    vieta = 0.0
    for coin in (h, *sample_coins(3, SEED + 8)):
        for z in (0.3 + 0.4j, 0.7, -0.2 + 0.9j):
            lp, lm = ab.lambda_roots(coin, z)
            vieta = max(
                vieta,
                abs(lp * lm - coin.a / coin.d),
                abs(lp + lm - (coin.det * z + 1 / z) / coin.d),
            )
    checks.append(_check("lambda roots satisfy Vieta", vieta, 1e-12))

    mass = 0.0
    for spec in (semi, semi_g, ab.AbsorptionSpec(h, WalkType.A, 2, 5), ab.AbsorptionSpec(sample_coins(1)[0], WalkType.G, 3)):
        for state in (STATE_R, STATE_L, STATE_SYM):
            probs = ab.first_hit_probs(ab.hitting_series(spec, 2000), state)
            mass = max(mass, float(np.max(np.cumsum(probs))) - 1, -float(np.min(probs)))
    checks.append(Check("first-hit partial sums stay within 1 + 1e-9", mass <= 1e-9, f"worst excess {mass:.3e}"))
    return checks


def conjecture_table(n_max: int = 6) -> list[tuple[int, float, float]]:
    return [(N, ab.parseval_prob(N, 1, STATE_R, WalkType.A), ab.conjecture_rhs(N)) for N in range(2, n_max + 1)]


def suite_conjecture(n_max: int | None = None) -> list[Check]:
    checks = [
        _check(f"N={N}: integrals {t8:.10f} vs conjecture {rhs:.10f}", abs(t8 - rhs), 1e-4, "|diff|")
        for N, t8, rhs in conjecture_table(6 if n_max is None else n_max)
    ]
    checks.append(_check("N=30 vs 1/sqrt(2)", abs(ab.conjecture_rhs(30) - 1 / math.sqrt(2)), 1e-9, "error"))
    return checks


SUITES = {
    "pqrs": suite_pqrs,
    "pathsums": suite_pathsums,
    "moments": suite_moments,
    "symmetry": suite_symmetry,
    "limit": suite_limit,
    "absorption": suite_absorption,
    "conjecture": suite_conjecture,
}


# names fixed by the command-line interface
ALIASES = {"lemma1": "pathsums"}


def run_suite(name: str, n_max: int | None = None) -> list[Check]:
    name = ALIASES.get(name, name)
    if name == "all":
        return [c for suite in SUITES.values() for c in suite(None)]
    return SUITES[name](n_max)
