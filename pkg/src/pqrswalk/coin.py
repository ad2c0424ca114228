"""
Coin matrices, walk types, qubit states and the PQRS matrix basis.

A coin is a 2x2 unitary U = [[a, b], [c, d]]. Each walk type splits U into a
left-moving part P and a right-moving part Q (U = P + Q):

    A-type: P = [[a, b], [0, 0]]   Q = [[0, 0], [c, d]]
    G-type: P = [[a, 0], [c, 0]]   Q = [[0, b], [0, d]]

Together with R and S the four matrices form an orthonormal basis of the 2x2
complex matrices under <X|Y> = tr(X* Y). Products of basis elements close
on the basis with a scalar factor that does not depend on the walk type.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import NotUnitary, ParamOutOfRange

EPS_UNIT = 1e-10
EPS_EXPAND = 1e-12

LABELS = ("P", "Q", "R", "S")


def _scalar(z) -> complex:
    z = complex(z)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise ValueError(f"non-finite complex entry: {z!r}")
    return z


class WalkType(enum.Enum):
    A = "A"
    G = "G"

    @classmethod
    def parse(cls, text: str) -> "WalkType":
        try:
            return cls(text.strip().upper())
        except ValueError:
            raise ParamOutOfRange(f"walk type must be 'a' or 'g', got {text!r}") from None


@dataclass(frozen=True)
class UnitaryCoin:
    a: complex
    b: complex
    c: complex
    d: complex
    det: complex = field(init=False)
    abcd_nonzero: bool = field(init=False)

    def __post_init__(self):
        for name in "abcd":
            object.__setattr__(self, name, _scalar(getattr(self, name)))
        object.__setattr__(self, "det", self.a * self.d - self.b * self.c)
        smallest = min(abs(self.a), abs(self.b), abs(self.c), abs(self.d))
        object.__setattr__(self, "abcd_nonzero", smallest > EPS_UNIT)

    @property
    def matrix(self) -> np.ndarray:
        return np.array([[self.a, self.b], [self.c, self.d]], dtype=complex)

    def residuals(self) -> dict[str, float]:
        a, b, c, d, det = self.a, self.b, self.c, self.d, self.det
        return {
            "row1 norm": abs(abs(a) ** 2 + abs(b) ** 2 - 1),
            "row2 norm": abs(abs(c) ** 2 + abs(d) ** 2 - 1),
            "row orthogonality": abs(a * c.conjugate() + b * d.conjugate()),
            "|det|": abs(abs(det) - 1),
            "c = -det*conj(b)": abs(c + det * b.conjugate()),
            "d = det*conj(a)": abs(d - det * a.conjugate()),
        }

    def close_to(self, other: "UnitaryCoin", tol: float = EPS_UNIT) -> bool:
        return bool(np.max(np.abs(self.matrix - other.matrix)) <= tol)


def make_coin(a, b, c, d) -> UnitaryCoin:
    """Build a coin, refusing anything that is not unitary to within EPS_UNIT.

    Nothing is re-normalized; a near-unitary input either passes as given or
    raises NotUnitary carrying the worst of the unitarity residuals.
    """
    coin = UnitaryCoin(a, b, c, d)
    which, worst = max(coin.residuals().items(), key=lambda kv: kv[1])
    if worst > EPS_UNIT:
        raise NotUnitary(worst, which)
    return coin


def hadamard() -> UnitaryCoin:
    s = 1 / math.sqrt(2)
    return make_coin(s, s, s, -s)


def named_coin(name: str, params=()) -> UnitaryCoin:
    params = [float(p) for p in params]

    def need(k):
        if len(params) != k:
            raise ParamOutOfRange(f"{name} takes {k} parameter(s), got {len(params)}")

    if name == "hadamard":
        need(0)
        return hadamard()
    if name == "h_rho":
        need(1)
        rho = params[0]
        if not 0.0 <= rho <= 1.0:
            raise ParamOutOfRange(f"h_rho needs rho in [0, 1], got {rho}")
        x, y = math.sqrt(rho), math.sqrt(1 - rho)
        return make_coin(x, y, y, -x)
    if name == "gudder":
        need(1)
        a = params[0]
        if not 0.0 < a < 1.0:
            raise ParamOutOfRange(f"gudder needs a in (0, 1), got {a}")
        b = math.sqrt(1 - a * a)
        return make_coin(a, 1j * b, 1j * b, a)
    if name == "u_eta_phi_psi":
        need(3)
        eta, phi, psi = params
        pre = cmath.exp(1j * eta) / math.sqrt(2)
        return make_coin(
            pre * cmath.exp(1j * (phi + psi)),
            pre * cmath.exp(-1j * (phi - psi)),
            pre * cmath.exp(1j * (phi - psi)),
            -pre * cmath.exp(-1j * (phi + psi)),
        )
    raise ParamOutOfRange(f"unknown coin {name!r}")


def _floats(text: str, count: int, what: str) -> list[float]:
    try:
        vals = [float(v) for v in text.split(",")]
    except ValueError:
        raise ParamOutOfRange(f"cannot parse numbers in {what} spec {text!r}") from None
    if len(vals) != count:
        raise ParamOutOfRange(f"{what} spec needs {count} numbers, got {len(vals)}")
    return vals


def parse_coin(spec: str) -> UnitaryCoin:
    """Parse `hadamard`, `h_rho:<rho>`, `gudder:<a>`, `u:<eta>,<phi>,<psi>` or
    `raw:<a_re>,<a_im>,<b_re>,<b_im>,<c_re>,<c_im>,<d_re>,<d_im>`."""
    head, _, tail = spec.strip().partition(":")
    if head == "hadamard" and not tail:
        return hadamard()
    if head == "h_rho":
        return named_coin("h_rho", _floats(tail, 1, "h_rho"))
    if head == "gudder":
        return named_coin("gudder", _floats(tail, 1, "gudder"))
    if head == "u":
        return named_coin("u_eta_phi_psi", _floats(tail, 3, "u"))
    if head == "raw":
        v = _floats(tail, 8, "raw coin")
        return make_coin(*(complex(v[i], v[i + 1]) for i in range(0, 8, 2)))
    raise ParamOutOfRange(f"unrecognized coin spec {spec!r}")


@dataclass(frozen=True)
class QubitState:
    alpha: complex
    beta: complex

    def __post_init__(self):
        object.__setattr__(self, "alpha", _scalar(self.alpha))
        object.__setattr__(self, "beta", _scalar(self.beta))
        norm = abs(self.alpha) ** 2 + abs(self.beta) ** 2
        if abs(norm - 1) > EPS_UNIT:
            raise ParamOutOfRange(f"qubit state has norm^2 {norm!r}, expected 1")

    @property
    def vector(self) -> np.ndarray:
        return np.array([self.alpha, self.beta], dtype=complex)


STATE_L = QubitState(1, 0)
STATE_R = QubitState(0, 1)
STATE_SYM = QubitState(1 / math.sqrt(2), 1j / math.sqrt(2))


def parse_state(spec: str) -> QubitState:
    spec = spec.strip()
    named = {"L": STATE_L, "R": STATE_R, "sym": STATE_SYM}
    if spec in named:
        return named[spec]
    head, _, tail = spec.partition(":")
    if head == "raw":
        v = _floats(tail, 4, "raw state")
        return QubitState(complex(v[0], v[1]), complex(v[2], v[3]))
    raise ParamOutOfRange(f"unrecognized state spec {spec!r}")


def _frozen(m) -> np.ndarray:
    m = np.array(m, dtype=complex)
    m.flags.writeable = False
    return m


@dataclass(frozen=True)
class PQRSBasis:
    P: np.ndarray
    Q: np.ndarray
    R: np.ndarray
    S: np.ndarray
    walk_type: WalkType
    coin: UnitaryCoin

    def __getitem__(self, label: str) -> np.ndarray:
        return getattr(self, label)

    def matrices(self) -> tuple[np.ndarray, ...]:
        return self.P, self.Q, self.R, self.S

    def gram(self) -> np.ndarray:
        """Trace inner products tr(E_i* E_j) over the four elements."""
        ms = self.matrices()
        return np.array([[np.trace(x.conj().T @ y) for y in ms] for x in ms])


def pqrs(coin: UnitaryCoin, wt: WalkType) -> PQRSBasis:
    a, b, c, d = coin.a, coin.b, coin.c, coin.d
    if wt is WalkType.A:
        mats = [[a, b], [0, 0]], [[0, 0], [c, d]], [[c, d], [0, 0]], [[0, 0], [a, b]]
    else:
        mats = [[a, 0], [c, 0]], [[0, b], [0, d]], [[0, a], [0, c]], [[b, 0], [d, 0]]
    return PQRSBasis(*(_frozen(m) for m in mats), walk_type=wt, coin=coin)


@dataclass(frozen=True)
class BasisCombo:
    p: complex
    q: complex
    r: complex
    s: complex
    basis_type: WalkType

    def as_array(self) -> np.ndarray:
        return np.array([self.p, self.q, self.r, self.s], dtype=complex)

    def matrix(self, basis: PQRSBasis) -> np.ndarray:
        return self.p * basis.P + self.q * basis.Q + self.r * basis.R + self.s * basis.S

    def __add__(self, other: "BasisCombo") -> "BasisCombo":
        return BasisCombo(
            self.p + other.p, self.q + other.q, self.r + other.r, self.s + other.s, self.basis_type
        )


def expand(X, basis: PQRSBasis) -> BasisCombo:
    X = np.asarray(X, dtype=complex)
    coeffs = [complex(np.trace(E.conj().T @ X)) for E in basis.matrices()]
    return BasisCombo(*coeffs, basis_type=basis.walk_type)


# row = left factor, column = right factor
_TABLE = {
    "P": (("a", "P"), ("b", "R"), ("a", "R"), ("b", "P")),
    "Q": (("c", "S"), ("d", "Q"), ("c", "Q"), ("d", "S")),
    "R": (("c", "P"), ("d", "R"), ("c", "R"), ("d", "P")),
    "S": (("a", "S"), ("b", "Q"), ("a", "Q"), ("b", "S")),
}


def basis_product(lhs: str, rhs: str, coin: UnitaryCoin) -> tuple[complex, str]:
    """Return (scalar, label) with lhs @ rhs == scalar * label, e.g. PQ = bR."""
    entry, label = _TABLE[lhs][LABELS.index(rhs)]
    return getattr(coin, entry), label


def random_coin(rng: np.random.Generator, mod_a2=(0.1, 0.9)) -> UnitaryCoin:
    """Coin with |a|^2 uniform on `mod_a2` and independent uniform phases.

    Every 2x2 unitary is a = sqrt(A) e^{i s}, b = sqrt(1-A) e^{i t},
    c = -det conj(b), d = det conj(a) with |det| = 1.
    """
    A = rng.uniform(*mod_a2)
    s, t, u = rng.uniform(0, 2 * math.pi, size=3)
    a = math.sqrt(A) * cmath.exp(1j * s)
    b = math.sqrt(1 - A) * cmath.exp(1j * t)
    det = cmath.exp(1j * u)
    return make_coin(a, b, -det * b.conjugate(), det * a.conjugate())


def random_state(rng: np.random.Generator) -> QubitState:
    v = rng.normal(size=2) + 1j * rng.normal(size=2)
    v /= np.linalg.norm(v)
    return QubitState(complex(v[0]), complex(v[1]))
