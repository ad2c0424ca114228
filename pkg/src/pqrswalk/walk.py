"""Exact amplitude evolution of the unrestricted walk on the integers."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .coin import PQRSBasis, QubitState, UnitaryCoin, WalkType, pqrs
from .errors import NormDrift, TypeMismatch

EPS_NORM = 1e-9


def _readonly(x: np.ndarray) -> np.ndarray:
    x.flags.writeable = False
    return x


@dataclass(frozen=True)
class AmplitudeField:
    """Amplitudes at time n, stored densely over sites -n..n.

    Row i of `psi` holds (psi_L, psi_R) at site i - n. Slots with n + k odd
    are kept (always zero) so indexing stays trivial.
    """

    time: int
    psi: np.ndarray
    walk_type: WalkType

    @property
    def sites(self) -> np.ndarray:
        return np.arange(-self.time, self.time + 1)

    def at(self, k: int) -> np.ndarray:
        if abs(k) > self.time:
            return np.zeros(2, dtype=complex)
        return self.psi[k + self.time]

    def items(self):
        """Yield (site, psi_L, psi_R) for sites with a nonzero amplitude."""
        for k, (left, right) in zip(self.sites, self.psi):
            if left != 0 or right != 0:
                yield int(k), complex(left), complex(right)

    def norm(self) -> float:
        return math.fsum((np.abs(self.psi) ** 2).ravel())


@dataclass(frozen=True)
class Distribution:
    time: int
    sites: np.ndarray
    probs: np.ndarray

    def prob(self, k: int) -> float:
        if abs(k) > self.time:
            return 0.0
        return float(self.probs[k + self.time])

    def total(self) -> float:
        return math.fsum(self.probs)


def initial_field(state: QubitState, wt: WalkType) -> AmplitudeField:
    return AmplitudeField(0, _readonly(state.vector.reshape(1, 2).copy()), wt)


def step(field: AmplitudeField, basis: PQRSBasis) -> AmplitudeField:
    """One application of psi_k(n+1) = P psi_{k+1}(n) + Q psi_{k-1}(n)."""
    if field.walk_type is not basis.walk_type:
        raise TypeMismatch(
            f"field is {field.walk_type.value}-type but basis is {basis.walk_type.value}-type"
        )
    n = field.time
    new = np.zeros((2 * n + 3, 2), dtype=complex)
    new[: 2 * n + 1] += field.psi @ basis.P.T
    new[2:] += field.psi @ basis.Q.T
    return AmplitudeField(n + 1, _readonly(new), field.walk_type)


def evolve(state: QubitState, coin: UnitaryCoin, wt: WalkType, n: int) -> AmplitudeField:
    if n < 0:
        raise ValueError(f"number of steps must be >= 0, got {n}")
    basis = pqrs(coin, wt)
    field = initial_field(state, wt)
    for _ in range(n):
        field = step(field, basis)
    return field


def distribution(field: AmplitudeField) -> Distribution:
    probs = (np.abs(field.psi) ** 2).sum(axis=1)
    total = math.fsum(probs)
    if abs(total - 1) > EPS_NORM:
        raise NormDrift(f"total probability {total!r} at time {field.time}")
    return Distribution(field.time, _readonly(field.sites), _readonly(probs))


def empirical_moment(dist: Distribution, m: int) -> float:
    k = dist.sites.astype(float)
    return math.fsum(k**m * dist.probs)
