"""Two-ray invariants: limiting distance, detour distance, shifts, equivalence.

All of them are functions of the aligned modulus ratios ``m_j / m'_j``.  With
``r1 = max_j m_j/m'_j`` and ``r2 = max_j m'_j/m_j``:

* limiting distance   ``1/2 log max(r1, r2)``
* detour distance     ``1/2 log r1 + 1/2 log r2``
* optimal shift       ``1/4 log (r1 / r2)``, attaining ``1/2`` of the detour distance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Optional, Tuple, Union

import numpy as np

from .exactlog import INF, ExactLog, as_fraction, compare_logs, log_fraction
from .foliation import RayDecomposition

ABSOLUTELY_CONTINUOUS = "absolutely-continuous"
NOT_COMPARABLE = "not-comparable"

HALF = Fraction(1, 2)
QUARTER = Fraction(1, 4)


class NotComparable(ValueError):
    """The two vertical foliations are not absolutely continuous."""


@dataclass(frozen=True)
class PairAlignment:
    status: str
    matched: Tuple[Tuple[int, int], ...] = ()

    @property
    def comparable(self) -> bool:
        return self.status == ABSOLUTELY_CONTINUOUS


@dataclass(frozen=True)
class LogDistance:
    """``coefficient * log(log_argument)`` with an exact argument (possibly ``INF``).

    ``argmax`` is the smallest component index attaining the maximum, kept for
    diagnostics only.
    """

    log_argument: Union[Fraction, float]
    coefficient: Fraction = HALF
    argmax: Optional[int] = None

    def __post_init__(self):
        if self.log_argument != INF:
            object.__setattr__(self, "log_argument", as_fraction(self.log_argument))
            if self.log_argument < 1:
                raise ValueError("distances have log argument >= 1")

    @property
    def infinite(self) -> bool:
        return self.log_argument == INF

    @property
    def value(self) -> float:
        if self.infinite:
            return INF
        return float(self.coefficient) * log_fraction(self.log_argument)

    def is_zero(self) -> bool:
        return self.log_argument == 1

    def compare(self, other: "LogDistance") -> int:
        return compare_logs(self.coefficient, self.log_argument,
                            other.coefficient, other.log_argument)

    def same_value(self, other: "LogDistance") -> bool:
        return self.compare(other) == 0


@dataclass(frozen=True)
class LogSum:
    """``coefficient * (log forward + log backward)``; ``INF`` when not comparable."""

    forward: Union[Fraction, float]
    backward: Union[Fraction, float]
    coefficient: Fraction = HALF

    @property
    def infinite(self) -> bool:
        return self.forward == INF or self.backward == INF

    def as_distance(self) -> LogDistance:
        if self.infinite:
            return LogDistance(INF, self.coefficient)
        return LogDistance(self.forward * self.backward, self.coefficient)

    @property
    def value(self) -> float:
        return self.as_distance().value

    def is_zero(self) -> bool:
        return not self.infinite and self.forward * self.backward == 1


class RatioMaxima(NamedTuple):
    forward: Fraction   # max_j m_j / m'_j
    forward_index: int
    backward: Fraction  # max_j m'_j / m_j
    backward_index: int


def align(d1: RayDecomposition, d2: RayDecomposition) -> PairAlignment:
    """Match components by id; comparable iff the id sets coincide."""
    for d in (d1, d2):
        if len(set(d.ids)) != len(d.ids):
            raise ValueError("duplicate component ids")
    if set(d1.ids) != set(d2.ids):
        return PairAlignment(NOT_COMPARABLE)
    where = {cid: k for k, cid in enumerate(d2.ids)}
    matched = []
    for j, comp in enumerate(d1.components):
        k = where[comp.id]
        if d2.components[k].kind != comp.kind:
            raise ValueError(f"component {comp.id} has kind {comp.kind.value} in one ray "
                             f"and {d2.components[k].kind.value} in the other")
        matched.append((j, k))
    return PairAlignment(ABSOLUTELY_CONTINUOUS, tuple(matched))


def _modulus_ratios(d1, d2):
    al = align(d1, d2)
    if not al.comparable:
        return None
    return [d1.components[j].modulus / d2.components[k].modulus for j, k in al.matched]


def _argmax(values):
    best = 0
    for k, v in enumerate(values):
        if v > values[best]:
            best = k
    return best


def ratio_maxima(d1: RayDecomposition, d2: RayDecomposition) -> RatioMaxima:
    ratios = _modulus_ratios(d1, d2)
    if ratios is None:
        raise NotComparable("component ids differ")
    inverse = [1 / x for x in ratios]
    i, k = _argmax(ratios), _argmax(inverse)
    return RatioMaxima(ratios[i], i, inverse[k], k)


def limiting_distance(d1: RayDecomposition, d2: RayDecomposition) -> LogDistance:
    """``lim d_T(X_t, Y_t)``; infinite when the rays are not absolutely continuous."""
    try:
        rm = ratio_maxima(d1, d2)
    except NotComparable:
        return LogDistance(INF)
    if rm.forward > rm.backward:
        return LogDistance(rm.forward, HALF, rm.forward_index)
    if rm.backward > rm.forward:
        return LogDistance(rm.backward, HALF, rm.backward_index)
    return LogDistance(rm.forward, HALF, min(rm.forward_index, rm.backward_index))


def modular_equivalence(d1: RayDecomposition, d2: RayDecomposition) -> Optional[Fraction]:
    """The constant ``C`` with ``m_j = C m'_j`` for all j, if there is one."""
    ratios = _modulus_ratios(d1, d2)
    if ratios is None:
        return None
    first = ratios[0]
    return first if all(x == first for x in ratios) else None


def is_asymptotic(d1: RayDecomposition, d2: RayDecomposition) -> bool:
    return modular_equivalence(d1, d2) is not None


def busemann_equal(d1: RayDecomposition, d2: RayDecomposition) -> bool:
    return modular_equivalence(d1, d2) is not None


def detour_distance(d1: RayDecomposition, d2: RayDecomposition) -> LogSum:
    try:
        rm = ratio_maxima(d1, d2)
    except NotComparable:
        return LogSum(INF, INF)
    return LogSum(rm.forward, rm.backward, HALF)


def min_limiting_distance(d1: RayDecomposition, d2: RayDecomposition) -> LogSum:
    """Minimum over shifts of the limiting distance, i.e. half the detour distance."""
    det = detour_distance(d1, d2)
    return LogSum(det.forward, det.backward, det.coefficient / 2)


def optimal_shift(d1: RayDecomposition, d2: RayDecomposition) -> ExactLog:
    """``sigma* = 1/4 log(r1 / r2)``; shifting the second ray by it realizes the minimum."""
    rm = ratio_maxima(d1, d2)
    return ExactLog(rm.forward / rm.backward, QUARTER)


def shifted_limiting_distance(d1: RayDecomposition, d2: RayDecomposition, sigma) -> LogDistance:
    """``lim d_T(X_t, Y_(t+sigma))``: ``m'_j`` replaced by ``e^(2 sigma) m'_j``.

    Exact for every :class:`ExactLog` sigma: with ``2c = P/Q`` the result is
    ``1/(2Q) log max_j max(x_j, 1/x_j)`` where ``x_j = (m_j/m'_j)**Q / r**P``.
    """
    sigma = ExactLog.coerce(sigma)
    ratios = _modulus_ratios(d1, d2)
    if ratios is None:
        raise NotComparable("component ids differ")
    two_c = 2 * sigma.coefficient
    p, q = two_c.numerator, two_c.denominator
    shift = sigma.argument ** p
    best, best_j = None, 0
    for j, x in enumerate(ratios):
        y = x ** q / shift
        y = max(y, 1 / y)
        if best is None or y > best:
            best, best_j = y, j
    return LogDistance(best, HALF / q, best_j)


class ShiftScan(NamedTuple):
    sigma: np.ndarray
    distance: np.ndarray
    best_sigma: float
    best_distance: float


def sigma_grid(lo: float, hi: float, step: float) -> np.ndarray:
    if step <= 0 or hi < lo:
        raise ValueError("need lo <= hi and step > 0")
    n = int(math.floor((hi - lo) / step + 1e-9))
    return lo + step * np.arange(n + 1)


def scan_shifts(d1: RayDecomposition, d2: RayDecomposition, grid: np.ndarray) -> ShiftScan:
    """Evaluate the shifted limiting distance in binary64 on a grid of shifts.

    Uses the componentwise definition ``1/2 max_j |log(m_j/m'_j) - 2 sigma|``.
    """
    ratios = _modulus_ratios(d1, d2)
    if ratios is None:
        raise NotComparable("component ids differ")
    grid = np.asarray(grid, dtype=float)
    logs = np.array([log_fraction(x) for x in ratios])
    dist = 0.5 * np.abs(logs[None, :] - 2.0 * grid[:, None]).max(axis=1)
    k = int(np.argmin(dist))
    return ShiftScan(grid, dist, float(grid[k]), float(dist[k]))
