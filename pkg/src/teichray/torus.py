"""Flat tori as an exact oracle for the ray formulas.

A point of Teichmueller space of the torus is ``omega = x + iy`` in the upper
half-plane (the torus ``C / (Z + omega Z)``), and a simple closed curve is a
primitive class ``(p, q)`` with holonomy ``p + q omega``.  Extremal length is
``|p + q omega|**2 / y`` and the Teichmueller distance is half the hyperbolic
distance.  The vertical ray keeps ``x`` and sends ``y`` to ``e^(-2t) y``.

Arithmetic follows the inputs: Fractions (with an :class:`ExactLog` time whose
``e^(2t)`` is rational) give exact results, anything else binary64.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, List, NamedTuple, Optional, Sequence, Tuple, Union

import numpy as np

from .exactlog import ExactLog, as_fraction
from .foliation import (BasisFoliation, Component, IntersectionVector, Kind,
                        RayDecomposition, grow_limit_basis, shrink_limit)

Number = Union[int, float, Fraction]

# floats whose exact binary value has a larger denominator count as irrational slopes
MAX_SLOPE_DENOMINATOR = 10 ** 6
ATOL = 1e-9


@dataclass(frozen=True)
class TorusPoint:
    re: Number
    im: Number

    def __post_init__(self):
        if not self.im > 0:
            raise ValueError("Im omega must be positive")

    @property
    def exact(self) -> bool:
        return all(isinstance(v, (int, Fraction)) for v in (self.re, self.im))

    def as_exact(self) -> "TorusPoint":
        return TorusPoint(Fraction(self.re), Fraction(self.im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))


@dataclass(frozen=True)
class CurveClass:
    p: int
    q: int

    def __post_init__(self):
        if (self.p, self.q) == (0, 0) or math.gcd(self.p, self.q) != 1:
            raise ValueError(f"({self.p}, {self.q}) is not a primitive class")

    def intersection(self, other: "CurveClass") -> int:
        return abs(self.p * other.q - self.q * other.p)


def primitive_classes(bound: int) -> List[CurveClass]:
    """Unoriented primitive classes with ``|p|, |q| <= bound``, lexicographic order."""
    out = []
    for p in range(-bound, bound + 1):
        for q in range(0, bound + 1):
            if q == 0 and p <= 0:
                continue
            if math.gcd(p, q) == 1:
                out.append(CurveClass(p, q))
    return out


def ext_torus(omega: TorusPoint, gamma: CurveClass):
    x, y = omega.re, omega.im
    return ((gamma.p + gamma.q * x) ** 2 + (gamma.q * y) ** 2) / y


def _decay(t):
    """``e^(-2t)``: a Fraction when exact, else a float."""
    if isinstance(t, ExactLog):
        f = t.exp(-2)
        if f is not None:
            return f
        return math.exp(-2.0 * float(t))
    return math.exp(-2.0 * t)


def vertical_ray(omega: TorusPoint, t) -> TorusPoint:
    """The point at time ``t`` on the ray whose vertical foliation is ``|dx|``."""
    f = _decay(t)
    if isinstance(f, Fraction) and not omega.exact:
        f = float(f)
    return TorusPoint(omega.re, omega.im * f)


def rotate(omega: TorusPoint) -> TorusPoint:
    """``-1/omega``: the same torus turned by 90 degrees (horizontal becomes vertical)."""
    x, y = omega.re, omega.im
    n = x * x + y * y
    return TorusPoint(-x / n, y / n)


def rotate_curve(gamma: CurveClass) -> CurveClass:
    """Class of ``gamma`` in the marking of :func:`rotate`."""
    return CurveClass(gamma.q, -gamma.p)


def unrotate_curve(gamma: CurveClass) -> CurveClass:
    return CurveClass(-gamma.q, gamma.p)


def _slope(x: Number) -> Optional[Fraction]:
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    fx = Fraction(x)
    return fx if fx.denominator <= MAX_SLOPE_DENOMINATOR else None


@dataclass(frozen=True)
class TorusRay:
    """Ray data of a torus together with how to pair curves against ``G``."""

    omega: TorusPoint
    direction: str
    decomposition: RayDecomposition
    core: Optional[CurveClass]
    # pairings use the (possibly rotated) working point
    _work: TorusPoint = field(repr=False, default=None)
    _slope: Optional[Fraction] = field(repr=False, default=None)

    @property
    def kind(self) -> Kind:
        return self.decomposition.components[0].kind

    def working_curve(self, gamma: CurveClass) -> CurveClass:
        return rotate_curve(gamma) if self.direction == "horizontal" else gamma

    def pairing(self, gamma: CurveClass) -> Fraction:
        """``i(G, gamma)`` under the normalization of ``G`` in use."""
        g = self.working_curve(gamma)
        if self._slope is not None:
            s, r = self._slope.numerator, self._slope.denominator
            return Fraction(abs(r * g.p + s * g.q))
        return abs(g.p + g.q * Fraction(self._work.re))

    def pairings(self, gamma: CurveClass) -> IntersectionVector:
        return IntersectionVector([self.pairing(gamma)])

    def basis_coefficient(self, gamma: CurveClass) -> Optional[Fraction]:
        """``c`` with ``gamma = c G`` when gamma is parallel to the vertical foliation."""
        if self.core is None or self.pairing(gamma) != 0:
            return None
        return Fraction(1)

    def shrink_limit(self, gamma: CurveClass) -> Fraction:
        return shrink_limit(self.decomposition, self.pairings(gamma))

    def grow_limit(self, gamma: CurveClass):
        c = self.basis_coefficient(gamma)
        if c is None:
            return math.inf
        return grow_limit_basis(self.decomposition, BasisFoliation([c]))

    def ext_at(self, gamma: CurveClass, t):
        """``Ext_{X_t}(gamma)`` along this ray."""
        return ext_torus(vertical_ray(self._work, t), self.working_curve(gamma))


def ray_data_torus(omega: TorusPoint, direction: str = "vertical") -> TorusRay:
    """Single-component decomposition of the unit-area flat torus at ``omega``.

    Rational ``x = s/r``: a cylinder whose core is the primitive class
    ``(-s, r)``, modulus ``1 / (r**2 y)``.  Otherwise a minimal component with
    ``G`` scaled so that ``i(G, (1, 0)) = 1``, modulus ``1/y``.  Values are
    stored as ``a = 1``, ``h = 1/m`` over area ``1/m``.
    """
    if direction not in ("vertical", "horizontal"):
        raise ValueError("only vertical and horizontal rays are supported")
    work = rotate(omega) if direction == "horizontal" else omega
    y = Fraction(work.im)
    slope = _slope(work.re)
    if slope is not None:
        s, r = slope.numerator, slope.denominator
        core = CurveClass(-s, r)
        if direction == "horizontal":
            core = unrotate_curve(core)
        h = r * r * y
        kind = Kind.CYLINDER
    else:
        core, h, kind = None, y, Kind.MINIMAL
    d = RayDecomposition((Component("G", Fraction(1), h, kind),), normalized=True)
    return TorusRay(omega, direction, d, core, work, slope)


def teich_dist_exact(omega: TorusPoint, omega2: TorusPoint) -> float:
    """``1/2 d_H``; ``d_H = arccosh(1 + |w - w'|^2 / (2 y y'))`` written via asinh for accuracy."""
    w, w2 = complex(omega), complex(omega2)
    return math.asinh(abs(w - w2) / (2.0 * math.sqrt(w.imag * w2.imag)))


@lru_cache(maxsize=8)
def _class_table(bound: int) -> Tuple[np.ndarray, np.ndarray]:
    p = np.arange(-bound, bound + 1)
    q = np.arange(0, bound + 1)
    P, Q = np.meshgrid(p, q, indexing="ij")
    P, Q = P.ravel(), Q.ravel()
    keep = (np.gcd(P, Q) == 1) & ~((Q == 0) & (P <= 0))
    P, Q = P[keep], Q[keep]
    order = np.lexsort((Q, P))
    return P[order].astype(float), Q[order].astype(float)


class KerckhoffResult(NamedTuple):
    distance: float
    curve: CurveClass
    ratio: float


def kerckhoff_search(omega: TorusPoint, omega2: TorusPoint, bound: int) -> KerckhoffResult:
    """Maximize ``Ext_Y / Ext_X`` over primitive classes in the box; ties to the lex-smallest class."""
    if bound < 1:
        raise ValueError("bound must be >= 1")
    P, Q = _class_table(int(bound))
    x, y = float(omega.re), float(omega.im)
    x2, y2 = float(omega2.re), float(omega2.im)
    ext1 = ((P + Q * x) ** 2 + (Q * y) ** 2) / y
    ext2 = ((P + Q * x2) ** 2 + (Q * y2) ** 2) / y2
    ratio = ext2 / ext1
    k = int(np.argmax(ratio))
    best = float(ratio[k])
    return KerckhoffResult(0.5 * math.log(best), CurveClass(int(P[k]), int(Q[k])), best)


def kerckhoff_sup(omega: TorusPoint, omega2: TorusPoint, bound: int) -> float:
    """``1/2 log max Ext_{omega2}(a) / Ext_omega(a)`` over classes with ``|p|, |q| <= bound``."""
    return kerckhoff_search(omega, omega2, bound).distance


class TraceRow(NamedTuple):
    t: float
    curve: CurveClass
    quantity: str        # "shrink" or "grow"
    value: object        # e^(-2t) Ext or e^(2t) Ext
    bound_low: object
    bound_high: object
    limit: object


@dataclass
class VerificationReport:
    omega: TorusPoint
    kind: Kind
    rows: List[TraceRow] = field(default_factory=list)
    failures: List[str] = field(default_factory=list)
    checks: int = 0
    max_residual_error: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.failures

    def _check(self, passed: bool, message: str):
        self.checks += 1
        if not passed:
            self.failures.append(message)


def _ge(lhs, rhs, exact: bool) -> bool:
    if exact:
        return lhs >= rhs
    return lhs >= rhs - ATOL * max(1.0, abs(float(rhs)))


def verify_limits(omega: TorusPoint, curves: Sequence[CurveClass], t_grid: Sequence,
                  direction: str = "vertical") -> VerificationReport:
    """Check the shrink and grow limits, the one-sided bound and ``Ext Ext >= i^2`` along the ray.

    Exact when ``omega`` is exact and each ``t`` is an :class:`ExactLog` with
    rational ``e^(2t)``; then every inequality is decided in rationals.
    Failures are collected in the report, never raised.
    """
    ray = ray_data_torus(omega, direction)
    report = VerificationReport(omega, ray.kind)
    curves = list(curves)
    y = ray._work.im
    for t in t_grid:
        decay = _decay(t)
        exact = omega.exact and isinstance(decay, Fraction)
        tf = float(t)
        growth = 1 / decay if exact else math.exp(2.0 * tf)
        if not exact:
            decay = float(decay)
        exts = {}
        for gamma in curves:
            ext = ray.ext_at(gamma, t)
            exts[gamma] = ext
            limit = ray.shrink_limit(gamma)
            value = decay * ext
            g = ray.working_curve(gamma)
            residual = decay * decay * g.q * g.q * y
            err = abs(float(value - limit) - float(residual))
            report.max_residual_error = max(report.max_residual_error, err)
            report._check(err <= 1e-12 * max(1.0, float(limit)),
                          f"shrink residual mismatch at t={tf:g}, {gamma}: {err:.3e}")
            report._check(_ge(value, limit, exact),
                          f"one-sided bound violated at t={tf:g}, {gamma}")
            report.rows.append(TraceRow(tf, gamma, "shrink", value, limit, None, limit))

            grown = growth * ext
            glim = ray.grow_limit(gamma)
            if glim != math.inf:
                ok = grown == glim if exact else abs(float(grown) - float(glim)) <= 1e-12 * max(1.0, float(glim))
                report._check(ok, f"grow limit mismatch at t={tf:g}, {gamma}: {float(grown)} vs {glim}")
            report.rows.append(TraceRow(tf, gamma, "grow", grown, None, None, glim))
        for i, f in enumerate(curves):
            for g in curves[i + 1:]:
                report._check(_ge(exts[f] * exts[g], f.intersection(g) ** 2, exact),
                              f"Ext*Ext < i^2 at t={tf:g} for {f}, {g}")
    return report
