"""Ray decompositions and the single-ray extremal length limits.

A Teichmueller ray is described by its vertical foliation written over its
indecomposable components, ``V(q) = sum_j a_j G_j``, together with the
pairings ``h_j = i(G_j, H(q))`` against the horizontal foliation.

Unit norm (``sum_j a_j h_j = 1``) is kept symbolically: the stored values are
the true ones multiplied by ``sqrt(area)`` where ``area = sum_j a_j h_j`` of
the stored values.  Every formula below depends on the data only through the
moduli ``m_j = a_j / h_j`` and the squares ``a_j**2 / area``,
``h_j**2 / area``, so all results stay rational.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, NamedTuple, Optional, Sequence, Tuple, Union

from .exactlog import INF, ExactLog, as_fraction


class Kind(str, Enum):
    CYLINDER = "cylinder"
    MINIMAL = "minimal-ergodic"


class UndefinedRatio(ValueError):
    """Raised for ``0/0``, which has no value under the ``c/0 = inf`` convention."""


@dataclass(frozen=True)
class Component:
    id: str
    a: Fraction
    h: Fraction
    kind: Kind = Kind.CYLINDER

    def __post_init__(self):
        object.__setattr__(self, "id", str(self.id))
        object.__setattr__(self, "a", as_fraction(self.a))
        object.__setattr__(self, "h", as_fraction(self.h))
        object.__setattr__(self, "kind", Kind(self.kind))
        if self.a <= 0 or self.h <= 0:
            raise ValueError(f"component {self.id}: a and h must be positive")

    @property
    def modulus(self) -> Fraction:
        return self.a / self.h


@dataclass(frozen=True)
class RayDecomposition:
    components: Tuple[Component, ...]
    normalized: bool = False

    def __post_init__(self):
        comps = tuple(self.components)
        if not comps:
            raise ValueError("a ray decomposition needs at least one component")
        ids = [c.id for c in comps]
        if len(set(ids)) != len(ids):
            raise ValueError(f"duplicate component ids in {ids}")
        object.__setattr__(self, "components", comps)

    @classmethod
    def from_pairs(cls, pairs, ids=None, kind=Kind.CYLINDER, normalized=False):
        """Build from ``[(a, h), ...]``; ids default to ``C1, C2, ...``."""
        pairs = list(pairs)
        if ids is None:
            ids = [f"C{k + 1}" for k in range(len(pairs))]
        return cls(
            tuple(Component(i, a, h, kind) for i, (a, h) in zip(ids, pairs)),
            normalized,
        )

    def __len__(self):
        return len(self.components)

    @property
    def ids(self) -> Tuple[str, ...]:
        return tuple(c.id for c in self.components)

    @property
    def a(self) -> Tuple[Fraction, ...]:
        return tuple(c.a for c in self.components)

    @property
    def h(self) -> Tuple[Fraction, ...]:
        return tuple(c.h for c in self.components)

    @property
    def area(self) -> Fraction:
        """``sum_j a_j h_j`` of the stored values (the norm of the differential they describe)."""
        return sum((c.a * c.h for c in self.components), Fraction(0))

    def unit_a_squared(self) -> Tuple[Fraction, ...]:
        s = self.area
        return tuple(c.a * c.a / s for c in self.components)

    def unit_h_squared(self) -> Tuple[Fraction, ...]:
        s = self.area
        return tuple(c.h * c.h / s for c in self.components)

    def equivalent(self, other: "RayDecomposition") -> bool:
        """Same ids, kinds and unit-norm values, regardless of stored scale."""
        return (
            self.ids == other.ids
            and all(c.kind == d.kind for c, d in zip(self.components, other.components))
            and self.unit_a_squared() == other.unit_a_squared()
            and self.unit_h_squared() == other.unit_h_squared()
        )


class _Vector:
    """Immutable index-aligned tuple of exact rationals."""

    __slots__ = ("values",)

    def __init__(self, values: Iterable):
        vals = tuple(as_fraction(v) for v in values)
        self._check(vals)
        object.__setattr__(self, "values", vals)

    def _check(self, vals):
        pass

    def __setattr__(self, name, value):
        raise AttributeError(f"{type(self).__name__} is immutable")

    def __iter__(self):
        return iter(self.values)

    def __len__(self):
        return len(self.values)

    def __getitem__(self, k):
        return self.values[k]

    def __eq__(self, other):
        if isinstance(other, _Vector):
            return type(self) is type(other) and self.values == other.values
        if isinstance(other, (tuple, list)):
            return self.values == tuple(other)
        return NotImplemented

    def __hash__(self):
        return hash((type(self).__name__, self.values))

    def __repr__(self):
        return f"{type(self).__name__}({[str(v) for v in self.values]})"


class ModulusVector(_Vector):
    def _check(self, vals):
        if any(v <= 0 for v in vals):
            raise ValueError("moduli must be positive")


class BasisFoliation(_Vector):
    """``F = sum_j c_j G_j`` with ``c_j >= 0``, not all zero."""

    def _check(self, vals):
        if any(v < 0 for v in vals):
            raise ValueError("basis coefficients must be nonnegative")
        if not any(vals):
            raise ValueError("the zero foliation is not a measured foliation")


class IntersectionVector(_Vector):
    """Pairings ``u_j = i(G_j, F)``."""

    def _check(self, vals):
        if any(v < 0 for v in vals):
            raise ValueError("intersection numbers must be nonnegative")


@dataclass(frozen=True)
class ExtendedValue:
    """A limit value: exact rational, ``+inf``, or a certified lower bound."""

    value: Union[Fraction, float]
    lower_bound: bool = False
    exactness: str = "exact"

    def __post_init__(self):
        if self.value != INF:
            object.__setattr__(self, "value", as_fraction(self.value))
        elif self.lower_bound:
            raise ValueError("a lower bound cannot be +inf")
        if self.exactness not in ("exact", "certificate-only"):
            raise ValueError(f"unknown exactness {self.exactness!r}")

    @property
    def infinite(self) -> bool:
        return self.value == INF

    def __float__(self):
        return float(self.value)


class RootValue(NamedTuple):
    square: Fraction
    root: float


@dataclass(frozen=True)
class Certificate:
    """A concrete ``F'`` given by ``i(F, F')`` and its pairings ``u'_j = i(G_j, F')``."""

    pairing: Fraction
    witness: IntersectionVector

    def __post_init__(self):
        object.__setattr__(self, "pairing", as_fraction(self.pairing))
        if self.pairing < 0:
            raise ValueError("pairing must be nonnegative")
        if not isinstance(self.witness, IntersectionVector):
            object.__setattr__(self, "witness", IntersectionVector(self.witness))


@dataclass(frozen=True)
class GeneralFoliation:
    """A foliation known only through its pairings with the components."""

    u: IntersectionVector
    certificates: Tuple[Certificate, ...] = ()

    def __post_init__(self):
        if not isinstance(self.u, IntersectionVector):
            object.__setattr__(self, "u", IntersectionVector(self.u))
        object.__setattr__(self, "certificates", tuple(self.certificates))


def _aligned(d: RayDecomposition, vec, cls):
    if not isinstance(vec, cls):
        vec = cls(vec)
    if len(vec) != len(d):
        raise ValueError(f"expected {len(d)} entries, got {len(vec)}")
    return vec


def _is_rational_square(x: Fraction) -> Optional[Fraction]:
    rn, rd = math.isqrt(x.numerator), math.isqrt(x.denominator)
    if rn * rn == x.numerator and rd * rd == x.denominator:
        return Fraction(rn, rd)
    return None


def normalize(raw: RayDecomposition) -> RayDecomposition:
    """Mark ``raw`` as a unit-norm ray, rescaling exactly when ``sqrt(area)`` is rational.

    >>> d = normalize(RayDecomposition.from_pairs([(2, 2)]))
    >>> (d.a, d.h)
    ((Fraction(1, 1), Fraction(1, 1)), (Fraction(1, 1), Fraction(1, 1)))
    """
    root = _is_rational_square(raw.area)
    if root is None or root == 1:
        comps = raw.components
    else:
        comps = tuple(Component(c.id, c.a / root, c.h / root, c.kind) for c in raw.components)
    return RayDecomposition(comps, normalized=True)


def moduli(d: RayDecomposition) -> ModulusVector:
    return ModulusVector(c.modulus for c in d.components)


def flow(d: RayDecomposition, t) -> RayDecomposition:
    """Move ``t`` along the ray: ``a_j -> e^t a_j``, ``h_j -> e^-t h_j``.

    ``t`` is a float or an :class:`ExactLog`.  Exact whenever ``e^(2t)`` is
    rational; a float ``t`` uses the exact binary64 value of ``e^t``.
    """
    t = ExactLog.coerce(t)
    et = t.exp(1)
    if et is not None:
        comps = tuple(Component(c.id, c.a * et, c.h / et, c.kind) for c in d.components)
    else:
        e2t = t.exp(2)
        if e2t is None:
            # e^(2t) irrational: fall back to its binary64 value
            et = Fraction(math.exp(float(t)))
            comps = tuple(Component(c.id, c.a * et, c.h / et, c.kind) for c in d.components)
        else:
            # stored scale absorbs e^t: (a e^2t, h) over area e^2t * s
            comps = tuple(Component(c.id, c.a * e2t, c.h, c.kind) for c in d.components)
    return RayDecomposition(comps, d.normalized)


def shrink_limit(d: RayDecomposition, u) -> Fraction:
    """``lim e^(-2t) Ext_{X_t}(F) = sum_j a_j u_j**2 / h_j`` for ``u_j = i(G_j, F)``."""
    u = _aligned(d, u, IntersectionVector)
    return sum((c.modulus * x * x for c, x in zip(d.components, u)), Fraction(0))


def e_q(d: RayDecomposition, u) -> RootValue:
    s = shrink_limit(d, u)
    return RootValue(s, math.sqrt(s))


def grow_limit_basis(d: RayDecomposition, c) -> Fraction:
    """``lim e^(2t) Ext_{X_t}(F) = sum_j c_j**2 h_j / a_j`` for ``F = sum_j c_j G_j``."""
    c = _aligned(d, c, BasisFoliation)
    return sum((x * x / comp.modulus for comp, x in zip(d.components, c)), Fraction(0))


def optimal_witness(d: RayDecomposition, c) -> IntersectionVector:
    """Pairings of the ``F'`` solving ``a_j i(G_j, F') = c_j h_j``; it attains the grow limit."""
    c = _aligned(d, c, BasisFoliation)
    return IntersectionVector(x / comp.modulus for comp, x in zip(d.components, c))


def induced_pairing(c, u_prime) -> Fraction:
    """``i(F, F') = sum_j c_j u'_j`` for a basis foliation ``F``."""
    return sum((as_fraction(x) * as_fraction(y) for x, y in zip(c, u_prime)), Fraction(0))


def grow_certificate(d: RayDecomposition, pairing, u_prime) -> ExtendedValue:
    """One term ``i(F,F')**2 / sum_j a_j u'_j**2 / h_j`` of the grow-limit supremum."""
    pairing = as_fraction(pairing)
    if pairing < 0:
        raise ValueError("pairing must be nonnegative")
    den = shrink_limit(d, u_prime)
    if den == 0:
        if pairing == 0:
            raise UndefinedRatio("0/0 certificate carries no information")
        return ExtendedValue(INF)
    return ExtendedValue(pairing * pairing / den)


def grow_limit(d: RayDecomposition, F) -> ExtendedValue:
    """``lim e^(2t) Ext_{X_t}(F)``.

    Exact for basis foliations and ``+inf`` for foliations crossing ``V(q)``.
    For any other foliation only the best of the supplied certificates is
    returned, as a lower bound.
    """
    if isinstance(F, BasisFoliation):
        return ExtendedValue(grow_limit_basis(d, F))
    if not isinstance(F, GeneralFoliation):
        raise TypeError("F must be a BasisFoliation or GeneralFoliation")
    u = _aligned(d, F.u, IntersectionVector)
    if any(u):
        return ExtendedValue(INF)
    if not F.certificates:
        raise ValueError("a foliation disjoint from V(q) needs at least one certificate")
    best = None
    for cert in F.certificates:
        try:
            v = grow_certificate(d, cert.pairing, cert.witness).value
        except UndefinedRatio:
            continue
        if best is None or v > best:
            best = v
    if best is None:
        raise UndefinedRatio("every certificate is 0/0")
    if best == INF:
        # only possible if the caller's F actually crosses V(q)
        return ExtendedValue(INF)
    return ExtendedValue(best, lower_bound=True, exactness="certificate-only")
