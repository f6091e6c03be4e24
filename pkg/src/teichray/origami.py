"""Square-tiled surfaces (origamis) as Jenkins-Strebel sources of ray data.

An origami on ``n`` unit squares is a pair of permutations: ``r`` sends a
square to its right neighbour, ``u`` to its upper neighbour.  Squares are
0-indexed internally; JSON and the CLI use 1-indexed images.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, FrozenSet, List, NamedTuple, Optional, Sequence, Tuple

from .exactlog import ExactLog
from .foliation import (BasisFoliation, RayDecomposition, grow_limit_basis,
                        normalize)
from . import pairs

VERTICAL = "vertical"
HORIZONTAL = "horizontal"


class OrigamiError(ValueError):
    pass


class MalformedOrigami(OrigamiError):
    pass


class DisconnectedOrigami(OrigamiError):
    pass


def cycles(perm: Sequence[int]) -> List[Tuple[int, ...]]:
    """Cycles of a 0-indexed permutation, each starting at its smallest element."""
    seen = [False] * len(perm)
    out = []
    for start in range(len(perm)):
        if seen[start]:
            continue
        cyc = []
        k = start
        while not seen[k]:
            seen[k] = True
            cyc.append(k)
            k = perm[k]
        out.append(tuple(cyc))
    return out


def _is_permutation(perm, n) -> bool:
    return len(perm) == n and sorted(perm) == list(range(n))


def validate(o) -> None:
    """Raise unless ``o.r`` and ``o.u`` are permutations generating a transitive group."""
    n = len(o.r)
    if n == 0:
        raise MalformedOrigami("an origami needs at least one square")
    if not (_is_permutation(o.r, n) and _is_permutation(o.u, n)):
        raise MalformedOrigami("r and u must be permutations of the same squares")
    reached = {0}
    stack = [0]
    while stack:
        k = stack.pop()
        for nxt in (o.r[k], o.u[k]):
            if nxt not in reached:
                reached.add(nxt)
                stack.append(nxt)
    if len(reached) != n:
        raise DisconnectedOrigami(f"only {len(reached)} of {n} squares are connected to square 1")


@dataclass(frozen=True)
class Origami:
    r: Tuple[int, ...]
    u: Tuple[int, ...]

    def __post_init__(self):
        try:
            r = tuple(int(k) for k in self.r)
            u = tuple(int(k) for k in self.u)
        except (TypeError, ValueError):
            raise MalformedOrigami("permutation entries must be integers") from None
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "u", u)
        validate(self)

    @classmethod
    def from_one_indexed(cls, r: Sequence[int], u: Sequence[int]) -> "Origami":
        return cls(tuple(k - 1 for k in r), tuple(k - 1 for k in u))

    @classmethod
    def from_cycles(cls, n: int, r_cycles, u_cycles) -> "Origami":
        """Build from 1-indexed cycle notation, e.g. ``[(1, 2)]``."""
        def perm(cyc_list):
            p = list(range(n))
            for cyc in cyc_list:
                for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                    p[a - 1] = b - 1
            return tuple(p)
        return cls(perm(r_cycles), perm(u_cycles))

    @property
    def n(self) -> int:
        return len(self.r)

    def one_indexed(self) -> Tuple[List[int], List[int]]:
        return [k + 1 for k in self.r], [k + 1 for k in self.u]

    def relabel(self, sigma: Sequence[int]) -> "Origami":
        """Conjugate by the relabeling ``k -> sigma[k]``."""
        r = [0] * self.n
        u = [0] * self.n
        for k in range(self.n):
            r[sigma[k]] = sigma[self.r[k]]
            u[sigma[k]] = sigma[self.u[k]]
        return Origami(tuple(r), tuple(u))


@dataclass(frozen=True)
class Cylinder:
    direction: str
    cells: FrozenSet[int]
    width: int
    circumference: int
    core: Tuple[int, ...]   # the column (row) through the smallest cell

    def __post_init__(self):
        if self.width * self.circumference != len(self.cells):
            raise ValueError("width * circumference must equal the number of cells")

    @property
    def modulus(self) -> Fraction:
        return Fraction(self.width, self.circumference)


def _moves(o: Origami, direction: str):
    if direction == VERTICAL:
        return o.u, o.r
    if direction == HORIZONTAL:
        return o.r, o.u
    raise ValueError(f"unknown direction {direction!r}")


def cylinders(o: Origami, direction: str = VERTICAL) -> List[Cylinder]:
    """Maximal cylinders in an axis direction.

    Strips are the cycles of ``along`` (``u`` for vertical).  A strip is glued
    to its ``across`` neighbour with no cone point in between exactly when
    ``across`` and ``along`` commute on every cell of the strip; such strips
    merge.
    """
    along, across = _moves(o, direction)
    strips = cycles(along)
    strip_of = {}
    for k, s in enumerate(strips):
        for c in s:
            strip_of[c] = k
    parent = list(range(len(strips)))

    def find(k):
        while parent[k] != k:
            parent[k] = parent[parent[k]]
            k = parent[k]
        return k

    for k, s in enumerate(strips):
        if all(across[along[c]] == along[across[c]] for c in s):
            a, b = find(k), find(strip_of[across[s[0]]])
            if a != b:
                parent[max(a, b)] = min(a, b)

    groups: Dict[int, List[int]] = {}
    for k in range(len(strips)):
        groups.setdefault(find(k), []).append(k)
    out = []
    for members in groups.values():
        cells = frozenset(c for k in members for c in strips[k])
        core = strips[strip_of[min(cells)]]
        out.append(Cylinder(direction, cells, len(members), len(strips[members[0]]), core))
    out.sort(key=lambda cyl: min(cyl.cells))
    return out


def ray_data(o: Origami, direction: str = VERTICAL) -> RayDecomposition:
    """Components ``a_j = width``, ``h_j = circumference``, normalized (area ``n``)."""
    prefix = "V" if direction == VERTICAL else "H"
    cyls = cylinders(o, direction)
    raw = RayDecomposition.from_pairs(
        [(c.width, c.circumference) for c in cyls],
        ids=[f"{prefix}{k + 1}" for k in range(len(cyls))],
    )
    return normalize(raw)


def core_intersections(o: Origami) -> List[List[int]]:
    """``M[j][k]`` = cells shared by the core column of vertical cylinder j and core row of horizontal cylinder k."""
    vert = cylinders(o, VERTICAL)
    hori = cylinders(o, HORIZONTAL)
    return [[len(set(v.core) & set(h.core)) for h in hori] for v in vert]


def horizontal_pairings(o: Origami) -> List[int]:
    """``i(gamma_j^v, H(q))`` before normalization, via the intersection matrix."""
    hori = cylinders(o, HORIZONTAL)
    return [sum(h.width * m for h, m in zip(hori, row)) for row in core_intersections(o)]


class Bounds(NamedTuple):
    lower: object
    upper: object


def finite_t_bounds(o: Origami, j: int, t) -> Bounds:
    """Sandwich ``e^(-2t) h_j^2 <= Ext_{X_t}(gamma_j^v) <= e^(-2t) / m_j`` (unit-norm ``h_j``).

    Fractions when ``e^(2t)`` is exactly rational, floats otherwise.
    """
    d = ray_data(o, VERTICAL)
    if not 0 <= j < len(d):
        raise IndexError(f"cylinder index {j} out of range 0..{len(d) - 1}")
    t = ExactLog.coerce(t)
    if float(t) < 0:
        raise ValueError("t must be nonnegative")
    lower = d.unit_h_squared()[j]
    upper = 1 / d.components[j].modulus
    decay = t.exp(-2)
    if decay is None:
        decay = math.exp(-2.0 * float(t))
        return Bounds(float(lower) * decay, float(upper) * decay)
    return Bounds(lower * decay, upper * decay)


def core_grow_limits(o: Origami, direction: str = VERTICAL) -> List[Fraction]:
    """``lim e^(2t) Ext`` of each cylinder core, i.e. the reciprocal moduli."""
    d = ray_data(o, direction)
    out = []
    for j in range(len(d)):
        c = [Fraction(0)] * len(d)
        c[j] = Fraction(1)
        out.append(grow_limit_basis(d, BasisFoliation(c)))
    return out


def cone_angles(o: Origami) -> List[int]:
    """Cone angles at the vertices, in units of ``2 pi`` (one per commutator cycle)."""
    r_inv = [0] * o.n
    u_inv = [0] * o.n
    for k in range(o.n):
        r_inv[o.r[k]] = k
        u_inv[o.u[k]] = k
    comm = [o.r[o.u[r_inv[u_inv[k]]]] for k in range(o.n)]
    return sorted(len(c) for c in cycles(comm))


def genus(o: Origami) -> int:
    """Genus from Gauss-Bonnet: ``sum_v (k_v - 1) = 2g - 2``."""
    excess = sum(k - 1 for k in cone_angles(o))
    return 1 + excess // 2


@dataclass(frozen=True)
class PairReport:
    ray1: RayDecomposition
    ray2: RayDecomposition
    limiting: pairs.LogDistance
    detour: pairs.LogSum
    shift: Optional[ExactLog]
    constant: Optional[Fraction]

    @property
    def equivalent(self) -> bool:
        return self.constant is not None


def compare_rays(o1: Origami, o2: Origami, matching: Sequence[Tuple[int, int]],
                 direction: str = VERTICAL) -> PairReport:
    """Compare the rays of two origamis under a caller-asserted cylinder matching."""
    c1 = cylinders(o1, direction)
    c2 = cylinders(o2, direction)
    matching = [(int(i), int(k)) for i, k in matching]
    left = sorted(i for i, _ in matching)
    right = sorted(k for _, k in matching)
    if left != list(range(len(c1))) or right != list(range(len(c2))):
        raise ValueError("matching must be a bijection between the two cylinder lists")
    ids = [f"M{k + 1}" for k in range(len(matching))]
    d1 = normalize(RayDecomposition.from_pairs(
        [(c1[i].width, c1[i].circumference) for i, _ in matching], ids=ids))
    d2 = normalize(RayDecomposition.from_pairs(
        [(c2[k].width, c2[k].circumference) for _, k in matching], ids=ids))
    return PairReport(
        d1, d2,
        pairs.limiting_distance(d1, d2),
        pairs.detour_distance(d1, d2),
        pairs.optimal_shift(d1, d2),
        pairs.modular_equivalence(d1, d2),
    )
