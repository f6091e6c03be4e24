"""Acceptance criteria, one test each, at the stated tolerances.

Every test records a PASS/FAIL line; the lines are repeated in the terminal
summary (and printed live under ``pytest -s``).
"""

import math
import random
import time
from fractions import Fraction

import pytest

from teichray.exactlog import ExactLog
from teichray.foliation import (BasisFoliation, Kind, RayDecomposition,
                                grow_certificate, grow_limit_basis,
                                induced_pairing, moduli, optimal_witness)
from teichray.origami import (Origami, core_grow_limits, cylinders,
                              finite_t_bounds, ray_data)
from teichray.pairs import (busemann_equal, detour_distance, limiting_distance,
                            min_limiting_distance, optimal_shift, scan_shifts,
                            shifted_limiting_distance, sigma_grid)
from teichray.torus import (TorusPoint, _class_table, kerckhoff_sup,
                           primitive_classes, ray_data_torus, teich_dist_exact)

from conftest import ACCEPTANCE_LINES

F = Fraction
CURVES = primitive_classes(5)


def record(label, ok, detail):
    line = f"{'PASS' if ok else 'FAIL'}  {label}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


def random_tori(seed, count=50):
    rng = random.Random(seed)
    return [TorusPoint(rng.uniform(-1, 1), rng.uniform(0.5, 3)) for _ in range(count)]


def rational_tori(seed, count=20):
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        r = rng.randint(1, 7)
        s = rng.randint(-r, r)
        out.append(TorusPoint(F(s, r), rng.uniform(0.5, 3)))
    return out


def rand_rational(rng, lo=1, hi=10):
    return F(rng.randint(lo, hi), rng.randint(lo, hi))


def ray_from_moduli(rng, ms, ids=None):
    """Unit-norm ray with the given moduli and random heights."""
    pairs = []
    for m in ms:
        h = rand_rational(rng)
        pairs.append((m * h, h))
    return RayDecomposition.from_pairs(pairs, ids=ids, normalized=True)


# -- 1. shrink limit on random tori ---------------------------------------

T_GRID_1 = [0.5 * k for k in range(9)]   # 0 .. 4


def _shrink_table():
    rows = []
    for w in random_tori(1):
        ray = ray_data_torus(w)
        y = w.im
        for g in CURVES:
            limit = float(ray.shrink_limit(g))
            for t in T_GRID_1:
                value = math.exp(-2 * t) * ray.ext_at(g, t)
                rows.append((t, value - limit, math.exp(-4 * t) * g.q * g.q * y))
    return rows


def test_criterion_1a_residual_closed_form():
    rows = _shrink_table()
    err = max(abs(res - closed) for _, res, closed in rows)
    record("1a shrink limit residual = e^-4t q^2 y", err <= 1e-12,
           f"{len(rows)} samples, max |residual - closed form| = {err:.2e} (tol 1e-12)")


def test_criterion_1b_residual_at_t4():
    rows = _shrink_table()
    worst = max(abs(res) for t, res, _ in rows if t == 4.0)
    record("1b shrink residual at t = 4", worst <= 1e-6,
           f"max residual {worst:.3e} (tol 1e-6; closed form e^-16 q^2 y reaches "
           f"{math.exp(-16) * 25 * 3:.2e} at q = 5, y -> 3)")


def test_criterion_1c_runtime():
    start = time.perf_counter()
    _shrink_table()
    elapsed = time.perf_counter() - start
    record("1c shrink check runtime", elapsed < 1.0, f"{elapsed:.3f} s (limit 1 s)")


# -- 2. grow limit for the vertical class ----------------------------------

def test_criterion_2_grow_limit_constant():
    worst = 0.0
    count = 0
    for w in rational_tori(2):
        ray = ray_data_torus(w)
        core = ray.core
        for lam in (F(1), F(2), F(1, 3)):
            limit = grow_limit_basis(ray.decomposition, BasisFoliation([lam]))
            for t in range(9):
                # Ext(lam G) = lam^2 Ext(G)
                value = math.exp(2 * t) * float(lam) ** 2 * ray.ext_at(core, float(t))
                worst = max(worst, abs(value - float(limit)))
                count += 1
    record("2 grow limit e^2t Ext = grow_limit_basis", worst <= 1e-12,
           f"{count} samples over t = 0..8, max abs error {worst:.2e} (tol 1e-12)")


# -- 3. one-sided bound -----------------------------------------------------

def test_criterion_3_one_sided_bound():
    tori = [w.as_exact() for w in random_tori(1)] + [w.as_exact() for w in rational_tori(2)]
    grid = [ExactLog(F(math.exp(0.5 * k))) for k in range(17)]   # t = 0 .. 8
    violations = 0
    checked = 0
    for w in tori:
        ray = ray_data_torus(w)
        for g in CURVES:
            limit = ray.shrink_limit(g)
            for t in grid:
                value = t.exp(-2) * ray.ext_at(g, t)
                checked += 1
                if value < limit:
                    violations += 1
    record("3 e^-2t Ext >= shrink_limit", violations == 0,
           f"{violations} violations in {checked} exact comparisons")


# -- 4. limiting distance on the imaginary axis -----------------------------

def test_criterion_4_limiting_distance_torus():
    rng = random.Random(4)
    worst_drift = worst_gap = 0.0
    for _ in range(20):
        w = TorusPoint(0, rng.uniform(0.5, 3))
        v = TorusPoint(0, rng.uniform(0.5, 3))
        d0 = teich_dist_exact(w, v)
        ld = limiting_distance(ray_data_torus(w).decomposition,
                               ray_data_torus(v).decomposition).value
        worst_gap = max(worst_gap, abs(d0 - ld))
        for t in range(9):
            f = math.exp(-2 * t)
            dt = teich_dist_exact(TorusPoint(0, w.im * f), TorusPoint(0, v.im * f))
            worst_drift = max(worst_drift, abs(dt - d0))
    ok = worst_drift <= 1e-12 and worst_gap <= 1e-12
    record("4 d_T(X_t, Y_t) constant and = limiting distance", ok,
           f"max drift in t {worst_drift:.2e}, max gap {worst_gap:.2e} (tol 1e-12)")


# -- 5. Kerckhoff's formula -------------------------------------------------

def test_criterion_5_kerckhoff():
    rng = random.Random(5)
    pairs = []
    while len(pairs) < 20:
        w = TorusPoint(rng.uniform(-1, 1), rng.uniform(0.5, 3))
        v = TorusPoint(rng.uniform(-1, 1), rng.uniform(0.5, 3))
        if 2 * teich_dist_exact(w, v) <= 2:
            pairs.append((w, v))
    _class_table.cache_clear()
    start = time.perf_counter()
    worst = max(abs(kerckhoff_sup(w, v, 200) - teich_dist_exact(w, v)) for w, v in pairs)
    elapsed = time.perf_counter() - start
    ok = worst <= 1e-3 and elapsed < 5.0
    record("5 Kerckhoff sup (B = 200) vs exact distance", ok,
           f"max |difference| {worst:.2e} (tol 1e-3), {elapsed:.3f} s (limit 5 s)")


# -- 6. minimum over shifts -------------------------------------------------

def test_criterion_6_minimum_over_shifts():
    rng = random.Random(6)
    grid = sigma_grid(-3, 3, 1e-3)
    worst_excess = 0.0
    below = 0
    exact_failures = 0
    for _ in range(1000):
        n = rng.randint(1, 6)
        d1 = ray_from_moduli(rng, [rand_rational(rng) for _ in range(n)])
        d2 = ray_from_moduli(rng, [rand_rational(rng) for _ in range(n)])
        half = min_limiting_distance(d1, d2).as_distance()
        scan = scan_shifts(d1, d2, grid)
        excess = scan.best_distance - half.value
        worst_excess = max(worst_excess, excess)
        if excess < -1e-12:
            below += 1
        if not shifted_limiting_distance(d1, d2, optimal_shift(d1, d2)).same_value(half):
            exact_failures += 1
    ok = worst_excess <= 5e-3 and below == 0 and exact_failures == 0
    record("6 grid minimum vs half detour, sigma* exact", ok,
           f"max excess {worst_excess:.2e} (tol 5e-3), {below} below the bound, "
           f"{exact_failures} inexact sigma*")


# -- 7. equivalence dichotomy -----------------------------------------------

def test_criterion_7_equivalence_dichotomy():
    rng = random.Random(7)
    wrong = 0
    for _ in range(1000):
        n = rng.randint(2, 6)
        base = [rand_rational(rng) for _ in range(n)]
        c = rand_rational(rng, 1, 20)
        d2 = ray_from_moduli(rng, base)
        d1 = ray_from_moduli(rng, [c * m for m in base])
        shifted = shifted_limiting_distance(d1, d2, optimal_shift(d1, d2))
        if not (detour_distance(d1, d2).is_zero() and shifted.is_zero() and busemann_equal(d1, d2)):
            wrong += 1
        j = rng.randrange(n)
        ms = list(moduli(d1))
        eps = F(rng.choice([-1, 1]) * rng.randint(1, 50), rng.randint(51, 100)) * ms[j]
        ms[j] += eps
        d3 = ray_from_moduli(rng, ms)
        shifted = shifted_limiting_distance(d3, d2, optimal_shift(d3, d2))
        if detour_distance(d3, d2).is_zero() or shifted.is_zero() or busemann_equal(d3, d2):
            wrong += 1
    record("7 equivalent pairs vs perturbed pairs", wrong == 0,
           f"{wrong} wrong verdicts in 2000 exact checks")


# -- 8. metric axioms for the detour distance -------------------------------

def test_criterion_8_metric_axioms():
    rng = random.Random(8)
    asym = tri = 0
    for _ in range(1000):
        n = rng.randint(1, 6)
        a, b, c = (ray_from_moduli(rng, [rand_rational(rng) for _ in range(n)]) for _ in range(3))
        ab, ba = detour_distance(a, b), detour_distance(b, a)
        if (ab.forward, ab.backward) != (ba.backward, ba.forward) or \
                not ab.as_distance().same_value(ba.as_distance()):
            asym += 1
        ac, bc = detour_distance(a, c), detour_distance(b, c)
        if ac.forward * ac.backward > ab.forward * ab.backward * bc.forward * bc.backward:
            tri += 1
    record("8 detour distance symmetric and triangular", asym == 0 and tri == 0,
           f"{asym} asymmetric pairs, {tri} triangle violations in 1000 triples")


# -- 9. origami ground truth -------------------------------------------------

def test_criterion_9_origami():
    L = Origami.from_one_indexed([2, 1, 3], [3, 2, 1])
    problems = []
    if [(c.width, c.circumference) for c in cylinders(L)] != [(1, 2), (1, 1)]:
        problems.append("cylinders")
    d = ray_data(L)
    if moduli(d) != (F(1, 2), F(1)):
        problems.append("moduli")
    if core_grow_limits(L) != [2, 1]:
        problems.append("core grow limits")
    for j in range(len(d)):
        for t in (0, 1, 2, 4):
            t_exact = ExactLog.coerce(t)
            lo, hi = finite_t_bounds(L, j, t_exact)
            grow = t_exact.exp(2)
            if not (isinstance(lo, Fraction) and lo <= hi):
                problems.append(f"sandwich j={j} t={t}")
            if hi * grow != core_grow_limits(L)[j] or lo * grow != d.unit_h_squared()[j]:
                problems.append(f"bounds j={j} t={t}")
    torus = ray_data_torus(TorusPoint(0, 1)).decomposition
    one = ray_data(Origami.from_one_indexed([1], [1]))
    if (one.a, one.h, moduli(one), one.components[0].kind) != \
            (torus.a, torus.h, moduli(torus), Kind.CYLINDER):
        problems.append("square torus")
    record("9 origami ground truth", not problems,
           "all exact checks agree" if not problems else ", ".join(problems))


# -- 10. certificate ceiling -------------------------------------------------

def test_criterion_10_cauchy_schwarz():
    rng = random.Random(10)
    above = missed = false_eq = 0
    for _ in range(1000):
        n = rng.randint(1, 6)
        d = RayDecomposition.from_pairs([(rand_rational(rng), rand_rational(rng)) for _ in range(n)],
                                        normalized=True)
        c = [F(rng.randint(0, 9), rng.randint(1, 9)) for _ in range(n)]
        if not any(c):
            c[0] = F(1)
        u = [F(rng.randint(0, 9), rng.randint(1, 9)) for _ in range(n)]
        if not any(u):
            u[-1] = F(1)
        ceiling = grow_limit_basis(d, c)
        cert = grow_certificate(d, induced_pairing(c, u), u).value
        w = list(optimal_witness(d, c))
        proportional = any(u[k] for k in range(n)) and all(
            u[k] * w[j] == u[j] * w[k] for j in range(n) for k in range(n))
        if cert > ceiling:
            above += 1
        if (cert == ceiling) != proportional:
            false_eq += 1
        lam = rand_rational(rng)
        scaled = [lam * x for x in w]
        if grow_certificate(d, induced_pairing(c, scaled), scaled).value != ceiling:
            missed += 1
    ok = above == 0 and missed == 0 and false_eq == 0
    record("10 certificates <= grow limit, equality at the optimal witness", ok,
           f"{above} above the ceiling, {missed} witnesses missing it, "
           f"{false_eq} equality cases off the witness ray")
