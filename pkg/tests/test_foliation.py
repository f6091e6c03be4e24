import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from teichray.exactlog import INF, ExactLog, as_fraction, compare_logs
from teichray.foliation import (BasisFoliation, Certificate, Component,
                                GeneralFoliation, IntersectionVector, Kind,
                                ModulusVector, RayDecomposition, UndefinedRatio,
                                e_q, flow, grow_certificate, grow_limit,
                                grow_limit_basis, induced_pairing, moduli,
                                normalize, optimal_witness, shrink_limit)

from conftest import decompositions, nonneg_rationals, positive_rationals, ray

F = Fraction


# -- exact logs ------------------------------------------------------------

def test_as_fraction_accepts_exact_and_rejects_floats():
    assert as_fraction("3/4") == F(3, 4)
    assert as_fraction(5) == F(5)
    with pytest.raises(TypeError):
        as_fraction(0.5)
    with pytest.raises(TypeError):
        as_fraction(True)
    with pytest.raises(ValueError):
        as_fraction("1/0")


def test_compare_logs_uses_common_exponent():
    # 1/4 log 4 == 1/2 log 2
    assert compare_logs(F(1, 4), F(4), F(1, 2), F(2)) == 0
    assert compare_logs(F(1, 3), F(9), F(1, 2), F(2)) == 1
    assert compare_logs(F(1, 2), INF, F(1, 2), F(10**9)) == 1


def test_exactlog_exp():
    t = ExactLog(F(3), F(1, 2))
    assert t.exp(2) == 3
    assert t.exp(1) is None
    assert t.exp(-2) == F(1, 3)
    assert ExactLog.from_float(0.0).is_zero()


# -- decompositions --------------------------------------------------------

def test_component_rejects_nonpositive():
    with pytest.raises(ValueError):
        Component("C", F(0), F(1))
    with pytest.raises(ValueError):
        Component("C", F(1), F(-1))


def test_decomposition_requires_unique_ids():
    with pytest.raises(ValueError):
        RayDecomposition.from_pairs([(1, 1), (1, 1)], ids=["A", "A"])
    with pytest.raises(ValueError):
        RayDecomposition(())


def test_modulus_vector_checks():
    with pytest.raises(ValueError):
        ModulusVector([1, 0])
    with pytest.raises(ValueError):
        BasisFoliation([0, 0])
    with pytest.raises(ValueError):
        IntersectionVector([1, -1])


def test_normalize_square_area():
    d = normalize(RayDecomposition.from_pairs([(2, 2)]))
    assert d.a == (1,) and d.h == (1,)
    d = normalize(RayDecomposition.from_pairs([(1, 1), (1, 2)]))
    # area 3 is not a square: kept symbolically
    assert d.area == 3 and d.normalized
    assert d.unit_h_squared() == (F(1, 3), F(4, 3))


@given(decompositions())
def test_normalize_preserves_moduli_and_unit_area(d):
    n = normalize(d)
    assert moduli(n) == moduli(d)
    # (a^2/area)(h^2/area) = (a h / area)^2, so the roots sum to one
    assert sum(math.sqrt(a * h) for a, h in zip(n.unit_a_squared(), n.unit_h_squared())) == pytest.approx(1)


# -- single-ray limits -----------------------------------------------------

def test_shrink_limit_example():
    # two cylinders (a, h) = (1, 2), (1, 1): moduli 1/2, 1
    d = ray([(1, 2), (1, 1)])
    assert shrink_limit(d, [2, 1]) == F(1, 2) * 4 + 1
    assert e_q(d, [2, 1]).square == 3
    assert e_q(d, [2, 1]).root == pytest.approx(math.sqrt(3))


def test_grow_limit_basis_example():
    d = ray([(1, 2), (1, 1)])
    assert grow_limit_basis(d, [1, 0]) == 2
    assert grow_limit_basis(d, [0, 1]) == 1
    assert grow_limit_basis(d, [1, 1]) == 3
    assert grow_limit_basis(d, [F(1, 2), 0]) == F(1, 2)


def test_length_mismatch_rejected():
    d = ray([(1, 2), (1, 1)])
    with pytest.raises(ValueError):
        shrink_limit(d, [1])
    with pytest.raises(ValueError):
        grow_limit_basis(d, [1, 0, 0])


def test_optimal_witness_attains():
    d = ray([(1, 2), (1, 1)])
    c = [1, 1]
    w = optimal_witness(d, c)
    assert w == (2, 1)
    cert = grow_certificate(d, induced_pairing(c, w), w)
    assert cert.value == grow_limit_basis(d, c)


def test_grow_certificate_edge_cases():
    d = ray([(1, 1)])
    assert grow_certificate(d, 1, [0]).value == INF
    with pytest.raises(UndefinedRatio):
        grow_certificate(d, 0, [0])
    with pytest.raises(ValueError):
        grow_certificate(d, -1, [1])


def test_grow_limit_dispatch():
    d = ray([(1, 2), (1, 1)])
    assert grow_limit(d, BasisFoliation([1, 0])).value == 2
    assert grow_limit(d, GeneralFoliation([1, 0])).value == INF
    with pytest.raises(ValueError):
        grow_limit(d, GeneralFoliation([0, 0]))
    lb = grow_limit(d, GeneralFoliation([0, 0], (Certificate(1, [1, 0]), Certificate(0, [0, 0]),
                                                Certificate(2, [1, 1]))))
    assert lb.lower_bound and lb.exactness == "certificate-only"
    assert lb.value == F(8, 3)   # 4 / (1/2 + 1)
    with pytest.raises(UndefinedRatio):
        grow_limit(d, GeneralFoliation([0, 0], (Certificate(0, [0, 0]),)))


# -- flow ------------------------------------------------------------------

def test_flow_exact_when_et_rational():
    d = ray([(1, 2), (1, 1)])
    f = flow(d, ExactLog(F(2)))
    assert f.a == (2, 2) and f.h == (1, F(1, 2))
    assert moduli(f) == (2, 4)


def test_flow_exact_when_only_e2t_rational():
    d = ray([(1, 1)])
    f = flow(d, ExactLog(F(2), F(1, 2)))   # e^t = sqrt 2
    assert moduli(f) == (2,)


@given(decompositions(), st.sampled_from([F(1, 3), F(2), F(5, 2), F(7)]),
       st.lists(nonneg_rationals, min_size=6, max_size=6))
def test_flow_scales_limits(d, r, u):
    # along the ray e^(-2s) shrink scales by e^(-2s) in moduli: m -> e^(2s) m
    s = ExactLog(r, F(1, 2))
    f = flow(d, s)
    u = u[:len(d)]
    assert moduli(f) == tuple(m * r for m in moduli(d))
    assert shrink_limit(f, u) == r * shrink_limit(d, u)


@given(decompositions(), positive_rationals, st.lists(nonneg_rationals, min_size=6, max_size=6))
def test_homogeneity(d, lam, u):
    u = u[:len(d)]
    assert shrink_limit(d, [lam * x for x in u]) == lam ** 2 * shrink_limit(d, u)
    c = [x + 1 for x in u]
    assert grow_limit_basis(d, [lam * x for x in c]) == lam ** 2 * grow_limit_basis(d, c)


@settings(max_examples=200)
@given(decompositions(), st.lists(nonneg_rationals, min_size=6, max_size=6),
       st.lists(nonneg_rationals, min_size=6, max_size=6))
def test_certificate_never_exceeds_grow_limit(d, c, w):
    n = len(d)
    c, w = c[:n], w[:n]
    if not any(c) or not any(w):
        return
    cert = grow_certificate(d, induced_pairing(c, w), w)
    assert cert.value <= grow_limit_basis(d, c)
