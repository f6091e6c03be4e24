from fractions import Fraction

import pytest
from hypothesis import strategies as st

from teichray.foliation import Kind, RayDecomposition
from teichray.origami import Origami

ACCEPTANCE_LINES = []


def ray(pairs, ids=None, normalized=True):
    return RayDecomposition.from_pairs(pairs, ids=ids, normalized=normalized)


def ray_with_moduli(ms, ids=None):
    """Decomposition with ``a_j = m_j``, ``h_j = 1``."""
    return ray([(m, 1) for m in ms], ids=ids)


positive_rationals = st.builds(
    Fraction, st.integers(min_value=1, max_value=60), st.integers(min_value=1, max_value=60)
)
nonneg_rationals = st.builds(
    Fraction, st.integers(min_value=0, max_value=40), st.integers(min_value=1, max_value=40)
)


@st.composite
def decompositions(draw, min_size=1, max_size=6):
    n = draw(st.integers(min_value=min_size, max_value=max_size))
    pairs = [(draw(positive_rationals), draw(positive_rationals)) for _ in range(n)]
    return ray(pairs)


@st.composite
def aligned_triples(draw, max_size=6):
    n = draw(st.integers(min_value=1, max_value=max_size))
    return tuple(ray_with_moduli([draw(positive_rationals) for _ in range(n)]) for _ in range(3))


@pytest.fixture
def l_origami():
    # squares A, B, C = 1, 2, 3;  r = (A B)(C),  u = (A C)(B)
    return Origami.from_one_indexed([2, 1, 3], [3, 2, 1])


@pytest.fixture
def square_torus():
    return Origami.from_one_indexed([1], [1])


@pytest.fixture
def two_by_two():
    return Origami.from_cycles(4, [(1, 2), (3, 4)], [(1, 3), (2, 4)])


@pytest.fixture
def doubled_l():
    # L with its two-square column doubled: bottom row 1 2 3, top row 4 5
    return Origami.from_cycles(5, [(1, 2, 3), (4, 5)], [(1, 4), (2, 5)])


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
