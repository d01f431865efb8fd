import random

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from morita.cw import attach_cell, cellular_model, cp, rp, torus, wedge_of_circles
from morita.dga import D, D_star, Generator, S, S_star, make_algebra
from morita.fields import GF, QQ
from morita.ncpoly import NCPoly

settings.register_profile("default", max_examples=100, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def mix_algebra(field=QQ):
    return make_algebra([Generator("x1", 1), Generator("y2", 2), Generator("z4", 4)],
                        {"z4": "x1*y2 - y2*x1"}, field)


def positive_pool(field=QQ):
    """Algebras with every generator in degree >= 1."""
    return [S(1, field), S(2, field), S(3, field), D(2, field), D(3, field),
            cellular_model(cp(2, field)), cellular_model(cp(3, field)), mix_algebra(field)]


def bounded_pool(field=QQ):
    """Algebras with inverse pairs; any basis needs a word bound."""
    return [S_star(field), D_star(field), cellular_model(rp(2, field)),
            cellular_model(torus(field)), cellular_model(wedge_of_circles(2, field))]


POSITIVE = positive_pool()
BOUNDED = bounded_pool()


def random_element(A, n, rng, bound=None, terms=3):
    """A random homogeneous element of degree n (possibly zero)."""
    words = A.basis_words(n, bound)
    F = A.field
    p = NCPoly.zero(F)
    if not words:
        return p
    for _ in range(rng.randint(1, terms)):
        w = rng.choice(words)
        p = p + NCPoly.word(w, F(rng.randint(-3, 3)), F)
    return p


def random_extension(A, rng, bound=None):
    """A with one extra cell whose attaching cycle is the boundary of a random element."""
    n = rng.randint(3, 5)
    z = random_element(A, n - 1, rng, bound)
    y = A.differential(z)
    name = "c%d" % rng.randint(0, 10**6)
    return attach_cell(A, n, y, name=name)


@st.composite
def positive_algebras(draw, extend=True):
    A = draw(st.sampled_from(POSITIVE))
    if extend and draw(st.booleans()):
        A = random_extension(A, random.Random(draw(st.integers(0, 10**6))))
    return A


@pytest.fixture
def rng():
    return random.Random(20240601)


@pytest.fixture
def F2():
    return GF(2)


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
