import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import positive_algebras
from morita.cw import (CWComplex, CWError, Cell, NotACycle, attach_cell, builtin_space,
                       cellular_model, cp, cw_from_dict, cw_to_dict, glue, inclusion, rp,
                       sphere, torus, wedge_of_circles)
from morita.dga import D, D_star, S, S_star, algebra_homology
from morita.fields import GF


def _same(A, B):
    return A.generators == B.generators and A.diff == B.diff


def test_builtin_models():
    assert _same(cellular_model(sphere(1)), S_star())
    assert _same(cellular_model(sphere(3)), S(2))
    C = cellular_model(cp(3))
    assert C.diff["alpha5"] == C.poly("alpha3*alpha1 + alpha1*alpha3")
    T = cellular_model(torus())
    assert T.diff["t1"] == T.poly("a*b*a^-1*b^-1 - 1")
    assert builtin_space("cp:2") == cp(2)
    assert builtin_space("sphere", 2) == sphere(2)


def test_euler_characteristics():
    assert [sphere(n).euler_characteristic() for n in (1, 2, 3)] == [0, 2, 0]
    assert cp(3).euler_characteristic() == 4
    assert torus().euler_characteristic() == 0
    assert wedge_of_circles(3).euler_characteristic() == -2


def test_attach_to_rp2_gives_rp3():
    A = attach_cell(cellular_model(rp(2)), 3, "0", name="c2")
    assert _same(A, cellular_model(rp(3)))


def test_attach_to_circle_algebra_gives_cp2():
    A = attach_cell(S(1, name="alpha1"), 4, "alpha1*alpha1", name="alpha3")
    assert _same(A, cellular_model(cp(2)))


def test_non_cycle_is_rejected():
    with pytest.raises(NotACycle):
        attach_cell(cellular_model(cp(2)), 5, "alpha3")


def test_attach_degree_and_shape_checks():
    A = cellular_model(cp(2))
    with pytest.raises(CWError, match="degree"):
        attach_cell(A, 4, "alpha3")
    with pytest.raises(CWError, match="w - 1"):
        attach_cell(S_star(), 2, "a + a")
    with pytest.raises(CWError, match="unknown cell"):
        attach_cell(A, 4, "alpha1*beta")


def test_reduced_structure_required():
    with pytest.raises(CWError, match="reduced CW structure required"):
        CWComplex("two points", (Cell("p", 0), Cell("q", 0)))
    with pytest.raises(CWError, match="skeletal order"):
        CWComplex("X", (Cell("e0", 0), Cell("b", 2, "0"), Cell("a", 1)))


def test_gluing_discs_gives_a_sphere():
    f = inclusion(S(1), D(2))
    G = glue(f, inclusion(S(1), D(2)))
    assert [g.name for g in G.generators] == ["x1", "x2", "x2'"]
    assert algebra_homology(G, 5).dims == algebra_homology(S(2), 5).dims


def test_gluing_degree_zero_discs():
    G = glue(inclusion(S_star(), D_star()), inclusion(S_star(), D_star()))
    assert [g.name for g in G.generators] == ["a", "a^-1", "b", "b'"]
    assert G.diff["b'"] == G.poly("a - 1")


def test_glue_rejects_mismatched_fields():
    with pytest.raises(CWError):
        glue(inclusion(S(1), D(2)), inclusion(S(1, GF(2)), D(2, GF(2))))


def test_document_round_trip_and_errors():
    doc = cw_to_dict(cp(2))
    assert doc["cells"][2] == {"id": "alpha3", "dim": 4, "attach_cycle": "alpha1*alpha1"}
    assert cw_from_dict(doc) == cp(2)
    bad = {"cells": [{"id": "e0", "dim": 0}, {"id": "a", "dim": 1, "attach_word": "a"}]}
    with pytest.raises(CWError, match=r"cells\[1\]"):
        cw_from_dict(bad)
    with pytest.raises(CWError, match="unknown top-level"):
        cw_from_dict({"cells": [{"id": "e0", "dim": 0}], "extra": 1})


@given(positive_algebras(), st.integers(2, 5))
def test_cancelling_pair_changes_nothing(A, n):
    """A cell and a cell killing it: chi is unchanged and so is loop homology."""
    B = attach_cell(A, n, None, name="u")
    B = attach_cell(B, n + 1, "u", name="v")
    assert algebra_homology(B, 5).dims == algebra_homology(A, 5).dims


@given(st.integers(0, 2**32))
def test_euler_characteristic_of_random_complexes(seed):
    rng = random.Random(seed)
    cells = [Cell("e0", 0)]
    for i in range(rng.randint(0, 6)):
        cells.append(Cell(f"s{i}", rng.randint(3, 6), "0"))
    cells.sort(key=lambda c: c.dim)
    X = CWComplex("X", tuple(cells))
    A = cellular_model(X)
    # with zero attaching maps the model is free on the cells, each contributing (-1)^dim
    assert X.euler_characteristic() == 1 + sum((-1) ** (g.degree + 1) for g in A.generators)
    assert X.skeleton(4).euler_characteristic() == \
        1 + sum((-1) ** c.dim for c in cells if 0 < c.dim <= 4)
