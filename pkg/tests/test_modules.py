import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import positive_algebras
from morita.chain import EXACT, STABLE, ChainComplex
from morita.cw import cellular_model, cp, glue, inclusion, rp, sphere, torus
from morita.dga import D_star, Generator, S, S_star, make_algebra
from morita.fields import GF, QQ
from morita.modules import (CompatibilityError, MonodromyPair, NotInvertible,
                            RepresentationError, bar_ext_oracle, derived_hom,
                            derived_hom_complex, make_representation, monodromy_hom,
                            random_monodromy_pair, semifree_resolution, trivial_module)

k_complex = ChainComplex({0: 1})


def ext_kk(A, top):
    k = trivial_module(A)
    return derived_hom(A, k, k, top).as_tuple()


@pytest.mark.parametrize("space,field,expect", [
    (sphere(2), QQ, (1, 0, 1)),
    (sphere(3), QQ, (1, 0, 0, 1)),
    (cp(2), QQ, (1, 0, 1, 0, 1)),
    (rp(2, GF(2)), GF(2), (1, 1, 1)),
    (rp(2), QQ, (1, 0, 0)),
    (torus(), QQ, (1, 2, 1)),
])
def test_ext_recovers_cohomology(space, field, expect):
    assert ext_kk(cellular_model(space), len(expect) - 1) == expect


@pytest.mark.parametrize("A", [S(1), S(2), S(3), cellular_model(cp(2)), cellular_model(cp(3))],
                         ids=["S1", "S2", "S3", "CP2", "CP3"])
def test_ext_matches_bar_oracle(A):
    assert ext_kk(A, 5) == bar_ext_oracle(A, 5).as_tuple()


def test_zero_monodromy_is_rejected():
    with pytest.raises(NotInvertible):
        make_representation(S_star(), k_complex, {"a": [[0]]})


def test_incompatible_action_is_rejected():
    with pytest.raises(CompatibilityError):
        make_representation(D_star(), k_complex, {"a": [[2]], "b": [[0]]})
    with pytest.raises(RepresentationError):
        make_representation(S(1), k_complex, {"x1": [[1]]})


def test_inverse_action_is_filled_in():
    rep = make_representation(S_star(), ChainComplex({0: 2}), {"a": [[1, 1], [0, 1]]})
    assert rep.action["a^-1"] == [[1, -1], [0, 1]]


def test_monodromy_examples():
    one = MonodromyPair(k_complex, [[1]])
    assert monodromy_hom(one, one).as_tuple() == (1, 1)
    assert monodromy_hom(one, MonodromyPair(k_complex, [[3]])).as_tuple() == (0, 0)
    jordan = MonodromyPair(ChainComplex({0: 2}), [[1, 1], [0, 1]])
    assert monodromy_hom(jordan, jordan).as_tuple() == (2, 2)


@given(st.integers(0, 2**32), st.sampled_from([QQ, GF(3)]))
def test_monodromy_agrees_with_derived_hom(seed, F):
    rng = random.Random(seed)
    P = random_monodromy_pair(rng, F, 4)
    Q = random_monodromy_pair(rng, F, 4)
    A = S_star(F)
    h1 = monodromy_hom(P, Q, 3, -3)
    h2 = derived_hom(A, P.as_representation(A), Q.as_representation(A), 3, min_degree=-3)
    assert h1.dims == h2.dims


def test_hopf_object():
    A = S(1)
    M = ChainComplex({-1: 1, 0: 1})
    rep = make_representation(A, M, {"x1": {-1: [[1]]}})
    cx = derived_hom_complex(rep, rep)
    assert cx.dim(0) == 2
    assert derived_hom(A, rep, rep, 2, min_degree=-1).dims == {-1: 1, 0: 1, 1: 0, 2: 1}


@given(positive_algebras(), st.integers(0, 4))
def test_resolution_is_exact(A, top):
    cone, alg = semifree_resolution(A).exactness_certificate(top)
    assert cone.stability_flag == EXACT
    assert cone.dims == alg.dims


@pytest.mark.parametrize("A,top,bound", [
    (D_star(), 2, 4),
    (cellular_model(rp(2)), 1, 4),
    (glue(inclusion(S_star(), D_star()), inclusion(S_star(), D_star())), 2, 4),
], ids=["D*(1)", "RP2", "glued"])
def test_resolution_certificate_with_degree_zero_generators(A, top, bound):
    cone, alg = semifree_resolution(A).exactness_certificate(top, bound)
    assert cone.stability_flag == STABLE
    assert cone.dims == alg.dims


@given(st.permutations(["x1", "y2", "z4"]), st.sampled_from([QQ, GF(2)]))
def test_generator_order_does_not_matter(order, F):
    deg = {"x1": 1, "y2": 2, "z4": 4}
    A = make_algebra([Generator(g, deg[g]) for g in order], {"z4": "x1*y2 - y2*x1"}, F)
    B = make_algebra([Generator(g, deg[g]) for g in ("x1", "y2", "z4")], {"z4": "x1*y2 - y2*x1"}, F)
    assert ext_kk(A, 5) == ext_kk(B, 5)


@given(st.integers(2, 5), st.sampled_from([2, 3, 5, 7]))
def test_fp_and_q_agree_on_spheres(n, p):
    assert ext_kk(S(n - 1, GF(p)), 2 * n) == ext_kk(S(n - 1), 2 * n)
