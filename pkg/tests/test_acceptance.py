"""Acceptance criteria, one test each; every test prints a single PASS/FAIL line.

Run alone with ``pytest tests/test_acceptance.py -s`` (the lines are also
collected into the terminal summary) or as ``python3 tests/test_acceptance.py``.
"""

import random
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

import test_cw  # noqa: E402
import test_dga  # noqa: E402
import test_modules  # noqa: E402
import test_ncpoly  # noqa: E402
from morita.chain import STABLE, ChainComplex  # noqa: E402
from morita.cw import cellular_model, cp, glue, inclusion, rp, sphere  # noqa: E402
from morita.dga import D, D_star, S, S_star, algebra_homology, is_boundary_in  # noqa: E402
from morita.fields import GF, QQ  # noqa: E402
from morita.hochschild import bar_oracle, hh_small  # noqa: E402
from morita.modules import (MonodromyPair, bar_ext_oracle, derived_hom,  # noqa: E402
                            derived_hom_complex, make_representation, monodromy_hom,
                            random_monodromy_pair, trivial_module)

RESULTS: list[str] = []


def criterion(number, title, limit, check):
    """Time ``check``, which yields failure messages, and report a single line."""
    t0 = time.perf_counter()
    try:
        problems = list(check())
    except Exception as e:  # a crash is a failure of the criterion, reported like any other
        problems = [f"{type(e).__name__}: {e}"]
    secs = time.perf_counter() - t0
    if secs >= limit:
        problems.append(f"took {secs:.2f} s, limit {limit} s")
    status = "PASS" if not problems else "FAIL"
    line = f"{status} criterion {number}: {title} ({secs:.2f} s)"
    if problems:
        line += " :: " + "; ".join(problems)
    print(line)
    RESULTS.append(line)
    assert not problems, line


def _expect(label, got, want):
    return [] if got == want else [f"{label}: got {got}, want {want}"]


def test_criterion_1_sphere_homology():
    def check():
        for n in (2, 3, 4):
            got = algebra_homology(cellular_model(sphere(n)), 8).as_tuple()
            want = tuple(1 if k % (n - 1) == 0 else 0 for k in range(9))
            yield from _expect(f"S^{n}", got, want)
    criterion(1, "loop homology of S^2, S^3, S^4 is polynomial on one class", 1.0, check)


def test_criterion_2_cp2_homology():
    def check():
        A = cellular_model(cp(2))
        h = algebra_homology(A, 9, representatives=True)
        yield from _expect("dims", h.as_tuple(), (1, 1, 0, 0, 1, 1, 0, 0, 1, 1))
        reps = h.representatives[4]
        y = A.poly("alpha3*alpha1 + alpha1*alpha3")
        if len(reps) != 1 or not is_boundary_in(A, reps[0] - y):
            yield f"degree-4 representative {[A.render(r) for r in reps]} is not [a3 a1 + a1 a3]"
    criterion(2, "CP^2 loop homology and the degree-4 class", 5.0, check)


def test_criterion_3_gluing():
    def check():
        G = glue(inclusion(S(1), D(2)), inclusion(S(1), D(2)))
        yield from _expect("D(2) u D(2)", algebra_homology(G, 5).dims, algebra_homology(S(2), 5).dims)
        H = glue(inclusion(S_star(), D_star()), inclusion(S_star(), D_star()))
        h = algebra_homology(H, 3, word_bound=6)
        yield from _expect("D*(1) u D*(1) flag", h.stability_flag, STABLE)
        yield from _expect("D*(1) u D*(1)", h.as_tuple(), algebra_homology(S(1), 3).as_tuple())
    criterion(3, "gluing two discs gives a sphere model", 5.0, check)


def _ext(A, top):
    k = trivial_module(A)
    return derived_hom(A, k, k, top).as_tuple()


def test_criterion_4_ext_is_cohomology():
    def check():
        cases = [("S^2", cellular_model(sphere(2)), (1, 0, 1)),
                 ("S^3", cellular_model(sphere(3)), (1, 0, 0, 1)),
                 ("CP^2", cellular_model(cp(2)), (1, 0, 1, 0, 1)),
                 ("RP^2/F2", cellular_model(rp(2, GF(2))), (1, 1, 1)),
                 ("RP^2/Q", cellular_model(rp(2)), (1, 0, 0))]
        for name, A, want in cases:
            got = _ext(A, len(want) - 1)
            yield from _expect(name, got, want)
            if not A.has_degree_zero():
                yield from _expect(f"{name} oracle", bar_ext_oracle(A, len(want) - 1).as_tuple(), got)
    criterion(4, "Ext(k, k) recovers singular cohomology", 5.0, check)


def test_criterion_5_s1_monodromy():
    def check():
        k = ChainComplex({0: 1})
        one = MonodromyPair(k, [[1]])
        yield from _expect("phi=psi=1", monodromy_hom(one, one).as_tuple(), (1, 1))
        yield from _expect("lambda=5", monodromy_hom(one, MonodromyPair(k, [[5]])).as_tuple(), (0, 0))
        J = MonodromyPair(ChainComplex({0: 2}), [[1, 1], [0, 1]])
        yield from _expect("Jordan block", monodromy_hom(J, J).as_tuple(), (2, 2))
        rng = random.Random(5)
        A = S_star()
        bad = 0
        for _ in range(50):
            P, Q = random_monodromy_pair(rng, QQ, 4), random_monodromy_pair(rng, QQ, 4)
            h1 = monodromy_hom(P, Q, 3, -3).dims
            h2 = derived_hom(A, P.as_representation(A), Q.as_representation(A), 3, min_degree=-3).dims
            bad += h1 != h2
        yield from _expect("random pairs disagreeing", bad, 0)
    criterion(5, "S^1 monodromy complex", 5.0, check)


def test_criterion_6_hopf_object():
    def check():
        A = S(1)
        rep = make_representation(A, ChainComplex({-1: 1, 0: 1}), {"x1": {-1: [[1]]}})
        yield from _expect("degree-0 endomorphisms", derived_hom_complex(rep, rep).dim(0), 2)
    criterion(6, "Hopf object over S(1)", 1.0, check)


def test_criterion_7_hochschild_oracle():
    def check():
        algebras = {"S(1)": S(1), "S(2)": S(2), "D(2)": D(2),
                    "B(CP^2)": cellular_model(cp(2)), "B(CP^3)": cellular_model(cp(3))}
        for name, A in algebras.items():
            yield from _expect(name, hh_small(A, 4).dims, bar_oracle(A, 4).dims)
        yield from _expect("HH(S(1))", hh_small(S(1), 4).as_tuple(), (1, 1, 1, 1, 1))
    criterion(7, "small Hochschild complex equals the bar complex", 30.0, check)


PROPERTY_SUITES = {
    "d^2 = 0": test_dga.test_d_squared_is_zero,
    "Leibniz": test_dga.test_leibniz_rule,
    "confluence": test_ncpoly.test_reduction_is_confluent,
    "augmentation kills boundaries": test_dga.test_augmentation_kills_boundaries,
    "resolution exactness": test_modules.test_resolution_is_exact,
    "generating-function word counts": test_dga.test_word_counts_match_generating_function,
    "Euler characteristic": test_cw.test_cancelling_pair_changes_nothing,
}


def test_criterion_8_property_suites():
    def check():
        for name, suite in PROPERTY_SUITES.items():
            if suite.hypothesis.inner_test is None:
                yield f"{name}: not a property test"
                continue
            try:
                suite()  # hypothesis runs max_examples = 100 cases
            except Exception as e:
                yield f"{name}: {type(e).__name__}: {e}"
    criterion(8, "property suites, 100 cases each", 600.0, check)


if __name__ == "__main__":
    from hypothesis import settings
    settings.register_profile("acceptance", max_examples=100, deadline=None)
    settings.load_profile("acceptance")
    failed = 0
    for name, fn in list(globals().items()):
        if name.startswith("test_criterion"):
            try:
                fn()
            except AssertionError:
                failed += 1
    sys.exit(1 if failed else 0)
