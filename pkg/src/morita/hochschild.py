"""Hochschild homology and cohomology of quasi-free dg-algebras.

The small complexes come from the resolution 0 -> B V B -> B B -> B:

chains      B (+) s(V (x) B), with s(v (x) b) in degree |v| + |b| + 1,
cochains    B (+) Hom(sV, B), a cochain being (beta, theta).

The bar-complex oracles use the normalized Hochschild complex
B (x) Bbar^{(x) q} and need every generator in degree >= 1, which makes
each total degree finite for chains.  Cochains are truncated by input
degree, counting only the classes that extend past the cut.
"""

from __future__ import annotations

from .chain import STABLE, UNSTABLE, HomologyTable
from .dga import FreeDGA, UnboundedBasis
from .gradedcx import graded_homology
from .linalg import rank_of_vectors
from .modules import semifree_resolution
from .ncpoly import join_reduced


def _acc(F):
    acc: dict = {}

    def add(k, c):
        x = F.add(acc.get(k, F.zero), c)
        if x:
            acc[k] = x
        else:
            acc.pop(k, None)

    return acc, add


def _join3(a, b, c):
    return join_reduced(join_reduced(a, b), c)


def _need_bound(A: FreeDGA, word_bound):
    if word_bound is None and A.has_degree_zero():
        raise UnboundedBasis("algebra has degree-0 generators: a word bound is required")


# --------------------------------------------------------------------------
# small complexes

def hh_small_complex(A: FreeDGA):
    """(basis, boundary, slack) of the small Hochschild chain complex."""
    R = semifree_resolution(A)
    F = A.field
    V = R.V

    def basis(n, bound):
        out = [("b", w) for w in A.basis_words(n, bound)]
        for g in V:
            rest = n - 1 - g.degree
            if rest < 0:
                continue
            left = None if bound is None else bound - R.slot_weight[g.name]
            if left is not None and left < 0:
                continue
            out.extend(("s", g.name, w) for w in A.basis_words(rest, left))
        return out

    def boundary(key):
        acc, add = _acc(F)
        if key[0] == "b":
            for w, c in A.word_differential(key[1]).items():
                add(("b", w), c)
            return acc
        _, v, b = key
        dv, db = A.deg[v], A.word_degree(b)
        for c, l, u, r in R.univ_derivation[v]:
            e = A.word_degree(l) * (A.deg[u] + A.word_degree(r) + db)
            add(("s", u, _join3(r, b, l)), F.neg(F.mul(c, F.sign(e))))
        sgn = F.neg(F.sign(dv))
        for b2, c in A.word_differential(b).items():
            add(("s", v, b2), F.mul(sgn, c))
        add(("b", join_reduced(b, (v,))), F.sign(dv * db))
        add(("b", join_reduced((v,), b)), F.neg(F.one))
        return acc

    slack = max([*A.weight.values(), *R.slot_weight.values()], default=1)
    return basis, boundary, slack


def hh_small(A: FreeDGA, max_degree: int, word_bound: int | None = None) -> HomologyTable:
    """HH_n(A) for 0 <= n <= max_degree."""
    _need_bound(A, word_bound)
    basis, boundary, slack = hh_small_complex(A)
    h = graded_homology(A.field, basis, boundary, 0, max_degree, word_bound, slack)
    h.title = "HH_*(A)"
    return h


def hh_cochain_complex(A: FreeDGA):
    """(basis, boundary, slack) of the small cochain complex, graded homologically by p.

    A basis cochain ("beta", w) has beta = w in B_p; ("theta", v, w) has
    theta(v) = w in B_{|v|+1+p} and theta = 0 on the other generators.
    """
    R = semifree_resolution(A)
    F = A.field
    V = R.V
    vdeg = {g.name: g.degree for g in V}
    users: dict = {}
    for v in vdeg:
        for c, l, u, r in R.univ_derivation[v]:
            users.setdefault(u, []).append((v, c, l, r))

    def basis(p, bound):
        out = [("beta", w) for w in A.basis_words(p, bound)] if p >= 0 else []
        for g in V:
            k = g.degree + 1 + p
            if k >= 0:
                out.extend(("theta", g.name, w) for w in A.basis_words(k, bound))
        return out

    def degree(key):
        if key[0] == "beta":
            return A.word_degree(key[1])
        return A.word_degree(key[2]) - vdeg[key[1]] - 1

    def boundary(key):
        acc, add = _acc(F)
        p = degree(key)
        sp = F.sign(p)
        if key[0] == "beta":
            w = key[1]
            for w2, c in A.word_differential(w).items():
                add(("beta", w2), c)
            for v in vdeg:
                add(("theta", v, join_reduced((v,), w)), F.neg(F.mul(sp, F.sign(vdeg[v] * p))))
                add(("theta", v, join_reduced(w, (v,))), sp)
            return acc
        _, u, w = key
        for w2, c in A.word_differential(w).items():
            add(("theta", u, w2), c)
        for v, c, l, r in users.get(u, ()):
            add(("theta", v, _join3(l, w, r)), F.mul(F.mul(sp, c), F.sign(A.word_degree(l) * (1 + p))))
        return acc

    slack = 1
    for v in vdeg:
        slack = max(slack, A.weight[v])
        for c, l, u, r in R.univ_derivation[v]:
            slack = max(slack, A.word_weight(l) + A.word_weight(r))
    return basis, boundary, slack


def hh_cohomology_small(A: FreeDGA, max_degree: int, word_bound: int | None = None) -> HomologyTable:
    """HH^n(A) for -max_degree <= n <= top, where top = max |v| + 1 and n = -p."""
    _need_bound(A, word_bound)
    basis, boundary, slack = hh_cochain_complex(A)
    top = max((g.degree + 1 for g in A.positive_generators()), default=0)
    h = graded_homology(A.field, basis, boundary, -top, max_degree, word_bound, slack,
                        monotone=False)
    return _flip(h, "HH^*(A)")


def _flip(h: HomologyTable, title: str) -> HomologyTable:
    dims = {-p: d for p, d in h.dims.items()}
    notes = dict(h.notes)
    if "dims_at_recheck" in notes:
        notes["dims_at_recheck"] = {str(-int(p)): d for p, d in notes["dims_at_recheck"].items()}
    return HomologyTable(-h.hi, -h.lo, dims, h.stability_flag, None,
                         "cohomological: n = -p", title, notes)


# --------------------------------------------------------------------------
# bar-complex oracles

def _require_positive(A: FreeDGA):
    if A.has_degree_zero():
        raise UnboundedBasis("the bar oracle needs every generator in degree >= 1; "
                             "use hh_small with a word bound instead")
    for g in A.generators:
        dg = A.diff.get(g.name)
        if dg is not None and dg.constant_term():
            raise UnboundedBasis(f"d({g.name}) has a constant term: the algebra is not augmented")


def _bar_words(A: FreeDGA, e: int) -> list:
    """Tuples (x1, ..., xq) of non-empty words with sum(|xi| + 1) = e."""
    out = []

    def rec(prefix, left):
        if left == 0:
            out.append(tuple(prefix))
            return
        for d in range(1, left):
            for w in A.basis_words(d):
                prefix.append(w)
                rec(prefix, left - d - 1)
                prefix.pop()

    if e >= 0:
        rec([], e)
    return out


def _bar_faces(A: FreeDGA, xs: tuple):
    """Boundary of the bimodule generator 1[x1|...|xq]1 in the two-sided bar resolution.

    Yields ``(coef, left word, inner tuple, right word)``.
    """
    F = A.field
    q = len(xs)
    eps = [0]
    for x in xs:
        eps.append(eps[-1] + A.word_degree(x) + 1)
    out = []
    if q:
        out.append((F.one, xs[0], xs[1:], ()))
        out.append((F.neg(F.sign(eps[q - 1])), (), xs[:-1], xs[-1]))
    for i in range(q - 1):
        out.append((F.sign(eps[i + 1]), (), xs[:i] + (xs[i] + xs[i + 1],) + xs[i + 2:], ()))
    for i, x in enumerate(xs):
        sgn = F.neg(F.sign(eps[i]))
        for x2, c in A.word_differential(x).items():
            if x2:
                out.append((F.mul(sgn, c), (), xs[:i] + (x2,) + xs[i + 1:], ()))
    return out


def hh_bar_complex(A: FreeDGA):
    """(basis, boundary) of the normalized Hochschild chain complex."""
    _require_positive(A)
    F = A.field

    def basis(n, _bound):
        out = []
        for e in range(n + 1):
            for a in A.basis_words(n - e):
                out.extend((a, xs) for xs in _bar_words(A, e))
        return out

    def boundary(key):
        a, xs = key
        acc, add = _acc(F)
        da = A.word_degree(a)
        for a2, c in A.word_differential(a).items():
            add((a2, xs), c)
        sa = F.sign(da)
        for c, left, ys, right in _bar_faces(A, xs):
            if right:
                # a (x) g x_q  =  (-1)^{|x_q| (|a| + |g|)} x_q a (x) g
                g = sum(A.word_degree(y) + 1 for y in ys)
                s = F.sign(A.word_degree(right) * (da + g))
                add((right + a, ys), F.mul(F.mul(sa, c), s))
            else:
                add((a + left, ys), F.mul(sa, c))
        return acc

    return basis, boundary


def bar_oracle(A: FreeDGA, max_degree: int) -> HomologyTable:
    """HH_n(A) for 0 <= n <= max_degree from the normalized Hochschild complex."""
    basis, boundary = hh_bar_complex(A)
    h = graded_homology(A.field, basis, boundary, 0, max_degree)
    h.title = "HH_*(A) via the bar complex"
    return h


def bar_cochain_complex(A: FreeDGA, input_bound: int):
    """(basis, boundary) of Hochschild cochains on bar generators of degree <= input_bound.

    A basis cochain ``(xs, w)`` sends the generator [x1|...|xq] to the word
    w and vanishes elsewhere; it sits in homological degree |w| - deg(xs).
    """
    _require_positive(A)
    F = A.field
    gens = [xs for e in range(input_bound + 1) for xs in _bar_words(A, e)]
    cofaces: dict = {}
    for g in gens:
        for c, left, ys, right in _bar_faces(A, g):
            cofaces.setdefault(ys, []).append((g, c, left, right))

    def edeg(xs):
        return sum(A.word_degree(x) + 1 for x in xs)

    def basis(p, _bound):
        out = []
        for xs in gens:
            k = edeg(xs) + p
            if k >= 0:
                out.extend((xs, w) for w in A.basis_words(k))
        return out

    def boundary(key):
        xs, w = key
        p = A.word_degree(w) - edeg(xs)
        acc, add = _acc(F)
        for w2, c in A.word_differential(w).items():
            add((xs, w2), c)
        sp = F.neg(F.sign(p))
        for g, c, left, right in cofaces.get(xs, ()):
            s = F.sign(p * A.word_degree(left))
            add((g, left + w + right), F.mul(F.mul(sp, c), s))
        return acc

    return basis, boundary


def _lift_image_dim(A: FreeDGA, p: int, small, big) -> int:
    """dim of the image of H_p(big) -> H_p(small) under restriction of cochains.

    With D' the differential of ``big`` out of degree p, D the differential of
    ``small`` into degree p and R the restriction, the image has dimension
    rank [[D', 0], [R, -D]] - rank D' - rank D.
    """
    F = A.field
    (b1, d1), (b2, d2) = small, big
    src, tgt, dst2 = b2(p, None), b1(p, None), b2(p - 1, None)
    i_tgt = {k: i for i, k in enumerate(tgt)}
    i_dst = {k: i + len(tgt) for i, k in enumerate(dst2)}
    ncoords = len(tgt) + len(dst2)
    cols_big, cols_m = [], []
    for key in src:
        col = {i_dst[k]: c for k, c in d2(key).items()}
        cols_big.append(col)
        j = i_tgt.get(key)
        cols_m.append({**col, j: F.one} if j is not None else col)
    cols_small = [{i_tgt[k]: c for k, c in d1(key).items()} for key in b1(p + 1, None)]
    neg = [{i: F.neg(c) for i, c in col.items()} for col in cols_small]
    r_m = rank_of_vectors(F, cols_m + neg, ncoords)[0]
    return r_m - rank_of_vectors(F, cols_big, ncoords)[0] - rank_of_vectors(F, cols_small, ncoords)[0]


def bar_cochain_oracle(A: FreeDGA, max_degree: int, input_bound: int | None = None,
                       lift: int = 2, recheck: bool = True) -> HomologyTable:
    """HH^n(A) for -max_degree <= n <= top from normalized Hochschild cochains.

    Cutting the bar complex at input degree N creates spurious classes near
    the cut, so the count is the dimension of the classes on inputs of
    degree <= N that extend to cocycles on inputs of degree <= N + lift.
    N defaults to max(4, top), so every generator appears as an input.
    With ``recheck`` the count is repeated with one more unit of lift and
    the table is flagged unstable if anything moved.
    """
    _require_positive(A)
    top = max((g.degree + 1 for g in A.positive_generators()), default=0)
    if input_bound is None:
        input_bound = max(4, top)
    small = bar_cochain_complex(A, input_bound)
    big = bar_cochain_complex(A, input_bound + lift)
    dims = {n: _lift_image_dim(A, -n, small, big) for n in range(-max_degree, top + 1)}
    flag, notes = STABLE, {"input_bound": input_bound, "lift": lift}
    if recheck:
        bigger = bar_cochain_complex(A, input_bound + lift + 1)
        again = {n: _lift_image_dim(A, -n, small, bigger) for n in dims}
        if again != dims:
            flag = UNSTABLE
            notes["dims_at_recheck"] = {str(n): d for n, d in again.items()}
    return HomologyTable(-max_degree, top, dims, flag, None, "cohomological: n = -p",
                         "HH^*(A) via the bar complex", notes)
