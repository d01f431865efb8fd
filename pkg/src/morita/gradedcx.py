"""Homology of complexes given by a graded basis and a boundary rule.

Word-basis complexes (the algebra itself, the resolution cone, Hochschild
complexes) are described by two callables:

``basis(n, bound)``
    canonical list of basis keys in degree n; ``bound`` caps the weighted
    word length and is ``None`` when every degree is finite.
``boundary(key)``
    ``{key: raw coefficient}`` in degree n - 1.

With a bound L the truncated homology in degree n is taken as the cycles
of weighted length <= L modulo those of them that bound a chain of length
<= L + slack.  ``slack`` must be at least the largest amount by which the
boundary can raise the length; for the algebra itself the length never
goes up, while Hochschild cochains gain length through multiplication.
The stability flag compares the answer at L and L + 2.
"""

from __future__ import annotations

from typing import Callable

from .chain import EXACT, STABLE, UNSTABLE, ChainComplex, HomologyTable
from .fields import Field
from .linalg import SparseMatrix, rank, rank_of_vectors


def boundary_matrix(field: Field, src: list, dst: list, boundary: Callable) -> SparseMatrix:
    index = {k: i for i, k in enumerate(dst)}
    cols = []
    for key in src:
        col = {}
        for k2, c in boundary(key).items():
            i = index.get(k2)
            if i is None:
                raise KeyError(f"boundary of {key!r} leaves the target basis: {k2!r}")
            col[i] = c
        cols.append(col)
    return SparseMatrix.from_columns(len(dst), field, cols)


def build_complex(field: Field, basis: Callable, boundary: Callable, lo: int, hi: int,
                  bound: int | None = None, check: bool = True) -> ChainComplex:
    """Assemble degrees lo..hi into a ChainComplex (exact when ``bound`` is None)."""
    bases = {n: basis(n, bound) for n in range(lo - 1, hi + 1)}
    dims = {n: len(bases[n]) for n in range(lo, hi + 1)}
    mats = {}
    for n in range(lo + 1, hi + 1):
        if bases[n] and bases[n - 1]:
            mats[n] = boundary_matrix(field, bases[n], bases[n - 1], boundary)
    labels = {n: [str(k) for k in bases[n]] for n in range(lo, hi + 1)}
    return ChainComplex(dims, mats, field, labels, check=check)


def _vectors(src: list, index: dict, boundary: Callable) -> list[dict]:
    out = []
    for key in src:
        vec = {}
        for k2, c in boundary(key).items():
            i = index.get(k2)
            if i is None:
                raise KeyError(f"boundary of {key!r} leaves the target basis: {k2!r}")
            vec[i] = c
        out.append(vec)
    return out


def _truncated_dims(field, basis, boundary, lo, hi, bound, slack, monotone):
    dims = {}
    for n in range(lo, hi + 1):
        cn = basis(n, bound)
        below = basis(n - 1, bound if monotone else bound + slack)
        if cn and below:
            index = {k: i for i, k in enumerate(below)}
            z = len(cn) - rank_of_vectors(field, _vectors(cn, index, boundary), len(below))[0]
        else:
            z = len(cn)
        big_src = basis(n + 1, bound + slack)
        if big_src and z:
            # coordinates outside C_n(L) first: boundaries landing in C_n(L)
            # have rank  rank(D) - rank(D projected to the outside block)
            inside = set(cn)
            coords = [k for k in basis(n, bound + slack) if k not in inside]
            split = len(coords)
            coords.extend(cn)
            index = {k: i for i, k in enumerate(coords)}
            r_all, r_out = rank_of_vectors(field, _vectors(big_src, index, boundary),
                                           len(coords), split)
            b = r_all - r_out
        else:
            b = 0
        dims[n] = z - b
    return dims


def graded_homology(field: Field, basis: Callable, boundary: Callable, lo: int, hi: int,
                    bound: int | None = None, slack: int = 1,
                    monotone: bool = True) -> HomologyTable:
    """Homology in degrees lo..hi, exact or truncated at ``bound``.

    ``monotone`` declares that the boundary never raises weighted length.
    """
    if bound is None:
        dims = {}
        ranks = {}

        def rk(n):
            if n not in ranks:
                src, dst = basis(n, None), basis(n - 1, None)
                ranks[n] = rank(boundary_matrix(field, src, dst, boundary)) if src and dst else 0
            return ranks[n]

        for n in range(lo, hi + 1):
            dims[n] = len(basis(n, None)) - rk(n) - rk(n + 1)
        return HomologyTable(lo, hi, dims, EXACT)
    d1 = _truncated_dims(field, basis, boundary, lo, hi, bound, slack, monotone)
    d2 = _truncated_dims(field, basis, boundary, lo, hi, bound + 2, slack, monotone)
    flag = STABLE if d1 == d2 else UNSTABLE
    table = HomologyTable(lo, hi, d1, flag)
    table.notes = {"word_bound": bound, "recheck_bound": bound + 2,
                   "dims_at_recheck": {str(n): d for n, d in d2.items()}}
    return table
