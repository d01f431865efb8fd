import random
from fractions import Fraction

import pytest

from hypothesis import given
from hypothesis import strategies as st

from morita.chain import ChainComplex, InvalidComplex, homology_basis, homology_dims, is_boundary
from morita.fields import GF, QQ
from morita.linalg import SparseMatrix, kernel_basis, rank, rank_of_vectors, row_reduce


def test_row_reduce_identity():
    red, r, ker = row_reduce(SparseMatrix.identity(3))
    assert r == 3 and ker == []
    assert red.to_dense() == SparseMatrix.identity(3).to_dense()


def test_row_reduce_zero():
    _, r, ker = row_reduce(SparseMatrix.zero(2, 2))
    assert r == 0 and len(ker) == 2


def test_row_reduce_over_f2():
    m = SparseMatrix.from_dense([[1, 1], [1, 1]], GF(2))
    _, r, ker = row_reduce(m)
    assert r == 1
    assert ker == [(1, 1)]


def test_fractions_stay_exact():
    m = SparseMatrix.from_dense([[Fraction(1, 3), 1], [1, 3]], QQ)
    assert rank(m) == 1
    assert kernel_basis(m) == [(-3, 1)]


def test_homology_of_zero_differential():
    c = ChainComplex({0: 2, 1: 3})
    assert homology_dims(c, 0, 1).as_tuple() == (2, 3)


def test_identity_cone_is_acyclic():
    c = ChainComplex({0: 1, 1: 1}, {1: SparseMatrix.identity(1)})
    assert homology_dims(c, -1, 2).as_tuple() == (0, 0, 0, 0)


def _interval(with_top=True):
    d1 = SparseMatrix.from_dense([[1, 1]])
    if not with_top:
        return ChainComplex({0: 1, 1: 2}, {1: d1})
    d2 = SparseMatrix.from_dense([[1], [-1]])
    return ChainComplex({0: 1, 1: 2, 2: 1}, {1: d1, 2: d2})


def test_small_complex_homology():
    # both boundaries have rank 1, so the (1, 2, 1) complex is acyclic
    c = _interval()
    assert homology_dims(c, 0, 2).as_tuple() == (0, 0, 0)
    assert homology_basis(c, 1) == []
    assert is_boundary(c, 1, [1, -1])


def test_representative_without_the_top_cell():
    c = _interval(with_top=False)
    assert homology_dims(c, 0, 1).as_tuple() == (0, 1)
    reps = homology_basis(c, 1)
    assert len(reps) == 1
    a, b = reps[0]
    assert a == -b != 0
    assert not is_boundary(c, 1, [1, -1])
    assert is_boundary(c, 0, [1])


def test_zero_map_representative():
    c = ChainComplex({0: 1, 1: 1})
    assert homology_basis(c, 0) == [(1,)]
    assert homology_basis(ChainComplex({}), 0) == []


def test_d_squared_checked():
    d1 = SparseMatrix.from_dense([[1]])
    d2 = SparseMatrix.from_dense([[1]])
    with pytest.raises(InvalidComplex):
        ChainComplex({0: 1, 1: 1, 2: 1}, {1: d1, 2: d2})


matrices = st.integers(1, 6).flatmap(lambda r: st.integers(1, 6).flatmap(
    lambda c: st.lists(st.lists(st.integers(-4, 4), min_size=c, max_size=c), min_size=r, max_size=r)))


@given(matrices, st.sampled_from([0, 2, 3, 7]))
def test_row_reduce_is_idempotent_and_kernel_is_exact(rows, p):
    F = GF(p) if p else QQ
    m = SparseMatrix.from_dense(rows, F)
    red, r, ker = row_reduce(m)
    red2, r2, _ = row_reduce(red)
    assert red2.to_dense() == red.to_dense() and r2 == r
    assert len(ker) == m.cols - r
    for v in ker:
        assert all(x == 0 for x in m.apply(v))


@given(matrices, st.sampled_from([0, 2, 5]), st.integers(0, 6))
def test_sparse_rank_matches_dense(rows, p, split):
    F = GF(p) if p else QQ
    m = SparseMatrix.from_dense(rows, F)
    cols = [c for c in m.column_dicts()]
    r, below = rank_of_vectors(F, cols, m.rows, split)
    assert r == rank(m)
    top = SparseMatrix.from_dense([row for i, row in enumerate(m.to_dense()) if i < split] or [[0]], F)
    assert below == rank(top)


def random_complex(dims, rng, F=QQ):
    """Each d_{n+1} has columns drawn from the kernel of d_n, so d^2 = 0 by construction."""
    mats = {}
    for n in range(1, len(dims)):
        if n - 1 in mats and dims[n - 1]:
            ker = kernel_basis(mats[n - 1]) if dims[n - 2] else []
            cols = []
            for _ in range(dims[n]):
                col = [F.zero] * dims[n - 1]
                for v in ker:
                    c = F(rng.randint(-2, 2))
                    col = [F.add(x, F.mul(c, y)) for x, y in zip(col, v)]
                cols.append({i: x for i, x in enumerate(col) if x})
        else:
            cols = [{i: F(rng.randint(-2, 2)) for i in range(dims[n - 1])} for _ in range(dims[n])]
            cols = [{i: x for i, x in c.items() if x} for c in cols]
        mats[n] = SparseMatrix.from_columns(dims[n - 1], F, cols)
    return ChainComplex(dict(enumerate(dims)), mats, F)


@given(st.lists(st.integers(0, 4), min_size=1, max_size=5), st.integers(0, 2**32),
       st.sampled_from([0, 2, 3]))
def test_euler_characteristic_of_homology(dims, seed, p):
    F = GF(p) if p else QQ
    c = random_complex(dims, random.Random(seed), F)
    h = homology_dims(c, 0, len(dims) - 1)
    assert sum((-1) ** n * d for n, d in h.dims.items()) == c.euler_characteristic()
    for n in range(len(dims)):
        reps = homology_basis(c, n)
        assert len(reps) == h.dim(n)
        for v in reps:
            assert not is_boundary(c, n, v)
