import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from morita import _kernels_py, kernels

compiled = pytest.mark.skipif(not kernels.COMPILED, reason="extension not built")

dense = st.integers(1, 7).flatmap(lambda r: st.integers(1, 7).flatmap(
    lambda c: st.lists(st.lists(st.integers(-5, 5), min_size=c, max_size=c), min_size=r, max_size=r)))


def _sparse(rows):
    """Columns of a dense matrix as (cols, vals), shortest first."""
    out = []
    for j in range(len(rows[0])):
        items = [(i, rows[i][j]) for i in range(len(rows)) if rows[i][j]]
        out.append(([i for i, _ in items], [x for _, x in items]))
    out.sort(key=lambda cv: len(cv[0]))
    return out


@compiled
@given(dense, st.sampled_from([2, 3, 7, 101]))
def test_compiled_matches_python_mod_p(rows, p):
    from morita import _kernels
    a, b = [list(r) for r in rows], [list(r) for r in rows]
    assert _kernels.rref_mod_p(a, p) == _kernels_py.rref_mod_p(b, p)
    assert a == b
    assert _kernels.rank_mod_p(rows, p) == _kernels_py.rank_mod_p(rows, p)
    assert _kernels.sparse_rank(_sparse(rows), len(rows), p, 2) == \
        _kernels_py.sparse_rank(_sparse(rows), len(rows), p, 2)


@compiled
@given(dense, st.integers(0, 7))
def test_compiled_matches_python_over_q(rows, split):
    from morita import _kernels
    assert _kernels.rank_int(rows) == _kernels_py.rank_int(rows)
    assert _kernels.sparse_rank(_sparse(rows), len(rows), 0, split) == \
        _kernels_py.sparse_rank(_sparse(rows), len(rows), 0, split)


def test_overflow_falls_back_to_python():
    rng = random.Random(3)
    n = 24
    rows = [[rng.randint(-10**6, 10**6) for _ in range(n)] for _ in range(n)]
    r, _ = kernels.sparse_rank_exact(_sparse(rows), n, 0)
    assert r == _kernels_py.sparse_rank(_sparse(rows), n, 0)[0] == n


def test_pure_python_switch(monkeypatch):
    import importlib
    monkeypatch.setenv("MORITA_PURE_PYTHON", "1")
    mod = importlib.reload(kernels)
    try:
        assert not mod.COMPILED
        assert mod.sparse_rank is _kernels_py.sparse_rank
    finally:
        monkeypatch.delenv("MORITA_PURE_PYTHON")
        importlib.reload(kernels)
