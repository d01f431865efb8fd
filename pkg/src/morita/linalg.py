"""Sparse matrices over Q or F_p and exact row reduction.

Over Q rows are scaled to primitive integer vectors and eliminated
fraction-free, so coefficients stay small integers for the banded 0/±1
matrices produced by word bases.  Over F_p small dense blocks go to the
compiled kernel (see ``morita.kernels``), everything else is eliminated
sparsely in Python.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

from . import kernels
from .fields import Field, FieldMismatch, QQ, Scalar

# dense kernel only pays off on well-filled blocks
DENSE_LIMIT = 64 * 64
DENSE_KERNEL_LIMIT = 400_000


@dataclass(frozen=True)
class SparseMatrix:
    rows: int
    cols: int
    field: Field
    entries: tuple  # ((row, col, raw value), ...) sorted, no zeros, no duplicates

    def __post_init__(self):
        seen = set()
        for i, j, v in self.entries:
            if not (0 <= i < self.rows and 0 <= j < self.cols):
                raise IndexError(f"entry ({i}, {j}) outside {self.rows}x{self.cols}")
            if (i, j) in seen:
                raise ValueError(f"duplicate entry at ({i}, {j})")
            if not v:
                raise ValueError(f"explicit zero at ({i}, {j})")
            seen.add((i, j))

    @classmethod
    def from_dict(cls, rows: int, cols: int, field: Field, data: dict) -> "SparseMatrix":
        ents = []
        for (i, j), v in data.items():
            v = field(v)
            if v:
                ents.append((i, j, v))
        ents.sort(key=lambda e: (e[0], e[1]))
        return cls(rows, cols, field, tuple(ents))

    @classmethod
    def from_dense(cls, data: Sequence[Sequence], field: Field | None = None) -> "SparseMatrix":
        """Build from a list of rows of field-coercible entries."""
        if field is None:
            field = _infer_field(x for row in data for x in row)
        rows = len(data)
        cols = len(data[0]) if rows else 0
        d = {}
        for i, row in enumerate(data):
            if len(row) != cols:
                raise ValueError("ragged rows")
            for j, x in enumerate(row):
                d[i, j] = x
        return cls.from_dict(rows, cols, field, d)

    @classmethod
    def from_columns(cls, rows: int, field: Field, columns: Sequence[dict]) -> "SparseMatrix":
        """Columns given as ``{row: raw value}`` dicts (already reduced mod p)."""
        ents = [(i, j, v) for j, col in enumerate(columns) for i, v in col.items() if v]
        ents.sort(key=lambda e: (e[0], e[1]))
        return cls(rows, len(columns), field, tuple(ents))

    @classmethod
    def zero(cls, rows: int, cols: int, field: Field = QQ) -> "SparseMatrix":
        return cls(rows, cols, field, ())

    @classmethod
    def identity(cls, n: int, field: Field = QQ) -> "SparseMatrix":
        return cls(n, n, field, tuple((i, i, field.one) for i in range(n)))

    @property
    def shape(self):
        return (self.rows, self.cols)

    @property
    def nnz(self) -> int:
        return len(self.entries)

    def is_zero(self) -> bool:
        return not self.entries

    def to_dense(self) -> list[list]:
        out = [[self.field.zero] * self.cols for _ in range(self.rows)]
        for i, j, v in self.entries:
            out[i][j] = v
        return out

    def row_dicts(self) -> list[dict]:
        out = [dict() for _ in range(self.rows)]
        for i, j, v in self.entries:
            out[i][j] = v
        return out

    def column_dicts(self) -> list[dict]:
        out = [dict() for _ in range(self.cols)]
        for i, j, v in self.entries:
            out[j][i] = v
        return out

    def transpose(self) -> "SparseMatrix":
        return SparseMatrix.from_dict(
            self.cols, self.rows, self.field, {(j, i): v for i, j, v in self.entries})

    def __getitem__(self, ij):
        for i, j, v in self.entries:
            if (i, j) == ij:
                return v
        return self.field.zero

    def __matmul__(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.field != other.field:
            raise FieldMismatch(f"{self.field} @ {other.field}")
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        F = self.field
        right = other.row_dicts()
        acc: dict = {}
        for i, k, v in self.entries:
            for j, w in right[k].items():
                acc[i, j] = F.add(acc.get((i, j), F.zero), F.mul(v, w))
        return SparseMatrix.from_dict(self.rows, other.cols, F, acc)

    def apply(self, vec: Sequence) -> list:
        F = self.field
        out = [F.zero] * self.rows
        for i, j, v in self.entries:
            if vec[j]:
                out[i] = F.add(out[i], F.mul(v, vec[j]))
        return out

    def select_rows(self, keep: Iterable[int]) -> "SparseMatrix":
        idx = {r: n for n, r in enumerate(sorted(set(keep)))}
        ents = tuple((idx[i], j, v) for i, j, v in self.entries if i in idx)
        return SparseMatrix(len(idx), self.cols, self.field, ents)

    def __str__(self):
        F = self.field
        return "\n".join(" ".join(F.render(x) for x in row) for row in self.to_dense())


def _infer_field(values) -> Field:
    field = None
    for x in values:
        if isinstance(x, Scalar):
            if field is not None and field != x.field:
                raise FieldMismatch(f"mixed {field} and {x.field} entries")
            field = x.field
    return field or QQ


# --------------------------------------------------------------------------
# elimination over Q (fraction-free, integer rows)

def _int_row(row: dict) -> dict:
    if all(type(v) is int for v in row.values()):
        return row
    den = 1
    for v in row.values():
        den = lcm(den, Fraction(v).denominator)
    return {k: int(Fraction(v) * den) for k, v in row.items() if v}


def rank_of_vectors(field: Field, vectors: Iterable[dict], ncoords: int,
                    split: int = 0) -> tuple[int, int]:
    """Rank of sparse vectors ``{coordinate: raw}`` with coordinates in range(ncoords).

    Also returns the rank of their projection onto coordinates ``< split``:
    echelon leads are taken in that block first, so the count of leads
    landing there is exactly that projected rank.  Inside each block the
    rarest coordinates are eliminated first, which keeps fill-in low.
    """
    p = field.char
    vecs = []
    count = [0] * ncoords
    for v in vectors:
        if not v:
            continue
        if p == 0:
            v = _int_row(v)
        vecs.append(v)
        for k in v:
            count[k] += 1
    order = sorted(range(ncoords), key=lambda k: (k >= split, count[k], k))
    pos = [0] * ncoords
    for i, k in enumerate(order):
        pos[k] = i
    packed = []
    for v in sorted(vecs, key=len):
        items = sorted((pos[k], x) for k, x in v.items())
        packed.append(([k for k, _ in items], [x for _, x in items]))
    return kernels.sparse_rank_exact(packed, ncoords, p, split)


def rank(m: SparseMatrix) -> int:
    """Exact rank."""
    if m.is_zero():
        return 0
    dense = m.rows * m.cols <= DENSE_LIMIT or (
        m.rows * m.cols <= DENSE_KERNEL_LIMIT and m.nnz * 8 >= m.rows * m.cols)
    if dense and m.field.char:
        return kernels.rank_mod_p(m.to_dense(), m.field.char)
    if dense:
        ints = [[0] * m.cols for _ in range(m.rows)]
        for i, r in enumerate(m.row_dicts()):
            for k, v in _int_row(r).items():
                ints[i][k] = v
        r = kernels.rank_int(ints)
        if r >= 0:
            return r
    if m.rows <= m.cols:
        return rank_of_vectors(m.field, m.row_dicts(), m.cols)[0]
    return rank_of_vectors(m.field, m.column_dicts(), m.rows)[0]


# --------------------------------------------------------------------------
# reduced row echelon form

def _rref_rows(rows: list[dict], field: Field) -> tuple[list[int], list[dict]]:
    """Return (pivot columns, reduced rows) with rows sorted by pivot column."""
    F = field
    pivots: dict[int, dict] = {}
    for row in rows:
        row = {k: v for k, v in row.items() if v}
        while row:
            c = min(row)
            prow = pivots.get(c)
            if prow is None:
                inv = F.inv(row[c])
                row = {k: F.mul(v, inv) for k, v in row.items()}
                pivots[c] = row
                break
            f = row[c]
            for k, v in prow.items():
                x = F.sub(row.get(k, F.zero), F.mul(f, v))
                if x:
                    row[k] = x
                else:
                    row.pop(k, None)
    order = sorted(pivots)
    # back substitution, right to left
    for idx in range(len(order) - 1, -1, -1):
        c = order[idx]
        prow = pivots[c]
        for c2 in order[:idx]:
            r2 = pivots[c2]
            f = r2.get(c)
            if f:
                for k, v in prow.items():
                    x = F.sub(r2.get(k, F.zero), F.mul(f, v))
                    if x:
                        r2[k] = x
                    else:
                        r2.pop(k, None)
    return order, [pivots[c] for c in order]


def row_reduce(m: SparseMatrix):
    """Return ``(rref, rank, kernel basis)`` for ``m``.

    Kernel vectors are tuples of raw field values of length ``m.cols``; there
    is one per free column, with a 1 in that column.
    """
    F = m.field
    if F.char == 0:
        rows = [{k: Fraction(v) for k, v in r.items()} for r in m.row_dicts() if r]
    else:
        rows = [r for r in m.row_dicts() if r]
    piv, red = _rref_rows(rows, F)
    data = {}
    for i, r in enumerate(red):
        for k, v in r.items():
            data[i, k] = v
    reduced = SparseMatrix.from_dict(m.rows, m.cols, F, data)
    pivset = set(piv)
    kernel = []
    for free in range(m.cols):
        if free in pivset:
            continue
        vec = [F.zero] * m.cols
        vec[free] = F.one
        for c, r in zip(piv, red):
            v = r.get(free)
            if v:
                vec[c] = F.neg(v)
        kernel.append(tuple(vec))
    return reduced, len(piv), kernel


def kernel_basis(m: SparseMatrix) -> list[tuple]:
    return row_reduce(m)[2]


def independent_modulo(field: Field, base: list[dict], candidates: list[dict]) -> list[int]:
    """Indices of a maximal subset of ``candidates`` independent modulo span(``base``).

    Vectors are sparse ``{index: raw value}`` dicts.
    """
    F = field
    pivots: dict[int, dict] = {}

    def reduce(vec):
        vec = {k: v for k, v in vec.items() if v}
        while vec:
            c = min(vec)
            prow = pivots.get(c)
            if prow is None:
                return vec
            f = vec[c]
            for k, v in prow.items():
                x = F.sub(vec.get(k, F.zero), F.mul(f, v))
                if x:
                    vec[k] = x
                else:
                    vec.pop(k, None)
        return vec

    def insert(vec):
        c = min(vec)
        inv = F.inv(vec[c])
        pivots[c] = {k: F.mul(v, inv) for k, v in vec.items()}

    for b in base:
        r = reduce(b)
        if r:
            insert(r)
    chosen = []
    for idx, cand in enumerate(candidates):
        r = reduce(cand)
        if r:
            insert(r)
            chosen.append(idx)
    return chosen


def in_span(field: Field, base: list[dict], vec: dict) -> bool:
    return not independent_modulo(field, base, [vec])
