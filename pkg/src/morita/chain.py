"""Bounded chain complexes of based vector spaces and their homology.

Homological grading: the boundary in degree n maps C_n -> C_{n-1}.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field
from typing import Mapping, Sequence

from .fields import Field, QQ
from .linalg import SparseMatrix, independent_modulo, rank, row_reduce

EXACT = "exact"
STABLE = "truncation-stable"
UNSTABLE = "truncation-unstable"


class InvalidComplex(ValueError):
    """The boundary maps do not compose to zero, or have the wrong shape."""


class ChainComplex:
    """A bounded complex: ``dims[n]`` basis vectors in degree n, ``boundary[n]: C_n -> C_{n-1}``."""

    def __init__(self, dims: Mapping[int, int], boundary: Mapping[int, SparseMatrix] | None = None,
                 field: Field = QQ, basis_labels: Mapping[int, Sequence[str]] | None = None,
                 check: bool = True):
        self.field = field
        self.dims = {n: d for n, d in dims.items() if d > 0}
        if any(d < 0 for d in dims.values()):
            raise InvalidComplex("negative dimension")
        self._boundary = {}
        for n, m in (boundary or {}).items():
            if m.field != field:
                raise InvalidComplex(f"boundary in degree {n} is over {m.field}, not {field}")
            want = (self.dim(n - 1), self.dim(n))
            if m.shape != want:
                raise InvalidComplex(f"boundary in degree {n} has shape {m.shape}, expected {want}")
            if not m.is_zero():
                self._boundary[n] = m
        self.basis_labels = {n: list(v) for n, v in (basis_labels or {}).items()}
        if check:
            self.check()

    @property
    def support(self) -> list[int]:
        return sorted(self.dims)

    def dim(self, n: int) -> int:
        return self.dims.get(n, 0)

    def boundary(self, n: int) -> SparseMatrix:
        m = self._boundary.get(n)
        if m is None:
            return SparseMatrix.zero(self.dim(n - 1), self.dim(n), self.field)
        return m

    def check(self):
        for n in self._boundary:
            if n - 1 in self._boundary:
                prod = self._boundary[n - 1] @ self._boundary[n]
                if not prod.is_zero():
                    raise InvalidComplex(f"d∘d != 0 from degree {n} to degree {n - 2}")

    def euler_characteristic(self) -> int:
        return sum((-1) ** (n % 2) * d for n, d in self.dims.items())

    def __repr__(self):
        return f"ChainComplex(dims={dict(sorted(self.dims.items()))}, field={self.field})"


@dataclass
class HomologyTable:
    lo: int
    hi: int
    dims: dict
    stability_flag: str = EXACT
    representatives: dict | None = None
    convention: str = "homological"
    title: str = ""
    notes: dict = dc_field(default_factory=dict)

    def dim(self, n: int) -> int:
        return self.dims.get(n, 0)

    def as_tuple(self) -> tuple:
        return tuple(self.dims.get(n, 0) for n in range(self.lo, self.hi + 1))

    def rows(self):
        for n in range(self.lo, self.hi + 1):
            yield n, self.dims.get(n, 0), self.stability_flag

    def to_tsv(self) -> str:
        lines = [f"# {self.title}"] if self.title else []
        lines.append(f"# degrees: {self.convention}")
        lines += [f"{n}\t{d}\t{flag}" for n, d, flag in self.rows()]
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        doc = {
            "title": self.title,
            "convention": self.convention,
            "range": [self.lo, self.hi],
            "dims": {str(n): d for n, d, _ in self.rows()},
            "stability_flag": self.stability_flag,
        }
        if self.notes:
            doc["notes"] = self.notes
        return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def homology_dims(c: ChainComplex, lo: int, hi: int) -> HomologyTable:
    """dim H_n = dim ker(d_n) - rank(d_{n+1}) for lo <= n <= hi."""
    dims = {}
    ranks: dict[int, int] = {}

    def rk(n):
        if n not in ranks:
            ranks[n] = rank(c.boundary(n))
        return ranks[n]

    for n in range(lo, hi + 1):
        dims[n] = c.dim(n) - rk(n) - rk(n + 1)
    return HomologyTable(lo, hi, dims)


def homology_basis(c: ChainComplex, n: int) -> list[tuple]:
    """Cycles in degree n whose classes form a basis of H_n."""
    if c.dim(n) == 0:
        return []
    _, _, cycles = row_reduce(c.boundary(n))
    bounds = [col for col in c.boundary(n + 1).column_dicts() if col]
    cand = [{i: v for i, v in enumerate(z) if v} for z in cycles]
    return [cycles[i] for i in independent_modulo(c.field, bounds, cand)]


def is_boundary(c: ChainComplex, n: int, vec: Sequence) -> bool:
    """True when ``vec`` (a degree-n chain) lies in the image of d_{n+1}."""
    bounds = [col for col in c.boundary(n + 1).column_dicts() if col]
    v = {i: x for i, x in enumerate(vec) if x}
    return not v or not independent_modulo(c.field, bounds, [v])
