"""Finite CW complexes and their cellular loop-space models.

A reduced CW complex (one 0-cell) is turned into a quasi-free dg-algebra:
each 1-cell gives an inverse pair in degree 0, and each n-cell with n >= 2
gives one generator of degree n - 1 whose differential is the attaching
cycle.  A 2-cell attached along a free-group word w gets d = w - 1.

Generators are named after the cells, so attaching expressions are written
in the cell ids of earlier cells: ``a*a`` for the 2-cell of RP^2, or
``alpha1*alpha1`` for the 4-cell of CP^2.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Any, Mapping

from .dga import AlgebraError, FreeDGA, Generator, ground, inverse_pair, make_algebra
from .fields import Field, QQ
from .ncpoly import INV, NCPoly, ParseError, UnknownGenerator, inverse_name


class CWError(ValueError):
    """Invalid CW data or an attachment that cannot be realised."""


class NotACycle(CWError):
    def __init__(self, what: str, residue: str):
        super().__init__(f"{what} is not a cycle: d(attach) = {residue}")
        self.residue = residue


_ID = re.compile(r"[A-Za-z_][A-Za-z0-9_']*\Z")


@dataclass(frozen=True)
class Cell:
    id: str
    dim: int
    attach: str | None = None

    def __post_init__(self):
        if not isinstance(self.dim, int) or self.dim < 0:
            raise CWError(f"cell {self.id!r}: dimension must be a non-negative integer")
        if not _ID.match(self.id):
            raise CWError(f"cell {self.id!r}: ids must match [A-Za-z_][A-Za-z0-9_']*")
        if self.dim <= 1 and self.attach is not None:
            raise CWError(f"cell {self.id!r}: cells of dimension {self.dim} take no attaching data")


@dataclass(frozen=True)
class CWComplex:
    name: str
    cells: tuple
    field: Field = QQ

    def __post_init__(self):
        object.__setattr__(self, "cells", tuple(self.cells))
        zero = [c.id for c in self.cells if c.dim == 0]
        if len(zero) != 1:
            raise CWError(f"reduced CW structure required: found {len(zero)} 0-cells")
        seen = set()
        last = 0
        for c in self.cells:
            if c.id in seen:
                raise CWError(f"duplicate cell id {c.id!r}")
            if c.dim < last:
                raise CWError(f"cell {c.id!r}: cells must be listed in skeletal order")
            seen.add(c.id)
            last = c.dim

    @property
    def dimension(self) -> int:
        return max(c.dim for c in self.cells)

    def skeleton(self, n: int) -> "CWComplex":
        return CWComplex(f"{self.name}^({n})", tuple(c for c in self.cells if c.dim <= n), self.field)

    def euler_characteristic(self) -> int:
        return sum((-1) ** c.dim for c in self.cells)


# --------------------------------------------------------------------------
# algebra maps

class AlgebraMap:
    """A dg-algebra map given on generators; degree and d-compatibility are checked."""

    def __init__(self, source: FreeDGA, target: FreeDGA, images: Mapping[str, NCPoly | str]):
        if source.field != target.field:
            raise CWError(f"algebra map between {source.field} and {target.field} algebras")
        self.source = source
        self.target = target
        imgs = {}
        for name, v in images.items():
            if name not in source.index:
                raise CWError(f"{name!r} is not a generator of the source")
            imgs[name] = target.poly(v) if isinstance(v, str) else v
        for g in source.generators:
            if g.name in imgs:
                continue
            if g.inverse_of is not None and g.inverse_of in imgs:
                imgs[g.name] = _invert_image(imgs[g.inverse_of], g.name, target)
            else:
                raise CWError(f"no image given for generator {g.name!r}")
        self.images = imgs
        for g in source.generators:
            img = imgs[g.name]
            target.check_member(img)
            if img and target.degree_of(img) != g.degree:
                raise CWError(f"image of {g.name} does not have degree {g.degree}")
        for g in source.generators:
            if g.inverse_of is not None:
                prod = imgs[g.name] * imgs[g.inverse_of]
                if prod != target.one():
                    raise CWError(f"images of {g.name} and {g.inverse_of} are not inverse")
            lhs = self(source.differential(source.gen(g.name)))
            rhs = target.differential(imgs[g.name])
            if lhs != rhs:
                raise CWError(f"map does not commute with d on {g.name}: "
                              f"{target.render(lhs)} != {target.render(rhs)}")

    def __call__(self, p: NCPoly) -> NCPoly:
        return substitute(p, self.images, self.target.field)

    def generator_inclusion(self) -> dict | None:
        """``{source name: target name}`` if every generator goes to a distinct generator."""
        out = {}
        for name, img in self.images.items():
            if len(img.terms) != 1:
                return None
            (w, c), = img.terms.items()
            if len(w) != 1 or c != 1:
                return None
            out[name] = w[0]
        if len(set(out.values())) != len(out):
            return None
        return out


def substitute(p: NCPoly, images: Mapping[str, NCPoly], field: Field) -> NCPoly:
    """Replace every generator by its image and expand."""
    total = NCPoly.zero(field)
    for w, c in p.terms.items():
        term = NCPoly.const(c, field)
        for g in w:
            term = term * images[g]
        total = total + term
    return total


def _invert_image(img: NCPoly, name: str, target: FreeDGA) -> NCPoly:
    if len(img.terms) == 1:
        (w, c), = img.terms.items()
        if all(target.invertible(g) for g in w) and c:
            F = target.field
            return NCPoly.word(tuple(inverse_name(g) for g in reversed(w)), F.inv(c), F)
    raise CWError(f"cannot infer the image of {name}: give it explicitly")


def inclusion(source: FreeDGA, target: FreeDGA, rename: Mapping[str, str] | None = None) -> AlgebraMap:
    """The map sending each source generator to the same-named (or renamed) target generator."""
    rename = dict(rename or {})
    images = {}
    for g in source.generators:
        t = rename.get(g.name, g.name)
        if t not in target.index:
            raise CWError(f"target has no generator {t!r}")
        images[g.name] = NCPoly.gen(t, target.field)
    return AlgebraMap(source, target, images)


# --------------------------------------------------------------------------
# cells and pushouts

def attach_cell(A: FreeDGA, n: int, y: NCPoly | str | None = None, name: str | None = None) -> FreeDGA:
    """Adjoin a generator x of degree n - 1 with d x = y.

    For n = 1 this adds an inverse pair and ``y`` must be absent.  For n = 2
    ``y`` must be of the form w - 1 for a word w in invertible generators.
    """
    F = A.field
    if name is None:
        name = f"x{n - 1}"
        while name in A.index:
            name += "'"
    if name in A.index or inverse_name(name) in A.index:
        raise CWError(f"generator {name!r} already exists")
    if n < 1:
        raise CWError("only cells of dimension >= 1 can be attached")
    if n == 1:
        if y:
            raise CWError("1-cells attach to the base point and take no attaching data")
        return make_algebra([*A.generators, *inverse_pair(name)], _diffs(A), F)
    if isinstance(y, str):
        try:
            y = A.poly(y)
        except UnknownGenerator as e:
            raise CWError(f"cell {name!r}: attach expression references unknown cell {e.name!r}") from None
        except ParseError as e:
            raise CWError(f"cell {name!r}: {e}") from None
    y = y if y is not None else NCPoly.zero(F)
    A.check_member(y)
    if y:
        deg = A.degree_of(y)
        if deg != n - 2:
            raise CWError(f"cell {name!r}: attaching cycle has degree {deg}, expected {n - 2}")
    if n == 2 and y:
        const = y.constant_term()
        rest = y - NCPoly.const(const, F)
        ok = const == F.neg(F.one) and len(rest.terms) == 1 and next(iter(rest.terms.values())) == 1
        if not ok or not all(A.invertible(g) for g in rest.generators()):
            raise CWError(f"cell {name!r}: a 2-cell needs d = w - 1 for a word w in 1-cells")
    dy = A.differential(y)
    if dy:
        raise NotACycle(f"cell {name!r}: attaching element {A.render(y)}", A.render(dy))
    diffs = _diffs(A)
    if y:
        diffs[name] = y
    return make_algebra([*A.generators, Generator(name, n - 1)], diffs, F)


def _diffs(A: FreeDGA) -> dict:
    return {k: v for k, v in A.diff.items() if not k.endswith(INV)}


def glue(f: AlgebraMap, g: AlgebraMap) -> FreeDGA:
    """Pushout of B <-f- A -g-> C when f is a generator inclusion.

    The result is C with the generators of B outside f(A) adjoined; their
    differentials are rewritten by sending f(a) to g(a).  Names clashing
    with C get primes appended, so gluing two copies of D*(1) along S*(0)
    yields generators b and b'.
    """
    if f.source is not g.source and (f.source.generators != g.source.generators
                                     or f.source.diff != g.source.diff):
        raise CWError("glue needs two maps out of the same algebra")
    B, C = f.target, g.target
    if B.field != C.field:
        raise CWError(f"cannot glue a {B.field} algebra to a {C.field} algebra")
    inc = f.generator_inclusion()
    if inc is None:
        raise CWError("unsupported pushout: the first map must send generators to distinct generators")
    hit = set(inc.values())
    subst: dict[str, NCPoly] = {}
    for a, b in inc.items():
        subst[b] = g.images[a]
    fresh = [x for x in B.generators if x.name not in hit]
    taken = set(C.index)
    new_names: dict[str, str] = {}
    for x in fresh:
        if x.inverse_of is not None and x.name.endswith(INV):
            continue
        nm = x.name
        while nm in taken or inverse_name(nm) in taken:
            nm += "'"
        taken.update({nm, inverse_name(nm)})
        new_names[x.name] = nm
        if x.inverse_of is not None:
            new_names[inverse_name(x.name)] = inverse_name(nm)
    F = C.field
    for old, new in new_names.items():
        subst[old] = NCPoly.gen(new, F)
    gens = list(C.generators)
    for x in fresh:
        nm = new_names[x.name]
        inv = None if x.inverse_of is None else new_names[x.inverse_of]
        gens.append(Generator(nm, x.degree, inv))
    diffs = _diffs(C)
    for x in fresh:
        if x.name in B.diff and not x.name.endswith(INV):
            diffs[new_names[x.name]] = substitute(B.diff[x.name], subst, F)
    try:
        return make_algebra(gens, diffs, F)
    except AlgebraError as e:
        raise CWError(f"glued differential is inconsistent: {e}") from None


# --------------------------------------------------------------------------
# the cellular model

def cellular_model(X: CWComplex) -> FreeDGA:
    A = ground(X.field)
    for c in X.cells:
        if c.dim == 0:
            continue
        A = attach_cell(A, c.dim, _attach_poly(A, c), name=c.id)
    return A


def _attach_poly(A: FreeDGA, c: Cell) -> NCPoly | None:
    if c.attach is None or c.dim <= 1:
        return None
    try:
        p = A.poly(c.attach)
    except UnknownGenerator as e:
        raise CWError(f"cell {c.id!r}: attach expression references unknown cell {e.name!r}") from None
    except ParseError as e:
        raise CWError(f"cell {c.id!r}: {e}") from None
    if c.dim == 2:
        if len(p.terms) != 1 or next(iter(p.terms.values())) != 1 or not all(
                A.invertible(g) for g in p.generators()):
            raise CWError(f"cell {c.id!r}: attach_word must be a word in 1-cells, got {c.attach!r}")
        return p - 1
    return p


# --------------------------------------------------------------------------
# builtin spaces

def sphere(n: int, field: Field = QQ) -> CWComplex:
    if n < 1:
        raise CWError("sphere(n) needs n >= 1")
    top = Cell("a", 1) if n == 1 else Cell(f"x{n - 1}", n)
    return CWComplex(f"S^{n}", (Cell("e0", 0), top), field)


def wedge_of_circles(s: int, field: Field = QQ) -> CWComplex:
    if s < 0:
        raise CWError("wedge_of_circles(s) needs s >= 0")
    return CWComplex(f"wedge of {s} circles",
                     (Cell("e0", 0), *(Cell(f"a{i}", 1) for i in range(1, s + 1))), field)


def rp(n: int, field: Field = QQ) -> CWComplex:
    cells = [Cell("e0", 0), Cell("a", 1), Cell("b1", 2, "a*a")]
    if n == 3:
        cells.append(Cell("c2", 3, "0"))
    elif n != 2:
        raise CWError("rp(n) is available for n = 2 and 3")
    return CWComplex(f"RP^{n}", tuple(cells), field)


def cp(n: int, field: Field = QQ) -> CWComplex:
    """CP^n with d alpha_{2m-1} = sum over i + j = m of alpha_{2i-1} alpha_{2j-1}."""
    if n < 1:
        raise CWError("cp(n) needs n >= 1")
    cells = [Cell("e0", 0), Cell("alpha1", 2)]
    for m in range(2, n + 1):
        terms = [f"alpha{2 * i - 1}*alpha{2 * (m - i) - 1}" for i in range(m - 1, 0, -1)]
        cells.append(Cell(f"alpha{2 * m - 1}", 2 * m, " + ".join(terms)))
    return CWComplex(f"CP^{n}", tuple(cells), field)


def torus(field: Field = QQ) -> CWComplex:
    return CWComplex("T^2", (Cell("e0", 0), Cell("a", 1), Cell("b", 1),
                             Cell("t1", 2, "a*b*a^-1*b^-1")), field)


BUILTINS = {
    "sphere": ("n", sphere),
    "wedge_of_circles": ("s", wedge_of_circles),
    "wedge": ("s", wedge_of_circles),
    "rp": ("n", rp),
    "cp": ("n", cp),
    "torus": (None, lambda field=QQ: torus(field)),
}


def builtin_space(name: str, param: int | None = None, field: Field = QQ) -> CWComplex:
    """Look up ``sphere``, ``wedge_of_circles``, ``rp``, ``cp`` or ``torus``.

    ``name`` may carry its parameter after a colon, as in ``cp:2``.
    """
    if ":" in name:
        name, _, text = name.partition(":")
        try:
            param = int(text)
        except ValueError:
            raise CWError(f"bad parameter {text!r} for space {name!r}") from None
    entry = BUILTINS.get(name)
    if entry is None:
        raise CWError(f"unknown space {name!r}; known: {', '.join(sorted(BUILTINS))}")
    pname, make = entry
    if pname is None:
        if param is not None:
            raise CWError(f"space {name!r} takes no parameter")
        return make(field)
    if param is None:
        raise CWError(f"space {name!r} needs a parameter, e.g. {name}:2")
    return make(param, field)


# --------------------------------------------------------------------------
# plain-data form (the JSON file format)

def cw_from_dict(doc: Any) -> CWComplex:
    if not isinstance(doc, dict):
        raise CWError("top level must be an object")
    unknown = set(doc) - {"name", "field", "cells"}
    if unknown:
        raise CWError(f"unknown top-level field(s): {', '.join(sorted(unknown))}")
    name = doc.get("name", "X")
    if not isinstance(name, str):
        raise CWError("field 'name' must be a string")
    try:
        fld = Field.parse(doc.get("field", "q"))
    except (ValueError, AttributeError) as e:
        raise CWError(f"field 'field': {e}") from None
    cells_doc = doc.get("cells")
    if not isinstance(cells_doc, list) or not cells_doc:
        raise CWError("field 'cells' must be a non-empty list")
    cells = []
    for i, c in enumerate(cells_doc):
        where = f"cells[{i}]"
        if not isinstance(c, dict):
            raise CWError(f"{where}: must be an object")
        bad = set(c) - {"id", "dim", "attach_word", "attach_cycle"}
        if bad:
            raise CWError(f"{where}: unknown field(s) {', '.join(sorted(bad))}")
        cid, dim = c.get("id"), c.get("dim")
        if not isinstance(cid, str):
            raise CWError(f"{where}: 'id' must be a string")
        if not isinstance(dim, int) or isinstance(dim, bool):
            raise CWError(f"{where} ({cid}): 'dim' must be an integer")
        word, cycle = c.get("attach_word"), c.get("attach_cycle")
        if word is not None and dim != 2:
            raise CWError(f"{where} ({cid}): attach_word is only allowed for 2-cells")
        if cycle is not None and dim < 3:
            raise CWError(f"{where} ({cid}): attach_cycle is only allowed for cells of dimension >= 3")
        attach = word if word is not None else cycle
        if attach is not None and not isinstance(attach, str):
            raise CWError(f"{where} ({cid}): attaching expressions are strings")
        cells.append(Cell(cid, dim, attach))
    return CWComplex(name, tuple(cells), fld)


def cw_to_dict(X: CWComplex) -> dict:
    cells = []
    for c in X.cells:
        entry: dict = {"id": c.id, "dim": c.dim}
        if c.attach is not None:
            entry["attach_word" if c.dim == 2 else "attach_cycle"] = c.attach
        cells.append(entry)
    return {"name": X.name, "field": X.field.tag, "cells": cells}
