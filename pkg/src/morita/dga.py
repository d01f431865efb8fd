"""Quasi-free differential graded algebras.

The underlying algebra is free on the generators, with degree-0 generators
optionally paired with inverses.  The differential has degree -1 and obeys
d(uv) = d(u) v + (-1)^|u| u d(v).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .chain import HomologyTable, homology_basis, is_boundary
from .fields import Field, FieldMismatch, QQ
from .gradedcx import build_complex, graded_homology
from .ncpoly import NCPoly, inverse_name, join_reduced, parse_poly, render


class AlgebraError(ValueError):
    pass


class DegreeMismatch(AlgebraError):
    pass


class SquareNotZero(AlgebraError):
    def __init__(self, gen, residue):
        super().__init__(f"d(d({gen})) = {residue} != 0")
        self.generator = gen
        self.residue = residue


class UnboundedBasis(AlgebraError):
    pass


@dataclass(frozen=True)
class Generator:
    name: str
    degree: int
    inverse_of: str | None = None

    def __post_init__(self):
        if self.degree < 0:
            raise AlgebraError(f"generator {self.name} has negative degree {self.degree}")
        if self.inverse_of is not None and self.degree != 0:
            raise AlgebraError(f"generator {self.name} of degree {self.degree} cannot be invertible")


def inverse_pair(name: str) -> tuple[Generator, Generator]:
    """The generators ``name`` and ``name^-1`` in degree 0."""
    return Generator(name, 0, inverse_name(name)), Generator(inverse_name(name), 0, name)


class FreeDGA:
    """A validated quasi-free dg-algebra; build with :func:`make_algebra`."""

    def __init__(self, generators: Sequence[Generator], diff: Mapping[str, NCPoly], field: Field):
        self.generators = tuple(generators)
        self.field = field
        self.index = {g.name: i for i, g in enumerate(self.generators)}
        self.deg = {g.name: g.degree for g in self.generators}
        self.diff = dict(diff)
        self.weight = self._weights()
        self._dcache: dict = {}
        self._bcache: dict = {}

    # ------------------------------------------------------------------
    @property
    def names(self) -> list[str]:
        return [g.name for g in self.generators]

    def generator(self, name: str) -> Generator:
        return self.generators[self.index[name]]

    def has_degree_zero(self) -> bool:
        return any(g.degree == 0 for g in self.generators)

    def invertible(self, name: str) -> bool:
        return self.generator(name).inverse_of is not None

    def positive_generators(self) -> list[Generator]:
        """One generator per inverse pair plus all others (the space V)."""
        return [g for g in self.generators if not (g.inverse_of and g.name.endswith("^-1"))]

    def word_degree(self, w) -> int:
        return sum(self.deg[g] for g in w)

    def word_weight(self, w) -> int:
        return sum(self.weight[g] for g in w)

    def word_key(self, w):
        return (len(w), tuple(self.index[g] for g in w))

    def degree_of(self, p: NCPoly) -> int | None:
        """The common degree of all terms, or None if empty / inhomogeneous."""
        ds = {self.word_degree(w) for w in p.terms}
        return ds.pop() if len(ds) == 1 else None

    def poly(self, text: str) -> NCPoly:
        return parse_poly(text, self.field, self.index)

    def gen(self, name: str) -> NCPoly:
        self.index[name]
        return NCPoly.gen(name, self.field)

    def one(self) -> NCPoly:
        return NCPoly.const(1, self.field)

    def render(self, p: NCPoly) -> str:
        return render(p, self.word_key)

    def _weights(self) -> dict:
        weight = {}
        for g in sorted(self.generators, key=lambda g: g.degree):
            dg = self.diff.get(g.name)
            w = 1
            if dg is not None:
                for word in dg.terms:
                    w = max(w, sum(weight.get(x, 1) for x in word))
            weight[g.name] = w
        return weight

    def check_member(self, p: NCPoly):
        if p.field != self.field:
            raise FieldMismatch(f"{p.field} element used in an algebra over {self.field}")
        for g in p.generators():
            if g not in self.index:
                raise AlgebraError(f"{g!r} is not a generator of this algebra")

    # ------------------------------------------------------------------
    def multiply(self, u: NCPoly, v: NCPoly) -> NCPoly:
        self.check_member(u)
        self.check_member(v)
        return u * v

    def word_differential(self, w: tuple) -> dict:
        """d(w) as ``{word: coefficient}``, by the graded Leibniz rule."""
        hit = self._dcache.get(w)
        if hit is not None:
            return hit
        F = self.field
        acc: dict = {}
        sign_deg = 0
        for j, g in enumerate(w):
            dg = self.diff.get(g)
            if dg is not None and dg.terms:
                odd = sign_deg % 2
                pre, post = w[:j], w[j + 1:]
                for mid, c in dg.terms.items():
                    word = join_reduced(join_reduced(pre, mid), post)
                    x = F.add(acc.get(word, F.zero), F.neg(c) if odd else c)
                    if x:
                        acc[word] = x
                    else:
                        acc.pop(word, None)
            sign_deg += self.deg[g]
        self._dcache[w] = acc
        return acc

    def differential(self, x: NCPoly) -> NCPoly:
        self.check_member(x)
        F = self.field
        acc: dict = {}
        for w, c in x.terms.items():
            for w2, c2 in self.word_differential(w).items():
                v = F.add(acc.get(w2, F.zero), F.mul(c, c2))
                if v:
                    acc[w2] = v
                else:
                    acc.pop(w2, None)
        return NCPoly(acc, F, _trusted=True)

    def augmentation(self, x: NCPoly):
        """Positive-degree generators go to 0, invertible degree-0 generators to 1."""
        F = self.field
        total = F.zero
        for w, c in x.terms.items():
            if all(self.deg[g] == 0 and self.generator(g).inverse_of is not None for g in w):
                total = F.add(total, c)
        return total

    # ------------------------------------------------------------------
    def basis_words(self, n: int, word_bound: int | None = None) -> list[tuple]:
        """Reduced words of degree n (and weighted length <= word_bound), canonically ordered."""
        if word_bound is None and self.has_degree_zero():
            raise UnboundedBasis("algebra has degree-0 generators: a word bound is required")
        key = (n, word_bound)
        hit = self._bcache.get(key)
        if hit is None:
            hit = self._enumerate(n, word_bound)
            self._bcache[key] = hit
        return hit

    def _enumerate(self, n, bound):
        if n < 0:
            return []
        gens = [(g.name, g.degree, self.weight[g.name], g.inverse_of) for g in self.generators]
        out = []

        def rec(prefix, deg_left, budget, last):
            if deg_left == 0:
                out.append(tuple(prefix))
            for name, d, w, inv in gens:
                if d > deg_left or (budget is not None and w > budget):
                    continue
                if last is not None and inv == last:
                    continue
                if d == 0 and budget is None:
                    continue
                prefix.append(name)
                rec(prefix, deg_left - d, None if budget is None else budget - w, name)
                prefix.pop()

        rec([], n, bound, None)
        out.sort(key=self.word_key)
        return out

    def __repr__(self):
        gens = ", ".join(f"{g.name}:{g.degree}" for g in self.generators)
        return f"FreeDGA([{gens}], {self.field})"

    def describe(self) -> str:
        lines = [f"field {self.field.tag}"]
        for g in self.generators:
            d = self.diff.get(g.name) or NCPoly.zero(self.field)
            lines.append(f"{g.name}\t{g.degree}\td = {self.render(d)}")
        return "\n".join(lines)


def make_algebra(gens: Iterable[Generator], diffs: Mapping | None = None, field: Field = QQ) -> FreeDGA:
    """Validate generators and differentials and return a FreeDGA.

    ``diffs`` maps generator names (or Generators) to NCPoly or text.  Missing
    entries mean d = 0; the differential of ``g^-1`` is filled in as
    -g^-1 d(g) g^-1.
    """
    gens = list(gens)
    names = [g.name for g in gens]
    if len(set(names)) != len(names):
        raise AlgebraError("duplicate generator names")
    by_name = {g.name: g for g in gens}
    for g in gens:
        if g.inverse_of is not None:
            partner = by_name.get(g.inverse_of)
            if partner is None or partner.inverse_of != g.name:
                raise AlgebraError(f"inverse pair for {g.name} is not symmetric")
            if {g.name, partner.name} != {g.name, inverse_name(g.name)}:
                raise AlgebraError(f"inverse of {g.name} must be named {inverse_name(g.name)}")
        elif g.name.endswith("^-1"):
            raise AlgebraError(f"{g.name} is named as an inverse but not declared as one")
    raw = {}
    for k, v in (diffs or {}).items():
        name = k.name if isinstance(k, Generator) else k
        if name not in by_name:
            raise AlgebraError(f"differential given for unknown generator {name!r}")
        if isinstance(v, str):
            v = parse_poly(v, field, by_name)
        elif not isinstance(v, NCPoly):
            v = NCPoly.const(v, field)
        if v.field != field:
            raise FieldMismatch(f"differential of {name} is over {v.field}, algebra over {field}")
        for x in v.generators():
            if x not in by_name:
                raise AlgebraError(f"d({name}) uses unknown generator {x!r}")
        raw[name] = v
    probe = FreeDGA(gens, {}, field)
    for name, v in raw.items():
        want = by_name[name].degree - 1
        for w in v.terms:
            if probe.word_degree(w) != want:
                raise DegreeMismatch(
                    f"d({name}) has a term of degree {probe.word_degree(w)}, expected {want}")
    for g in gens:
        if g.inverse_of and g.name.endswith("^-1"):
            base = g.inverse_of
            dg = raw.get(base)
            forced = NCPoly.zero(field)
            if dg:
                inv = NCPoly.gen(g.name, field)
                forced = -(inv * dg * inv)
            given = raw.get(g.name)
            if given is not None and given != forced:
                raise AlgebraError(f"d({g.name}) must equal -{g.name} d({base}) {g.name}")
            raw[g.name] = forced
    diff = {k: v for k, v in raw.items() if v}
    A = FreeDGA(gens, diff, field)
    for g in gens:
        if g.name in diff:
            dd = A.differential(diff[g.name])
            if dd:
                raise SquareNotZero(g.name, A.render(dd))
    return A


def free_algebra_from_spec(spec: Sequence[tuple], field: Field = QQ) -> FreeDGA:
    """Shorthand: ``[("x1", 1, None), ("x2", 2, "x1"), ("a", 0, "inv")]``."""
    gens, diffs = [], {}
    for name, deg, d in spec:
        if d == "inv":
            gens.extend(inverse_pair(name))
        else:
            gens.append(Generator(name, deg))
            if d is not None:
                diffs[name] = d
    return make_algebra(gens, diffs, field)


# --------------------------------------------------------------------------
# homology

def algebra_complex(A: FreeDGA, lo: int, hi: int, word_bound: int | None = None):
    return build_complex(A.field, A.basis_words, A.word_differential, lo, hi, word_bound)


def algebra_homology(A: FreeDGA, max_degree: int, word_bound: int | None = None,
                     representatives: bool = False) -> HomologyTable:
    """Degreewise homology of (A, d) for degrees 0..max_degree."""
    if word_bound is None and A.has_degree_zero():
        raise UnboundedBasis("algebra has degree-0 generators: a word bound is required")
    slack = max(A.weight.values(), default=1)
    table = graded_homology(A.field, A.basis_words, A.word_differential, 0, max_degree,
                            word_bound, slack)
    table.title = "H_*(A)"
    if representatives and word_bound is None:
        cx = algebra_complex(A, 0, max_degree + 1)
        reps = {}
        for n in range(0, max_degree + 1):
            basis = A.basis_words(n)
            reps[n] = [vector_to_poly(A, basis, v) for v in homology_basis(cx, n)]
        table.representatives = reps
    return table


def vector_to_poly(A: FreeDGA, basis: list, vec) -> NCPoly:
    return NCPoly({w: c for w, c in zip(basis, vec) if c}, A.field, _trusted=True)


def poly_to_vector(A: FreeDGA, basis: list, p: NCPoly) -> list:
    idx = {w: i for i, w in enumerate(basis)}
    vec = [A.field.zero] * len(basis)
    for w, c in p.terms.items():
        vec[idx[w]] = c
    return vec


def is_boundary_in(A: FreeDGA, p: NCPoly) -> bool:
    """True when the homogeneous element ``p`` is d of something (exact bases only)."""
    n = A.degree_of(p)
    if n is None:
        return not p
    cx = algebra_complex(A, n, n + 1)
    return is_boundary(cx, n, poly_to_vector(A, A.basis_words(n), p))


# generating objects

def S(n: int, field: Field = QQ, name: str | None = None) -> FreeDGA:
    """k[x_n | d x_n = 0]."""
    return make_algebra([Generator(name or f"x{n}", n)], {}, field)


def D(n: int, field: Field = QQ) -> FreeDGA:
    """k[x_{n-1}, x_n | d x_n = x_{n-1}]."""
    lo, hi = f"x{n - 1}", f"x{n}"
    return make_algebra([Generator(lo, n - 1), Generator(hi, n)], {hi: NCPoly.gen(lo, field)}, field)


def S_star(field: Field = QQ, name: str = "a") -> FreeDGA:
    """k[a, a^-1]."""
    return make_algebra(inverse_pair(name), {}, field)


def D_star(field: Field = QQ, a: str = "a", b: str = "b") -> FreeDGA:
    """k[a, a^-1, b | d b = a - 1]."""
    return make_algebra([*inverse_pair(a), Generator(b, 1)],
                        {b: NCPoly.gen(a, field) - 1}, field)


def ground(field: Field = QQ) -> FreeDGA:
    return make_algebra([], {}, field)
