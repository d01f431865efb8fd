"""Representations of quasi-free dg-algebras on perfect complexes, and Ext.

A representation assigns to each generator g an endomorphism rho(g) of
degree |g| of a finite-dimensional complex M such that
d rho(g) - (-1)^|g| rho(g) d = rho(dg).  Words act by composition, without
signs.

Ext is computed from the small resolution of a quasi-free algebra B with
generating space V (one generator per inverse pair plus every generator of
positive degree):

    0 -> B (x) V (x) B --j--> B (x) B --> B -> 0,   j(a v b) = av (x) b - a (x) vb.

Its differential involves the universal derivation D: B -> B (x) V (x) B,
recorded per generator as terms ``(c, l, u, r)`` meaning c * l (x) u (x) r.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Mapping, Sequence

from .chain import ChainComplex, HomologyTable, homology_dims
from .dga import FreeDGA, UnboundedBasis
from .fields import Field
from .gradedcx import graded_homology
from .linalg import SparseMatrix, kernel_basis
from .ncpoly import NCPoly, join_reduced


class RepresentationError(ValueError):
    pass


class CompatibilityError(RepresentationError):
    def __init__(self, gen: str, residue):
        super().__init__(f"action of {gen} is not compatible with d: residue {residue}")
        self.generator = gen
        self.residue = residue


class NotInvertible(RepresentationError):
    pass


# --------------------------------------------------------------------------
# small dense matrices of raw field values

def _zeros(r, c):
    return [[0] * c for _ in range(r)]


def _eye(F: Field, n):
    m = _zeros(n, n)
    for i in range(n):
        m[i][i] = F.one
    return m


def _mul(F: Field, a, b):
    rows, inner = len(a), len(b)
    cols = len(b[0]) if b else 0
    out = _zeros(rows, cols)
    for i in range(rows):
        ai = a[i]
        oi = out[i]
        for k in range(inner):
            x = ai[k]
            if x:
                bk = b[k]
                for j in range(cols):
                    if bk[j]:
                        oi[j] = F.add(oi[j], F.mul(x, bk[j]))
    return out


def _lin(F: Field, *pairs):
    """sum of c * M over ``(c, M)`` pairs (all the same shape)."""
    first = pairs[0][1]
    out = _zeros(len(first), len(first[0]) if first else 0)
    for c, m in pairs:
        if not c:
            continue
        for i, row in enumerate(m):
            for j, x in enumerate(row):
                if x:
                    out[i][j] = F.add(out[i][j], F.mul(c, x))
    return out


def _is_zero(m) -> bool:
    return not any(x for row in m for x in row)


def _inverse(F: Field, m):
    n = len(m)
    a = [list(row) + e for row, e in zip(m, _eye(F, n))]
    for c in range(n):
        piv = next((i for i in range(c, n) if a[i][c]), None)
        if piv is None:
            return None
        a[c], a[piv] = a[piv], a[c]
        inv = F.inv(a[c][c])
        a[c] = [F.mul(inv, x) for x in a[c]]
        for i in range(n):
            if i != c and a[i][c]:
                f = a[i][c]
                a[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(a[i], a[c])]
    return [row[n:] for row in a]


def _dense(F: Field, m, n: int):
    """Coerce a SparseMatrix or nested list to an n x n list of raw values."""
    if isinstance(m, SparseMatrix):
        if m.field != F:
            raise RepresentationError(f"matrix over {m.field}, expected {F}")
        m = m.to_dense()
    rows = [[F(x) for x in row] for row in m]
    if len(rows) != n or any(len(r) != n for r in rows):
        raise RepresentationError(f"action matrices must be {n} x {n}")
    return rows


# --------------------------------------------------------------------------
# graded carriers

class Carrier:
    """A ChainComplex flattened onto one basis ordered by degree."""

    def __init__(self, c: ChainComplex):
        self.complex = c
        self.field = c.field
        self.degrees = [n for n in c.support for _ in range(c.dim(n))]
        self.offset = {}
        pos = 0
        for n in c.support:
            self.offset[n] = pos
            pos += c.dim(n)
        self.size = pos
        d = _zeros(pos, pos)
        for n in c.support:
            b = c.boundary(n)
            if n - 1 in self.offset:
                for i, j, x in b.entries:
                    d[self.offset[n - 1] + i][self.offset[n] + j] = x
        self.d = d

    def check_degree(self, m, deg: int, what: str):
        for i, row in enumerate(m):
            for j, x in enumerate(row):
                if x and self.degrees[i] - self.degrees[j] != deg:
                    raise RepresentationError(f"{what} is not homogeneous of degree {deg}")

    def from_blocks(self, blocks: Mapping[int, object], deg: int):
        """Assemble ``{source degree n: block C_n -> C_{n+deg}}`` into a total matrix."""
        F = self.field
        m = _zeros(self.size, self.size)
        for n, blk in blocks.items():
            if isinstance(blk, SparseMatrix):
                blk = blk.to_dense()
            r0, c0 = self.offset.get(n + deg), self.offset.get(n)
            rows = self.complex.dim(n + deg)
            cols = self.complex.dim(n)
            if len(blk) != rows or any(len(r) != cols for r in blk):
                raise RepresentationError(f"block from degree {n} must be {rows} x {cols}")
            for i, row in enumerate(blk):
                for j, x in enumerate(row):
                    x = F(x)
                    if x:
                        m[r0 + i][c0 + j] = x
        return m

    def boundary_of(self, m, deg: int):
        """d m - (-1)^deg m d."""
        F = self.field
        return _lin(F, (F.one, _mul(F, self.d, m)), (F.neg(F.sign(deg)), _mul(F, m, self.d)))


# --------------------------------------------------------------------------

class Representation:
    """A validated action of a FreeDGA on a perfect complex."""

    def __init__(self, algebra: FreeDGA, carrier: ChainComplex, action: Mapping[str, list]):
        self.algebra = algebra
        self.carrier = Carrier(carrier)
        self.action = dict(action)
        self._words: dict = {}

    @property
    def field(self) -> Field:
        return self.algebra.field

    def word_action(self, w: tuple):
        hit = self._words.get(w)
        if hit is None:
            F = self.field
            hit = _eye(F, self.carrier.size)
            for g in w:
                hit = _mul(F, hit, self.action[g])
            self._words[w] = hit
        return hit

    def act(self, p: NCPoly):
        """The matrix of rho applied to an algebra element."""
        F = self.field
        n = self.carrier.size
        pairs = [(c, self.word_action(w)) for w, c in p.terms.items()]
        return _lin(F, *pairs) if pairs else _zeros(n, n)

    def residue(self, g: str):
        A = self.algebra
        dg = A.diff.get(g) or NCPoly.zero(A.field)
        lhs = self.carrier.boundary_of(self.action[g], A.deg[g])
        rhs = self.act(dg)
        return _lin(A.field, (A.field.one, lhs), (A.field.neg(A.field.one), rhs))

    def check(self):
        for g in self.algebra.generators:
            r = self.residue(g.name)
            if not _is_zero(r):
                raise CompatibilityError(g.name, r)


def make_representation(A: FreeDGA, M: ChainComplex, action: Mapping[str, object]) -> Representation:
    """Validate an action: total matrices, SparseMatrix, or ``{degree: block}`` dicts.

    Actions of ``g^-1`` may be omitted and are then computed by inversion.
    """
    F = A.field
    if M.field != F:
        raise RepresentationError(f"carrier over {M.field}, algebra over {F}")
    car = Carrier(M)
    mats = {}
    for name, m in action.items():
        if name not in A.index:
            raise RepresentationError(f"{name!r} is not a generator of the algebra")
        deg = A.deg[name]
        m = car.from_blocks(m, deg) if isinstance(m, Mapping) else _dense(F, m, car.size)
        car.check_degree(m, deg, f"action of {name}")
        mats[name] = m
    for g in A.generators:
        if g.name in mats:
            continue
        if g.inverse_of is not None and g.inverse_of in mats:
            inv = _inverse(F, mats[g.inverse_of])
            if inv is None:
                raise NotInvertible(f"action of {g.inverse_of} is not invertible")
            mats[g.name] = inv
        else:
            raise RepresentationError(f"no action given for generator {g.name!r}")
    eye = _eye(F, car.size)
    for g in A.generators:
        if g.inverse_of is not None:
            if _mul(F, mats[g.name], mats[g.inverse_of]) != eye:
                raise NotInvertible(f"actions of {g.name} and {g.inverse_of} are not inverse")
    rep = Representation(A, M, mats)
    rep.check()
    return rep


def trivial_module(A: FreeDGA) -> Representation:
    """k in degree 0 via the augmentation."""
    F = A.field
    M = ChainComplex({0: 1}, {}, F)
    action = {g.name: [[F.one if g.inverse_of is not None else F.zero]] for g in A.generators}
    return make_representation(A, M, action)


# --------------------------------------------------------------------------
# the small resolution

Term = tuple  # (coefficient, left word, V generator, right word)


def derivation_of_word(A: FreeDGA, w: tuple) -> list[Term]:
    """D(w) = sum_j w[:j] D(w_j) w[j+1:], with D(g^-1) = -g^-1 (x) g (x) g^-1."""
    F = A.field
    out = []
    for j, g in enumerate(w):
        gen = A.generator(g)
        if gen.inverse_of is not None and g.endswith("^-1"):
            base = gen.inverse_of
            out.append((F.neg(F.one), w[:j + 1], base, w[j:]))
        else:
            out.append((F.one, w[:j], g, w[j + 1:]))
    return out


def derivation(A: FreeDGA, p: NCPoly) -> list[Term]:
    F = A.field
    acc: dict = {}
    for w, c in p.terms.items():
        for c2, l, u, r in derivation_of_word(A, w):
            key = (l, u, r)
            x = F.add(acc.get(key, F.zero), F.mul(c, c2))
            if x:
                acc[key] = x
            else:
                acc.pop(key)
    return [(c, l, u, r) for (l, u, r), c in sorted(acc.items(), key=lambda t: _term_key(A, t[0]))]


def _term_key(A: FreeDGA, t):
    l, u, r = t
    return (A.word_key(l), A.index[u], A.word_key(r))


@dataclass
class SemifreeResolution:
    algebra: FreeDGA
    V: list
    univ_derivation: dict
    slot_weight: dict

    def cone_basis(self, n: int, bound: int | None):
        """Basis of the cone of j in degree n: ("s", a, v, b) and ("p", a, b) keys."""
        A = self.algebra
        out = []
        for g in self.V:
            v = g.name
            rest = n - 1 - g.degree
            if rest < 0:
                continue
            budget = None if bound is None else bound - self.slot_weight[v]
            if budget is not None and budget < 0:
                continue
            out.extend(("s", a, v, b) for a, b in _pairs(A, rest, budget))
        out.extend(("p", a, b) for a, b in _pairs(A, n, bound))
        return out

    def cone_boundary(self, key) -> dict:
        A = self.algebra
        F = A.field
        acc: dict = {}

        def add(k, c):
            x = F.add(acc.get(k, F.zero), c)
            if x:
                acc[k] = x
            else:
                acc.pop(k, None)

        if key[0] == "p":
            _, a, b = key
            for a2, c in A.word_differential(a).items():
                add(("p", a2, b), c)
            sgn = F.sign(A.word_degree(a))
            for b2, c in A.word_differential(b).items():
                add(("p", a, b2), F.mul(sgn, c))
            return acc
        _, a, v, b = key
        da = A.word_degree(a)
        dv = A.deg[v]
        # -s(delta x)
        for a2, c in A.word_differential(a).items():
            add(("s", a2, v, b), F.neg(c))
        sgn = F.neg(F.sign(da))
        for c, l, u, r in self.univ_derivation[v]:
            add(("s", join_reduced(a, l), u, join_reduced(r, b)), F.mul(sgn, c))
        sgn = F.neg(F.sign(da + dv))
        for b2, c in A.word_differential(b).items():
            add(("s", a, v, b2), F.mul(sgn, c))
        # + j(x)
        add(("p", join_reduced(a, (v,)), b), F.one)
        add(("p", a, join_reduced((v,), b)), F.neg(F.one))
        return acc

    def exactness_certificate(self, max_degree: int, word_bound: int | None = None):
        """(cone homology, algebra homology) on degrees 0..max_degree."""
        from .dga import algebra_homology
        A = self.algebra
        if word_bound is None and A.has_degree_zero():
            raise UnboundedBasis("algebra has degree-0 generators: a word bound is required")
        slack = max([*A.weight.values(), *self.slot_weight.values()], default=1)
        cone = graded_homology(A.field, self.cone_basis, self.cone_boundary, 0, max_degree,
                               word_bound, slack)
        return cone, algebra_homology(A, max_degree, word_bound)


def _pairs(A: FreeDGA, n: int, bound: int | None):
    """Pairs of words (a, b) with |a| + |b| = n and total weight <= bound."""
    out = []
    for da in range(n + 1):
        for a in A.basis_words(da, bound):
            left = None if bound is None else bound - A.word_weight(a)
            for b in A.basis_words(n - da, left):
                out.append((a, b))
    return out


def semifree_resolution(A: FreeDGA) -> SemifreeResolution:
    V = A.positive_generators()
    ud = {}
    for g in V:
        dg = A.diff.get(g.name)
        ud[g.name] = derivation(A, dg) if dg else []
    # weight of a V slot: large enough that the resolution differential never
    # raises total weight, even through the -g^-1 (x) g (x) g^-1 rule
    sw: dict = {}
    for g in sorted(V, key=lambda g: g.degree):
        w = A.weight[g.name]
        for c, l, u, r in ud[g.name]:
            w = max(w, A.word_weight(l) + sw.get(u, A.weight[u]) + A.word_weight(r))
        sw[g.name] = w
    return SemifreeResolution(A, V, ud, sw)


# --------------------------------------------------------------------------
# derived hom

def derived_hom_complex(M: Representation, N: Representation,
                        resolution: SemifreeResolution | None = None) -> ChainComplex:
    """The complex Hom_k(M, N) (+) Hom_k(sV (x) M, N) computing RHom(M, N).

    In homological degree p a cochain is a pair (f, h): f: M -> N of degree
    p, and h sends v (x) m to N in degree |v| + |m| + 1 + p.
    """
    A = M.algebra
    if N.algebra is not A and (N.algebra.generators != A.generators or N.algebra.diff != A.diff):
        raise RepresentationError("representations over different algebras")
    F = A.field
    R = resolution or semifree_resolution(A)
    CM, CN = M.carrier, N.carrier
    dM, dN = CM.d, CN.d

    # basis: ("f", i, j) and ("h", v, i, j), graded by p
    basis: dict[int, list] = {}
    for i, di in enumerate(CN.degrees):
        for j, dj in enumerate(CM.degrees):
            basis.setdefault(di - dj, []).append(("f", i, j))
            for g in R.V:
                basis.setdefault(di - dj - g.degree - 1, []).append(("h", g.name, i, j))
    index = {p: {k: t for t, k in enumerate(keys)} for p, keys in basis.items()}
    vdeg = {g.name: g.degree for g in R.V}

    def unit(i, j):
        m = _zeros(CN.size, CM.size)
        m[i][j] = F.one
        return m

    def image(key, p):
        """D(key) as {basis key: raw} in degree p - 1."""
        out: dict = {}

        def put(kind, v, m, sign=F.one):
            for i, row in enumerate(m):
                for j, x in enumerate(row):
                    if x:
                        k = ("f", i, j) if kind == "f" else ("h", v, i, j)
                        y = F.add(out.get(k, F.zero), F.mul(sign, x))
                        if y:
                            out[k] = y
                        else:
                            out.pop(k, None)

        sp = F.sign(p)
        if key[0] == "f":
            E = unit(key[1], key[2])
            put("f", None, _lin(F, (F.one, _mul(F, dN, E)), (F.neg(sp), _mul(F, E, dM))))
            for v in vdeg:
                t = _lin(F, (F.mul(sp, F.sign(vdeg[v] * p)), _mul(F, N.action[v], E)),
                         (F.neg(sp), _mul(F, E, M.action[v])))
                put("h", v, t, F.neg(F.one))
            return out
        _, hv, i0, j0 = key
        E = unit(i0, j0)
        put("h", hv, _mul(F, dN, E))
        put("h", hv, _mul(F, E, dM), F.mul(sp, F.sign(vdeg[hv])))
        for v in vdeg:
            for c, l, u, r in R.univ_derivation[v]:
                if u != hv:
                    continue
                coef = F.mul(F.mul(sp, c), F.sign(A.word_degree(l) * (1 + p)))
                put("h", v, _mul(F, _mul(F, N.word_action(l), E), M.word_action(r)), coef)
        return out

    dims = {p: len(keys) for p, keys in basis.items()}
    mats = {}
    for p, keys in basis.items():
        if p - 1 not in basis:
            continue
        cols = []
        for key in keys:
            cols.append({index[p - 1][k]: x for k, x in image(key, p).items()})
        mats[p] = SparseMatrix.from_columns(len(basis[p - 1]), F, cols)
    labels = {p: [str(k) for k in keys] for p, keys in basis.items()}
    return ChainComplex(dims, mats, F, labels)


def derived_hom(A: FreeDGA, M: Representation, N: Representation, max_degree: int,
                word_bound: int | None = None, min_degree: int = 0) -> HomologyTable:
    """Ext^n(M, N) for min_degree <= n <= max_degree, with n = -p cohomological.

    The complex is finite because V and the carriers are finite, so no word
    bound is needed; ``word_bound`` is accepted for interface symmetry.
    """
    if M.algebra is not A and M.algebra.generators != A.generators:
        raise RepresentationError("M is not a representation of this algebra")
    cx = derived_hom_complex(M, N)
    h = homology_dims(cx, -max_degree, -min_degree)
    dims = {-p: d for p, d in h.dims.items()}
    return HomologyTable(min_degree, max_degree, dims, h.stability_flag,
                         convention="cohomological: n = -p", title="Ext^*(M, N)")


# --------------------------------------------------------------------------
# the explicit S^1 hom-complex

class MonodromyPair:
    """A complex with a degree-0 automorphism phi."""

    def __init__(self, carrier: ChainComplex, phi, phi_inverse=None):
        self.carrier = Carrier(carrier)
        F = carrier.field
        n = self.carrier.size
        phi = self.carrier.from_blocks(phi, 0) if isinstance(phi, Mapping) else _dense(F, phi, n)
        self.carrier.check_degree(phi, 0, "phi")
        if not _is_zero(self.carrier.boundary_of(phi, 0)):
            raise RepresentationError("phi does not commute with the differential")
        if phi_inverse is None:
            phi_inverse = _inverse(F, phi)
            if phi_inverse is None:
                raise NotInvertible("phi is not invertible")
        else:
            phi_inverse = _dense(F, phi_inverse, n)
        eye = _eye(F, n)
        if _mul(F, phi, phi_inverse) != eye or _mul(F, phi_inverse, phi) != eye:
            raise NotInvertible("the stored inverse of phi is wrong")
        self.phi = phi
        self.phi_inverse = phi_inverse

    @property
    def field(self) -> Field:
        return self.carrier.field

    def as_representation(self, A: FreeDGA, gen: str = "a") -> Representation:
        """The same data as a module over S*(0) = k[a, a^-1]."""
        return make_representation(A, self.carrier.complex, {gen: self.phi})


def monodromy_complex(P: MonodromyPair, Q: MonodromyPair) -> ChainComplex:
    """Hom(M, N) (+) Hom(M, N) with D(f, h) = (df, dh - (-1)^|f| (psi f - f phi)).

    In homological degree p the pair is (f of degree p, h of degree p + 1).
    """
    if P.field != Q.field:
        raise RepresentationError(f"pairs over {P.field} and {Q.field}")
    F = P.field
    CM, CN = P.carrier, Q.carrier
    basis: dict[int, list] = {}
    for i, di in enumerate(CN.degrees):
        for j, dj in enumerate(CM.degrees):
            basis.setdefault(di - dj, []).append(("f", i, j))
            basis.setdefault(di - dj - 1, []).append(("h", i, j))
    index = {p: {k: t for t, k in enumerate(keys)} for p, keys in basis.items()}
    mats = {}
    for p, keys in basis.items():
        if p - 1 not in basis:
            continue
        cols = []
        for kind, i, j in keys:
            E = _zeros(CN.size, CM.size)
            E[i][j] = F.one
            col: dict = {}
            fdeg = p if kind == "f" else p + 1
            parts = [(kind, _lin(F, (F.one, _mul(F, CN.d, E)),
                                 (F.neg(F.sign(fdeg)), _mul(F, E, CM.d))))]
            if kind == "f":
                tw = _lin(F, (F.one, _mul(F, Q.phi, E)), (F.neg(F.one), _mul(F, E, P.phi)))
                parts.append(("h", _lin(F, (F.neg(F.sign(p)), tw))))
            for k2, m in parts:
                for a, row in enumerate(m):
                    for b, x in enumerate(row):
                        if x:
                            t = index[p - 1][(k2, a, b)]
                            col[t] = F.add(col.get(t, F.zero), x)
            cols.append({t: x for t, x in col.items() if x})
        mats[p] = SparseMatrix.from_columns(len(basis[p - 1]), F, cols)
    return ChainComplex({p: len(k) for p, k in basis.items()}, mats, F)


def monodromy_hom(P: MonodromyPair, Q: MonodromyPair, max_range: int = 1,
                  min_range: int = 0) -> HomologyTable:
    """Cohomology of the S^1 hom-complex in degrees min_range..max_range."""
    cx = monodromy_complex(P, Q)
    h = homology_dims(cx, -max_range, -min_range)
    dims = {-p: d for p, d in h.dims.items()}
    return HomologyTable(min_range, max_range, dims, h.stability_flag,
                         convention="cohomological: n = -p", title="Hom over S^1")


def random_monodromy_pair(rng: random.Random, field: Field, max_dim: int = 4,
                          degrees: Sequence[int] = (-1, 0, 1)) -> MonodromyPair:
    """A random complex of total dimension <= max_dim with a random automorphism."""
    while True:
        total = rng.randint(1, max_dim)
        dims: dict[int, int] = {}
        for _ in range(total):
            n = rng.choice(list(degrees))
            dims[n] = dims.get(n, 0) + 1
        mats = {}
        support = sorted(dims)
        for n in support:
            if n - 1 in dims:
                mats[n] = [[field(rng.randint(-1, 1)) for _ in range(dims[n])] for _ in range(dims[n - 1])]
        # enforce d^2 = 0 by zeroing the later map when the composite fails
        for n in support:
            if n in mats and n - 1 in mats:
                prod = _mul(field, mats[n - 1], mats[n])
                if not _is_zero(prod):
                    mats[n] = [[0] * dims[n] for _ in range(dims[n - 1])]
        sparse = {n: SparseMatrix.from_dense(m, field) for n, m in mats.items()}
        C = ChainComplex(dims, sparse, field)
        car = Carrier(C)
        # random chain automorphism: a random element of the commutant of d
        keys = [(i, j) for i in range(car.size) for j in range(car.size)
                if car.degrees[i] == car.degrees[j]]
        cols = []
        for i, j in keys:
            E = _zeros(car.size, car.size)
            E[i][j] = field.one
            comm = car.boundary_of(E, 0)
            cols.append({a * car.size + b: x for a, row in enumerate(comm) for b, x in enumerate(row) if x})
        sol = _kernel_combination(field, cols, len(keys), rng)
        phi = _zeros(car.size, car.size)
        for (i, j), x in zip(keys, sol):
            phi[i][j] = x
        if _inverse(field, phi) is None:
            continue
        return MonodromyPair(C, phi)


def _kernel_combination(F: Field, cols: list[dict], n: int, rng: random.Random) -> list:
    rows = max((k for c in cols for k in c), default=-1) + 1
    if rows == 0:
        return [F(rng.randint(-2, 2)) for _ in range(n)]
    m = SparseMatrix.from_columns(rows, F, cols)
    ker = kernel_basis(m)
    out = [F.zero] * n
    for vec in ker:
        c = F(rng.randint(-2, 2))
        out = [F.add(x, F.mul(c, y)) for x, y in zip(out, vec)]
    return out


# --------------------------------------------------------------------------
# independent Ext oracle: the reduced bar construction

def bar_ext_oracle(A: FreeDGA, max_degree: int) -> HomologyTable:
    """dim Ext^n_A(k, k) = dim Tor^A_n(k, k), from the reduced bar construction.

    Requires every generator in degree >= 1, so that each bar degree is
    finite and the answer exact.  Basis elements are tuples of non-empty
    words [w1|...|wq] in degree sum(|wi| + 1).
    """
    if A.has_degree_zero():
        raise UnboundedBasis("the bar oracle needs all generators in degree >= 1")
    F = A.field

    def basis(n, _bound):
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

        if n >= 0:
            rec([], n)
        return out

    def boundary(key):
        acc: dict = {}

        def add(k, c):
            x = F.add(acc.get(k, F.zero), c)
            if x:
                acc[k] = x
            else:
                acc.pop(k, None)

        eps = 0
        for i, w in enumerate(key):
            sgn = F.neg(F.sign(eps))
            for w2, c in A.word_differential(w).items():
                if w2:
                    add(key[:i] + (w2,) + key[i + 1:], F.mul(sgn, c))
            eps += A.word_degree(w) + 1
            if i + 1 < len(key):
                add(key[:i] + (w + key[i + 1],) + key[i + 2:], F.sign(eps))
        return acc

    h = graded_homology(F, basis, boundary, 0, max_degree)
    h.title = "Ext^*(k, k) via the bar construction"
    h.convention = "cohomological: Ext^n has the dimension of Tor_n"
    return h

