"""Unital involutive quantales on finite lattices, with optional supports.

Table-backed quantales validate every law exhaustively at construction;
the vectorized checks keep that affordable up to the 512-element relation
quantale on three worlds.  RelationQuantale is the lazy counterpart for
world sets too large to tabulate, computing the same operations on bitmask
codes directly.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from . import relations as rel
from .errors import (
    InvalidGroupoid,
    NoStableSupport,
    NotAssociative,
    NotDistributive,
    NotInvolutive,
    SupportLawFails,
    SupportLocaleLawFails,
    UnitLawFails,
)
from .lattice import FiniteSupLattice, _bits, powerset_lattice


class Quantale:
    """Explicit multiplication/involution tables over a FiniteSupLattice.

    Optionally carries a support table; when present it has passed all the
    support axioms and the stability equation, so `stable` is always True
    for a supported instance.  Use make_quantale to construct.
    """

    def __init__(self, lattice, mul, inv, unit, support, stable):
        self.lattice = lattice
        self.n = lattice.n
        self.mul_table = tuple(tuple(r) for r in mul)
        self.inv_table = tuple(inv)
        self.unit = unit
        self.support_table = None if support is None else tuple(support)
        self.stable = stable
        self.bottom = lattice.bottom
        self.top = lattice.top
        self._supp_elems = None

    def __repr__(self):
        return f"Quantale(n={self.n}, supported={self.has_support})"

    @property
    def has_support(self) -> bool:
        return self.support_table is not None

    @property
    def elements(self) -> range:
        return range(self.n)

    def mul(self, a: int, b: int) -> int:
        return self.mul_table[a][b]

    def inv(self, a: int) -> int:
        return self.inv_table[a]

    def support(self, a: int) -> int:
        return self.support_table[a]

    def join(self, a: int, b: int) -> int:
        return self.lattice.join(a, b)

    def meet(self, a: int, b: int) -> int:
        return self.lattice.meet(a, b)

    def leq(self, a: int, b: int) -> bool:
        return self.lattice.leq(a, b)

    def join_all(self, xs: Iterable[int]) -> int:
        return self.lattice.join_all(xs)

    def support_elements(self) -> tuple[int, ...]:
        'Elements below the unit, ascending.'
        if self._supp_elems is None:
            self._supp_elems = tuple(
                x for x in range(self.n) if self.lattice.leq(x, self.unit))
        return self._supp_elems


def _leq_matrix(lattice) -> np.ndarray:
    n = lattice.n
    out = np.zeros((n, n), dtype=bool)
    for a in range(n):
        up = lattice.upset(a)
        for b in _bits(up):
            out[a, b] = True
    return out


def _first(mask: np.ndarray):
    'Index tuple of the first failure in a boolean condition array.'
    return tuple(int(v) for v in np.argwhere(~mask)[0])


def make_quantale(lattice: FiniteSupLattice, mul: Sequence[Sequence[int]],
                  inv: Sequence[int], unit: int,
                  support: Sequence[int] | None = None) -> Quantale:
    """Validate every quantale law exhaustively and return the instance.

    Checks, in order: preservation of the bottom, associativity,
    distribution over binary joins on both sides (enough, by finiteness,
    for all nonempty joins), unit laws, involution laws, and, when a
    support table is supplied, the support axioms plus stability.
    """
    n = lattice.n
    M = np.asarray(mul, dtype=np.int64)
    I = np.asarray(inv, dtype=np.int64)
    if M.shape != (n, n) or I.shape != (n,):
        raise ValueError("table shapes do not match the carrier")
    if not (0 <= unit < n):
        raise ValueError("unit index out of range")
    J = np.asarray(lattice._join, dtype=np.int64)
    bot = lattice.bottom
    ar = np.arange(n)

    if not (M[bot] == bot).all() or not (M[:, bot] == bot).all():
        raise NotDistributive("multiplication does not preserve the empty join")
    for a in range(n):
        left = M[M[a]]
        right = M[a][M]
        if not (left == right).all():
            b, c = _first(left == right)
            raise NotAssociative(f"(a b) c != a (b c) at {(a, b, c)}")
        la = J[np.ix_(M[a], M[a])]
        if not (M[a][J] == la).all():
            b, c = _first(M[a][J] == la)
            raise NotDistributive(f"a (b v c) != a b v a c at {(a, b, c)}")
        Ma = M[:, a]
        ra = J[np.ix_(Ma, Ma)]
        if not (Ma[J] == ra).all():
            b, c = _first(Ma[J] == ra)
            raise NotDistributive(f"(b v c) a != b a v c a at {(b, c, a)}")
    if not (M[unit] == ar).all() or not (M[:, unit] == ar).all():
        a = int(np.argmax(M[unit] != ar)) if (M[unit] != ar).any() \
            else int(np.argmax(M[:, unit] != ar))
        raise UnitLawFails(f"unit law fails at element {a}")
    if not (I[I] == ar).all():
        raise NotInvolutive(f"a-- != a at {_first(I[I] == ar)}")
    anti = M[np.ix_(I, I)].T
    if not (I[M] == anti).all():
        raise NotInvolutive(f"(a b)- != b- a- at {_first(I[M] == anti)}")
    if not (I[J] == J[np.ix_(I, I)]).all():
        raise NotInvolutive(
            f"(a v b)- != a- v b- at {_first(I[J] == J[np.ix_(I, I)])}")
    if I[bot] != bot:
        raise NotInvolutive("bottom- != bottom")

    supp = None
    if support is not None:
        S = np.asarray(support, dtype=np.int64)
        if S.shape != (n,):
            raise ValueError("support table shape does not match the carrier")
        _check_support(lattice, M, I, S, unit, _leq_matrix(lattice), J)
        supp = tuple(int(x) for x in S)
    return Quantale(lattice, [[int(x) for x in r] for r in M],
                    [int(x) for x in I], unit, supp, supp is not None)


def _check_support(lattice, M, I, S, unit, leq, J):
    'Support axioms and stability; raises SupportLawFails with the first witness.'
    n = lattice.n
    ar = np.arange(n)
    bad = leq[S, unit]
    if not bad.all():
        raise SupportLawFails(f"sa <= e fails at a={_first(bad)[0]}")
    aai = M[ar, I]
    bad = leq[S, aai]
    if not bad.all():
        raise SupportLawFails(f"sa <= a a- fails at a={_first(bad)[0]}")
    saa = M[S, ar]
    bad = leq[ar, saa]
    if not bad.all():
        raise SupportLawFails(f"a <= (sa) a fails at a={_first(bad)[0]}")
    if S[lattice.bottom] != lattice.bottom:
        raise SupportLawFails("s(bottom) != bottom")
    bad = S[J] == J[np.ix_(S, S)]
    if not bad.all():
        raise SupportLawFails(f"s(a v b) != sa v sb at {_first(bad)}")
    bad = S[M] == S[M[:, S]]
    if not bad.all():
        raise SupportLawFails(f"s(a b) != s(a sb) at {_first(bad)}")


def derive_support(q: Quantale) -> tuple[int, ...]:
    """Candidate support e ^ (a a-), validated before being returned.

    The formula is only a candidate; when any axiom or stability fails the
    quantale has no stable support of this shape and NoStableSupport is
    raised with the offending law.
    """
    L = q.lattice
    S = [L.meet(q.unit, q.mul(a, q.inv(a))) for a in range(q.n)]
    try:
        _check_support(L, np.asarray(q.mul_table, dtype=np.int64),
                       np.asarray(q.inv_table, dtype=np.int64),
                       np.asarray(S, dtype=np.int64), q.unit,
                       _leq_matrix(L), np.asarray(L._join, dtype=np.int64))
    except SupportLawFails as exc:
        raise NoStableSupport(str(exc)) from None
    return tuple(S)


def with_derived_support(q: Quantale) -> Quantale:
    return make_quantale(q.lattice, q.mul_table, q.inv_table, q.unit,
                         support=derive_support(q))


# --- relation quantales ---------------------------------------------------

class RelationQuantale:
    """Powerset-of-relations quantale computed lazily on bitmask codes.

    Elements are relation codes (ints); nothing is tabulated, so any world
    count works.  The operations mirror Quantale's surface exactly.
    """

    def __init__(self, worlds: Sequence):
        self.worlds = tuple(worlds)
        self.nw = len(self.worlds)
        self.unit = rel.diagonal(self.nw)
        self.bottom = 0
        self.top = rel.full(self.nw)
        self.stable = True

    def __repr__(self):
        return f"RelationQuantale(worlds={self.nw})"

    has_support = True

    def mul(self, a, b):
        return rel.compose(a, b, self.nw)

    def inv(self, a):
        return rel.converse(a, self.nw)

    def support(self, a):
        return rel.support(a, self.nw)

    def join(self, a, b):
        return a | b

    def meet(self, a, b):
        return a & b

    def leq(self, a, b):
        return a & ~b == 0

    def join_all(self, xs):
        out = 0
        for x in xs:
            out |= x
        return out

    def support_elements(self):
        'All subsets of the diagonal.'
        n = self.nw
        out = []
        for sub in range(1 << n):
            out.append(rel.encode(((i, i) for i in _bits(sub)), n))
        return tuple(sorted(out))

    def star(self, a):
        return rel.star(a, self.nw)


def relation_quantale(worlds: Sequence) -> Quantale:
    """The full, exhaustively validated quantale of relations on worlds.

    Element i is the relation with bit code i; the lattice is the powerset
    of world pairs in the same bit order.  Guarded to three worlds, beyond
    which the tables are no longer desk-scale; use RelationQuantale there.
    """
    worlds = tuple(worlds)
    k = len(worlds)
    if k > 3:
        raise ValueError("tabulated relation quantale is limited to 3 worlds")
    lattice = powerset_lattice([(worlds[i], worlds[j])
                                for i in range(k) for j in range(k)])
    n = lattice.n
    # one-arrow composites, then two nested subset DPs
    single = [[rel.compose(1 << p, 1 << q, k) for q in range(k * k)]
              for p in range(k * k)]
    half = [[0] * n for _ in range(k * k)]
    for p in range(k * k):
        rowp = half[p]
        for b in range(1, n):
            low = b & -b
            rowp[b] = rowp[b ^ low] | single[p][low.bit_length() - 1]
    mul = [[0] * n for _ in range(n)]
    for a in range(1, n):
        low = a & -a
        rows_prev = mul[a ^ low]
        rows_p = half[low.bit_length() - 1]
        mul[a] = [rows_prev[b] | rows_p[b] for b in range(n)]
    inv = [rel.converse(a, k) for a in range(n)]
    support = [rel.support(a, k) for a in range(n)]
    return make_quantale(lattice, mul, inv, rel.diagonal(k), support=support)


# --- groupoids ------------------------------------------------------------

class FiniteGroupoid:
    """Arrows with partial composition, all invertible.

    Composition is diagrammatic: compose(g, h) is defined exactly when
    cod(g) = dom(h).  Identities are inferred and validated, one per object.
    """

    def __init__(self, objects: Sequence, arrows: Sequence,
                 dom: Sequence[int], cod: Sequence[int],
                 comp: dict[tuple[int, int], int], inv: Sequence[int]):
        self.objects = tuple(objects)
        self.arrows = tuple(arrows)
        self.dom = tuple(dom)
        self.cod = tuple(cod)
        self.comp = dict(comp)
        self.inv = tuple(inv)
        self._validate()

    def _validate(self):
        m = len(self.arrows)
        no = len(self.objects)
        if len(self.dom) != m or len(self.cod) != m or len(self.inv) != m:
            raise InvalidGroupoid("arrow table sizes disagree")
        for g in range(m):
            if not (0 <= self.dom[g] < no and 0 <= self.cod[g] < no):
                raise InvalidGroupoid(f"arrow {self.arrows[g]!r} has a bad endpoint")
        for g in range(m):
            for h in range(m):
                defined = (g, h) in self.comp
                if defined != (self.cod[g] == self.dom[h]):
                    raise InvalidGroupoid(
                        f"composability of {self.arrows[g]!r}, {self.arrows[h]!r} "
                        "does not match endpoints")
                if defined:
                    k = self.comp[g, h]
                    if self.dom[k] != self.dom[g] or self.cod[k] != self.cod[h]:
                        raise InvalidGroupoid(
                            f"composite of {self.arrows[g]!r}, {self.arrows[h]!r} "
                            "has wrong endpoints")
        for g in range(m):
            for h in range(m):
                for k in range(m):
                    if (g, h) in self.comp and (h, k) in self.comp:
                        if self.comp[self.comp[g, h], k] != self.comp[g, self.comp[h, k]]:
                            raise InvalidGroupoid(
                                f"associativity fails at {(g, h, k)}")
        self.identities = []
        for x in range(no):
            cands = [e for e in range(m)
                     if self.dom[e] == self.cod[e] == x
                     and all(self.comp[g, e] == g for g in range(m) if self.cod[g] == x)
                     and all(self.comp[e, h] == h for h in range(m) if self.dom[h] == x)]
            if len(cands) != 1:
                raise InvalidGroupoid(
                    f"object {self.objects[x]!r} has {len(cands)} identities")
            self.identities.append(cands[0])
        self.identities = tuple(self.identities)
        for g in range(m):
            gi = self.inv[g]
            if self.dom[gi] != self.cod[g] or self.cod[gi] != self.dom[g]:
                raise InvalidGroupoid(f"inverse of {self.arrows[g]!r} has wrong endpoints")
            if self.inv[gi] != g:
                raise InvalidGroupoid(f"inverse not involutive at {self.arrows[g]!r}")
            if self.comp[g, gi] != self.identities[self.dom[g]]:
                raise InvalidGroupoid(f"g g- != id_dom at {self.arrows[g]!r}")
            if self.comp[gi, g] != self.identities[self.cod[g]]:
                raise InvalidGroupoid(f"g- g != id_cod at {self.arrows[g]!r}")


def pair_groupoid(worlds: Sequence) -> FiniteGroupoid:
    'Arrows are world pairs (x, y): x -> y; composition matches relations.'
    worlds = tuple(worlds)
    k = len(worlds)
    arrows = [(worlds[i], worlds[j]) for i in range(k) for j in range(k)]
    idx = {a: t for t, a in enumerate(arrows)}
    dom = [i for i in range(k) for _ in range(k)]
    cod = [j for _ in range(k) for j in range(k)]
    comp = {}
    for g, (x, y) in enumerate(arrows):
        for h, (y2, z) in enumerate(arrows):
            if y == y2:
                comp[g, h] = idx[(x, z)]
    inv = [idx[(y, x)] for (x, y) in arrows]
    return FiniteGroupoid(worlds, arrows, dom, cod, comp, inv)


def group_groupoid(labels: Sequence, mul: Sequence[Sequence[int]],
                   inv: Sequence[int], unit: int) -> FiniteGroupoid:
    'A group seen as a one-object groupoid.'
    m = len(labels)
    comp = {(g, h): mul[g][h] for g in range(m) for h in range(m)}
    return FiniteGroupoid(["*"], labels, [0] * m, [0] * m, comp, inv)


def groupoid_quantale(G: FiniteGroupoid) -> Quantale:
    """Powerset of arrows: X Y collects the defined composites.

    The unit is the set of identities and the support of X is the set of
    identities at domains of members of X.
    """
    m = len(G.arrows)
    lattice = powerset_lattice(G.arrows)
    n = lattice.n
    single = [[0] * m for _ in range(m)]
    for (g, h), k in G.comp.items():
        single[g][h] |= 1 << k
    half = [[0] * n for _ in range(m)]
    for g in range(m):
        for b in range(1, n):
            low = b & -b
            half[g][b] = half[g][b ^ low] | single[g][low.bit_length() - 1]
    mul = [[0] * n for _ in range(n)]
    for a in range(1, n):
        low = a & -a
        prev = mul[a ^ low]
        hg = half[low.bit_length() - 1]
        mul[a] = [prev[b] | hg[b] for b in range(n)]
    inv = [0] * n
    for a in range(n):
        x = 0
        for g in _bits(a):
            x |= 1 << G.inv[g]
        inv[a] = x
    unit = 0
    for e in G.identities:
        unit |= 1 << e
    support = [0] * n
    for a in range(n):
        x = 0
        for g in _bits(a):
            x |= 1 << G.identities[G.dom[g]]
        support[a] = x
    return make_quantale(lattice, mul, inv, unit, support=support)


# --- the support locale ---------------------------------------------------

@dataclass(frozen=True)
class SupportLocale:
    """The elements below the unit, as a frame.

    q_elements maps locale indices back to quantale elements; to_locale is
    the inverse.  Constructed and validated by supports_locale.
    """

    lattice: FiniteSupLattice
    q_elements: tuple[int, ...]
    to_locale: dict

    def from_q(self, x: int) -> int:
        return self.to_locale[x]

    def to_q(self, i: int) -> int:
        return self.q_elements[i]


def supports_locale(q) -> SupportLocale:
    """Check that the elements below the unit form a locale under the
    quantale operations, and return it as an explicit lattice.

    Verifies b = b b = b- for every b below the unit, that multiplication
    restricted there is the meet, and that the resulting lattice is a
    frame; any failure raises SupportLocaleLawFails.
    """
    elems = tuple(q.support_elements())
    for b in elems:
        if q.mul(b, b) != b:
            raise SupportLocaleLawFails(f"b b != b below the unit at {b}")
        if q.inv(b) != b:
            raise SupportLocaleLawFails(f"b- != b below the unit at {b}")
    for b in elems:
        for c in elems:
            if q.mul(b, c) != q.meet(b, c):
                raise SupportLocaleLawFails(
                    f"multiplication is not meet below the unit at {(b, c)}")
    idx = {x: i for i, x in enumerate(elems)}
    m = len(elems)
    up = [0] * m
    down = [0] * m
    for i, x in enumerate(elems):
        for j, y in enumerate(elems):
            if q.leq(x, y):
                up[i] |= 1 << j
                down[j] |= 1 << i
    join_t = [[idx[q.join(x, y)] for y in elems] for x in elems]
    meet_t = [[idx[q.meet(x, y)] for y in elems] for x in elems]
    labels = tuple(elems)
    lat = FiniteSupLattice(labels, up, down, join_t, meet_t,
                           idx[q.bottom], idx[q.unit])
    if not lat.is_frame():
        raise SupportLocaleLawFails("the elements below the unit are not a frame")
    return SupportLocale(lat, elems, idx)


@dataclass(frozen=True)
class PointFlags:
    reflexive: bool
    transitive: bool
    symmetric: bool
    total_support: bool


def check_point_properties(q, alpha: int) -> PointFlags:
    'Order-theoretic properties of a chosen point element.'
    return PointFlags(
        reflexive=q.leq(q.unit, alpha),
        transitive=q.leq(q.mul(alpha, alpha), alpha),
        symmetric=q.inv(alpha) == alpha,
        total_support=q.support(alpha) == q.unit,
    )
