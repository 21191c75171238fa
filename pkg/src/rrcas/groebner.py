"""Reduced Groebner bases, normal forms and Schreyer syzygies for ideals."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from . import engine
from .orders import MonomialOrder
from .poly import Polynomial, PolyRing, RingMismatch


def to_vec(f: Polynomial, comp=0):
    return {(comp, e): c for e, c in f.terms_dict.items()}


def from_vec(ring: PolyRing, v: dict):
    return Polynomial(ring, {e: c for (_, e), c in v.items()})


def ideal_key(order: MonomialOrder):
    mkey = order.key
    return lambda t: mkey(t[1])


class GroebnerBasis:
    """Reduced Groebner basis of an ideal for a fixed monomial order."""

    def __init__(self, ring: PolyRing, order: MonomialOrder, elements, reduced=True):
        self.ring = ring
        self.order = order
        self.elements = list(elements)
        self.reduced = reduced
        self._tkey = ideal_key(order)
        self._elems = [engine.Elem(engine.sort_terms(to_vec(g), self._tkey), g.degree())
                       for g in self.elements]

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def __eq__(self, other):
        return (isinstance(other, GroebnerBasis) and self.order == other.order
                and set(self.elements) == set(other.elements))

    def __repr__(self):
        return f"GroebnerBasis({[str(g) for g in self.elements]}, order={self.order})"

    def leading_monomials(self):
        return [g.lm(self.order) for g in self.elements]

    def is_unit(self):
        return any(g.is_constant() and not g.is_zero() for g in self.elements)

    def is_zero_ideal(self):
        return not self.elements

    def reduce(self, f: Polynomial, record=None) -> Polynomial:
        if f.ring.names != self.ring.names:
            raise RingMismatch(f"{f.ring} vs {self.ring}")
        r = engine.reduce_vec(to_vec(f), self._elems, self._tkey, self.ring.field.char,
                              record=record)
        return from_vec(self.ring, r)

    def contains(self, f: Polynomial) -> bool:
        return self.reduce(f).is_zero()


def buchberger(gens, order: MonomialOrder | None = None, ring: PolyRing | None = None,
               max_pairs=None) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by ``gens``."""
    gens = list(gens)
    if ring is None:
        if not gens:
            raise ValueError("need a ring for an empty generator list")
        ring = gens[0].ring
    for g in gens:
        if g.ring.names != ring.names or g.ring.field != ring.field:
            raise RingMismatch(f"{g.ring} vs {ring}")
    order = order or ring.order
    tkey = ideal_key(order)
    vecs = engine.groebner_vecs([to_vec(g) for g in gens], tkey, ring.field.char,
                                max_pairs=max_pairs)
    return GroebnerBasis(ring, order, [from_vec(ring, v) for v in vecs])


def normal_form(f: Polynomial, G: GroebnerBasis) -> Polynomial:
    return G.reduce(f)


@dataclass
class SyzygyMatrix:
    """Columns are coefficient vectors ``c`` with ``sum(c[i] * g[i]) == 0``."""

    ring: PolyRing
    columns: list
    twists: list = dc_field(default_factory=list)

    def check(self, gens) -> bool:
        for col in self.columns:
            s = self.ring.zero()
            for c, g in zip(col, gens):
                s = s + c * g
            if not s.is_zero():
                return False
        return True


def syzygies(G: GroebnerBasis) -> SyzygyMatrix:
    """First syzygies of the basis elements from S-polynomial division transcripts.

    For every pair with a nontrivial lcm the reduction ``S(g_i, g_j) -> 0``
    gives ``m_i e_i - m_j e_j - sum q_k e_k``; by Schreyer's theorem these
    generate the syzygy module.
    """
    R = G.ring
    p = R.field.char
    els = G._elems
    n = len(els)
    cols = []
    twists = []
    for i in range(n):
        for j in range(i + 1, n):
            s, mi, mj = engine.spoly(els[i], els[j], p)
            rec = []
            rem = engine.reduce_vec(s, els, G._tkey, p, record=rec)
            if rem:
                raise AssertionError("input is not a Groebner basis")
            col = [R.zero() for _ in range(n)]
            col[i] = col[i] + R.monomial(mi)
            col[j] = col[j] - R.monomial(mj)
            for k, mexp, c in rec:
                col[k] = col[k] - R.monomial(mexp, c)
            cols.append(col)
            twists.append(sum(mi) + sum(els[i].lexp))
    return SyzygyMatrix(R, cols, twists)
