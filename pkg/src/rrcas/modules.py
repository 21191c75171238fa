"""Submodules of free modules R^r: Groebner bases, membership, syzygies,
minimal generators and colons.

Vectors are lists of Polynomials of length ``rank``.
"""

from __future__ import annotations

from . import engine
from .linalg import echelon, in_span
from .orders import DEGREVLEX
from .poly import Polynomial, PolyRing


def to_dict(vec, offset=0):
    out = {}
    for i, f in enumerate(vec):
        for e, c in f.terms_dict.items():
            out[(i + offset, e)] = c
    return out


def from_dict(ring: PolyRing, d: dict, rank: int, offset=0):
    parts = [{} for _ in range(rank)]
    for (i, e), c in d.items():
        parts[i - offset][e] = c
    return [Polynomial(ring, t) for t in parts]


def is_zero_vec(v):
    return all(f.is_zero() for f in v)


def vec_degree(v, twists):
    """Degree of a homogeneous vector (None for zero)."""
    for f, t in zip(v, twists):
        if not f.is_zero():
            return f.degree() + t
    return None


class Submodule:
    """Submodule of R^rank generated by ``gens`` with a cached Groebner basis."""

    def __init__(self, ring: PolyRing, rank: int, gens, twists=None):
        self.ring = ring
        self.rank = rank
        self.gens = [list(g) for g in gens if not is_zero_vec(g)]
        self.twists = list(twists) if twists is not None else None
        self._gb = None
        self._tkey = engine.top_key(DEGREVLEX.key, self.twists)

    def gb_elems(self):
        if self._gb is None:
            p = self.ring.field.char
            vecs = engine.groebner_vecs([to_dict(g) for g in self.gens], self._tkey, p)
            self._gb = engine.elems_from_gb(vecs, self._tkey)
        return self._gb

    def gb(self):
        return [from_dict(self.ring, e.vec(), self.rank) for e in self.gb_elems()]

    def reduce(self, v):
        r = engine.reduce_vec(to_dict(v), self.gb_elems(), self._tkey, self.ring.field.char)
        return from_dict(self.ring, r, self.rank)

    def contains(self, v) -> bool:
        return is_zero_vec(self.reduce(v))

    def contains_all(self, vecs) -> bool:
        return all(self.contains(v) for v in vecs)

    def is_everything(self) -> bool:
        units = set()
        for e in self.gb_elems():
            if not any(e.lexp):
                units.add(e.comp)
        return len(units) == self.rank

    def leading_monomials_by_component(self):
        out = [[] for _ in range(self.rank)]
        for e in self.gb_elems():
            out[e.comp].append(e.lexp)
        return out

    def dimension(self) -> int:
        """Krull dimension of R^rank / self (max over components of the initial module)."""
        from .ideals import monomial_dimension
        n = self.ring.nvars
        best = -1
        for lms in self.leading_monomials_by_component():
            best = max(best, monomial_dimension(lms, n) if lms else n)
        return best


def syzygies_of(ring: PolyRing, gens, rank: int, twists=None):
    """Generators of {c : sum c_j gens[j] = 0}, by elimination in R^rank ⊕ R^len(gens).

    With ``twists`` the gens must be homogeneous; the syzygies are then
    homogeneous with respect to the induced degrees.
    """
    r = len(gens)
    if r == 0:
        return []
    p = ring.field.char
    if twists is not None:
        gdeg = [vec_degree(g, twists) for g in gens]
        gdeg = [d if d is not None else 0 for d in gdeg]
        tw = list(twists) + gdeg
    else:
        tw = None
    tkey = engine.block_key(DEGREVLEX.key, rank, tw)
    vecs = []
    one = ring.field.one
    for j, g in enumerate(gens):
        d = to_dict(g)
        d[(rank + j, ring.zero_exp)] = one
        vecs.append(d)
    gb = engine.groebner_vecs(vecs, tkey, p)
    out = []
    for v in gb:
        lt = min(v, key=tkey)
        if lt[0] >= rank:
            out.append(from_dict(ring, v, r, offset=rank))
    return out


def preimage(ring, images, target_rank, relations, target_twists=None):
    """{c ∈ R^len(images) : sum c_j images[j] ∈ relations} (projected syzygies)."""
    gens = list(images) + list(relations)
    syz = syzygies_of(ring, gens, target_rank, target_twists)
    n = len(images)
    return [s[:n] for s in syz if not is_zero_vec(s[:n])]


def minimal_generators(ring, gens, rank, twists):
    """Minimal homogeneous generators (graded Nakayama), in order of degree."""
    items = []
    for g in gens:
        d = vec_degree(g, twists)
        if d is not None:
            items.append((d, g))
    items.sort(key=lambda t: t[0])
    kept = []
    p = ring.field.char
    k = 0
    while k < len(items):
        d = items[k][0]
        batch = []
        while k < len(items) and items[k][0] == d:
            batch.append(items[k][1])
            k += 1
        lower = Submodule(ring, rank, [g for _, g in kept], twists) if kept else None
        pivots = {}
        for g in batch:
            r = lower.reduce(g) if lower is not None else g
            rd = to_dict(r)
            if not rd:
                continue
            keyed = {(c, DEGREVLEX.key(e)): v for (c, e), v in rd.items()}
            if in_span(pivots, keyed, p):
                continue
            piv, _ = echelon(list(pivots.values()) + [keyed], p)
            pivots = piv
            kept.append((d, g))
    return [g for _, g in kept], [d for d, _ in kept]


def ideal_colon_vec(ring, N_gens, rank, u):
    """(N :_R u) = {f : f u ∈ N} as a list of polynomials."""
    syz = syzygies_of(ring, [u] + list(N_gens), rank)
    return [s[0] for s in syz if not s[0].is_zero()]


def module_colon_element(ring, N_gens, rank, w: Polynomial):
    """(N :_F w) = {v ∈ R^rank : w v ∈ N}."""
    images = []
    for i in range(rank):
        v = [ring.zero()] * rank
        v[i] = w
        images.append(v)
    return preimage(ring, images, rank, N_gens)
