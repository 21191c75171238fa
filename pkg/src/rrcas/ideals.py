"""Ideal arithmetic: sums, products, powers, intersections, colons,
saturation, elimination, dimension and colength at the origin."""

from __future__ import annotations

import threading
from itertools import combinations_with_replacement

from . import engine
from .groebner import GroebnerBasis, buchberger, to_vec
from .linalg import left_kernel
from .orders import DEGREVLEX, MonomialOrder, elim
from .poly import Polynomial, PolyRing, RingMismatch


class SupportError(ValueError):
    """The quotient is not supported only at the origin."""


class Ideal:
    """Generators plus a per-order cache of reduced Groebner bases."""

    def __init__(self, ring: PolyRing, gens=()):
        self.ring = ring
        clean = []
        seen = set()
        for g in gens:
            if not isinstance(g, Polynomial):
                g = ring(g)
            if g.ring.names != ring.names or g.ring.field != ring.field:
                raise RingMismatch(f"{g.ring} vs {ring}")
            if g.is_zero():
                continue
            g = g.monic()
            if g not in seen:
                seen.add(g)
                clean.append(g)
        self.gens = clean
        self._cache = {}
        self._lock = threading.Lock()

    @classmethod
    def unit(cls, ring):
        return cls(ring, [ring.one()])

    @classmethod
    def maximal(cls, ring):
        return cls(ring, ring.gens())

    def __repr__(self):
        return f"Ideal({[str(g) for g in self.gens]})"

    def gb(self, order: MonomialOrder = DEGREVLEX) -> GroebnerBasis:
        G = self._cache.get(order)
        if G is None:
            G = buchberger(self.gens, order, ring=self.ring)
            with self._lock:
                self._cache[order] = G
        return G

    def reduced_gens(self, order=DEGREVLEX):
        return list(self.gb(order).elements)

    def contains(self, f) -> bool:
        if not isinstance(f, Polynomial):
            f = self.ring(f)
        return self.gb().contains(f)

    def reduce(self, f):
        return self.gb().reduce(f)

    def is_subset(self, other: "Ideal") -> bool:
        G = other.gb()
        return all(G.contains(g) for g in self.gens)

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        return self.gb() == other.gb()

    def __hash__(self):
        return hash(frozenset(self.gb().elements))

    def is_zero(self):
        return not self.gens

    def is_unit(self):
        return self.gb().is_unit()

    def __add__(self, other):
        return Ideal(self.ring, self.gens + other.gens)

    def __mul__(self, other):
        if isinstance(other, Polynomial):
            return Ideal(self.ring, [g * other for g in self.gens])
        return Ideal(self.ring, span_basis([a * b for a in self.gens for b in other.gens]))

    def __pow__(self, n):
        return ideal_power(self, n)

    def leading_monomials(self, order=DEGREVLEX):
        return self.gb(order).leading_monomials()

    def is_homogeneous(self, weights=None):
        return all(g.is_homogeneous(weights) for g in self.gb().elements)

    def dimension(self) -> int:
        return krull_dimension(self)

    def change_ring(self, ring, var_map=None):
        return Ideal(ring, [g.change_ring(ring, var_map) for g in self.gens])


IdealHandle = Ideal


def span_basis(polys):
    """Row-reduced basis of the k-span of ``polys`` (same ideal, fewer generators)."""
    polys = [p for p in polys if not p.is_zero()]
    if len(polys) <= 1:
        return polys
    ring = polys[0].ring
    key = ring.order.key
    rows = [dict(p.terms_dict) for p in polys]
    F = ring.field
    p_char = F.char
    basis = []   # (pivot exp, row) with pivot coefficient 1
    for r in rows:
        r = dict(r)
        for piv, b in basis:
            c = r.get(piv)
            if c:
                for e, x in b.items():
                    v = r.get(e, 0) - c * x
                    if p_char:
                        v %= p_char
                    if v:
                        r[e] = v
                    else:
                        r.pop(e, None)
        if not r:
            continue
        piv = min(r, key=key)
        inv = F.inv(r[piv])
        r = {e: F.normal(x * inv) for e, x in r.items()}
        for k, (pv, b) in enumerate(basis):
            c = b.get(piv)
            if c:
                for e, x in r.items():
                    v = b.get(e, 0) - c * x
                    if p_char:
                        v %= p_char
                    if v:
                        b[e] = v
                    else:
                        b.pop(e, None)
        basis.append((piv, r))
    basis.sort(key=lambda pb: key(pb[0]))
    return [Polynomial(ring, b) for _, b in basis]


def ideal_power(I: Ideal, n: int) -> Ideal:
    """I^n, generated by all n-fold products of generators."""
    if not isinstance(n, int) or n < 1:
        raise ValueError("ideal_power needs n >= 1 (use the unit ideal for n = 0)")
    if n == 1:
        return Ideal(I.ring, list(I.gens))
    gens = I.gens
    if all(len(g) == 1 for g in gens):
        # monomial ideals: products of minimal generators, minimalized
        R = I.ring
        mons = set()
        for combo in combinations_with_replacement(range(len(gens)), n):
            e = [0] * R.nvars
            for k in combo:
                for i, x in enumerate(gens[k].lm()):
                    e[i] += x
            mons.add(tuple(e))
        return Ideal(R, [R.monomial(e) for e in minimal_monomials(mons)])
    cur = list(gens)
    for _ in range(n - 1):
        cur = span_basis([a * b for a in cur for b in gens])
    return Ideal(I.ring, cur)


def minimal_monomials(mons):
    mons = sorted(set(mons), key=lambda e: (sum(e), e))
    out = []
    for m in mons:
        if not any(all(a <= b for a, b in zip(d, m)) for d in out):
            out.append(m)
    return out


def _extend_front(ring: PolyRing, names):
    """Ring with new variables ``names`` placed first."""
    fresh = []
    for n in names:
        base = n
        k = 0
        while n in ring.names or n in fresh:
            k += 1
            n = f"{base}{k}"
        fresh.append(n)
    return PolyRing(tuple(fresh) + ring.names, ring.field)


def _embed(f: Polynomial, big: PolyRing, shift: int):
    return Polynomial(big, {(0,) * shift + e: c for e, c in f.terms_dict.items()})


def _project(f: Polynomial, small: PolyRing, shift: int):
    return Polynomial(small, {e[shift:]: c for e, c in f.terms_dict.items()})


def intersect(I: Ideal, J: Ideal) -> Ideal:
    """I ∩ J by eliminating t from t*I + (1 - t)*J."""
    R = I.ring
    if I.is_zero() or J.is_zero():
        return Ideal(R, [])
    if I.is_unit():
        return Ideal(R, J.gens)
    if J.is_unit():
        return Ideal(R, I.gens)
    big = _extend_front(R, ["t"])
    t = big.gen(0)
    gens = [t * _embed(f, big, 1) for f in I.gens]
    gens += [(1 - t) * _embed(g, big, 1) for g in J.gens]
    G = buchberger(gens, elim(1), ring=big)
    out = [_project(g, R, 1) for g in G.elements if g.lm(G.order)[0] == 0]
    return Ideal(R, out)


def exact_divide(a: Polynomial, f: Polynomial) -> Polynomial:
    R = a.ring
    p = R.field.char
    tkey = lambda t: DEGREVLEX.key(t[1])
    fm = f.monic(DEGREVLEX)
    el = engine.Elem(engine.sort_terms(to_vec(fm), tkey), fm.degree())
    rec = []
    rem = engine.reduce_vec(to_vec(a), [el], tkey, p, record=rec)
    if rem:
        raise ArithmeticError("inexact division")
    q = {}
    for _, mexp, c in rec:
        q[mexp] = R.field.normal(q.get(mexp, 0) + c)
    q = {e: c for e, c in q.items() if c}
    return Polynomial(R, q).scale(R.field.inv(f.lc(DEGREVLEX)))


def colon_principal(I: Ideal, f: Polynomial, method="auto") -> Ideal:
    R = I.ring
    if f.is_zero() or I.contains(f):
        return Ideal.unit(R)
    if f.is_constant():
        return Ideal(R, I.gens)
    if method == "linear" or (method == "auto" and krull_dimension(I) == 0):
        return colon_zero_dim(I, [f])
    inter = intersect(I, Ideal(R, [f]))
    return Ideal(R, [exact_divide(g, f) for g in inter.gens])


def colon(I: Ideal, J: Ideal, method="auto") -> Ideal:
    """(I : J) = {f : f*J ⊆ I}.

    Zero-dimensional I: kernel of multiplication by the generators of J on
    the standard-monomial basis of k[x]/I.  Otherwise (or with
    ``method="elim"``): intersect the colons by single generators of J.
    """
    R = I.ring
    if J.is_zero():
        return Ideal.unit(R)
    gens = [g for g in J.gens if not I.contains(g)]
    if not gens:
        return Ideal.unit(R)
    if method == "linear" or (method == "auto" and krull_dimension(I) == 0):
        return colon_zero_dim(I, gens)
    result = None
    for g in gens:
        c = colon_principal(I, g, method="elim")
        if c.is_unit():
            continue
        result = c if result is None else intersect(result, c)
    return result if result is not None else Ideal.unit(R)


def colon_zero_dim(I: Ideal, gens) -> Ideal:
    """(I : (gens)) for zero-dimensional I by linear algebra on k[x]/I."""
    R = I.ring
    G = I.gb()
    if G.is_unit():
        return Ideal.unit(R)
    B = standard_monomials(G.leading_monomials(), R.nvars)
    idx = {b: i for i, b in enumerate(B)}
    rows = []
    for b in B:
        mono = R.monomial(b)
        row = {}
        for k, g in enumerate(gens):
            r = G.reduce(mono * g)
            for e, c in r.terms_dict.items():
                row[(k, idx[e])] = c
        rows.append(row)
    ker = left_kernel(rows, R.field.char)
    new = [Polynomial(R, {B[i]: c for i, c in comb.items()}) for comb in ker]
    return Ideal(R, list(G.elements) + span_basis(new))


def saturation(I: Ideal, J: Ideal, max_steps: int = 100) -> Ideal:
    """Stable value of the chain (I : J^n), found by iterated colons."""
    cur = I
    for _ in range(max_steps):
        nxt = colon(cur, J)
        if nxt == cur:
            return cur
        cur = nxt
    raise RuntimeError("saturation did not stabilize")


def eliminate(I: Ideal, front_vars, target: PolyRing | None = None) -> Ideal:
    """Generators of I ∩ k[remaining variables]."""
    R = I.ring
    front = [R.index(v) if isinstance(v, str) else v for v in front_vars]
    if not front:
        return Ideal(R, I.gens) if target is None else I.change_ring(target)
    rest = [i for i in range(R.nvars) if i not in front]
    perm = front + rest
    big = PolyRing(tuple(R.names[i] for i in perm), R.field)
    var_map = [perm.index(i) for i in range(R.nvars)]
    gens = [g.change_ring(big, var_map) for g in I.gens]
    G = buchberger(gens, elim(len(front)), ring=big)
    nf = len(front)
    keep = [g for g in G.elements if not any(g.lm(G.order)[:nf])]
    if target is None:
        back = [perm[k] for k in range(big.nvars)]
        return Ideal(R, [g.change_ring(R, back) for g in keep])
    return Ideal(target, [_project(g, target, nf) if target.names == big.names[nf:]
                          else g.change_ring(target, [None] * nf + [target.index(n) for n in big.names[nf:]])
                          for g in keep])


def monomial_dimension(mons, nvars) -> int:
    """Krull dimension of k[x]/(mons): n minus the minimum hitting set of supports."""
    supports = []
    for m in mons:
        s = frozenset(i for i, x in enumerate(m) if x)
        if not s:
            return -1
        supports.append(s)
    supports = list(set(supports))
    # drop supersets: hitting the smaller set suffices
    supports = [s for s in supports if not any(t < s for t in supports)]
    best = [nvars]

    def search(chosen, remaining):
        if len(chosen) >= best[0]:
            return
        todo = [s for s in remaining if not (s & chosen)]
        if not todo:
            best[0] = len(chosen)
            return
        s = min(todo, key=len)
        for v in sorted(s):
            search(chosen | {v}, todo)

    search(frozenset(), supports)
    return nvars - best[0]


def krull_dimension(I: Ideal) -> int:
    """dim k[x]/I (−1 for the unit ideal)."""
    return monomial_dimension(I.leading_monomials(), I.ring.nvars)


def standard_monomials(lms, nvars, limit=10**6):
    """All monomials outside the monomial ideal generated by ``lms``."""
    lms = list(lms)
    if any(not any(m) for m in lms):
        return []
    out = []
    seen = {(0,) * nvars}
    stack = [(0,) * nvars]
    while stack:
        e = stack.pop()
        out.append(e)
        if len(out) > limit:
            raise RuntimeError("too many standard monomials")
        for i in range(nvars):
            ne = e[:i] + (e[i] + 1,) + e[i + 1:]
            if ne in seen:
                continue
            seen.add(ne)
            if not any(all(a <= b for a, b in zip(m, ne)) for m in lms):
                stack.append(ne)
    return out


def radical_contains(I: Ideal, f: Polynomial) -> bool:
    """f ∈ rad(I) via the Rabinowitsch trick: 1 ∈ I + (1 - t f)."""
    R = I.ring
    if I.contains(f):
        return True
    big = _extend_front(R, ["t"])
    t = big.gen(0)
    gens = [_embed(g, big, 1) for g in I.gens] + [1 - t * _embed(f, big, 1)]
    return buchberger(gens, DEGREVLEX, ring=big).is_unit()


def support_at_origin_only(I: Ideal) -> bool:
    """V(I) ⊆ {0}: zero-dimensional and every variable in the radical."""
    if I.is_unit():
        return True
    if krull_dimension(I) != 0:
        return False
    weights = _positive_weights(I)
    if weights is not None:
        return True
    R = I.ring
    return all(radical_contains(I, x) for x in R.gens())


def _positive_weights(I: Ideal):
    """Standard grading check: a homogeneous zero-dimensional ideal lives at the origin."""
    if all(g.is_homogeneous() for g in I.gb().elements):
        return [1] * I.ring.nvars
    return None


def colength_at_origin(q: Ideal, J: Ideal) -> int:
    """dim_k k[x]/(q + J), requiring the quotient to be supported at the origin."""
    S = q + J
    if not support_at_origin_only(S):
        raise SupportError("support not confined to origin")
    G = S.gb()
    if G.is_unit():
        return 0
    return len(standard_monomials(G.leading_monomials(), S.ring.nvars))


def locally_equal(U: Ideal, V: Ideal) -> bool:
    """Equality after localizing at the origin.

    Both colons (U : V) and (V : U) must contain an element with nonzero
    constant term.  Equal Groebner bases short-circuit the test.
    """
    if U == V:
        return True
    return local_contains(U, V) and local_contains(V, U)


def local_contains(U: Ideal, V: Ideal) -> bool:
    """V ⊆ U locally at the origin."""
    if V.is_subset(U):
        return True
    c = colon(U, V)
    return any(not g.constant_coeff() == 0 for g in c.gens)
