"""Buchberger's algorithm on vectors of polynomials.

A *vector* is a dict ``(component, exponent tuple) -> coefficient``; ideals
use component 0 only.  Term orders are key functions on such pairs, ascending
keys meaning descending terms.  Basis elements are kept monic.

Everything here is deterministic: pairs are processed by
``(sugar, lcm degree, i, j)``.
"""

from __future__ import annotations

import heapq
from operator import add, sub

from gmpy2 import mpq


def top_key(mkey, twists=None):
    """Term-over-position, optionally degree-weighted by component twists."""
    if twists is None:
        return lambda t: (mkey(t[1]), t[0])
    tw = list(twists)
    return lambda t: (-(sum(t[1]) + tw[t[0]]), mkey(t[1]), t[0])


def pot_key(mkey):
    return lambda t: (t[0], mkey(t[1]))


def block_key(mkey, split, twists=None):
    """Components ``< split`` beat every component ``>= split``; TOP inside blocks."""
    inner = top_key(mkey, twists)
    return lambda t: (t[0] >= split, inner(t))


class Elem:
    __slots__ = ("terms", "comp", "lexp", "mask", "sugar")

    def __init__(self, terms, sugar):
        # terms sorted leading first, leading coefficient 1
        self.terms = terms
        self.comp, self.lexp = terms[0][0]
        self.mask = _mask(self.lexp)
        self.sugar = sugar

    def vec(self):
        return dict(self.terms)


def _mask(e):
    m = 0
    for i, x in enumerate(e):
        if x:
            m |= 1 << i
    return m


def _divides(a, b):
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def vec_degree(v):
    return max((sum(e) for _, e in v), default=0)


def sort_terms(v: dict, tkey):
    return sorted(v.items(), key=lambda it: tkey(it[0]))


def lead_term(v: dict, tkey):
    return min(v, key=tkey)


def make_monic(v: dict, tkey, p):
    lt = min(v, key=tkey)
    c = v[lt]
    if c == 1:
        return v
    if p:
        inv = pow(int(c), -1, p)
        return {t: x * inv % p for t, x in v.items()}
    inv = mpq(1) / c
    return {t: x * inv for t, x in v.items()}


def find_divisor(comp, e, basis, active=None):
    m = _mask(e)
    idx = range(len(basis)) if active is None else active
    for k in idx:
        g = basis[k]
        if g.comp == comp and (g.mask & ~m) == 0 and _divides(g.lexp, e):
            return k
    return None


def reduce_vec(h: dict, basis, tkey, p, full=True, record=None, active=None):
    """Reduce ``h`` (consumed) modulo ``basis``; returns the remainder dict.

    With ``record`` (a list), appends ``(k, mexp, factor)`` for every step
    ``h -= factor * x^mexp * basis[k]``.
    """
    if not h:
        return h
    heap = [(tkey(t), t) for t in h]
    heapq.heapify(heap)
    rem = {}
    while heap:
        _, t = heapq.heappop(heap)
        c = h.pop(t, None)
        if c is None:
            continue
        comp, e = t
        k = find_divisor(comp, e, basis, active)
        if k is None:
            rem[t] = c
            if not full:
                for t2, c2 in h.items():
                    rem[t2] = c2
                return rem
            continue
        g = basis[k]
        mexp = tuple(map(sub, e, g.lexp))
        if record is not None:
            record.append((k, mexp, c))
        it = iter(g.terms)
        next(it)
        if p:
            for (gc, ge), x in it:
                nt = (gc, tuple(map(add, ge, mexp)))
                v = h.get(nt)
                if v is None:
                    h[nt] = (-c * x) % p
                    heapq.heappush(heap, (tkey(nt), nt))
                else:
                    v = (v - c * x) % p
                    if v:
                        h[nt] = v
                    else:
                        del h[nt]
        else:
            for (gc, ge), x in it:
                nt = (gc, tuple(map(add, ge, mexp)))
                v = h.get(nt)
                if v is None:
                    h[nt] = -c * x
                    heapq.heappush(heap, (tkey(nt), nt))
                else:
                    v = v - c * x
                    if v:
                        h[nt] = v
                    else:
                        del h[nt]
    return rem


def spoly(f: Elem, g: Elem, p):
    lcm = tuple(map(max, f.lexp, g.lexp))
    mf = tuple(map(sub, lcm, f.lexp))
    mg = tuple(map(sub, lcm, g.lexp))
    out = {}
    for (c, e), x in f.terms[1:]:
        out[(c, tuple(map(add, e, mf)))] = x
    for (c, e), x in g.terms[1:]:
        t = (c, tuple(map(add, e, mg)))
        v = out.get(t, 0) - x
        if p:
            v %= p
        if v:
            out[t] = v
        else:
            out.pop(t, None)
    return out, mf, mg


class _Pairs:
    """Critical pair bookkeeping with the Gebauer-Moeller criteria."""

    def __init__(self, product_ok=True):
        # the coprime-leading-terms criterion is only valid for ideals
        self.product_ok = product_ok
        self.G = []       # indices of current (minimal) basis
        self.B = set()    # pairs (i, j)

    def update(self, f, ih):
        h = f[ih]
        mh = h.lexp
        ch = h.comp

        def lcm(a, b):
            return tuple(map(max, a, b))

        C = [ig for ig in self.G if f[ig].comp == ch]
        D = []
        for n, ig in enumerate(C):
            mg = f[ig].lexp
            L = lcm(mh, mg)
            coprime = self.product_ok and all(not (a and b) for a, b in zip(mh, mg))
            if coprime:
                D.append((ig, L, True))
                continue

            def lcm_divides(ip):
                return _divides(lcm(mh, f[ip].lexp), L)

            if not any(lcm_divides(ipx) for ipx in C[n + 1:]) and \
                    not any(lcm_divides(ipx) for ipx, _, _ in D):
                D.append((ig, L, False))
        E = [(min(ig, ih), max(ig, ih)) for ig, _, cop in D if not cop]

        B_new = set()
        for (i1, i2) in self.B:
            g1, g2 = f[i1], f[i2]
            if g1.comp != ch:
                B_new.add((i1, i2))
                continue
            L12 = lcm(g1.lexp, g2.lexp)
            if not _divides(mh, L12) or lcm(g1.lexp, mh) == L12 or lcm(g2.lexp, mh) == L12:
                B_new.add((i1, i2))
        B_new.update(E)
        self.B = B_new
        self.G = [ig for ig in self.G if not (f[ig].comp == ch and _divides(mh, f[ig].lexp))]
        self.G.append(ih)


def groebner_vecs(vecs, tkey, p, interreduce=True, max_pairs=None):
    """Reduced Groebner basis of the submodule generated by ``vecs``.

    Returns a list of monic dicts sorted by leading term (largest first).
    """
    f = []
    start = []
    for v in vecs:
        v = {t: c for t, c in v.items() if c}
        if v:
            start.append(v)
    pairs = _Pairs(product_ok=all(t[0] == 0 for v in start for t in v))
    start.sort(key=lambda v: (vec_degree(v), tkey(lead_term(v, tkey))))
    for v in start:
        active = pairs.G
        r = reduce_vec(dict(v), f, tkey, p, active=active)
        if not r:
            continue
        r = make_monic(r, tkey, p)
        f.append(Elem(sort_terms(r, tkey), vec_degree(r)))
        pairs.update(f, len(f) - 1)

    def pair_key(pr):
        i, j = pr
        a, b = f[i], f[j]
        L = tuple(map(max, a.lexp, b.lexp))
        dl = sum(L)
        sug = max(a.sugar + dl - sum(a.lexp), b.sugar + dl - sum(b.lexp))
        return (sug, dl, i, j)

    # pairs.B is the live set; the heap may hold pairs already discarded
    heap = []
    queued = set()

    def sync():
        for pr in pairs.B:
            if pr not in queued:
                queued.add(pr)
                heapq.heappush(heap, pair_key(pr))

    sync()
    done = 0
    while True:
        pr = None
        while heap:
            sug, _, i, j = heapq.heappop(heap)
            if (i, j) in pairs.B:
                pr = (i, j)
                break
        if pr is None:
            break
        pairs.B.discard(pr)
        s_, _, _ = spoly(f[i], f[j], p)
        done += 1
        if max_pairs is not None and done > max_pairs:
            raise BudgetExceeded(f"Groebner pair budget {max_pairs} exceeded")
        r = reduce_vec(s_, f, tkey, p, active=pairs.G)
        if not r:
            continue
        r = make_monic(r, tkey, p)
        f.append(Elem(sort_terms(r, tkey), max(sug, vec_degree(r))))
        pairs.update(f, len(f) - 1)
        sync()

    basis = [f[i] for i in pairs.G]
    if not interreduce:
        return [dict(g.terms) for g in basis]
    basis.sort(key=lambda g: tkey(g.terms[0][0]))
    out = []
    for n, g in enumerate(basis):
        others = basis[:n] + basis[n + 1:]
        lt, lc = g.terms[0]
        tail = reduce_vec(dict(g.terms[1:]), others, tkey, p)
        tail[lt] = lc
        out.append(tail)
    return out


class BudgetExceeded(RuntimeError):
    pass


def elems_from_gb(gb_vecs, tkey):
    return [Elem(sort_terms(v, tkey), vec_degree(v)) for v in gb_vecs]
