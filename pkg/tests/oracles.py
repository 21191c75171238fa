"""Brute-force references for the Groebner kernel: linear algebra on
degree-truncated multiples of the generators, independent of Buchberger."""

from __future__ import annotations

import itertools
import random

from rrcas.linalg import echelon, in_span
from rrcas.poly import PolyRing


def monomials_upto(nvars, d):
    out = []
    for total in range(d + 1):
        for e in itertools.product(range(total + 1), repeat=nvars):
            if sum(e) == total:
                out.append(e)
    return out


def _multiples(gens, D, exact):
    R = gens[0].ring
    rows = []
    for g in gens:
        dg = g.degree()
        if dg > D:
            continue
        for m in monomials_upto(R.nvars, D - dg):
            if exact and sum(m) != D - dg:
                continue
            rows.append(g.mul_monomial(m).terms_dict)
    return rows


def member_truncated(f, gens, D, homogeneous=False) -> bool:
    """f in span{x^a g : deg(x^a g) <= D}.

    For homogeneous data and D = deg f this is exactly ideal membership;
    otherwise a True answer certifies membership and False is inconclusive.
    """
    gens = [g for g in gens if not g.is_zero()]
    if f.is_zero():
        return True
    if not gens:
        return False
    p = f.ring.field.char
    pivots, _ = echelon(_multiples(gens, D, homogeneous), p)
    return in_span(pivots, dict(f.terms_dict), p)


def random_poly(R: PolyRing, rng: random.Random, max_deg, terms, homogeneous=False,
                degree=None, coeff=5):
    """Random polynomial with no constant term; ``degree`` forces a form of that degree."""
    mons = monomials_upto(R.nvars, max_deg if degree is None else degree)
    if degree is not None:
        mons = [m for m in mons if sum(m) == degree]
    elif homogeneous:
        d = rng.randint(1, max_deg)
        mons = [m for m in mons if sum(m) == d]
    else:
        mons = [m for m in mons if sum(m) >= 1]
    pick = rng.sample(mons, min(terms, len(mons)))
    return R.from_dict({m: rng.choice([c for c in range(-coeff, coeff + 1) if c]) for m in pick})


def random_instance(rng: random.Random):
    """A small ideal (<= 3 variables, degree <= 4) with members and probes.

    Returns ``(gens, members, probes, homogeneous)``; each member comes with
    the degree of the explicit combination that produced it.
    """
    n = rng.randint(1, 3)
    R = PolyRing(("x", "y", "z")[:n])
    homogeneous = rng.random() < 0.5
    gens = []
    while len(gens) < rng.randint(1, 3) or not gens:
        g = random_poly(R, rng, rng.randint(1, 3), rng.randint(1, 3), homogeneous)
        if not g.is_zero():
            gens.append(g)
    members = []
    for _ in range(2):
        f = R.zero()
        if homogeneous:
            d = min(4, max(g.degree() for g in gens) + rng.randint(0, 1))
            for g in gens:
                e = d - g.degree()
                if e >= 0:
                    h = R.const(rng.randint(1, 3)) if e == 0 else random_poly(R, rng, e, 2, degree=e)
                    f = f + h * g
            bound = d
        else:
            bound = 0
            for g in gens:
                room = 4 - g.degree()
                h = R.const(rng.randint(-2, 2))
                if room > 0:
                    h = h + random_poly(R, rng, room, 2)
                if not h.is_zero():
                    f = f + h * g
                    bound = max(bound, h.degree() + g.degree())
        members.append((f, bound))
    probes = [random_poly(R, rng, 4, rng.randint(1, 4), homogeneous) for _ in range(3)]
    return gens, members, probes, homogeneous
