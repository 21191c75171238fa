"""The local ring A = (k[x]/q) at the origin: validation, tangent cone,
Hilbert functions and superficial elements."""

from __future__ import annotations

import logging
import random

from .groebner import buchberger
from .ideals import (Ideal, colength_at_origin, colon_principal, krull_dimension,
                     radical_contains, span_basis, standard_monomials,
                     support_at_origin_only)
from .orders import DEGREVLEX, LAZARD
from .poly import Polynomial, PolyRing

log = logging.getLogger(__name__)


class LocalInputError(ValueError):
    pass


class LocalRingPresentation:
    """A = k[x_1..x_s]/q localized at the origin, with q ⊆ (x_1..x_s)."""

    def __init__(self, ring: PolyRing, q_gens=()):
        if ring.nvars < 1:
            raise LocalInputError("need at least one variable")
        self.ring = ring
        self.q = Ideal(ring, q_gens)
        for g in self.q.gens:
            if g.constant_coeff() != 0:
                raise LocalInputError(f"q has a unit term: {g}")
        self._tangent = None

    @property
    def s(self):
        return self.ring.nvars

    def maximal_ideal(self) -> "MPrimaryIdeal":
        return MPrimaryIdeal(self, self.ring.gens(), certified=True)

    def dimension(self) -> int:
        """dim A: the dimension of the tangent cone (same Hilbert polynomial degree)."""
        return krull_dimension(self.tangent_cone().ideal)

    def tangent_cone(self) -> "TangentCone":
        if self._tangent is None:
            self._tangent = tangent_cone(self)
        return self._tangent

    def __repr__(self):
        return f"LocalRingPresentation({self.ring}, q={[str(g) for g in self.q.gens]})"


class MPrimaryIdeal:
    """An ideal of A given by generators in k[x]; powers are cached as q + I^n."""

    def __init__(self, host: LocalRingPresentation, gens, certified=False):
        self.host = host
        self.gens = [g for g in (g if isinstance(g, Polynomial) else host.ring(g) for g in gens)
                     if not g.is_zero()]
        self.certified_origin_support = certified
        self._powers = {}

    @property
    def ring(self):
        return self.host.ring

    def ideal(self) -> Ideal:
        return Ideal(self.ring, self.gens)

    def is_maximal(self) -> bool:
        return self.with_q(1) == self.host.q + Ideal.maximal(self.ring)

    def with_q(self, n: int) -> Ideal:
        """q + I^n (the unit ideal for n = 0)."""
        if n <= 0:
            return Ideal.unit(self.ring)
        J = self._powers.get(n)
        if J is None:
            q = self.host.q
            if n == 1:
                J = Ideal(self.ring, q.gens + list(self.gens))
            else:
                prev = self.with_q(n - 1)
                qset = set(q.gens)
                base = [g for g in prev.reduced_gens() if g not in qset]
                prods = span_basis([q.reduce(a * b) for a in base for b in self.gens])
                J = Ideal(self.ring, q.gens + prods)
            self._powers[n] = J
        return J

    def __repr__(self):
        return f"MPrimaryIdeal({[str(g) for g in self.gens]})"


def validate_local_input(pres: LocalRingPresentation, gens) -> MPrimaryIdeal:
    """Certify that (gens) is m-primary in A, i.e. q + (gens) lives only at the origin."""
    R = pres.ring
    gens = [g if isinstance(g, Polynomial) else R(g) for g in gens]
    for g in gens:
        if g.ring.names != R.names:
            raise LocalInputError(f"generator {g} not in {R}")
        if g.constant_coeff() != 0:
            raise LocalInputError(f"I not m-primary at origin: {g} is a unit")
    S = pres.q + Ideal(R, gens)
    d = krull_dimension(S)
    if d != 0:
        raise LocalInputError(f"I not m-primary at origin: dim k[x]/(q + I) = {d}")
    if not support_at_origin_only(S):
        bad = [str(x) for x in R.gens() if not radical_contains(S, x)]
        raise LocalInputError(f"I not m-primary at origin: {', '.join(bad)} not nilpotent mod q + I")
    return MPrimaryIdeal(pres, gens, certified=True)


class TangentCone:
    """G_m(A) = k[X]/q* with q* the ideal of lowest-degree forms."""

    def __init__(self, ideal: Ideal):
        self.ideal = ideal
        self.hilbert_cache = {}

    @property
    def ring(self):
        return self.ideal.ring

    def gens(self):
        return self.ideal.reduced_gens()

    def hilbert_function(self, n: int) -> int:
        """dim_k (k[X]/q*)_n from the staircase of q*."""
        if n not in self.hilbert_cache:
            lms = self.ideal.leading_monomials()
            R = self.ring
            from itertools import combinations_with_replacement
            count = 0
            for combo in combinations_with_replacement(range(R.nvars), n):
                e = [0] * R.nvars
                for i in combo:
                    e[i] += 1
                if not any(all(a <= b for a, b in zip(m, e)) for m in lms):
                    count += 1
            self.hilbert_cache[n] = count
        return self.hilbert_cache[n]


def tangent_cone(pres: LocalRingPresentation) -> TangentCone:
    """q* via homogenization and a degree order favouring the homogenizer.

    The dehomogenized basis is a standard basis for the local degree order,
    so its lowest forms generate q*.
    """
    R = pres.ring
    q = pres.q
    if q.is_zero():
        return TangentCone(Ideal(R, []))
    if all(g.is_homogeneous() for g in q.gens):
        return TangentCone(Ideal(R, q.gens))
    h = "h"
    while h in R.names:
        h += "_"
    H = PolyRing(R.names + (h,), R.field)
    G = buchberger([g.homogenize(H) for g in q.gens], LAZARD, ring=H)
    lows = [g.dehomogenize(R).lowest_form() for g in G.elements]
    T = Ideal(R, lows)
    T = Ideal(R, T.reduced_gens())
    return TangentCone(T)


def hilbert_function(pres: LocalRingPresentation, I: MPrimaryIdeal, n: int) -> int:
    """λ(I^n / I^{n+1}) as a difference of colengths."""
    if not I.certified_origin_support:
        raise LocalInputError("uncertified ideal; run validate_local_input first")
    if n < 0:
        return 0
    q = pres.q
    return colength_at_origin(q, I.with_q(n + 1)) - colength_at_origin(q, I.with_q(n))


def colength(I: MPrimaryIdeal, n: int) -> int:
    """λ(A / I^n)."""
    return colength_at_origin(I.host.q, I.with_q(n))


class NoSuperficialElement(RuntimeError):
    pass


def is_superficial(I: MPrimaryIdeal, x: Polynomial, n_from: int, n_check: int) -> bool:
    """(q + I^{n+1} : x) == q + I^n for n_from <= n <= n_check."""
    for n in range(max(n_from, 0), n_check + 1):
        if colon_principal(I.with_q(n + 1), x) != I.with_q(n):
            return False
    return True


def random_combination(I: MPrimaryIdeal, rng: random.Random):
    R = I.ring
    p = R.field.char
    hi = 101 if not p else min(101, p - 1)
    coeffs = [rng.randint(1, hi) for _ in I.gens]
    x = R.zero()
    for c, g in zip(coeffs, I.gens):
        x = x + g.scale(c)
    return x, coeffs


def find_superficial(pres: LocalRingPresentation, I: MPrimaryIdeal, n_check: int = 12,
                     seed: int = 0, attempts: int = 8, rho_value=None, n_max=None):
    """Random combination x of the generators with (I^{n+1} : x) = I^n for rho <= n <= n_check.

    ``rho_value`` is the Ratliff-Rush index; computed here when not supplied.
    Returns ``(x, coefficients)``.
    """
    if rho_value is None:
        from .ratliff_rush import rho
        r = rho(pres, I, n_max if n_max is not None else n_check)
        rho_value = r.value if r.value is not None else n_check
    rng = random.Random(seed)
    if len(I.gens) == 1:
        x = I.gens[0]
        if is_superficial(I, x, rho_value, n_check):
            return x, [1]
    for attempt in range(attempts):
        x, coeffs = random_combination(I, rng)
        log.debug("superficial attempt %d: coefficients %s", attempt, coeffs)
        if x.is_zero():
            continue
        if is_superficial(I, x, rho_value, n_check):
            return x, coeffs
    raise NoSuperficialElement(f"no superficial candidate found in {attempts} attempts")
