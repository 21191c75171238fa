"""Rees algebra, associated graded ring and fiber cone of an m-primary ideal,
presented over k[x, Y] by eliminating t, plus depth tables over powers."""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field

from .engine import BudgetExceeded
from .homology import GradedPresentation, depth_and_reg
from .ideals import Ideal, eliminate, krull_dimension
from .koszul import (DEFAULT_KOSZUL_CAP, DEFAULT_MODULUS, KoszulBudgetExceeded, graded_depth,
                     koszul_grade)
from .linalg import echelon, in_span
from .local import LocalRingPresentation, MPrimaryIdeal
from .orders import DEGREVLEX
from .poly import Polynomial, PolyRing

log = logging.getLogger(__name__)

DEFAULT_POWER_CAP = 4


class ConsistencyError(RuntimeError):
    pass


def _fresh(prefix, taken):
    name = prefix
    while any(n == name or n.startswith(name) for n in taken):
        name += "_"
    return name


def minimal_power_generators(pres: LocalRingPresentation, I: MPrimaryIdeal, l: int = 1):
    """Minimal generators of I^l A: products of the generators of I, keeping
    those independent modulo q + m*I^l."""
    R = pres.ring
    q = pres.q
    prods = [R.one()]
    for _ in range(l):
        seen = set()
        nxt = []
        for a in prods:
            for g in I.gens:
                f = q.reduce(a * g)
                if not f.is_zero() and f not in seen:
                    seen.add(f)
                    nxt.append(f)
        prods = nxt
    # m * I^l + q
    low = Ideal(R, q.gens + [x * f for x in R.gens() for f in prods])
    p = R.field.char
    pivots = {}
    keep = []
    for f in sorted(prods, key=lambda f: (f.degree(), len(f))):
        r = low.reduce(f)
        if r.is_zero():
            continue
        row = {DEGREVLEX.key(e): c for e, c in r.terms_dict.items()}
        if in_span(pivots, row, p):
            continue
        pivots, _ = echelon(list(pivots.values()) + [row], p)
        keep.append(f)
    return keep


@dataclass
class BlowupPresentation:
    ambient: PolyRing          # k[x_1..x_s, Y_1..Y_m]
    s: int
    gens: list                 # f_1..f_m in k[x]
    rees_ideal: Ideal
    assoc_graded_ideal: Ideal
    fiber_ideal: Ideal         # in k[Y]
    fiber_ring: PolyRing

    @property
    def m(self):
        return len(self.gens)

    def y_vars(self):
        return self.ambient.gens()[self.s:]

    def x_vars(self):
        return self.ambient.gens()[:self.s]


def rees_presentation(pres: LocalRingPresentation, I: MPrimaryIdeal, gens=None,
                      check: bool = True) -> BlowupPresentation:
    """Kernel of k[x,Y] -> A[t], Y_j -> f_j t, by eliminating t from q + (Y_j - f_j t)."""
    R = pres.ring
    f = list(gens) if gens is not None else minimal_power_generators(pres, I, 1)
    m = len(f)
    ybase = _fresh("Y", R.names)
    ynames = tuple(f"{ybase}{j + 1}" for j in range(m))
    tname = _fresh("t", R.names + ynames)
    big = PolyRing((tname,) + R.names + ynames, R.field)
    amb = PolyRing(R.names + ynames, R.field)
    s = R.nvars
    xmap = [1 + i for i in range(s)]
    t = big.gen(0)
    Y = big.gens()[1 + s:]
    eqs = [g.change_ring(big, xmap) for g in pres.q.gens]
    eqs += [Y[j] - f[j].change_ring(big, xmap) * t for j in range(m)]
    rees = eliminate(Ideal(big, eqs), [0], target=amb)
    rees = Ideal(amb, rees.reduced_gens())
    if check:
        _substitution_check(pres, f, rees, amb)
    amb_x = list(range(s))
    fx = [g.change_ring(amb, amb_x) for g in f]
    qx = [g.change_ring(amb, amb_x) for g in pres.q.gens]
    assoc = Ideal(amb, rees.gens + qx + fx)
    fring = PolyRing(ynames, R.field)
    fib = []
    for g in rees.gens:
        h = g.eval_zero(range(s))
        if not h.is_zero():
            fib.append(h.change_ring(fring, [None] * s + list(range(m))))
    fiber = Ideal(fring, fib)
    return BlowupPresentation(amb, s, f, rees, assoc, fiber, fring)


def _substitution_check(pres, f, rees: Ideal, amb: PolyRing):
    """Each Rees relation maps into q k[x,t] under Y_j -> f_j t."""
    R = pres.ring
    s = R.nvars
    tname = _fresh("t", amb.names)
    Rt = PolyRing(R.names + (tname,), R.field)
    t = Rt.gen(s)
    ft = [g.change_ring(Rt, list(range(s))) * t for g in f]
    qt = Ideal(Rt, [g.change_ring(Rt, list(range(s))) for g in pres.q.gens])
    values = {amb.gen(s + j): ft[j] for j in range(len(f))}
    for g in rees.gens:
        h = _substitute(g, Rt, s, ft)
        if not h.is_zero() and not qt.contains(h):
            raise ConsistencyError(f"Rees relation {g} does not vanish under substitution")


def _substitute(g: Polynomial, Rt: PolyRing, s: int, ft):
    acc = Rt.zero()
    for e, c in g.terms_dict.items():
        term = Rt.monomial(tuple(e[:s]) + (0,), c)
        for j, k in enumerate(e[s:]):
            if k:
                term = term * ft[j] ** k
        acc = acc + term
    return acc


def assoc_graded_presentation(pres: LocalRingPresentation, I: MPrimaryIdeal,
                              bp: BlowupPresentation | None = None, check: bool = True) -> Ideal:
    """Ideal of G_I(A) in k[x,Y] (graded by Y-degree)."""
    bp = bp or rees_presentation(pres, I)
    J = bp.assoc_graded_ideal
    if check and pres.s <= 4 and _is_variables(pres, bp.gens):
        _tangent_cone_check(pres, bp)
    return J


def _is_variables(pres, gens):
    return [str(g) for g in gens] == list(pres.ring.names)


def _tangent_cone_check(pres, bp: BlowupPresentation):
    """For I = m generated by the variables: J ∩ k[Y] equals the tangent cone."""
    R = pres.ring
    s = bp.s
    elim = eliminate(bp.assoc_graded_ideal, list(range(s)), target=bp.fiber_ring)
    back = elim.change_ring(R, list(range(R.nvars)))
    tc = pres.tangent_cone().ideal
    if not back == tc:
        raise ConsistencyError("associated graded ring disagrees with the tangent cone")


def fiber_cone_presentation(pres: LocalRingPresentation, I: MPrimaryIdeal,
                            bp: BlowupPresentation | None = None) -> GradedPresentation:
    bp = bp or rees_presentation(pres, I)
    return GradedPresentation.quotient(bp.fiber_ring, bp.fiber_ideal.reduced_gens())


# ---- depths ------------------------------------------------------------------

def _generic_forms(vars_, count, rng):
    out = []
    for _ in range(count):
        acc = vars_[0].ring.zero()
        for v in vars_:
            acc = acc + v.scale(rng.randint(1, 101))
        out.append(acc)
    return out


def _sop_depth(J: Ideal, y_vars, d, cap, seed, modulus=DEFAULT_MODULUS):
    """grade of the irrelevant ideal via a homogeneous system of parameters
    of ``d`` generic linear forms in ``y_vars``."""
    R = J.ring
    idx = [R.index(str(v)) for v in y_vars]
    return graded_depth(J, idx, d, seed=seed, cap=cap, modulus=modulus).depth


def depth_assoc_graded(pres, I, bp=None, cap=DEFAULT_KOSZUL_CAP, seed=0, d=None,
                       modulus=DEFAULT_MODULUS) -> int:
    """depth G_I(A) at its homogeneous maximal ideal."""
    bp = bp or rees_presentation(pres, I)
    if d is None:
        d = pres.dimension()
    return _sop_depth(bp.assoc_graded_ideal, bp.y_vars(), d, cap, seed, modulus)


def depth_assoc_graded_all_vars(pres, I, bp=None, cap=DEFAULT_KOSZUL_CAP, seed=0) -> int:
    """depth G_I(A) as the grade of (x, Y) on k[x,Y]/J (bounded by the cap)."""
    bp = bp or rees_presentation(pres, I)
    return koszul_grade(bp.ambient.gens(), bp.assoc_graded_ideal, cap=cap, seed=seed)


def depth_rees(pres, I, bp=None, cap=DEFAULT_KOSZUL_CAP, seed=0) -> int:
    """depth R(I) at (x, Y): Koszul grade of all ambient variables."""
    bp = bp or rees_presentation(pres, I)
    return koszul_grade(bp.ambient.gens(), bp.rees_ideal, cap=cap, seed=seed)


def depth_fiber(pres, I, bp=None, cap=DEFAULT_KOSZUL_CAP, seed=0, d=None,
                resolution_limit=6, modulus=DEFAULT_MODULUS):
    """depth F(I); by Auslander-Buchsbaum when the Y-ring is small, otherwise
    (and as a cross-check) by a generic system of parameters."""
    bp = bp or rees_presentation(pres, I)
    F = bp.fiber_ideal
    fring = bp.fiber_ring
    if d is None:
        d = krull_dimension(F)
    via_sop = _sop_depth(F, fring.gens(), d, cap, seed, modulus)
    if fring.nvars <= resolution_limit:
        B = GradedPresentation.quotient(fring, F.reduced_gens()).resolution().betti
        via_res, _ = depth_and_reg(B, fring.nvars)
        if via_res != via_sop:
            raise ConsistencyError(f"fiber cone depth: resolution {via_res} vs parameters {via_sop}")
    return via_sop


@dataclass
class DepthRow:
    power: int
    num_gens: int
    depth_G: int | None
    depth_F: int | None
    budget_exceeded: bool = False
    error: str | None = None

    def to_json(self):
        out = {"power": self.power, "num_gens": self.num_gens, "depth_G": self.depth_G,
               "depth_F": self.depth_F, "budget_exceeded": self.budget_exceeded}
        if self.error:
            out["error"] = self.error
        return out


@dataclass
class DepthTable:
    rows: list = field(default_factory=list)
    window: tuple = (1, 1)

    def stabilization(self, key):
        """First power from which the observed values stay constant (observed only)."""
        vals = [(r.power, getattr(r, key)) for r in self.rows]
        if not vals or any(v is None for _, v in vals):
            return None
        last = vals[-1][1]
        start = vals[-1][0]
        for pw, v in reversed(vals):
            if v != last:
                break
            start = pw
        return {"from_power": start, "value": last, "observed_window": list(self.window)}

    def to_json(self):
        return {"rows": [r.to_json() for r in self.rows],
                "window": list(self.window),
                "stabilization_G": self.stabilization("depth_G"),
                "stabilization_F": self.stabilization("depth_F")}


def power_ideal(pres, I: MPrimaryIdeal, l: int) -> MPrimaryIdeal:
    return MPrimaryIdeal(pres, minimal_power_generators(pres, I, l), certified=I.certified_origin_support)


def depth_table_powers(pres: LocalRingPresentation, I: MPrimaryIdeal, l_max: int,
                       power_cap: int = DEFAULT_POWER_CAP, koszul_cap: int = DEFAULT_KOSZUL_CAP,
                       seed: int = 0, with_fiber: bool = True, pool=None,
                       modulus: int = DEFAULT_MODULUS) -> DepthTable:
    if l_max > power_cap:
        raise ValueError(f"l_max {l_max} exceeds the power cap {power_cap}")
    d = pres.dimension()

    def row(l):
        gens = minimal_power_generators(pres, I, l)
        Il = MPrimaryIdeal(pres, gens, certified=True)
        try:
            bp = rees_presentation(pres, Il, gens)
            dG = depth_assoc_graded(pres, Il, bp, koszul_cap, seed, d, modulus)
            dF = depth_fiber(pres, Il, bp, koszul_cap, seed, d, modulus=modulus) if with_fiber else None
            return DepthRow(l, len(gens), dG, dF)
        except (KoszulBudgetExceeded, BudgetExceeded) as exc:
            return DepthRow(l, len(gens), None, None, True, str(exc))

    powers = range(1, l_max + 1)
    rows = list(pool.map(row, powers)) if pool is not None else [row(l) for l in powers]
    return DepthTable(rows, (1, l_max))
