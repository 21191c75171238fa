"""Runnable checks relating Ratliff-Rush closures, local cohomology of the
associated graded ring and depths of blowup algebras.

Each check returns a CriterionVerdict whose evidence block is enough to
recompute the verdict.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .blowup import (DEFAULT_POWER_CAP, depth_assoc_graded, depth_rees, depth_table_powers,
                     rees_presentation)
from .engine import BudgetExceeded
from .homology import (NEG_INF, GradedPresentation, a_invariants, depth_and_reg,
                       ext_graded_piece, ext_module, module_dimension,
                       module_dimension_fitting)
from .koszul import DEFAULT_KOSZUL_CAP, KoszulBudgetExceeded, local_depth
from .local import LocalRingPresentation, MPrimaryIdeal
from .poly import format_poly
from .ratliff_rush import ChainRunaway, has_positive_grade, rho

HOLDS = "HOLDS"
FAILS = "FAILS"
INCONCLUSIVE = "INCONCLUSIVE"
NOT_APPLICABLE = "NOT_APPLICABLE"


class CriterionPrecondition(ValueError):
    pass


@dataclass
class CriterionVerdict:
    name: str
    verdict: str
    evidence: dict = field(default_factory=dict)
    window: dict = field(default_factory=dict)
    statement: str = ""

    @property
    def inconclusive(self):
        return self.verdict == INCONCLUSIVE

    def to_json(self):
        return {"criterion": self.name, "verdict": self.verdict,
                "evidence": _jsonable(self.evidence), "window": _jsonable(self.window),
                "statement": self.statement}


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if x == NEG_INF:
        return "-inf"
    return x


def _a_json(a):
    return {str(i): ("-inf" if v == NEG_INF else v) for i, v in a.items()}


def tangent_presentation(pres: LocalRingPresentation) -> GradedPresentation:
    tc = pres.tangent_cone()
    return GradedPresentation.quotient(tc.ring, tc.gens())


def _depth_G_m(pres):
    P = tangent_presentation(pres)
    d, _ = depth_and_reg(P.resolution().betti, pres.s)
    return d


# ---- local cohomology in degree -1 and depth of high powers -------------------

def xi_geq2_criterion(pres: LocalRingPresentation, table_powers: int = 0,
                      koszul_cap: int = DEFAULT_KOSZUL_CAP, seed: int = 0) -> CriterionVerdict:
    """depth G_{m^n}(A) >= 2 for n >> 0  iff  Ext^{s-1}(G_m(A), R)_{-(s-1)} = 0.

    Requires depth A >= 2.  ``table_powers`` > 0 attaches observed depth rows.
    """
    s = pres.s
    dA = local_depth(pres, cap=max(koszul_cap, s), seed=seed)
    if dA < 2:
        raise CriterionPrecondition("depth A < 2")
    P = tangent_presentation(pres)
    dim = ext_graded_piece(P, s - 1, -(s - 1))
    ev = {"depth_A": dA, f"ext{s - 1}_piece_dim": dim, "degree": -(s - 1),
          "q_star_gens": [format_poly(g) for g in pres.tangent_cone().gens()]}
    window = {}
    if table_powers:
        tab = depth_table_powers(pres, pres.maximal_ideal(), table_powers,
                                 power_cap=max(table_powers, DEFAULT_POWER_CAP),
                                 koszul_cap=koszul_cap, seed=seed, with_fiber=False)
        ev["depth_table"] = tab.to_json()
        window["powers"] = [1, table_powers]
    return CriterionVerdict("xi_geq2", HOLDS if dim == 0 else FAILS, ev, window,
                            "Ext^{s-1}(G, R) vanishes in degree -(s-1) iff depth G_{m^n} >= 2 for large n")


# ---- rho against the first a-invariant --------------------------------------

def rho_bound_check(pres: LocalRingPresentation, n_max: int = 12) -> CriterionVerdict:
    """rho(m) <= max{0, a_1(G_m(A)) + 1}."""
    m = pres.maximal_ideal()
    if not has_positive_grade(pres, m):
        raise CriterionPrecondition("grade(m, A) = 0")
    window = {"n_max": n_max}
    try:
        rep = rho(pres, m, n_max)
    except ChainRunaway as exc:
        return CriterionVerdict("rho_bound", INCONCLUSIVE, {"error": str(exc)}, window)
    a = a_invariants(tangent_presentation(pres), pres.s)
    a1 = a.get(1, NEG_INF)
    bound = 0 if a1 == NEG_INF else max(0, a1 + 1)
    ev = {"rho": rep.value, "defects": rep.defects(), "a_1": a1, "bound": bound,
          "a_invariants": _a_json(a)}
    if rep.value is None:
        return CriterionVerdict("rho_bound", INCONCLUSIVE, ev, window)
    return CriterionVerdict("rho_bound", HOLDS if rep.value <= bound else FAILS, ev, window,
                            "rho <= max{0, a_1(G_m) + 1}")


# ---- positive depth of G versus closed powers --------------------------------

def depth_positive_iff_rho_zero(pres: LocalRingPresentation, I: MPrimaryIdeal, n_max: int = 12,
                                koszul_cap: int = DEFAULT_KOSZUL_CAP, seed: int = 0,
                                modulus: int | None = None) -> CriterionVerdict:
    """depth G_I(A) >= 1  iff  every power of I is Ratliff-Rush closed."""
    if not has_positive_grade(pres, I):
        raise CriterionPrecondition("grade(I, A) = 0")
    window = {"n_max": n_max}
    kw = {} if modulus is None else {"modulus": modulus}
    try:
        dG = depth_assoc_graded(pres, I, cap=koszul_cap, seed=seed, **kw)
    except (KoszulBudgetExceeded, BudgetExceeded) as exc:
        return CriterionVerdict("depth_rho", INCONCLUSIVE, {"error": str(exc)}, window)
    rep = rho(pres, I, n_max)
    ev = {"depth_G": dG, "rho": rep.value, "defects": rep.defects()}
    if rep.value is None:
        return CriterionVerdict("depth_rho", INCONCLUSIVE, ev, window)
    ok = (dG >= 1) == (rep.value == 0)
    return CriterionVerdict("depth_rho", HOLDS if ok else FAILS, ev, window,
                            "depth G_I(A) > 0 iff rho(I) = 0")


# ---- generalized Cohen-Macaulayness of the tangent cone ----------------------

def generalized_cm_check(pres: LocalRingPresentation) -> CriterionVerdict:
    """dim Ext^{s-i}(G_m, R) <= 0 for 1 <= i <= d-1 (finite length local cohomology)."""
    s = pres.s
    d = pres.dimension()
    if d < 1:
        raise CriterionPrecondition("dim A = 0")
    P = tangent_presentation(pres)
    ev = {"dim_A": d}
    ok = True
    for i in range(1, d):
        E = ext_module(P, s - i)
        dim = module_dimension(E.presentation)
        ev[f"ext{s - i}_dim"] = dim
        fit = module_dimension_fitting(E.presentation)
        if fit is not None:
            ev[f"ext{s - i}_dim_fitting"] = fit
            if fit != dim:
                raise RuntimeError("Fitting ideal and initial module disagree on the dimension")
        if dim > 0:
            ok = False
    return CriterionVerdict("generalized_cm", HOLDS if ok else FAILS, ev, {},
                            "H^i(G_m) has finite length for 1 <= i <= d-1")


# ---- a_{s0} < a_{s0+1} at the depth of the tangent cone ----------------------

def marley_inequality_check(pres: LocalRingPresentation, koszul_cap: int = DEFAULT_KOSZUL_CAP,
                            seed: int = 0) -> CriterionVerdict:
    """With s0 = depth G_m(A) <= grade(m, A) - 1: a_{s0}(G) < a_{s0+1}(G)."""
    s = pres.s
    P = tangent_presentation(pres)
    s0, _ = depth_and_reg(P.resolution().betti, s)
    g = local_depth(pres, cap=max(koszul_cap, s), seed=seed)
    ev = {"depth_G": s0, "grade_m_A": g}
    if s0 > g - 1:
        return CriterionVerdict("marley", NOT_APPLICABLE, ev, {},
                                "a_{s0} < a_{s0+1} for s0 = depth G <= grade - 1")
    a = a_invariants(P, s)
    lo, hi = a.get(s0, NEG_INF), a.get(s0 + 1, NEG_INF)
    ev.update({"a_s0": lo, "a_s0_plus_1": hi, "a_invariants": _a_json(a)})
    if hi == NEG_INF:
        return CriterionVerdict("marley", INCONCLUSIVE, ev, {})
    return CriterionVerdict("marley", HOLDS if lo < hi else FAILS, ev, {},
                            "a_{s0} < a_{s0+1} for s0 = depth G <= grade - 1")


# ---- depth of the Rees algebra -----------------------------------------------

def huckaba_marley_check(pres: LocalRingPresentation, I: MPrimaryIdeal,
                         koszul_cap: int = DEFAULT_KOSZUL_CAP, seed: int = 0) -> CriterionVerdict:
    """If depth G_I(A) < depth A then depth R(I) = depth G_I(A) + 1."""
    bp = rees_presentation(pres, I)
    try:
        dG = depth_assoc_graded(pres, I, bp, cap=koszul_cap, seed=seed)
        dA = local_depth(pres, cap=max(koszul_cap, pres.s), seed=seed)
        ev = {"depth_G": dG, "depth_A": dA, "num_gens": bp.m}
        if dG >= dA:
            return CriterionVerdict("huckaba_marley", NOT_APPLICABLE, ev, {},
                                    "depth R(I) = depth G_I + 1 when depth G_I < depth A")
        dR = depth_rees(pres, I, bp, cap=koszul_cap, seed=seed)
    except (KoszulBudgetExceeded, BudgetExceeded) as exc:
        return CriterionVerdict("huckaba_marley", INCONCLUSIVE, {"error": str(exc)},
                                {"koszul_cap": koszul_cap})
    ev["depth_R"] = dR
    return CriterionVerdict("huckaba_marley", HOLDS if dR == dG + 1 else FAILS, ev,
                            {"koszul_cap": koszul_cap},
                            "depth R(I) = depth G_I + 1 when depth G_I < depth A")


CHECKS = {
    "xi_geq2": "pres",
    "rho_bound": "pres",
    "generalized_cm": "pres",
    "marley": "pres",
    "depth_rho": "ideal",
    "huckaba_marley": "ideal",
    "supex": "ideal",
}
