"""Command table and the session runner behind the command line."""

from __future__ import annotations

import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field

from . import criteria as C
from .blowup import (assoc_graded_presentation, depth_assoc_graded, depth_rees,
                     depth_table_powers, fiber_cone_presentation, rees_presentation)
from .cli_io.parser import SessionScript, parse_session
from .homology import (NEG_INF, a_invariants, depth_and_reg, ext_graded_piece,
                       reg_from_a_invariants)
from .ideals import Ideal
from .koszul import DEFAULT_MODULUS, local_depth
from .local import LocalRingPresentation, find_superficial, validate_local_input
from .poly import format_poly
from .ratliff_rush import check_supexN, rho, rr_closure_chain, defect


@dataclass
class CommandSpec:
    roles: tuple
    required: int
    options: frozenset = frozenset()
    words: frozenset = frozenset()

    @property
    def min_args(self):
        return self.required

    @property
    def max_args(self):
        return len(self.roles)

    def role(self, pos):
        return self.roles[pos] if pos < len(self.roles) else None

    def arity_text(self):
        if self.min_args == self.max_args:
            return str(self.min_args)
        return f"{self.min_args} to {self.max_args}"


COMMAND_SPECS = {
    "gb": CommandSpec(("ideal",), 1),
    "tangent_cone": CommandSpec(("ideal",), 1),
    "ratliff_rush": CommandSpec(("ideal", "ideal_m", "int"), 2, frozenset({"cap"})),
    "rho": CommandSpec(("ideal", "ideal_m"), 2, frozenset({"n_max", "cap"})),
    "depth": CommandSpec(("ideal", "ideal_m"), 1, frozenset({"seed", "koszul_cap"})),
    "reg": CommandSpec(("ideal",), 1),
    "ext_piece": CommandSpec(("ideal", "int", "int"), 3),
    "a_invariants": CommandSpec(("ideal",), 1),
    "rees": CommandSpec(("ideal", "ideal_m"), 2),
    "assoc_graded": CommandSpec(("ideal", "ideal_m"), 2),
    "fiber_cone": CommandSpec(("ideal", "ideal_m"), 2),
    "depth_table": CommandSpec(("ideal", "ideal_m", "int"), 3,
                               frozenset({"seed", "koszul_cap", "power_cap"})),
    "check": CommandSpec(("word", "ideal", "ideal_m"), 2,
                         frozenset({"seed", "n_max", "koszul_cap", "n", "table"}),
                         frozenset(C.CHECKS)),
}


@dataclass
class Settings:
    seed: int = 0
    n_max: int = 12
    koszul_cap: int = 8
    power_cap: int = 4
    exact: bool = False

    @property
    def modulus(self):
        return 0 if self.exact else DEFAULT_MODULUS


class CommandError(RuntimeError):
    pass


@dataclass
class Outcome:
    index: int
    verb: str
    args: list
    options: dict
    status: str = "ok"
    result: dict = field(default_factory=dict)
    error: str | None = None
    inconclusive: bool = False

    def to_json(self):
        out = {"index": self.index, "command": self.verb, "args": self.args,
               "options": self.options, "status": self.status}
        if self.status == "ok":
            out["result"] = _clean(self.result)
        else:
            out["error"] = self.error
        out["inconclusive"] = self.inconclusive
        return out


def _clean(x):
    if isinstance(x, dict):
        return {str(k): _clean(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_clean(v) for v in x]
    if isinstance(x, float) and x == NEG_INF:
        return "-inf"
    return x


def _gens(J: Ideal):
    return [format_poly(g) for g in J.reduced_gens()]


class _Context:
    def __init__(self, s: SessionScript, settings: Settings):
        self.s = s
        self.ring = s.ring
        self.settings = settings
        self._pres = {}

    def ideal(self, name) -> Ideal:
        if name == "m" and name not in self.s.ideals:
            return Ideal.maximal(self.ring)
        return Ideal(self.ring, self.s.ideals[name])

    def pres(self, name) -> LocalRingPresentation:
        if name not in self._pres:
            self._pres[name] = LocalRingPresentation(self.ring, self.ideal(name).gens)
        return self._pres[name]

    def mprimary(self, pres, name):
        if name == "m" and name not in self.s.ideals:
            return pres.maximal_ideal()
        return validate_local_input(pres, self.ideal(name).gens)


def _opt(cmd, key, default):
    return cmd.options.get(key, default)


def execute(ctx: _Context, cmd) -> dict:
    st = ctx.settings
    seed = _opt(cmd, "seed", st.seed)
    kcap = _opt(cmd, "koszul_cap", st.koszul_cap)
    v, a = cmd.verb, cmd.args
    if v == "gb":
        return {"gb": _gens(ctx.ideal(a[0]))}
    if v == "tangent_cone":
        tc = ctx.pres(a[0]).tangent_cone()
        return {"q_star_gens": [format_poly(g) for g in tc.gens()],
                "hilbert_function": [tc.hilbert_function(n) for n in range(6)]}
    if v == "ratliff_rush":
        p = ctx.pres(a[0])
        I = ctx.mprimary(p, a[1])
        n = a[2] if len(a) > 2 else 1
        res = rr_closure_chain(p, I, n, _opt(cmd, "cap", 20))
        return {"power": n, "closure_gens": _gens(res.closure),
                "defect": defect(p, I, n, _opt(cmd, "cap", 20)), "chain_length": res.chain_length}
    if v == "rho":
        p = ctx.pres(a[0])
        I = ctx.mprimary(p, a[1])
        rep = rho(p, I, _opt(cmd, "n_max", st.n_max), _opt(cmd, "cap", 20))
        out = rep.to_json()
        out["verdict"] = C.INCONCLUSIVE if rep.exceeded else "COMPUTED"
        return out
    if v == "depth":
        p = ctx.pres(a[0])
        out = {"dim_A": p.dimension(), "depth_A": local_depth(p, cap=max(kcap, p.s), seed=seed)}
        if len(a) > 1:
            I = ctx.mprimary(p, a[1])
            bp = rees_presentation(p, I)
            out["depth_G"] = depth_assoc_graded(p, I, bp, kcap, seed, modulus=st.modulus)
            out["depth_R"] = depth_rees(p, I, bp, kcap, seed)
        else:
            B = C.tangent_presentation(p).resolution().betti
            out["depth_G_m"], _ = depth_and_reg(B, p.s)
        return out
    if v == "reg":
        p = ctx.pres(a[0])
        B = C.tangent_presentation(p).resolution().betti
        d, r = depth_and_reg(B, p.s)
        return {"betti": B.to_json()["betti"], "betti_text": B.to_text(), "pd": B.pd(),
                "depth": d, "reg": r}
    if v == "ext_piece":
        p = ctx.pres(a[0])
        return {"i": a[1], "d": a[2], "dim": ext_graded_piece(C.tangent_presentation(p), a[1], a[2])}
    if v == "a_invariants":
        p = ctx.pres(a[0])
        P = C.tangent_presentation(p)
        ai = a_invariants(P, p.s)
        _, r = depth_and_reg(P.resolution().betti, p.s)
        return {"a": {str(i): x for i, x in ai.items()}, "reg_from_a": reg_from_a_invariants(ai),
                "reg_from_betti": r}
    if v in ("rees", "assoc_graded", "fiber_cone"):
        p = ctx.pres(a[0])
        I = ctx.mprimary(p, a[1])
        bp = rees_presentation(p, I)
        out = {"gens": [format_poly(g) for g in bp.gens],
               "variables": list(bp.ambient.names)}
        if v == "rees":
            out["rees_gens"] = _gens(bp.rees_ideal)
        elif v == "assoc_graded":
            out["assoc_graded_gens"] = _gens(assoc_graded_presentation(p, I, bp))
        else:
            F = fiber_cone_presentation(p, I, bp)
            out["variables"] = list(bp.fiber_ring.names)
            out["fiber_gens"] = [format_poly(c[0]) for c in F.relations]
        return out
    if v == "depth_table":
        p = ctx.pres(a[0])
        I = ctx.mprimary(p, a[1])
        tab = depth_table_powers(p, I, a[2], power_cap=_opt(cmd, "power_cap", st.power_cap),
                                 koszul_cap=kcap, seed=seed, modulus=st.modulus)
        out = tab.to_json()
        if any(r.budget_exceeded for r in tab.rows):
            out["verdict"] = C.INCONCLUSIVE
        return out
    if v == "check":
        return _check(ctx, cmd, seed, kcap)
    raise CommandError(f"unknown command {v}")


def _check(ctx, cmd, seed, kcap):
    st = ctx.settings
    name, qname = cmd.args[0], cmd.args[1]
    p = ctx.pres(qname)
    n_max = _opt(cmd, "n_max", st.n_max)
    if C.CHECKS[name] == "ideal":
        I = ctx.mprimary(p, cmd.args[2] if len(cmd.args) > 2 else "m")
    if name == "xi_geq2":
        v = C.xi_geq2_criterion(p, table_powers=_opt(cmd, "table", 0), koszul_cap=kcap, seed=seed)
    elif name == "rho_bound":
        v = C.rho_bound_check(p, n_max)
    elif name == "generalized_cm":
        v = C.generalized_cm_check(p)
    elif name == "marley":
        v = C.marley_inequality_check(p, kcap, seed)
    elif name == "depth_rho":
        v = C.depth_positive_iff_rho_zero(p, I, n_max, kcap, seed, modulus=st.modulus)
    elif name == "huckaba_marley":
        v = C.huckaba_marley_check(p, I, kcap, seed)
    else:   # supex
        n = _opt(cmd, "n", 1)
        x, _ = find_superficial(p, I, seed=seed)
        sv = check_supexN(p, I, x, n)
        out = sv.to_json()
        out.update({"criterion": "supex", "superficial": format_poly(x),
                    "verdict": "HOLDS" if sv.verdict == "PASS" else "FAILS", "check": sv.verdict})
        return out
    return v.to_json()


def run_command(s: SessionScript, index: int, settings: Settings, ctx=None) -> Outcome:
    cmd = s.commands[index]
    ctx = ctx or _Context(s, settings)
    oc = Outcome(index + 1, cmd.verb, list(cmd.args), dict(cmd.options))
    try:
        oc.result = execute(ctx, cmd)
        oc.inconclusive = oc.result.get("verdict") == C.INCONCLUSIVE
    except Exception as exc:     # recorded per command; the session goes on
        oc.status = "error"
        oc.error = f"{type(exc).__name__}: {exc}"
    return oc


def _worker(text, index, settings):
    s = parse_session(text)
    return run_command(s, index, settings)


def render(oc: Outcome) -> str:
    args = [str(a) for a in oc.args] + [f"{k}={v}" for k, v in oc.options.items()]
    lines = [f"[{oc.index}] {oc.verb}({', '.join(args)})"]
    if oc.status != "ok":
        lines.append(f"    error: {oc.error}")
        return "\n".join(lines)
    res = _clean(oc.result)
    for k, v in res.items():
        if k == "betti" and "betti_text" in res:
            continue
        if k == "betti_text":
            lines.append("    betti:")
            lines += ["      " + row for row in v.splitlines()]
        elif isinstance(v, list) and all(isinstance(t, str) for t in v):
            lines.append(f"    {k}: " + (", ".join(v) if v else "(0)"))
        elif isinstance(v, (dict, list)):
            lines.append(f"    {k}: {json.dumps(v, sort_keys=True)}")
        else:
            lines.append(f"    {k}: {v}")
    return "\n".join(lines)


def run_session(s: SessionScript, out=None, human=None, settings: Settings | None = None,
                fail_fast: bool = False, parallel: int = 0, source: str | None = None) -> int:
    """Run every command; JSON lines go to ``out``, text blocks to ``human``.

    Returns 0 when no command failed and 1 otherwise.
    """
    settings = settings or Settings()
    human = sys.stdout if human is None else human
    n = len(s.commands)
    if n == 0:
        return 0
    outcomes = []
    if parallel and parallel > 1 and source is not None and not fail_fast:
        with ProcessPoolExecutor(max_workers=parallel) as ex:
            futs = [ex.submit(_worker, source, i, settings) for i in range(n)]
            outcomes = [f.result() for f in futs]
        for oc in outcomes:
            _emit(oc, out, human)
    else:
        ctx = _Context(s, settings)
        for i in range(n):
            oc = run_command(s, i, settings, ctx)
            outcomes.append(oc)
            _emit(oc, out, human)
            if fail_fast and oc.status != "ok":
                break
    errors = sum(oc.status != "ok" for oc in outcomes)
    flag = any(oc.inconclusive for oc in outcomes)
    summary = {"summary": {"commands": len(outcomes), "errors": errors, "inconclusive": flag}}
    if out is not None:
        out.write(json.dumps(summary) + "\n")
    if human:
        msg = f"summary: {len(outcomes)} command(s), {errors} error(s)"
        if flag:
            msg += ", INCONCLUSIVE results present"
        human.write(msg + "\n")
    return 1 if errors else 0


def _emit(oc, out, human):
    if out is not None:
        out.write(json.dumps(oc.to_json()) + "\n")
    if human:
        human.write(render(oc) + "\n")
