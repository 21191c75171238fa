"""Grade of an ideal on a finitely presented module, localized at the origin.

The main route peels off regular elements: a generic combination w of the
generators is tried, and if it is a nonzerodivisor on M (locally) we pass
to M/wM.  Grade zero is certified by the top Koszul homology
(N :_F I)/N being nonzero.  If no regular element turns up, the full Koszul
homology is computed.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations

from .ideals import Ideal, colon, colon_principal, krull_dimension, local_contains
from .modules import ideal_colon_vec, is_zero_vec, module_colon_element, preimage, Submodule
from .poly import Polynomial, PolyRing

DEFAULT_KOSZUL_CAP = 8
DEFAULT_MODULUS = 2147483647


class KoszulBudgetExceeded(RuntimeError):
    def __init__(self, n, cap):
        super().__init__(f"Koszul budget exceeded ({n} generators, cap {cap})")
        self.n = n
        self.cap = cap


@dataclass
class ModulePresentation:
    """R^rank / (relations), no grading required."""
    ring: PolyRing
    rank: int
    relations: list

    @classmethod
    def quotient(cls, ring, gens):
        return cls(ring, 1, [[ring(g)] for g in gens if not ring(g).is_zero()])


def _as_module(M):
    if isinstance(M, Ideal):
        return ModulePresentation.quotient(M.ring, M.gens)
    return ModulePresentation(M.ring, M.rank, [list(c) for c in M.relations])


def _vanishes_locally(ring, N_gens, rank, vecs) -> bool:
    """Every vector in ``vecs`` is zero in (R^rank/N) localized at the origin."""
    sub = Submodule(ring, rank, N_gens)
    for u in vecs:
        if sub.contains(u):
            continue
        ann = ideal_colon_vec(ring, N_gens, rank, u)
        if not any(f.constant_coeff() != 0 for f in ann):
            return False
    return True


class _Module:
    """Working state: either a quotient ideal (rank 1) or a general submodule."""

    def __init__(self, M: ModulePresentation):
        self.ring = M.ring
        self.rank = M.rank
        self.rels = [c for c in M.relations if not is_zero_vec(c)]

    @property
    def cyclic(self):
        return self.rank == 1

    def ideal(self):
        return Ideal(self.ring, [c[0] for c in self.rels])

    def is_zero_locally(self) -> bool:
        if self.rank == 0:
            return True
        units = []
        for i in range(self.rank):
            v = [self.ring.zero()] * self.rank
            v[i] = self.ring.one()
            units.append(v)
        if self.cyclic:
            J = self.ideal()
            return J.is_unit() or local_contains(J, Ideal.unit(self.ring))
        return _vanishes_locally(self.ring, self.rels, self.rank, units)

    def is_regular(self, w: Polynomial) -> bool:
        if self.cyclic:
            J = self.ideal()
            return local_contains(J, colon_principal(J, w))
        U = module_colon_element(self.ring, self.rels, self.rank, w)
        return _vanishes_locally(self.ring, self.rels, self.rank, U)

    def top_homology_vanishes(self, gens) -> bool:
        """(N :_F I)/N = 0 locally, i.e. grade(I, M) >= 1."""
        if self.cyclic:
            J = self.ideal()
            return local_contains(J, colon(J, Ideal(self.ring, gens)))
        R = self.ring
        r = self.rank
        n = len(gens)
        images = []
        for i in range(r):
            v = [R.zero()] * (r * n)
            for t, g in enumerate(gens):
                v[t * r + i] = g
            images.append(v)
        rels = []
        for t in range(n):
            for c in self.rels:
                v = [R.zero()] * (r * n)
                v[t * r:(t + 1) * r] = c
                rels.append(v)
        U = preimage(R, images, r * n, rels)
        return _vanishes_locally(R, self.rels, r, U)

    def mod_out(self, w: Polynomial):
        for i in range(self.rank):
            v = [self.ring.zero()] * self.rank
            v[i] = w
            self.rels.append(v)


def koszul_homology_vanishes(M, gens, j) -> bool:
    """H_j(gens; M) = 0 after localizing at the origin."""
    M = _as_module(M)
    R = M.ring
    r = M.rank
    n = len(gens)
    if j < 0 or j > n:
        return True
    Sj = list(combinations(range(n), j))
    Sm = list(combinations(range(n), j - 1)) if j >= 1 else []
    Sp = list(combinations(range(n), j + 1)) if j + 1 <= n else []
    idx_m = {S: k for k, S in enumerate(Sm)}
    idx_j = {S: k for k, S in enumerate(Sj)}

    def block_rels(count):
        out = []
        for b in range(count):
            for c in M.relations:
                v = [R.zero()] * (r * count)
                v[b * r:(b + 1) * r] = c
                out.append(v)
        return out

    def boundary(S, comp, target_index, target_count):
        v = [R.zero()] * (r * target_count)
        for pos, t in enumerate(S):
            T = S[:pos] + S[pos + 1:]
            g = gens[t] if pos % 2 == 0 else -gens[t]
            v[target_index[T] * r + comp] = v[target_index[T] * r + comp] + g
        return v

    if j == 0:
        cycles = []
        for b in range(r):
            v = [R.zero()] * r
            v[b] = R.one()
            cycles.append(v)
    else:
        images = [boundary(S, c, idx_m, len(Sm)) for S in Sj for c in range(r)]
        cycles = preimage(R, images, r * len(Sm), block_rels(len(Sm)))
    bnd = [boundary(S, c, idx_j, len(Sj)) for S in Sp for c in range(r)]
    bnd = [v for v in bnd if not is_zero_vec(v)] + block_rels(len(Sj))
    return _vanishes_locally(R, bnd, r * len(Sj), cycles)


def koszul_grade_full(M, gens) -> int:
    """grade = n - max{j : H_j != 0} by computing Koszul homology."""
    n = len(gens)
    for j in range(n, -1, -1):
        if not koszul_homology_vanishes(M, gens, j):
            return n - j
    return n + 1     # M = 0 locally


def koszul_grade(gens, M, cap: int = DEFAULT_KOSZUL_CAP, seed: int = 0,
                 attempts: int = 6) -> int:
    """grade((gens), M) at the origin.  Returns len(gens)+1 for M = 0 locally."""
    gens = [g for g in gens if not g.is_zero()]
    n = len(gens)
    if n > cap:
        raise KoszulBudgetExceeded(n, cap)
    work = _Module(_as_module(M))
    if work.is_zero_locally():
        return n + 1
    rng = random.Random(seed)
    depth = 0
    tried_top = False
    while depth < n:
        found = None
        candidates = list(gens) if depth == 0 else []
        for _ in range(attempts):
            candidates.append(_combo(gens, rng))
        for k, w in enumerate(candidates):
            if work.is_regular(w):
                found = w
                break
            # a failure among generic candidates: check for grade zero
            if k == len(candidates) - attempts and not tried_top:
                tried_top = True
                if not work.top_homology_vanishes(gens):
                    return depth
        if found is None:
            if not work.top_homology_vanishes(gens):
                return depth
            rest = ModulePresentation(work.ring, work.rank, work.rels)
            return depth + koszul_grade_full(rest, gens)
        work.mod_out(found)
        depth += 1
        tried_top = False
    return depth


def _combo(gens, rng):
    acc = gens[0].ring.zero()
    for g in gens:
        acc = acc + g.scale(rng.randint(1, 101))
    return acc


def local_depth(pres, cap: int = DEFAULT_KOSZUL_CAP, seed: int = 0) -> int:
    """depth of A = k[x]/q at the origin (grade of the maximal ideal)."""
    return koszul_grade(pres.ring.gens(), pres.q, cap=cap, seed=seed)


def is_regular_sequence(seq, M) -> bool:
    work = _Module(_as_module(M))
    for w in seq:
        if not work.is_regular(w):
            return False
        work.mod_out(w)
    return not work.is_zero_locally()


# ---- graded rings: depth along a generic system of parameters ---------------

@dataclass
class GradedDepth:
    depth: int
    sop_length: int
    seed: int
    certificate: str     # "sop-complete", "last-parameter", "koszul"
    modulus: int = 0     # 0: exact over the input field

    def to_json(self):
        return {"depth": self.depth, "sop_length": self.sop_length, "seed": self.seed,
                "certificate": self.certificate, "modulus": self.modulus}


def _revlex_last_key(weights, v):
    """Weighted degree first, then a smaller power of variable v wins, then degrevlex."""
    def mkey(e):
        return (-sum(w * a for w, a in zip(weights, e)), e[v], -sum(e), e[::-1])
    return mkey


def _regular_as_variable(J_gens, ring, weights, v):
    """Is variable v a nonzerodivisor on ring/(J_gens)?  J must be homogeneous
    for ``weights`` and v of positive weight: then in(J : v) = in(J) : v."""
    from . import engine
    from .groebner import to_vec
    mkey = _revlex_last_key(weights, v)
    tkey = engine.top_key(mkey)
    gb = engine.groebner_vecs([to_vec(g) for g in J_gens], tkey, ring.field.char)
    for vec in gb:
        lt = min(vec, key=tkey)
        if lt[1][v]:
            return False, gb
    return True, gb


def graded_depth(J: Ideal, graded_vars, d: int, seed: int = 0, attempts: int = 3,
                 cap: int = DEFAULT_KOSZUL_CAP, modulus: int = 0) -> GradedDepth:
    """depth of P/J at its homogeneous maximal ideal.

    P is graded with the variables in ``graded_vars`` of degree 1 and the
    rest of degree 0; J is homogeneous, P/J has dimension d and an Artinian
    local degree-0 part supported at the origin.  Generic linear forms
    z_1..z_d in the graded variables are peeled one at a time; a failure at
    the last parameter certifies the depth exactly, earlier failures fall
    back to Koszul grade on the remaining parameters.

    With ``modulus`` a prime, an ideal over QQ is first reduced modulo it
    (much faster; exact for all but finitely many primes).
    """
    if modulus and J.ring.field.char == 0:
        res = graded_depth(reduce_modulo(J, modulus), graded_vars, d, seed, attempts, cap)
        res.modulus = modulus
        return res
    R = J.ring
    weights = [1 if i in set(graded_vars) else 0 for i in range(R.nvars)]
    rng = random.Random(seed)
    gens = list(J.gens)
    live = list(graded_vars)
    for i in range(d):
        ok = False
        for _ in range(attempts):
            coeffs = {j: rng.randint(1, 101) for j in live}
            coeffs[live[-1]] = 1
            v = live[-1]
            # Y_v -> (W - sum_{j != v} c_j Y_j) / c_v, with W in slot v
            expr = R.gen(v)
            for j in live[:-1]:
                expr = expr - R.gen(j).scale(coeffs[j])
            expr = expr.scale(R.field.inv(R.field(coeffs[v])))
            moved = [g.subs({v: expr}) for g in gens]
            ok, _ = _regular_as_variable(moved, R, weights, v)
            if ok:
                break
            if d - i == 1 and _is_parameter(R, moved, v, live, weights):
                # the last parameter: zero-divisor <=> depth of P/J_cur is 0
                return GradedDepth(i, d, seed, "last-parameter")
        if not ok:
            if d - i == 1:
                raise RuntimeError("generic forms are not a system of parameters")
            rest = _generic_linear(R, live, d - i, rng)
            return GradedDepth(i + koszul_grade(rest, Ideal(R, gens), cap=cap, seed=seed),
                               d, seed, "koszul")
        # pass to P/(J + z): set W = 0
        gens = [g for g in (h.eval_zero([v]) for h in moved) if not g.is_zero()]
        live = live[:-1]
    if not _is_parameter(R, gens, None, live, weights):
        raise RuntimeError("dimension is larger than the length of the parameter system")
    return GradedDepth(d, d, seed, "sop-complete")


def _is_parameter(R, gens, v, live, weights):
    """P/(gens, v, dropped graded variables) is zero-dimensional."""
    dead = [R.gen(j) for j in range(R.nvars) if weights[j] and j not in set(live)]
    extra = [R.gen(v)] if v is not None else []
    return krull_dimension(Ideal(R, list(gens) + dead + extra)) == 0


def reduce_modulo(J: Ideal, p: int) -> Ideal:
    from .field import Fp
    Rp = PolyRing(J.ring.names, Fp(p), J.ring.order)
    idx = list(range(Rp.nvars))
    return Ideal(Rp, [g.change_ring(Rp, idx) for g in J.gens])


def _generic_linear(R, idx, count, rng):
    out = []
    for _ in range(count):
        acc = R.zero()
        for j in idx:
            acc = acc + R.gen(j).scale(rng.randint(1, 101))
        out.append(acc)
    return out
