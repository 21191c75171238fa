"""Graded free resolutions, Betti tables, Ext strands and a-invariants.

Modules are presented as R^r / (relation columns) over a standard graded
polynomial ring R.  ``twists`` are the degrees of the free generators.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations, combinations_with_replacement
from math import comb

from .ideals import Ideal, krull_dimension
from .linalg import rank as matrix_rank
from .modules import (Submodule, is_zero_vec, minimal_generators, syzygies_of,
                      vec_degree)
from .orders import DEGREVLEX
from .poly import Polynomial, PolyRing

NEG_INF = float("-inf")


class HomogeneityError(ValueError):
    pass


class ResolutionError(RuntimeError):
    pass


class GradedPresentation:
    """Graded module R^rank(-twists) / image(relations)."""

    def __init__(self, ring: PolyRing, twists, relations, check=True):
        self.ring = ring
        self.twists = [int(t) for t in twists]
        self.relations = [list(c) for c in relations if not is_zero_vec(c)]
        for c in self.relations:
            if len(c) != self.rank:
                raise ValueError("relation column has wrong length")
        if check:
            self._check_homogeneous()
        self._resolution = None

    @classmethod
    def quotient(cls, ring: PolyRing, gens, twist=0):
        """R(-twist)/(gens) for homogeneous gens."""
        gens = [ring(g) for g in gens]
        return cls(ring, [twist], [[g] for g in gens if not g.is_zero()])

    @property
    def rank(self):
        return len(self.twists)

    def column_degree(self, c):
        return vec_degree(c, self.twists)

    def _check_homogeneous(self):
        for c in self.relations:
            d = self.column_degree(c)
            for f, t in zip(c, self.twists):
                if f.is_zero():
                    continue
                if not f.is_homogeneous() or f.degree() != d - t:
                    raise HomogeneityError("non-homogeneous input")

    def minimized(self) -> "GradedPresentation":
        """Cancel unit entries: each one removes a generator and a relation."""
        twists = list(self.twists)
        cols = [list(c) for c in self.relations]
        while True:
            hit = None
            for ci, c in enumerate(cols):
                for r, f in enumerate(c):
                    if not f.is_zero() and f.is_constant():
                        hit = (ci, r)
                        break
                if hit:
                    break
            if hit is None:
                break
            ci, r = hit
            piv = cols[ci]
            u = piv[r].constant_coeff()
            new = []
            for k, c in enumerate(cols):
                if k == ci:
                    continue
                if not c[r].is_zero():
                    fac = c[r].scale(self.ring.field.div(1, u))
                    c = [a - fac * b for a, b in zip(c, piv)]
                c = c[:r] + c[r + 1:]
                if not is_zero_vec(c):
                    new.append(c)
            cols = new
            twists = twists[:r] + twists[r + 1:]
        return GradedPresentation(self.ring, twists, cols, check=False)

    def submodule(self) -> Submodule:
        return Submodule(self.ring, self.rank, self.relations, self.twists)

    def is_zero(self) -> bool:
        return self.rank == 0 or self.submodule().is_everything()

    def resolution(self) -> "Resolution":
        if self._resolution is None:
            self._resolution = graded_resolution(self)
        return self._resolution


@dataclass
class BettiTable:
    entries: dict = field(default_factory=dict)   # (i, j) -> beta_{i,j}

    @classmethod
    def from_twists(cls, twist_lists):
        out = {}
        for i, tw in enumerate(twist_lists):
            for j in tw:
                out[(i, j)] = out.get((i, j), 0) + 1
        return cls(out)

    def pd(self) -> int:
        return max((i for (i, _), b in self.entries.items() if b), default=-1)

    def total(self, i) -> int:
        return sum(b for (k, _), b in self.entries.items() if k == i)

    def to_text(self) -> str:
        """Macaulay-style table: column i, row j - i."""
        if not self.entries:
            return "0"
        cols = range(self.pd() + 1)
        rows = sorted({j - i for (i, j) in self.entries})
        width = max(len(str(b)) for b in self.entries.values()) + 1
        width = max(width, max(len(str(i)) for i in cols) + 1)
        lines = ["      " + "".join(str(i).rjust(width) for i in cols)]
        lines.append("total:" + "".join(str(self.total(i)).rjust(width) for i in cols))
        for r in rows:
            cells = []
            for i in cols:
                b = self.entries.get((i, i + r), 0)
                cells.append((str(b) if b else ".").rjust(width))
            lines.append(f"{r:>5}:" + "".join(cells))
        return "\n".join(lines)

    def to_json(self) -> dict:
        return {"betti": [[i, j, b] for (i, j), b in sorted(self.entries.items())],
                "pd": self.pd()}


@dataclass
class Resolution:
    ring: PolyRing
    twists: list        # twists[i]: degrees of the basis of F_i
    maps: list          # maps[i]: columns of d_{i+1} (vectors in F_i)
    betti: BettiTable

    @property
    def length(self):
        return len(self.maps)

    def rank(self, i):
        return len(self.twists[i]) if i < len(self.twists) else 0


def graded_resolution(P: GradedPresentation) -> Resolution:
    """Minimal graded free resolution of a homogeneous presentation."""
    ring = P.ring
    P = P.minimized()
    P._check_homogeneous()
    gens, degs = minimal_generators(ring, P.relations, P.rank, P.twists)
    twists = [list(P.twists)]
    maps = []
    while gens:
        if len(maps) >= ring.nvars:
            raise ResolutionError("resolution longer than the number of variables")
        maps.append(gens)
        twists.append(degs)
        syz = syzygies_of(ring, gens, len(twists[-2]), twists[-2])
        gens, degs = minimal_generators(ring, syz, len(gens), degs)
    res = Resolution(ring, twists, maps, BettiTable.from_twists(twists))
    check_resolution(res)
    return res


def check_resolution(res: Resolution):
    """d_i d_{i+1} = 0 and no unit entries."""
    for cols in res.maps:
        for c in cols:
            for f in c:
                if not f.is_zero() and f.is_constant():
                    raise ResolutionError("unit entry in a differential")
    for i in range(1, len(res.maps)):
        prev = res.maps[i - 1]
        for c in res.maps[i]:
            acc = [res.ring.zero()] * len(prev[0])
            for coef, col in zip(c, prev):
                if coef.is_zero():
                    continue
                acc = [a + coef * b for a, b in zip(acc, col)]
            if not is_zero_vec(acc):
                raise ResolutionError("consecutive differentials do not compose to zero")


def depth_and_reg(B: BettiTable, s: int):
    """(depth, reg) from a minimal Betti table (Auslander-Buchsbaum)."""
    if not B.entries:
        return None, NEG_INF
    return s - B.pd(), max(j - i for (i, j), b in B.entries.items() if b)


# ---- Ext strands -------------------------------------------------------------

def _monomials(nvars, d):
    if d < 0:
        return []
    out = []
    for c in combinations_with_replacement(range(nvars), d):
        e = [0] * nvars
        for i in c:
            e[i] += 1
        out.append(tuple(e))
    return out


def _dual_map_rank(res: Resolution, i: int, d: int) -> int:
    """Rank of d_{i+1}^T : (F_i^*)_d -> (F_{i+1}^*)_d."""
    if i + 1 > res.length or i < 0:
        return 0
    n = res.ring.nvars
    p = res.ring.field.char
    cols = res.maps[i]          # d_{i+1}: columns k, rows j
    rows = []
    for j, a in enumerate(res.twists[i]):
        for m in _monomials(n, d + a):
            row = {}
            for k, col in enumerate(cols):
                f = col[j]
                for e, c in f.terms_dict.items():
                    key = (k, DEGREVLEX.key(tuple(x + y for x, y in zip(e, m))))
                    v = row.get(key, 0) + c
                    if p:
                        v %= p
                    if v:
                        row[key] = v
                    else:
                        row.pop(key, None)
            rows.append(row)
    return matrix_rank(rows, p)


def strand_dim(res: Resolution, i: int, d: int) -> int:
    if i < 0 or i >= len(res.twists):
        return 0
    n = res.ring.nvars
    return sum(comb(d + a + n - 1, n - 1) for a in res.twists[i] if d + a >= 0)


def ext_graded_piece(P, i: int, d: int) -> int:
    """dim_k Ext^i(M, R)_d via the dualized resolution strand."""
    res = P.resolution() if isinstance(P, GradedPresentation) else P
    if i < 0 or i > res.length:
        return 0
    total = strand_dim(res, i, d)
    if total == 0:
        return 0
    return total - _dual_map_rank(res, i, d) - _dual_map_rank(res, i - 1, d)


def ext_lower_bound(res: Resolution, i: int):
    """Ext^i(M,R)_d = 0 for d below this bound."""
    if i < 0 or i > res.length or not res.twists[i]:
        return None
    return -max(res.twists[i])


# ---- Ext as a module ---------------------------------------------------------

@dataclass
class ExtModule:
    """Ext^i(M,R) as Z/B inside F_i^*, plus a presentation R^m/K."""
    i: int
    generators: list    # cycle generators z_l (vectors in F_i^*)
    degrees: list
    boundaries: Submodule
    presentation: GradedPresentation

    def initial_degree(self):
        """Smallest degree of a generator that is not a boundary (None if Ext = 0)."""
        live = [d for z, d in zip(self.generators, self.degrees)
                if not self.boundaries.contains(z)]
        return min(live) if live else None


def ext_module(P, i: int) -> ExtModule:
    res = P.resolution() if isinstance(P, GradedPresentation) else P
    ring = res.ring
    if i < 0 or i > res.length:
        empty = GradedPresentation(ring, [], [], check=False)
        return ExtModule(i, [], [], Submodule(ring, 0, []), empty)
    ri = len(res.twists[i])
    dual_tw = [-a for a in res.twists[i]]
    # cycles: kernel of d_{i+1}^T
    if i < res.length:
        nxt = res.maps[i]
        rnext = len(nxt)
        tw_next = [-a for a in res.twists[i + 1]]
        images = [[nxt[k][j] for k in range(rnext)] for j in range(ri)]
        z = syzygies_of(ring, images, rnext, tw_next)
        z, zdeg = minimal_generators(ring, z, ri, dual_tw)
    else:
        z = []
        for j in range(ri):
            v = [ring.zero()] * ri
            v[j] = ring.one()
            z.append(v)
        zdeg = list(dual_tw)
    # boundaries: image of d_i^T
    if i >= 1:
        prev = res.maps[i - 1]
        bvecs = [[prev[k][j] for k in range(ri)] for j in range(len(res.twists[i - 1]))]
    else:
        bvecs = []
    B = Submodule(ring, ri, bvecs, dual_tw)
    m = len(z)
    syz = syzygies_of(ring, list(z) + [b for b in bvecs if not is_zero_vec(b)], ri, dual_tw)
    K = [s[:m] for s in syz if not is_zero_vec(s[:m])]
    pres = GradedPresentation(ring, zdeg, K, check=False)
    return ExtModule(i, z, zdeg, B, pres)


def module_dimension(P: GradedPresentation) -> int:
    """Krull dimension of the module (-1 for the zero module), from the initial module."""
    if P.rank == 0:
        return -1
    if P.is_zero():
        return -1
    return P.submodule().dimension()


def _det(mat):
    n = len(mat)
    if n == 1:
        return mat[0][0]
    ring = mat[0][0].ring
    acc = ring.zero()
    for c in range(n):
        if mat[0][c].is_zero():
            continue
        minor = [row[:c] + row[c + 1:] for row in mat[1:]]
        term = mat[0][c] * _det(minor)
        acc = acc + term if c % 2 == 0 else acc - term
    return acc


def fitting_ideal0(P: GradedPresentation, max_rows=6, max_minors=400):
    """Zeroth Fitting ideal from maximal minors; None when over budget."""
    r = P.rank
    cols = P.relations
    if r > max_rows:
        return None
    if len(cols) < r:
        return Ideal(P.ring, [])
    if comb(len(cols), r) > max_minors:
        return None
    minors = []
    for pick in combinations(range(len(cols)), r):
        mat = [[cols[c][row] for c in pick] for row in range(r)]
        d = _det(mat)
        if not d.is_zero():
            minors.append(d)
    return Ideal(P.ring, minors)


def module_dimension_fitting(P: GradedPresentation):
    """dim R/Fitt_0(M) when affordable (same support as M), else None."""
    if P.rank == 0:
        return -1
    F = fitting_ideal0(P)
    if F is None:
        return None
    if F.is_unit():
        return -1
    return krull_dimension(F)


# ---- a-invariants ------------------------------------------------------------

def a_invariants(P: GradedPresentation, s: int | None = None, verify=True):
    """a_i = -s - indeg Ext^{s-i}(M, R) by graded local duality.

    Returns {i: a_i} for 0 <= i <= s, with -inf when the Ext module vanishes.
    The initial degree comes from an Ext presentation and is confirmed on strands.
    """
    res = P.resolution() if isinstance(P, GradedPresentation) else P
    if s is None:
        s = res.ring.nvars
    out = {}
    for i in range(s + 1):
        j = s - i
        E = ext_module(res, j)
        d0 = E.initial_degree()
        if d0 is None:
            out[i] = NEG_INF
            continue
        if verify:
            if ext_graded_piece(res, j, d0) <= 0:
                raise ResolutionError("Ext strand disagrees with Ext presentation")
            lo = ext_lower_bound(res, j)
            for d in range(lo, d0):
                if ext_graded_piece(res, j, d) != 0:
                    raise ResolutionError("Ext strand below initial degree is nonzero")
        out[i] = -s - d0
    return out


def reg_from_a_invariants(a: dict):
    vals = [v + i for i, v in a.items() if v != NEG_INF]
    return max(vals) if vals else NEG_INF


def betti_json(B: BettiTable) -> str:
    return json.dumps(B.to_json(), sort_keys=True)
