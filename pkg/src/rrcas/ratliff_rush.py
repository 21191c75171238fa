"""Ratliff-Rush closures of powers, the index rho, and the degree-n checks of
the exact sequence relating the filtrations of A and A/(x)."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .ideals import Ideal, colon, colon_principal, locally_equal, local_contains
from .local import LocalRingPresentation, MPrimaryIdeal, colength, is_superficial
from .poly import format_poly

DEFAULT_CHAIN_CAP = 20


class GradeZeroError(ValueError):
    """I contains no regular element of A."""


class ChainRunaway(RuntimeError):
    pass


def has_positive_grade(pres: LocalRingPresentation, I: MPrimaryIdeal) -> bool:
    """(0 :_A I) = 0 locally, i.e. (q : I) equals q at the origin."""
    q = pres.q
    if q.is_zero():
        return True
    cache = getattr(I, "_grade_ok", None)
    if cache is None:
        cache = locally_equal(colon(q, I.ideal()), q)
        I._grade_ok = cache
    return cache


def _require_grade(pres, I):
    if not has_positive_grade(pres, I):
        raise GradeZeroError("grade zero: Ratliff-Rush chain need not terminate meaningfully")


@dataclass
class ClosureResult:
    closure: Ideal
    chain_length: int        # j at which the chain was declared stable
    chain_colengths: list    # colength of q + T_j for j = 0..chain_length


def rr_closure_chain(pres: LocalRingPresentation, I: MPrimaryIdeal, n: int,
                     cap: int = DEFAULT_CHAIN_CAP, stable_steps: int = 2) -> ClosureResult:
    """Run T_j = (q + I^{n+j} : I^j) until it is unchanged for ``stable_steps`` steps."""
    if n < 1:
        raise ValueError("closure of I^n needs n >= 1")
    _require_grade(pres, I)
    cache = I.__dict__.setdefault("_rr_cache", {})
    key = (n, cap, stable_steps)
    if key in cache:
        return cache[key]
    prev = I.with_q(n)
    lengths = [colength(I, n)]
    unchanged = 0
    for j in range(1, cap + 1):
        T = colon(I.with_q(n + j), Ideal(I.ring, I.with_q(j).reduced_gens()))
        if locally_equal(T, prev):
            unchanged += 1
        else:
            unchanged = 0
        lengths.append(_colen(pres, T))
        prev = T
        if unchanged >= stable_steps:
            res = ClosureResult(prev, j, lengths)
            cache[key] = res
            return res
    raise ChainRunaway(f"Ratliff-Rush chain for I^{n} still growing at j = {cap}")


def _colen(pres, T):
    from .ideals import colength_at_origin
    return colength_at_origin(pres.q, T)


def rr_closure(pres: LocalRingPresentation, I: MPrimaryIdeal, n: int = 1,
               cap: int = DEFAULT_CHAIN_CAP) -> Ideal:
    """The Ratliff-Rush closure of I^n, as an ideal of k[x] containing q."""
    return rr_closure_chain(pres, I, n, cap).closure


def defect(pres, I: MPrimaryIdeal, n: int, cap: int = DEFAULT_CHAIN_CAP) -> int:
    """λ(closure(I^n) / I^n) by colength differences."""
    if n <= 0:
        return 0
    T = rr_closure(pres, I, n, cap)
    return colength(I, n) - _colen(pres, T)


@dataclass
class RRRow:
    power: int
    defect: int
    closure: Ideal
    chain_length: int

    def to_json(self):
        return {"power": self.power, "defect": self.defect,
                "closure_gens": [format_poly(g) for g in self.closure.reduced_gens()],
                "chain_length": self.chain_length}


@dataclass
class RRReport:
    rows: list
    value: int | None          # None when the bound was exceeded
    n_max: int
    provisional: bool = True
    seed: int | None = None
    bounds: dict = dc_field(default_factory=dict)

    @property
    def exceeded(self):
        return self.value is None

    def defects(self):
        return {r.power: r.defect for r in self.rows}

    def to_json(self):
        return {"rho": self.value, "exceeds_bound": self.exceeded,
                "provisional": self.provisional,
                "table": [r.to_json() for r in self.rows],
                "seed": self.seed, "bounds": {"n_max": self.n_max, **self.bounds}}


def rho(pres: LocalRingPresentation, I: MPrimaryIdeal, n_max: int = 12,
        cap: int = DEFAULT_CHAIN_CAP) -> RRReport:
    """Least n <= n_max with closure(I^i) = I^i for n <= i <= n_max.

    The value is provisional: equality is only sampled up to ``n_max``.  When
    the defect at ``n_max`` is still positive the report says so and carries
    ``value=None``.
    """
    _require_grade(pres, I)
    rows = []
    for n in range(1, n_max + 1):
        res = rr_closure_chain(pres, I, n, cap)
        d = colength(I, n) - _colen(pres, res.closure)
        rows.append(RRRow(n, d, res.closure, res.chain_length))
    last_bad = max((r.power for r in rows if r.defect > 0), default=0)
    value = None if last_bad == n_max else (last_bad + 1 if last_bad else 0)
    return RRReport(rows, value, n_max, bounds={"chain_cap": cap})


@dataclass
class ColonReport:
    value: int | None
    n_max: int
    equal: dict      # n -> whether (I^{n+1} : x) == I^n

    @property
    def exceeded(self):
        return self.value is None


def rho_via_colon(pres: LocalRingPresentation, I: MPrimaryIdeal, x, n_max: int = 12) -> ColonReport:
    """Least i with (q + I^{n+1} : x) = q + I^n for i <= n <= n_max."""
    _require_grade(pres, I)
    equal = {}
    for n in range(0, n_max + 1):
        c = colon_principal(I.with_q(n + 1), x)
        equal[n] = locally_equal(c, I.with_q(n))
    last_bad = max((n for n, ok in equal.items() if not ok), default=-1)
    value = None if last_bad == n_max else last_bad + 1
    return ColonReport(value, n_max, equal)


@dataclass
class SupexVerdict:
    verdict: str                   # PASS / FAIL
    n: int
    lengths: dict
    failures: list = dc_field(default_factory=list)

    def to_json(self):
        return {"verdict": self.verdict, "n": self.n, "lengths": self.lengths,
                "failures": self.failures}


class PreconditionError(ValueError):
    pass


def check_supexN(pres: LocalRingPresentation, I: MPrimaryIdeal, x, n: int,
                 n_check: int = 12, cap: int = DEFAULT_CHAIN_CAP,
                 depth_checked: bool = False) -> SupexVerdict:
    """Exactness in degree n of

        0 -> (I^{n+1} : x)/I^n -> ~I^n/I^n --x--> ~I^{n+1}/I^{n+1} -> ~(I^{n+1}N)/I^{n+1}N

    with N = A/(x).  Checked containments: the colon lies in ~I^n (first two
    spots), x*~I^n ⊆ ~I^{n+1} (multiplication is defined), the quotient map
    lands in the closure over N, and ~I^{n+1} ∩ (I^{n+1} + (x)) equals
    x*~I^n + I^{n+1} (exactness at the third spot; injectivity when n = 0).
    """
    if not depth_checked:
        from .koszul import local_depth
        if local_depth(pres) < 2:
            raise PreconditionError("depth A < 2")
    if not is_superficial(I, x, 0 if n == 0 else 1, n_check) and \
            not _superficial_from_rho(pres, I, x, n_check, cap):
        raise PreconditionError(f"{x} is not superficial up to {n_check}")
    R = pres.ring
    q = pres.q
    Xi = Ideal(R, [x])
    In = I.with_q(n)
    In1 = I.with_q(n + 1)
    Tn = rr_closure(pres, I, n, cap) if n >= 1 else Ideal.unit(R)
    Tn1 = rr_closure(pres, I, n + 1, cap)
    C = colon_principal(In1, x)

    Npres = LocalRingPresentation(R, q.gens + [x])
    IN = MPrimaryIdeal(Npres, I.gens, certified=True)
    TN = rr_closure(Npres, IN, n + 1, cap)

    failures = []
    if not local_contains(Tn, C):
        failures.append(f"(I^{n + 1} : x) not inside closure of I^{n}")
    image = Ideal(R, In1.gens + [x * g for g in Tn.gens])
    if not local_contains(Tn1, image):
        failures.append(f"x * closure(I^{n}) not inside closure(I^{n + 1})")
    if not local_contains(TN, Ideal(R, Tn1.gens + [x])):
        failures.append(f"closure(I^{n + 1}) does not map into the closure over A/(x)")
    from .ideals import intersect
    kernel = intersect(Tn1, In1 + Xi)
    if not locally_equal(kernel, image):
        failures.append(f"kernel of the quotient map differs from the image of x in degree {n}")

    def lam(J):
        return _colen(pres, J)

    lengths = {
        "colon_over_In": lam(In) - lam(C),
        "closure_In_over_In": lam(In) - lam(Tn),
        "closure_In1_over_In1": lam(In1) - lam(Tn1),
        "closure_over_N": _colen(Npres, In1 + Xi) - _colen(Npres, TN),
        "image_of_x": lam(In1) - lam(image),
    }
    if lengths["closure_In_over_In"] != lengths["colon_over_In"] + lengths["image_of_x"]:
        failures.append("length bookkeeping at the second spot fails")
    if lengths["closure_In1_over_In1"] - lengths["image_of_x"] > lengths["closure_over_N"]:
        failures.append("length bookkeeping at the fourth spot fails")
    return SupexVerdict("FAIL" if failures else "PASS", n, lengths, failures)


def _superficial_from_rho(pres, I, x, n_check, cap):
    r = rho(pres, I, min(n_check, 6), cap)
    start = r.value if r.value is not None else n_check
    return is_superficial(I, x, start, n_check)


def closure_colon_holds(pres: LocalRingPresentation, I: MPrimaryIdeal, x, n: int,
                        cap: int = DEFAULT_CHAIN_CAP) -> bool:
    """(closure(I^{n+1}) : x) equals closure(I^n) locally, for a superficial
    x and grade(I) > 0 (closure(I^0) is the unit ideal)."""
    T1 = rr_closure(pres, I, n + 1, cap)
    Tn = rr_closure(pres, I, n, cap) if n >= 1 else Ideal.unit(pres.ring)
    return locally_equal(colon_principal(T1, x), Tn)
