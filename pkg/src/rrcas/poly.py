"""Sparse multivariate polynomials with exact coefficients."""

from __future__ import annotations

from .field import QQ, Field
from .orders import DEGREVLEX, MonomialOrder

MAX_EXPONENT = 2**31 - 1


class RingMismatch(ValueError):
    pass


class PolyRing:
    """k[x_1, ..., x_n] with a default monomial order."""

    def __init__(self, names, field: Field = QQ, order: MonomialOrder = DEGREVLEX):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError(f"repeated variable names in {names}")
        self.names = names
        self.field = field
        self.order = order
        self.nvars = len(names)
        self._index = {n: i for i, n in enumerate(names)}

    def __repr__(self):
        return f"{self.field}[{','.join(self.names)}]"

    def __eq__(self, other):
        return (isinstance(other, PolyRing) and self.names == other.names
                and self.field == other.field and self.order == other.order)

    def __hash__(self):
        return hash((self.names, self.field, self.order))

    def with_order(self, order: MonomialOrder) -> "PolyRing":
        return PolyRing(self.names, self.field, order)

    def index(self, name: str) -> int:
        return self._index[name]

    @property
    def zero_exp(self):
        return (0,) * self.nvars

    def zero(self):
        return Polynomial(self, {})

    def one(self):
        return Polynomial(self, {self.zero_exp: self.field.one})

    def const(self, c):
        c = self.field(c)
        return Polynomial(self, {self.zero_exp: c} if c else {})

    def gen(self, i):
        if isinstance(i, str):
            i = self._index[i]
        e = [0] * self.nvars
        e[i] = 1
        return Polynomial(self, {tuple(e): self.field.one})

    def gens(self):
        return [self.gen(i) for i in range(self.nvars)]

    def monomial(self, exp, coeff=1):
        c = self.field(coeff)
        return Polynomial(self, {tuple(exp): c} if c else {})

    def from_dict(self, terms):
        F = self.field
        out = {}
        for e, c in terms.items():
            c = F(c)
            if c:
                out[tuple(e)] = c
        return Polynomial(self, out)

    def parse(self, text: str) -> "Polynomial":
        from .cli_io.parser import parse_polynomial
        return parse_polynomial(text, self)

    def __call__(self, value):
        if isinstance(value, Polynomial):
            return value.change_ring(self)
        if isinstance(value, str):
            return self.parse(value)
        return self.const(value)


class Polynomial:
    """Immutable polynomial: a dict ``exponent tuple -> nonzero coefficient``."""

    __slots__ = ("ring", "_t", "_hash")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        self._t = terms
        self._hash = None

    # construction helpers
    def _new(self, terms):
        return Polynomial(self.ring, terms)

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            if other.ring.names != self.ring.names:
                raise RingMismatch(f"{self.ring} vs {other.ring}")
            if other.ring.field != self.ring.field:
                raise RingMismatch(f"coefficient fields {self.ring.field} and {other.ring.field} differ")
            return other
        return self.ring.const(other)

    # basic data
    @property
    def terms_dict(self):
        return self._t

    def terms(self, order: MonomialOrder | None = None):
        """Terms ``(exp, coeff)`` sorted from the leading term down."""
        key = (order or self.ring.order).key
        return sorted(self._t.items(), key=lambda t: key(t[0]))

    def __len__(self):
        return len(self._t)

    def __bool__(self):
        return bool(self._t)

    def is_zero(self):
        return not self._t

    def lm(self, order=None):
        if not self._t:
            raise ValueError("zero polynomial has no leading monomial")
        key = (order or self.ring.order).key
        return min(self._t, key=key)

    def lc(self, order=None):
        return self._t[self.lm(order)]

    def lt(self, order=None):
        m = self.lm(order)
        return m, self._t[m]

    def degree(self):
        return max((sum(e) for e in self._t), default=-1)

    def low_degree(self):
        return min((sum(e) for e in self._t), default=-1)

    def constant_coeff(self):
        return self._t.get(self.ring.zero_exp, self.ring.field.zero)

    def is_constant(self):
        return all(not any(e) for e in self._t)

    def is_homogeneous(self, weights=None):
        if weights is None:
            degs = {sum(e) for e in self._t}
        else:
            degs = {sum(w * x for w, x in zip(weights, e)) for e in self._t}
        return len(degs) <= 1

    def homogeneous_part(self, d):
        return self._new({e: c for e, c in self._t.items() if sum(e) == d})

    def lowest_form(self):
        if not self._t:
            return self
        return self.homogeneous_part(self.low_degree())

    def variables(self):
        used = set()
        for e in self._t:
            used.update(i for i, x in enumerate(e) if x)
        return sorted(used)

    # arithmetic
    def __add__(self, other):
        other = self._coerce(other)
        F = self.ring.field
        out = dict(self._t)
        for e, c in other._t.items():
            v = F.normal(out.get(e, 0) + c)
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return self._new(out)

    __radd__ = __add__

    def __neg__(self):
        F = self.ring.field
        return self._new({e: F.neg(c) for e, c in self._t.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        if not self._t or not other._t:
            return self.ring.zero()
        F = self.ring.field
        p = F.char
        out = {}
        for e1, c1 in self._t.items():
            for e2, c2 in other._t.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        res = {}
        for e, c in out.items():
            if p:
                c %= p
            if c:
                res[e] = c
        if res and max(max(e) for e in res) > MAX_EXPONENT:
            raise OverflowError("exponent overflow")
        return self._new(res)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def scale(self, c):
        F = self.ring.field
        c = F(c)
        if not c:
            return self.ring.zero()
        return self._new({e: F.normal(v * c) for e, v in self._t.items()})

    def monic(self, order=None):
        if not self._t:
            return self
        return self.scale(self.ring.field.inv(self.lc(order)))

    def mul_monomial(self, exp, coeff=None):
        F = self.ring.field
        c0 = F.one if coeff is None else coeff
        return self._new({tuple(a + b for a, b in zip(e, exp)): F.normal(c * c0)
                          for e, c in self._t.items()})

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring.names == other.ring.names and self._t == other._t
        if isinstance(other, (int,)):
            return self == self.ring.const(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._t.items()))
        return self._hash

    # substitution and ring changes
    def change_ring(self, ring: PolyRing, var_map=None):
        """Re-embed into ``ring`` by matching variable names (or ``var_map``)."""
        if var_map is None:
            var_map = [ring.index(n) for n in self.ring.names]
        F = ring.field
        out = {}
        for e, c in self._t.items():
            ne = [0] * ring.nvars
            for i, x in enumerate(e):
                if x:
                    j = var_map[i]
                    if j is None:
                        raise ValueError(f"variable {self.ring.names[i]} has no image")
                    ne[j] += x
            ne = tuple(ne)
            v = F.normal(out.get(ne, 0) + F(c))
            if v:
                out[ne] = v
            else:
                out.pop(ne, None)
        return Polynomial(ring, out)

    def subs(self, values: dict):
        """Substitute polynomials (or scalars) for variables given by index or name."""
        R = self.ring
        vals = {}
        for k, v in values.items():
            i = R.index(k) if isinstance(k, str) else k
            vals[i] = v if isinstance(v, Polynomial) else R.const(v)
        result = R.zero()
        powers = {}
        for e, c in self._t.items():
            keep = list(e)
            term = None
            for i, v in vals.items():
                if e[i]:
                    key = (i, e[i])
                    if key not in powers:
                        powers[key] = v ** e[i]
                    term = powers[key] if term is None else term * powers[key]
                    keep[i] = 0
            mono = R.monomial(keep, c)
            result = result + (mono if term is None else mono * term)
        return result

    def eval_zero(self, indices):
        """Set the variables at ``indices`` to zero."""
        idx = set(indices)
        return self._new({e: c for e, c in self._t.items() if not any(e[i] for i in idx)})

    def homogenize(self, ring: PolyRing):
        """Homogenize into ``ring`` whose extra last variable is the homogenizer."""
        d = self.degree()
        return Polynomial(ring, {e + (d - sum(e),): c for e, c in self._t.items()})

    def dehomogenize(self, ring: PolyRing):
        """Drop the last variable (set it to 1)."""
        F = ring.field
        out = {}
        for e, c in self._t.items():
            ne = e[:-1]
            v = F.normal(out.get(ne, 0) + c)
            if v:
                out[ne] = v
            else:
                out.pop(ne, None)
        return Polynomial(ring, out)

    # text
    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"Polynomial({format_poly(self)!r})"


def format_monomial(exp, names):
    parts = []
    for n, x in zip(names, exp):
        if x == 1:
            parts.append(n)
        elif x:
            parts.append(f"{n}^{x}")
    return "*".join(parts)


def format_poly(f: Polynomial, order=None) -> str:
    """Canonical text: terms in descending order joined by ' + ' / ' - '."""
    if f.is_zero():
        return "0"
    F = f.ring.field
    out = []
    for i, (e, c) in enumerate(f.terms(order)):
        neg = F.is_negative(c)
        a = -c if neg else c
        mono = format_monomial(e, f.ring.names)
        cs = F.to_str(a)
        if mono:
            body = mono if cs == "1" else f"{cs}*{mono}"
        else:
            body = cs
        if i == 0:
            out.append(f"-{body}" if neg else body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)
