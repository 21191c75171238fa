"""Coefficient fields: the rationals and prime fields F_p with p < 2**31."""

from __future__ import annotations

import re

from gmpy2 import is_prime, mpq

_RATIONAL = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")


class FieldError(ValueError):
    pass


class Field:
    """Exact coefficient field.

    Elements are native values: ``gmpy2.mpq`` for QQ and ``int`` in ``[0, p)``
    for F_p.  ``char`` is 0 for QQ.
    """

    __slots__ = ("char", "name")

    def __init__(self, char: int = 0):
        if char:
            if char >= 2**31 or not is_prime(char):
                raise FieldError(f"Fp({char}) needs a prime below 2^31")
            self.name = f"Fp({char})"
        else:
            self.name = "QQ"
        self.char = char

    def __repr__(self):
        return self.name

    def __eq__(self, other):
        return isinstance(other, Field) and self.char == other.char

    def __hash__(self):
        return hash(("Field", self.char))

    @property
    def zero(self):
        return 0 if self.char else mpq(0)

    @property
    def one(self):
        return 1 if self.char else mpq(1)

    def __call__(self, value):
        """Coerce an int, mpq, Fraction or string into the field."""
        p = self.char
        if isinstance(value, str):
            m = _RATIONAL.match(value)
            if not m:
                raise FieldError(f"not a coefficient: {value!r}")
            num = int(m.group(1))
            den = int(m.group(2)) if m.group(2) else 1
            if den == 0:
                raise FieldError("zero denominator")
            if p:
                if den % p == 0:
                    raise FieldError(f"denominator {den} vanishes in {self.name}")
                return num * pow(den, -1, p) % p
            return mpq(num, den)
        if p:
            if isinstance(value, int):
                return value % p
            q = mpq(value)
            den = int(q.denominator)
            if den % p == 0:
                raise FieldError(f"denominator {den} vanishes in {self.name}")
            return int(q.numerator) * pow(den, -1, p) % p
        return mpq(value)

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        if self.char:
            return pow(int(a), -1, self.char)
        return mpq(1) / a

    def div(self, a, b):
        if self.char:
            return a * pow(int(b), -1, self.char) % self.char
        return mpq(a) / b

    def neg(self, a):
        return (-a) % self.char if self.char else -a

    def normal(self, a):
        return a % self.char if self.char else a

    def to_str(self, a) -> str:
        if self.char:
            return str(int(a))
        q = mpq(a)
        if q.denominator == 1:
            return str(q.numerator)
        return f"{q.numerator}/{q.denominator}"

    def is_negative(self, a) -> bool:
        return not self.char and a < 0


QQ = Field(0)


def Fp(p: int) -> Field:
    return Field(p)
