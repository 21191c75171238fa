"""Monomial orders.

Every order is represented by a key function on exponent tuples such that
sorting keys *ascending* lists monomials from largest to smallest.  This lets
``min``/``heapq`` pick leading terms directly.
"""

from __future__ import annotations

from dataclasses import dataclass

LT, EQ, GT = -1, 0, 1


def _drl(e):
    return (-sum(e), e[::-1])


def _lex(e):
    return tuple(-x for x in e)


@dataclass(frozen=True)
class MonomialOrder:
    """kind is one of ``lex``, ``degrevlex``, ``elim`` or ``lazard``.

    ``elim`` compares the first ``block`` variables by degrevlex and breaks
    ties with degrevlex on the rest, so any monomial involving a front
    variable beats every monomial free of them.

    ``lazard`` is meant for homogenized ideals whose homogenizing variable is
    last: total degree first, then the larger power of the last variable wins,
    then degrevlex on the remaining variables.  Leading terms of homogenized
    polynomials then come from the lowest-degree part of the dehomogenized
    polynomial, which is what tangent cones need.
    """

    kind: str = "degrevlex"
    block: int = 0

    def __post_init__(self):
        if self.kind not in ("lex", "degrevlex", "elim", "lazard"):
            raise ValueError(f"unknown monomial order {self.kind!r}")
        if self.kind == "elim" and self.block < 0:
            raise ValueError("negative elimination block")

    @property
    def key(self):
        k = self.kind
        if k == "degrevlex":
            return _drl
        if k == "lex":
            return _lex
        if k == "elim":
            b = self.block
            return lambda e: (_drl(e[:b]), _drl(e[b:]))
        return lambda e: (-sum(e), -e[-1], _drl(e[:-1]))

    def compare(self, a, b) -> int:
        if len(a) != len(b):
            raise ValueError(f"monomials of different lengths {len(a)} and {len(b)}")
        ka, kb = self.key(tuple(a)), self.key(tuple(b))
        if ka == kb:
            return EQ
        return GT if ka < kb else LT

    def __str__(self):
        return f"elim({self.block})" if self.kind == "elim" else self.kind


DEGREVLEX = MonomialOrder("degrevlex")
LEX = MonomialOrder("lex")
LAZARD = MonomialOrder("lazard")


def elim(block: int) -> MonomialOrder:
    return MonomialOrder("elim", block)


def monomial_compare(a, b, order: MonomialOrder = DEGREVLEX) -> int:
    """Return LT (-1), EQ (0) or GT (1)."""
    return order.compare(a, b)
