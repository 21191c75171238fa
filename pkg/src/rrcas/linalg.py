"""Exact sparse Gaussian elimination over QQ (mpq) or F_p (int)."""

from __future__ import annotations

from gmpy2 import mpq


def _inv(c, p):
    return pow(int(c), -1, p) if p else mpq(1) / c


def _axpy(target: dict, c, src: dict, p):
    """target -= c * src (in place)."""
    for k, x in src.items():
        v = target.get(k, 0) - c * x
        if p:
            v %= p
        if v:
            target[k] = v
        else:
            target.pop(k, None)


def echelon(rows, p=0, track=False):
    """Reduce sparse rows; returns (pivots, kernel).

    ``pivots`` maps pivot column -> normalized row.  With ``track`` the
    kernel holds combinations ``{row index: coeff}`` of input rows that
    reduce to zero (a basis of the left kernel).
    """
    pivots = {}
    combos = {}
    kernel = []
    for idx, r in enumerate(rows):
        r = {k: v for k, v in r.items() if v}
        comb = {idx: 1} if track else None
        while r:
            col = min(r)
            piv = pivots.get(col)
            if piv is None:
                break
            c = r[col]
            _axpy(r, c, piv, p)
            if track:
                _axpy(comb, c, combos[col], p)
        if not r:
            if track:
                kernel.append(comb)
            continue
        col = min(r)
        inv = _inv(r[col], p)
        if inv != 1:
            r = {k: (v * inv) % p if p else v * inv for k, v in r.items()}
            if track:
                comb = {k: (v * inv) % p if p else v * inv for k, v in comb.items()}
        pivots[col] = r
        if track:
            combos[col] = comb
    return pivots, kernel


def rank(rows, p=0) -> int:
    pivots, _ = echelon(rows, p)
    return len(pivots)


def left_kernel(rows, p=0):
    """Basis of {a : sum_i a_i * rows[i] == 0} as sparse dicts over row indices."""
    _, kernel = echelon(rows, p, track=True)
    return kernel


def in_span(pivots, v, p=0) -> bool:
    r = dict(v)
    while r:
        col = min(r)
        piv = pivots.get(col)
        if piv is None:
            return False
        _axpy(r, r[col], piv, p)
    return True
