import pytest

from oracles import member_truncated
from rrcas.field import Fp
from rrcas.ideals import (Ideal, colength_at_origin, colon, colon_principal, eliminate,
                          ideal_power, intersect, krull_dimension, local_contains, locally_equal,
                          radical_contains, saturation, support_at_origin_only)
from rrcas.poly import PolyRing

R = PolyRing(("x", "y"))
x, y = R.gens()


def I(*gens):
    return Ideal(R, list(gens))


def test_powers():
    assert ideal_power(I(x, y), 2) == I(x**2, x * y, y**2)
    assert ideal_power(I(x**2, y), 1) == I(x**2, y)
    assert ideal_power(I(x**2, y), 3) == I(x**6, x**4 * y, x**2 * y**2, y**3)
    J = I(x + y**2, x * y)
    assert ideal_power(J, 2) == J * J
    with pytest.raises(ValueError):
        ideal_power(J, 0)


def test_colon_examples():
    assert colon(I(x**2), I(x)) == I(x)
    J = I(x**2 + y, x * y)
    assert colon(J, Ideal.unit(R)) == J
    gap = I(x**4, x**3 * y, x * y**3, y**4)
    C = colon(gap, I(x, y))
    assert C == I(x**3, x**2 * y**2, y**3)


def test_colon_against_degreewise_linear_algebra():
    gap = [x**4, x**3 * y, x * y**3, y**4]
    C = colon(I(*gap), I(x, y))
    for d in range(0, 9):
        for a in range(d + 1):
            m = x**a * y**(d - a)
            in_colon = all(member_truncated(m * v, gap, d + 1, True) for v in (x, y))
            assert C.contains(m) == in_colon


def test_colon_methods_agree():
    J = I(y**2 - x**3, x**2 * y - y**3, x**4)
    f = 50 * x + 98 * y
    assert colon_principal(J, f, method="linear") == colon_principal(J, f, method="elim")
    K = I(x**3, x * y**2 + y**3, y**5)
    assert krull_dimension(K) == 0
    assert colon(K, I(x, y), method="elim") == colon(K, I(x, y), method="linear")


def test_colon_over_rationals_is_exact():
    # the kernel of this colon needs the fraction 1/2; integer pivots must stay exact
    q = y**2 - x**2 - x**3
    T = I(y**4, x**3 + x**2 - y**2, x**2 * y - y**3, x * y**2 + x**2 - y**2)
    C = colon_principal(T, 50 * x + 98 * y)
    for g in C.gens:
        assert T.contains((50 * x + 98 * y) * g)
    assert colength_at_origin(I(q), C) == colength_at_origin(I(q), T) - \
        colength_at_origin(I(q), T + I(50 * x + 98 * y))


def test_intersections():
    assert intersect(I(x), I(y)) == I(x * y)
    J = I(x**2 + y, x * y)
    assert intersect(J, J) == J
    assert intersect(I(x**2, y), I(x, y**2)) == I(x**2, x * y, y**2)


def test_saturations():
    assert saturation(I(x**2 * y), I(y)) == I(x**2)
    J = I(x**2, x * y)
    assert saturation(J, Ideal.unit(R)) == J
    # (x^2, xy) : x = (x, y), then (x, y) : x = (1)
    assert saturation(J, I(x)).is_unit()


def test_elimination():
    S = PolyRing(("t", "x", "y"))
    t, a, b = S.gens()
    E = eliminate(Ideal(S, [t - a, t**2 - b]), ["t"])
    assert E == Ideal(S, [a**2 - b])
    J = Ideal(S, [a * b - t])
    assert eliminate(J, []) == J
    assert eliminate(Ideal(S, [a * t - 1]), ["t"]).is_zero()


def test_colength():
    zero = Ideal(R, [])
    assert colength_at_origin(zero, I(x, y) ** 2) == 3
    assert colength_at_origin(zero, I(x**2 - y**3, y**4)) == 8
    assert colength_at_origin(I(y**2 - x**3), I(x, y)) == 1


def test_local_comparisons_ignore_other_points():
    # (x(x-1), y) agrees with (x, y) at the origin only
    far = I(x * (x - 1), y)
    assert locally_equal(far, I(x, y))
    assert not far == I(x, y)
    assert local_contains(I(x, y), I(x**2, y))
    assert not local_contains(I(x**2, y), I(x, y))
    assert not support_at_origin_only(far)
    assert support_at_origin_only(I(x**2, y**3))


def test_dimension_and_radical():
    assert krull_dimension(I(x)) == 1
    assert krull_dimension(I(x, y)) == 0
    assert krull_dimension(Ideal.unit(R)) == -1
    assert radical_contains(I(x**3, y**2), x)
    assert not radical_contains(I(x**3), y)


def test_finite_field_ideals():
    S = PolyRing(("x", "y"), Fp(3))
    a, b = S.gens()
    J = Ideal(S, [a**3 - b, b**2])
    assert colon(J, Ideal(S, [b])).contains(b)
    assert ideal_power(Ideal(S, [a + b]), 3) == Ideal(S, [a**3 + b**3])
