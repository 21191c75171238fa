import pytest

from corpus import BY_NAME
from rrcas.ideals import Ideal
from rrcas.local import (LocalInputError, LocalRingPresentation, MPrimaryIdeal, NoSuperficialElement,
                         colength, find_superficial, hilbert_function, is_superficial,
                         tangent_cone, validate_local_input)
from rrcas.poly import PolyRing

R = PolyRing(("x", "y"))
x, y = R.gens()
PLANE = LocalRingPresentation(R, [])
CUSP = LocalRingPresentation(R, [y**2 - x**3])


def test_validation():
    assert validate_local_input(PLANE, [x, y]).certified_origin_support
    with pytest.raises(LocalInputError, match="dim"):
        validate_local_input(PLANE, [x])
    assert validate_local_input(CUSP, [x]).certified_origin_support
    with pytest.raises(LocalInputError, match="unit"):
        validate_local_input(PLANE, [x + 1, y])
    # m-primary at the origin but also supported at (1, 0)
    with pytest.raises(LocalInputError, match="nilpotent"):
        validate_local_input(PLANE, [x * (x - 1), y])
    with pytest.raises(LocalInputError):
        LocalRingPresentation(R, [x + 1])


def test_tangent_cones():
    assert tangent_cone(CUSP).ideal == Ideal(R, [y**2])
    assert tangent_cone(PLANE).ideal.is_zero()
    pres, _ = BY_NAME["example_weighted"].build()
    S = pres.ring
    want = Ideal(S, [S.parse(g) for g in ("z^2", "y*z", "x*z", "y^4 - x^3*w")])
    assert Ideal(S, pres.tangent_cone().gens()) == want


def test_tangent_cone_needs_standard_basis():
    # lowest forms of the generators alone give (x*y, x^2 - ...) and miss y^3
    S = PolyRing(("x", "y"))
    a, b = S.gens()
    pres = LocalRingPresentation(S, [a**2 + b**3, a * b])
    tc = pres.tangent_cone().ideal
    assert tc.contains(b**4) and tc.contains(a * b) and tc.contains(a**2)
    assert not tc.contains(b**3)
    assert pres.dimension() == 0


def test_hilbert_functions():
    m = PLANE.maximal_ideal()
    assert hilbert_function(PLANE, m, 3) == 4
    Y2 = LocalRingPresentation(R, [y**2])
    assert hilbert_function(Y2, Y2.maximal_ideal(), 5) == 2
    assert tangent_cone(Y2).hilbert_function(5) == 2
    assert hilbert_function(CUSP, CUSP.maximal_ideal(), 0) == 1
    assert [hilbert_function(CUSP, CUSP.maximal_ideal(), n) for n in range(1, 5)] == [2, 2, 2, 2]
    with pytest.raises(LocalInputError):
        hilbert_function(PLANE, MPrimaryIdeal(PLANE, [x, y]), 1)


def test_colength_of_powers():
    m = PLANE.maximal_ideal()
    assert [colength(m, n) for n in range(4)] == [0, 1, 3, 6]
    assert m.with_q(0).is_unit()


def test_superficial_elements():
    m = PLANE.maximal_ideal()
    assert is_superficial(m, x + y, 0, 8)
    S = PolyRing(("x",))
    line = LocalRingPresentation(S, [])
    K = validate_local_input(line, [S.gen(0)])
    x_found, coeffs = find_superficial(line, K)
    assert x_found == S.gen(0) and coeffs == [1]


def test_monomial_gap_superficial():
    pres, I = BY_NAME["monomial_gap"].build()
    # I^n = m^{4n} for n >= 2, so the pure generator x^4 is superficial from n = 2,
    # every candidate fails at n = 1 (the closure of I is m^4), and x^5 in mI never works
    x4 = I.gens[0]
    assert is_superficial(I, x4, 2, 8)
    assert not is_superficial(I, x4, 1, 8)
    assert not is_superficial(I, x4 * pres.ring.gen(0), 2, 8)
    f, coeffs = find_superficial(pres, I, n_check=8)
    assert len(coeffs) == 4 and is_superficial(I, f, 2, 8)


def test_no_superficial_within_attempts():
    pres, I = BY_NAME["monomial_gap"].build()
    with pytest.raises(NoSuperficialElement):
        find_superficial(pres, I, n_check=6, attempts=0)
