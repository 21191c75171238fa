import pytest

from corpus import BY_NAME, CORPUS
from rrcas.ideals import Ideal, local_contains, locally_equal
from rrcas.local import LocalRingPresentation, MPrimaryIdeal, find_superficial
from rrcas.poly import PolyRing
from rrcas.ratliff_rush import (ChainRunaway, GradeZeroError, PreconditionError, check_supexN,
                                defect, has_positive_grade, rho, rho_via_colon, rr_closure,
                                rr_closure_chain)


def gap():
    return BY_NAME["monomial_gap"].build()


def test_regular_ring_powers_are_closed():
    pres, m = BY_NAME["plane"].build()
    for n in range(1, 5):
        assert rr_closure(pres, m, n) == m.with_q(n)
    assert rho(pres, m, 6).value == 0


def test_monomial_gap_closure():
    pres, I = gap()
    x, y = pres.ring.gens()
    T = rr_closure(pres, I, 1)
    assert T == Ideal(pres.ring, I.gens + [x**2 * y**2])
    # x^2 y^2 * I lies in I^2 although x^2 y^2 is not in I
    assert all(I.with_q(2).contains(x**2 * y**2 * g) for g in I.gens)
    assert defect(pres, I, 1) == 1
    assert defect(pres, I, 0) == 0


def test_closure_is_idempotent():
    pres, I = gap()
    T = rr_closure(pres, I, 1)
    closed = MPrimaryIdeal(pres, T.reduced_gens(), certified=True)
    assert rr_closure(pres, closed, 1) == T


def test_rho_report():
    pres, I = gap()
    rep = rho(pres, I, 6)
    assert rep.value == 2
    assert rep.defects() == {1: 1, 2: 0, 3: 0, 4: 0, 5: 0, 6: 0}
    js = rep.to_json()
    assert js["rho"] == 2 and js["provisional"] and not js["exceeds_bound"]
    short = rho(pres, I, 1)
    assert short.value is None and short.exceeded and short.to_json()["exceeds_bound"]


@pytest.mark.parametrize("name", [m.name for m in CORPUS])
def test_rho_via_colon_agrees(name):
    pres, I = BY_NAME[name].build()
    x, _ = find_superficial(pres, I, n_check=8, n_max=8)
    assert rho_via_colon(pres, I, x, 8).value == rho(pres, I, 8).value


def test_chain_records_lengths():
    pres, I = BY_NAME["semigroup_4_5_11"].build()
    res = rr_closure_chain(pres, I, 2)
    assert res.chain_colengths[0] > res.chain_colengths[-1]
    assert defect(pres, I, 2) == res.chain_colengths[0] - res.chain_colengths[-1]
    with pytest.raises(ChainRunaway):
        rr_closure_chain(pres, I, 2, cap=1, stable_steps=3)
    with pytest.raises(ValueError):
        rr_closure_chain(pres, I, 0)


def test_grade_zero_rejected():
    R = PolyRing(("x", "y"))
    x, y = R.gens()
    pres = LocalRingPresentation(R, [x * y, y**2])   # y kills the maximal ideal
    m = pres.maximal_ideal()
    assert not has_positive_grade(pres, m)
    with pytest.raises(GradeZeroError):
        rho(pres, m, 3)


def test_supex_regular_ring():
    pres, m = BY_NAME["plane"].build()
    x, y = pres.ring.gens()
    for n in range(0, 4):
        v = check_supexN(pres, m, x + y, n)
        assert v.verdict == "PASS"
        assert all(val == 0 for val in v.lengths.values())


def test_supex_monomial_gap():
    pres, I = gap()
    f, _ = find_superficial(pres, I, n_check=8)
    v = check_supexN(pres, I, f, 1, n_check=8)
    assert v.verdict == "PASS", v.failures
    # (I^2 : f) = m^4 is the whole closure of I, and f * m^4 already lies in I^2 = m^8
    assert v.lengths["closure_In_over_In"] == 1
    assert v.lengths["colon_over_In"] == 1
    assert v.lengths["image_of_x"] == 0
    assert v.to_json()["n"] == 1


def test_supex_preconditions():
    pres, I = gap()
    x, y = pres.ring.gens()
    with pytest.raises(PreconditionError, match="superficial"):
        check_supexN(pres, I, x**5, 1, n_check=6)
    cusp, m = BY_NAME["cusp"].build()
    with pytest.raises(PreconditionError, match="depth"):
        check_supexN(cusp, m, cusp.ring.gen(0), 1)


def test_closures_contain_powers_locally():
    pres, I = BY_NAME["node"].build()
    for n in range(1, 5):
        T = rr_closure(pres, I, n)
        assert local_contains(T, I.with_q(n))
        assert locally_equal(T, I.with_q(n))
