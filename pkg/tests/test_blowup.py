import pytest

from corpus import BY_NAME
from rrcas.blowup import (ConsistencyError, _tangent_cone_check, assoc_graded_presentation,
                          depth_assoc_graded, depth_assoc_graded_all_vars, depth_fiber, depth_rees,
                          depth_table_powers, fiber_cone_presentation, minimal_power_generators,
                          rees_presentation)
from rrcas.ideals import Ideal
from rrcas.local import LocalRingPresentation, validate_local_input
from rrcas.poly import PolyRing

R = PolyRing(("x", "y"))
x, y = R.gens()
PLANE = LocalRingPresentation(R, [])


def gens_of(bp, which):
    A = bp.ambient if which != "fiber" else bp.fiber_ring
    return A, {str(g) for g in getattr(bp, f"{which}_ideal").reduced_gens()}


def test_blowup_of_the_plane():
    bp = rees_presentation(PLANE, PLANE.maximal_ideal())
    A, rel = gens_of(bp, "rees")
    assert A.names == ("x", "y", "Y1", "Y2")
    assert rel == {"y*Y1 - x*Y2"}
    F = fiber_cone_presentation(PLANE, PLANE.maximal_ideal(), bp)
    assert F.relations == [] and F.ring.names == ("Y1", "Y2")


def test_principal_ideal_has_no_relations():
    S = PolyRing(("x",))
    line = LocalRingPresentation(S, [])
    I = validate_local_input(line, [S.gen(0)])
    bp = rees_presentation(line, I)
    assert bp.rees_ideal.is_zero()
    assert fiber_cone_presentation(line, I, bp).relations == []


def test_veronese_relations():
    pres, I = BY_NAME["veronese_plane"].build()
    bp = rees_presentation(pres, I)
    rees = bp.rees_ideal.reduced_gens()
    assert len(rees) == 3
    assert all(g.degree() == 2 for g in rees)
    F = fiber_cone_presentation(pres, I, bp)
    Y1, Y2, Y3 = bp.fiber_ring.gens()
    assert Ideal(bp.fiber_ring, [c[0] for c in F.relations]) == Ideal(bp.fiber_ring, [Y2**2 - Y1 * Y3])


def test_relations_survive_substitution_modulo_q():
    pres, I = BY_NAME["cusp_square"].build()
    bp = rees_presentation(pres, I)      # the constructor runs the substitution check
    assert bp.m == 2
    assert not bp.rees_ideal.is_zero()


def test_associated_graded_matches_tangent_cone():
    pres, m = BY_NAME["cusp"].build()
    bp = rees_presentation(pres, m)
    J = assoc_graded_presentation(pres, m, bp)
    assert J.contains(bp.ambient.parse("Y2^2"))
    pres, m = BY_NAME["example_weighted"].build()
    assoc_graded_presentation(pres, m)      # raises on a mismatch


def test_tangent_cone_check_catches_a_wrong_ideal():
    pres, m = BY_NAME["cusp"].build()
    bp = rees_presentation(pres, m)
    bp.assoc_graded_ideal = Ideal(bp.ambient, bp.assoc_graded_ideal.gens[:1] + list(bp.x_vars()))
    with pytest.raises(ConsistencyError):
        _tangent_cone_check(pres, bp)


def test_depths_of_plane_blowup():
    m = PLANE.maximal_ideal()
    assert depth_assoc_graded(PLANE, m) == 2
    assert depth_assoc_graded_all_vars(PLANE, m) == 2
    assert depth_rees(PLANE, m) == 3
    assert depth_fiber(PLANE, m) == 2


def test_monomial_gap_depths():
    pres, I = BY_NAME["monomial_gap"].build()
    bp = rees_presentation(pres, I)
    assert depth_assoc_graded(pres, I, bp) == 0
    assert depth_assoc_graded_all_vars(pres, I, bp) == 0
    assert depth_rees(pres, I, bp) == 1


@pytest.mark.parametrize("name", ["cusp", "quadric_cone", "semigroup_345", "squares"])
def test_sop_depth_matches_koszul_depth(name):
    pres, I = BY_NAME[name].build()
    bp = rees_presentation(pres, I)
    assert depth_assoc_graded(pres, I, bp, modulus=0) == depth_assoc_graded_all_vars(pres, I, bp)


def test_minimal_power_generators():
    m = PLANE.maximal_ideal()
    assert len(minimal_power_generators(PLANE, m, 3)) == 4
    pres, m = BY_NAME["cusp"].build()
    # y^2 = x^3 lies in m^3, so m^2 needs only x^2 and xy
    assert len(minimal_power_generators(pres, m, 2)) == 2


def test_depth_tables():
    m = PLANE.maximal_ideal()
    tab = depth_table_powers(PLANE, m, 3)
    assert [(r.depth_G, r.depth_F) for r in tab.rows] == [(2, 2)] * 3
    pres, m = BY_NAME["semigroup_345"].build()
    tab = depth_table_powers(pres, m, 3)
    assert [r.depth_G for r in tab.rows] == [1, 1, 1]
    js = tab.to_json()
    assert js["stabilization_G"] == {"from_power": 1, "value": 1, "observed_window": [1, 3]}
    with pytest.raises(ValueError):
        depth_table_powers(pres, m, 5, power_cap=4)


def test_depth_table_budget_is_reported():
    pres, m = BY_NAME["space"].build()
    tab = depth_table_powers(pres, m, 2, koszul_cap=1, with_fiber=False)
    assert all(r.depth_G == 3 for r in tab.rows)
    pres, I = BY_NAME["monomial_gap"].build()
    tab = depth_table_powers(pres, I, 1, koszul_cap=0)
    assert tab.rows[0].budget_exceeded and tab.rows[0].depth_G is None
