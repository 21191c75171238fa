import json

import pytest

from corpus import BY_NAME
from rrcas.criteria import (CHECKS, FAILS, HOLDS, INCONCLUSIVE, NOT_APPLICABLE,
                            CriterionPrecondition, depth_positive_iff_rho_zero,
                            generalized_cm_check, huckaba_marley_check, marley_inequality_check,
                            rho_bound_check, xi_geq2_criterion)


def build(name):
    return BY_NAME[name].build()


def test_xi_regular_plane():
    pres, _ = build("plane")
    v = xi_geq2_criterion(pres, table_powers=2)
    assert v.verdict == HOLDS
    assert v.evidence["ext1_piece_dim"] == 0
    assert [r["depth_G"] for r in v.evidence["depth_table"]["rows"]] == [2, 2]


def test_xi_weighted_example_fails():
    pres, _ = build("example_weighted")
    v = xi_geq2_criterion(pres, table_powers=2)
    assert v.verdict == FAILS
    assert v.evidence["ext3_piece_dim"] == 1
    assert [r["depth_G"] for r in v.evidence["depth_table"]["rows"]] == [1, 1]


def test_xi_quadric_cone_holds():
    pres, _ = build("quadric_cone")
    assert xi_geq2_criterion(pres).verdict == HOLDS


def test_xi_needs_depth_two():
    pres, _ = build("cusp")
    with pytest.raises(CriterionPrecondition, match="depth A < 2"):
        xi_geq2_criterion(pres)


def test_rho_bound():
    pres, _ = build("plane")
    v = rho_bound_check(pres)
    assert v.verdict == HOLDS and v.evidence["bound"] == 0 and v.evidence["rho"] == 0
    pres, _ = build("semigroup_4_5_11")
    v = rho_bound_check(pres, n_max=6)
    assert v.verdict == HOLDS
    assert v.evidence["rho"] == 3 and v.evidence["a_1"] == 2
    pres, _ = build("cusp")
    assert rho_bound_check(pres).evidence["rho"] == 0


def test_rho_bound_inconclusive_when_window_short():
    pres, _ = build("semigroup_4_5_11")
    assert rho_bound_check(pres, n_max=2).verdict == INCONCLUSIVE


def test_depth_rho_biconditional():
    pres, m = build("plane")
    assert depth_positive_iff_rho_zero(pres, m).verdict == HOLDS
    pres, I = build("monomial_gap")
    v = depth_positive_iff_rho_zero(pres, I, n_max=6)
    assert v.verdict == HOLDS
    assert v.evidence["depth_G"] == 0 and v.evidence["rho"] == 2
    pres, m = build("semigroup_345")
    v = depth_positive_iff_rho_zero(pres, m, n_max=6)
    assert v.evidence["depth_G"] >= 1 and v.evidence["rho"] == 0


def test_generalized_cm():
    pres, _ = build("example_weighted")
    v = generalized_cm_check(pres)
    assert v.verdict == FAILS and v.evidence["ext3_dim"] == 1
    for name in ("plane", "quadric_cone", "cusp"):
        assert generalized_cm_check(build(name)[0]).verdict == HOLDS


def test_marley():
    pres, _ = build("example_weighted")
    v = marley_inequality_check(pres)
    assert v.verdict == HOLDS
    assert (v.evidence["a_s0"], v.evidence["a_s0_plus_1"]) == (0, 1)
    assert marley_inequality_check(build("quadric_cone")[0]).verdict == NOT_APPLICABLE
    v = marley_inequality_check(build("semigroup_4_5_11")[0])
    assert v.verdict == HOLDS and v.evidence["depth_G"] == 0


def test_huckaba_marley():
    pres, I = build("monomial_gap")
    v = huckaba_marley_check(pres, I)
    assert v.verdict == HOLDS
    assert (v.evidence["depth_G"], v.evidence["depth_R"]) == (0, 1)
    assert huckaba_marley_check(*build("veronese_plane")).verdict == NOT_APPLICABLE
    v = huckaba_marley_check(*build("semigroup_4_5_11"))
    assert v.verdict == HOLDS and v.evidence["depth_R"] == 1


def test_huckaba_marley_budget():
    pres, I = build("monomial_gap")
    assert huckaba_marley_check(pres, I, koszul_cap=2).verdict == INCONCLUSIVE


def test_verdict_json():
    pres, _ = build("example_weighted")
    js = generalized_cm_check(pres).to_json()
    assert set(js) == {"criterion", "verdict", "evidence", "window", "statement"}
    json.dumps(js)
    assert set(CHECKS) == {"xi_geq2", "rho_bound", "generalized_cm", "marley", "depth_rho",
                           "huckaba_marley", "supex"}
