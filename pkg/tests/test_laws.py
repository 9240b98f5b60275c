import pytest
from hypothesis import given

import strategies as S
from spancospan import cospan as ca
from spancospan import gen
from spancospan import graph as gc
from spancospan import laws
from spancospan.laws import BoolObj


def test_set_counterexample_sizes():
    res = laws.set_counterexample()
    assert (res.lhs_size, res.rhs_size) == (5, 6)
    assert not res.holds


def test_set_counterexample_every_choice():
    assert {(r.lhs_size, r.rhs_size) for r in laws.set_counterexample_all_choices()} == {(5, 6)}


def test_set_singletons_hold():
    res = laws.set_counterexample(1, 1, 1)
    assert (res.lhs_size, res.rhs_size, res.holds) == (1, 1, True)


def test_bool_counterexample():
    res = laws.bool_counterexample()
    assert (res.lhs, res.rhs) == (BoolObj.BOTTOM, BoolObj.TOP)
    assert not res.holds


@pytest.mark.parametrize("v", [0, 1])
def test_bool_constant(v):
    res = laws.bool_counterexample(*([v] * 7))
    assert res.lhs == res.rhs == v


def test_bool_arrow_mono_epi_not_iso():
    lo, hi = BoolObj.BOTTOM, BoolObj.TOP
    assert laws.bool_arrow_is_mono(lo, hi) and laws.bool_arrow_is_epi(lo, hi)
    assert not laws.bool_arrow_is_iso(lo, hi)


def test_bool_rejects_missing_arrow():
    with pytest.raises(ValueError):
        laws.bool_counterexample(s1=1, s=0)


def test_empty_suite():
    r = laws.random_interchange_suite(3, 0)
    assert (r.passed, r.failed) == (0, 0)
    assert laws.adhesive_suite(3, 0).to_dict()["passed"] == 0


def test_trivial_suite_on_empty_graphs():
    r = laws.random_interchange_suite(1, 1, max_size=0)
    assert (r.passed, r.failed) == (1, 0)


def test_suite_deterministic():
    a = laws.random_interchange_suite(5, 20).to_dict()
    b = laws.random_interchange_suite(5, 20).to_dict()
    assert a == b


def test_interchange_suite_seed_42():
    r = laws.random_interchange_suite(42, 200, 4)
    assert (r.passed, r.failed) == (200, 0)


def test_nonmonic_suite_finds_failures():
    r = laws.random_interchange_suite(1, 60, 4, allow_nonmonic=True)
    assert r.failed > 0
    assert "case" in r.text()


def test_adhesive_suite_seed_7():
    r = laws.adhesive_suite(7, 100)
    assert r.failed == 0
    for check in ("mono_stable_under_pushout", "pushout_along_mono_is_pullback", "vk_cube", "coproducts_disjoint"):
        assert r.checks[check][0] == 100


def test_coherence_suite_seed_7():
    r = laws.coherence_suite(7, 50)
    assert r.checks == {"pentagon": [50, 0], "triangle": [50, 0]}


def test_report_text_format():
    r = laws.coherence_suite(2, 2)
    first = r.text().splitlines()[0]
    assert first == "coherence seed=2 cases=2 passed=4 failed=0"


@given(S.seeds)
def test_generated_cells_valid(seed):
    rng = gen.case_rng(seed, 0)
    for cell in gen.random_quadruple(rng, 4):
        ca.check_twocell(cell)
        for h in (cell.up_leg, cell.down_leg, cell.mid_in, cell.mid_out):
            gc.validate_hom(h)


@given(S.seeds)
def test_generated_cube_hypotheses(seed):
    rng = gen.case_rng(seed, 0)
    cube = gen.random_vk_cube(rng, 4)
    for h in (cube.top_ab, cube.top_ac, cube.top_bd, cube.top_cd, cube.bot_ab, cube.bot_ac, cube.bot_bd,
              cube.bot_cd, cube.a, cube.b, cube.c, cube.d):
        gc.validate_hom(h)
    hyp, bottom_pb, back_po = laws.cube_iff_holds(cube)
    assert hyp
    assert bottom_pb == back_po


def test_cube_generator_exercises_both_sides():
    outcomes = {laws.cube_iff_holds(gen.random_vk_cube(gen.case_rng(0, i), 4))[1] for i in range(60)}
    assert outcomes == {True, False}
