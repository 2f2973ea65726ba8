from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from charvar import algorithms as alg
from charvar.coords import allowed_signs, classify, eps_pair, eps_single, sign_patterns
from charvar.errors import DegenerateCusp, EmptyComponent, Unsupported
from charvar.traces import PAIRS, edge_curve_trace

pos = st.fractions(F(1, 60), 60).filter(lambda x: x > 0)
X_st = st.tuples(pos, pos, pos, pos)
eps01 = st.sampled_from(sign_patterns(0) + sign_patterns(1) + sign_patterns(-1))


def test_integer_coords():
    assert alg.integer_coords((F(1, 2), F(1, 3), 1, 2)) == (3, 2, 6, 12)
    assert alg.integer_coords((2, 4, 6, 8)) == (1, 2, 3, 4)


@given(X_st, eps01)
def test_pair_hyperbolic_matches_closed_form(X, eps):
    for p in PAIRS:
        try:
            t = edge_curve_trace(X, eps, p).abs_trace
        except DegenerateCusp:
            return
        assert alg.pair_hyperbolic(X, eps, p) == (t > 2)


def test_unique_max():
    assert alg.unique_max((1, 2, 3, 4)) == 4
    assert alg.unique_max((4, 1, 4, 1)) is None


def test_reduce_e1_after_one_switch():
    log, _ = alg.trace_reduce((1, 1, 1, 4), eps_single(4))
    assert [s.action for s in log.steps] == [4, "witness"]
    assert log.steps[1].address == (4,)
    assert log.steps[1].X == (4, 4, 4, 1)  # (1/4, 1/4, 1/4, 1/16) up to scale
    assert log.outcome == "FoundGTIWitness"
    assert log.witness[1].abs_trace == F(7, 16)
    assert alg.witness_valid(log)


def test_reduce_gti_chart_with_hyperbolic_edges():
    # GTI holds at (1,1,1,2) yet all six edge curves are hyperbolic, so the
    # reduction has to switch once before it finds a witness
    log, _ = alg.trace_reduce((1, 1, 1, 2), eps_single(4))
    assert [s.action for s in log.steps] == [4, "witness"]
    assert log.witness[0] == (1, 4) and log.witness[1].abs_trace == F(1, 4)


def test_reduce_e0_at_step_zero():
    log, diag = alg.trace_reduce((1, 1, 1, 2), eps_pair(1, 2))
    assert log.outcome == "FoundSqGTIWitness"
    assert len(log.steps) == 1
    assert log.witness[0] == (1, 2) and log.witness[1].abs_trace == F(3, 2)
    assert diag.rows[0]["u_exact"] == F(1, 10)


def test_reduce_non_admissible():
    # no witness at the start; X_1 + X_2 - X_3 = 0 blocks the switch along t_4
    log, _ = alg.trace_reduce((1, 1, 2, 3), eps_single(4))
    assert log.outcome == "FoundNonAdmissibleEdge"
    assert [s.action for s in log.steps] == [4, "non-admissible"]
    assert log.witness == ("edge", "a", 0)
    assert alg.witness_valid(log)


def test_reduce_rejects_fuchsian_and_degenerate():
    with pytest.raises(Unsupported):
        alg.trace_reduce((1, 1, 1, 1), (1, 1, 1, 1))
    with pytest.raises(DegenerateCusp):
        alg.trace_reduce((1, 2, 1, 2), eps_pair(1, 2))


def test_reduce_is_deterministic():
    a, _ = alg.trace_reduce((3, 5, 7, 30), eps_single(4))
    b, _ = alg.trace_reduce((3, 5, 7, 30), eps_single(4))
    assert a.to_json() == b.to_json()


@settings(max_examples=40, deadline=None)
@given(X_st, eps01)
def test_reduce_terminates_on_random_charts(X, eps):
    try:
        lab = classify(X, eps)
    except DegenerateCusp:
        return
    log, diag = alg.trace_reduce(X, eps)
    if lab.euler == 0 or lab.signs in ((1, 1, 1), (-1, -1, -1)):
        assert log.outcome != "StepLimit"
        assert alg.witness_valid(log)
    if lab.euler == 0 and len(diag.rows) > 1:
        us = diag.column("u_exact")
        assert all(b < a for a, b in zip(us, us[1:]))


def test_size_limit_on_hyperbolic_component():
    # e = -1 with cusp signs s1+: every curve is hyperbolic, so the run can
    # only stop on its resource limits
    X = (F(2910, 53), F(3216, 43), F(2562), F(2507, 32))
    log, _ = alg.trace_reduce(X, (-1, -1, -1, 1))
    assert log.outcome == "StepLimit" and log.steps[-1].action == "size-limit"
    log, _ = alg.trace_reduce(X, (-1, -1, -1, 1), max_steps=5)
    assert log.steps[-1].action == "step-limit" and len(log.steps) == 6


def test_escape_check_on_a_run():
    log, diag = alg.trace_reduce((1, 2, 40, 41), eps_single(1))
    checked, bad = alg.escape_check(diag)
    assert checked >= 0 and all(isinstance(i, int) for i in bad)


def test_sample_component():
    rng = np.random.default_rng(1)
    X, eps = alg.sample_component(0, (1, -1, -1), rng)
    assert classify(X, eps).signs == (1, -1, -1)
    X, eps = alg.sample_component(1, (1, 1, 1), rng)
    assert classify(X, eps).signs == (1, 1, 1)
    with pytest.raises(EmptyComponent):
        alg.sample_component(0, (1, 1, 1), rng)


def test_small_census():
    counts, _ = alg.component_census(300, np.random.default_rng(2))
    allowed = {(e, s) for e in (0, 1, -1) for s in allowed_signs(e)}
    assert set(counts) == allowed


def test_admissibility_walk():
    assert alg.admissibility_walk((2, 1, 1, 5), eps_single(4), 0)["zeros"] == []
    rep = alg.admissibility_walk((2, 1, 1, 5), eps_single(4), 1)
    assert rep["triangulations"] == 4
    assert rep["zeros"] == [{"address": "[S4]", "edge": "b"}]
    rep = alg.admissibility_walk((F(3, 7), F(5, 11), F(2, 13), F(17, 19)), eps_single(4), 6)
    assert rep["zeros"] == []


def test_hyperbolicity_scan_examples():
    rep = alg.hyperbolicity_scan((4, 1, 1, 1), eps_single(2), 6)
    assert rep["triangulations"] == 1457 and rep["curves"] == 6 * 1457
    assert rep["non_hyperbolic"] == [] and rep["min_abs_trace"] > 2
    rep = alg.hyperbolicity_scan((1, 1, 1, 4), eps_single(4), 1)
    assert rep["non_hyperbolic"] and rep["non_hyperbolic"][0]["address"] == "[S4]"
    with pytest.raises(Unsupported):
        alg.hyperbolicity_scan((1, 1, 1, 2), eps_pair(1, 2), 2)


def test_e0_separation_example():
    rep = alg.e0_separation_check((1, 1, 1, 2), eps_pair(1, 2))
    vals = {p: r.abs_trace for p, r in {**rep["opposite"], **rep["same"]}.items()}
    assert vals == {(1, 3): F(5, 2), (2, 3): F(5, 2), (1, 4): 3, (2, 4): 3,
                    (1, 2): F(3, 2), (3, 4): 1}
    assert rep["opposite_all_hyperbolic"]
    assert rep["same_non_hyperbolic"] == [(1, 2), (3, 4)]
    with pytest.raises(DegenerateCusp):
        alg.e0_separation_check((1, 2, 1, 2), eps_pair(1, 2))


@given(X_st, st.sampled_from(sign_patterns(0)))
def test_opposite_pairs_always_hyperbolic(X, eps):
    try:
        rep = alg.e0_separation_check(X, eps)
    except DegenerateCusp:
        return
    assert rep["opposite_all_hyperbolic"]
