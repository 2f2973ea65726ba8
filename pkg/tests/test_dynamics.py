import math
from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, strategies as st

from charvar.dynamics import (OmegaPoint, TraceCoords, central_character, character_from_matrices,
                              ellipse_bounding_box, ellipse_k, ellipse_path_enabled,
                              euler_sign_bg, omega_point_on, random_character,
                              relation_residual, rotation_angle_exact, rotation_number_estimate,
                              s3, s4, solve_d, trace_interval_values, twist34, twist34_orbit,
                              twist_ab, twist_ab_orbit, vieta_flip)
from charvar.errors import DivByZero, NoRealSolution, ShortOrbit

frac = st.fractions(F(1, 20), 5).filter(lambda x: x > 0)
omega_st = st.builds(OmegaPoint, st.fractions(F(1, 10), F(9, 10)), frac, frac)


def test_switch_examples():
    p = OmegaPoint(0.3, 0.4, 0.4)
    q = s3(p)
    assert q.a == 0.3 and math.isclose(q.c, 0.9) and q.d == 0.4
    assert math.isclose(s4(p).d, 0.9)
    assert math.isclose(ellipse_k(p), -1.75)
    assert ellipse_k(OmegaPoint(F(1, 2), F(1, 3), F(2, 3))) == -2
    with pytest.raises(DivByZero):
        s3(OmegaPoint(0.5, 0, 1))


@given(omega_st)
def test_switches_are_involutions_preserving_k(p):
    if p.c + p.d == 1 or p.c == 1 or p.d == 1:
        return
    assert s3(s3(p)) == p and s4(s4(p)) == p
    k = ellipse_k(p)
    assert ellipse_k(s3(p)) == k and ellipse_k(s4(p)) == k and ellipse_k(twist34(p)) == k


def test_orbit_keeps_k_exact():
    p = OmegaPoint(F(3, 10), F(2, 5), F(2, 5))
    orb = twist34_orbit(p, 40)
    assert len(orb) == 41 and twist34_orbit(p, 0) == [p]
    assert {ellipse_k(q) for q in orb} == {F(-7, 4)}


def test_float_orbit_bounded_and_drift_small():
    p = OmegaPoint(0.3, 0.4, 0.4)
    orb = twist34_orbit(p, 1000)
    k = ellipse_k(p)
    assert max(abs(ellipse_k(q) - k) for q in orb) < 1e-9
    lo, hi = ellipse_bounding_box(k)
    assert all(lo - 1e-9 <= q.c <= hi + 1e-9 and lo - 1e-9 <= q.d <= hi + 1e-9 for q in orb)


def test_hyperbolic_regime_unbounded():
    p = OmegaPoint(0.5, 3.0, 0.2)
    assert ellipse_k(p) > 2
    orb = twist34_orbit(p, 30)
    assert max(max(q.c, q.d) for q in orb) > 1e6


def test_points_on_ellipse():
    for k in (-1.5, 0.0, 1.2):
        for t in np.linspace(0, 6, 7):
            assert math.isclose(ellipse_k(omega_point_on(k, t)), k, abs_tol=1e-9)


def test_rotation_half_turn():
    # k = 0 makes the twist a rotation by pi
    orb = twist34_orbit(omega_point_on(0.0, 0.4), 64)
    assert math.isclose(rotation_number_estimate(orb), 0.5, abs_tol=1e-9)
    assert rotation_angle_exact(0.0) == 0.5


def test_rotation_depends_only_on_k():
    k = -1.75
    ests = [rotation_number_estimate(twist34_orbit(omega_point_on(k, t), 2000)) for t in (0.1, 1.3, 2.9)]
    assert max(ests) - min(ests) < 1e-4
    assert abs(ests[0] - rotation_angle_exact(k)) < 1e-4
    orb = twist34_orbit(omega_point_on(k, 0.5), 10000)
    w1, w2 = rotation_number_estimate(orb[:5000]), rotation_number_estimate(orb[5000:])
    assert abs(w1 - w2) < 1e-4


def test_short_orbit():
    with pytest.raises(ShortOrbit):
        rotation_number_estimate(twist34_orbit(OmegaPoint(0.3, 0.4, 0.4), 5))


def test_residual_examples():
    assert relation_residual(TraceCoords(0, 0, 0, 0, 2, 2, 2)) == 16
    # (2, -2, 0, 0) with x = y = z = 2 sits on the variety
    assert relation_residual(TraceCoords(2, -2, 0, 0, 2, 2, 2)) == 0
    assert relation_residual(TraceCoords(0, 0, 0, 4, 2, 2, 2)) == 0


def test_solve_d():
    lo, hi = solve_d(0, 0, 0, 1), solve_d(0, 0, 0, 0)
    assert {lo.d, hi.d} == {4, -4}
    a, b, c = F(1), F(2), F(3)
    d1, d2 = solve_d(a, b, c, 0).d, solve_d(a, b, c, 1).d
    assert math.isclose(float(d1 + d2), float(2 * (a + b - c) + (a * b + 4) * c))
    assert abs(relation_residual(solve_d(a, b, c))) < 1e-9
    with pytest.raises(NoRealSolution):
        solve_d(F(1, 2), F(-1, 2), F(-9))


@given(st.integers(0, 2 ** 32))
def test_vieta_and_central_moves_preserve_residual(seed):
    tc = random_character(np.random.default_rng(seed))
    assert relation_residual(tc) == 0
    for v in "abcd":
        f = vieta_flip(tc, v)
        assert relation_residual(f) == 0 and vieta_flip(f, v) == tc
    for g in "ABC":
        m = central_character(tc, g)
        assert relation_residual(m) == 0 and central_character(m, g) == tc


def test_central_example():
    tc = TraceCoords(1, 2, 3, 4, 2, 2, 2)
    assert tuple(central_character(tc, "A")) == (-1, 2, 3, -4, -2, 2, -2)


def test_character_from_matrices_checks_det():
    with pytest.raises(ValueError):
        character_from_matrices(((1, 0), (0, 1)), ((1, 0), (0, -1)), ((0, 1), (1, 0)))
    tc = character_from_matrices(((1, 0), (0, -1)), ((0, 1), (1, 0)), ((1, 1), (0, -1)))
    assert relation_residual(tc) == 0


def test_twist_ab_keeps_cd():
    tc = random_character(np.random.default_rng(3))
    orb = twist_ab_orbit(tc, 5)
    assert all((t.c, t.d) == (tc.c, tc.d) for t in orb)
    assert twist_ab(tc) == orb[1]


def test_euler_sign():
    assert euler_sign_bg(TraceCoords(0, 0, 0, 0, 2, 2, 2)) == 1
    assert euler_sign_bg(TraceCoords(0, 0, 0, 0, -2, 2, -2)) == 1
    assert euler_sign_bg(TraceCoords(0, 0, 0, 0, -2, 2, 2)) == -1
    with pytest.raises(ValueError):
        euler_sign_bg(TraceCoords(0, 0, 0, 0, 1, 2, 2))


def test_trace_interval():
    tc = TraceCoords(F(1, 2), F(-1), 3, 5)
    vals = trace_interval_values(tc)
    assert vals[0] == F(-3, 2)
    assert ellipse_path_enabled(tc)
    assert not ellipse_path_enabled(TraceCoords(3, 3, 3, 3))
