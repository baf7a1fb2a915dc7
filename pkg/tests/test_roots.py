"""Ball arithmetic, certified root isolation, and Salem classification."""

import mpmath as mp
import pytest

from salemforge.polyring import IntPoly, poly, monomial, ONE
from salemforge.roots import (ComplexBall, NotSalemError, RealBall,
                              circle_root_arguments, classify_salem,
                              entropy_from_charpoly, eval_ball, isolate_roots,
                              log_ball, salem_eta, unit_circle_distance,
                              yun_squarefree)
from salemforge.coxeter import en_from_formula, salem_factor

PHI_14 = IntPoly([1, -1, 0, -1, 1, 0, 0, -1, 0, 0, 1, -1, 0, -1, 1])

# independently computed to 45 digits by plain bisection on phi_14
with mp.workprec(300):
    ETA_PHI14 = mp.mpf("1.31819750443169069753615279729692971836184565")
    # log of the largest root of E_19 (x-1), same bisection oracle
    ENTROPY_19 = mp.mpf("0.276265276471051153650071446194313256961608122")


def test_real_ball_contains_sum():
    a = RealBall(mp.mpf("0.5"), mp.mpf("1e-30"))
    b = RealBall(mp.mpf("0.25"), mp.mpf("1e-30"))
    s = a + b
    assert s.lo <= 0.75 <= s.hi


def test_real_ball_mul_signs():
    a = RealBall(mp.mpf(-2), mp.mpf("1e-20"))
    b = RealBall(mp.mpf(3), mp.mpf("1e-20"))
    p = a * b
    assert p.lo <= -6 <= p.hi
    assert p.rad < mp.mpf("1e-18")


def test_real_ball_exact_zero_add_keeps_radius_tight():
    # adding an exact zero must not inflate the radius to ambient ulp scale
    tiny = RealBall(mp.mpf(0), mp.mpf(2) ** -600)
    x = RealBall(mp.mpf(0), mp.mpf(0)) + tiny
    assert x.rad < mp.mpf(2) ** -590


def test_complex_ball_arithmetic_residual_precision():
    with mp.workprec(360):
        z = ComplexBall(mp.exp(mp.mpc(0, mp.mpf(1) / 3)), mp.mpf(2) ** -300, 256)
    w = z * z.conjugate() - 1
    assert w.abs_ball().hi < mp.mpf(2) ** -250


def test_complex_ball_division_by_zero_ball():
    z = ComplexBall.exact(0, 64)
    with pytest.raises(ZeroDivisionError):
        ComplexBall.exact(1, 64) / z


def test_eval_ball_contains_true_value():
    p = poly(-2, 0, 1)                    # x^2 - 2
    with mp.workprec(300):
        z = ComplexBall(mp.sqrt(2), mp.mpf(2) ** -200, 128)
    v = eval_ball(p, z)
    assert v.abs_ball().hi < mp.mpf(2) ** -120


def test_yun_squarefree():
    p = poly(-1, 1) ** 2 * poly(1, 1)
    pieces = dict((f.coeffs, i) for f, i in yun_squarefree(p))
    assert pieces == {(1, 1): 1, (-1, 1): 2}


def test_isolate_roots_quadratic():
    rs = isolate_roots(poly(-2, 0, 1), 128)
    with mp.workprec(200):
        mids = sorted(b.mid.real for b in rs.balls())
        assert abs(mids[1] - mp.sqrt(2)) < mp.mpf(2) ** -60
    assert all(m == 1 for _, m in rs.roots)


def test_isolate_roots_reports_multiplicity():
    rs = isolate_roots(poly(-1, 1) ** 2, 128)
    assert [m for _, m in rs.roots] == [2]


def test_classify_salem_phi14(phi14):
    rs = isolate_roots(phi14, 256)
    cert = classify_salem(rs)
    assert len(cert.circle_roots) == 12
    assert cert.eta.mid.real > 1
    assert abs(cert.eta.mid.real - ETA_PHI14) < mp.mpf(2) ** -60
    # eta and its reciprocal pair off
    with mp.workprec(400):
        assert cert.eta_reciprocal.contains(1 / cert.eta.mid)


def test_classify_salem_rejects_cyclotomic():
    with pytest.raises(NotSalemError):
        classify_salem(isolate_roots(poly(1, 1, 1, 1, 1), 128))


def test_classify_salem_rejects_multiple_root():
    with pytest.raises(NotSalemError):
        classify_salem(isolate_roots(poly(1, -2, 1) * poly(1, 2, 1), 128))


def test_entropy_identity_is_exact_zero():
    e = entropy_from_charpoly(poly(-1, 1) * poly(1, 1), 128)
    assert e.mid == 0 and e.rad == 0


def test_entropy_e19():
    p = en_from_formula(19) * poly(-1, 1)
    e = entropy_from_charpoly(p, 256)
    assert abs(e.mid - ENTROPY_19) < mp.mpf(2) ** -80
    assert e.lo > 0


def test_circle_root_arguments_count(phi14):
    args = circle_root_arguments(phi14, 256, expected=6)
    assert len(args) == 6
    assert all(0 < a.mid < mp.pi for a in args)
    assert all(a.rad < mp.mpf(2) ** -128 for a in args)


def test_salem_eta_matches_isolation(phi14):
    eta = salem_eta(phi14, 256)
    assert abs(eta.mid - ETA_PHI14) < mp.mpf(2) ** -60
    assert eta.rad < mp.mpf(2) ** -200


def test_salem_eta_rejects_cyclotomic():
    with pytest.raises(NotSalemError):
        salem_eta(poly(1, 1, 1), 128)


def test_log_ball_and_unit_circle_distance():
    x = RealBall(mp.e, mp.mpf("1e-30"))
    l = log_ball(x, 128)
    assert l.lo <= 1 <= l.hi
    z = ComplexBall.exact(mp.mpc(0, 1), 128)
    assert unit_circle_distance(z).contains_zero()


def test_precision_monotonicity(phi14):
    """Classification tags must agree between 128 and 256 bits."""
    t1 = isolate_roots(phi14, 128).classification
    t2 = isolate_roots(phi14, 256).classification
    assert sorted(t1) == sorted(t2)
