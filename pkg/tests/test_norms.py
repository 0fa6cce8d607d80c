import pytest
from hypothesis import given, settings, strategies as st

from artifact import automaton as au
from artifact.norms import ConeError, NormBall, fibered_face, norm, thurston_norm_on_cone
from artifact.ring import LaurentPoly
from artifact.teich import teichmuller_polynomial
from oracles import support_width

ALEX = LaurentPoly.parse("u + u^-1 - (-t^-1 + 1 - t)")
THETA = LaurentPoly.parse("u^2 - (1 + t + t^-1)*u + 1")
classes = st.tuples(st.integers(-50, 50), st.integers(-50, 50))


def test_norm_examples():
    A = NormBall.of(ALEX, "alexander")
    assert norm(A, (0, 0)) == 0
    assert norm(A, (3, -7)) == 14
    assert norm(NormBall.of(THETA), (1, 2)) == 4
    with pytest.raises(ValueError):
        NormBall.of(LaurentPoly({}, ("t", "u")))


@given(classes)
@settings(max_examples=200, deadline=None)
def test_alexander_norm_formula(c):
    s, y = c
    assert norm(NormBall.of(ALEX, "alexander"), c) == max(abs(2 * s), abs(2 * y))


@given(classes, classes, st.integers(0, 5))
@settings(max_examples=200, deadline=None)
def test_seminorm_properties(a, b, k):
    ball = NormBall.of(THETA)
    assert norm(ball, a) == support_width(THETA, a) == ball.support_norm(a)
    assert norm(ball, tuple(-x for x in a)) == norm(ball, a)
    assert norm(ball, tuple(k * x for x in a)) == k * norm(ball, a)
    assert norm(ball, (a[0] + b[0], a[1] + b[1])) <= norm(ball, a) + norm(ball, b)


def test_fibered_face():
    f = fibered_face(THETA, (0, 1))
    assert f.vertices == ((0, 2),) and f.opposite == ((0, 0),)
    assert f.contains((1, 2)) and not f.contains((2, 1)) and not f.contains((1, 1))
    assert fibered_face(THETA, (0, -1)).vertices == ((0, 0),)


@given(st.integers(-20, 20), st.integers(1, 40))
@settings(max_examples=100, deadline=None)
def test_cone_is_y_greater_than_abs_s(s, y):
    assert fibered_face(THETA, (0, 1)).contains((s, y)) == (y > abs(s))


@given(st.integers(-20, 20), st.integers(1, 40))
@settings(max_examples=100, deadline=None)
def test_alexander_and_teichmuller_norms_agree_on_cone(s, y):
    if y > abs(s):
        assert norm(NormBall.of(ALEX, "alexander"), (s, y)) == norm(NormBall.of(THETA), (s, y))


def test_thurston_norm_on_cone():
    assert thurston_norm_on_cone(ALEX, (0, 1)) == 2
    assert thurston_norm_on_cone(ALEX, (1, 2)) == 4
    assert thurston_norm_on_cone(ALEX, (3, 6)) == 3 * 4
    with pytest.raises(ConeError):
        thurston_norm_on_cone(ALEX, (2, 1))


def test_b4_teichmuller_norm_exceeds_thurston():
    theta = teichmuller_polynomial(au.b4_loop()).theta
    from artifact.burau import BraidWord, alexander_polynomial
    delta = alexander_polynomial(BraidWord.parse("-1 2 3", 4))
    assert thurston_norm_on_cone(theta, (0, 1), kind="teichmuller") == 4
    assert thurston_norm_on_cone(delta, (0, 1)) == 3
