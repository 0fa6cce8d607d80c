import pytest
from hypothesis import given, settings, strategies as st

from artifact.ring import (LaurentPoly, PolyMatrix, canonical_unit_form, char_poly, cauchy_bound,
                           largest_root, newton_polytope, poly_arith, same_up_to_unit,
                           spectral_radius, valuate)
from oracles import charpoly_oracle, from_sympy, largest_real_root_oracle, to_sympy

NAMES = ("t", "u")
TH = LaurentPoly.parse("u^2 - (1 + t + t^-1)*u + 1")


def polys(names=NAMES, max_terms=5, lo=-3, hi=3):
    exps = st.tuples(*[st.integers(lo, hi)] * len(names))
    return st.dictionaries(exps, st.integers(-5, 5), max_size=max_terms).map(
        lambda d: LaurentPoly(d, names))


def test_parse_and_format_grouped():
    assert TH.format_grouped() == "u^2 - (1 + t + t^-1)*u + 1"
    assert LaurentPoly.parse(TH.format()) == TH


def test_parse_variable_order_puts_u_last():
    p = LaurentPoly.parse("u*t_B + t_A")
    assert p.names == ("t_B", "t_A", "u")


def test_poly_arith_ops():
    a = LaurentPoly.parse("t + 1")
    b = LaurentPoly.parse("t - 1")
    assert poly_arith(a, b, "mul") == LaurentPoly.parse("t^2 - 1")
    assert poly_arith(a, b, "sub") == LaurentPoly.const(2, ("t",))
    with pytest.raises(ValueError):
        poly_arith(a, b, "div")


def test_negative_power_only_for_units():
    t = LaurentPoly.var("t", ("t",))
    assert (t ** -2) * t ** 2 == LaurentPoly.const(1, ("t",))
    assert (-(t ** 3)) ** -1 == -(t ** -3)
    with pytest.raises(ValueError):
        (t + 1) ** -1


@given(polys(), polys(), polys())
@settings(max_examples=200, deadline=None)
def test_ring_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a - a == LaurentPoly({}, NAMES)


@given(polys(), polys())
@settings(max_examples=100, deadline=None)
def test_product_matches_sympy(a, b):
    ea, _ = to_sympy(a)
    eb, _ = to_sympy(b)
    if a and b:
        assert from_sympy(ea * eb, NAMES) == a * b


@given(polys())
@settings(max_examples=200, deadline=None)
def test_format_parse_roundtrip(p):
    assert LaurentPoly.parse(p.format(), NAMES) == p
    assert LaurentPoly.parse(p.format_grouped(), NAMES) == p


def test_char_poly_examples():
    one = ("t",)
    M = PolyMatrix([[LaurentPoly.parse("1 + t^-1", one), LaurentPoly.parse("t", one)],
                    [1, LaurentPoly.parse("t", one)]], one)
    assert char_poly(M) == TH
    I = PolyMatrix.from_int([[2, 1, 1, 0], [0, 0, 1, 0], [0, 0, 0, 1], [1, 1, 0, 0]], one)
    assert valuate(char_poly(I), (0, 1), "X") == LaurentPoly.parse("X^4 - 2*X^3 - 2*X + 1")


@given(st.integers(1, 4), st.data())
@settings(max_examples=40, deadline=None)
def test_char_poly_matches_berkowitz(n, data):
    entry = polys(("t",), max_terms=2, lo=-1, hi=1)
    rows = [[data.draw(entry) for _ in range(n)] for _ in range(n)]
    M = PolyMatrix(rows, ("t",))
    assert char_poly(M) == charpoly_oracle(M)


def test_valuate_examples():
    assert valuate(TH, (0, 1)) == LaurentPoly.parse("X^2 - 3*X + 1")
    assert valuate(TH, (1, 2)) == LaurentPoly.parse("X^4 - X^3 - X^2 - X + 1")
    with pytest.raises(ValueError):
        valuate(TH, (1,))


def test_largest_root():
    assert abs(largest_root(valuate(TH, (0, 1))) - (3 + 5 ** 0.5) / 2) < 1e-12
    q = LaurentPoly.parse("X^4 - 2*X^3 - 2*X + 1")
    assert abs(largest_root(q) - float(largest_real_root_oracle([1, -2, 0, -2, 1]))) < 1e-12
    with pytest.raises(ValueError):
        largest_root(LaurentPoly.parse("X^2 + X + 1"))


def test_spectral_radius_handles_complex_and_negative():
    assert abs(spectral_radius(LaurentPoly.parse("X^2 + X + 1")) - 1.0) < 1e-9
    assert abs(spectral_radius(LaurentPoly.parse("X + 3")) - 3.0) < 1e-12


def test_cauchy_bound_dominates_roots():
    coeffs = [1, -2, 0, -2, 1]
    assert cauchy_bound(coeffs) >= 2.2966


def test_newton_polytope():
    alex = LaurentPoly.parse("u + u^-1 - (-t^-1 + 1 - t)")
    assert newton_polytope(alex) == [(-1, 0), (0, -1), (0, 1), (1, 0)]
    assert newton_polytope(TH) == [(-1, 1), (0, 0), (0, 2), (1, 1)]
    assert newton_polytope(LaurentPoly.parse("u^3 - u", NAMES)) == [(0, 1), (0, 3)]


def test_canonical_unit_form():
    alex = LaurentPoly.parse("u + u^-1 - (-t^-1 + 1 - t)")
    unit = LaurentPoly.monomial((3, -2), -1)
    assert canonical_unit_form(alex * unit) == canonical_unit_form(alex)
    assert same_up_to_unit(alex, alex * unit)
    assert not same_up_to_unit(alex, TH)
