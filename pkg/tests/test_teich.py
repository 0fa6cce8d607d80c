import numpy as np
import pytest

from artifact import automaton as au
from artifact.ring import LaurentPoly, PolyMatrix, canonical_unit_form, char_poly, valuate
from artifact.teich import (CertificationError, certify_pseudo_anosov, eta_sequence, lifted_matrix,
                            lifted_vectors, loop_permutation, primitivity_power, stretch_factor, t_map,
                            teichmuller_polynomial, w_text)
from oracles import integer_family_closed_form, largest_real_root_oracle, theta_family_closed_form


def P(text, names):
    return LaurentPoly.parse(text, names)


def test_t_map():
    assert t_map([2, 0, 1]).names == ("t",)
    tm = t_map(loop_permutation(au.b3_loop((2, -1, 2))))
    assert tm.names == ("t_A", "t_B") and tm.cycles == (("A", "C"), ("B",))
    assert t_map(list(range(4))).rank == 4


def test_eta_and_lifted_vectors():
    lp = au.b3_loop((2, 2))
    etas = eta_sequence(lp)
    assert [x for x, _ in etas[1]] == [0, 2, 1]
    ws = lifted_vectors(lp)
    assert w_text(ws[1], lp.labels) == "(1,B+)"
    lp = au.b3_loop((-1, 2))
    assert w_text(lifted_vectors(lp)[1], lp.labels) == "(A-,1)"


def test_lifted_matrices_examples():
    n3 = ("t_A", "t_B", "t_C")
    M = lifted_matrix(au.b3_loop((2, 2)))
    assert M == PolyMatrix([[1, P("t_B + t_B*t_C", n3)], [0, P("t_B*t_C", n3)]], n3)
    M = lifted_matrix(au.b3_loop((-1, -1)))
    assert M == PolyMatrix([[P("t_A^-1*t_B^-1", n3), 0], [P("t_A^-1*t_B^-1 + t_B^-1", n3), 1]], n3)
    M = lifted_matrix(au.b3_loop((-1, 2)))
    assert M == PolyMatrix([[P("1 + t^-1", ("t",)), P("t", ("t",))], [1, P("t", ("t",))]], ("t",))


def test_d_entries_are_unit_monomials():
    for lp in (au.b4_loop(), au.family_loop(3), au.b3_loop((2, -1, 2))):
        for w in lifted_vectors(lp):
            assert all(s in (1, -1) for _, s in w.values())


def test_theta_examples():
    r = teichmuller_polynomial(au.b3_loop((-1, 2)))
    assert r.theta.format_grouped() == "u^2 - (1 + t + t^-1)*u + 1"
    r = teichmuller_polynomial(au.b3_loop((2, -1, 2)))
    assert r.theta == P("u^2 - (t_A*t_B + t_B + 1 + t_A^-1)*u + t_B", ("t_A", "t_B", "u"))
    r = teichmuller_polynomial(au.b4_loop())
    assert r.theta == P("u^4 - (1 + t^-1)*u^3 - (t^2 + t^3)*u + t^2", ("t", "u"))


@pytest.mark.parametrize("n", [1, 2, 3])
def test_family_theta_and_specialization(n):
    lp = au.family_loop(n)
    r = teichmuller_polynomial(lp)
    assert r.theta == theta_family_closed_form(n)
    spec = valuate(r.theta, (0, 1))
    assert spec == integer_family_closed_form(n)
    assert valuate(char_poly(PolyMatrix.from_int(lp.integer_matrix())), (0, 1)) == spec


def test_theta_equals_char_poly_of_lifted_matrix():
    r = teichmuller_polynomial(au.b4_loop())
    assert r.theta == char_poly(r.lifted_matrix)


def test_lift_independence():
    """Rescaling every D_i by a unit t0 multiplies M by t0^k and Theta by u -> t0^-k u."""
    lp = au.b3_loop((-1, 2))
    r = teichmuller_polynomial(lp)
    names = r.lifted_matrix.names
    t0 = LaurentPoly.var("t", names)
    M = PolyMatrix.identity(2, names)
    for mv, w in zip(lp.moves, lifted_vectors(lp)):
        D = PolyMatrix.diag([t0 * r.tmap.monomial(*w.get(l, (None, 0)), names) for l in lp.labels], names)
        M = M @ PolyMatrix.from_int(mv.matrix, names) @ D
    M = M @ PolyMatrix.from_int(au.relabel_matrix(lp), names)
    shifted = char_poly(M)
    back = LaurentPoly({(e[0] + 2 * e[1], e[1]): c for e, c in shifted.terms.items()}, shifted.names)
    assert canonical_unit_form(back) == canonical_unit_form(r.theta)


def test_certification():
    c = certify_pseudo_anosov(au.b3_loop((-1, 2)))
    assert c.certified and c.primitive
    assert certify_pseudo_anosov(au.b4_loop()).certified
    bad = certify_pseudo_anosov(au.b3_loop((2, 2)))
    assert not bad.certified and not bad.primitive
    with pytest.raises(CertificationError):
        teichmuller_polynomial(au.b3_loop((2, 2)))
    assert teichmuller_polynomial(au.b3_loop((2, 2)), override=True).certified is False


def test_primitivity_power():
    assert primitivity_power(np.array([[2, 1], [1, 1]])) == 1
    assert primitivity_power(np.array([[1, 1], [0, 1]])) is None
    assert primitivity_power(np.array([[0, 1], [1, 1]])) == 2


def test_stretch_factors():
    r = teichmuller_polynomial(au.b3_loop((-1, 2)))
    assert abs(stretch_factor(r, (0, 1)) - (3 + 5 ** 0.5) / 2) < 1e-12
    assert abs(stretch_factor(r, (1, 2)) - float(largest_real_root_oracle([1, -1, -1, -1, 1]))) < 1e-12
    with pytest.raises(ValueError):
        stretch_factor(r, (2, 1))
    r4 = teichmuller_polynomial(au.b4_loop())
    assert abs(stretch_factor(r4, (0, 1)) - 2.296630262886538) < 1e-9


@pytest.mark.parametrize("loop", [au.b3_loop((-1, 2)), au.b4_loop(), au.family_loop(2)])
def test_stretch_at_own_class_is_pf_eigenvalue(loop):
    r = teichmuller_polynomial(loop)
    ev = max(abs(np.linalg.eigvals(np.array(loop.integer_matrix(), dtype=float))))
    assert abs(stretch_factor(r, (0, 1)) - ev) < 1e-9
