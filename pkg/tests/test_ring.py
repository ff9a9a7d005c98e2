import numpy as np

from linext import exactla as la, gallery
from linext.field import make_prime_field
from linext.ring import (PolyMatrix, Ring, coefficient_matrix, format_poly, from_slices,
                         matmul_poly, monomial_basis, parse_poly, substitute_linear,
                         variable_slices)
from linext.strand import resolution_slice

F = make_prime_field(32003)


def test_monomial_counts():
    assert len(monomial_basis(3, 2)) == 6
    assert len(monomial_basis(5, 3)) == 35
    assert monomial_basis(4, 0) == [(0, 0, 0, 0)]


def test_coefficient_matrix():
    R = Ring.standard(F, 2)
    x0, x1 = R.gens
    assert coefficient_matrix([x0 * x0, x0 * x1], 2, R).tolist() == [[1, 0, 0], [0, 1, 0]]
    assert coefficient_matrix([], 2, R).shape == (0, 3)


def test_genus6_cubics_independent():
    gens = gallery.construct("paracanonical_genus6_curve")
    m = coefficient_matrix(gens, 3)
    assert m.shape == (10, 35) and la.rank(m, F) == 10


def test_hankel_slices():
    R = Ring.standard(F, 5)
    x = R.gens
    m = PolyMatrix(R, [[x[i + j] for j in range(4)] for i in range(2)], [0, 0], [1] * 4)
    sl = variable_slices(m)
    assert len(sl) == 5
    for ell, s in enumerate(sl):
        want = [[1 if i + j == ell else 0 for j in range(4)] for i in range(2)]
        assert np.asarray(s).tolist() == want
    assert from_slices(R, sl, [0, 0], [1] * 4) == m
    zero = PolyMatrix(R, [[R.zero()] * 2], [0], [1, 1])
    assert all(not np.asarray(s).any() for s in variable_slices(zero))


def test_substitution(rng):
    R = Ring.standard(F, 3)
    x0, x1, x2 = R.gens
    q = x0 * x2 + x1 * x1
    assert substitute_linear(q, list(R.gens)) == q
    assert substitute_linear(q, [x0, x1, R.zero()]) == x1 * x1
    M = la.random_invertible(3, F, rng)
    Minv = la.inverse(M, F)
    fwd = [R.linear_form(M[i]) for i in range(3)]
    back = [R.linear_form(Minv[i]) for i in range(3)]
    assert substitute_linear(substitute_linear(q, fwd), back) == q


def test_strand_products_vanish():
    for name in ("rnc4", "paracanonical_genus6_curve"):
        s = resolution_slice(gallery.construct(name))
        assert matmul_poly(s.phi1, s.phi2).is_zero()
        assert matmul_poly(s.phi2, s.phi3).is_zero()


def test_identity_product():
    s = resolution_slice(gallery.rnc4())
    ident = PolyMatrix.identity(s.ring, s.phi2.rowdeg)
    assert matmul_poly(ident, s.phi2) == s.phi2


def test_text_round_trip():
    R = Ring(make_prime_field(7), ("x0", "x1"))
    q = parse_poly("x0^2+x1^2", R)
    assert q.degree == 2 and len(q.terms) == 2
    assert parse_poly(format_poly(q), R) == q
    r = parse_poly("3*x0*x1 - x1^2", R)
    assert r.coeff((0, 2)) == 6
