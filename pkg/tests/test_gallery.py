import numpy as np
import pytest

from linext import exactla as la, gallery
from linext.errors import DegenerateDraw
from linext.field import make_prime_field
from linext.groebner import buchberger, dimension_degree, hilbert
from linext.ring import Ring, span_basis, substitute_linear
from linext.strand import resolution_slice

F = make_prime_field(32003)


def test_rnc4():
    gens = gallery.rnc4()
    gb = buchberger(gens)
    assert len(gens) == 6
    assert dimension_degree(gb) == (1, 4)
    assert tuple(hilbert(gb).numerator) == (1, 0, -6, 8, -3)


def test_del_pezzo6():
    gens = gallery.del_pezzo6()
    assert len(gens) == 9
    assert dimension_degree(buchberger(gens)) == (2, 6)
    assert resolution_slice(gens).ranks == (9, 16, 9)


@pytest.mark.parametrize("name", ["generic_det_quintic_curve", "prym_symmetric_quintic_curve",
                                  "paracanonical_genus6_curve"])
def test_curves(name):
    gens = gallery.construct(name)
    assert len(gens) == 10 and all(g.degree == 3 for g in gens)
    gb = buchberger(gens)
    assert dimension_degree(gb) == (1, 10)
    assert tuple(hilbert(gb).numerator) == gallery.CURVE_NUMERATOR
    assert resolution_slice(gens).ranks == (10, 15, 6)


def test_prym_tensor_symmetry():
    gens = gallery.prym_symmetric_quintic_curve(seed=0)
    assert gallery.LAST_TRAIL["prym_symmetric_quintic_curve"]["attempts"] == 1
    rng = np.random.default_rng(0)
    mats = [gallery._symmetric(rng, F, 5) for _ in range(3)]
    assert all((S == S.T).all() for S in mats)
    R = gens[0].ring
    flipped = [[R.linear_form(S.T[:, j]) for j in range(5)] for S in mats]
    assert span_basis(gallery.maximal_minors_3x5(flipped), R) == gens


def test_surface_cubics():
    cubics, _ = gallery.surface_cubics(seed=0)
    assert len(cubics) == 10 and cubics[0].ring.nvars == 6
    assert dimension_degree(buchberger(cubics)) == (2, 10)


def test_sextic_system_dimension():
    rng = np.random.default_rng(5)
    p = F.p
    pts = rng.integers(0, p, size=(14, 3))
    sext = gallery.monomial_basis(3, 6)
    C = np.vstack([gallery._derivative_rows(sext, pt, p) for pt in pts[:4]]
                  + [gallery._eval_monomials(sext, pts[4:], p)])
    assert C.shape == (22, 28) and la.rank(C, F) == 22


def test_secant_variety():
    gens = gallery.secant_p2xp4()
    assert len(gens) == 10 and gens[0].ring.nvars == 15
    rng = np.random.default_rng(2)
    M = la.random_matrix(15, 5, F, rng)
    R5 = Ring.standard(F, 5)
    images = [R5.linear_form(M[i]) for i in range(15)]
    section = [substitute_linear(g, images, R5) for g in gens]
    assert resolution_slice(section).ranks == (10, 15, 6)


def test_seeded_reproducibility():
    a = gallery.construct("generic_det_quintic_curve", seed=3)
    b = gallery.construct("generic_det_quintic_curve", seed=3)
    c = gallery.construct("generic_det_quintic_curve", seed=4)
    assert a == b and a != c


def test_degenerate_draw_reported():
    with pytest.raises(DegenerateDraw):
        gallery._retry("never", 0, lambda rng: None, lambda out: True)
