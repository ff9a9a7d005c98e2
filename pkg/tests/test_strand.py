from linext import gallery
from linext.field import make_prime_field
from linext.oracle import naive_syzygy
from linext.ring import PolyMatrix, Ring
from linext.strand import betti_table, linear_syzygies, resolution_slice

F = make_prime_field(32003)
CURVE_BETTI = [[1, 0, 0, 0], [0, 0, 0, 0], [0, 10, 15, 6]]


def twisted_cubic():
    R = Ring.standard(F, 4)
    x0, x1, x2, x3 = R.gens
    return [x0 * x2 - x1 * x1, x0 * x3 - x1 * x2, x1 * x3 - x2 * x2]


def test_twisted_cubic_syzygies_match_oracle():
    gens = twisted_cubic()
    syz = linear_syzygies(PolyMatrix.row(gens[0].ring, gens))
    assert syz.cols == 2 == naive_syzygy(gens, 1).value


def test_rnc4_strand():
    s = resolution_slice(gallery.rnc4())
    assert s.ranks == (6, 8, 3)
    assert naive_syzygy(gallery.rnc4(), 1).value == 8
    assert naive_syzygy(gallery.rnc4(), 0).value == 0


def test_ranks_of_gallery_inputs():
    assert resolution_slice(gallery.del_pezzo6()).ranks == (9, 16, 9)
    for name in ("generic_det_quintic_curve", "paracanonical_genus6_curve"):
        assert resolution_slice(gallery.construct(name)).ranks == (10, 15, 6)


def test_betti_tables():
    gens = gallery.construct("paracanonical_genus6_curve")
    assert betti_table(gens, 4).rows() == CURVE_BETTI
    R = Ring.standard(F, 3)
    assert dict(betti_table([], 2, R)) == {(0, 0): 1}
    b = betti_table(gallery.del_pezzo6(), 4)
    assert b.row(1) == [0, 9, 16, 9, 0]
    assert b[(4, 6)] == 1


def test_betti_methods_agree():
    gens = gallery.rnc4()
    a = betti_table(gens, 3, method="koszul")
    b = betti_table(gens, 3, method="artinian")
    assert dict(a) == dict(b)
    assert "6 8 3" in str(a)
