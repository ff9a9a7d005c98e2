import pytest

from linext import gallery
from linext.field import make_prime_field
from linext.groebner import (buchberger, colon_truncated, dimension_degree, hilbert,
                             ideal_quotient, normal_form, saturate)
from linext.oracle import membership_by_linear_algebra
from linext.ring import Ring

F = make_prime_field(32003)
R = Ring.standard(F, 4)
x0, x1, x2, x3 = R.gens
TWISTED = [x0 * x2 - x1 * x1, x0 * x3 - x1 * x2, x1 * x3 - x2 * x2]


def same(gb, polys):
    return gb == buchberger(polys, R)


def test_basics():
    assert buchberger([x0], R).gens == [x0]
    gb = buchberger([x0 * x1, x0 * x2], R)
    assert sorted(map(str, gb.gens)) == sorted(map(str, [x0 * x1, x0 * x2]))
    assert normal_form(x1 * x1, buchberger([x0], R)) == x1 * x1


def test_twisted_cubic():
    gb = buchberger(TWISTED, R)
    assert len(gb) == 3 and all(g.degree == 2 for g in gb.gens)
    for g in TWISTED:
        assert normal_form(g, gb).is_zero()
    assert dimension_degree(gb) == (1, 3)
    # every degree-3 element of the ideal reduces to zero
    for g in TWISTED:
        for v in R.gens:
            assert membership_by_linear_algebra(g * v, TWISTED)
            assert normal_form(g * v, gb).is_zero()


def test_quotients():
    assert same(ideal_quotient(buchberger([x0 * x1], R), x0), [x1])
    gb = buchberger([x0 * x1, x0 * x2], R)
    assert same(ideal_quotient(gb, x0), [x1, x2])
    assert ideal_quotient(gb, R.one()) == gb


def test_saturation():
    assert saturate(buchberger([x0 * x0], R), x0).is_unit()
    gb = buchberger(TWISTED, R)
    assert saturate(gb, x0) == gb
    assert same(saturate(buchberger([x0 * x1, x0 * x0], R), x0), [R.one()])


def test_hilbert():
    gens = gallery.construct("paracanonical_genus6_curve")
    h = hilbert(buchberger(gens))
    assert tuple(h.numerator) == gallery.CURVE_NUMERATOR
    assert tuple(h.reduced) == (1, 3, 6)
    R2 = Ring.standard(F, 2)
    assert tuple(hilbert(buchberger([], R2)).numerator) == (1,)
    assert hilbert(buchberger([R2.one()], R2)).value(3) == 0


@pytest.mark.parametrize("k", [1, 2, 3])
def test_linear_subspace_dimension(k):
    gb = buchberger(list(R.gens[:k]), R)
    assert dimension_degree(gb) == (3 - k, 1)


def test_truncated_colon_matches_quotient():
    gb = buchberger([x0 * x1, x0 * x2], R)
    cols = colon_truncated(gb, [x0], [1])
    assert buchberger(cols, R) == buchberger([x1, x2], R)


def test_linear_saturation_matches_iterated_quotients():
    from linext.groebner import saturate_iterated
    for gens, f in [([x0 * x0 * x1, x0 * x2 * x2], x0),
                    ([x0 * x1 - x2 * x3, (x0 + x3) * x2 * x2], x0 + x3),
                    (TWISTED + [x0 * x0 * x3], x0)]:
        gb = buchberger(gens, R)
        assert saturate(gb, f) == saturate_iterated(gb, f)
