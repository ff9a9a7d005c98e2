import pytest

from linext import gallery
from linext.errors import TooLarge
from linext.field import make_prime_field
from linext.groebner import buchberger, normal_form
from linext.oracle import (count_points, membership_by_linear_algebra, naive_syzygy,
                           point_sample_degree)
from linext.ring import Ring

F7 = make_prime_field(7)


def twisted(f):
    R = Ring.standard(f, 4)
    x0, x1, x2, x3 = R.gens
    return [x0 * x2 - x1 * x1, x0 * x3 - x1 * x2, x1 * x3 - x2 * x2]


def test_membership():
    gens = gallery.rnc4()
    R = gens[0].ring
    x = R.gens
    assert membership_by_linear_algebra(gens[2], gens)
    assert not membership_by_linear_algebra(x[0] * x[0], gens)
    assert not membership_by_linear_algebra(x[0], gens)
    gb = buchberger(gens)
    q = gens[0] * x[3] + gens[4] * x[1]
    assert membership_by_linear_algebra(q, gens) == normal_form(q, gb).is_zero()


def test_syzygy_counts():
    assert naive_syzygy(twisted(F7), 1).value == 2
    assert naive_syzygy(gallery.rnc4(), 1).method == "naive-syzygy"
    assert naive_syzygy(gallery.rnc4(), 0).value == 0


def test_syzygy_guard():
    R = Ring.standard(make_prime_field(32003), 15)
    with pytest.raises(TooLarge):
        naive_syzygy(R.gens * 30, 3)


def test_point_samples():
    R3 = Ring.standard(F7, 3)
    y0, y1, y2 = R3.gens
    assert point_sample_degree([y0 * y1], 1).value == 2
    assert point_sample_degree([y0 + y2], 1).value == 1
    assert point_sample_degree(twisted(F7), 1).value == 3


def test_conjugate_points_counted():
    R = Ring.standard(F7, 2)
    t0, t1 = R.gens
    total, per = count_points([t0 * t0 - t1 * t1.scale(3)], max_ext=2)
    assert per == {1: 0, 2: 2} and total == 2


def test_point_guard():
    R = Ring.standard(make_prime_field(32003), 3)
    with pytest.raises(TooLarge):
        count_points([R.gens[0]], max_ext=2)
