import pytest

from linext.errors import NonResidue, NotPrime
from linext.field import extend_quadratic, factor_univariate, make_prime_field, residue_field, sqrt


def test_prime_field_arithmetic():
    f = make_prime_field(7)
    assert f.add(3, 5) == 1
    assert f.mul(3, 5) == 1
    assert f.inv(3) == 5


def test_composite_rejected():
    with pytest.raises(NotPrime):
        make_prime_field(4)


def test_large_prime_matches_trial_division():
    p = 32003
    assert all(p % k for k in range(2, int(p ** 0.5) + 1))
    assert make_prime_field(p).p == p


def test_quadratic_tower():
    f = make_prime_field(7)
    F = extend_quadratic(f)
    assert F.order == 49 and F.tower == (3,)
    r = (0, 1)
    assert F.mul(r, r) == F.from_int(3)
    assert F.inv(r) == (0, 5)
    assert extend_quadratic(F).order == 2401


def test_sqrt():
    f = make_prime_field(7)
    assert sqrt(2, f) == 3
    assert sqrt(0, f) == 0
    with pytest.raises(NonResidue):
        sqrt(3, f)


def test_sqrt_in_extension_squares_back():
    F = extend_quadratic(make_prime_field(11))
    for n in range(1, 40):
        a = F.from_index(n)
        b = F.mul(a, a)
        r = sqrt(b, F)
        assert F.mul(r, r) == b


def test_frobenius_is_pth_power():
    F = extend_quadratic(make_prime_field(7))
    a = (2, 5)
    assert F.frobenius(a) == F.pow(a, 7)
    assert F.frobenius(F.frobenius(a)) == a


def test_residue_field_of_cubic():
    # t^3 + t + 1 has no roots mod 5
    assert factor_univariate([1, 0, 1, 1], 5) == [([1, 0, 1, 1], 1)]
    K = residue_field(5, [1, 0, 1, 1])
    t = K.gen
    t3 = K.mul(K.mul(t, t), t)
    assert K.add(K.add(t3, t), K.one) == K.zero
    assert K.mul(t, K.inv(t)) == K.one
