import numpy as np
from hypothesis import HealthCheck, given, settings, strategies as st

from linext import exactla as la
from linext.components import degree_census, factor_rank2, split_linear_components
from linext.field import extend_quadratic, make_prime_field, sqrt
from linext.groebner import buchberger, hilbert, normal_form
from linext.ring import Ring, change_field, format_poly, monomial_basis, parse_poly

P = 10007
F = make_prime_field(P)
F2 = extend_quadratic(F)
elems = st.integers(0, P - 1)
pairs = st.tuples(elems, elems)
seeds = st.integers(0, 2**32 - 1)
fast = settings(max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow])


@fast
@given(pairs, pairs, pairs)
def test_extension_field_distributes(a, b, c):
    lhs = F2.mul(a, F2.add(b, c))
    assert lhs == F2.add(F2.mul(a, b), F2.mul(a, c))


@fast
@given(pairs)
def test_inverse_and_sqrt(a):
    if F2.is_zero(a):
        return
    assert F2.mul(a, F2.inv(a)) == F2.one
    sq = F2.mul(a, a)
    r = sqrt(sq, F2)
    assert r in (a, F2.neg(a))


@fast
@given(seeds, st.integers(1, 12), st.integers(1, 12))
def test_rank_nullity(seed, rows, cols):
    rng = np.random.default_rng(seed)
    m = la.random_matrix(rows, cols, F, rng)
    m[rng.integers(0, rows)] = 0
    ker = la.right_kernel(m, F, cols=cols)
    assert ker.dim + la.rank(m, F) == cols
    assert not la.matmul(m, ker.basis.T, F).any() if ker.dim else True


@fast
@given(seeds, st.integers(1, 8))
def test_rref_idempotent_and_solve(seed, n):
    rng = np.random.default_rng(seed)
    m = la.random_matrix(n, n + 2, F, rng)
    r, k, _ = la.rref(m, F)
    r2, k2, _ = la.rref(r, F)
    assert k == k2 and (r == r2).all()
    x = la.random_matrix(n + 2, 1, F, rng)
    rhs = la.matmul(m, x, F)
    assert (la.matmul(m, la.solve(m, rhs, F), F) == rhs).all()


def _random_form(rng, ring, d, terms=4):
    mons = monomial_basis(ring.nvars, d)
    picks = rng.choice(len(mons), size=min(terms, len(mons)), replace=False)
    return ring.from_vector([int(rng.integers(1, P)) if i in picks else 0
                             for i in range(len(mons))], d)


@fast
@given(seeds)
def test_text_round_trip(seed):
    rng = np.random.default_rng(seed)
    R = Ring.standard(F, 4)
    q = _random_form(rng, R, int(rng.integers(1, 4)))
    assert parse_poly(format_poly(q), R) == q


@fast
@given(seeds)
def test_generators_reduce_to_zero(seed):
    rng = np.random.default_rng(seed)
    R = Ring.standard(F, 4)
    gens = [_random_form(rng, R, 2, 3) for _ in range(3)]
    gb = buchberger(gens, R)
    for g in gens:
        assert normal_form(g, gb).is_zero()
    h = hilbert(gb)
    assert h.value(0) == 1


@fast
@given(seeds)
def test_rational_product_factors(seed):
    rng = np.random.default_rng(seed)
    R = Ring.standard(F, 4, prefix="y")
    l1 = R.linear_form(rng.integers(0, P, 4))
    l2 = R.linear_form(rng.integers(0, P, 4))
    q = l1 * l2
    if q.is_zero():
        return
    a, b, _ = factor_rank2(q)
    assert a * b == change_field(q, a.ring)


@settings(max_examples=15, deadline=None)
@given(seeds)
def test_two_random_hyperplanes(seed):
    rng = np.random.default_rng(seed)
    R = Ring.standard(F, 4, prefix="y")
    l1 = R.linear_form(rng.integers(1, P, 4))
    l2 = R.linear_form(rng.integers(1, P, 4))
    comps = split_linear_components([l1 * l2])
    assert sorted(c.dimension for c in comps) == [2, 2]
    assert degree_census([l1 * l2]) == {2: (2, 2)}
