import numpy as np
import pytest

from linext import exactla as la
from linext.errors import Inconsistent
from linext.field import extend_quadratic, make_prime_field

F7 = make_prime_field(7)


def test_rref_examples():
    r, k, piv = la.rref(np.eye(2, dtype=np.int64), F7)
    assert k == 2 and (r == np.eye(2)).all()
    r, k, piv = la.rref(np.array([[1, 1], [2, 2]]), F7)
    assert k == 1 and r.tolist() == [[1, 1], [0, 0]] and piv == [0]


def test_random_wide_matrix_full_rank(rng):
    m = la.random_matrix(50, 70, F7, rng)
    assert la.rank(m, F7) == 50 == la.rank(m.T, F7)


def test_kernels():
    assert la.right_kernel(np.eye(3, dtype=np.int64), F7).dim == 0
    k = la.right_kernel(np.array([[1, 1]]), F7)
    assert k.basis.tolist() == [[1, 6]]


def test_subspace_contains():
    full = la.span(np.eye(2, dtype=np.int64), 2, F7)
    a = la.span([[1, 0]], 2, F7)
    b = la.span([[0, 1]], 2, F7)
    assert la.subspace_contains(full, b)
    assert not la.subspace_contains(a, b)
    c = la.span([[2, 0]], 2, F7)
    assert la.subspace_contains(a, c) and la.subspace_contains(c, a) and a == c


def test_solve():
    rhs = np.array([[3], [4]])
    assert (la.solve(np.eye(2, dtype=np.int64), rhs, F7) == rhs).all()
    x = la.solve(np.array([[1, 1]]), np.array([[2]]), F7)
    assert (np.array([[1, 1]]) @ x % 7).tolist() == [[2]]
    with pytest.raises(Inconsistent):
        la.solve(np.array([[0]]), np.array([[1]]), F7)


def test_extension_field_kernel():
    F = extend_quadratic(F7)
    r = (0, 1)
    m = [[F.one, r], [r, F.from_int(3)]]  # rank 1 since r^2 = 3
    k = la.right_kernel(m, F)
    assert k.dim == 1
    v = k.basis[0]
    assert F.is_zero(F.add(v[0], F.mul(r, v[1])))


def test_big_product_no_overflow(rng):
    f = make_prime_field(32003)
    a = la.random_matrix(40, 3000, f, rng)
    b = la.random_matrix(3000, 5, f, rng)
    ref = (a.astype(object) @ b.astype(object)) % 32003
    assert (la.matmul(a, b, f) == ref.astype(np.int64)).all()
