"""Dense exact linear algebra over a finite field.

Over a prime field matrices are ``numpy`` int64 arrays with entries in
``range(p)``; every routine returns reduced values.  Over extension fields
matrices are lists of rows of field elements and a slower pure-Python path is
used.  Both paths produce the same canonical RREF.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import AmbientMismatch, Inconsistent
from .field import FieldDesc


def is_numeric(field):
    return isinstance(field, FieldDesc) and field.is_prime


def asmat(m, field):
    """Normalize ``m`` to the representation used for ``field``."""
    if is_numeric(field):
        a = np.asarray(m, dtype=np.int64)
        if a.ndim == 1:
            a = a.reshape(1, -1) if a.size else a.reshape(0, 0)
        return a % field.p
    return [list(r) for r in m]


def shape(m):
    if isinstance(m, np.ndarray):
        return m.shape
    return (len(m), len(m[0]) if m else 0)


def zeros(rows, cols, field):
    if is_numeric(field):
        return np.zeros((rows, cols), dtype=np.int64)
    return [[field.zero] * cols for _ in range(rows)]


def identity(n, field):
    if is_numeric(field):
        return np.eye(n, dtype=np.int64)
    m = zeros(n, n, field)
    for i in range(n):
        m[i][i] = field.one
    return m


def transpose(m):
    if isinstance(m, np.ndarray):
        return m.T.copy()
    if not m:
        return []
    return [list(c) for c in zip(*m)]


def matmul(a, b, field):
    if is_numeric(field):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if a.shape[1] * (field.p - 1) ** 2 < 2**62:
            return (a @ b) % field.p
        return _chunked_matmul(a, b, field.p)
    rows, inner = shape(a)
    cols = shape(b)[1]
    out = zeros(rows, cols, field)
    for i in range(rows):
        ai = a[i]
        for k in range(inner):
            x = ai[k]
            if field.is_zero(x):
                continue
            bk = b[k]
            oi = out[i]
            for j in range(cols):
                if not field.is_zero(bk[j]):
                    oi[j] = field.add(oi[j], field.mul(x, bk[j]))
    return out


def _chunked_matmul(a, b, p):
    step = max(1, 2**62 // (p - 1) ** 2)
    out = np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    for s in range(0, a.shape[1], step):
        out = (out + a[:, s:s + step] @ b[s:s + step]) % p
    return out


# ---------------------------------------------------------------------------
# row reduction


def rref(m, field):
    """Reduced row echelon form.  Returns ``(R, rank, pivots)``.

    ``R`` keeps the input shape; zero rows sit at the bottom.
    """
    if is_numeric(field):
        return _rref_np(asmat(m, field), field.p)
    return _rref_generic([list(r) for r in m], field)


def _rref_np(a, p):
    a = a.copy()
    rows, cols = a.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        k = r + nz[0]
        if k != r:
            a[[r, k]] = a[[k, r]]
        inv = pow(int(a[r, c]), -1, p)
        if inv != 1:
            a[r, c:] = (a[r, c:] * inv) % p
        col = a[:, c].copy()
        col[r] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            a[hit, c:] = (a[hit, c:] - np.outer(col[hit], a[r, c:])) % p
        pivots.append(c)
        r += 1
    return a, r, pivots


def _rref_generic(a, f):
    rows = len(a)
    cols = len(a[0]) if a else 0
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        k = next((i for i in range(r, rows) if not f.is_zero(a[i][c])), None)
        if k is None:
            continue
        a[r], a[k] = a[k], a[r]
        inv = f.inv(a[r][c])
        a[r] = [f.mul(x, inv) for x in a[r]]
        for i in range(rows):
            if i != r and not f.is_zero(a[i][c]):
                fac = a[i][c]
                a[i] = [f.sub(x, f.mul(fac, y)) for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    return a, r, pivots


def rank(m, field):
    return rref(m, field)[1]


# ---------------------------------------------------------------------------
# subspaces


@dataclass(frozen=True, eq=False)
class Subspace:
    """Row space of ``basis`` (kept in RREF with nonzero rows) in F^ambient."""

    ambient: int
    basis: object
    field: object

    @property
    def dim(self):
        return shape(self.basis)[0]

    def rows(self):
        if isinstance(self.basis, np.ndarray):
            return [r for r in self.basis]
        return list(self.basis)

    def __eq__(self, other):
        if not isinstance(other, Subspace) or other.ambient != self.ambient:
            return False
        if isinstance(self.basis, np.ndarray) and isinstance(other.basis, np.ndarray):
            return np.array_equal(self.basis, other.basis)
        return [list(r) for r in self.rows()] == [list(r) for r in other.rows()]

    def __hash__(self):
        if isinstance(self.basis, np.ndarray):
            return hash((self.ambient, self.basis.tobytes()))
        return hash((self.ambient, tuple(tuple(r) for r in self.basis)))


def span(vectors, ambient, field):
    """Subspace spanned by the given vectors."""
    if is_numeric(field):
        a = np.asarray(vectors, dtype=np.int64).reshape(-1, ambient) % field.p
        r, k, _ = _rref_np(a, field.p)
        return Subspace(ambient, r[:k], field)
    if not vectors:
        return Subspace(ambient, [], field)
    r, k, _ = _rref_generic([list(v) for v in vectors], field)
    return Subspace(ambient, r[:k], field)


def right_kernel(m, field, cols=None):
    """Basis of ``{v : m v = 0}`` as a :class:`Subspace`.

    ``cols`` is needed only when ``m`` has no rows.
    """
    rows, ncols = shape(m)
    if rows == 0:
        n = cols if cols is not None else ncols
        return Subspace(n, identity(n, field), field)
    r, k, pivots = rref(m, field)
    free = [c for c in range(ncols) if c not in set(pivots)]
    if is_numeric(field):
        p = field.p
        basis = np.zeros((len(free), ncols), dtype=np.int64)
        for t, c in enumerate(free):
            basis[t, c] = 1
            for i, pc in enumerate(pivots):
                basis[t, pc] = (-r[i, c]) % p
        # free-column unit vectors plus pivot back-substitution is RREF up to
        # row order; normalize
        return span(basis, ncols, field) if len(free) else Subspace(ncols, basis, field)
    basis = []
    for c in free:
        v = [field.zero] * ncols
        v[c] = field.one
        for i, pc in enumerate(pivots):
            v[pc] = field.neg(r[i][c])
        basis.append(v)
    return span(basis, ncols, field)


def left_kernel(m, field, rows=None):
    return right_kernel(transpose(m), field, cols=rows)


def subspace_contains(a, b):
    """True iff subspace ``b`` lies inside subspace ``a``."""
    if a.ambient != b.ambient:
        raise AmbientMismatch(f"ambient {a.ambient} != {b.ambient}")
    if b.dim == 0:
        return True
    if b.dim > a.dim:
        return False
    f = a.field
    if is_numeric(f):
        stacked = np.vstack([a.basis, b.basis]) if a.dim else b.basis
        return rank(stacked, f) == a.dim
    return rank(list(a.basis) + list(b.basis), f) == a.dim


def reduce_against(v, sub):
    """Remainder of ``v`` after clearing the pivot columns of ``sub``."""
    f = sub.field
    if is_numeric(f):
        v = np.asarray(v, dtype=np.int64) % f.p
        for row in sub.basis:
            c = int(np.flatnonzero(row)[0])
            if v[c]:
                v = (v - v[c] * row) % f.p
        return v
    v = list(v)
    for row in sub.basis:
        c = next(i for i, x in enumerate(row) if not f.is_zero(x))
        if not f.is_zero(v[c]):
            fac = v[c]
            v = [f.sub(x, f.mul(fac, y)) for x, y in zip(v, row)]
    return v


def solve(m, rhs, field):
    """One particular solution ``x`` of ``m x = rhs``.

    ``rhs`` is a matrix with ``rows(m)`` rows (or a vector).  Free variables
    are set to zero, so the answer is deterministic.
    """
    rows, cols = shape(m)
    vec = False
    if is_numeric(field):
        b = np.asarray(rhs, dtype=np.int64) % field.p
        if b.ndim == 1:
            b, vec = b.reshape(-1, 1), True
        if b.shape[0] != rows:
            raise ValueError("rhs rows must match matrix rows")
        aug = np.hstack([asmat(m, field).reshape(rows, cols), b])
        r, k, pivots = _rref_np(aug, field.p)
        if any(pc >= cols for pc in pivots):
            raise Inconsistent("system has no solution")
        x = np.zeros((cols, b.shape[1]), dtype=np.int64)
        for i, pc in enumerate(pivots):
            x[pc] = r[i, cols:]
        return x[:, 0] if vec else x
    b = rhs
    if b and not isinstance(b[0], list):
        b, vec = [[x] for x in b], True
    aug = [list(mr) + list(br) for mr, br in zip(m, b)]
    r, k, pivots = _rref_generic(aug, field)
    if any(pc >= cols for pc in pivots):
        raise Inconsistent("system has no solution")
    nb = len(b[0]) if b else 0
    x = [[field.zero] * nb for _ in range(cols)]
    for i, pc in enumerate(pivots):
        x[pc] = r[i][cols:]
    return [row[0] for row in x] if vec else x


def inverse(m, field):
    n = shape(m)[0]
    return solve(m, identity(n, field), field)


def random_matrix(rows, cols, field, rng):
    """Uniform random matrix over a prime field from ``numpy.random.Generator``."""
    return rng.integers(0, field.p, size=(rows, cols), dtype=np.int64)


def random_invertible(n, field, rng):
    while True:
        m = random_matrix(n, n, field, rng)
        if rank(m, field) == n:
            return m
