"""Brute-force cross-checks for tests: membership by ranks, syzygies by one
big kernel, and point counts by exhaustive search over small fields."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

import numpy as np
from sympy import ZZ
from sympy.polys import galoistools as gt

from . import exactla as la
from .errors import TooLarge
from .field import residue_field
from .ring import Ring, coefficient_matrix, monomial_basis, multiples, substitute_linear

MAX_UNKNOWNS = 20000
MAX_POINTS = 5_000_000


@dataclass(frozen=True)
class OracleResult:
    quantity: str
    value: object
    method: str


def membership_by_linear_algebra(q, gens):
    """Whether ``q`` lies in the span of the monomial multiples of ``gens`` in its degree."""
    if q.is_zero():
        return True
    ring = q.ring
    d = q.degree
    rows = multiples([g for g in gens if not g.is_zero()], d, ring)
    if not rows:
        return False
    M = coefficient_matrix(rows, d, ring)
    r = la.rank(M, ring.field)
    return la.rank(np.vstack([M, coefficient_matrix([q], d, ring)]), ring.field) == r


def naive_syzygy(gens, syz_degree):
    """Dimension of ``{(a_i) : sum a_i g_i = 0, deg a_i = syz_degree}``."""
    ring = gens[0].ring
    n = ring.nvars
    mons = monomial_basis(n, syz_degree)
    unknowns = len(gens) * len(mons)
    if unknowns > MAX_UNKNOWNS:
        raise TooLarge(f"{unknowns} unknowns exceed the oracle limit {MAX_UNKNOWNS}")
    degs = {g.degree for g in gens}
    if len(degs) != 1:
        raise ValueError("generators must share one degree")
    d = degs.pop() + syz_degree
    cols = [c for g in gens for c in multiples([g], d, ring)]
    A = coefficient_matrix(cols, d, ring).T
    return OracleResult("syzygies", unknowns - la.rank(A, ring.field), "naive-syzygy")


# ---------------------------------------------------------------------------
# exhaustive point counts


class _TableField:
    """F_{p^j} with elements numbered by base-p digits; log tables for products."""

    def __init__(self, p, j):
        self.p, self.j = p, j
        self.q = q = p ** j
        if q > MAX_POINTS:
            raise TooLarge(f"field of order {q} is too large to enumerate")
        self.digits = np.array([[(i // p ** t) % p for t in range(j)] for i in range(q)],
                               dtype=np.int64).reshape(q, j)
        self.pw = p ** np.arange(j, dtype=np.int64)
        if j == 1:
            mul = lambda a, b: a * b % p
            to_idx = lambda x: x
            gen = next(g for g in range(1, p) if self._order(g, mul, 1) == q - 1)
        else:
            K = residue_field(p, self._irreducible(p, j))
            elems = lambda i: K.from_coords(self.digits[i])
            to_idx = lambda x: int(np.dot(x, self.pw))
            mul = lambda a, b: to_idx(K.mul(elems(a), elems(b)))
            gen = next(g for g in range(2, q) if self._order(g, mul, 1) == q - 1)
        self.exp = np.zeros(q - 1, dtype=np.int64)
        self.log = np.full(q, -1, dtype=np.int64)
        x = 1
        for k in range(q - 1):
            self.exp[k] = x
            self.log[x] = k
            x = mul(x, gen)

    @staticmethod
    def _irreducible(p, j):
        for tail in product(range(p), repeat=j):
            g = [1] + list(tail)
            if gt.gf_irreducible_p([ZZ(c) for c in g], p, ZZ):
                return g
        raise ValueError("no irreducible polynomial found")

    def _order(self, g, mul, one):
        x, k = g, 1
        while x != one:
            x = mul(x, g)
            k += 1
            if k > self.q:
                return -1
        return k

    def mul(self, a, b):
        out = self.exp[(self.log[a] + self.log[b]) % (self.q - 1)]
        return np.where((a == 0) | (b == 0), 0, out)

    def add(self, a, b):
        return ((self.digits[a] + self.digits[b]) % self.p) @ self.pw

    def power(self, a, e):
        if e == 0:
            return np.ones_like(a)
        out = self.exp[(self.log[a] * e) % (self.q - 1)]
        return np.where(a == 0, 0, out)

    def evaluate(self, q, pts):
        total = np.zeros(len(pts), dtype=np.int64)
        for m, c in q.terms.items():
            val = np.full(len(pts), int(c) % self.p, dtype=np.int64)
            for i, e in enumerate(m):
                if e:
                    val = self.mul(val, self.power(pts[:, i], e))
            total = self.add(total, val)
        return total


def _projective_points(q, k):
    """All points of P^k over a field with ``q`` elements, first nonzero coordinate 1."""
    blocks = []
    for lead in range(k + 1):
        free = k - lead
        if q ** free > MAX_POINTS:
            raise TooLarge(f"P^{k} over a field of order {q} is too large to enumerate")
        grid = np.indices((q,) * free).reshape(free, -1).T if free else np.zeros((1, 0), np.int64)
        block = np.zeros((len(grid), k + 1), dtype=np.int64)
        block[:, lead] = 1
        block[:, lead + 1:] = grid
        blocks.append(block)
    return np.vstack(blocks)


def _mobius(n):
    res, m, d = 1, n, 2
    while d * d <= m:
        if m % d == 0:
            m //= d
            if m % d == 0:
                return 0
            res = -res
        d += 1
    return -res if m > 1 else res


def count_points(gens, max_ext=3):
    """Number of geometric points of degree at most ``max_ext`` over F_p."""
    ring = gens[0].ring
    p = ring.p
    k = ring.nvars - 1
    N = {}
    for j in range(1, max_ext + 1):
        F = _TableField(p, j)
        pts = _projective_points(F.q, k)
        mask = np.ones(len(pts), dtype=bool)
        for g in gens:
            mask &= F.evaluate(g, pts) == 0
        N[j] = int(mask.sum())
    exact = {r: sum(_mobius(r // d) * N[d] for d in range(1, r + 1) if r % d == 0)
             for r in N}
    return sum(exact.values()), N


def point_sample_degree(gens, dim_hint, seed=0, max_ext=3, tries=3):
    """Degree of a variety by counting the points of random linear slices.

    A special slice can only lose points, so the best of ``tries`` slices is
    reported.
    """
    ring = gens[0].ring
    f = ring.field
    n = ring.nvars
    rng = np.random.default_rng(seed)
    sub = Ring.standard(f, n - dim_hint, prefix="t")
    best = 0
    for _ in range(tries):
        M = la.random_matrix(n, n - dim_hint, f, rng)
        images = [sub.linear_form(M[i]) for i in range(n)]
        sliced = [substitute_linear(g, images, sub) for g in gens]
        sliced = [g for g in sliced if not g.is_zero()]
        if not sliced:
            continue
        best = max(best, count_points(sliced, max_ext=max_ext)[0])
    return OracleResult("degree", best, "point-sample")
