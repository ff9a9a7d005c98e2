"""Linear strands and Betti tables by graded linear algebra."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from . import exactla as la
from .errors import DegreeMismatch, NoLinearStrand, NotMinimal
from .ring import (PolyMatrix, coefficient_matrix, monomial_basis, monomial_index,
                   multiples, substitute_linear)


def linear_syzygies(m):
    """All linear relations among the columns of ``m``.

    Returns ``s`` with ``m * s = 0`` whose columns are a basis of the linear
    syzygies: the right kernel of the coefficient matrix of ``x_l * column_j``.
    """
    ring = m.ring
    f = ring.field
    n = ring.nvars
    if len(set(m.coldeg)) > 1:
        raise DegreeMismatch("columns must share one degree shift")
    ncols = m.cols
    # equation blocks: row i, monomials of degree deg(entry)+1
    offsets, total = [], 0
    degs = []
    for i in range(m.rows):
        d = m.coldeg[0] - m.rowdeg[i] + 1
        degs.append(d)
        offsets.append(total)
        total += len(monomial_basis(n, d))
    A = np.zeros((total, ncols * n), dtype=np.int64)
    for i, row in enumerate(m.entries):
        idx = monomial_index(n, degs[i])
        for j, e in enumerate(row):
            for mono, c in e.terms.items():
                for ell in range(n):
                    mm = list(mono)
                    mm[ell] += 1
                    A[offsets[i] + idx[tuple(mm)], j * n + ell] = c
    ker = la.right_kernel(A, f, cols=ncols * n)
    cols = []
    for v in ker.rows():
        cols.append([ring.linear_form(v[j * n:(j + 1) * n]) for j in range(ncols)])
    ents = [[cols[k][j] for k in range(len(cols))] for j in range(ncols)]
    coldeg = m.coldeg[0] + 1
    return PolyMatrix(ring, ents, list(m.coldeg), [coldeg] * len(cols), check=False)


@dataclass
class ResolutionSlice:
    """Generator row and the two linear differentials after it."""

    phi1: PolyMatrix
    phi2: PolyMatrix
    phi3: PolyMatrix

    @property
    def ranks(self):
        return (self.phi1.cols, self.phi2.cols, self.phi3.cols)

    @property
    def ring(self):
        return self.phi1.ring

    @property
    def degree(self):
        return self.phi1.coldeg[0]


def check_minimal(gens):
    degs = {g.degree for g in gens if not g.is_zero()}
    if len(degs) != 1 or any(g.is_zero() for g in gens):
        raise NotMinimal(f"generators must be nonzero of one degree, got {sorted(degs)}")
    d = degs.pop()
    ring = gens[0].ring
    if la.rank(coefficient_matrix(gens, d, ring), ring.field) != len(gens):
        raise NotMinimal("generators are linearly dependent")
    return d


def resolution_slice(gens):
    """``phi1`` (generators), ``phi2`` and ``phi3`` of the linear strand."""
    check_minimal(gens)
    ring = gens[0].ring
    phi1 = PolyMatrix.row(ring, list(gens))
    phi2 = linear_syzygies(phi1)
    if phi2.cols == 0:
        raise NoLinearStrand("no linear first syzygies")
    phi3 = linear_syzygies(phi2)
    if phi3.cols == 0:
        raise NoLinearStrand("no linear second syzygies")
    return ResolutionSlice(phi1, phi2, phi3)


# ---------------------------------------------------------------------------
# Betti tables


class BettiTable(dict):
    """``{(i, j): beta_ij}`` with only nonzero entries stored."""

    def rows(self):
        if not self:
            return []
        top = max(j - i for i, j in self)
        width = max(i for i, _ in self) + 1
        return [[self.get((i, i + r), 0) for i in range(width)] for r in range(top + 1)]

    def row(self, r):
        width = max(i for i, _ in self) + 1 if self else 0
        return [self.get((i, i + r), 0) for i in range(width)]

    def __str__(self):
        rows = self.rows()
        if not rows:
            return "(empty)"
        width = len(rows[0])
        cells = [[str(v) if v else "." for v in row] for row in rows]
        w = max(len(c) for row in cells for c in row)
        head = "    " + " ".join(str(i).rjust(w) for i in range(width))
        lines = [head, "-" * len(head)]
        for r, row in enumerate(cells):
            lines.append(f"{r:>2}: " + " ".join(c.rjust(w) for c in row))
        return "\n".join(lines)

    def to_json(self):
        return {"rows": self.rows()}


class GradedQuotient:
    """Graded pieces ``(S/I)_k`` with multiplication maps, by linear algebra."""

    def __init__(self, gens, ring):
        self.ring = ring
        self.gens = [g for g in gens if not g.is_zero()]
        self.f = ring.field
        self._pieces = {}

    def piece(self, k):
        """``(standard monomials, projection)``: projection sends a coefficient
        vector over all degree-k monomials to coordinates in ``(S/I)_k``."""
        if k in self._pieces:
            return self._pieces[k]
        n = self.ring.nvars
        p = self.f.p
        mons = monomial_basis(n, k)
        if k < 0:
            res = ([], np.zeros((0, 0), dtype=np.int64))
            self._pieces[k] = res
            return res
        rows = multiples(self.gens, k, self.ring)
        if rows:
            R, r, piv = la.rref(coefficient_matrix(rows, k, self.ring), self.f)
            R = R[:r]
        else:
            R, r, piv = np.zeros((0, len(mons)), dtype=np.int64), 0, []
        pivset = set(piv)
        std = [c for c in range(len(mons)) if c not in pivset]
        proj = np.zeros((len(mons), len(std)), dtype=np.int64)
        for t, c in enumerate(std):
            proj[c, t] = 1
        for i, c in enumerate(piv):
            proj[c] = (-R[i, std]) % p
        res = ([mons[c] for c in std], proj)
        self._pieces[k] = res
        return res

    def dim(self, k):
        return len(self.piece(k)[0])

    def mult(self, ell, k):
        """Matrix of multiplication by ``x_ell`` from ``(S/I)_k`` to ``(S/I)_{k+1}``."""
        std, _ = self.piece(k)
        std1, proj1 = self.piece(k + 1)
        idx = monomial_index(self.ring.nvars, k + 1)
        out = np.zeros((len(std1), len(std)), dtype=np.int64)
        for t, m in enumerate(std):
            mm = list(m)
            mm[ell] += 1
            out[:, t] = proj1[idx[tuple(mm)]]
        return out


def _koszul_map(A, i, k):
    """Koszul differential ``L^i V (x) A_k -> L^{i-1} V (x) A_{k+1}``."""
    n = A.ring.nvars
    p = A.f.p
    src = list(combinations(range(n), i))
    dst = {s: t for t, s in enumerate(combinations(range(n), i - 1))}
    a, b = A.dim(k), A.dim(k + 1)
    M = np.zeros((len(dst) * b, len(src) * a), dtype=np.int64)
    if a == 0 or b == 0:
        return M
    mults = [A.mult(ell, k) for ell in range(n)]
    for s_idx, s in enumerate(src):
        for pos, ell in enumerate(s):
            sign = 1 if pos % 2 == 0 else p - 1
            t = dst[s[:pos] + s[pos + 1:]]
            M[t * b:(t + 1) * b, s_idx * a:(s_idx + 1) * a] = (
                M[t * b:(t + 1) * b, s_idx * a:(s_idx + 1) * a] + sign * mults[ell]) % p
    return M


def koszul_betti(gens, ring, max_row):
    """Betti numbers of ``S/I`` from Koszul homology, rows ``0..max_row``."""
    A = GradedQuotient(gens, ring)
    n = ring.nvars
    f = ring.field
    table = BettiTable()
    ranks = {}

    def rk(i, k):
        # rank of the differential out of L^i (x) A_k
        if i <= 0 or i > n or k < 0:
            return 0
        if (i, k) not in ranks:
            M = _koszul_map(A, i, k)
            ranks[(i, k)] = la.rank(M, f) if M.size else 0
        return ranks[(i, k)]

    from math import comb
    for r in range(max_row + 1):
        for i in range(n + 1):
            dim_c = comb(n, i) * A.dim(r)
            if dim_c == 0:
                continue
            ker = dim_c - rk(i, r)
            im = rk(i + 1, r - 1)
            b = ker - im
            if b:
                table[(i, i + r)] = b
    return table


def betti_table(gens, reg_bound, ring=None, method="auto", seed=0):
    """Graded Betti numbers of ``S/I``.

    ``method="koszul"`` works over the full ring with graded pieces up to
    ``reg_bound`` (rows ``0..reg_bound-1``).  ``"artinian"`` first cuts by
    general linear forms, checks via Hilbert numerators that they form a
    regular sequence, and runs the Koszul computation on the Artinian
    reduction.  ``"auto"`` picks ``artinian`` for more than seven variables.
    """
    gens = [g for g in gens if not g.is_zero()]
    ring = ring or (gens[0].ring if gens else None)
    if method == "auto":
        method = "artinian" if ring.nvars > 7 else "koszul"
    if method == "koszul" or not gens:
        return koszul_betti(gens, ring, reg_bound - 1)
    reduced = artinian_reduction(gens, ring, seed=seed)
    if reduced is None:
        return koszul_betti(gens, ring, reg_bound - 1)
    rgens, rring, top = reduced
    return koszul_betti(rgens, rring, top)


def artinian_reduction(gens, ring, seed=0):
    """Cut ``S/I`` down to an Artinian ring by general linear forms.

    Returns ``(gens, ring, socle_degree)`` or ``None`` if the random forms
    are not a regular sequence (``S/I`` not Cohen-Macaulay, or bad luck).
    """
    from .groebner import buchberger, hilbert
    from .ring import Ring
    gb = buchberger(gens, ring)
    h = hilbert(gb)
    if h.dimension <= 0:
        return list(gb.gens), ring, len(h.reduced) - 1
    n = ring.nvars
    c = n - h.dimension
    rng = np.random.default_rng(seed)
    f = ring.field
    # random x = M z with the last `dimension` z's set to zero
    M = la.random_invertible(n, f, rng)
    sub = Ring.standard(f, c, prefix="z")
    images = [sub.linear_form(M[i, :c]) for i in range(n)]
    rgens = [substitute_linear(g, images, sub) for g in gens]
    rgens = [g for g in rgens if not g.is_zero()]
    rgb = buchberger(rgens, sub)
    rh = hilbert(rgb)
    if rh.dimension != 0 or tuple(rh.reduced) != tuple(h.reduced):
        return None
    return list(rgb.gens), sub, len(rh.reduced) - 1
