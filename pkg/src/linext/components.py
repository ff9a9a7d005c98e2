"""Maximal linear subspaces inside the zero set of a system of quadrics.

Two routes are provided.  :func:`split_linear_components` branches on
quadrics of rank at most two; when no such quadric exists in a node it
slices the node down to points, reads off each component as the tangent
space at a point of its top stratum, and peels strata off with truncated
ideal quotients.  :func:`degree_census` only counts: it slices successive
residuals, counts distinct roots, and removes a stratum using forms
interpolated through sampled points, never using tangent spaces.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from math import comb

import numpy as np
from sympy import GF
from sympy.polys.matrices import DomainMatrix

from . import exactla as la
from .errors import (CharTwo, ExtensionTooDeep, NoSplittableElement, NotFiniteUnion,
                     RankTooHigh)
from .field import FieldDesc, extend_quadratic, factor_univariate, residue_field, sqrt
from .groebner import (NormalFormTable, buchberger, colon_truncated, hilbert, saturate)
from .ring import (Poly, Ring, coefficient_matrix, monomial_basis, multiples,
                   polys_from_rows, substitute_linear_many)

log = logging.getLogger(__name__)

DEFAULT_BUDGET = 200
DEFAULT_TOWER_CAP = 5
MAX_INTERP_DEGREE = 5


# ---------------------------------------------------------------------------
# matrices over an arbitrary field, with F_p fast paths


def _kmat(m, K):
    """An F_p matrix (numpy) in the representation used for ``K``."""
    if la.is_numeric(K):
        return np.asarray(m, dtype=np.int64) % K.p
    return [[K.from_int(int(x)) for x in row] for row in np.atleast_2d(m)]


def _coords(X, K):
    """``(rows, cols, degree)`` array of F_p coordinates."""
    if la.is_numeric(K):
        return np.asarray(X, dtype=np.int64)[..., None]
    return np.array([[K.coords(x) for x in row] for row in X], dtype=np.int64).reshape(
        len(X), len(X[0]) if X else 0, K.degree)


def _from_coords(C, K):
    if la.is_numeric(K):
        return C[..., 0] % K.p
    return [[K.from_coords(C[i, j]) for j in range(C.shape[1])] for i in range(C.shape[0])]


def _fp_dot(G, X, K):
    """``G @ X`` for an F_p matrix ``G`` and a matrix ``X`` over ``K``."""
    if la.is_numeric(K):
        return la.matmul(G, X, K)
    C = _coords(X, K)
    out = np.einsum("ab,bcr->acr", np.asarray(G, dtype=np.int64), C) % K.p
    return _from_coords(out, K)


def _is_zero(m, K):
    if la.is_numeric(K):
        return not np.asarray(m).any()
    return all(K.is_zero(x) for row in m for x in row)


def _scale_add(mats, coeffs, K):
    if la.is_numeric(K):
        out = np.zeros_like(mats[0])
        for c, M in zip(coeffs, mats):
            out = (out + int(c) * M) % K.p
        return out
    n, k = la.shape(mats[0])
    out = [[K.zero] * k for _ in range(n)]
    for c, M in zip(coeffs, mats):
        cc = K.from_int(int(c))
        for i in range(n):
            for j in range(k):
                out[i][j] = K.add(out[i][j], K.mul(cc, M[i][j]))
    return out


def _sandwich(C, G, K):
    """``C G C^T``."""
    return la.matmul(la.matmul(C, G, K), la.transpose(C), K)


def _embed_matrix(m, src, dst):
    if src == dst:
        return m
    if la.is_numeric(src):
        return [[dst.embed(int(x), src) for x in row] for row in np.atleast_2d(m)]
    return [[dst.embed(x, src) for x in row] for row in m]


def _rows(m):
    return [list(r) for r in m]


# ---------------------------------------------------------------------------
# quadrics


def gram(q):
    """Symmetric Gram matrix of a quadric with halved off-diagonal entries."""
    ring = q.ring
    f = ring.field
    if f.p == 2:
        raise CharTwo("Gram matrices need an odd characteristic")
    n = ring.nvars
    if la.is_numeric(f):
        G = np.zeros((n, n), dtype=np.int64)
        half = pow(2, -1, f.p)
        for mono, c in q.terms.items():
            i, j = _pair(mono)
            if i == j:
                G[i, i] = c % f.p
            else:
                G[i, j] = G[j, i] = c * half % f.p
        return G
    G = [[f.zero] * n for _ in range(n)]
    half = f.inv(f.from_int(2))
    for mono, c in q.terms.items():
        i, j = _pair(mono)
        if i == j:
            G[i][i] = c
        else:
            G[i][j] = G[j][i] = f.mul(c, half)
    return G


def _pair(mono):
    idx = [i for i, e in enumerate(mono) for _ in range(e)]
    if len(idx) != 2:
        raise ValueError("not a quadric")
    return idx[0], idx[1]


def _quadric(G, ring):
    """Inverse of :func:`gram` over a prime field."""
    p = ring.p
    n = ring.nvars
    terms = {}
    for i in range(n):
        for j in range(i, n):
            c = int(G[i, j]) * (1 if i == j else 2) % p
            if c:
                e = [0] * n
                e[i] += 1
                e[j] += 1
                terms[tuple(e)] = c
    return Poly(ring, terms, check=False)


def quadric_rank(q):
    """``(rank, gram)`` of a quadric."""
    G = gram(q)
    return la.rank(G, q.ring.field), G


def _lead_normalize(v, K):
    """``(v / first nonzero entry, that entry)``."""
    if la.is_numeric(K):
        v = np.asarray(v, dtype=np.int64) % K.p
        c = int(v[np.flatnonzero(v)[0]])
        return v * pow(c, -1, K.p) % K.p, c
    c = next(x for x in v if not K.is_zero(x))
    inv = K.inv(c)
    return [K.mul(x, inv) for x in v], c


def _vec_key(v, K):
    if la.is_numeric(K):
        return tuple(int(x) for x in v)
    return tuple(K.coords(x) for x in v)


def _factor_gram(G, f, cap):
    """Linear factors ``(v1, v2, field)`` of the quadric with Gram matrix ``G``.

    The quadric is ``v1(x) * v2(x)``; ``v1`` is monic and the factor pair is
    sorted by coordinate vector after making both monic.
    """
    R, r, piv = la.rref(G, f)
    if r == 0:
        raise ValueError("zero quadric")
    if r > 2:
        raise RankTooHigh(f"rank {r} quadric does not factor")
    num = la.is_numeric(f)
    get = (lambda i, j: int(G[i, j])) if num else (lambda i, j: G[i][j])
    rows = [R[0], R[1]] if r == 2 else [R[0]]
    if not num:
        rows = [list(x) for x in rows]
    if r == 1:
        c = get(piv[0], piv[0])
        v = rows[0]
        return _normalize_pair(v, v, c, f)
    i1, i2 = piv
    a, b2, c = get(i1, i1), get(i1, i2), get(i2, i2)
    ff = f
    if num:
        a, b, c = f.from_int(a), f.from_int(2 * b2), f.from_int(c)
    else:
        b = f.add(b2, b2)
    # q = a L1^2 + b L1 L2 + c L2^2
    L1, L2 = rows
    if f.is_zero(a):
        l1 = L2
        l2 = _lin(f, [(b, L1), (c, L2)])
        return _normalize_pair(l1, l2, f.one, f)
    disc = f.sub(f.mul(b, b), f.mul(f.from_int(4), f.mul(a, c)))
    if not f.is_square(disc):
        if f.height >= cap:
            raise ExtensionTooDeep(f"splitting needs a tower above height {cap}")
        ff = extend_quadratic(f)
        a, b, c, disc = (ff.embed(x, f) for x in (a, b, c, disc))
        L1 = [ff.embed(int(x) if num else x, f) for x in L1]
        L2 = [ff.embed(int(x) if num else x, f) for x in L2]
    s = sqrt(disc, ff)
    inv2a = ff.inv(ff.add(a, a))
    r1 = ff.mul(ff.sub(s, b), inv2a)
    r2 = ff.mul(ff.neg(ff.add(s, b)), inv2a)
    l1 = _lin(ff, [(ff.one, L1), (ff.neg(r1), L2)])
    l2 = _lin(ff, [(ff.one, L1), (ff.neg(r2), L2)])
    return _normalize_pair(l1, l2, a, ff)


def _lin(f, terms):
    if la.is_numeric(f):
        out = np.zeros(len(terms[0][1]), dtype=np.int64)
        for c, v in terms:
            out = (out + int(c) * np.asarray(v, dtype=np.int64)) % f.p
        return out
    n = len(terms[0][1])
    out = [f.zero] * n
    for c, v in terms:
        out = [f.add(o, f.mul(c, x)) for o, x in zip(out, v)]
    return out


def _normalize_pair(l1, l2, scale, f):
    """Monic factors sorted, with the total scalar moved onto the second."""
    u1, c1 = _lead_normalize(l1, f)
    u2, c2 = _lead_normalize(l2, f)
    if la.is_numeric(f):
        k = int(scale) * c1 * c2 % f.p
    else:
        k = f.mul(f.mul(scale, c1), c2)
    if _vec_key(u2, f) < _vec_key(u1, f):
        u1, u2 = u2, u1
    if la.is_numeric(f):
        return u1, u2 * k % f.p, f
    return u1, [f.mul(k, x) for x in u2], f


def factor_rank2(q, tower_cap=DEFAULT_TOWER_CAP):
    """Split a quadric of rank at most 2 as ``l1 * l2``.

    Returns ``(l1, l2, level)`` where the factors are polynomials over the
    quadratic tower of height ``level`` (0 when they are defined over the
    base field).  ``l1`` is monic, ``l1 <= monic(l2)`` by coordinate vector,
    and any scalar sits on ``l2``.
    """
    f = q.ring.field
    G = gram(q)
    v1, v2, ff = _factor_gram(G, f, tower_cap)
    ring = Ring(ff, q.ring.names)
    return ring.linear_form(v1), ring.linear_form(v2), ff.height


# ---------------------------------------------------------------------------
# components


@dataclass
class LinearComponent:
    """A linear subspace of P^m given by its cutting forms."""

    forms: la.Subspace
    contains_trivial: bool = False
    conjugacy_class: int = 0
    orbit_size: int = 1

    @property
    def field(self):
        return self.forms.field

    @property
    def ambient(self):
        return self.forms.ambient

    @property
    def dimension(self):
        return self.ambient - 1 - self.forms.dim

    @property
    def field_degree(self):
        return self.field.degree

    @property
    def field_level(self):
        """Tower height of the field of the forms; ``None`` when its degree
        over F_p is not a power of two."""
        r = self.field_degree
        return r.bit_length() - 1 if r & (r - 1) == 0 else None

    def points(self):
        return la.right_kernel(self.forms.basis, self.field, cols=self.ambient)

    def key(self):
        return (repr(self.field), tuple(_vec_key(r, self.field) for r in self.forms.rows()))

    def to_json(self):
        K = self.field
        if la.is_numeric(K):
            forms = [[int(x) for x in r] for r in self.forms.rows()]
        else:
            forms = [[list(K.coords(x)) for x in r] for r in self.forms.rows()]
        return {
            "dimension": self.dimension,
            "forms": forms,
            "field_degree": self.field_degree,
            "field_level": self.field_level,
            "field_modulus": list(getattr(K, "modulus", ())) or None,
            "contains_trivial": self.contains_trivial,
            "conjugacy_class": self.conjugacy_class,
            "orbit_size": self.orbit_size,
        }


def _descend(rows, f, ambient):
    """Rewrite RREF rows over the smallest tower level that contains them."""
    if not rows:
        return la.zeros(0, ambient, f), f
    while isinstance(f, FieldDesc) and f.tower:
        half = f.degree // 2
        if any(any(f.coords(x)[half:]) for r in rows for x in r):
            break
        sub = f.below()
        rows = [[sub.from_coords(f.coords(x)[:half]) for x in r] for r in rows]
        f = sub
    if la.is_numeric(f):
        rows = np.asarray(rows, dtype=np.int64).reshape(len(rows), -1)
    return rows, f


def _component_from_points(points, K, ambient):
    """Component with the given point rows (a basis over ``K``)."""
    pts = la.span(points, ambient, K)
    forms = la.right_kernel(pts.basis, K, cols=ambient)
    rows, K2 = _descend(_rows(forms.basis), K, ambient)
    if not len(rows):
        return LinearComponent(la.Subspace(ambient, rows, K2))
    return LinearComponent(la.span(rows, ambient, K2))


def _frobenius(comp):
    K = comp.field
    if la.is_numeric(K):
        return comp
    rows = [[K.frobenius(x) for x in r] for r in comp.forms.rows()]
    return LinearComponent(la.span(rows, comp.ambient, K))


def _common_field(a, b):
    if a == b:
        return a
    if isinstance(a, FieldDesc) and a.is_prime and a.p == b.p:
        return b
    if isinstance(b, FieldDesc) and b.is_prime and a.p == b.p:
        return a
    if isinstance(a, FieldDesc) and isinstance(b, FieldDesc):
        lo, hi = sorted((a, b), key=lambda f: f.height)
        if hi.tower[:lo.height] == lo.tower:
            return hi
    return None


def _basis_mults(K):
    """Matrices of multiplication by each F_p-basis element of ``K``."""
    r = K.degree
    if r == 1:
        return [np.ones((1, 1), dtype=np.int64)]
    basis = [K.from_coords([1 if i == a else 0 for i in range(r)]) for a in range(r)]
    out = []
    for a in basis:
        M = np.zeros((r, r), dtype=np.int64)
        for j, b in enumerate(basis):
            M[:, j] = K.coords(K.mul(a, b))
        out.append(M)
    return out


def _tensor_vanishes(pairs, K1, K2, rng):
    """Whether the elements ``sum_k a_k (x) b_k`` of ``K1 (x) K2`` (one per
    entry of ``pairs``) all vanish in some factor field of the tensor
    product.  Equivalently: some pair of embeddings kills all of them.
    """
    p = K1.p
    r1, r2 = K1.degree, K2.degree
    elems = []
    for terms in pairs:
        T = np.zeros((r1, r2), dtype=np.int64)
        for a, b in terms:
            ca = np.array(K1.coords(a) if not la.is_numeric(K1) else (int(a),), dtype=np.int64)
            cb = np.array(K2.coords(b) if not la.is_numeric(K2) else (int(b),), dtype=np.int64)
            T = (T + np.outer(ca, cb)) % p
        elems.append(T)
    if not any(T.any() for T in elems):
        return True
    C = np.zeros((r1, r2), dtype=np.int64)
    for T in elems:
        C = (C + int(rng.integers(1, p)) * T) % p
    M1, M2 = _basis_mults(K1), _basis_mults(K2)
    # columns: c * (e_c (x) f_d) = M1_c C M2_d^T
    cols = []
    for c in range(r1):
        left = la.matmul(M1[c], C, FieldDesc(p))
        for d in range(r2):
            cols.append(la.matmul(left, M2[d].T, FieldDesc(p)).ravel())
    return la.rank(np.array(cols).T, FieldDesc(p)) < r1 * r2


def _inside(points, K1, forms, K2, rng):
    """Whether the span of ``points`` (over ``K1``) lies in some conjugate of
    the zero set of ``forms`` (over ``K2``)."""
    common = _common_field(K1, K2)
    if common is not None:
        P = _embed_matrix(points, K1, common)
        F = _embed_matrix(forms, K2, common)
        if not len(F) or not len(P):
            return True
        return _is_zero(la.matmul(F, la.transpose(P), common), common)
    pairs = [list(zip(pt, fm)) for pt in points for fm in forms]
    return _tensor_vanishes(pairs, K1, K2, rng)


def component_contains(big, small, rng=None):
    """``small`` inside ``big`` up to Galois conjugacy of ``big``."""
    if small.dimension > big.dimension:
        return False
    rng = rng or np.random.default_rng(0)
    return _inside(_rows(small.points().basis), small.field,
                   _rows(big.forms.basis), big.field, rng)


def _contains_trivial(comp, trivial):
    if trivial is None:
        return False
    return _inside(_rows(trivial.basis), trivial.field, _rows(comp.forms.basis), comp.field,
                   np.random.default_rng(0))


def is_sound(comp, eq):
    """Every quadric in ``eq`` vanishes identically on the component."""
    K = comp.field
    B = comp.points().basis
    if not len(B):
        return True
    for q in eq:
        if q.is_zero():
            continue
        G = gram(q)
        Y = _fp_dot(G, la.transpose(B), K)
        if not _is_zero(la.matmul(B, Y, K), K):
            return False
    return True


def _finalize(raw, trivial, rng):
    """Dedupe, keep maximal components, tag and group conjugates."""
    seen = {}
    for c in raw:
        seen.setdefault(c.key(), c)
    comps = list(seen.values())
    keep = []
    for i, c in enumerate(comps):
        dominated = False
        for j, d in enumerate(comps):
            if i == j or d.dimension < c.dimension:
                continue
            # equal dimensions: the same component in another field
            if d.dimension == c.dimension and (j > i or d.field == c.field):
                continue
            if component_contains(d, c, rng):
                dominated = True
                break
        if not dominated:
            keep.append(c)
    keep.sort(key=lambda c: (-c.dimension, c.field_degree, c.key()))
    keys = {c.key(): idx for idx, c in enumerate(keep)}
    cls = {}
    nxt = 0
    for idx, c in enumerate(keep):
        if idx in cls:
            continue
        orbit = [idx]
        d = _frobenius(c)
        while d.key() != c.key():
            j = keys.get(d.key())
            if j is None:
                raise AssertionError("Frobenius image of a component was not emitted")
            orbit.append(j)
            d = _frobenius(d)
        for j in orbit:
            cls[j] = nxt
        nxt += 1
    sizes = {}
    for j, k in cls.items():
        sizes[k] = sizes.get(k, 0) + 1
    for idx, c in enumerate(keep):
        c.conjugacy_class = cls[idx]
        c.orbit_size = sizes[cls[idx]]
        c.contains_trivial = _contains_trivial(c, trivial)
    return keep


# ---------------------------------------------------------------------------
# zero-dimensional slices


def _charpoly(T, p):
    K = GF(p)
    M = DomainMatrix([[K(int(x)) for x in row] for row in T], T.shape, K)
    return [int(c) % p for c in M.charpoly()]


@dataclass
class PointOrbit:
    """A Galois orbit of points: one representative over ``field``."""

    field: object
    coords: list
    size: int
    multiplicity: int


def zero_dim_points(gens, ring, rng, tries=3):
    """Points of a zero-dimensional projective scheme, grouped in orbits.

    After saturating by a random linear form ``h``, the quotient in a degree
    where the Hilbert function has stabilised carries commuting maps
    ``x_i / h``.  The distinct roots of the characteristic polynomial of a
    generic combination index the points; each irreducible factor gives a
    residue field and a left eigenvector, whose traces under the ``x_i / h``
    maps are the coordinates.
    """
    f = ring.field
    p = f.p
    n = ring.nvars
    gens = [g for g in gens if not g.is_zero()]
    gb = buchberger(gens, ring)
    hd = hilbert(gb)
    if hd.dimension <= 0:
        return []
    if hd.dimension != 1:
        raise NotFiniteUnion(f"slice has projective dimension {hd.dimension - 1}, expected 0")
    h = ring.linear_form(rng.integers(1, p, n))
    sat = saturate(gb, h)
    hs = hilbert(sat)
    if hs.dimension <= 0:
        return []
    deg = hs.degree
    d0 = next(d for d in range(0, 10 * deg + 10) if hs.value(d) == deg)
    A = NormalFormTable(sat, d0)
    B = NormalFormTable(sat, d0 + 1)
    if len(A.std) != deg or len(B.std) != deg:
        raise NotFiniteUnion("quotient did not stabilise at the expected degree")
    Hm = B.shifted(h, A.std).T
    Hinv = la.inverse(Hm, f)
    Ts = [la.matmul(Hinv, B.shifted(x, A.std).T, f) for x in ring.gens]
    best = None
    for _ in range(tries):
        c = rng.integers(0, p, n)
        Tl = np.zeros((deg, deg), dtype=np.int64)
        for ci, T in zip(c, Ts):
            Tl = (Tl + int(ci) * T) % p
        facs = factor_univariate(_charpoly(Tl, p), p)
        distinct = sum(len(g) - 1 for g, _ in facs)
        if best is None or distinct > best[0]:
            best = (distinct, Tl, facs)
        if distinct == deg:
            break
    _, Tl, facs = best
    out = []
    for g, mult in facs:
        r = len(g) - 1
        if r == 1:
            K = f
            theta = (-g[1]) % p
            E = la.left_kernel((Tl - theta * np.eye(deg, dtype=np.int64)) % p, f)
        else:
            K = residue_field(p, g)
            theta = K.gen
            M = _kmat(Tl, K)
            for i in range(deg):
                M[i][i] = K.sub(M[i][i], theta)
            E = la.left_kernel(M, K)
        basis = E.basis
        pivots = [next(j for j, x in enumerate(row) if (x if la.is_numeric(K) else not K.is_zero(x)))
                  for row in basis]
        s = len(pivots)
        inv_s = pow(s, -1, p)
        lam = []
        for T in Ts:
            X = _fp_dot(T.T, la.transpose(basis), K)  # deg x s, columns (w T)^T
            if la.is_numeric(K):
                tr = sum(int(X[pv, i]) for i, pv in enumerate(pivots)) % p
                lam.append(tr * inv_s % p)
            else:
                tr = K.zero
                for i, pv in enumerate(pivots):
                    tr = K.add(tr, X[pv][i])
                lam.append(K.scale(tr, inv_s))
        out.append(PointOrbit(K, lam, r, mult))
    return out


def _conjugates(coords, K):
    out = [coords]
    if la.is_numeric(K):
        return out
    cur = coords
    for _ in range(K.degree - 1):
        cur = [K.frobenius(x) for x in cur]
        out.append(cur)
    return out


def _slice(gb, D, rng):
    """Cut by ``D`` random hyperplanes; returns ``(param matrix, orbits)``."""
    ring = gb.ring
    f = ring.field
    k = ring.nvars
    while True:
        M = la.random_matrix(k, k - D, f, rng)
        if la.rank(M, f) == k - D:
            break
    sub = Ring.standard(f, k - D, prefix="t")
    gens = substitute_linear_many(gb.gens, M, sub)
    orbits = zero_dim_points(gens, sub, rng)
    for o in orbits:
        o.coords = [x[0] for x in _rows(_fp_dot(M, [[c] for c in o.coords], o.field))] \
            if not la.is_numeric(o.field) else \
            [int(x) for x in la.matmul(M, np.asarray(o.coords, dtype=np.int64).reshape(-1, 1), f)[:, 0]]
    return orbits


def interpolate(pieces, ring, e):
    """F_p forms of degree ``e`` vanishing on every piece.

    Each piece is ``(K, rows)``: the span of ``rows`` (over ``K``) and all of
    its conjugates.
    """
    f = ring.field
    n = ring.nvars
    mons = monomial_basis(n, e)
    conds = []
    for K, rows in pieces:
        D = len(rows)
        sring = Ring(K, tuple(f"s{i}" for i in range(D)))
        imgs = [sring.linear_form([rows[k][i] for k in range(D)]) for i in range(n)]
        smons = monomial_basis(D, e)
        sidx = {m: i for i, m in enumerate(smons)}
        r = K.degree
        C = np.zeros((len(smons) * r, len(mons)), dtype=np.int64)
        powers = [[sring.one()] for _ in range(n)]
        for j, m in enumerate(mons):
            val = sring.one()
            for i, ex in enumerate(m):
                while len(powers[i]) <= ex:
                    powers[i].append(powers[i][-1] * imgs[i])
                if ex:
                    val = val * powers[i][ex]
            for sm, c in val.terms.items():
                cs = (int(c),) if la.is_numeric(K) else K.coords(c)
                for t, x in enumerate(cs):
                    C[sidx[sm] * r + t, j] = x
        conds.append(C)
    if not conds:
        return [Poly(ring, {m: 1}) for m in mons]
    ker = la.right_kernel(np.vstack(conds), f, cols=len(mons))
    return polys_from_rows(ker.basis, ring, e) if ker.dim else []


def _point_in(coords, K, comp_rows, Kc, rng):
    """Whether the point lies in some conjugate of the span of ``comp_rows``."""
    forms = la.right_kernel(comp_rows, Kc, cols=len(coords))
    return _inside([coords], K, _rows(forms.basis), Kc, rng)


def _interpolate_upto(pieces, ring, e):
    """Minimal generators, in degrees ``1..e``, of the forms through the pieces."""
    f = ring.field
    J = []
    for d in range(1, e + 1):
        new = interpolate(pieces, ring, d)
        if not new:
            continue
        old = multiples(J, d, ring)
        if old:
            base = la.span(coefficient_matrix(old, d, ring), len(monomial_basis(ring.nvars, d)), f)
            rest = [la.reduce_against(v, base) for v in coefficient_matrix(new, d, ring)]
            rest = [v for v in rest if v.any()]
            if not rest:
                continue
            new = polys_from_rows(la.span(rest, base.ambient, f).basis, ring, d)
        J.extend(new)
    return J


def _residual(gb, J, e):
    """``I`` plus ``(I : J)`` in degrees ``2..e``."""
    extra = colon_truncated(gb, J, list(range(2, e + 1))) if J else []
    return buchberger(list(gb.gens) + extra, gb.ring)


# ---------------------------------------------------------------------------
# peeling by tangent spaces


def _peel(grams, f, rng, max_e=MAX_INTERP_DEGREE):
    """Linear components of the quadrics with the given Gram matrices.

    Returns a list of ``(K, basis rows)`` with every Galois conjugate listed.
    """
    k = grams[0].shape[0]
    ring = Ring.standard(f, k, prefix="z")
    polys = [q for q in (_quadric(G, ring) for G in grams) if not q.is_zero()]
    gb = buchberger(polys, ring)
    Gstack = np.vstack(grams)
    nq = len(grams)
    found = []
    current = gb
    e = 3
    while True:
        hd = hilbert(current)
        if hd.dimension <= 0:
            break
        D = hd.dimension - 1
        new = []
        for orb in _slice(current, D, rng):
            u = orb.coords
            K = orb.field
            if any(_point_in(u, K, rows, Kf, rng) for Kf, rows in found):
                continue
            Jac = _fp_dot(Gstack, [[x] for x in u], K)
            Jac = np.asarray(Jac).reshape(nq, k) if la.is_numeric(K) else \
                [[Jac[q * k + i][0] for i in range(k)] for q in range(nq)]
            T = la.right_kernel(Jac, K, cols=k)
            if T.dim != D + 1:
                raise NotFiniteUnion(
                    f"tangent space of dimension {T.dim - 1} at a point of a "
                    f"{D}-dimensional stratum: not a reduced union of linear spaces")
            comp = _component_from_points(_rows(T.basis), K, k)
            if not is_sound(comp, polys):
                raise NotFiniteUnion(f"{D}-dimensional stratum is not linear")
            new.append((K, _rows(T.basis)))
        if new:
            found.extend(new)
        elif e < max_e:
            e += 1
        else:
            raise NotFiniteUnion(f"could not separate the {D}-dimensional stratum")
        nxt = _residual(gb, _interpolate_upto(found, ring, e), e)
        hn = hilbert(nxt)
        if hn.dimension > hd.dimension:
            raise AssertionError("residual grew")
        current = nxt
    out = []
    for K, rows in found:
        if la.is_numeric(K):
            out.append((K, rows))
            continue
        cur = rows
        for _ in range(K.degree):
            out.append((K, cur))
            cur = [[K.frobenius(x) for x in r] for r in cur]
    return out


# ---------------------------------------------------------------------------
# splitting


class _Ctx:
    def __init__(self, budget, cap, rng, fallback):
        self.budget = budget
        self.cap = cap
        self.rng = rng
        self.fallback = fallback
        self.out = []
        self.nodes = 0
        self.fallbacks = 0


def _branch(f, P, grams, ctx):
    ctx.nodes += 1
    grams = [G for G in grams if not _is_zero(G, f)]
    if not grams:
        ctx.out.append((f, P))
        return
    pick = None
    for G in grams:
        if la.rank(G, f) <= 2:
            pick = G
            break
    if pick is None:
        p = f.p
        for _ in range(ctx.budget):
            coeffs = ctx.rng.integers(0, p, len(grams))
            G = _scale_add(grams, coeffs, f)
            if not _is_zero(G, f) and la.rank(G, f) <= 2:
                pick = G
                break
    if pick is None:
        if ctx.fallback and la.is_numeric(f):
            ctx.fallbacks += 1
            for K, rows in _peel(grams, f, ctx.rng):
                ctx.out.append((K, la.matmul(rows, _embed_matrix(P, f, K), K)
                                if not la.is_numeric(K) else la.matmul(rows, P, f)))
            return
        raise NoSplittableElement(f"no quadric of rank <= 2 among {ctx.budget} combinations")
    v1, v2, ff = _factor_gram(pick, f, ctx.cap)
    if ff != f:
        P = _embed_matrix(P, f, ff)
        grams = [_embed_matrix(G, f, ff) for G in grams]
    k = la.shape(P)[0]
    factors = [v1]
    if la.rank([list(v1), list(v2)] if not la.is_numeric(ff) else np.vstack([v1, v2]), ff) == 2:
        factors.append(v2)
    for v in factors:
        C = la.right_kernel(la.asmat([v], ff) if la.is_numeric(ff) else [list(v)], ff, cols=k).basis
        _branch(ff, la.matmul(C, P, ff), [_sandwich(C, G, ff) for G in grams], ctx)


def _used_variables(eq):
    n = eq[0].ring.nvars
    return [i for i in range(n) if any(m[i] for q in eq for m in q.terms)]


def _cone_points(rows, K, used, n):
    """Rows in used coordinates plus unit vectors for the other coordinates."""
    out = []
    for r in rows:
        v = [K.zero if not la.is_numeric(K) else 0] * n
        for j, i in enumerate(used):
            v[i] = r[j] if not la.is_numeric(K) else int(r[j])
        out.append(v)
    for i in range(n):
        if i not in used:
            v = [K.zero if not la.is_numeric(K) else 0] * n
            v[i] = K.one if not la.is_numeric(K) else 1
            out.append(v)
    return out


def split_linear_components(eq, trivial=None, budget=DEFAULT_BUDGET,
                            tower_cap=DEFAULT_TOWER_CAP, seed=0, fallback=True, ring=None):
    """Maximal linear subspaces of ``V(eq)``, every Galois conjugate listed.

    ``trivial`` is a Subspace of points used to set ``contains_trivial``.
    Coordinates not occurring in ``eq`` are split off first, since ``V(eq)``
    is a cone over them.  ``ring`` is only needed when ``eq`` is empty.
    """
    ring = ring or (eq[0].ring if eq else None)
    eq = [q for q in eq if not q.is_zero()]
    if not eq:
        n = ring.nvars
        f = ring.field
        c = LinearComponent(la.Subspace(n, la.zeros(0, n, f), f), orbit_size=1)
        c.contains_trivial = trivial is not None
        return [c]
    f = ring.field
    if f.p == 2:
        raise CharTwo("splitting needs an odd characteristic")
    n = ring.nvars
    used = _used_variables(eq)
    k = len(used)
    grams = [gram(q)[np.ix_(used, used)] for q in eq]
    ctx = _Ctx(budget, tower_cap, np.random.default_rng(seed), fallback)
    _branch(f, np.eye(k, dtype=np.int64), grams, ctx)
    raw = []
    for K, P in ctx.out:
        pts = _cone_points(_rows(P), K, used, n)
        if not pts:
            continue
        raw.append(_component_from_points(pts, K, n))
    log.debug("split: %d nodes, %d leaves, %d fallbacks", ctx.nodes, len(raw), ctx.fallbacks)
    return _finalize(raw, trivial, np.random.default_rng(seed + 1))


def zero_divisor_split(gb, f):
    """``(I : f^inf, I + (f))``: ``V(I)`` is the union of the two zero sets."""
    return saturate(gb, f), buchberger(list(gb.gens) + [f], gb.ring)


def strata_counts(components):
    """``{dimension: number of components}``."""
    out = {}
    for c in components:
        out[c.dimension] = out.get(c.dimension, 0) + 1
    return dict(sorted(out.items(), reverse=True))


# ---------------------------------------------------------------------------
# census


class Census(dict):
    """``{dimension: (geometric count, degree of the stratum)}``."""

    def counts(self):
        return {d: c for d, (c, _) in self.items()}

    def to_json(self):
        return {str(d): {"count": c, "degree": g} for d, (c, g) in sorted(self.items(), reverse=True)}


def _vanishes(J, coords, K):
    return all(K.is_zero(g.evaluate(coords, K)) if not la.is_numeric(K)
               else g.evaluate([int(x) for x in coords]) == 0 for g in J)


def degree_census(eq, seed=0, max_e=MAX_INTERP_DEGREE, extra_slices=2, ring=None):
    """Count the linear components of ``V(eq)`` by dimension, by slicing.

    For each stratum from the top down: a generic slice of complementary
    dimension meets the stratum in one point per component, and points on
    the part already removed are recognised by the interpolated forms.
    Further slices supply enough points on the stratum to interpolate forms
    through it, and the stratum is removed with a truncated quotient.
    """
    ring0 = ring or (eq[0].ring if eq else None)
    eq = [q for q in eq if not q.is_zero()]
    if not eq:
        return Census({ring0.nvars - 1: (1, 1)})
    f = ring0.field
    used = _used_variables(eq)
    k = len(used)
    shift = ring0.nvars - k
    ring = Ring.standard(f, k, prefix="z")
    polys = [_quadric(gram(q)[np.ix_(used, used)], ring) for q in eq]
    rng = np.random.default_rng(seed)
    gb = buchberger(polys, ring)
    current = gb
    census = Census()
    samples = []  # (K, [point]) on strata already counted
    J = []
    e = 3

    def fresh(orbits):
        if not samples:
            return orbits
        return [o for o in orbits if not _vanishes(J, o.coords, o.field)]

    while True:
        hd = hilbert(current)
        if hd.dimension <= 0:
            break
        D = hd.dimension - 1
        first = fresh(_slice(current, D, rng))
        if not first:
            if e >= max_e:
                raise NotFiniteUnion(f"could not separate the {D}-dimensional stratum")
            e += 1
            J = _interpolate_upto(samples, ring, e)
            current = _residual(gb, J, e)
            continue
        count = sum(o.size for o in first)
        degree = sum(o.size * o.multiplicity for o in first)
        if count != degree:
            raise NotFiniteUnion(f"{D}-dimensional stratum is not reduced")
        if D + shift in census:
            raise NotFiniteUnion(f"stratum of dimension {D + shift} was not removed")
        census[D + shift] = (count, degree)
        need = comb(D + e, e) + extra_slices if D else 1
        pts = list(first)
        for _ in range(need - 1):
            more = fresh(_slice(current, D, rng))
            if sum(o.size for o in more) != count:
                raise NotFiniteUnion(f"{D}-dimensional stratum count is unstable")
            pts.extend(more)
        samples.extend((o.field, [o.coords]) for o in pts)
        J = _interpolate_upto(samples, ring, e)
        nxt = _residual(gb, J, e)
        if hilbert(nxt).dimension > hd.dimension:
            raise AssertionError("residual grew")
        current = nxt
    return census
