"""Homogeneous polynomials and graded matrices of forms.

Monomials are exponent tuples.  The global monomial order is graded reverse
lexicographic with ``x0 > x1 > ... > xn``; :func:`grevlex_key` sorts
ascending in that order, and :func:`monomial_basis` lists monomials from the
largest down.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations_with_replacement
from math import comb

import numpy as np

from . import exactla as la
from .errors import (ArityMismatch, DegreeMismatch, NotHomogeneous, NotLinear,
                     ParseError, ShapeMismatch)
from .field import FieldDesc


def grevlex_key(e):
    return (sum(e), tuple(-x for x in reversed(e)))


@lru_cache(maxsize=None)
def _monomials(n, d):
    out = []
    for combo in combinations_with_replacement(range(n), d):
        e = [0] * n
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    out.sort(key=grevlex_key, reverse=True)
    return tuple(out)


@lru_cache(maxsize=None)
def _monomial_index(n, d):
    return {m: i for i, m in enumerate(_monomials(n, d))}


def monomial_index(n, d):
    return _monomial_index(n, d)


@dataclass(frozen=True)
class Ring:
    """Polynomial ring ``field[names]``."""

    field: object
    names: tuple

    def __post_init__(self):
        if len(self.names) < 1:
            raise ValueError("a ring needs at least one variable")
        if len(set(self.names)) != len(self.names):
            raise ValueError("variable names must be distinct")

    @property
    def nvars(self):
        return len(self.names)

    @property
    def p(self):
        return self.field.p

    def var(self, i):
        e = [0] * self.nvars
        e[i] = 1
        return Poly(self, {tuple(e): self.field.one})

    @property
    def gens(self):
        return [self.var(i) for i in range(self.nvars)]

    def zero(self):
        return Poly(self, {})

    def one(self):
        return Poly(self, {(0,) * self.nvars: self.field.one})

    def linear_form(self, coeffs):
        """Linear form sum c_i x_i from a coefficient vector."""
        f = self.field
        terms = {}
        for i, c in enumerate(coeffs):
            c = c if not isinstance(c, (np.integer,)) else int(c)
            if is_numeric_field(f):
                c = int(c) % f.p
            if not f.is_zero(c):
                e = [0] * self.nvars
                e[i] = 1
                terms[tuple(e)] = c
        return Poly(self, terms)

    def from_vector(self, vec, d):
        """Form of degree ``d`` from coordinates in :func:`monomial_basis` order."""
        f = self.field
        mons = _monomials(self.nvars, d)
        terms = {}
        for m, c in zip(mons, vec):
            c = int(c) if is_numeric_field(f) else c
            if not f.is_zero(c):
                terms[m] = c
        return Poly(self, terms, check=False)

    def with_field(self, field):
        return Ring(field, self.names)

    @classmethod
    def standard(cls, field, n, prefix="x"):
        return cls(field, tuple(f"{prefix}{i}" for i in range(n)))


def is_numeric_field(f):
    return isinstance(f, FieldDesc) and f.is_prime


class Poly:
    """Homogeneous polynomial: map from exponent tuple to nonzero coefficient."""

    __slots__ = ("ring", "terms", "degree")

    def __init__(self, ring, terms, check=True):
        self.ring = ring
        f = ring.field
        if check:
            terms = {tuple(m): c for m, c in terms.items() if not f.is_zero(c)}
        self.terms = terms
        if terms:
            degs = {sum(m) for m in terms}
            if len(degs) != 1:
                raise NotHomogeneous(f"mixed degrees {sorted(degs)}")
            self.degree = degs.pop()
        else:
            self.degree = None

    # -- basics ------------------------------------------------------------
    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self.terms
        return isinstance(other, Poly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        return format_poly(self)

    def coeff(self, m):
        return self.terms.get(tuple(m), self.ring.field.zero)

    def lead(self):
        """Leading monomial in grevlex."""
        return max(self.terms, key=grevlex_key)

    def monic(self):
        if not self.terms:
            return self
        f = self.ring.field
        c = f.inv(self.terms[self.lead()])
        return self.scale(c)

    def scale(self, c):
        f = self.ring.field
        if f.is_zero(c):
            return self.ring.zero()
        return Poly(self.ring, {m: f.mul(v, c) for m, v in self.terms.items()}, check=False)

    # -- arithmetic --------------------------------------------------------
    def _combine(self, other, sign):
        f = self.ring.field
        out = dict(self.terms)
        for m, c in other.terms.items():
            if m in out:
                v = f.add(out[m], c) if sign > 0 else f.sub(out[m], c)
                if f.is_zero(v):
                    del out[m]
                else:
                    out[m] = v
            else:
                out[m] = c if sign > 0 else f.neg(c)
        return Poly(self.ring, out, check=False)

    def __add__(self, other):
        if isinstance(other, int) and other == 0:
            return self
        return self._combine(other, 1)

    __radd__ = __add__

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        f = self.ring.field
        return Poly(self.ring, {m: f.neg(c) for m, c in self.terms.items()}, check=False)

    def __mul__(self, other):
        f = self.ring.field
        if not isinstance(other, Poly):
            return self.scale(f.from_int(other) if isinstance(other, (int, np.integer)) else other)
        if not self.terms or not other.terms:
            return self.ring.zero()
        out = {}
        if is_numeric_field(f):
            p = f.p
            for m1, c1 in self.terms.items():
                for m2, c2 in other.terms.items():
                    m = tuple(a + b for a, b in zip(m1, m2))
                    out[m] = (out.get(m, 0) + c1 * c2) % p
            return Poly(self.ring, {m: c for m, c in out.items() if c}, check=False)
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                v = f.mul(c1, c2)
                out[m] = f.add(out[m], v) if m in out else v
        return Poly(self.ring, {m: c for m, c in out.items() if not f.is_zero(c)}, check=False)

    __rmul__ = __mul__

    def __pow__(self, k):
        out = self.ring.one()
        for _ in range(k):
            out = out * self
        return out

    def evaluate(self, point, field=None):
        """Value at a point given as a sequence of field elements."""
        f = field or self.ring.field
        total = f.zero
        for m, c in self.terms.items():
            v = c if f == self.ring.field else f.embed(c, self.ring.field)
            for x, e in zip(point, m):
                if e:
                    v = f.mul(v, f.pow(x, e))
            total = f.add(total, v)
        return total

    def variables(self):
        used = set()
        for m in self.terms:
            used.update(i for i, e in enumerate(m) if e)
        return sorted(used)

    def to_vector(self):
        """Coordinates in :func:`monomial_basis` order of its degree."""
        idx = _monomial_index(self.ring.nvars, self.degree)
        f = self.ring.field
        if is_numeric_field(f):
            v = np.zeros(len(idx), dtype=np.int64)
            for m, c in self.terms.items():
                v[idx[m]] = c
            return v
        v = [f.zero] * len(idx)
        for m, c in self.terms.items():
            v[idx[m]] = c
        return v


# ---------------------------------------------------------------------------
# graded bases and coefficient matrices


def monomial_basis(ring, d):
    """Monomials of degree ``d`` from largest to smallest in grevlex."""
    if d < 0:
        raise ValueError("degree must be nonnegative")
    n = ring if isinstance(ring, int) else ring.nvars
    return list(_monomials(n, d))


def num_monomials(n, d):
    return comb(n - 1 + d, d) if d >= 0 else 0


def coefficient_matrix(polys, d, ring=None):
    """Rows are the polynomials, columns the degree-``d`` monomial basis."""
    ring = ring or (polys[0].ring if polys else None)
    if ring is None:
        raise ValueError("ring required for an empty list")
    idx = _monomial_index(ring.nvars, d)
    f = ring.field
    if is_numeric_field(f):
        mat = np.zeros((len(polys), len(idx)), dtype=np.int64)
    else:
        mat = [[f.zero] * len(idx) for _ in polys]
    for i, q in enumerate(polys):
        if q.is_zero():
            continue
        if q.degree != d:
            raise DegreeMismatch(f"polynomial of degree {q.degree} where {d} expected")
        for m, c in q.terms.items():
            mat[i][idx[m]] = c
    return mat


def polys_from_rows(mat, ring, d):
    return [ring.from_vector(row, d) for row in mat]


def span_basis(polys, ring=None):
    """Canonical RREF basis of the span of forms of one degree."""
    polys = [q for q in polys if not q.is_zero()]
    if not polys:
        return []
    ring = ring or polys[0].ring
    d = polys[0].degree
    r, k, _ = la.rref(coefficient_matrix(polys, d, ring), ring.field)
    return polys_from_rows(r[:k], ring, d)


def multiples(polys, d, ring):
    """All monomial multiples of the given forms landing in degree ``d``."""
    out = []
    for q in polys:
        if q.is_zero() or q.degree > d:
            continue
        for m in _monomials(ring.nvars, d - q.degree):
            out.append(_shift(q, m))
    return out


def _shift(q, m):
    return Poly(q.ring, {tuple(a + b for a, b in zip(k, m)): c for k, c in q.terms.items()},
                check=False)


# ---------------------------------------------------------------------------
# substitution


def substitute_linear(q, images, target=None):
    """Replace variable ``i`` by the linear form ``images[i]``."""
    if len(images) != q.ring.nvars:
        raise ArityMismatch(f"{len(images)} images for {q.ring.nvars} variables")
    target = target or next((im.ring for im in images if isinstance(im, Poly)), q.ring)
    for im in images:
        if not im.is_zero() and im.degree != 1:
            raise NotLinear("substitution images must be linear")
    f = target.field
    if q.is_zero():
        return target.zero()
    src_f = q.ring.field
    lift = (lambda c: c) if src_f == f else (lambda c: f.embed(c, src_f))
    powers = {}

    def power(i, e):
        key = (i, e)
        if key not in powers:
            powers[key] = images[i] ** e if e else target.one()
        return powers[key]

    total = target.zero()
    for m, c in q.terms.items():
        term = Poly(target, {(0,) * target.nvars: lift(c)}, check=False)
        for i, e in enumerate(m):
            if e:
                term = term * power(i, e)
        total = total + term
    return total


@lru_cache(maxsize=None)
def monomial_array(n, d):
    """Exponent vectors of :func:`monomial_basis` as an ``int64`` array."""
    return np.array(_monomials(n, d), dtype=np.int64).reshape(-1, n)


def _first_var_parent(n, d):
    """For each degree-d monomial: its first variable and the index of the quotient."""
    mons = monomial_array(n, d)
    first = np.argmax(mons > 0, axis=1)
    parents = mons.copy()
    parents[np.arange(len(mons)), first] -= 1
    idx = _monomial_index(n, d - 1)
    return first, np.array([idx[tuple(r)] for r in parents], dtype=np.int64)


@lru_cache(maxsize=None)
def _times_variable(n, d):
    """``out[j][t]``: index in degree ``d+1`` of monomial ``t`` times ``x_j``."""
    mons = monomial_array(n, d)
    idx = _monomial_index(n, d + 1)
    out = []
    for j in range(n):
        m = mons.copy()
        m[:, j] += 1
        out.append(np.array([idx[tuple(r)] for r in m], dtype=np.int64))
    return out


def substitution_matrix(M, d, p):
    """Degree-``d`` part of the substitution ``x_i -> sum_j M[i, j] z_j``.

    Row ``s`` holds the coefficients (in the degree-``d`` basis of the
    ``z`` ring) of the image of the ``s``-th monomial in ``x``.
    """
    M = np.asarray(M, dtype=np.int64) % p
    n, k = M.shape
    V = np.ones((1, 1), dtype=np.int64)
    for deg in range(1, d + 1):
        first, parent = _first_var_parent(n, deg)
        P = V[parent]
        shifts = _times_variable(k, deg - 1)
        out = np.zeros((len(first), len(monomial_basis(k, deg))), dtype=np.int64)
        for j in range(k):
            out[:, shifts[j]] = (out[:, shifts[j]] + M[first, j][:, None] * P) % p
        V = out
    return V


def substitute_linear_many(polys, M, target):
    """:func:`substitute_linear` for many homogeneous polynomials over F_p at once,
    with ``x_i -> sum_j M[i, j] z_j``."""
    p = target.p
    by_deg = {}
    for i, q in enumerate(polys):
        if not q.is_zero():
            by_deg.setdefault(q.degree, []).append(i)
    out = [target.zero() for _ in polys]
    from . import exactla as la
    for d, idx in by_deg.items():
        C = coefficient_matrix([polys[i] for i in idx], d)
        R = la.matmul(C, substitution_matrix(M, d, p), target.field)
        for i, row in zip(idx, R):
            out[i] = target.from_vector(row, d)
    return out


def change_field(q, ring):
    """Coerce ``q`` into ``ring`` over an extension of its field."""
    src, dst = q.ring.field, ring.field
    if src == dst:
        return Poly(ring, dict(q.terms), check=False)
    return Poly(ring, {m: dst.embed(c, src) for m, c in q.terms.items()}, check=False)


# ---------------------------------------------------------------------------
# matrices of forms


class PolyMatrix:
    """Matrix of forms with row and column degree shifts.

    Entry ``(i, j)`` is zero or homogeneous of degree ``coldeg[j] - rowdeg[i]``.
    """

    def __init__(self, ring, entries, rowdeg, coldeg, check=True):
        self.ring = ring
        self.entries = [list(r) for r in entries]
        self.rowdeg = list(rowdeg)
        self.coldeg = list(coldeg)
        if check:
            for i, row in enumerate(self.entries):
                if len(row) != len(self.coldeg):
                    raise ShapeMismatch("ragged matrix")
                for j, e in enumerate(row):
                    if not e.is_zero() and e.degree != self.coldeg[j] - self.rowdeg[i]:
                        raise DegreeMismatch(f"entry ({i},{j}) has degree {e.degree}")

    @property
    def rows(self):
        return len(self.rowdeg)

    @property
    def cols(self):
        return len(self.coldeg)

    @property
    def shape(self):
        return (self.rows, self.cols)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def is_zero(self):
        return all(e.is_zero() for row in self.entries for e in row)

    def __eq__(self, other):
        return (isinstance(other, PolyMatrix) and self.shape == other.shape
                and all(a == b for ra, rb in zip(self.entries, other.entries) for a, b in zip(ra, rb)))

    def transpose(self):
        ents = [[self.entries[i][j] for i in range(self.rows)] for j in range(self.cols)]
        return PolyMatrix(self.ring, ents, [-d for d in self.coldeg], [-d for d in self.rowdeg],
                          check=False)

    def column(self, j):
        return [self.entries[i][j] for i in range(self.rows)]

    def __repr__(self):
        body = "\n".join("  [" + ", ".join(str(e) for e in row) + "]" for row in self.entries)
        return f"PolyMatrix {self.rows}x{self.cols} over {self.ring.names}\n{body}"

    @classmethod
    def row(cls, ring, polys):
        d = next((q.degree for q in polys if not q.is_zero()), 0)
        return cls(ring, [polys], [0], [d] * len(polys))

    @classmethod
    def identity(cls, ring, degs):
        ents = [[ring.one() if i == j else ring.zero() for j in range(len(degs))]
                for i in range(len(degs))]
        return cls(ring, ents, degs, degs)


def matmul_poly(a, b):
    """Product of graded matrices; the shift of ``a``'s columns must match ``b``'s rows."""
    if a.cols != b.rows:
        raise ShapeMismatch(f"{a.shape} times {b.shape}")
    if a.cols and any(x != y for x, y in zip(a.coldeg, b.rowdeg)):
        raise ShapeMismatch("degree shifts do not match")
    ring = a.ring
    out = [[ring.zero() for _ in range(b.cols)] for _ in range(a.rows)]
    for i in range(a.rows):
        for k in range(a.cols):
            x = a.entries[i][k]
            if x.is_zero():
                continue
            for j in range(b.cols):
                y = b.entries[k][j]
                if not y.is_zero():
                    out[i][j] = out[i][j] + x * y
    return PolyMatrix(ring, out, a.rowdeg, b.coldeg, check=False)


def variable_slices(m):
    """Scalar matrices ``Phi_l`` with ``m = sum_l x_l Phi_l`` for a linear ``m``."""
    ring = m.ring
    n = ring.nvars
    f = ring.field
    numeric = is_numeric_field(f)
    out = [la.zeros(m.rows, m.cols, f) for _ in range(n)]
    for i, row in enumerate(m.entries):
        for j, e in enumerate(row):
            if e.is_zero():
                continue
            if e.degree != 1:
                raise NotLinear(f"entry ({i},{j}) has degree {e.degree}")
            for mono, c in e.terms.items():
                ell = mono.index(1)
                out[ell][i][j] = c
    if numeric:
        return [np.asarray(s, dtype=np.int64) for s in out]
    return out


def from_slices(ring, slices, rowdeg=None, coldeg=None):
    """Reassemble ``sum_l x_l Phi_l``; the inverse of :func:`variable_slices`."""
    rows, cols = la.shape(slices[0])
    ents = []
    for i in range(rows):
        row = []
        for j in range(cols):
            row.append(ring.linear_form([s[i][j] for s in slices]))
        ents.append(row)
    rowdeg = rowdeg if rowdeg is not None else [0] * rows
    coldeg = coldeg if coldeg is not None else [1] * cols
    return PolyMatrix(ring, ents, rowdeg, coldeg, check=False)


# ---------------------------------------------------------------------------
# text format:  c*x0^a0*x1^a1 + ...

_TERM = re.compile(r"\s*([+-])?\s*([^+-]+)")


def format_poly(q):
    if q.is_zero():
        return "0"
    f = q.ring.field
    names = q.ring.names
    parts = []
    for m in sorted(q.terms, key=grevlex_key, reverse=True):
        c = q.terms[m]
        factors = []
        for name, e in zip(names, m):
            if e == 1:
                factors.append(name)
            elif e > 1:
                factors.append(f"{name}^{e}")
        if is_numeric_field(f):
            cs = str(c)
            if c == 1 and factors:
                body = "*".join(factors)
            else:
                body = "*".join([cs] + factors)
        else:
            body = "*".join([f"[{','.join(map(str, f.coords(c)))}]"] + factors)
        parts.append(body)
    return " + ".join(parts)


def parse_poly(text, ring, line=None):
    """Parse the text format over a prime field ring."""
    f = ring.field
    names = {n: i for i, n in enumerate(ring.names)}
    s = text.strip()
    if not s:
        raise ParseError("empty polynomial", line, 1)
    terms = {}
    pos = 0
    first = True
    while pos < len(s):
        mt = _TERM.match(s, pos)
        if not mt or (mt.group(1) is None and not first):
            raise ParseError(f"cannot parse near {s[pos:pos + 10]!r}", line, pos + 1)
        sign = -1 if mt.group(1) == "-" else 1
        body = mt.group(2).strip()
        col = mt.start(2) + 1
        coeff = 1
        e = [0] * ring.nvars
        for factor in body.split("*"):
            factor = factor.strip()
            if not factor:
                raise ParseError("empty factor", line, col)
            if factor.isdigit():
                coeff *= int(factor)
                continue
            base, _, exp = factor.partition("^")
            base = base.strip()
            if base not in names:
                raise ParseError(f"unknown variable {base!r}", line, col + body.find(factor))
            if exp:
                exp = exp.strip()
                if not exp.isdigit():
                    raise ParseError(f"malformed exponent {exp!r}",
                                     line, col + body.find(factor) + len(base) + 1)
                k = int(exp)
            else:
                k = 1
            e[names[base]] += k
        m = tuple(e)
        terms[m] = (terms.get(m, 0) + sign * coeff) % f.p
        pos = mt.end()
        first = False
    try:
        return Poly(ring, {m: c for m, c in terms.items() if c})
    except NotHomogeneous as exc:
        raise ParseError(str(exc), line) from exc
