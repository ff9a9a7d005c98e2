"""Buchberger's algorithm over a prime field, Hilbert series, quotients.

Internally a polynomial is a ``dict`` from packed monomial to ``int``
residue.  The engine supports block orders, which lets the elimination
routines reuse it; the public surface works with homogeneous
:class:`~linext.ring.Poly` values in grevlex.
"""

from __future__ import annotations

import heapq
import logging
from dataclasses import dataclass, field as dc_field

import numpy as np

from . import exactla as la
from .errors import SaturationDiverged
from .ring import (Poly, Ring, grevlex_key, monomial_array, monomial_basis, polys_from_rows,
                   substitute_linear)

log = logging.getLogger(__name__)

MAX_SATURATION_STEPS = 50


def _divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def _lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def _sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


_BITS = 16
_MAXEXP = (1 << (_BITS - 1)) - 1


class Codec:
    """Packs exponent tuples into integers that sort like a block order.

    ``blocks`` lists variable indices, most significant block first; each
    block is compared by grevlex.  Within a block the fields are the block
    degree followed by ``MAXEXP - e_i`` from the last variable to the first,
    so integer comparison is the monomial order, the product of monomials
    is ``a + b - K0`` and divisibility is a mask test.
    """

    def __init__(self, n, blocks=None):
        self.n = n
        self.blocks = [list(b) for b in (blocks or [range(n)])]
        fields = []  # (kind, var) most significant first
        for b in self.blocks:
            fields.append(("deg", tuple(b)))
            for v in reversed(b):
                fields.append(("exp", v))
        self.fields = fields
        nf = len(fields)
        self.shift = [(nf - 1 - i) * _BITS for i in range(nf)]
        self.k0 = sum(_MAXEXP << sh for (kind, _), sh in zip(fields, self.shift) if kind == "exp")
        self.k1 = sum(_MAXEXP << sh for sh in self.shift)
        self.high = sum(1 << (sh + _BITS - 1)
                        for (kind, _), sh in zip(fields, self.shift) if kind == "exp")
        self.one = self.encode((0,) * n)

    def encode(self, e):
        x = 0
        for (kind, v), sh in zip(self.fields, self.shift):
            val = sum(e[i] for i in v) if kind == "deg" else _MAXEXP - e[v]
            x |= val << sh
        return x

    def decode(self, x):
        e = [0] * self.n
        mask = (1 << _BITS) - 1
        for (kind, v), sh in zip(self.fields, self.shift):
            if kind == "exp":
                e[v] = _MAXEXP - ((x >> sh) & mask)
        return tuple(e)

    def divides(self, a, b):
        return not ((b - a + self.k1) & self.high)


class _Engine:
    """One Buchberger run over packed monomials.

    ``blocks`` selects a block order (see :class:`Codec`); the default is
    grevlex on all variables.
    """

    def __init__(self, n, p, blocks=None):
        self.n = n
        self.p = p
        self.codec = Codec(n, blocks)
        self.stats = {"pairs": 0, "reductions": 0, "zero": 0, "criteria": 0}

    # conversion between exponent-tuple dicts and packed dicts
    def pack(self, f):
        enc = self.codec.encode
        p = self.p
        return {enc(m): c % p for m, c in f.items() if c % p}

    def unpack(self, f):
        dec = self.codec.decode
        return {dec(m): c for m, c in f.items()}

    def monic(self, f):
        lm = max(f)
        c = f[lm]
        if c == 1:
            return f
        inv = pow(c, -1, self.p)
        p = self.p
        return {m: v * inv % p for m, v in f.items()}

    def reduce(self, f, G, lms, full=True):
        """Normal form of packed ``f`` modulo monic packed ``G``."""
        p = self.p
        k1, high = self.codec.k1, self.codec.high
        f = dict(f)
        if not f:
            return f
        heap = [-m for m in f]
        heapq.heapify(heap)
        rem = {}
        tails = [[(mg - lm, cg) for mg, cg in g.items() if mg != lm] for g, lm in zip(G, lms)]
        while heap:
            m = -heapq.heappop(heap)
            c = f.pop(m, 0)
            if not c:
                continue
            for t, lm in zip(tails, lms):
                if not ((m - lm + k1) & high):
                    for d, cg in t:
                        mm = m + d
                        old = f.get(mm)
                        if old is None:
                            f[mm] = (-c * cg) % p
                            heapq.heappush(heap, -mm)
                        else:
                            v = (old - c * cg) % p
                            if v:
                                f[mm] = v
                            else:
                                del f[mm]
                    break
            else:
                rem[m] = c
                if not full:
                    rem.update(f)
                    return rem
        return rem

    def spoly(self, f, g, lf, lg):
        p = self.p
        l = self.lcm(lf, lg)
        qf, qg = l - lf, l - lg
        out = {}
        for m, c in f.items():
            if m != lf:
                out[m + qf] = (out.get(m + qf, 0) + c) % p
        for m, c in g.items():
            if m != lg:
                out[m + qg] = (out.get(m + qg, 0) - c) % p
        return {m: c for m, c in out.items() if c}

    def lcm(self, a, b):
        cd = self.codec
        return cd.encode(_lcm(cd.decode(a), cd.decode(b)))

    def run(self, polys):
        """Reduced Groebner basis of exponent-tuple dicts; same format out."""
        G, lms, alive = [], [], []
        pairs = []  # (lcm, i, j)
        for f in polys:
            f = self.pack(f)
            if not f:
                continue
            f = self.reduce(f, G, lms)
            if f:
                self._update(G, lms, alive, pairs, self.monic(f))
        while pairs:
            # smallest lcm first (normal strategy)
            pairs.sort(reverse=True)
            _, i, j = pairs.pop()
            self.stats["pairs"] += 1
            s = self.spoly(G[i], G[j], lms[i], lms[j])
            h = self.reduce(s, G, lms)
            self.stats["reductions"] += 1
            if not h:
                self.stats["zero"] += 1
                continue
            self._update(G, lms, alive, pairs, self.monic(h))
        out = self.interreduce([g for g, a in zip(G, alive) if a],
                               [l for l, a in zip(lms, alive) if a])
        return [self.unpack(g) for g in out]

    def _update(self, G, lms, alive, pairs, h):
        """Gebauer-Moeller installation of ``h``."""
        cd = self.codec
        div = cd.divides
        t = len(G)
        lh = max(h)
        G.append(h)
        lms.append(lh)
        eh = cd.decode(lh)
        C = [(i, self.lcm(lms[i], lh)) for i in range(t) if alive[i]]
        D = []
        for idx, (i, l) in enumerate(C):
            coprime = all(a == 0 or b == 0 for a, b in zip(cd.decode(lms[i]), eh))
            if not coprime and (any(div(l2, l) for _, l2 in C[idx + 1:])
                                or any(div(l2, l) for _, l2, _ in D)):
                self.stats["criteria"] += 1
                continue
            D.append((i, l, coprime))
        new = []
        for i, l, coprime in D:
            if coprime:
                self.stats["criteria"] += 1
            else:
                new.append((l, i, t))
        survivors = []
        for entry in pairs:
            lij, i, j = entry
            if div(lh, lij) and self.lcm(lms[i], lh) != lij and self.lcm(lms[j], lh) != lij:
                self.stats["criteria"] += 1
                continue
            survivors.append(entry)
        pairs[:] = survivors + new
        for i in range(t):
            if alive[i] and div(lh, lms[i]):
                alive[i] = False
        alive.append(True)

    def interreduce(self, G, lms):
        div = self.codec.divides
        items = sorted(zip(G, lms), key=lambda t: t[1])
        minimal = []
        for g, lm in items:
            if not any(div(l2, lm) for _, l2 in minimal):
                minimal.append((g, lm))
        out = []
        polys = [g for g, _ in minimal]
        leads = [lm for _, lm in minimal]
        for k, (g, lm) in enumerate(minimal):
            others = polys[:k] + polys[k + 1:]
            olms = leads[:k] + leads[k + 1:]
            tail = {m: c for m, c in g.items() if m != lm}
            r = self.reduce(tail, others, olms)
            r[lm] = 1
            out.append(r)
        out.sort(key=max)
        return out


# ---------------------------------------------------------------------------
# public surface


@dataclass
class GroebnerBasis:
    ring: Ring
    gens: list
    order: str = "grevlex"
    reduced: bool = True
    stats: dict = dc_field(default_factory=dict)

    @property
    def leads(self):
        return [g.lead() for g in self.gens]

    def is_unit(self):
        return any(g.degree == 0 for g in self.gens)

    def __len__(self):
        return len(self.gens)

    def __eq__(self, other):
        return (isinstance(other, GroebnerBasis) and self.ring == other.ring
                and sorted(map(_canon, self.gens)) == sorted(map(_canon, other.gens)))


def _canon(g):
    return tuple(sorted(g.terms.items()))


def _to_dicts(polys):
    return [dict(q.terms) for q in polys if not q.is_zero()]


def buchberger(gens, ring=None):
    """Reduced grevlex Groebner basis of homogeneous generators."""
    gens = list(gens)
    ring = ring or (gens[0].ring if gens else None)
    eng = _Engine(ring.nvars, ring.p)
    out = eng.run(_to_dicts(gens))
    basis = [Poly(ring, g, check=False) for g in out]
    log.debug("buchberger: %d generators, stats %s", len(basis), eng.stats)
    return GroebnerBasis(ring, basis, stats=dict(eng.stats))


def normal_form(q, gb):
    if q.is_zero():
        return q
    eng = _Engine(gb.ring.nvars, gb.ring.p)
    G = [eng.pack(g.terms) for g in gb.gens]
    r = eng.reduce(eng.pack(q.terms), G, [max(g) for g in G])
    return Poly(gb.ring, eng.unpack(r), check=False)


def contains(gb, q):
    return normal_form(q, gb).is_zero()


# -- linear coordinate changes ---------------------------------------------


def _move_to_last(ring, f):
    """Substitutions making the linear form ``f`` the last coordinate.

    Returns ``(forward, backward)``: lists of linear images such that
    substituting ``forward`` into a form written in old coordinates gives the
    same form in new coordinates ``z`` with ``z_last = f``, and ``backward``
    undoes it.
    """
    n = ring.nvars
    c = [int(f.coeff(tuple(1 if k == i else 0 for k in range(n)))) for i in range(n)]
    j = max(i for i in range(n) if c[i])
    # new coords: z_i = x_i for i != j except x_j's slot moves to the end
    others = [i for i in range(n) if i != j]
    # z = M x ; rows: others, then f
    M = np.zeros((n, n), dtype=np.int64)
    for r, i in enumerate(others):
        M[r, i] = 1
    M[n - 1] = c
    Minv = la.inverse(M, ring.field)
    # x = Minv z  -> forward images of x_i are rows of Minv as linear forms in z
    forward = [ring.linear_form(Minv[i]) for i in range(n)]
    backward = [ring.linear_form(M[i]) for i in range(n)]
    return forward, backward


def _sub_all(polys, images):
    return [substitute_linear(q, images) for q in polys]


def _divide_last(q, k=None):
    """Divide by the largest power (at most ``k``) of the last variable."""
    e = min(m[-1] for m in q.terms)
    if k is not None:
        e = min(e, k)
    if e == 0:
        return q
    return Poly(q.ring, {m[:-1] + (m[-1] - e,): c for m, c in q.terms.items()}, check=False)


def ideal_quotient(gb, f):
    """Basis of ``(I : f)`` for a homogeneous form ``f``."""
    ring = gb.ring
    if f.is_zero():
        return buchberger([ring.one()], ring)
    if f.degree == 0:
        return gb
    if f.degree == 1:
        return _linear_colon(gb, f, 1)
    return _general_quotient(gb, f)


def _linear_colon(gb, f, k):
    ring = gb.ring
    fwd, bwd = _move_to_last(ring, f)
    moved = buchberger(_sub_all(gb.gens, fwd), ring)
    divided = [_divide_last(g, k) for g in moved.gens]
    return buchberger(_sub_all(divided, bwd), ring)


def _general_quotient(gb, f):
    """``I : f`` from ``I cap (f) = (t I + (1 - t) f) cap R`` divided by ``f``."""
    ring = gb.ring
    n = ring.nvars
    p = ring.p

    gens = []
    for g in gb.gens:
        gens.append({m + (1,): c for m, c in g.terms.items()})
    ff = {}
    for m, c in f.terms.items():
        ff[m + (0,)] = c
        ff[m + (1,)] = (-c) % p
    gens.append(ff)
    eng = _Engine(n + 1, p, blocks=[[n], list(range(n))])
    G = eng.run(gens)
    inter = [Poly(ring, {m[:n]: c for m, c in g.items()}) for g in G
             if all(m[n] == 0 for m in g)]
    quotients = [divide_exact(h, f) for h in inter]
    return buchberger(quotients, ring)


def divide_exact(h, f):
    """``h / f`` assuming ``f`` divides ``h``."""
    ring = h.ring
    p = ring.p
    lf = f.lead()
    cf_inv = pow(int(f.terms[lf]), -1, p)
    rest = dict(h.terms)
    quot = {}
    while rest:
        m = max(rest, key=grevlex_key)
        if not _divides(lf, m):
            raise ValueError("divisor does not divide")
        q = _sub(m, lf)
        c = rest[m] * cf_inv % p
        quot[q] = c
        for mf, vf in f.terms.items():
            mm = tuple(a + b for a, b in zip(mf, q))
            v = (rest.get(mm, 0) - c * vf) % p
            if v:
                rest[mm] = v
            else:
                rest.pop(mm, None)
    return Poly(ring, quot, check=False)


def saturate(gb, f):
    """``I : f^oo`` by iterated quotients until the basis stabilizes."""
    if f.degree == 1:
        # one-shot division by the full power is equivalent and cheaper
        return _linear_colon(gb, f, None)
    cur = gb
    for _ in range(MAX_SATURATION_STEPS):
        nxt = ideal_quotient(cur, f)
        if nxt == cur:
            return cur
        cur = nxt
    raise SaturationDiverged(f"no stabilization after {MAX_SATURATION_STEPS} quotients")


def saturate_iterated(gb, f):
    """Reference saturation that always iterates :func:`ideal_quotient`."""
    cur = gb
    for _ in range(MAX_SATURATION_STEPS):
        nxt = ideal_quotient(cur, f)
        if nxt == cur:
            return cur
        cur = nxt
    raise SaturationDiverged(f"no stabilization after {MAX_SATURATION_STEPS} quotients")


# ---------------------------------------------------------------------------
# Hilbert series


@dataclass(frozen=True)
class HilbertData:
    numerator: tuple  # coefficients of N(t), H = N / (1-t)^nvars
    nvars: int
    dimension: int  # Krull dimension of the quotient, -1 for the zero ring
    degree: int
    reduced: tuple  # h(t) with H = h / (1-t)^dimension

    def value(self, k):
        """Hilbert function in degree ``k``."""
        from math import comb
        return sum(c * comb(self.dimension - 1 + k - i, k - i)
                   for i, c in enumerate(self.reduced) if k - i >= 0) if self.dimension > 0 else \
            (self.reduced[k] if k < len(self.reduced) else 0)


def _minimalize(mons):
    mons = sorted(set(mons), key=sum)
    out = []
    for m in mons:
        if not any(_divides(g, m) for g in out):
            out.append(m)
    return out


def _poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_add(a, b):
    n = max(len(a), len(b))
    return [(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)]


def hilbert_numerator(mons, n):
    """Numerator ``N`` with ``H_{S/M}(t) = N(t)/(1-t)^n`` for a monomial ideal."""
    cache = {}

    def rec(ms):
        ms = tuple(sorted(_minimalize(ms)))
        if ms in cache:
            return cache[ms]
        if not ms:
            res = [1]
        elif any(sum(m) == 0 for m in ms):
            res = [0]
        else:
            support = [frozenset(i for i, e in enumerate(m) if e) for m in ms]
            disjoint = all(not (support[a] & support[b])
                           for a in range(len(ms)) for b in range(a + 1, len(ms)))
            if disjoint:
                res = [1]
                for m in ms:
                    d = sum(m)
                    res = _poly_mul(res, [1] + [0] * (d - 1) + [-1])
            else:
                counts = [0] * n
                for m in ms:
                    if sum(1 for e in m if e) > 1:
                        for i, e in enumerate(m):
                            if e:
                                counts[i] += 1
                v = max(range(n), key=lambda i: counts[i])
                x = tuple(1 if i == v else 0 for i in range(n))
                plus = list(ms) + [x]
                colon = [tuple(max(e - 1, 0) if i == v else e for i, e in enumerate(m)) for m in ms]
                res = _poly_add(rec(plus), [0] + rec(colon))
        while len(res) > 1 and res[-1] == 0:
            res.pop()
        cache[ms] = res
        return res

    return tuple(rec(list(mons)))


def _reduce_numerator(num, n):
    num = list(num)
    if not any(num):
        return (0,), -1, 0
    k = 0
    while k < n:
        if sum(num) != 0:
            break
        # divide by (1 - t): synthetic division
        q = []
        acc = 0
        for c in num[:-1]:
            acc += c
            q.append(acc)
        num = q if q else [0]
        k += 1
    while len(num) > 1 and num[-1] == 0:
        num.pop()
    return tuple(num), n - k, sum(num)


def hilbert(gb):
    """Hilbert series data of ``S/I`` from the leading-term ideal."""
    n = gb.ring.nvars
    num = hilbert_numerator(gb.leads, n)
    red, dim, deg = _reduce_numerator(num, n)
    return HilbertData(num, n, dim, deg, red)


def hilbert_of_monomials(mons, n):
    num = hilbert_numerator(mons, n)
    red, dim, deg = _reduce_numerator(num, n)
    return HilbertData(num, n, dim, deg, red)


def dimension_degree(gb):
    """Projective dimension and degree of ``V(I)``."""
    h = hilbert(gb)
    if h.dimension <= 0:
        return (-1, h.degree if h.dimension == 0 else 0)
    return (h.dimension - 1, h.degree)


def numerator_from_function(values, n):
    """Hilbert numerator from Hilbert function values ``H(0..D)``.

    Valid when ``D`` is at least the degree of the numerator.
    """
    from math import comb
    series = list(values)
    out = []
    for k in range(len(series)):
        # coefficient of t^k in (1-t)^n * sum H(i) t^i
        out.append(sum((-1) ** j * comb(n, j) * series[k - j] for j in range(0, min(n, k) + 1)))
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return tuple(out)


def eliminate(gens, drop, ring):
    """Generators of ``I cap K[remaining variables]``; ``drop`` lists indices."""
    n = ring.nvars
    drop = sorted(set(drop))
    keep = [i for i in range(n) if i not in drop]

    eng = _Engine(n, ring.p, blocks=[drop, keep])
    G = eng.run(_to_dicts(gens))
    out = []
    for g in G:
        if all(all(m[i] == 0 for i in drop) for m in g):
            out.append(Poly(ring, g))
    return out


# -- graded normal forms ----------------------------------------------------


class NormalFormTable:
    """Normal forms of all monomials of one degree modulo a homogeneous
    Groebner basis, as rows of a dense matrix over the standard monomials.

    Monomials are processed in increasing order so that a non-standard
    monomial ``m = t * lm(g)`` is rewritten with the already known normal
    forms of ``t * u`` for the tail terms ``u`` of ``g``.
    """

    def __init__(self, gb, k):
        ring = gb.ring
        p = ring.p
        n = ring.nvars
        self.k = k
        self.mons = monomial_basis(n, k)
        self.index = {m: i for i, m in enumerate(self.mons)}
        leads = gb.leads
        gens = {g.lead(): g for g in gb.gens if g.degree <= k}
        order = sorted(range(len(self.mons)), key=lambda i: grevlex_key(self.mons[i]))
        reducer = {}
        for i in order:
            m = self.mons[i]
            for lm in leads:
                if lm in gens and all(a <= b for a, b in zip(lm, m)):
                    reducer[i] = lm
                    break
        self.std = [self.mons[i] for i in order if i not in reducer]
        self.std_index = {m: j for j, m in enumerate(self.std)}
        N = np.zeros((len(self.mons), len(self.std)), dtype=np.int64)
        for i in order:
            m = self.mons[i]
            if i not in reducer:
                N[i, self.std_index[m]] = 1
                continue
            g = gens[reducer[i]]
            t = _sub(m, reducer[i])
            c0 = pow(g.terms[reducer[i]], -1, p)
            row = np.zeros(len(self.std), dtype=np.int64)
            for u, c in g.terms.items():
                if u == reducer[i]:
                    continue
                row = (row - (c * c0 % p) * N[self.index[tuple(a + b for a, b in zip(t, u))]]) % p
            N[i] = row
        self.matrix = N
        self._n = n
        arr = monomial_array(n, k)
        self._base = k + 1
        self._powers = self._base ** np.arange(n, dtype=np.int64)
        keys = arr @ self._powers
        self._order = np.argsort(keys)
        self._sorted = keys[self._order]

    def lookup(self, exps):
        """Row indices of the monomials with the given exponent rows."""
        pos = np.searchsorted(self._sorted, np.asarray(exps, dtype=np.int64) @ self._powers)
        return self._order[pos]

    def reduce(self, q):
        """Coordinates of the normal form of a degree-k polynomial."""
        out = np.zeros(len(self.std), dtype=np.int64)
        for m, c in q.terms.items():
            out = (out + c * self.matrix[self.index[m]]) % q.ring.p
        return out

    def shifted(self, q, mons):
        """Rows ``NF(m * q)`` for ``m`` in ``mons``; needs ``deg m + deg q == k``."""
        P = q.ring.p
        A = np.asarray(mons, dtype=np.int64).reshape(-1, self._n)
        out = np.zeros((len(A), len(self.std)), dtype=np.int64)
        for u, c in q.terms.items():
            out = (out + c * self.matrix[self.lookup(A + np.asarray(u))]) % P
        return out


def colon_truncated(gb, J, degrees):
    """Graded pieces of ``I : J`` in the given degrees, by linear algebra.

    ``J`` is a list of homogeneous polynomials.  The result spans
    ``{g in S_d : g * j in I for all j}`` for each ``d``.
    """
    ring = gb.ring
    f = ring.field
    out = []
    tables = {}
    for d in degrees:
        mons = monomial_basis(ring.nvars, d)
        blocks = []
        for j in J:
            k = d + j.degree
            if k not in tables:
                tables[k] = NormalFormTable(gb, k)
            blocks.append(tables[k].shifted(j, mons))
        A = np.hstack(blocks) if blocks else np.zeros((len(mons), 0), dtype=np.int64)
        ker = la.left_kernel(A, f)
        if ker.dim:
            out.extend(polys_from_rows(ker.basis, ring, d))
    return out
