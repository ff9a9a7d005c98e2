"""Seeded constructors for the test varieties.

Every constructor takes a prime field (or prime) and, where randomness is
involved, a seed for ``numpy.random.default_rng``.  Random draws are retried
up to ``MAX_RETRIES`` times until the output passes its sanity checks; the
number of retries used is recorded in :data:`LAST_TRAIL`.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from itertools import combinations

import numpy as np

from . import exactla as la
from .errors import DegenerateDraw, InterpolationUnstable, LinextError
from .field import FieldDesc, make_prime_field
from .groebner import buchberger, dimension_degree, hilbert
from .ring import Ring, monomial_basis, polys_from_rows, span_basis, substitute_linear
from .strand import check_minimal, resolution_slice

MAX_RETRIES = 20
DEFAULT_PRIME = 32003
# Hilbert numerator of a degree-10 genus-6 curve with the 10-15-6 table
CURVE_NUMERATOR = (1, 0, 0, -10, 15, -6)

LAST_TRAIL = {}


@dataclass(frozen=True)
class ExampleSpec:
    """A named gallery input."""

    name: str
    p: int = DEFAULT_PRIME
    seed: int = 0
    params: dict = dc_field(default_factory=dict, compare=False)

    def build(self):
        return construct(self.name, self.p, self.seed)


def _field(f):
    return f if isinstance(f, FieldDesc) else make_prime_field(f)


def det3(m):
    """Determinant of a 3x3 list of polynomials by cofactor expansion."""
    (a, b, c), (d, e, f), (g, h, i) = m
    return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)


def maximal_minors_3x5(m):
    return [det3([[row[j] for j in cols] for row in m]) for cols in combinations(range(5), 3)]


# ---------------------------------------------------------------------------
# fixed examples


def rnc4(f=DEFAULT_PRIME):
    """Rational normal quartic: 2x2 minors of the Hankel matrix in 5 variables."""
    ring = Ring.standard(_field(f), 5)
    x = ring.gens
    rows = [x[0:4], x[1:5]]
    return [rows[0][i] * rows[1][j] - rows[0][j] * rows[1][i]
            for i, j in combinations(range(4), 2)]


def del_pezzo6(f=DEFAULT_PRIME):
    """Toric sextic del Pezzo surface in P^6: 9 binomial quadrics."""
    ring = Ring.standard(_field(f), 7)
    # exponents of x^2y, x^2z, xy^2, y^2z, xz^2, yz^2, xyz
    pts = [(2, 1, 0), (2, 0, 1), (1, 2, 0), (0, 2, 1), (1, 0, 2), (0, 1, 2), (1, 1, 1)]
    by_sum = {}
    for i, j in combinations(range(7), 2):
        by_sum.setdefault(tuple(a + b for a, b in zip(pts[i], pts[j])), []).append((i, j))
    for i in range(7):
        by_sum.setdefault(tuple(2 * a for a in pts[i]), []).append((i, i))
    x = ring.gens
    quads = []
    for pairs in by_sum.values():
        for (i, j), (k, l) in zip(pairs, pairs[1:]):
            quads.append(x[i] * x[j] - x[k] * x[l])
    gens = span_basis(quads, ring)
    return gens


def secant_p2xp4(f=DEFAULT_PRIME):
    """3x3 minors of the generic 3x5 matrix in 15 variables."""
    ring = Ring(_field(f), tuple(f"z{a}{b}" for a in range(3) for b in range(5)))
    x = ring.gens
    m = [[x[5 * a + b] for b in range(5)] for a in range(3)]
    return maximal_minors_3x5(m)


# ---------------------------------------------------------------------------
# random curves


def _curve_ok(gens):
    """Sanity checks shared by the genus-6 curve constructors."""
    if len(gens) != 10 or any(g.is_zero() for g in gens):
        return False
    try:
        check_minimal(gens)
    except LinextError:
        return False
    ring = gens[0].ring
    gb = buchberger(gens, ring)
    if dimension_degree(gb) != (1, 10):
        return False
    if tuple(hilbert(gb).numerator) != CURVE_NUMERATOR:
        return False
    try:
        return resolution_slice(gens).ranks == (10, 15, 6)
    except LinextError:
        return False


def _retry(name, seed, draw, ok):
    rng = np.random.default_rng(seed)
    for attempt in range(MAX_RETRIES):
        out = draw(rng)
        if out is not None and ok(out):
            LAST_TRAIL[name] = {"seed": seed, "attempts": attempt + 1}
            return out
    raise DegenerateDraw(f"{name}: no usable draw in {MAX_RETRIES} attempts (seed {seed})")


def generic_det_quintic_curve(seed=0, f=DEFAULT_PRIME):
    """3x3 minors of a random 3x5 matrix of linear forms on P^4."""
    field = _field(f)
    ring = Ring.standard(field, 5)

    def draw(rng):
        m = [[ring.linear_form(la.random_matrix(1, 5, field, rng)[0]) for _ in range(5)]
             for _ in range(3)]
        return span_basis(maximal_minors_3x5(m), ring)

    return _retry("generic_det_quintic_curve", seed, draw, _curve_ok)


def _symmetric(rng, field, n):
    a = la.random_matrix(n, n, field, rng)
    return np.triu(a) + np.triu(a, 1).T


def prym_symmetric_quintic_curve(seed=0, f=DEFAULT_PRIME):
    """3x3 minors of the 3x5 matrix with rows ``x . S_a`` for random symmetric ``S_a``."""
    field = _field(f)
    ring = Ring.standard(field, 5)

    def draw(rng):
        mats = [_symmetric(rng, field, 5) for _ in range(3)]
        m = [[ring.linear_form(S[:, j]) for j in range(5)] for S in mats]
        return span_basis(maximal_minors_3x5(m), ring)

    return _retry("prym_symmetric_quintic_curve", seed, draw, _curve_ok)


def _eval_monomials(mons, pts, p):
    """Rows: points; columns: monomial values mod p."""
    pts = np.asarray(pts, dtype=np.int64) % p
    out = np.ones((len(pts), len(mons)), dtype=np.int64)
    for j, m in enumerate(mons):
        for v, e in enumerate(m):
            for _ in range(e):
                out[:, j] = out[:, j] * pts[:, v] % p
    return out


def _derivative_rows(mons, pt, p):
    """Rows for the three partial derivatives of a form at ``pt``."""
    rows = np.zeros((3, len(mons)), dtype=np.int64)
    for v in range(3):
        for j, m in enumerate(mons):
            if m[v] == 0:
                continue
            val = m[v]
            for w, e in enumerate(m):
                k = e - (w == v)
                val = val * pow(int(pt[w]), k, p) % p
            rows[v, j] = val
    return rows


def surface_cubics(seed=0, f=DEFAULT_PRIME, samples=120):
    """Cubic equations of the P^2 blow-up at 14 points embedded by
    sextics double at 4 points and through 10 more, in P^5.

    Returns ``(cubics, rng)``; the generator is returned so the caller can
    keep drawing from the same stream.
    """
    field = _field(f)
    p = field.p
    rng = np.random.default_rng(seed)
    for attempt in range(MAX_RETRIES):
        pts = rng.integers(0, p, size=(14, 3), dtype=np.int64)
        sext = monomial_basis(3, 6)
        conds = [_derivative_rows(sext, pt, p) for pt in pts[:4]]
        conds.append(_eval_monomials(sext, pts[4:], p))
        C = np.vstack(conds)
        ker = la.right_kernel(C, field, cols=28)
        if ker.dim != 6:
            continue
        sextics = ker.basis  # 6 x 28
        cub = monomial_basis(6, 3)

        def image(k):
            src = rng.integers(0, p, size=(k, 3), dtype=np.int64)
            return la.matmul(_eval_monomials(sext, src, p), sextics.T, field)

        E = _eval_monomials(cub, image(samples), p)
        cubic_space = la.right_kernel(E, field, cols=len(cub))
        if cubic_space.dim != 10:
            continue
        fresh = _eval_monomials(cub, image(40), p)
        if la.matmul(fresh, cubic_space.basis.T, field).any():
            raise InterpolationUnstable("interpolated cubics fail on fresh samples")
        ring6 = Ring.standard(field, 6)
        LAST_TRAIL["surface_cubics"] = {"seed": seed, "attempts": attempt + 1}
        return polys_from_rows(cubic_space.basis, ring6, 3), rng
    raise DegenerateDraw(f"no general 14-point configuration in {MAX_RETRIES} attempts")



def paracanonical_genus6_curve(seed=0, f=DEFAULT_PRIME):
    """Hyperplane section of the surface from :func:`surface_cubics`.

    A random change of coordinates on P^5 is applied before setting the last
    coordinate to zero, so the section is by a random hyperplane.
    """
    field = _field(f)
    cubics, rng = surface_cubics(seed, field)
    ring5 = Ring.standard(field, 5)

    def draw(rng):
        M = la.random_invertible(6, field, rng)
        images = [ring5.linear_form(list(M[i, :5])) for i in range(6)]
        return span_basis([substitute_linear(c, images, ring5) for c in cubics], ring5)

    return _retry("paracanonical_genus6_curve", seed, lambda _: draw(rng), _curve_ok)


REGISTRY = {
    "rnc4": lambda p, seed: rnc4(p),
    "del_pezzo6": lambda p, seed: del_pezzo6(p),
    "secant_p2xp4": lambda p, seed: secant_p2xp4(p),
    "generic_det_quintic_curve": lambda p, seed: generic_det_quintic_curve(seed, p),
    "prym_symmetric_quintic_curve": lambda p, seed: prym_symmetric_quintic_curve(seed, p),
    "paracanonical_genus6_curve": lambda p, seed: paracanonical_genus6_curve(seed, p),
}

# gallery tag -> family context used by reconstruct.classify
CONTEXT = {
    "rnc4": "rnc4",
    "del_pezzo6": "del_pezzo6",
    "generic_det_quintic_curve": "generic_quintic",
    "prym_symmetric_quintic_curve": "prym_quintic",
    "paracanonical_genus6_curve": "genus6",
}


def construct(name, p=DEFAULT_PRIME, seed=0):
    if name not in REGISTRY:
        raise KeyError(f"unknown gallery example {name!r}; choose from {sorted(REGISTRY)}")
    return REGISTRY[name](p, seed)
