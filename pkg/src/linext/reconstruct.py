"""Rebuild an extension ideal from a linear component and check it.

The extended matrix is ``Phi~ = A_x + sum_i y_i Psi_i`` where ``A_x`` only
involves the old variables.  A row ``u`` of degree-d forms with
``u Phi~ = 0`` splits by degree in ``y``: the ``y``-free part is a multiple
of the original generator row and every other coefficient ``u_alpha``
solves ``u_alpha A_x = -sum_i u_{alpha - e_i} Psi_i``, always with the same
matrix for a given ``x``-degree.  This lifting is triangular, so the left
kernel is computed one ``y``-degree at a time.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import numpy as np

from . import exactla as la
from .components import _basis_mults, _coords
from .errors import Inconsistent, LinextError, RankDrop
from .field import FieldDesc
from .groebner import buchberger, dimension_degree, hilbert
from .ring import (Poly, Ring, coefficient_matrix, monomial_basis, monomial_index,
                   variable_slices)
from .strand import betti_table, resolution_slice

# gallery context -> component dimension -> family tag
FAMILIES = {
    "genus6": {9: "K^2=-5", 7: "K^2=-4", 5: "K^2=-3"},
    "generic_quintic": {14: "determinantal: secant variety of P2xP4"},
    "prym_quintic": {14: "determinantal: secant variety of P2xP4", 5: "Enriques surface"},
    "rnc4": {7: "Segre P1xP3", 5: "Veronese surface"},
    "del_pezzo6": {8: "Segre P2xP2", 7: "Segre P1xP1xP1"},
}


@dataclass
class Verification:
    restriction_ok: bool = False
    hilbert_ok: bool = False
    betti_ok: bool = False
    complex_ok: bool = False
    details: dict = dc_field(default_factory=dict)

    @property
    def ok(self):
        return self.restriction_ok and self.hilbert_ok and self.betti_ok and self.complex_ok

    def to_json(self):
        return {"restriction_ok": self.restriction_ok, "hilbert_ok": self.hilbert_ok,
                "betti_ok": self.betti_ok, "complex_ok": self.complex_ok, **self.details}


@dataclass(frozen=True)
class FamilyLabel:
    dimension: int
    e: int
    tag: str | None = None

    def to_json(self):
        return {"dimension": self.dimension, "e": self.e, "tag": self.tag or "unlabeled"}


@dataclass
class ExtensionResult:
    ideal: list
    e: int
    component: object
    verification: Verification | None = None
    label: FamilyLabel | None = None
    status: str = "unverified"
    message: str = ""

    @property
    def ring(self):
        return self.ideal[0].ring if self.ideal else None


# ---------------------------------------------------------------------------
# lifting


def _mult_tensor(K):
    """``T[a, b, :]`` = coordinates of ``e_a * e_b``."""
    Ms = _basis_mults(K)
    r = len(Ms)
    T = np.zeros((r, r, r), dtype=np.int64)
    for a, M in enumerate(Ms):
        T[a] = M.T
    return T


def _strand_map(Ax, t, nx, p):
    """Matrix of ``v -> v * A_x`` from ``r1`` forms of degree ``t`` to ``r2``
    forms of degree ``t + 1``; columns ``(i, mono)``, rows ``(j, mono)``."""
    r1, r2 = Ax[0].shape
    src = monomial_basis(nx, t)
    dst = monomial_index(nx, t + 1)
    L = np.zeros((r2 * len(dst), r1 * len(src)), dtype=np.int64)
    for a, m in enumerate(src):
        for ell in range(nx):
            mm = list(m)
            mm[ell] += 1
            row = dst[tuple(mm)]
            # column block i, row block j gets Ax[ell][i, j]
            for i in range(r1):
                L[np.arange(r2) * len(dst) + row, i * len(src) + a] += Ax[ell][i]
    return L % p


def extension_ideal(phi, d, base_vars=None):
    """Generators of the extension ideal from the extended first linear map.

    ``phi`` is an ``r1 x r2`` linear PolyMatrix over ``K[x_0..x_n, y_..]``;
    the first ``base_vars`` variables are the original ones (default: the
    variables whose names start with ``x``).  Returns the ``r1`` degree-``d``
    entries of the unique (up to scalar) row ``u`` with ``u phi = 0``.

    Raises :class:`RankDrop` when that left kernel is not one-dimensional
    with linearly independent entries.
    """
    ring = phi.ring
    K = ring.field
    p = K.p
    if base_vars is None:
        base_vars = sum(1 for name in ring.names if name.startswith("x"))
    nx = base_vars
    e = ring.nvars - nx
    slices = variable_slices(phi)
    r = K.degree
    C = [_coords(_rows_of(s), K) for s in slices]  # (r1, r2, r) each
    r1, r2 = C[0].shape[:2]
    if any(c[..., 1:].any() for c in C[:nx]):
        raise ValueError("old-variable slices must be defined over the prime field")
    Ax = [c[..., 0] for c in C[:nx]]
    Psi = C[nx:]
    Tm = _mult_tensor(K)
    fp = FieldDesc(p)
    # y-free part: kernel of the strand map in degree d
    L = _strand_map(Ax, d, nx, p)
    ker = la.right_kernel(L, fp, cols=L.shape[1])
    if ker.dim != 1:
        raise RankDrop(f"degree-{d} left kernel of the original map has dimension {ker.dim}")
    md = len(monomial_basis(nx, d))
    u0 = ker.basis[0].reshape(r1, md)
    coeffs = {(0,) * e: np.concatenate([u0[..., None], np.zeros((r1, md, r - 1), dtype=np.int64)],
                                       axis=2)}
    for k in range(1, d + 2 if e else 1):
        t = d - k
        alphas = monomial_basis(e, k)
        rhs = []
        for alpha in alphas:
            acc = None
            for i in range(e):
                if alpha[i] == 0:
                    continue
                beta = list(alpha)
                beta[i] -= 1
                prod = np.einsum("imA,ijB,ABC->jmC", coeffs[tuple(beta)], Psi[i], Tm) % p
                acc = prod if acc is None else (acc + prod) % p
            rhs.append((-acc) % p)  # (r2, m_{t+1}, r)
        if t < 0:
            if any(x.any() for x in rhs):
                raise RankDrop(f"obstruction in y-degree {k}: no extension of the generators")
            break
        L = _strand_map(Ax, t, nx, p)
        if la.rank(L, fp) != L.shape[1]:
            raise RankDrop(f"original map has a left kernel in degree {t} < {d}")
        B = np.concatenate([x.reshape(-1, r) for x in rhs], axis=1)
        try:
            X = la.solve(L, B, fp)
        except Inconsistent:
            raise RankDrop(f"lifting fails in y-degree {k}") from None
        mt = len(monomial_basis(nx, t))
        for a, alpha in enumerate(alphas):
            coeffs[tuple(alpha)] = X[:, a * r:(a + 1) * r].reshape(r1, mt, r)
    gens = _assemble(coeffs, ring, nx, e, d, r1)
    if la.rank(coefficient_matrix(gens, d, ring), K) != r1:
        raise RankDrop("entries of the left kernel row are linearly dependent")
    return gens


def _rows_of(m):
    if isinstance(m, np.ndarray):
        return m.tolist()
    return [list(r) for r in m]


def _assemble(coeffs, ring, nx, e, d, r1):
    K = ring.field
    num = la.is_numeric(K)
    terms = [dict() for _ in range(r1)]
    for alpha, U in coeffs.items():
        t = d - sum(alpha)
        if t < 0:
            continue
        for a, m in enumerate(monomial_basis(nx, t)):
            mono = tuple(m) + tuple(alpha)
            for i in range(r1):
                c = U[i, a]
                if not c.any():
                    continue
                terms[i][mono] = int(c[0]) if num else K.from_coords(c)
    return [Poly(ring, t) for t in terms]


# ---------------------------------------------------------------------------
# verification


def restrict_to_base(q, base):
    """Set every variable after the first ``base.nvars`` to zero."""
    n = base.nvars
    terms = {m[:n]: c for m, c in q.terms.items() if not any(m[n:])}
    return Poly(base, terms, check=False)


def _same_span(a, b, d, ring):
    f = ring.field
    ra = la.rank(coefficient_matrix(a, d, ring), f)
    rb = la.rank(coefficient_matrix(b, d, ring), f)
    rab = la.rank(coefficient_matrix(list(a) + list(b), d, ring), f)
    return ra == rb == rab


def verify_extension(J, I_X, e, reg_bound=None, seed=0):
    """Restriction, Hilbert numerator, Betti table and strand checks.

    Works over the prime field; for ideals over an extension field only the
    restriction check is run and the remaining flags stay false.
    """
    v = Verification()
    ringY = J[0].ring
    ringX = I_X[0].ring
    if ringY.nvars != ringX.nvars + e:
        raise ValueError(f"J has {ringY.nvars} variables, expected {ringX.nvars + e}")
    d = I_X[0].degree
    if ringY.field != ringX.field:
        base = Ring(ringY.field, ringX.names)
        Ik = [Poly(base, {m: ringY.field.embed(c, ringX.field) for m, c in q.terms.items()})
              for q in I_X]
        v.restriction_ok = _same_span([restrict_to_base(q, base) for q in J], Ik, d, base)
        v.details["note"] = "only the restriction is checked over an extension field"
        return v
    v.restriction_ok = _same_span([restrict_to_base(q, ringX) for q in J], I_X, d, ringX)
    gbY = buchberger(J, ringY)
    gbX = buchberger(I_X, ringX)
    hY, hX = hilbert(gbY), hilbert(gbX)
    v.hilbert_ok = tuple(hY.numerator) == tuple(hX.numerator)
    v.details["numerator"] = list(hY.numerator)
    v.details["dimension_degree"] = list(dimension_degree(gbY))
    if reg_bound is None:
        reg_bound = len(hX.reduced)
    bY = betti_table(J, reg_bound, ringY, seed=seed)
    bX = betti_table(I_X, reg_bound, ringX, seed=seed)
    v.betti_ok = dict(bY) == dict(bX)
    v.details["betti"] = bY.rows()
    try:
        sY = resolution_slice(J)
        sX = resolution_slice(I_X)
        from .ring import matmul_poly
        v.complex_ok = (matmul_poly(sY.phi1, sY.phi2).is_zero()
                        and matmul_poly(sY.phi2, sY.phi3).is_zero()
                        and sY.ranks == sX.ranks)
    except LinextError as exc:
        v.details["complex_error"] = str(exc)
    return v


def classify(result, context):
    """Family label for a verified result; untagged outside the gallery classes."""
    dim = result.component.dimension
    tag = FAMILIES.get(context, {}).get(dim) if context else None
    return FamilyLabel(dim, result.e, tag)


def reconstruct(o, component, gens, context=None, verify=True, reg_bound=None, seed=0):
    """Extension ideal for one component containing the trivial subspace."""
    from .extend import restrict_pair
    n = o.space.n
    e = component.dimension - n
    if not component.contains_trivial:
        return ExtensionResult([], e, component, status="skipped",
                               message="component does not contain the trivial subspace")
    try:
        phi, _ = restrict_pair(o, component)
        d = gens[0].degree
        J = extension_ideal(phi, d, base_vars=n + 1)
    except RankDrop as exc:
        return ExtensionResult([], e, component, status="rank_drop", message=str(exc))
    res = ExtensionResult(J, e, component)
    if verify:
        res.verification = verify_extension(J, gens, e, reg_bound=reg_bound, seed=seed)
        if not la.is_numeric(J[0].ring.field):
            res.status = "restricted_only" if res.verification.restriction_ok else "failed"
        else:
            res.status = "verified" if res.verification.ok else "failed"
    res.label = classify(res, context)
    return res
