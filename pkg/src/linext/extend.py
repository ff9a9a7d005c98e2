"""The linear system for first-order deformations of a pair of linear
differentials, its solution space, and the quadratic obstruction ideal.

Notation: ``phi = sum_l x_l Phi_l`` (r1 x r2) and ``psi = sum_l x_l Psi_l``
(r2 x r3).  Unknowns are scalar matrices ``At`` (r1 x r2) and ``Bt``
(r2 x r3), flattened row-major and concatenated.  For every variable index
``l`` the block ``At Psi_l + Phi_l Bt = 0`` contributes ``r1 * r3`` rows.
Each pair ``(Phi_k, Psi_k)`` solves the system because ``phi psi = 0``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import exactla as la
from .errors import ConeSuspected, ProductNonzero, TrivialNotContained
from .ring import PolyMatrix, Poly, Ring, from_slices, matmul_poly, variable_slices


@dataclass
class ExtensionProblem:
    slice: object
    n: int
    Phi: list
    Psi: list

    @property
    def shapes(self):
        r1, r2 = self.Phi[0].shape
        return r1, r2, self.Psi[0].shape[1]


def make_problem(s):
    ring = s.phi2.ring
    return ExtensionProblem(s, ring.nvars - 1, variable_slices(s.phi2), variable_slices(s.phi3))


def build_system(s, n=None):
    """Coefficient matrix of the deformation equations.

    ``(n+1) r1 r3`` rows and ``r1 r2 + r2 r3`` columns.
    """
    prob = s if isinstance(s, ExtensionProblem) else make_problem(s)
    if n is not None and n != prob.n:
        raise ValueError(f"n={n} but the slice lives on P^{prob.n}")
    r1, r2, r3 = prob.shapes
    blocks = []
    for Phi, Psi in zip(prob.Phi, prob.Psi):
        blocks.append(np.hstack([np.kron(np.eye(r1, dtype=np.int64), Psi.T),
                                 np.kron(Phi, np.eye(r3, dtype=np.int64))]))
    p = prob.slice.ring.field.p
    return np.vstack(blocks) % p


@dataclass
class SolutionSpace:
    """Kernel ``W`` of the system with the trivial pairs first in ``basis``."""

    problem: ExtensionProblem
    W: la.Subspace
    trivial: la.Subspace
    basis: np.ndarray  # (m+1) x (N+1), rows 0..n trivial

    @property
    def N(self):
        return self.W.ambient - 1

    @property
    def m(self):
        return self.W.dim - 1

    @property
    def n(self):
        return self.problem.n


def trivial_vectors(prob):
    return np.array([np.concatenate([Phi.ravel(), Psi.ravel()])
                     for Phi, Psi in zip(prob.Phi, prob.Psi)], dtype=np.int64)


def solve_extension_space(system, s):
    """Right kernel of the system, re-based so the trivial pairs come first."""
    prob = s if isinstance(s, ExtensionProblem) else make_problem(s)
    f = prob.slice.ring.field
    W = la.right_kernel(system, f, cols=system.shape[1])
    T = trivial_vectors(prob)
    if la.matmul(system, T.T, f).any():
        raise AssertionError("a trivial pair fails the deformation equations")
    triv = la.span(T, W.ambient, f)
    if triv.dim != prob.n + 1:
        raise ConeSuspected(f"trivial pairs span only {triv.dim} of {prob.n + 1} dimensions")
    if not la.subspace_contains(W, triv):
        raise AssertionError("trivial subspace not inside the kernel")
    rest = [la.reduce_against(v, triv) for v in W.rows()]
    comp = la.span(rest, W.ambient, f) if rest else None
    basis = T if comp is None or comp.dim == 0 else np.vstack([T, comp.basis])
    return SolutionSpace(prob, W, triv, basis % f.p)


@dataclass
class ObstructionIdeal:
    """Parameter matrices over ``K[y_0..y_m]`` and the quadrics ``eq``."""

    space: SolutionSpace
    ring: Ring
    A: PolyMatrix
    B: PolyMatrix
    eq: list
    A_slices: list
    B_slices: list


def _split_basis(space):
    r1, r2, r3 = space.problem.shapes
    As = [v[:r1 * r2].reshape(r1, r2) for v in space.basis]
    Bs = [v[r1 * r2:].reshape(r2, r3) for v in space.basis]
    return As, Bs


def parameter_ring(field, m):
    return Ring.standard(field, m + 1, prefix="y")


def obstruction_ideal(space):
    """Entries of ``A B`` as quadrics in the parameters, deduplicated up to scalar."""
    f = space.problem.slice.ring.field
    p = f.p
    m = space.m
    n = space.n
    ring = parameter_ring(f, m)
    As, Bs = _split_basis(space)
    A = from_slices(ring, As)
    B = from_slices(ring, Bs)
    # coefficient of y_s y_t in entry (a, c)
    Ast = np.stack(As)  # (m+1, r1, r2)
    Bst = np.stack(Bs)  # (m+1, r2, r3)
    P = np.einsum("sij,tjk->stik", Ast, Bst) % p
    sym = (P + P.transpose(1, 0, 2, 3)) % p
    r1, r3 = P.shape[2], P.shape[3]
    seen = set()
    eq = []
    for a in range(r1):
        for c in range(r3):
            terms = {}
            for s_ in range(m + 1):
                for t in range(s_, m + 1):
                    v = int(P[s_, s_, a, c]) if s_ == t else int(sym[s_, t, a, c])
                    if v:
                        e = [0] * (m + 1)
                        e[s_] += 1
                        e[t] += 1
                        terms[tuple(e)] = v
            if not terms:
                continue
            q = Poly(ring, terms, check=False).monic()
            key = tuple(sorted(q.terms.items()))
            if key not in seen:
                seen.add(key)
                eq.append(q)
    for q in eq:
        for mono in q.terms:
            if all(e == 0 for e in mono[n + 1:]):
                raise AssertionError("eq does not vanish on the trivial subspace")
    return ObstructionIdeal(space, ring, A, B, eq, As, Bs)


def restrict_pair(o, component):
    """The two linear matrices over ``K[x_0..x_n, y_{n+1}..y_{n+e}]`` for a
    linear component containing the trivial subspace.

    ``component`` is a :class:`linext.components.LinearComponent` or a
    Subspace of parameter space (the points of the component).
    """
    space = o.space
    n = space.n
    m = space.m
    pts = component_points(component, m)
    f = pts.field
    T = la.span(la.identity(m + 1, f)[:n + 1] if la.is_numeric(f)
                else [[f.one if i == j else f.zero for j in range(m + 1)] for i in range(n + 1)],
                m + 1, f)
    if not la.subspace_contains(pts, T):
        raise TrivialNotContained("component does not contain the trivial subspace")
    extra = [la.reduce_against(v, T) for v in pts.rows()]
    comp = la.span(extra, m + 1, f)
    e = comp.dim
    names = tuple(f"x{i}" for i in range(n + 1)) + tuple(f"y{n + 1 + j}" for j in range(e))
    ring = Ring(f, names)
    base = space.problem.slice.ring.field
    As = [_embed_mat(a, base, f) for a in o.A_slices]
    Bs = [_embed_mat(b, base, f) for b in o.B_slices]
    new_A = As[:n + 1] + [_combine(comp_row, As, f) for comp_row in comp.rows()]
    new_B = Bs[:n + 1] + [_combine(comp_row, Bs, f) for comp_row in comp.rows()]
    r1, r2, r3 = space.problem.shapes
    phi = from_slices(ring, new_A, [0] * r1, [1] * r2)
    psi = from_slices(ring, new_B, [1] * r2, [2] * r3)
    if not matmul_poly(phi, psi).is_zero():
        raise ProductNonzero("restricted matrices do not multiply to zero")
    return phi, psi


def component_points(component, m):
    """Subspace of K^{m+1} (over the component's field) of its points."""
    if isinstance(component, la.Subspace):
        return component
    return component.points()


def _embed_mat(a, base, f):
    if f == base:
        return a
    return [[f.embed(int(x), base) for x in row] for row in a]


def _combine(coeffs, mats, f):
    """``sum_t coeffs[t] * mats[t]``."""
    if la.is_numeric(f):
        out = np.zeros_like(mats[0])
        for c, M in zip(coeffs, mats):
            if c:
                out = (out + int(c) * M) % f.p
        return out
    rows, cols = la.shape(mats[0])
    out = [[f.zero] * cols for _ in range(rows)]
    for c, M in zip(coeffs, mats):
        if f.is_zero(c):
            continue
        for i in range(rows):
            for j in range(cols):
                if not f.is_zero(M[i][j]):
                    out[i][j] = f.add(out[i][j], f.mul(c, M[i][j]))
    return out
