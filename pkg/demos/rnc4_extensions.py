"""Walk through the rational normal quartic step by step.

The curve has a 9-parameter family of first-order deformations of its
linear strand.  The quadratic obstructions cut out two linear spaces, and
each one rebuilds a surface or fourfold of degree 4 containing the curve
as a linear section.
"""

from linext import exactla as la, gallery
from linext.components import is_sound, split_linear_components
from linext.extend import build_system, obstruction_ideal, solve_extension_space
from linext.reconstruct import reconstruct
from linext.ring import format_poly
from linext.strand import betti_table, resolution_slice

gens = gallery.rnc4()
print("input quadrics:")
for g in gens:
    print("  ", format_poly(g))

s = resolution_slice(gens)
print("\nlinear strand ranks", s.ranks)
print(betti_table(gens, 3))

A = build_system(s)
space = solve_extension_space(A, s)
print(f"\nsystem {A.shape[0]} x {A.shape[1]}, kernel dim {space.W.dim} "
      f"(trivial part {space.trivial.dim})")

o = obstruction_ideal(space)
print("obstruction quadrics:")
for q in o.eq:
    print("  ", format_poly(q))

f = o.ring.field
trivial = la.span(la.identity(space.m + 1, f)[:space.n + 1], space.m + 1, f)
comps = split_linear_components(o.eq, trivial, ring=o.ring)
for c in comps:
    r = reconstruct(o, c, gens, context="rnc4")
    v = r.verification
    dim, deg = v.details["dimension_degree"]
    print(f"\ncomponent of dimension {c.dimension} (sound: {is_sound(c, o.eq)}), e = {r.e}")
    print(f"  extension: dimension {dim}, degree {deg} in P^{r.ring.nvars - 1}, "
          f"{r.status}, label {r.label.tag}")
    print("  numerator", v.details["numerator"])
