"""Count the extensions of a paracanonical genus-6 curve two ways.

The curve is a hyperplane section of a rational surface in P^5.  The
splitting search lists every linear component of the obstruction locus,
while the census slices the locus by random linear spaces and counts points
stratum by stratum.  Both should see one P^9, five P^7 and twenty P^5.
"""

import time

from linext import exactla as la, gallery
from linext.components import degree_census, split_linear_components, strata_counts
from linext.extend import build_system, obstruction_ideal, solve_extension_space
from linext.reconstruct import reconstruct
from linext.strand import resolution_slice

gens = gallery.paracanonical_genus6_curve(seed=0)
s = resolution_slice(gens)
space = solve_extension_space(build_system(s), s)
o = obstruction_ideal(space)
print(f"m = {space.m}, {len(o.eq)} obstruction quadrics")

f = o.ring.field
trivial = la.span(la.identity(space.m + 1, f)[:space.n + 1], space.m + 1, f)
t = time.perf_counter()
comps = split_linear_components(o.eq, trivial, ring=o.ring)
print(f"split: {strata_counts(comps)} in {time.perf_counter() - t:.1f}s")
orbits = {c.conjugacy_class: c for c in comps}
for c in orbits.values():
    if c.field_degree > 1:
        print(f"  dim {c.dimension}: orbit of {c.orbit_size} over a degree-{c.field_degree} field")

t = time.perf_counter()
census = degree_census(o.eq, ring=o.ring)
print(f"census: {census.counts()} in {time.perf_counter() - t:.1f}s")

for c in comps:
    if c.field_degree == 1:
        r = reconstruct(o, c, gens, context="genus6")
        print(f"  P^{c.dimension}: {r.status}, {r.label.tag}")
