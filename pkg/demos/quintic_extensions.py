"""Generic determinantal quintic curves against symmetric (Prym) ones.

A general 3x5 determinantal curve only extends up the determinantal tower
to the secant variety of P^2 x P^4.  Making the three 5x5 slices symmetric
adds a second component, of dimension 5, whose one-step extension is a
degree-10 surface in P^5 with the same Betti table as the curve.
"""

from linext import gallery
from linext.cli import RunConfig, run_pipeline
from linext.groebner import buchberger, hilbert

secant = list(hilbert(buchberger(gallery.secant_p2xp4())).numerator)
print("secant variety numerator:", secant)

for name in ("generic_det_quintic_curve", "prym_symmetric_quintic_curve"):
    rep = run_pipeline(RunConfig(name, seed=0))
    print(f"\n{name}: components {[c['dimension'] for c in rep.components]}")
    for x in rep.extensions:
        v = x.get("verification", {})
        print(f"  e = {x['e']}: {x['status']}, {x.get('label', {}).get('tag')}")
        print(f"    numerator {v.get('numerator')}, dimension/degree {v.get('dimension_degree')}")
        if x["e"] == 1:
            print("    Betti rows", v.get("betti"))
