"""Acceptance criteria, one pass/fail line each.

Runs under pytest (lines are echoed in the terminal summary) or directly:
``python3 tests/test_acceptance.py``.
"""

import sys
import time
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

import propcheck as pc  # noqa: E402
from conftest import ACCEPTANCE, pipeline, reconstructed  # noqa: E402
from linext import gallery  # noqa: E402
from linext.cli import RunConfig, run_pipeline  # noqa: E402
from linext.errors import DegenerateDraw  # noqa: E402
from linext.groebner import buchberger, hilbert  # noqa: E402
from linext.oracle import point_sample_degree  # noqa: E402
from linext.strand import betti_table  # noqa: E402

CURVE_BETTI = [[1, 0, 0, 0], [0, 0, 0, 0], [0, 10, 15, 6]]
SWEEP = range(5)


def record(n, title, ok, detail):
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {n} ({title}): {detail}"
    ACCEPTANCE.append(line)
    print(line)
    assert ok, line


def timed(cfg):
    t = time.perf_counter()
    rep = run_pipeline(cfg)
    return rep, time.perf_counter() - t


def ext_by_dim(rep):
    return {x["dimension"]: x for x in rep.extensions}


def ambient_degree(x):
    dim, deg = x["verification"]["dimension_degree"]
    return len(x["vars"]) - 1, deg


def test_criterion_1_rnc4():
    rep, dt = timed(RunConfig("rnc4"))
    comps = rep.components
    ext = ext_by_dim(rep)
    num = rep.input["hilbert_numerator"]
    checks = {
        "dim W = 9, m = 8": (rep.W["dim"], rep.W["m"]) == (9, 8),
        "trivial P^4": len(rep.trivial) == 5,
        "two components 7, 5": sorted(c["dimension"] for c in comps) == [5, 7],
        "both contain trivial": all(c["contains_trivial"] for c in comps),
        "both verified": all(x["status"] == "verified" for x in rep.extensions),
        "degree 4 in P^7 and P^5": (ambient_degree(ext[7]), ambient_degree(ext[5]))
        == ((7, 4), (5, 4)),
        "numerators kept": all(x["verification"]["numerator"] == num for x in ext.values()),
        "Betti tables equal": all(x["verification"]["betti_ok"] for x in ext.values()),
        "under 5 s": dt < 5,
    }
    bad = [k for k, v in checks.items() if not v]
    record(1, "rational normal quartic", not bad, f"{dt:.2f}s; " + (", ".join(bad) or "all checks hold"))


def test_criterion_2_del_pezzo6():
    rep, dt = timed(RunConfig("del_pezzo6"))
    ext = ext_by_dim(rep)
    checks = {
        "dim W = 10, m = 9": (rep.W["dim"], rep.W["m"]) == (10, 9),
        "two components 8, 7": sorted(ext) == [7, 8] and len(rep.components) == 2,
        "both verified": all(x["status"] == "verified" for x in rep.extensions),
        "degree 6 in P^8 and P^7": (ambient_degree(ext[8]), ambient_degree(ext[7]))
        == ((8, 6), (7, 6)),
        "under 30 s": dt < 30,
    }
    bad = [k for k, v in checks.items() if not v]
    record(2, "sextic del Pezzo", not bad, f"{dt:.2f}s; " + (", ".join(bad) or "all checks hold"))


def _sweep(name, check):
    """Run ``check(report)`` for every sweep seed; degenerate draws are excluded."""
    results, excluded = {}, []
    for seed in SWEEP:
        try:
            rep, dt = timed(RunConfig(name, seed=seed, census=(name == "paracanonical_genus6_curve")))
        except DegenerateDraw:
            excluded.append(seed)
            continue
        results[seed] = (check(rep), dt)
    return results, excluded


def _summary(results, excluded):
    bad = {s: r for s, (r, _) in results.items() if r}
    worst = max((dt for _, dt in results.values()), default=0)
    txt = f"seeds {sorted(results)} ok={sorted(set(results) - set(bad))}, slowest {worst:.1f}s"
    if excluded:
        txt += f", excluded (degenerate draws) {excluded}"
    if bad:
        txt += f", failures {bad}"
    return not bad and bool(results), txt


def test_criterion_3_genus6_census():
    def check(rep):
        fails = []
        if rep.to_json()["strata"] != {"9": 1, "7": 5, "5": 20}:
            fails.append(f"strata {rep.to_json()['strata']}")
        if not all(c["contains_trivial"] for c in rep.components):
            fails.append("a component misses the trivial subspace")
        if not rep.census["agrees"]:
            fails.append("census disagrees")
        if sum(rep.timings.values()) >= 600:
            fails.append("over 10 min")
        return fails

    ok, txt = _summary(*_sweep("paracanonical_genus6_curve", check))
    record(3, "genus-6 census {9:1, 7:5, 5:20}", ok, txt)


def test_criterion_4_generic_quintic():
    target = list(hilbert(buchberger(gallery.secant_p2xp4())).numerator)

    def check(rep):
        fails = []
        comps = rep.components
        if [c["dimension"] for c in comps] != [14] or not comps[0]["contains_trivial"]:
            fails.append(f"components {[c['dimension'] for c in comps]}")
            return fails
        (x,) = rep.extensions
        if x["e"] != 10 or x["status"] != "verified":
            fails.append(f"e={x['e']} {x['status']}")
        elif x["verification"]["numerator"] != target:
            fails.append("numerator differs from the secant variety")
        if sum(rep.timings.values()) >= 600:
            fails.append("over 10 min")
        return fails

    ok, txt = _summary(*_sweep("generic_det_quintic_curve", check))
    record(4, "generic quintic: one dim-14 component, e=10 numerator", ok, txt)


def test_criterion_5_prym():
    def check(rep):
        fails = []
        comps = rep.components
        if sorted(c["dimension"] for c in comps) != [5, 14]:
            return [f"components {[c['dimension'] for c in comps]}"]
        if not all(c["contains_trivial"] for c in comps):
            fails.append("a component misses the trivial subspace")
        x = ext_by_dim(rep)[5]
        if x["e"] != 1 or x["status"] != "verified":
            return fails + [f"e=1 extension {x['status']}"]
        if ambient_degree(x) != (5, 10) or x["verification"]["dimension_degree"][0] != 2:
            fails.append(f"not a degree-10 surface in P^5: {x['verification']['dimension_degree']}")
        if x["verification"]["betti"] != CURVE_BETTI:
            fails.append("Betti table differs from the curve table 1 / 0 / 10 15 6")
        if sum(rep.timings.values()) >= 600:
            fails.append("over 10 min")
        return fails

    ok, txt = _summary(*_sweep("prym_symmetric_quintic_curve", check))
    record(5, "Prym: components 14 and 5, Enriques e=1", ok, txt)


def test_criterion_6_curve_betti():
    names = ("generic_det_quintic_curve", "prym_symmetric_quintic_curve",
             "paracanonical_genus6_curve")
    bad, n = [], 0
    for name in names:
        for seed in SWEEP:
            gens = gallery.construct(name, seed=seed)
            n += 1
            if betti_table(gens, 4).rows() != CURVE_BETTI:
                bad.append(f"{name}/{seed} Betti")
            if tuple(hilbert(buchberger(gens)).numerator) != gallery.CURVE_NUMERATOR:
                bad.append(f"{name}/{seed} numerator")
    record(6, "curve Betti tables and numerators", not bad,
           f"{n} curves; " + (", ".join(bad) or "all have Betti rows 1 / 0 / 10 15 6 and 1-10t^3+15t^4-6t^5"))


def test_criterion_7_property_suite():
    fails = []
    rng = np.random.default_rng(7)
    names = ("rnc4", "del_pezzo6", "generic_det_quintic_curve", "prym_symmetric_quintic_curve",
             "paracanonical_genus6_curve")
    with pc.rank_nullity_watch() as watch:
        for name in names:
            P = pipeline(name)
            fails += [f"{name}: {f}" for f in pc.check_strand(P.gens, rng)]
            fails += [f"{name}: {f}" for f in pc.check_split(P.comps, P.o.eq)]
            for res in reconstructed(name).values():
                fails += [f"{name}: {f}" for f in pc.check_extension(res, P.gens)]
        ideals = pc.random_small_ideals(100, seed=11)
        for k, gens in enumerate(ideals):
            fails += [f"random {k}: {f}" for f in pc.check_strand(gens, rng, samples=5)]
            if len(gens) == 6:
                fails += [f"random {k}: {f}" for f in pc.full_checks(gens, seed=k)[0]]
        run_pipeline(RunConfig("rnc4", census=True))
    fails += watch["fails"]
    for k, gens in enumerate(pc.random_small_ideals(10, seed=3, p=7)[::2]):
        fails += [f"point sample {k}: {f}" for f in pc.check_point_degree(gens, 1, seed=k)]
    if point_sample_degree(gallery.rnc4(3), 1, max_ext=4).value != 4:
        fails.append("rnc4 point sample is not 4")
    record(7, "property suite", not fails,
           f"5 gallery inputs, 100 random ideals, {watch['calls']} kernel calls watched; "
           + ("; ".join(fails[:5]) or "zero discrepancies"))


def test_criterion_8_determinism():
    outs = {}
    for name in ("rnc4", "prym_symmetric_quintic_curve"):
        cfg = RunConfig(name, seed=2, census=True)
        a = run_pipeline(cfg).dumps()
        b = run_pipeline(cfg).dumps()
        outs[name] = a == b
    bad = [k for k, v in outs.items() if not v]
    record(8, "determinism", not bad,
           "byte-identical reports for " + ", ".join(outs) if not bad else f"differs: {bad}")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
