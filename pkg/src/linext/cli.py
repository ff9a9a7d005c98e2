"""Command line front end and the end-to-end pipeline.

    python3 -m linext construct rnc4 --prime 32003 --seed 0
    python3 -m linext extend rnc4 --census --out report.json
    python3 -m linext extend ideal.txt --out report.json

An ``extend`` input is either a gallery tag or a text file::

    p 32003
    vars x0 x1 x2 x3 x4
    x0*x2 - x1^2
    ...
"""

from __future__ import annotations

import argparse
import hashlib
import json
import logging
import os
import sys
import time
from dataclasses import dataclass, field as dc_field

import numpy as np

from . import __version__, exactla as la, gallery
from .components import (DEFAULT_BUDGET, DEFAULT_TOWER_CAP, _fp_dot, degree_census, gram,
                         is_sound, split_linear_components, strata_counts)
from .errors import LinextError, ParseError, PipelineError
from .extend import build_system, obstruction_ideal, solve_extension_space
from .field import _is_prime, make_prime_field
from .groebner import buchberger, dimension_degree, hilbert
from .reconstruct import reconstruct
from .ring import Ring, format_poly, parse_poly
from .strand import betti_table, resolution_slice

SCHEMA = "linext-report/1"
PRIME_ENV = "LINEXT_PRIME"

log = logging.getLogger("linext")


def default_prime():
    return int(os.environ.get(PRIME_ENV, gallery.DEFAULT_PRIME))


@dataclass(frozen=True)
class RunConfig:
    input: str
    p: int = dc_field(default_factory=default_prime)
    seed: int = 0
    reg_bound: int | None = None
    tower_cap: int = DEFAULT_TOWER_CAP
    budget: int = DEFAULT_BUDGET
    census: bool = False
    out: str | None = None

    def __post_init__(self):
        if not _is_prime(self.p) or self.p < 5:
            raise ValueError(f"p must be a prime >= 5, got {self.p}")
        if self.budget <= 0 or self.tower_cap <= 0:
            raise ValueError("budget and tower cap must be positive")
        if self.reg_bound is not None and self.reg_bound <= 0:
            raise ValueError("reg_bound must be positive")

    def to_json(self):
        return {"input": self.input, "p": self.p, "seed": self.seed, "reg_bound": self.reg_bound,
                "tower_cap": self.tower_cap, "budget": self.budget, "census": self.census}


@dataclass
class Report:
    config: RunConfig
    input: dict = dc_field(default_factory=dict)
    strand_ranks: tuple = ()
    betti: object = None
    W: dict = dc_field(default_factory=dict)
    trivial: list = dc_field(default_factory=list)
    components: list = dc_field(default_factory=list)
    census: dict | None = None
    extensions: list = dc_field(default_factory=list)
    seed_trail: dict = dc_field(default_factory=dict)
    timings: dict = dc_field(default_factory=dict)

    @property
    def ok(self):
        if any(x["status"] in ("failed", "rank_drop") for x in self.extensions):
            return False
        return self.census is None or self.census["agrees"]

    def to_json(self, timings=False):
        """Report as a dict; timings are left out unless asked for so that equal
        configurations give equal bytes."""
        out = {
            "schema": SCHEMA,
            "version": __version__,
            "config": self.config.to_json(),
            "input": self.input,
            "strand_ranks": list(self.strand_ranks),
            "betti": self.betti.rows() if self.betti is not None else None,
            "W": self.W,
            "trivial": self.trivial,
            "components": self.components,
            "strata": _strata(self.components),
            "census": self.census,
            "extensions": self.extensions,
            "seed_trail": self.seed_trail,
            "ok": self.ok,
        }
        if timings:
            out["timings"] = {k: round(v, 3) for k, v in self.timings.items()}
        return out

    def dumps(self, timings=False):
        return json.dumps(self.to_json(timings), indent=1, sort_keys=True) + "\n"


def _strata(components):
    out = {}
    for c in components:
        out[c["dimension"]] = out.get(c["dimension"], 0) + 1
    return {str(k): v for k, v in sorted(out.items(), reverse=True)}


# ---------------------------------------------------------------------------
# text format


def read_ideal(path):
    with open(path) as fh:
        return parse_ideal(fh.read())


def parse_ideal(text):
    """Parse ``p <prime>``, ``vars ...`` and one polynomial per line."""
    lines = [(i + 1, ln.strip()) for i, ln in enumerate(text.splitlines())]
    lines = [(i, ln) for i, ln in lines if ln and not ln.startswith("#")]
    if len(lines) < 2:
        raise ParseError("expected a 'p' line and a 'vars' line", 1)
    (lp, head), (lv, vars_line) = lines[0], lines[1]
    word, _, rest = head.partition(" ")
    if word != "p" or not rest.strip().isdigit():
        raise ParseError("first line must be 'p <prime>'", lp, 1)
    p = int(rest)
    if not _is_prime(p):
        raise ParseError(f"{p} is not prime", lp, 3)
    word, _, rest = vars_line.partition(" ")
    names = tuple(rest.split())
    if word != "vars" or not names:
        raise ParseError("second line must be 'vars x0 x1 ...'", lv, 1)
    if len(set(names)) != len(names):
        raise ParseError("repeated variable name", lv)
    ring = Ring(make_prime_field(p), names)
    return [parse_poly(text, ring, line=ln) for ln, text in lines[2:]]


def format_ideal(gens):
    ring = gens[0].ring
    head = [f"p {ring.p}", "vars " + " ".join(ring.names)]
    return "\n".join(head + [format_poly(g) for g in gens]) + "\n"


def write_ideal(gens, path):
    with open(path, "w") as fh:
        fh.write(format_ideal(gens))


def write_report(report, path, timings=False):
    with open(path, "w") as fh:
        fh.write(report.dumps(timings))


# ---------------------------------------------------------------------------
# pipeline


class _Stage:
    def __init__(self, name, report):
        self.name, self.report = name, report

    def __enter__(self):
        self.t = time.perf_counter()
        log.info("stage %s", self.name)
        return self

    def __exit__(self, tp, exc, tb):
        self.report.timings[self.name] = time.perf_counter() - self.t
        if exc is not None and isinstance(exc, (LinextError, ArithmeticError, ValueError)) \
                and not isinstance(exc, (PipelineError, ParseError)):
            raise PipelineError(self.name, exc) from exc
        return False


def _load(cfg, report):
    if cfg.input in gallery.REGISTRY:
        gens = gallery.construct(cfg.input, cfg.p, cfg.seed)
        trail = gallery.LAST_TRAIL.get(cfg.input)
        report.seed_trail["gallery"] = dict(trail) if trail else {"seed": cfg.seed, "attempts": 0}
        return gens, gallery.CONTEXT.get(cfg.input)
    if not os.path.exists(cfg.input):
        raise ParseError(f"{cfg.input!r} is neither a gallery tag nor a file")
    return read_ideal(cfg.input), None


def _evidence(comp, eq):
    """Soundness flag plus a digest of the quadrics restricted to the component."""
    K = comp.field
    B = comp.points().basis
    h = hashlib.sha256(json.dumps(comp.to_json()["forms"]).encode())
    for q in eq:
        if len(B):
            R = la.matmul(B, _fp_dot(gram(q), la.transpose(B), K), K)
            h.update(repr(np.asarray(R).tolist() if la.is_numeric(K) else R).encode())
    return {"sound": is_sound(comp, eq), "check": h.hexdigest()[:16]}


def run_pipeline(cfg):
    """Resolve, extend, decompose, reconstruct and verify one input."""
    report = Report(cfg)
    with _Stage("input", report):
        gens, context = _load(cfg, report)
    if not gens:
        raise PipelineError("input", ParseError("no generators"))
    ring = gens[0].ring
    report.input = {"source": cfg.input, "p": ring.p, "vars": list(ring.names),
                    "generators": [format_poly(g) for g in gens], "context": context}
    with _Stage("resolve", report):
        gb = buchberger(gens, ring)
        hs = hilbert(gb)
        reg = cfg.reg_bound or len(hs.reduced)
        s = resolution_slice(gens)
        report.strand_ranks = s.ranks
        report.betti = betti_table(gens, reg, ring, seed=cfg.seed)
        report.input["hilbert_numerator"] = list(hs.numerator)
        report.input["dimension_degree"] = list(dimension_degree(gb))
    report.seed_trail["betti"] = cfg.seed
    with _Stage("extend", report):
        space = solve_extension_space(build_system(s), s)
        o = obstruction_ideal(space)
        report.W = {"dim": space.W.dim, "m": space.m, "n": space.n, "quadrics": len(o.eq)}
        f = o.ring.field
        trivial = la.span(la.identity(space.m + 1, f)[:space.n + 1], space.m + 1, f)
        report.trivial = [[int(x) for x in r] for r in trivial.rows()]
    with _Stage("decompose", report):
        comps = split_linear_components(o.eq, trivial, budget=cfg.budget,
                                        tower_cap=cfg.tower_cap, seed=cfg.seed, ring=o.ring)
        report.components = [{**c.to_json(), "evidence": _evidence(c, o.eq)} for c in comps]
    report.seed_trail["split"] = cfg.seed
    if cfg.census:
        with _Stage("census", report):
            cen = degree_census(o.eq, seed=cfg.seed, ring=o.ring)
            split = strata_counts(comps)
            report.census = {"strata": cen.to_json(), "agrees": cen.counts() == split}
        report.seed_trail["census"] = cfg.seed
    with _Stage("reconstruct", report):
        for i, c in enumerate(comps):
            entry = {"component": i, "dimension": c.dimension, "e": c.dimension - space.n}
            if c.field_degree > 1:
                entry["status"] = "not_attempted"
                entry["message"] = "component is defined over a proper extension field"
            else:
                r = reconstruct(o, c, gens, context=context, reg_bound=cfg.reg_bound,
                                seed=cfg.seed)
                entry["status"] = r.status
                if r.message:
                    entry["message"] = r.message
                if r.label is not None:
                    entry["label"] = r.label.to_json()
                if r.ideal:
                    entry["vars"] = list(r.ring.names)
                    entry["generators"] = [format_poly(g) for g in r.ideal]
                if r.verification is not None:
                    entry["verification"] = r.verification.to_json()
            report.extensions.append(entry)
    return report


# ---------------------------------------------------------------------------
# argument parsing


def _parser():
    ap = argparse.ArgumentParser(prog="linext", description=__doc__.splitlines()[0])
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="cmd", required=True)

    c = sub.add_parser("construct", help="write a gallery ideal in the text format")
    c.add_argument("gallery", choices=sorted(gallery.REGISTRY))
    c.add_argument("--prime", type=int, default=None)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--out", default=None)

    e = sub.add_parser("extend", help="run the pipeline on a gallery tag or ideal file")
    e.add_argument("input")
    e.add_argument("--prime", type=int, default=None, help="only used for gallery tags")
    e.add_argument("--seed", type=int, default=0)
    e.add_argument("--census", action="store_true")
    e.add_argument("--tower-cap", type=int, default=DEFAULT_TOWER_CAP)
    e.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    e.add_argument("--reg-bound", type=int, default=None)
    e.add_argument("--timings", action="store_true", help="include timings in the JSON")
    e.add_argument("--out", default=None)
    return ap


def main(argv=None):
    args = _parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(name)s: %(message)s")
    prime = args.prime if args.prime is not None else default_prime()
    try:
        if args.cmd == "construct":
            gens = gallery.construct(args.gallery, prime, args.seed)
            text = format_ideal(gens)
            if args.out:
                with open(args.out, "w") as fh:
                    fh.write(text)
            else:
                sys.stdout.write(text)
            return 0
        cfg = RunConfig(args.input, prime, args.seed, args.reg_bound, args.tower_cap,
                        args.budget, args.census, args.out)
        report = run_pipeline(cfg)
    except (LinextError, ValueError, OSError) as exc:
        print(f"linext: {exc}", file=sys.stderr)
        return 2
    if cfg.out:
        write_report(report, cfg.out, args.timings)
    else:
        sys.stdout.write(report.dumps(args.timings))
    _summary(report)
    return 0 if report.ok else 1


def _summary(report):
    err = sys.stderr
    print(f"strand ranks {report.strand_ranks}, dim W {report.W.get('dim')}", file=err)
    if report.betti is not None:
        print(str(report.betti), file=err)
    print(f"components by dimension {_strata(report.components)}", file=err)
    if report.census is not None:
        print(f"census agrees: {report.census['agrees']}", file=err)
    for x in report.extensions:
        print(f"  component {x['component']} dim {x['dimension']}: {x['status']}", file=err)
    total = sum(report.timings.values())
    print(f"total {total:.1f}s", file=err)


if __name__ == "__main__":
    sys.exit(main())
