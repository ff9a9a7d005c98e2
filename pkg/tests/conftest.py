import functools
from types import SimpleNamespace

import numpy as np
import pytest

from linext import exactla as la, gallery
from linext.components import split_linear_components
from linext.reconstruct import reconstruct
from linext.extend import build_system, obstruction_ideal, solve_extension_space
from linext.strand import resolution_slice

# lines collected by tests/test_acceptance.py, echoed after the run
ACCEPTANCE = []


@functools.cache
def pipeline(name, seed=0, p=gallery.DEFAULT_PRIME):
    """Gallery ideal pushed through resolve, extend and split; cached per session."""
    gens = gallery.construct(name, p, seed)
    s = resolution_slice(gens)
    space = solve_extension_space(build_system(s), s)
    o = obstruction_ideal(space)
    f = o.ring.field
    trivial = la.span(la.identity(space.m + 1, f)[:space.n + 1], space.m + 1, f)
    comps = split_linear_components(o.eq, trivial, ring=o.ring, seed=seed)
    return SimpleNamespace(gens=gens, slice=s, space=space, o=o, trivial=trivial, comps=comps,
                           context=gallery.CONTEXT.get(name))


@functools.cache
def reconstructed(name, seed=0):
    """``{component index: ExtensionResult}`` for the rational components."""
    P = pipeline(name, seed)
    return {i: reconstruct(P.o, c, P.gens, context=P.context)
            for i, c in enumerate(P.comps) if c.field_degree == 1}


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE:
            terminalreporter.write_line(line)
