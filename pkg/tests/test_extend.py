import numpy as np
import pytest

from conftest import pipeline
from linext import exactla as la
from linext.components import LinearComponent
from linext.errors import TrivialNotContained
from linext.extend import build_system, restrict_pair
from linext.ring import coefficient_matrix, matmul_poly


@pytest.mark.parametrize("name,shape", [
    ("rnc4", (90, 72)),
    ("del_pezzo6", (567, 288)),
    ("paracanonical_genus6_curve", (300, 240)),
])
def test_system_shape(name, shape):
    assert build_system(pipeline(name).slice).shape == shape


def test_solution_spaces():
    sp = pipeline("rnc4").space
    assert (sp.W.dim, sp.m, sp.trivial.dim) == (9, 8, 5)
    sp = pipeline("del_pezzo6").space
    assert (sp.W.dim, sp.m, sp.trivial.dim) == (10, 9, 7)
    sp = pipeline("paracanonical_genus6_curve").space
    assert sp.m >= 9 and sp.trivial.dim == 5


def eq_rank(o):
    return la.rank(coefficient_matrix(o.eq, 2, o.ring), o.ring.field)


def test_obstruction_quadrics():
    assert eq_rank(pipeline("rnc4").o) == 3
    assert eq_rank(pipeline("del_pezzo6").o) == 2


def test_eq_vanishes_on_trivial_subspace():
    for name in ("rnc4", "del_pezzo6"):
        o = pipeline(name).o
        n = o.space.n
        for q in o.eq:
            pt = [1] * (n + 1) + [0] * (o.space.m - n)
            assert q.evaluate(pt) == 0


def _trivial_component(o):
    m, n = o.space.m, o.space.n
    f = o.ring.field
    forms = la.span(la.identity(m + 1, f)[n + 1:], m + 1, f)
    return LinearComponent(forms, contains_trivial=True)


def test_trivial_component_gives_original_pair():
    P = pipeline("rnc4")
    phi, psi = restrict_pair(P.o, _trivial_component(P.o))
    assert phi.shape == P.slice.phi2.shape
    assert [[str(phi[i, j]) for j in range(phi.cols)] for i in range(phi.rows)] == \
        [[str(P.slice.phi2[i, j]) for j in range(phi.cols)] for i in range(phi.rows)]


def test_rnc4_restricted_pairs():
    P = pipeline("rnc4")
    shapes = {}
    for c in P.comps:
        phi, psi = restrict_pair(P.o, c)
        assert matmul_poly(phi, psi).is_zero()
        shapes[c.dimension] = (phi.shape, psi.shape, phi.ring.nvars)
    assert shapes == {7: ((6, 8), (8, 3), 8), 5: ((6, 8), (8, 3), 6)}


def test_component_missing_trivial_rejected():
    P = pipeline("rnc4")
    m = P.space.m
    f = P.o.ring.field
    bad = np.zeros((1, m + 1), dtype=np.int64)
    bad[0, 0] = 1
    with pytest.raises(TrivialNotContained):
        restrict_pair(P.o, LinearComponent(la.span(bad, m + 1, f)))
