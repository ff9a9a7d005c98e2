from conftest import pipeline, reconstructed
from linext.components import LinearComponent
from linext import exactla as la
from linext.extend import restrict_pair
from linext.groebner import buchberger, dimension_degree
from linext.reconstruct import FamilyLabel, extension_ideal, verify_extension
from linext.ring import coefficient_matrix


def _by_dim(name):
    return {r.component.dimension: r for r in reconstructed(name).values()}


def test_trivial_component_returns_generators():
    P = pipeline("rnc4")
    m, n = P.space.m, P.space.n
    f = P.o.ring.field
    triv = LinearComponent(la.span(la.identity(m + 1, f)[n + 1:], m + 1, f), True)
    phi, _ = restrict_pair(P.o, triv)
    J = extension_ideal(phi, 2)
    both = coefficient_matrix(J + P.gens, 2)
    assert la.rank(both, f) == len(P.gens) == len(J)


def test_rnc4_extensions():
    res = _by_dim("rnc4")
    seg, ver = res[7], res[5]
    assert len(seg.ideal) == 6 and seg.ring.nvars == 8
    assert len(ver.ideal) == 6 and ver.ring.nvars == 6
    assert dimension_degree(buchberger(seg.ideal)) == (4, 4)
    assert dimension_degree(buchberger(ver.ideal)) == (2, 4)
    assert seg.status == ver.status == "verified"
    assert ver.label == FamilyLabel(5, 1, "Veronese surface")


def test_verify_identity_and_failure():
    gens = pipeline("rnc4").gens
    v = verify_extension(gens, gens, 0)
    assert v.ok
    R = gens[0].ring
    x = R.gens
    bad = gens + [x[0] * x[4] + x[1] * x[1]]
    assert not verify_extension(bad, gens, 0).restriction_ok


def test_genus6_labels():
    res = _by_dim("paracanonical_genus6_curve")
    assert res[9].verification.ok
    assert res[9].label.tag == "K^2=-5"
    assert res[7].label.tag == "K^2=-4"
    assert res[7].status == "verified"


def test_quintic_labels():
    gen = _by_dim("generic_det_quintic_curve")[14]
    assert gen.label.tag.startswith("determinantal")
    prym = _by_dim("prym_symmetric_quintic_curve")[5]
    assert prym.label.tag == "Enriques surface" and prym.e == 1


def test_skipped_without_trivial():
    P = pipeline("rnc4")
    comp = LinearComponent(P.comps[0].forms, contains_trivial=False)
    from linext.reconstruct import reconstruct
    assert reconstruct(P.o, comp, P.gens).status == "skipped"
