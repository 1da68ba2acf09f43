import pytest

from gomon.arith import RationalSubgroup
from gomon.catalog import amalgam, bs, cyc, dense, free_product, one_vertex
from gomon.classify import (
    AbelianGroup,
    CaseNotCovered,
    HypothesesNotMet,
    KTriple,
    SubspaceNode,
    Z,
    ZERO,
    boundary_report,
    compute_gc,
    ideal_correspondence,
    k_theory,
    match_case,
    nuclearity,
    pure_infiniteness_simple,
    subspace_lattice,
    topological_freeness,
)
from gomon.graph import GraphOfMonoids, NotDefined


def test_abelian_group_normalization():
    assert AbelianGroup.cyclic_quotient(1).is_trivial
    assert AbelianGroup.cyclic_quotient(-1).is_trivial
    assert AbelianGroup.cyclic_quotient(0) == Z
    assert str(AbelianGroup.cyclic_quotient(-2)) == "Z/2"
    assert str(Z + AbelianGroup.cyclic_quotient(3)) == "Z+Z/3"
    assert str(Z + Z) == "Z^2"
    assert str(ZERO) == "0"


def test_hypotheses_not_met():
    with pytest.raises(HypothesesNotMet):
        match_case(GraphOfMonoids({"v": dense()}, (), (), "v"))


def test_case_routing():
    assert match_case(free_product()) == "(i₂)"
    assert match_case(free_product(cyc(), dense())) == "(i₁)"
    assert match_case(amalgam(2, 3)) == "(ii₂)"
    assert match_case(bs(1, 2)) == "GBS(i)"
    assert match_case(bs(2, -1)) == "GBS(ii)"


def test_gbs_diamond():
    lat = subspace_lattice(bs(1, 2))
    assert len(lat.nodes) == 5
    strict = {(lat.nodes[a].label, lat.nodes[b].label) for a, b, s in lat.edges if s}
    assert strict == {("BoundaryOmega", "OmegaAInfty"), ("BoundaryOmega", "OmegaBInfty"),
                      ("OmegaAInfty", "OmegaInfty"), ("OmegaBInfty", "OmegaInfty"),
                      ("OmegaInfty", "Omega")}
    assert sum(n.is_boundary for n in lat.nodes) == 1


def test_point_at_infinity_case():
    lat = subspace_lattice(amalgam(2, 3))
    assert lat.boundary.labels == ("PointInfty", "BoundaryOmega")


@pytest.mark.parametrize("g,expected", [
    (bs(2, 3), RationalSubgroup.trivial()),
    (bs(1, 2), cyc(1)),
    (bs(2, 4), cyc(2)),
])
def test_compute_gc(g, expected):
    assert compute_gc(g) == expected


def test_compute_gc_not_defined():
    with pytest.raises(NotDefined):
        compute_gc(free_product())
    with pytest.raises(NotDefined):
        compute_gc(amalgam(2, 3))


def test_topological_freeness_examples():
    for g in (bs(1, 2), free_product(), amalgam(2, 2)):
        lat = subspace_lattice(g)
        assert topological_freeness(g, lat.node("Omega"))[0] == "Yes"
    lat = subspace_lattice(bs(2, 3))
    assert topological_freeness(bs(2, 3), lat.boundary)[0] == "Yes"
    lat = subspace_lattice(bs(1, 2))
    assert topological_freeness(bs(1, 2), lat.node("OmegaBInfty"))[0] == "No"


def test_ideal_correspondence():
    assert ideal_correspondence(free_product())
    assert not ideal_correspondence(bs(1, 2))
    many_minus = one_vertex([("e", 2, 3), ("f", 1, -1)], families=("f",))
    assert ideal_correspondence(many_minus)  # one A+ edge with m_e = 3


def test_nuclearity():
    assert nuclearity(bs(2, 3)).nuclear
    assert nuclearity(amalgam(2, 2)).nuclear
    r = nuclearity(amalgam(2, 3))
    assert not r.nuclear and r.witness == ("a", "b")


def test_pure_infiniteness():
    assert pure_infiniteness_simple(free_product(cyc(), dense())) == "Yes"
    assert pure_infiniteness_simple(free_product()) == "Unknown"
    assert pure_infiniteness_simple(bs(2, 3)) == "Unknown"


def test_k_theory_examples():
    g = free_product()
    lat = subspace_lattice(g)
    assert k_theory(g, lat.node("Omega")) == KTriple(Z, "1", ZERO)
    assert k_theory(g, lat.node("ClosureOmegaInfty")).as_dict() == {"K0": "0", "unit": "0", "K1": "0"}
    g = bs(2, 3)
    assert k_theory(g, subspace_lattice(g).boundary).as_dict() == {"K0": "0", "unit": "0", "K1": "Z/2"}
    with pytest.raises(CaseNotCovered):
        k_theory(amalgam(2, 3), SubspaceNode(("OmegaAInfty",)))


def test_boundary_reports():
    r = boundary_report(free_product(cyc(), dense()))
    assert r.is_uct_kirchberg and r.label == "O_inf"
    r = boundary_report(free_product())
    assert r.label == "O_2"
    r = boundary_report(bs(2, 3))
    assert r.is_uct_kirchberg and r.label is None
    assert r.k_theory.as_dict() == {"K0": "0", "unit": "0", "K1": "Z/2"}


def test_gc_endpoint_readings_flagged_when_they_differ():
    from gomon.classify import classification_report
    from gomon.specfile import parse_spec
    g = parse_spec("[vertices]\nu 1\nv 1\n[tree]\nu v 1 2\n[aedges]\ne u v 2 4\n[base]\nu\n")
    assert str(compute_gc(g)) == "<2>" and str(compute_gc(g, at="t")) == "<1>"
    assert classification_report(g)["GcReadingsAgree"] is False
    assert classification_report(bs(2, 4))["GcReadingsAgree"] is True
