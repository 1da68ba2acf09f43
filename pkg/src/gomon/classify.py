"""Invariant subspaces, topological freeness, nuclearity, K-theory and the boundary quotient.

Every "#X = infinity" hypothesis comes from the infinite-family markers on the graph.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import inf
from typing import Optional

from .arith import RationalSubgroup, TRIVIAL, intersect
from .graph import GraphError, GraphOfMonoids, NotDefined, a_counts, vertex_count


class HypothesesNotMet(GraphError):
    pass


class CaseNotCovered(GraphError):
    pass


# -- abelian group descriptors -------------------------------------------------

@dataclass(frozen=True)
class AbelianGroup:
    """A finite direct sum of cyclic groups, kept in formula order.

    Each summand is an integer n standing for Z/n, so 0 is Z. Trivial summands
    are dropped on construction. ``opaque`` names a group we do not compute.
    """
    summands: tuple = ()
    opaque: Optional[str] = None

    def __post_init__(self):
        object.__setattr__(self, "summands", tuple(abs(n) for n in self.summands if abs(n) != 1))

    @classmethod
    def cyclic_quotient(cls, n: int) -> "AbelianGroup":
        """Z/n, with Z/0 = Z and Z/(+-1) = 0."""
        return cls((n,))

    def __add__(self, other: "AbelianGroup") -> "AbelianGroup":
        return AbelianGroup(self.summands + other.summands)

    @property
    def rank(self) -> int:
        return self.summands.count(0)

    @property
    def torsion(self) -> tuple:
        return tuple(n for n in self.summands if n)

    @property
    def is_trivial(self) -> bool:
        return self.opaque is None and not self.summands

    def __str__(self) -> str:
        if self.opaque is not None:
            return self.opaque
        if self.summands and all(n == 0 for n in self.summands) and len(self.summands) > 1:
            return f"Z^{len(self.summands)}"
        return "+".join("Z" if n == 0 else f"Z/{n}" for n in self.summands) or "0"


Z = AbelianGroup((0,))
ZERO = AbelianGroup()


@dataclass(frozen=True)
class KTriple:
    K0: AbelianGroup
    unit: str  # "1", "0", "(1,0)" or "opaque"
    K1: AbelianGroup

    def as_dict(self) -> dict:
        return {"K0": str(self.K0), "unit": self.unit, "K1": str(self.K1)}


K_OF_C = KTriple(Z, "1", ZERO)


def _opaque(tag: str) -> KTriple:
    return KTriple(AbelianGroup(opaque=f"K0({tag})"), "opaque", AbelianGroup(opaque=f"K1({tag})"))


def _unit_in(K0: AbelianGroup, unit: str) -> str:
    """The class of 1; it is zero when its summand is trivial."""
    if unit == "1" and K0.is_trivial:
        return "0"
    return unit


# -- graph data --------------------------------------------------------------

@dataclass(frozen=True)
class GraphData:
    nV: float
    nA_plus: float
    nA_minus: float
    trivial_edges: int  # undirected tree edges with trivial subgroup
    any_dense: bool
    all_cyclic: bool

    @property
    def nA(self) -> float:
        return self.nA_plus + self.nA_minus

    @property
    def has_trivial_edge(self) -> bool:
        return self.trivial_edges > 0


def graph_data(g: GraphOfMonoids) -> GraphData:
    plus, minus = a_counts(g)
    dense = any(G.is_dense for G in g.vertices.values())
    return GraphData(vertex_count(g), plus, minus,
                     sum(1 for te in g.tree if te.trivial), dense, not dense)


def _gbs_sums(g: GraphOfMonoids):
    """(sum n_e, sum sgn(e) m_e, sum over A- of m_e) for a one-vertex graph."""
    sn = ssm = sm_minus = 0
    for a in g.aedges:
        inv = g.edge_invariants(a.name)
        sn += inv.n
        ssm += inv.sgn * inv.m
        if inv.sgn < 0:
            sm_minus += inv.m
    return sn, ssm, sm_minus


# -- the lattice -------------------------------------------------------------

LABELS = ("Omega", "ClosureOmegaInfty", "OmegaInfty", "OmegaBInfty", "OmegaAInfty",
          "BoundaryOmega", "PointInfty")


@dataclass
class SubspaceNode:
    labels: tuple  # names of the subspaces that coincide here
    is_boundary: bool = False
    is_minimal: bool = False
    top_free: str = "Unknown"
    top_free_reason: str = ""
    k_theory: Optional[KTriple] = None
    algebra_label: Optional[str] = None

    @property
    def label(self) -> str:
        return self.labels[0]

    def has(self, name: str) -> bool:
        return name in self.labels


@dataclass
class Lattice:
    case: str
    nodes: list
    edges: list  # (smaller index, larger index, strict)

    def node(self, name: str) -> SubspaceNode:
        for n in self.nodes:
            if n.has(name):
                return n
        raise KeyError(name)

    @property
    def boundary(self) -> SubspaceNode:
        return next(n for n in self.nodes if n.is_boundary)


def closure_is_everything(d: GraphData) -> bool:
    """Is the closure of Omega_infinity all of Omega?"""
    if d.any_dense:
        return True
    return d.nV == inf or d.nA_plus == inf


def _chain(case, groups, strict):
    nodes = [SubspaceNode(tuple(gr)) for gr in groups]
    edges = [(i, i + 1, s) for i, s in enumerate(strict)]
    return Lattice(case, nodes, edges)


def match_case(g: GraphOfMonoids) -> str:
    d = graph_data(g)
    if d.nV == 1:
        (G,) = g.vertices.values()
        if d.nA == 0:
            raise HypothesesNotMet("one vertex and no A-edges: P lies in (R,+)")
        if G.is_cyclic:
            if d.nA_plus == inf:
                return "GBS(vi)"
            if d.nA_plus > 0:
                if d.nA_minus == 0:
                    return "GBS(i)"
                return "GBS(iii)" if d.nA_minus < inf else "GBS(v)"
            return "GBS(ii)" if d.nA_minus < inf else "GBS(iv)"
        return "(ii₁)"
    if d.has_trivial_edge:
        return "(i₁)" if d.any_dense else "(i₂)"
    if d.nA == 0:
        return "(ii₂)"
    return "(ii₁)" if d.any_dense else "(ii₃)"


def subspace_lattice(g: GraphOfMonoids) -> Lattice:
    """All closed invariant subspaces with their inclusions, bottom to top."""
    d = graph_data(g)
    case = match_case(g)
    full = closure_is_everything(d)
    B, O, C = "BoundaryOmega", "Omega", "ClosureOmegaInfty"
    if case == "(i₁)":
        lat = _chain(case, [[B, O]], [])
    elif case == "(i₂)":
        lat = _chain(case, [[B, C, O]], []) if full else _chain(case, [[B, C], [O]], [True])
    elif case == "(ii₁)":
        lat = _chain(case, [["OmegaBInfty", B], [O]], [True])
    elif case in ("(ii₂)", "(ii₃)"):
        low = ["PointInfty", B] if case == "(ii₂)" else ["OmegaBInfty", B]
        if full:
            lat = _chain(case, [low, [C, O]], [True])
        else:
            lat = _chain(case, [low, [C], [O]], [True, True])
    elif case == "GBS(i)":
        nodes = [SubspaceNode((B,)), SubspaceNode(("OmegaAInfty",)), SubspaceNode(("OmegaBInfty",)),
                 SubspaceNode(("OmegaInfty",)), SubspaceNode((O,))]
        lat = Lattice(case, nodes, [(0, 1, True), (0, 2, True), (1, 3, True), (2, 3, True),
                                    (3, 4, True)])
    elif case == "GBS(ii)":
        lat = _chain(case, [[B, "OmegaAInfty"], ["OmegaInfty", "OmegaBInfty"], [O]], [True, True])
    elif case == "GBS(iii)":
        lat = _chain(case, [[B], ["OmegaBInfty"], ["OmegaInfty"], [O]], [True, True, True])
    elif case == "GBS(iv)":
        lat = _chain(case, [[B, "OmegaBInfty", "OmegaInfty"], [O]], [True])
    elif case == "GBS(v)":
        lat = _chain(case, [[B, "OmegaBInfty"], ["OmegaInfty"], [O]], [True, True])
    elif case == "GBS(vi)":
        lat = _chain(case, [[B, "OmegaBInfty"], [O]], [True])
    else:  # pragma: no cover
        raise CaseNotCovered(case)
    b = lat.node(B)
    b.is_boundary = b.is_minimal = True
    for n in lat.nodes:
        n.top_free, n.top_free_reason = topological_freeness(g, n, lat)
        try:
            n.k_theory = k_theory(g, n, lat)
        except CaseNotCovered:
            n.k_theory = None
    b.algebra_label = boundary_label(g)
    return lat


# -- G^c and topological freeness --------------------------------------------

def compute_gc(g: GraphOfMonoids, at: str = "o") -> RationalSubgroup:
    """G^c as a subgroup of the base vertex group; TRIVIAL when it is trivial.

    ``at`` picks the endpoint whose generator b spans each edge's subgroup
    <b^(k n)>: "o" (the default) or "t". One-vertex graphs give the same answer.
    """
    if any(te.trivial for te in g.tree):
        raise NotDefined("G^c formula needs every tree edge subgroup nontrivial")
    if not g.aedges:
        raise NotDefined("G^c formula needs at least one A-edge")
    H = None
    for a in g.aedges:
        inv = g.edge_invariants(a.name)
        if inv.l % inv.k:
            return TRIVIAL
        v = a.o if at == "o" else a.t
        gen = inv.k * inv.n * g.generator(v)
        Ha = g.transport(RationalSubgroup.cyclic(gen), v, g.base)
        H = Ha if H is None else intersect(H, Ha)
    for v in g.vertices:
        H = intersect(H, g.transport(g.group(v), v, g.base))
    return H


def boundary_top_free(g: GraphOfMonoids) -> tuple:
    d = graph_data(g)
    if d.has_trivial_edge:
        return "Yes", "some tree edge subgroup is trivial"
    if d.nA == 0:
        return "No", "G = G_T fixes the point at infinity"
    try:
        gc = compute_gc(g)
    except NotDefined as exc:
        return "Unknown", f"G^c not computable: {exc}"
    if gc.is_trivial:
        return "Yes", "G^c is trivial"
    return "No", f"G^c = {gc} is nontrivial"


def _one_edge_mults(g: GraphOfMonoids) -> Optional[tuple]:
    """(k, l) of the unique tree edge in units of the endpoint generators."""
    te = g.tree[0]
    return (te.xv / g.generator(te.v), te.xw / g.generator(te.w))


def _infty_top_free(g: GraphOfMonoids, d: GraphData):
    if 1 < d.nV < inf and d.all_cyclic and d.nA_plus < inf:
        if d.has_trivial_edge:
            return "Yes", "some tree edge subgroup is trivial"
        if d.nA_plus > 0:
            return "Yes", "#A+ > 0"
        if d.nV > 2:
            return "Yes", "#V > 2"
        k, l = _one_edge_mults(g)
        if (k, l) != (2, 2):
            return "Yes", "the tree edge is not the 2-2 doubling"
        return "No", "two vertices joined by the 2-2 doubling edge"
    if d.nV == 1 and d.nA < inf:
        return "No", "one vertex with finitely many A-edges"
    if d.nV == 1 and 0 < d.nA_plus < inf and d.nA_minus == inf:
        return _one_plus_edge(g, d)
    return None


def _one_plus_edge(g, d):
    if d.nA_plus >= 2:
        return "Yes", "#A+ >= 2"
    (e,) = [a for a in g.aedges if a.sign > 0]
    if g.edge_invariants(e.name).m != 1:
        return "Yes", "the only A+ edge has m_e != 1"
    return "No", "the only A+ edge has m_e = 1"


def topological_freeness(g: GraphOfMonoids, node: SubspaceNode, lat: Optional[Lattice] = None):
    d = graph_data(g)
    if node.has("Omega"):
        return "Yes", "the action on Omega is always topologically free"
    if node.is_boundary or node.has("BoundaryOmega"):
        return boundary_top_free(g)
    if node.has("OmegaInfty") or node.has("ClosureOmegaInfty"):
        r = _infty_top_free(g, d)
        if r:
            return r
    if node.has("OmegaBInfty") and d.nV == 1 and d.nA < inf:
        return "No", "one vertex with finitely many A-edges"
    if node.has("OmegaAInfty") and d.nV == 1 and 0 < d.nA_plus < inf and d.nA_minus == 0:
        return _one_plus_edge(g, d)
    return "Unknown", "no criterion covers this subspace"


def ideal_correspondence(g: GraphOfMonoids) -> bool:
    """Are all restrictions topologically free (so ideals match closed invariant subspaces)?"""
    d = graph_data(g)
    if d.has_trivial_edge:
        return True
    if d.nA == 0:
        return False
    try:
        gc_trivial = compute_gc(g).is_trivial
    except NotDefined:
        return False
    if not gc_trivial:
        return False
    if d.nV > 1:
        return True
    if d.nA < inf:
        return False
    if d.nA_plus in (0, inf):
        return True
    return _one_plus_edge(g, d)[0] == "Yes"


# -- nuclearity, pure infiniteness ---------------------------------------------

def _components(g: GraphOfMonoids) -> list:
    """Vertex sets joined by nontrivial tree edges."""
    parent = {v: v for v in g.vertices}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for te in g.tree:
        if not te.trivial:
            parent[find(te.v)] = find(te.w)
    comps = {}
    for v in g.vertices:
        comps.setdefault(find(v), []).append(v)
    return [sorted(c) for c in comps.values()]


@dataclass(frozen=True)
class Nuclearity:
    nuclear: bool
    witness: Optional[tuple] = None


def nuclearity(g: GraphOfMonoids) -> Nuclearity:
    for comp in _components(g):
        if len(comp) == 1:
            continue
        if len(comp) == 2:
            te = next(te for te in g.tree if {te.v, te.w} == set(comp))
            Gv, Gw = g.group(te.v), g.group(te.w)
            if Gv.is_cyclic and Gw.is_cyclic and te.xv == 2 * Gv.base and te.xw == 2 * Gw.base:
                continue
        return Nuclearity(False, tuple(comp))
    return Nuclearity(True)


def pure_infiniteness_simple(g: GraphOfMonoids) -> str:
    d = graph_data(g)
    if d.has_trivial_edge and d.any_dense:
        return "Yes"
    return "Unknown"


# -- K-theory ------------------------------------------------------------------

def _boundary_k(g: GraphOfMonoids, d: GraphData) -> KTriple:
    if d.has_trivial_edge:
        if d.any_dense or d.nV == inf or d.nA_plus == inf:
            return K_OF_C
        N = d.trivial_edges
        K0 = AbelianGroup.cyclic_quotient(N)
        return KTriple(K0, _unit_in(K0, "1"), ZERO)
    if d.nA == 0:
        return _opaque("C*(G)")
    if d.nV > 1 or d.any_dense or d.nA == inf:
        return _opaque("C*(G_T)")
    if d.nA_plus > 0:
        return _gbs_boundary_k(g)
    raise CaseNotCovered("boundary K-theory for one vertex with only A- edges")


def _gbs_boundary_k(g: GraphOfMonoids) -> KTriple:
    sn, ssm, _ = _gbs_sums(g)
    if sn != 1:
        K0a = AbelianGroup.cyclic_quotient(1 - sn)
        if ssm != 1:
            return KTriple(K0a, _unit_in(K0a, "1"), AbelianGroup.cyclic_quotient(1 - ssm))
        K0 = K0a + Z
        return KTriple(K0, "(1,0)" if not K0a.is_trivial else "0", Z)
    (e,) = g.aedges
    m = g.edge_invariants(e.name).m
    if m != 1:
        return KTriple(Z, "1", Z + AbelianGroup.cyclic_quotient(1 - m))
    return KTriple(Z + Z, "(1,0)", Z + Z)


def k_theory(g: GraphOfMonoids, node: SubspaceNode, lat: Optional[Lattice] = None) -> KTriple:
    d = graph_data(g)
    if node.has("Omega"):
        return K_OF_C
    if node.is_boundary or node.has("BoundaryOmega"):
        if d.nV == 1 and d.nA_minus > 0 and d.nA_plus == 0 and d.nA < inf:
            # boundary coincides with Omega_{A,infinity}
            return _a_inf_k(g, d)
        return _boundary_k(g, d)
    if node.has("OmegaBInfty") and not d.has_trivial_edge and d.nA >= 1:
        return _opaque("C*(G_T)")
    if (node.has("OmegaInfty") or node.has("ClosureOmegaInfty")) \
            and d.nA_plus < inf and d.nV < inf and d.all_cyclic:
        if not d.has_trivial_edge:
            return KTriple(Z, "1", Z)
        K0 = AbelianGroup.cyclic_quotient(d.trivial_edges)
        return KTriple(K0, _unit_in(K0, "1"), ZERO)
    if node.has("OmegaAInfty"):
        return _a_inf_k(g, d)
    raise CaseNotCovered(f"no K-theory formula for {node.labels}")


def _a_inf_k(g: GraphOfMonoids, d: GraphData) -> KTriple:
    if not (d.nV == 1 and d.all_cyclic and d.nA < inf and (d.nA_plus == 0 or d.nA_minus == 0)):
        raise CaseNotCovered("Omega_{A,infinity} formula needs one cyclic vertex, #A finite, "
                             "and A+ or A- empty")
    sn, _, sm_minus = _gbs_sums(g)
    K1_tors = AbelianGroup.cyclic_quotient(1 + sm_minus)
    if sn != 1:
        K0 = AbelianGroup.cyclic_quotient(1 - sn)
        return KTriple(K0, _unit_in(K0, "1"), K1_tors)
    return KTriple(Z, "1", Z + K1_tors)


# -- boundary quotient -----------------------------------------------------------

def boundary_label(g: GraphOfMonoids) -> Optional[str]:
    rep = boundary_report(g)
    return rep.label


@dataclass(frozen=True)
class BoundaryReport:
    tf: str
    nuclear: bool
    is_uct_kirchberg: bool
    k_theory: Optional[KTriple]
    label: Optional[str]


class TheoremConsistencyFailure(AssertionError):
    pass


def boundary_report(g: GraphOfMonoids) -> BoundaryReport:
    d = graph_data(g)
    tf, _ = boundary_top_free(g)
    nuc = nuclearity(g).nuclear
    uct = tf == "Yes" and nuc
    try:
        K = _boundary_k_for_node(g, d)
    except CaseNotCovered:
        K = None
    label = None
    if uct and d.has_trivial_edge:
        if d.any_dense or d.nV == inf or d.nA_plus == inf:
            label = "O_inf"
            _check(K == K_OF_C, "O_inf must have the K-theory of C")
        else:
            N = d.trivial_edges
            label = f"O_{N + 1}"
            K0 = AbelianGroup.cyclic_quotient(N)
            _check(K == KTriple(K0, _unit_in(K0, "1"), ZERO), "O_{N+1} must have K0 = Z/N")
    if uct and d.nV == 1 and d.nA < inf and d.nA_plus > 0 and d.all_cyclic:
        _check(_gbs_sums(g)[0] != 1, "sum of n_e must differ from 1 here")
    return BoundaryReport(tf, nuc, uct, K, label)


def _boundary_k_for_node(g, d):
    return k_theory(g, SubspaceNode(("BoundaryOmega",), is_boundary=True))


def _check(ok: bool, msg: str):
    if not ok:
        raise TheoremConsistencyFailure(msg)


# -- full report -------------------------------------------------------------------

def _count(x) -> object:
    return "inf" if x == inf else int(x)


def classification_report(g: GraphOfMonoids) -> dict:
    d = graph_data(g)
    lat = subspace_lattice(g)
    nodes = []
    for n in lat.nodes:
        nodes.append({
            "labels": list(n.labels),
            "isBoundary": n.is_boundary,
            "isMinimal": n.is_minimal,
            "topFree": n.top_free,
            "topFreeReason": n.top_free_reason,
            "kTheory": n.k_theory.as_dict() if n.k_theory else None,
            "algebraLabel": n.algebra_label,
        })
    edges = [{"sub": list(lat.nodes[a].labels), "sup": list(lat.nodes[b].labels),
              "strict": s} for a, b, s in lat.edges]
    try:
        gc = compute_gc(g)
        gc_s = "trivial" if gc.is_trivial else str(gc)
        readings_agree = gc == compute_gc(g, at="t")
    except NotDefined as exc:
        gc_s = f"not defined: {exc}"
        readings_agree = None
    br = boundary_report(g)
    nuc = nuclearity(g)
    return {
        "case": lat.case,
        "counts": {"V": _count(d.nV), "A+": _count(d.nA_plus), "A-": _count(d.nA_minus),
                   "trivialTreeEdges": d.trivial_edges},
        "lattice": {"nodes": nodes, "edges": edges},
        "Gc": gc_s,
        "GcReadingsAgree": readings_agree,
        "nuclear": nuc.nuclear,
        "nuclearWitness": list(nuc.witness) if nuc.witness else None,
        "idealCorrespondence": ideal_correspondence(g),
        "pureInfiniteSimple": pure_infiniteness_simple(g),
        "boundary": {"TF": br.tf, "N": br.nuclear, "isUCTKirchberg": br.is_uct_kirchberg,
                     "label": br.label},
        "K_boundary": br.k_theory.as_dict() if br.k_theory else None,
    }
