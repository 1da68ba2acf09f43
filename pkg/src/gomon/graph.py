"""Graphs of monoids over rational vertex groups.

Tree edges identify ``x_v`` in G_v with ``x_w`` in G_w (both positive) or are
trivial.  An A-edge ``e`` from o(e) to t(e) identifies ``x_obar`` in G_o(e)
with ``x_e`` in G_t(e); the sign of ``x_e`` says whether e is in A+ or A-.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Optional

from .arith import (
    RationalSubgroup,
    TRIVIAL,
    fmt_fraction,
    index_data,
    intersect,
)


class GraphError(ValueError):
    pass


class UnknownVertex(GraphError):
    pass


class NotDefined(GraphError):
    pass


class InfiniteFamilyError(GraphError):
    """Word computations need finite data."""


@dataclass(frozen=True)
class TreeEdge:
    v: str
    w: str
    xv: Optional[Fraction] = None
    xw: Optional[Fraction] = None

    @property
    def trivial(self) -> bool:
        return self.xv is None

    def image_at(self, u: str) -> Optional[Fraction]:
        return self.xv if u == self.v else self.xw

    def other(self, u: str) -> str:
        return self.w if u == self.v else self.v


@dataclass(frozen=True)
class AEdge:
    name: str
    o: str
    t: str
    x_obar: Fraction
    x_e: Fraction
    family: bool = False

    @property
    def sign(self) -> int:
        return 1 if self.x_e > 0 else -1


@dataclass(frozen=True)
class Crossing:
    """One oriented edge step of an o-word.

    ``alpha`` generates the edge image on the departure side and ``beta`` the
    matching element on the arrival side, so that alpha * c = c * beta in G.
    Both are None for a trivial tree edge.
    """

    kind: str  # "T" or "A"
    key: object  # tree edge index or A-edge name
    frm: str
    to: str
    alpha: Optional[Fraction]
    beta: Optional[Fraction]
    forward: bool = True

    @property
    def trivial(self) -> bool:
        return self.alpha is None

    def __hash__(self):
        h = self.__dict__.get("_hash")
        if h is None:
            h = hash((self.kind, self.key, self.frm, self.to, self.alpha, self.beta, self.forward))
            object.__setattr__(self, "_hash", h)
        return h

    def reverse(self) -> "Crossing":
        return Crossing(self.kind, self.key, self.to, self.frm, self.beta, self.alpha,
                        not self.forward)

    def is_reverse_of(self, other: "Crossing") -> bool:
        return (self.kind == other.kind and self.key == other.key
                and self.forward != other.forward
                and self.frm == other.to and self.to == other.frm)


@dataclass(frozen=True)
class EdgeInvariants:
    n: int
    m: int
    sgn: int
    k: int
    l: int


@dataclass
class ValidationReport:
    violations: list = field(default_factory=list)
    lcm_witnesses: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


@dataclass(frozen=True)
class GraphOfMonoids:
    vertices: dict
    tree: tuple = ()
    aedges: tuple = ()
    base: str = ""
    vertex_families: frozenset = frozenset()

    def __hash__(self):
        return hash((tuple(sorted(self.vertices.items())), self.tree, self.aedges,
                     self.base, self.vertex_families))

    # -- basic data -------------------------------------------------------

    @property
    def has_families(self) -> bool:
        return bool(self.vertex_families) or any(a.family for a in self.aedges)

    def require_finite(self):
        if self.has_families:
            raise InfiniteFamilyError("graph carries infinite-family markers")

    def group(self, v: str) -> RationalSubgroup:
        try:
            return self.vertices[v]
        except KeyError:
            raise UnknownVertex(v) from None

    def aedge(self, name: str) -> AEdge:
        for a in self.aedges:
            if a.name == name:
                return a
        raise GraphError(f"unknown A-edge {name!r}")

    @cached_property
    def adjacency(self) -> dict:
        adj = {v: [] for v in self.vertices}
        for i, te in enumerate(self.tree):
            if te.v in adj and te.w in adj:
                adj[te.v].append(i)
                adj[te.w].append(i)
        return adj

    def tree_crossing(self, idx: int, frm: str) -> Crossing:
        te = self.tree[idx]
        to = te.other(frm)
        return Crossing("T", idx, frm, to, te.image_at(frm), te.image_at(to), frm == te.v)

    def a_crossing(self, name: str, forward: bool = True) -> Crossing:
        key = (name, forward)
        c = self._crossing_cache.get(key)
        if c is None:
            a = self.aedge(name)
            c = Crossing("A", name, a.o, a.t, a.x_obar, a.x_e, True)
            c = self._crossing_cache[key] = c if forward else c.reverse()
        return c

    @cached_property
    def _crossing_cache(self) -> dict:
        return {}

    @cached_property
    def _geodesic_cache(self) -> dict:
        return {}

    @cached_property
    def _parents(self) -> dict:
        """BFS tree from the base: vertex -> (parent vertex, tree edge index)."""
        par = {self.base: None}
        dq = deque([self.base])
        while dq:
            u = dq.popleft()
            for i in self.adjacency.get(u, ()):
                w = self.tree[i].other(u)
                if w not in par:
                    par[w] = (u, i)
                    dq.append(w)
        return par

    def _to_root(self, v: str) -> list:
        if v not in self.vertices:
            raise UnknownVertex(v)
        out = []
        while self._parents[v] is not None:
            p, i = self._parents[v]
            out.append(self.tree_crossing(i, v))
            v = p
        return out

    def geodesic(self, u: str, v: str) -> tuple:
        """Tree crossings of the geodesic [u, v]."""
        key = (u, v)
        path = self._geodesic_cache.get(key)
        if path is None:
            path = self._geodesic_cache[key] = tuple(self._geodesic(u, v))
        return path

    def _geodesic(self, u: str, v: str) -> list:
        if u == v:
            if u not in self.vertices:
                raise UnknownVertex(u)
            return []
        up = self._to_root(u)
        down = self._to_root(v)
        while up and down and up[-1].key == down[-1].key:
            up.pop()
            down.pop()
        return up + [c.reverse() for c in reversed(down)]

    def distance(self, u: str, v: str) -> int:
        return len(self.geodesic(u, v))

    # -- invariants -------------------------------------------------------

    def transport(self, H: RationalSubgroup, frm: str, to: str) -> RationalSubgroup:
        """The part of H ⊆ G_frm that survives identification along [frm, to]."""
        for v in (frm, to):
            if v not in self.vertices:
                raise UnknownVertex(v)
        for c in self.geodesic(frm, to):
            if c.trivial or H.is_trivial:
                return TRIVIAL
            H = intersect(H, RationalSubgroup.cyclic(c.alpha)).scale(c.beta / c.alpha)
        return H

    def generator(self, v: str) -> Fraction:
        """b_v, the generator of P_v when G_v is cyclic."""
        G = self.group(v)
        if not G.is_cyclic:
            raise NotDefined(f"P_{v} is not cyclic")
        return G.generator

    def edge_invariants(self, name: str) -> EdgeInvariants:
        a = self.aedge(name)
        bo, bt = self.generator(a.o), self.generator(a.t)
        n, m = a.x_obar / bo, abs(a.x_e) / bt
        if n.denominator != 1 or m.denominator != 1:
            raise NotDefined(f"{name}: n_e or m_e is not integral")
        Ho = RationalSubgroup.cyclic(a.x_obar)
        Ht = RationalSubgroup.cyclic(abs(a.x_e))
        moved = self.transport(Ht, a.t, a.o)
        common = intersect(Ho, moved)
        if common.is_trivial:
            raise NotDefined(f"{name}: b_o(e) and b_t(e) have no common power in G_T")
        _, l = index_data(Ho, common)
        back = self.transport(common, a.o, a.t)
        _, k = index_data(Ht, back)
        return EdgeInvariants(int(n), int(m), a.sign, k, l)

    # -- validation -------------------------------------------------------

    def validate(self) -> ValidationReport:
        rep = ValidationReport()
        bad = rep.violations
        if not self.vertices:
            bad.append("graph has no vertices")
            return rep
        for v, G in self.vertices.items():
            if G.is_trivial:
                bad.append(f"vertex {v}: vertex group is trivial")
            if v == "e":
                bad.append("vertex id 'e' is reserved for edge letters")
        if self.base not in self.vertices:
            bad.append(f"base vertex {self.base!r} is not a vertex")
        names = [a.name for a in self.aedges]
        if len(set(names)) != len(names):
            bad.append("A-edge names must be distinct")
        for fam in self.vertex_families:
            if fam not in self.vertices:
                bad.append(f"family marker on unknown vertex {fam!r}")

        # the tree must span
        if len(self.tree) != len(self.vertices) - 1:
            bad.append(f"tree has {len(self.tree)} edges, expected {len(self.vertices) - 1}")
        for i, te in enumerate(self.tree):
            if te.v not in self.vertices or te.w not in self.vertices:
                bad.append(f"tree edge {i}: unknown endpoint")
                continue
            if te.v == te.w:
                bad.append(f"tree edge {i}: loop")
            if (te.xv is None) != (te.xw is None):
                bad.append(f"tree edge {i}: both images or neither must be given")
                continue
            if te.trivial:
                continue
            if te.xv <= 0 or te.xw <= 0:
                bad.append(f"tree edge {i}: tree edges must be order preserving")
            if not self.vertices[te.v].contains(te.xv):
                bad.append(f"tree edge {i}: image {fmt_fraction(te.xv)} not in G_{te.v}")
            if not self.vertices[te.w].contains(te.xw):
                bad.append(f"tree edge {i}: image {fmt_fraction(te.xw)} not in G_{te.w}")
        if self.base in self.vertices:
            if set(self._parents) != set(self.vertices):
                bad.append("tree does not span all vertices")

        for a in self.aedges:
            if a.o not in self.vertices or a.t not in self.vertices:
                bad.append(f"A-edge {a.name}: unknown endpoint")
                continue
            if a.x_obar <= 0:
                bad.append(f"A-edge {a.name}: x_obar must be positive")
            if a.x_e == 0:
                bad.append(f"A-edge {a.name}: edge subgroup must be nontrivial")
            if not self.vertices[a.o].contains(a.x_obar):
                bad.append(f"A-edge {a.name}: image {fmt_fraction(a.x_obar)} not in G_{a.o}")
            if not self.vertices[a.t].contains(a.x_e):
                bad.append(f"A-edge {a.name}: image {fmt_fraction(a.x_e)} not in G_{a.t}")
        if not bad:
            rep.lcm_witnesses = self._lcm_witnesses()
        return rep

    def _lcm_witnesses(self) -> list:
        """For each edge side with image <c>, the least q >= 0 with p + q in <c>."""
        out = []
        sides = []
        for i, te in enumerate(self.tree):
            if not te.trivial:
                sides.append((f"T{i}:{te.v}->{te.w}", te.v, te.xv))
                sides.append((f"T{i}:{te.w}->{te.v}", te.w, te.xw))
        for a in self.aedges:
            sides.append((a.name, a.o, a.x_obar))
        for label, v, c in sides:
            G = self.vertices[v]
            step = G.small_element(G.base) if G.is_dense else G.base
            for j in range(1, 4):
                p = step * j
                q = c * (-((-p) // c)) - p
                out.append({"edge": label, "vertex": v, "p": fmt_fraction(p),
                            "q": fmt_fraction(q)})
        return out


def vertex_count(g: GraphOfMonoids) -> float:
    return float("inf") if g.vertex_families else len(g.vertices)


def a_counts(g: GraphOfMonoids) -> tuple:
    """(#A+, #A-) with infinite families counted as infinity."""
    plus = minus = 0
    for a in g.aedges:
        n = float("inf") if a.family else 1
        if a.sign > 0:
            plus += n
        else:
            minus += n
    return plus, minus
