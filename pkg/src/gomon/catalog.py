"""Small named graphs used by the tests, scripts and CLI."""
from __future__ import annotations

from fractions import Fraction

from .arith import RationalSubgroup
from .graph import AEdge, GraphOfMonoids, TreeEdge

F = Fraction


def cyc(gen=1) -> RationalSubgroup:
    return RationalSubgroup.cyclic(F(gen))


def dense(base=1, primes=(2,)) -> RationalSubgroup:
    return RationalSubgroup.dense(F(base), primes)


def one_vertex(edges, v="v", group=None, families=()) -> GraphOfMonoids:
    """One-vertex graph; edges are (name, n, signed m) in units of the generator."""
    G = group or cyc(1)
    b = G.base
    aedges = tuple(AEdge(name, v, v, F(n) * b, F(m) * b, name in families)
                   for name, n, m in edges)
    return GraphOfMonoids({v: G}, (), aedges, v)


def bs(n: int, m: int) -> GraphOfMonoids:
    """The Baumslag-Solitar monoid b^n e = e b^m (m < 0 gives b^n e b^|m| = e)."""
    return one_vertex([("e", n, m)])


def free_product(G1=None, G2=None) -> GraphOfMonoids:
    return GraphOfMonoids({"a": G1 or cyc(1), "b": G2 or cyc(1)},
                          (TreeEdge("a", "b"),), (), "a")


def amalgam(x, y, G1=None, G2=None) -> GraphOfMonoids:
    return GraphOfMonoids({"a": G1 or cyc(1), "b": G2 or cyc(1)},
                          (TreeEdge("a", "b", F(x), F(y)),), (), "a")


def three_vertex_tree() -> GraphOfMonoids:
    """u -(2~3)- v -(trivial)- w, with an A+ loop at v."""
    return GraphOfMonoids(
        {"u": cyc(1), "v": cyc(1), "w": cyc(1)},
        (TreeEdge("u", "v", F(2), F(3)), TreeEdge("v", "w")),
        (AEdge("f", "v", "v", F(1), F(2)),),
        "u",
    )


def named() -> dict:
    return {
        "bs12": bs(1, 2),
        "bs23": bs(2, 3),
        "bs24": bs(2, 4),
        "bs2m1": bs(2, -1),
        "free": free_product(),
        "tree3": three_vertex_tree(),
    }
