"""Divisibility and least common right multiples in P."""
from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence

from .graph import GraphOfMonoids
from .words import (
    ELetter,
    NormalForm,
    NotInP,
    VLetter,
    _cancel_backtracks,
    _run,
    _in_image,
    _stack_to_letters,
    expand,
    inverse_word,
    normal_form,
    positive_solution,
    reduce,
)

EMPTY = None  # the empty ideal


class RecursionDepthExceeded(RuntimeError):
    pass


def _letters(x) -> tuple:
    return x.letters() if isinstance(x, NormalForm) else tuple(x)


def positive_letters(g: GraphOfMonoids, x) -> tuple:
    """A properly reduced positive word for an element of P."""
    w = _letters(x)
    if not all((isinstance(t, VLetter) and t.value > 0) or
               (isinstance(t, ELetter) and not t.inverse) for t in w):
        sol = positive_solution(g, normal_form(g, w))
        if sol is None:
            raise NotInP(f"{x} is not in P")
        w = sol
    return reduce(g, w)


def divides(g: GraphOfMonoids, p, x) -> Optional[NormalForm]:
    """y with x = p*y, or EMPTY when x is not in pP."""
    nf = normal_form(g, inverse_word(_letters(p)) + _letters(x))
    if positive_solution(g, nf) is None:
        return EMPTY
    return nf


def precedes(g: GraphOfMonoids, p, x) -> bool:
    return divides(g, p, x) is not EMPTY


# -- p^{-1,e} ----------------------------------------------------------------

def _max_slack(ow) -> Optional[Fraction]:
    """Largest reachable final value over transfers keeping earlier values >= 0.

    Only valid when every crossing has beta > 0 (paths inside the tree).
    """
    v = ow.vals[0]
    for c, h in zip(ow.crossings, ow.vals[1:]):
        if c.trivial:
            if v < 0:
                return None
            v = h
        else:
            k = (-v / c.alpha).__ceil__()
            v = h - k * c.beta
    return v


def edge_side(g: GraphOfMonoids, edge, frm: Optional[str] = None):
    """(vertex, generator) of the image P_ebar^ebar on the departure side of an edge.

    ``edge`` is an A-edge name, or a tree edge index together with ``frm``.
    """
    if isinstance(edge, str):
        a = g.aedge(edge)
        return a.o, a.x_obar
    c = g.tree_crossing(edge, frm)
    return c.frm, c.alpha


def p_inv_e(g: GraphOfMonoids, p, edge, frm: Optional[str] = None):
    """The q with p^{-1}(P_ebar^ebar) = q P_ebar^ebar, as (q, p*q), or EMPTY."""
    o, c = edge_side(g, edge, frm)
    w = _letters(p)
    if any(isinstance(t, ELetter) for t in positive_letters(g, w)):
        return EMPTY
    if c is None:
        return EMPTY
    ow = _cancel_backtracks(expand(g, inverse_word(w), end=o))
    slack = _max_slack(ow)
    if slack is None:
        return EMPTY
    k = max(0, (-slack / c).__ceil__())
    z = k * c
    q = normal_form(g, inverse_word(w) + ((VLetter(o, z),) if z else ()))
    return q, z


# -- joins inside P_T --------------------------------------------------------

def _pt_reduce(g: GraphOfMonoids, w: Sequence) -> list:
    """Positive reduction that keeps the vertex of a lone letter."""
    w = tuple(w)
    if not w:
        return []
    if len(w) == 1:
        return list(w)
    out = list(reduce_keep(g, w))
    return out


def reduce_keep(g: GraphOfMonoids, w: Sequence) -> tuple:
    first, last = w[0].v, w[-1].v
    stack, cur, acc = _run(expand(g, w, start=first, end=last), positive=True)
    while stack and stack[-1][2].kind == "T":
        c = stack[-1][2].reverse()
        if not _in_image(acc, c):
            break
        pv, pr, _ = stack.pop()
        acc = pr + (acc / c.alpha * c.beta if acc else 0)
        cur = pv
    return tuple(_stack_to_letters(stack, cur, acc))


def _pull_back(g: GraphOfMonoids, w: list) -> Optional[list]:
    """Replace w by w * w_m^{-1,dbar}: the last letter retreats one edge."""
    prev = w[-2].v
    last = w[-1]
    d = g.geodesic(prev, last.v)[-1]
    if d.trivial:
        return None
    c = d.beta
    k = (last.value / c).__ceil__()
    moved = VLetter(d.frm, k * d.alpha)
    return _pt_reduce(g, w[:-1] + [moved])


def _push(g: GraphOfMonoids, x: VLetter, toward: str) -> Optional[VLetter]:
    """x * x^{-1,d} for the first edge d of [x.v, toward], seen at t(d)."""
    d = g.geodesic(x.v, toward)[0]
    if d.trivial:
        return None
    k = (x.value / d.alpha).__ceil__()
    return VLetter(d.to, k * d.beta)


def join_T(g: GraphOfMonoids, p: Sequence, q: Sequence, limit: int = 10_000):
    """Least common right multiple of two elements of P_T given as vertex-letter lists."""
    prefix = []
    p = _pt_reduce(g, p)
    q = _pt_reduce(g, q)
    for _ in range(limit):
        if not p:
            return normal_form(g, tuple(prefix) + tuple(q))
        if not q:
            return normal_form(g, tuple(prefix) + tuple(p))
        if precedes(g, p, q):
            return normal_form(g, tuple(prefix) + tuple(q))
        if precedes(g, q, p):
            return normal_form(g, tuple(prefix) + tuple(p))
        if p[0].v == q[0].v:
            a, b = p[0].value, q[0].value
            if a > b:
                p, q, a, b = q, p, b, a
            prefix.append(p[0])
            rest_q = ([VLetter(q[0].v, b - a)] if b > a else []) + q[1:]
            p, q = _pt_reduce(g, p[1:]), _pt_reduce(g, rest_q)
            continue
        np_ = _pull_back(g, p) if len(p) > 1 else _single(g, p[0], q[0].v)
        nq_ = _pull_back(g, q) if len(q) > 1 else _single(g, q[0], p[0].v)
        if np_ is None or nq_ is None:
            return EMPTY
        p, q = np_, nq_
    raise RecursionDepthExceeded(f"join_T did not settle: {p} vs {q}")


def _single(g, x, toward):
    y = _push(g, x, toward)
    return None if y is None else [y]


# -- joins in P --------------------------------------------------------------

def _compact_head(w: tuple):
    """Split a positive word at its first A-letter: (B_0, d_1, rest) or (w, None, ())."""
    for i, t in enumerate(w):
        if isinstance(t, ELetter):
            return w[:i], t, w[i + 1:]
    return w, None, ()


def join(g: GraphOfMonoids, p, q, limit: int = 2_000) -> Optional[NormalForm]:
    """Generator of pP ∩ qP, or EMPTY."""
    prefix = ()
    P = positive_letters(g, p)
    Q = positive_letters(g, q)
    for _ in range(limit):
        if not P:
            return normal_form(g, prefix + Q)
        if not Q:
            return normal_form(g, prefix + P)
        B0, d1, restP = _compact_head(P)
        C0, f1, restQ = _compact_head(Q)
        if d1 is None and f1 is None:
            r = join_T(g, P, Q)
            return EMPTY if r is EMPTY else normal_form(g, prefix + r.letters())
        if d1 is None or f1 is None:
            if d1 is not None:
                P, Q, B0, C0, d1, f1, restP, restQ = Q, P, C0, B0, f1, d1, restQ, restP
            # P lies in P_T, Q = C0 f1 restQ
            s = join_T(g, P, C0)
            if s is EMPTY:
                return EMPTY
            r = divides(g, C0, s)
            res = p_inv_e(g, r, f1.name)
            if res is EMPTY:
                return EMPTY
            a = g.aedge(f1.name)
            if a.sign < 0:
                return normal_form(g, prefix + Q)
            _, z = res
            k = z / a.x_obar
            prefix = prefix + C0 + (f1,)
            P = positive_letters(g, (VLetter(a.t, k * a.x_e),) if k else ())
            Q = positive_letters(g, restQ)
            continue
        if d1 != f1:
            return EMPTY
        u, u2 = B0 + (d1,), C0 + (f1,)
        a = divides(g, u, u2)
        if a is not EMPTY:
            prefix = prefix + u
            P = positive_letters(g, restP)
            Q = positive_letters(g, a.letters() + restQ)
            continue
        a = divides(g, u2, u)
        if a is not EMPTY:
            prefix = prefix + u2
            P = positive_letters(g, a.letters() + restP)
            Q = positive_letters(g, restQ)
            continue
        return EMPTY
    raise RecursionDepthExceeded(f"join did not settle: {P} vs {Q}")
