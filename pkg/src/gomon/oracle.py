"""Brute-force ground truth by bounded enumeration of P."""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

from .graph import GraphOfMonoids
from .words import (
    ELetter,
    close_state,
    extend_state,
    start_state,
    NormalForm,
    VLetter,
    identity,
    in_P,
    inverse_word,
    normal_form,
)


class BudgetExceeded(RuntimeError):
    def __init__(self, msg, ball=None):
        super().__init__(msg)
        self.ball = ball


@dataclass(frozen=True)
class BallBounds:
    max_letters: int = 3
    max_exponent: int = 2  # numerators, in units of the vertex base
    max_denominator: int = 1  # only used for dense vertex groups
    cap: int = 10**6


@dataclass
class Ball:
    graph: GraphOfMonoids
    bounds: BallBounds
    elements: dict = field(default_factory=dict)  # NormalForm -> shortest word
    exhaustive: bool = True

    def __contains__(self, x) -> bool:
        return x in self.elements

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def word(self, x: NormalForm) -> tuple:
        return self.elements[x]

    def by_length(self) -> list:
        return sorted(self.elements, key=lambda x: (len(self.elements[x]), str(x)))


def alphabet(g: GraphOfMonoids, bounds: BallBounds) -> list:
    """Generator letters of P within the exponent bounds."""
    out = []
    for v, G in sorted(g.vertices.items()):
        vals = set()
        dens = [1]
        if G.is_dense:
            dens = [d for d in range(1, bounds.max_denominator + 1)
                    if all(any(p == q for q in G.primes) for p in _prime_factors(d))]
        for n in range(1, bounds.max_exponent + 1):
            for d in dens:
                vals.add(G.base * Fraction(n, d))
        out.extend(VLetter(v, x) for x in sorted(vals))
    out.extend(ELetter(a.name) for a in g.aedges)
    return out


def _prime_factors(n: int) -> set:
    out, p = set(), 2
    while p * p <= n:
        while n % p == 0:
            out.add(p)
            n //= p
        p += 1
    if n > 1:
        out.add(n)
    return out


def enumerate_ball(g: GraphOfMonoids, bounds: BallBounds = BallBounds()) -> Ball:
    """All products of at most max_letters generator letters, deduplicated.

    Each frontier word keeps its stack machine state, so extending it by a
    letter costs a few steps instead of a full normal form computation.
    """
    g.require_finite()
    ball = Ball(g, bounds)
    ball.elements[identity(g)] = ()
    frontier = [((), start_state(g))]
    letters = alphabet(g, bounds)
    for _ in range(bounds.max_letters):
        nxt = []
        for w, state in frontier:
            for x in letters:
                st = extend_state(g, state, x)
                nf = close_state(g, st)
                if nf in ball.elements:
                    continue
                if len(ball.elements) >= bounds.cap:
                    ball.exhaustive = False
                    raise BudgetExceeded(f"ball exceeds {bounds.cap} elements", ball)
                ball.elements[nf] = w + (x,)
                nxt.append((w + (x,), st))
        frontier = nxt
    return ball


def _quotient(g, p, x) -> NormalForm:
    return normal_form(g, inverse_word(p.letters()) + x.letters())


def multiples_in_ball(ball: Ball, p: NormalForm) -> set:
    """Elements x of the ball with p^{-1}x in P."""
    g = ball.graph
    return {x for x in ball if in_P(g, _quotient(g, p, x))}


@dataclass(frozen=True)
class BruteJoin:
    result: Optional[NormalForm]  # None means no common multiple was found
    conclusive: bool


def brute_join(p: NormalForm, q: NormalForm, ball: Ball, cache: Optional[dict] = None) -> BruteJoin:
    """The common right multiple of p and q in the ball that divides all the others.

    An empty answer only means nothing was found, so it is never conclusive.
    """
    g = ball.graph
    cache = {} if cache is None else cache
    for x in (p, q):
        if x not in cache:
            cache[x] = multiples_in_ball(ball, x)
    common = cache[p] & cache[q]
    if not common:
        return BruteJoin(None, False)
    order = sorted(common, key=lambda x: (len(ball.elements[x]), str(x)))
    for m in order:
        if all(in_P(g, _quotient(g, m, c)) for c in common):
            return BruteJoin(m, True)
    return BruteJoin(None, False)


@dataclass
class JoinComparison:
    pairs: int = 0
    checked: int = 0  # pairs whose join lay in the outer ball, or was empty
    inconclusive: int = 0
    mismatches: list = field(default_factory=list)


def compare_join(g: GraphOfMonoids, inner: Ball, outer: Ball, join_fn) -> JoinComparison:
    """Run join_fn on all pairs of the inner ball against brute_join on the outer ball.

    An empty join must have no common multiple in the outer ball. A principal
    join inside the outer ball must be what brute force finds; one outside the
    outer ball cannot be certified and is counted as inconclusive.
    """
    out = JoinComparison()
    cache = {}
    els = inner.by_length()
    for i, p in enumerate(els):
        for q in els[i:]:
            out.pairs += 1
            j = join_fn(g, p, q)
            if j is not None and j not in outer:
                out.inconclusive += 1
                continue
            out.checked += 1
            bj = brute_join(p, q, outer, cache)
            if bj.result != j:
                out.mismatches.append((p, q, j, bj.result))
    return out


# -- defining relations ------------------------------------------------------

def relations(g: GraphOfMonoids) -> list:
    """Defining relation instances as pairs of positive words."""
    rels = []
    for te in g.tree:
        if not te.trivial:
            rels.append(((VLetter(te.v, te.xv),), (VLetter(te.w, te.xw),)))
    for a in g.aedges:
        e = ELetter(a.name)
        if a.sign > 0:
            rels.append(((VLetter(a.o, a.x_obar), e), (e, VLetter(a.t, a.x_e))))
        else:
            rels.append(((VLetter(a.o, a.x_obar), e, VLetter(a.t, -a.x_e)), (e,)))
    return rels


def random_rewrite(g: GraphOfMonoids, w: tuple, rng: random.Random) -> tuple:
    """Apply one relation somewhere in w, split/merge a vertex letter, or insert x x^{-1}."""
    rels = relations(g)
    moves = []
    for i, x in enumerate(w):
        if isinstance(x, VLetter):
            moves.append(("split", i))
        if i + 1 < len(w) and isinstance(x, VLetter) and isinstance(w[i + 1], VLetter) \
                and x.v == w[i + 1].v:
            moves.append(("merge", i))
    for j, (lhs, rhs) in enumerate(rels):
        for side, other in ((lhs, rhs), (rhs, lhs)):
            for i in range(len(w) - len(side) + 1):
                if _matches(w[i:i + len(side)], side):
                    moves.append(("rel", i, side, other))
            moves.append(("insert", side, other))
    for v, G in sorted(g.vertices.items()):
        moves.append(("cancel", VLetter(v, G.base)))
    for a in g.aedges:
        moves.append(("cancel", ELetter(a.name)))
    mv = rng.choice(moves)
    if mv[0] == "cancel":
        i = rng.randint(0, len(w))
        return w[:i] + (mv[1],) + inverse_word((mv[1],)) + w[i:]
    if mv[0] == "split":
        i = mv[1]
        x = w[i]
        a = x.value * Fraction(rng.randint(1, 3), 4)
        return w[:i] + (VLetter(x.v, a), VLetter(x.v, x.value - a)) + w[i + 1:]
    if mv[0] == "merge":
        i = mv[1]
        return w[:i] + (VLetter(w[i].v, w[i].value + w[i + 1].value),) + w[i + 2:]
    if mv[0] == "rel":
        _, i, side, other = mv
        return w[:i] + other + w[i + len(side):]
    # insert both sides of a relation as side * other^{-1} at a random spot
    _, side, other = mv
    i = rng.randint(0, len(w))
    return w[:i] + side + inverse_word(other) + w[i:]


def _matches(seg, pattern) -> bool:
    return all(a == b for a, b in zip(seg, pattern)) and len(seg) == len(pattern)


@dataclass
class PresentationReport:
    relation_failures: list = field(default_factory=list)
    unit_failures: list = field(default_factory=list)
    checked: int = 0

    @property
    def ok(self) -> bool:
        return not self.relation_failures and not self.unit_failures


def presentation_check(g: GraphOfMonoids, ball: Ball,
                       engine: Callable = normal_form, max_pairs: int = 200_000) -> PresentationReport:
    """Every defining relation holds in context, and no nonempty product is ε."""
    rep = PresentationReport()
    rels = relations(g)
    for v in g.vertices:
        b = g.vertices[v].base
        rels.append(((VLetter(v, b), VLetter(v, 2 * b)), (VLetter(v, 3 * b),)))
    elems = list(ball.by_length())
    for lhs, rhs in rels:
        for x in elems:
            w = ball.elements[x]
            rep.checked += 1
            if engine(g, w + lhs) != engine(g, w + rhs):
                rep.relation_failures.append((w, lhs, rhs))
            if engine(g, lhs + w) != engine(g, rhs + w):
                rep.relation_failures.append((lhs, rhs, w))
    one = identity(g)
    pairs = 0
    for x in elems:
        if x == one:
            continue
        if engine(g, ball.elements[x]) == one:
            rep.unit_failures.append(ball.elements[x])
        for y in elems:
            if y == one or pairs >= max_pairs:
                continue
            pairs += 1
            if engine(g, ball.elements[x] + ball.elements[y]) == one:
                rep.unit_failures.append(ball.elements[x] + ball.elements[y])
    return rep


# -- G^c witnesses ------------------------------------------------------------

def _side_ok(ow, s: int) -> bool:
    """Can positions 0..s-1 be made >= 0 by transfers, position s being free?"""
    v = ow.vals[0]
    free = False
    for i in range(s):
        c = ow.crossings[i]
        h = ow.vals[i + 1]
        if c.trivial:
            if not free and v < 0:
                return False
            v, free = h, False
        elif free:
            v = h
        else:
            k = (-v / c.alpha).__ceil__()
            if c.beta < 0:
                free = True
            v = h - k * c.beta
    return True


def in_PPinv(g: GraphOfMonoids, h) -> bool:
    """Is the group element h of the form a b^{-1} with a, b in P?"""
    nf = h if isinstance(h, NormalForm) else normal_form(g, h)
    ow = nf.oword()
    n = len(ow.crossings)
    back = _reverse_negated(ow)
    for s in range(n + 1):
        before, after = ow.crossings[:s], ow.crossings[s:]
        if any(c.kind == "A" and not c.forward for c in before):
            continue
        if any(c.kind == "A" and c.forward for c in after):
            continue
        if _side_ok(ow, s) and _side_ok(back, n - s):
            return True
    return False


def _reverse_negated(ow):
    from .words import OWord
    return OWord(list(reversed(ow.verts)), [-x for x in reversed(ow.vals)],
                 [c.reverse() for c in reversed(ow.crossings)])


@dataclass(frozen=True)
class GcResult:
    all_pass: bool
    witness: Optional[NormalForm] = None


def gc_witness_search(g: GraphOfMonoids, candidate, ball: Ball) -> GcResult:
    """First p in the ball with g p P ∩ p P empty, if any."""
    cand = candidate.letters() if isinstance(candidate, NormalForm) else tuple(candidate)
    for p in ball.by_length():
        pl = p.letters()
        if not in_PPinv(g, normal_form(g, inverse_word(pl) + cand + pl)):
            return GcResult(False, p)
    return GcResult(True)
