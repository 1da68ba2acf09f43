"""Characters of the ideal semilattice and the partial action of G on them.

Characters are stored as finite words (chi_p) or ultimately periodic words
u v v v ...  The point b_v^infinity and the Ore point of P_T are special
periodic words.  chi_w(p) = 1 iff some prefix of w lies in pP, and since
prefixes only grow, it is enough to test one long prefix.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .arith import intersect
from .graph import GraphError, GraphOfMonoids
from .lcm import EMPTY, join, positive_letters
from .oracle import Ball, BallBounds, enumerate_ball
from .words import (
    ELetter,
    NormalForm,
    ParseError,
    VLetter,
    _cancel_backtracks,
    expand,
    format_word,
    in_P,
    inverse_word,
    letter_ends,
    normal_form,
    parse_word,
)


class UnsupportedGraphShape(GraphError):
    pass


class InvalidCharacter(GraphError):
    pass


@dataclass(frozen=True)
class Finite:
    word: tuple


@dataclass(frozen=True)
class Periodic:
    prefix: tuple
    period: tuple

    def __post_init__(self):
        if not self.period:
            raise InvalidCharacter("period must be nonempty")
        object.__setattr__(self, "period", _primitive(tuple(self.period)))


@dataclass(frozen=True)
class BInfinity:
    v: str


@dataclass(frozen=True)
class OreInfinity:
    pass


Character = Union[Finite, Periodic, BInfinity, OreInfinity]


def _primitive(w: tuple) -> tuple:
    n = len(w)
    for d in range(1, n):
        if n % d == 0 and w[:d] * (n // d) == w:
            return w[:d]
    return w


# -- serialization ------------------------------------------------------------

def parse_character(text: str, g: Optional[GraphOfMonoids] = None) -> Character:
    text = text.strip()
    kind, _, rest = text.partition(":")
    kind = kind.strip()
    if kind == "oreinf" and not rest.strip():
        return OreInfinity()
    if kind == "binf":
        v = rest.strip()
        if not v or (g is not None and v not in g.vertices):
            raise ParseError(f"bad vertex in character {text!r}")
        return BInfinity(v)
    if kind == "finite":
        return Finite(parse_word(rest, g))
    if kind == "periodic":
        if "|" not in rest:
            raise ParseError("periodic characters need 'prefix | period'")
        pre, per = rest.split("|", 1)
        period = parse_word(per, g)
        if not period:
            raise ParseError("empty period")
        return Periodic(parse_word(pre, g), period)
    raise ParseError(f"unknown character syntax {text!r}")


def format_character(chi: Character) -> str:
    if isinstance(chi, Finite):
        return f"finite: {format_word(chi.word)}"
    if isinstance(chi, Periodic):
        pre = format_word(chi.prefix) if chi.prefix else "ε"
        return f"periodic: {pre} | {format_word(chi.period)}"
    if isinstance(chi, BInfinity):
        return f"binf: {chi.v}"
    return "oreinf"


# -- evaluation ---------------------------------------------------------------

def ore_point_letter(g: GraphOfMonoids) -> VLetter:
    """A letter whose powers are cofinal in P_T: the common part of all vertex groups."""
    if any(te.trivial for te in g.tree):
        raise InvalidCharacter("the Ore point needs every tree edge subgroup nontrivial")
    H = g.group(g.base)
    for v in g.vertices:
        H = intersect(H, g.transport(g.group(v), v, g.base))
    return VLetter(g.base, H.base)


def as_periodic(g: GraphOfMonoids, chi: Character) -> Union[Finite, Periodic]:
    if isinstance(chi, BInfinity):
        return Periodic((), (VLetter(chi.v, g.group(chi.v).base),))
    if isinstance(chi, OreInfinity):
        return Periodic((), (ore_point_letter(g),))
    return chi


def _unit(g: GraphOfMonoids, chi: Periodic) -> Fraction:
    """The smallest positive value the scan can count in."""
    vals = [x.value for x in chi.period + chi.prefix if isinstance(x, VLetter)]
    vals += [g.group(x.v).base for x in chi.period if isinstance(x, VLetter)]
    return min(vals, default=Fraction(1))


def _magnitude_bound(ow) -> Fraction:
    """Bound on |value| at the end of an o-word under any choice of transfers.

    A value crossing an edge turns into at most ceil(|h|/|alpha|)*|beta|; a
    trivial edge stops transfers, so the bound only keeps the larger side.
    """
    m = abs(ow.vals[0])
    for c, h in zip(ow.crossings, ow.vals[1:]):
        if c.trivial:
            m = max(m, abs(h))
        else:
            m = (m / abs(c.alpha)).__ceil__() * abs(c.beta) + abs(h)
    return m


def scan_periods(g: GraphOfMonoids, chi: Periodic, x, scale: int = 1) -> int:
    """Number of periods scanned when testing x against chi.

    The deficit left by x^{-1} u (u the prefix) ends up at the start of the
    period with size at most the magnitude bound; each period then eats at
    least one unit of it, or it is never absorbed at all.
    """
    nf = x if isinstance(x, NormalForm) else normal_form(g, x)
    w = inverse_word(nf.letters()) + tuple(chi.prefix)
    end = letter_ends(g, chi.period[0])[0]
    ow = _cancel_backtracks(expand(g, w, end=end))
    need = (_magnitude_bound(ow) / _unit(g, chi)).__ceil__()
    return scale * (need + len(ow.crossings) + 2)


def prefix(chi: Periodic, periods: int) -> tuple:
    return tuple(chi.prefix) + tuple(chi.period) * periods


def chi_eval(g: GraphOfMonoids, chi: Character, p, scale: int = 1) -> int:
    """chi(p) in {0, 1} for p in P."""
    chi = as_periodic(g, chi)
    pl = p.letters() if isinstance(p, NormalForm) else tuple(p)
    if isinstance(chi, Finite):
        return int(in_P(g, inverse_word(pl) + tuple(chi.word)))
    w = prefix(chi, scan_periods(g, chi, pl, scale))
    return int(in_P(g, inverse_word(pl) + w))


# -- the partial action -------------------------------------------------------

@dataclass(frozen=True)
class GroupElement:
    """g = p q^{-1} with p, q in P."""

    p: tuple
    q: tuple = ()

    def letters(self) -> tuple:
        return tuple(self.p) + inverse_word(self.q)

    def normalized(self, g: GraphOfMonoids) -> "GroupElement":
        """Cancel common right factors letter by letter."""
        p = list(positive_letters(g, self.p))
        q = list(positive_letters(g, self.q))
        while p and q:
            a, b = p[-1], q[-1]
            if isinstance(a, ELetter) and a == b:
                p.pop(); q.pop()
                continue
            if isinstance(a, VLetter) and isinstance(b, VLetter) and a.v == b.v:
                m = min(a.value, b.value)
                p[-1] = VLetter(a.v, a.value - m)
                q[-1] = VLetter(b.v, b.value - m)
                if p[-1].value == 0:
                    p.pop()
                if q[-1].value == 0:
                    q.pop()
                if p and q and isinstance(p[-1], VLetter) and isinstance(q[-1], VLetter) \
                        and p[-1].v == q[-1].v:
                    continue
            break
        return GroupElement(tuple(p), tuple(q))


def _canonical(g: GraphOfMonoids, chi):
    """Absorb trailing copies of the period back into it."""
    if not isinstance(chi, Periodic):
        return chi
    pre, per = list(chi.prefix), tuple(chi.period)
    while len(pre) >= len(per) and tuple(pre[len(pre) - len(per):]) == per:
        del pre[len(pre) - len(per):]
    if len(per) == 1 and isinstance(per[0], VLetter) and pre:
        last = pre[-1]
        if isinstance(last, VLetter) and last.v == per[0].v \
                and (last.value / per[0].value).denominator == 1:
            pre.pop()
    chi = Periodic(tuple(pre), per)
    if not chi.prefix and len(chi.period) == 1:
        x = chi.period[0]
        if isinstance(x, VLetter) and x.value == g.group(x.v).base:
            return BInfinity(x.v)
    return chi


def act(g: GraphOfMonoids, elem, chi: Character, scale: int = 1) -> Optional[Character]:
    """g.chi, or None when undefined."""
    x = elem.letters() if isinstance(elem, (GroupElement, NormalForm)) else tuple(elem)
    orig = chi
    chi = as_periodic(g, chi)
    if isinstance(chi, Finite):
        y = normal_form(g, x + tuple(chi.word))
        return Finite(positive_letters(g, y)) if in_P(g, y) else None
    k = scan_periods(g, chi, normal_form(g, inverse_word(x)), scale)
    y = normal_form(g, x + prefix(chi, k))
    if not in_P(g, y):
        return None
    # y v^oo = (y v^-1) v^oo whenever y v^-1 is still in P
    back = inverse_word(chi.period)
    for _ in range(k):
        z = normal_form(g, y.letters() + back)
        if not in_P(g, z):
            break
        y = z
    out = Periodic(positive_letters(g, y), chi.period)
    if isinstance(orig, OreInfinity) and all(isinstance(t, VLetter) for t in out.prefix):
        return orig
    return _canonical(g, out)


def same_character(g: GraphOfMonoids, chi1: Character, chi2: Character, ball: Ball) -> bool:
    """Agreement of two characters on every element of a ball."""
    if chi1 == chi2:
        return True
    return all(chi_eval(g, chi1, p) == chi_eval(g, chi2, p) for p in ball)


# -- one-vertex GBS data ------------------------------------------------------

def is_one_vertex_gbs(g: GraphOfMonoids) -> bool:
    if len(g.vertices) != 1 or g.vertex_families or not g.aedges:
        return False
    (G,) = g.vertices.values()
    return G.is_cyclic


def _gbs_nm(g: GraphOfMonoids, name: str) -> tuple:
    a = g.aedge(name)
    b = g.generator(a.o)
    return int(a.x_obar / b), int(abs(a.x_e) / b), a.sign


def carry_step(g: GraphOfMonoids, period: tuple, c: int) -> int:
    """Leading b-exponent after pushing carry c right to left through the period."""
    b = g.generator(g.base)
    for x in reversed(period):
        if isinstance(x, VLetter):
            c += int(x.value / b)
        else:
            n, m, _ = _gbs_nm(g, x.name)
            c = n * (c // m)
    return c


def b_unbounded(g: GraphOfMonoids, period: tuple, limit: int = 10**6) -> bool:
    """Do the leading b-exponents of u v^k grow without bound (v free of A_-)?"""
    lam = Fraction(1)
    lo_a, lo_b = Fraction(1), Fraction(0)  # R(c) >= lo_a*c - lo_b
    M = 1
    b = g.generator(g.base)
    for x in reversed(period):
        if isinstance(x, VLetter):
            lo_b -= x.value / b
        else:
            n, m, _ = _gbs_nm(g, x.name)
            lam *= Fraction(n, m)
            lo_a, lo_b = lo_a * n / m, lo_b * n / m + n
            M *= m
    s = 0
    for step in range(limit):
        t = carry_step(g, period, s)
        if t == s:
            return False
        s = t
        if lam > 1 and s > lo_b / (lam - 1):
            return True
        if lam == 1 and step > M:
            return True
    raise RuntimeError("carry iteration did not settle")


# -- flags -------------------------------------------------------------------

@dataclass(frozen=True)
class CharacterFlags:
    in_Omega_infty: bool
    in_Omega_max: Optional[bool]  # None outside one-vertex GBS graphs
    in_Omega_b_inf: Optional[bool]
    in_Omega_A_inf: bool


def _has(word, sign=None, g=None) -> bool:
    for x in word:
        if isinstance(x, ELetter):
            if sign is None or g.aedge(x.name).sign == sign:
                return True
    return False


def in_omega_max(g: GraphOfMonoids, chi: Character) -> bool:
    """Maximality of a character on a one-vertex GBS monoid."""
    if not is_one_vertex_gbs(g):
        raise UnsupportedGraphShape("maximality is only decided for one-vertex GBS graphs")
    chi = as_periodic(g, chi)
    if isinstance(chi, Finite):
        return False
    if _has(chi.period, -1, g):
        return True
    if not _has(chi.period, +1, g):
        return False
    return b_unbounded(g, chi.period)


def classify_character(g: GraphOfMonoids, chi: Character) -> CharacterFlags:
    per = as_periodic(g, chi)
    infinite = not isinstance(per, Finite)
    a_inf = infinite and _has(per.period)
    if is_one_vertex_gbs(g):
        mx = in_omega_max(g, chi)
        b_inf = infinite and (not _has(per.period) or mx)
    else:
        mx = b_inf = None
    return CharacterFlags(infinite, mx, b_inf, a_inf)


# -- bounded maximality check -------------------------------------------------

@dataclass(frozen=True)
class MaximalityResult:
    consistent: bool
    counterexample: Optional[NormalForm] = None


def is_maximal_by_definition(g: GraphOfMonoids, chi: Character, bound: int,
                             max_exponent: int = 2, ball: Optional[Ball] = None) -> MaximalityResult:
    """For each p in the ball with chi(p) = 0, look for q with chi(q) = 1 and pP ∩ qP empty.

    Every q with chi(q) = 1 divides a long prefix of the word, and a longer
    right factor only shrinks qP, so the prefixes are the strongest candidates.
    """
    ball = ball or enumerate_ball(g, BallBounds(bound, max_exponent))
    per = as_periodic(g, chi)
    for p in ball.by_length():
        if chi_eval(g, chi, p):
            continue
        if isinstance(per, Finite):
            q = per.word
        else:
            q = prefix(per, 2 * scan_periods(g, per, p) + bound)
        if join(g, p, q) is not EMPTY:
            return MaximalityResult(False, p)
    return MaximalityResult(True)
