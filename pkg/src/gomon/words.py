"""Words in P and G: expansion into o-words, reduction, normal forms, equality.

Two engines share one stack machine.  The group engine splits the running
vertex element before every crossing into a residue in [0, |alpha|) plus a
multiple of alpha and pushes the multiple across; this is a Serre normal form
for the loop at the base vertex, so two words are equal in G exactly when
their normal forms coincide.  The positive engine only pushes where the image
stays positive (tree edges and A+) and yields properly reduced positive words.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .arith import as_fraction, fmt_fraction
from .graph import Crossing, GraphError, GraphOfMonoids


class WordError(ValueError):
    pass


class ParseError(WordError):
    pass


class NotInP(WordError):
    pass


@dataclass(frozen=True)
class VLetter:
    v: str
    value: Fraction

    def __str__(self):
        return f"{self.v}:{fmt_fraction(self.value)}"


@dataclass(frozen=True)
class ELetter:
    name: str
    inverse: bool = False

    def __str__(self):
        return f"e:{self.name}" + ("^-1" if self.inverse else "")


Word = tuple
_ZERO = Fraction(0)

_TOKEN = re.compile(r"^([A-Za-z_][\w.\-]*):(.+)$")


def parse_word(text: str, g: Optional[GraphOfMonoids] = None, allow_inverse=False) -> Word:
    """Parse whitespace separated ``v:3/2`` and ``e:name`` tokens."""
    out = []
    for tok in text.split():
        if tok in ("ε", "eps", "1"):
            continue
        m = _TOKEN.match(tok)
        if not m:
            raise ParseError(f"malformed token {tok!r}")
        head, tail = m.groups()
        if head == "e":
            inv = tail.endswith("^-1")
            if inv:
                if not allow_inverse:
                    raise ParseError(f"inverse letter {tok!r} in a positive word")
                tail = tail[:-3]
            if g is not None:
                try:
                    g.aedge(tail)
                except GraphError as exc:
                    raise ParseError(str(exc)) from None
            out.append(ELetter(tail, inv))
            continue
        try:
            q = Fraction(tail)
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"bad value in token {tok!r}") from None
        if g is not None:
            if head not in g.vertices:
                raise ParseError(f"unknown vertex in token {tok!r}")
            if not g.vertices[head].contains(q):
                raise ParseError(f"{fmt_fraction(q)} is not in G_{head}")
        if q < 0 and not allow_inverse:
            raise ParseError(f"negative value in positive word: {tok!r}")
        if q != 0:
            out.append(VLetter(head, q))
    return tuple(out)


def format_word(w: Sequence) -> str:
    return " ".join(str(x) for x in w) if w else "ε"


def is_positive(w: Sequence) -> bool:
    return all((isinstance(x, VLetter) and x.value > 0) or
               (isinstance(x, ELetter) and not x.inverse) for x in w)


def inverse_word(w: Sequence) -> Word:
    out = []
    for x in reversed(w):
        if isinstance(x, VLetter):
            out.append(VLetter(x.v, -x.value))
        else:
            out.append(ELetter(x.name, not x.inverse))
    return tuple(out)


def vv(v: str, q) -> VLetter:
    return VLetter(v, as_fraction(q))


# -- o-words ---------------------------------------------------------------

@dataclass
class OWord:
    """h_0 c_1 h_1 ... c_n h_n with h_i living at verts[i]."""

    verts: list
    vals: list
    crossings: list

    @property
    def length(self) -> int:
        return len(self.crossings)


def letter_ends(g: GraphOfMonoids, x) -> tuple:
    if isinstance(x, VLetter):
        return x.v, x.v
    a = g.aedge(x.name)
    return (a.t, a.o) if x.inverse else (a.o, a.t)


def expand(g: GraphOfMonoids, w: Sequence, start: Optional[str] = None,
           end: Optional[str] = None) -> OWord:
    """The o-word of w with tree geodesics filled in, from start to end."""
    g.require_finite()
    cur = g.base if start is None else start
    ow = OWord([cur], [_ZERO], [])

    def walk(to):
        nonlocal cur
        for c in g.geodesic(cur, to):
            ow.crossings.append(c)
            ow.verts.append(c.to)
            ow.vals.append(_ZERO)
        cur = to

    for x in w:
        if isinstance(x, VLetter):
            if x.v not in g.vertices:
                raise WordError(f"unknown vertex {x.v!r}")
            walk(x.v)
            ow.vals[-1] += x.value
        else:
            c = g.a_crossing(x.name, not x.inverse)
            walk(c.frm)
            ow.crossings.append(c)
            ow.verts.append(c.to)
            ow.vals.append(_ZERO)
            cur = c.to
    walk(g.base if end is None else end)
    return ow


def expand_E(g: GraphOfMonoids, w: Sequence) -> OWord:
    return expand(g, w)


# -- the stack machine -----------------------------------------------------

def _in_image(h: Fraction, c: Crossing, side: str = "alpha") -> bool:
    """Is h in the edge image on the given side of c (only 0 for trivial edges)?"""
    gen = c.alpha if side == "alpha" else c.beta
    if gen is None:
        return h == 0
    return (h / gen).denominator == 1


def _split(acc: Fraction, c: Crossing, positive: bool):
    """acc = r + k*alpha; returns (r, k*beta)."""
    if c.alpha is None:
        return acc, _ZERO
    if positive and (c.alpha < 0 or c.beta < 0):
        return acc, _ZERO
    if not acc:
        return _ZERO, _ZERO
    if c.alpha > 0:
        k, r = divmod(acc, c.alpha)
    else:
        q, r = divmod(acc, -c.alpha)
        k = -q
    return r, k * c.beta


def _run(ow: OWord, positive: bool):
    steps = zip(ow.crossings, ow.vals[1:], ow.verts[1:])
    return _feed([], ow.verts[0], ow.vals[0], steps, positive)


def _feed(stack: list, cur, acc, steps, positive: bool):
    """Advance the stack machine over (crossing, value, vertex) steps; mutates stack."""
    for c, h, v in steps:
        if stack and stack[-1][2].is_reverse_of(c) and _in_image(acc, c):
            pv, pr, _ = stack.pop()
            acc = pr + (acc / c.alpha * c.beta if acc else 0)
        else:
            r, pushed = _split(acc, c, positive)
            stack.append((cur, r, c))
            acc = pushed
        cur = v
        if h:
            acc += h
    return stack, cur, acc


# -- incremental normal forms ---------------------------------------------------

@dataclass(frozen=True)
class RunState:
    """Stack machine state after reading a word, before the walk back to the base."""

    stack: tuple
    cur: str
    acc: Fraction


def start_state(g: GraphOfMonoids) -> RunState:
    return RunState((), g.base, _ZERO)


def _walk_steps(g, frm, to):
    return [(c, _ZERO, c.to) for c in g.geodesic(frm, to)]


def extend_state(g: GraphOfMonoids, state: RunState, x) -> RunState:
    """The state after reading one more letter."""
    if isinstance(x, VLetter):
        steps = _walk_steps(g, state.cur, x.v)
        if steps:
            c, _, v = steps[-1]
            steps[-1] = (c, x.value, v)
            stack, cur, acc = _feed(list(state.stack), state.cur, state.acc, steps, False)
        else:
            stack, cur, acc = list(state.stack), state.cur, state.acc + x.value
    else:
        c = g.a_crossing(x.name, not x.inverse)
        steps = _walk_steps(g, state.cur, c.frm) + [(c, _ZERO, c.to)]
        stack, cur, acc = _feed(list(state.stack), state.cur, state.acc, steps, False)
    return RunState(tuple(stack), cur, acc)


def close_state(g: GraphOfMonoids, state: RunState) -> "NormalForm":
    """Normal form of the word read so far."""
    stack, cur, acc = _feed(list(state.stack), state.cur, state.acc,
                            _walk_steps(g, state.cur, g.base), False)
    return NormalForm(tuple(stack), acc, g.base)


@dataclass(frozen=True)
class NormalForm:
    """Normal form of a group element as a loop at the base vertex."""

    entries: tuple  # ((vertex, residue, crossing), ...)
    final: Fraction
    base: str

    def __hash__(self):
        h = self.__dict__.get("_hash")
        if h is None:
            h = hash((self.entries, self.final, self.base))
            object.__setattr__(self, "_hash", h)
        return h

    def letters(self) -> Word:
        out = []
        for v, r, c in self.entries:
            if r != 0:
                out.append(VLetter(v, r))
            if c.kind == "A":
                out.append(ELetter(c.key, not c.forward))
        if self.final != 0:
            out.append(VLetter(self.base, self.final))
        return tuple(out)

    def oword(self) -> OWord:
        verts = [v for v, _, _ in self.entries] + [self.base]
        vals = [r for _, r, _ in self.entries] + [self.final]
        return OWord(verts, vals, [c for _, _, c in self.entries])

    @property
    def is_identity(self) -> bool:
        return not self.entries and self.final == 0

    def __str__(self):
        return format_word(self.letters())


def normal_form(g: GraphOfMonoids, w: Sequence) -> NormalForm:
    """Normal form in G of any word (inverse letters allowed)."""
    stack, cur, acc = _run(expand(g, w), positive=False)
    assert cur == g.base
    return NormalForm(tuple(stack), acc, g.base)


def canonicalize(g: GraphOfMonoids, w: Sequence) -> NormalForm:
    return normal_form(g, w)


def identity(g: GraphOfMonoids) -> NormalForm:
    return NormalForm((), Fraction(0), g.base)


def _as_letters(x) -> Word:
    return x.letters() if isinstance(x, NormalForm) else tuple(x)


def multiply(g: GraphOfMonoids, *parts) -> NormalForm:
    w = ()
    for p in parts:
        w += _as_letters(p)
    return normal_form(g, w)


def group_inverse(g: GraphOfMonoids, x) -> NormalForm:
    return normal_form(g, inverse_word(_as_letters(x)))


# -- positive reduction ----------------------------------------------------

def _stack_to_letters(stack, cur, acc) -> list:
    out = []
    for v, r, c in stack:
        if r != 0:
            out.append(VLetter(v, r))
        if c.kind == "A":
            out.append(ELetter(c.key, not c.forward))
    if acc != 0:
        out.append(VLetter(cur, acc))
    return out


def reduce(g: GraphOfMonoids, w: Sequence) -> Word:
    """A properly reduced positive word equal to w."""
    w = tuple(w)
    if not w:
        return ()
    if not is_positive(w):
        raise WordError("reduce expects a positive word")
    first, _ = letter_ends(g, w[0])
    _, last = letter_ends(g, w[-1])
    stack, cur, acc = _run(expand(g, w, start=first, end=last), positive=True)
    # the last letter may not sit in the image of the tree edge it arrived by
    while stack and stack[-1][2].kind == "T":
        c = stack[-1][2].reverse()
        if not _in_image(acc, c):
            break
        pv, pr, _ = stack.pop()
        acc = pr + (acc / c.alpha * c.beta if acc else 0)
        cur = pv
    out = _stack_to_letters(stack, cur, acc)
    if len(out) == 1 and isinstance(out[0], VLetter):
        out = [_settle_single(g, out[0])]
    return tuple(out)


def _settle_single(g: GraphOfMonoids, x: VLetter) -> VLetter:
    """Move a lone vertex element toward the base while it lies in the edge image."""
    while x.v != g.base:
        c = g.geodesic(x.v, g.base)[0]
        if c.trivial or (x.value / c.alpha).denominator != 1:
            break
        x = VLetter(c.to, x.value / c.alpha * c.beta)
    return x


def is_reduced_oword(ow: OWord) -> bool:
    for i in range(1, len(ow.crossings)):
        c0, c1 = ow.crossings[i - 1], ow.crossings[i]
        if c1.is_reverse_of(c0):
            h = ow.vals[i]
            if _in_image(h, c1):
                return False
    return True


def is_properly_reduced(g: GraphOfMonoids, w: Sequence) -> bool:
    """Reduced 𝔈-expansion plus the two boundary conditions on tree edges."""
    w = tuple(w)
    if not is_positive(w):
        return False
    if not is_reduced_oword(expand(g, w)):
        return False
    if not w:
        return True
    if isinstance(w[0], VLetter):
        nxt = letter_ends(g, w[1])[0] if len(w) > 1 else g.base
        path = g.geodesic(w[0].v, nxt)
        if path and not path[0].trivial and _in_image(w[0].value, path[0]):
            return False
    if isinstance(w[-1], VLetter):
        prv = letter_ends(g, w[-2])[1] if len(w) > 1 else g.base
        path = g.geodesic(prv, w[-1].v)
        if path and not path[-1].trivial and _in_image(w[-1].value, path[-1], "beta"):
            return False
    return True


# -- equality by alignment -------------------------------------------------

def _cancel_backtracks(ow: OWord) -> OWord:
    verts, vals, cs = [ow.verts[0]], [ow.vals[0]], []
    for c, h, v in zip(ow.crossings, ow.vals[1:], ow.verts[1:]):
        if cs and c.is_reverse_of(cs[-1]):
            mid = vals[-1]
            if c.trivial and mid == 0:
                cs.pop(); vals.pop(); verts.pop()
                vals[-1] += h
                continue
            if not c.trivial and (mid / c.alpha).denominator == 1:
                cs.pop(); vals.pop(); verts.pop()
                vals[-1] += mid / c.alpha * c.beta + h
                continue
        cs.append(c); vals.append(h); verts.append(v)
    return OWord(verts, vals, cs)


def equal(g: GraphOfMonoids, w1: Sequence, w2: Sequence) -> bool:
    """Equality in G by aligning reduced o-words and carrying the transfer."""
    a = _cancel_backtracks(expand(g, _as_letters(w1)))
    b = _cancel_backtracks(expand(g, _as_letters(w2)))
    if len(a.crossings) != len(b.crossings):
        return False
    diff = Fraction(0)
    for i, (c, d) in enumerate(zip(a.crossings, b.crossings)):
        if (c.kind, c.key, c.frm, c.to, c.forward) != (d.kind, d.key, d.frm, d.to, d.forward):
            return False
        diff += a.vals[i] - b.vals[i]
        if c.trivial:
            if diff != 0:
                return False
            continue
        k = diff / c.alpha
        if k.denominator != 1:
            return False
        diff = k * c.beta
    return diff + a.vals[-1] - b.vals[-1] == 0


# -- gradings and lengths --------------------------------------------------

@dataclass(frozen=True)
class Metrics:
    ell: int
    frak_l: int
    theta: dict
    theta_plus: int
    theta_minus: int
    theta_total: int


def theta(g: GraphOfMonoids, w: Sequence) -> dict:
    out = {a.name: 0 for a in g.aedges}
    for x in _as_letters(w):
        if isinstance(x, ELetter):
            out[x.name] += -1 if x.inverse else 1
    return out


def metrics(g: GraphOfMonoids, w: Sequence) -> Metrics:
    r = reduce(g, _as_letters(w))
    ell = expand(g, r).length
    inner = ell
    if r:
        first, _ = letter_ends(g, r[0])
        _, last = letter_ends(g, r[-1])
        inner -= g.distance(g.base, first) + g.distance(last, g.base)
    th = theta(g, w)
    plus = sum(n for k, n in th.items() if g.aedge(k).sign > 0)
    minus = sum(n for k, n in th.items() if g.aedge(k).sign < 0)
    return Metrics(ell, inner, th, plus, minus, plus + minus)


# -- membership in P -------------------------------------------------------

def positive_solution(g: GraphOfMonoids, x, allow_a=True) -> Optional[Word]:
    """A positive word equal to the group element x, or None when x ∉ P.

    Positive words have reduced o-words with nonnegative values and forward
    A-crossings, and any two reduced o-words of one element differ by
    transfers k_i * alpha_i -> k_i * beta_i.  So membership is an integer
    feasibility problem h_i - k_i beta_i + k_{i+1} alpha_{i+1} >= 0, solved by a
    backward pass for the slack each suffix needs and a forward greedy pass.
    """
    nf = x if isinstance(x, NormalForm) else normal_form(g, x)
    ow = nf.oword()
    cs, h = ow.crossings, ow.vals
    n = len(cs)
    for c in cs:
        if c.kind == "A" and (not c.forward or not allow_a):
            return None
    NEG = None  # no requirement
    need = [NEG] * (n + 1)
    need[n] = Fraction(0)
    for i in range(n - 1, -1, -1):
        c = cs[i]
        nxt = need[i + 1]
        if c.trivial:
            if nxt is not None and h[i + 1] < nxt:
                return None
            need[i] = Fraction(0)
        elif c.beta > 0:
            if nxt is None:
                need[i] = None
            else:
                K = ((h[i + 1] - nxt) / c.beta).__floor__()
                need[i] = -K * c.alpha
        else:
            need[i] = None
    if need[0] is not None and h[0] < need[0]:
        return None
    vals = list(h)
    v = h[0]
    for i, c in enumerate(cs):
        if c.trivial:
            k = 0
        else:
            k = (-v / c.alpha).__ceil__()
            if c.beta < 0 and need[i + 1] is not None:
                k = max(k, ((need[i + 1] - h[i + 1]) / (-c.beta)).__ceil__())
        vals[i] = v + k * c.alpha if k else v
        v = h[i + 1] - (k * c.beta if k else 0)
    vals[n] = v
    if any(val < 0 for val in vals):
        raise AssertionError("membership solver produced a negative value")
    out = []
    for i, c in enumerate(cs):
        if vals[i] != 0:
            out.append(VLetter(ow.verts[i], vals[i]))
        if c.kind == "A":
            out.append(ELetter(c.key))
    if vals[n] != 0:
        out.append(VLetter(ow.verts[n], vals[n]))
    return tuple(out)


def in_P(g: GraphOfMonoids, x) -> bool:
    return positive_solution(g, x) is not None


def in_PT(g: GraphOfMonoids, x) -> bool:
    return positive_solution(g, x, allow_a=False) is not None
