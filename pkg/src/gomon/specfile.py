"""Text format for graphs of monoids.

    # comments run to the end of the line
    [vertices]
    v 1                       # G_v = Z, generator 1
    d 1 primes 2 3            # G_d = Z[1/6]
    w 1 family = infinite     # stands for infinitely many copies
    [tree]
    v d trivial
    v w 2 3                   # x_v = 2 in G_v is identified with x_w = 3 in G_w
    [aedges]
    e v v 1 2                 # name o t x_obar x_e (x_e < 0 for A-)
    f v v 1 -1 family = infinite
    [base]
    v

Tokens: identifiers ``[A-Za-z_][A-Za-z0-9_.-]*``, rationals ``-?N`` or
``-?N/M``, the keywords ``trivial``, ``primes`` and ``family = infinite``.
"""
from __future__ import annotations

import re
from fractions import Fraction

from .arith import RationalSubgroup, fmt_fraction
from .graph import AEdge, GraphOfMonoids, TreeEdge
from .words import ParseError

SECTIONS = ("vertices", "tree", "aedges", "base")
_IDENT = re.compile(r"^[A-Za-z_][A-Za-z0-9_.\-]*$")
_FAMILY = ("family", "=", "infinite")


def _ident(tok: str, lineno: int) -> str:
    if not _IDENT.match(tok):
        raise ParseError(f"line {lineno}: bad identifier {tok!r}")
    return tok


def _rational(tok: str, lineno: int) -> Fraction:
    if not re.match(r"^-?\d+(/\d+)?$", tok):
        raise ParseError(f"line {lineno}: bad rational {tok!r}")
    try:
        return Fraction(tok)
    except ZeroDivisionError:
        raise ParseError(f"line {lineno}: zero denominator in {tok!r}") from None


def _strip_family(toks: list) -> tuple:
    if tuple(toks[-3:]) == _FAMILY:
        return toks[:-3], True
    return toks, False


def parse_spec(text: str) -> GraphOfMonoids:
    """Parse the text format; errors carry line numbers."""
    section = None
    seen = set()
    vertices, fams, tree, aedges, base = {}, set(), [], [], None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = re.match(r"^\[(\w+)\]$", line)
        if m:
            section = m.group(1)
            if section not in SECTIONS:
                raise ParseError(f"line {lineno}: unknown section [{section}]")
            if section in seen:
                raise ParseError(f"line {lineno}: duplicate section [{section}]")
            seen.add(section)
            continue
        if section is None:
            raise ParseError(f"line {lineno}: content before the first section")
        toks, fam = _strip_family(line.replace("=", " = ").split())
        if section == "vertices":
            if len(toks) < 2:
                raise ParseError(f"line {lineno}: expected '<id> <generator> [primes ...]'")
            v = _ident(toks[0], lineno)
            if v in vertices:
                raise ParseError(f"line {lineno}: duplicate vertex {v!r}")
            gen = _rational(toks[1], lineno)
            primes = ()
            if len(toks) > 2:
                if toks[2] != "primes" or len(toks) == 3:
                    raise ParseError(f"line {lineno}: expected 'primes p1 p2 ...'")
                primes = tuple(int(_rational(p, lineno)) for p in toks[3:])
            try:
                vertices[v] = RationalSubgroup.dense(gen, primes) if primes \
                    else RationalSubgroup.cyclic(gen)
            except ValueError as exc:
                raise ParseError(f"line {lineno}: {exc}") from None
            if fam:
                fams.add(v)
        elif section == "tree":
            if fam:
                raise ParseError(f"line {lineno}: tree edges cannot carry family markers")
            if len(toks) == 3 and toks[2] == "trivial":
                tree.append(TreeEdge(_ident(toks[0], lineno), _ident(toks[1], lineno)))
            elif len(toks) == 4:
                tree.append(TreeEdge(_ident(toks[0], lineno), _ident(toks[1], lineno),
                                     _rational(toks[2], lineno), _rational(toks[3], lineno)))
            else:
                raise ParseError(f"line {lineno}: expected '<v> <w> trivial' or '<v> <w> <x_v> <x_w>'")
        elif section == "aedges":
            if len(toks) != 5:
                raise ParseError(f"line {lineno}: expected '<name> <o> <t> <x_obar> <x_e>'")
            name, o, t = (_ident(x, lineno) for x in toks[:3])
            aedges.append(AEdge(name, o, t, _rational(toks[3], lineno),
                                _rational(toks[4], lineno), fam))
        else:
            if base is not None or len(toks) != 1 or fam:
                raise ParseError(f"line {lineno}: [base] holds exactly one vertex id")
            base = _ident(toks[0], lineno)
    if not vertices:
        raise ParseError("missing [vertices] section")
    if base is None:
        if len(vertices) != 1:
            raise ParseError("missing [base] section")
        (base,) = vertices
    return GraphOfMonoids(vertices, tuple(tree), tuple(aedges), base, frozenset(fams))


def render_spec(g: GraphOfMonoids) -> str:
    fam = " family = infinite"
    out = ["[vertices]"]
    for v, G in g.vertices.items():
        line = f"{v} {fmt_fraction(G.base)}"
        if G.primes:
            line += " primes " + " ".join(str(p) for p in sorted(G.primes))
        out.append(line + (fam if v in g.vertex_families else ""))
    if g.tree:
        out.append("[tree]")
        for te in g.tree:
            imgs = "trivial" if te.trivial else f"{fmt_fraction(te.xv)} {fmt_fraction(te.xw)}"
            out.append(f"{te.v} {te.w} {imgs}")
    if g.aedges:
        out.append("[aedges]")
        for a in g.aedges:
            out.append(f"{a.name} {a.o} {a.t} {fmt_fraction(a.x_obar)} {fmt_fraction(a.x_e)}"
                       + (fam if a.family else ""))
    out += ["[base]", g.base]
    return "\n".join(out) + "\n"
