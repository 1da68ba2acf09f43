import pathlib
from fractions import Fraction

import pytest
from hypothesis import strategies as st

from gomon.catalog import named
from gomon.specfile import parse_spec
from gomon.words import ELetter, VLetter

ROOT = pathlib.Path(__file__).resolve().parent.parent
CATALOG = ROOT / "catalog"

GRAPHS = named()


def catalog_specs():
    return sorted(CATALOG.glob("*.gm"))


def load(name):
    return parse_spec((CATALOG / f"{name}.gm").read_text())


def letters(g, max_exponent=4, inverse=False):
    """Strategy for single generator letters of a finite graph."""
    opts = []
    for v, G in sorted(g.vertices.items()):
        lo = -max_exponent if inverse else 1
        vals = [n for n in range(lo, max_exponent + 1) if n]
        opts.append(st.sampled_from(vals).map(lambda n, v=v, b=G.base: VLetter(v, b * n)))
    for a in g.aedges:
        opts.append(st.just(ELetter(a.name)))
        if inverse:
            opts.append(st.just(ELetter(a.name, True)))
    return st.one_of(opts)


def words(g, max_len=5, max_exponent=4, inverse=False):
    return st.lists(letters(g, max_exponent, inverse), max_size=max_len).map(tuple)


@pytest.fixture(params=sorted(GRAPHS))
def graph(request):
    return GRAPHS[request.param]


F = Fraction


# -- acceptance verdicts ---------------------------------------------------------
# Each acceptance test records its parts here; the terminal summary prints one
# PASS/FAIL line per criterion so the verdicts show up in plain `pytest -v` runs.

VERDICTS: dict = {}


def record(criterion: int, title: str, ok: bool, detail: str) -> bool:
    entry = VERDICTS.setdefault(criterion, {"title": title, "parts": []})
    entry["parts"].append((ok, detail))
    print(f"criterion {criterion} [{'PASS' if ok else 'FAIL'}] {detail}")
    return ok


def pytest_terminal_summary(terminalreporter):
    if not VERDICTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(VERDICTS):
        entry = VERDICTS[n]
        ok = all(p[0] for p in entry["parts"])
        failed = [d for good, d in entry["parts"] if not good]
        tail = f" ({'; '.join(failed)})" if failed else ""
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} criterion {n}: {entry['title']}{tail}")
