"""Compare join against brute force on balls of a catalog graph.

usage: python scripts/compare_join.py GRAPH INNER_LETTERS OUTER_LETTERS [MAX_EXPONENT]
"""
import sys
import time

from gomon.catalog import named
from gomon.lcm import join
from gomon.oracle import BallBounds, compare_join, enumerate_ball


def main(argv) -> int:
    name, inner_l, outer_l = argv[0], int(argv[1]), int(argv[2])
    exp = int(argv[3]) if len(argv) > 3 else 2
    g = named()[name]
    t = time.time()
    inner = enumerate_ball(g, BallBounds(inner_l, exp))
    outer = enumerate_ball(g, BallBounds(outer_l, exp))
    r = compare_join(g, inner, outer, join)
    print(f"{name}: inner {len(inner)} outer {len(outer)} pairs {r.pairs} checked {r.checked} "
          f"inconclusive {r.inconclusive} mismatches {len(r.mismatches)} "
          f"({time.time() - t:.1f}s)")
    for p, q, j, b in r.mismatches[:10]:
        print(f"  {p} v {q}: join {j}, brute {b}")
    return 1 if r.mismatches else 0


if __name__ == "__main__":
    sys.exit(main(sys.argv[1:]))
