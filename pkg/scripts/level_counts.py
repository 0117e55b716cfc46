"""Print |L_n| next to |V_n| for the finite constructible levels.

L_n is built by iterating the definability operator; V_n by iterated
powerset. Level 5 takes several seconds.
"""

import argparse
import json
import time

from wfesets.construct import l_levels
from wfesets.hfset import v_level


def main() -> None:
    ap = argparse.ArgumentParser(description="Compare constructible and cumulative levels.")
    ap.add_argument("n", type=int, nargs="?", default=5, help="highest level (at most 5)")
    args = ap.parse_args()
    start = time.perf_counter()
    for i, L in enumerate(l_levels(args.n)):
        V = v_level(i)
        print(json.dumps({"n": i, "L": len(L), "V": len(V), "equal": L == V}))
    print(json.dumps({"seconds": round(time.perf_counter() - start, 2)}))


if __name__ == "__main__":
    main()
