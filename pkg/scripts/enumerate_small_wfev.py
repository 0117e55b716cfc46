"""Count WFEV digraphs up to isomorphism by number of nodes.

Each class is realized by exactly one hereditarily finite set s, with
TC({s}) as its node set (the empty set stands for the edgeless digraph).
Transitive sets are grown one new subset at a time; a class of size n is a
transitive set T of size n together with a member s with TC({s}) = T.
"""

import argparse
import json
from itertools import combinations

from wfesets.hfset import HfSet, encode_set, sorted_sets, transitive_closure


def transitive_sets(max_size: int) -> set[frozenset]:
    seen = {frozenset()}
    frontier = [frozenset()]
    while frontier:
        nxt = []
        for T in frontier:
            if len(T) == max_size:
                continue
            xs = sorted_sets(T)
            for r in range(len(xs) + 1):
                for combo in combinations(xs, r):
                    U = T | {HfSet(combo)}
                    if len(U) > len(T) and U not in seen:
                        seen.add(U)
                        nxt.append(U)
        frontier = nxt
    return seen


def classes(max_nodes: int) -> dict[int, list[HfSet]]:
    by_size: dict[int, list[HfSet]] = {0: [HfSet(())]}
    for T in transitive_sets(max_nodes):
        for s in T:
            closure = transitive_closure(s) | {s}
            if closure == T and s.children:
                by_size.setdefault(len(T), []).append(s)
    return by_size


def main() -> None:
    ap = argparse.ArgumentParser(description="Count WFEV digraphs up to isomorphism by node count.")
    ap.add_argument("max_nodes", type=int, nargs="?", default=6)
    ap.add_argument("--show", action="store_true", help="print each canonical digraph")
    args = ap.parse_args()
    by_size = classes(args.max_nodes)
    for n in sorted(by_size):
        print(json.dumps({"nodes": n, "classes": len(by_size[n])}))
        if args.show:
            for s in sorted_sets(by_size[n]):
                print(f"  {s}  {encode_set(s).sorted_edges()}")
    print(json.dumps({"total": sum(len(v) for v in by_size.values())}))


if __name__ == "__main__":
    main()
