"""Constructions that build new WFEV digraphs out of old ones: pairing,
assembly of finite lists, function digraphs, designator closure and union."""

from __future__ import annotations

from itertools import combinations, count, islice
from typing import Iterable, Mapping, Sequence

from .digraph import (
    EMPTY_DIGRAPH,
    Digraph,
    bij_image,
    designator,
    eln,
    fresh_node,
    multi_restrict,
    require_wfev,
    validate,
)
from .errors import DomainMismatch, NotSurjective
from .iso import hom_map


def _separate(A: Digraph, B: Digraph) -> tuple[Digraph, dict[int, int]]:
    """Move B off the field of A when the two overlap.

    The free naturals j_0 < j_1 < ... outside field(A) are enumerated and node
    k of B goes to j_{2k}, leaving infinitely many naturals untouched.
    """
    if not (A.field & B.field):
        return B, {k: k for k in B.field}
    gaps = (n for n in count() if n not in A.field)
    free = list(islice(gaps, 2 * max(B.field) + 1))
    g = {k: free[2 * k] for k in B.field}
    return bij_image(B, g), g


def _pair(A: Digraph, B: Digraph):
    """Pairing with bookkeeping: returns (P, a, b, bmap), where A is kept verbatim
    as the cone at a and bmap sends each node of B to its copy in P."""
    cls_a = require_wfev(A)
    require_wfev(B)
    if not A and not B:
        return Digraph([(0, 1)]), 0, 0, {}
    B1, g = _separate(A, B)
    if not B1:
        a, b = cls_a.vertex, cls_a.min_node
        p = fresh_node(A.field)
        return A | Digraph([(a, p), (b, p)]), a, b, {}
    cls_b = validate(B1)
    if not A:
        a, b = cls_b.min_node, cls_b.vertex
        p = fresh_node(B1.field)
        return B1 | Digraph([(b, p), (a, p)]), a, b, g
    # identify the parts of B already realized inside A so the union stays extensional
    H = hom_map(B1, A)
    h = {k: H.get(k, k) for k in B1.field}
    Q = A | bij_image(B1, h)
    a, b = cls_a.vertex, h[cls_b.vertex]
    c = fresh_node(Q.field)
    P = Q | Digraph([(a, c), (b, c)])
    return P, a, b, {k: h[g[k]] for k in B.field}


def pair(A: Digraph, B: Digraph) -> tuple[Digraph, int, int]:
    """A WFEV digraph P with vertex elements exactly {a, b}, where the cone at a
    is A itself and the cone at b is isomorphic to B."""
    P, a, b, _ = _pair(A, B)
    return P, a, b


def assemble(As: Sequence[Digraph]) -> Digraph:
    """A WFEV digraph whose vertex elements realize exactly the inputs.

    The inputs are chained pairwise (each step keeps the previous digraph
    verbatim), then the designated nodes are collected under a fresh vertex.
    An empty list gives the empty digraph.
    """
    As = list(As)
    if not As:
        return EMPTY_DIGRAPH
    for A in As:
        require_wfev(A)
    if len(As) == 1:
        As = [As[0], As[0]]
    P, u0, u1, _ = _pair(As[0], As[1])
    picked = [u0, u1]
    for A in As[2:]:
        P, _, u, _ = _pair(P, A)
        picked.append(u)
    keep: set[int] = set()
    for u in picked:
        keep |= P.lower_cone(u)
    c = fresh_node(keep)
    return P.restrict(keep) | Digraph((u, c) for u in set(picked))


def _designate(P: Digraph, v: int, S: Iterable[int]) -> tuple[Digraph, int]:
    """Make sure some non-vertex node has extension exactly S; one closure step."""
    S = frozenset(S)
    p = designator(P, S, exclude={v})
    if p is not None:
        return P, p
    k = fresh_node(P.field)
    return P | Digraph([(j, k) for j in S] + [(k, v)]), k


def _saturate_vertex(P: Digraph, v: int) -> Digraph:
    return P | Digraph((k, v) for k in P.field if k != v)


def pair_close_bounded(A: Digraph, subset_size_limit: int, depth: int) -> Digraph:
    """Bounded designator closure of a WFEV digraph.

    Every non-vertex node is first made an element of the vertex. Each round
    then adds, for every nonempty set of at most ``subset_size_limit`` current
    non-vertex nodes without a designating node, a fresh node with exactly those
    elements. Old cones are never changed. The empty digraph is returned as is.
    """
    if subset_size_limit < 0 or depth < 0:
        raise ValueError("limits must be naturals")
    if not A:
        return A
    v = require_wfev(A).vertex
    P = _saturate_vertex(A, v)
    for _ in range(depth):
        nodes = sorted(P.field - {v})
        for size in range(1, min(subset_size_limit, len(nodes)) + 1):
            for combo in combinations(nodes, size):
                P, _ = _designate(P, v, combo)
    return P


def func_digraph(A: Digraph, B: Digraph, f: Mapping[int, int]) -> Digraph:
    """Digraph realizing the function U -> V given by f between the vertex
    elements of A and of B, as a set of Kuratowski pairs."""
    require_wfev(A)
    require_wfev(B)
    dom, cod = eln(A), eln(B)
    f = dict(f)
    if set(f) != dom:
        raise DomainMismatch(f"map domain {sorted(f)} differs from Eln(A) = {sorted(dom)}")
    if not set(f.values()) <= cod:
        raise DomainMismatch("map values must lie in Eln(B)")
    if set(f.values()) != cod:
        raise NotSurjective(f"map misses {sorted(cod - set(f.values()))}")
    if not dom:
        return EMPTY_DIGRAPH
    Q, _, _, bmap = _pair(A, B)
    v = validate(Q).vertex
    P = _saturate_vertex(Q, v)
    tops = set()
    for x in sorted(dom):
        y = bmap[f[x]]
        P, single = _designate(P, v, {x})
        P, double = _designate(P, v, {x, y})
        P, z = _designate(P, v, {single, double})
        tops.add(z)
    return multi_restrict(P, tops)


def union_digraph(A: Digraph) -> Digraph:
    """Digraph realizing the union of the set realized by A."""
    Y = set()
    for k in eln(A):
        Y |= A.extension(k)
    if not Y:
        return EMPTY_DIGRAPH
    return multi_restrict(A, Y)
