"""Isomorphism of WFE digraphs: the rigidity map H_AB, isomorphism tests,
canonical forms, and the membership relation of the digraph interpretation."""

from __future__ import annotations

from itertools import permutations

from .digraph import (
    Digraph,
    cone,
    eln,
    require_wfe,
    require_wfev,
    topological_order,
)
from .errors import TooLarge
from .hfset import collapse, encode_set

BRUTE_FORCE_LIMIT = 8


def hom_map(A: Digraph, B: Digraph) -> dict[int, int]:
    """H_AB: u -> v exactly when the cones at u and v are isomorphic.

    By rigidity the cone at u matches the cone at v iff the children of u are
    all matched and their images are exactly the children of v, so one pass in
    topological order over A suffices.
    """
    require_wfe(A)
    require_wfe(B)
    by_extension = {B.extension(v): v for v in B.field}
    H: dict[int, int] = {}
    for u in topological_order(A):
        kids = A.extension(u)
        if all(j in H for j in kids):
            v = by_extension.get(frozenset(H[j] for j in kids))
            if v is not None:
                H[u] = v
    return H


def find_isomorphism(A: Digraph, B: Digraph) -> dict[int, int] | None:
    """An isomorphism field(A) -> field(B) of WFEV digraphs, or None."""
    require_wfev(A)
    require_wfev(B)
    if len(A.field) != len(B.field) or len(A.edges) != len(B.edges):
        return None
    H = hom_map(A, B)
    if len(H) == len(A.field) and set(H.values()) == B.field:
        return H
    return None


def isomorphic(A: Digraph, B: Digraph) -> bool:
    return find_isomorphism(A, B) is not None


def canonicalize(A: Digraph) -> Digraph:
    require_wfev(A)
    return encode_set(collapse(A).value)


def brute_force_isomorphism(A: Digraph, B: Digraph) -> dict[int, int] | None:
    """Search every bijection of the fields; for checking small cases only."""
    fa, fb = sorted(A.field), sorted(B.field)
    if len(fa) != len(fb) or len(A.edges) != len(B.edges):
        return None
    if len(fa) > BRUTE_FORCE_LIMIT:
        raise TooLarge(f"brute force limited to {BRUTE_FORCE_LIMIT} nodes")
    for perm in permutations(fb):
        f = dict(zip(fa, perm))
        if all((f[j], f[k]) in B.edges for j, k in A.edges):
            return f
    return None


def inh(A: Digraph, B: Digraph) -> bool:
    """A is an element of B in the digraph interpretation: A is isomorphic to
    the cone at some element of the vertex of B."""
    require_wfev(A)
    return any(isomorphic(A, cone(B, k)) for k in sorted(eln(B)))
