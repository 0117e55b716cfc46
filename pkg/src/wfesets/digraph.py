"""Finite digraphs on the naturals and the elementary operations on them.

An edge ``(j, k)`` reads "j is an element of k". Everything here is pure; a
:class:`Digraph` is an immutable value.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from graphlib import CycleError, TopologicalSorter
from itertools import count
from typing import Iterable, Mapping

from .coding import pair_nat, unpair_nat
from .errors import (
    EmptySelection,
    MapDomainTooSmall,
    NodeNotInField,
    NonInjectiveMap,
    NotWfe,
    NotWfev,
    ParseError,
    VertexInSelection,
)


class Digraph:
    __slots__ = ("edges", "_field", "_ext", "_succ", "_topo", "_cls")

    def __init__(self, edges: Iterable[tuple[int, int]] = ()):
        es = frozenset((int(j), int(k)) for j, k in edges)
        for j, k in es:
            if j < 0 or k < 0:
                raise ValueError(f"nodes must be naturals, got edge ({j}, {k})")
        self.edges = es
        self._field = None
        self._ext = None
        self._succ = None
        self._topo = None
        self._cls = None

    def __eq__(self, other):
        if isinstance(other, Digraph):
            return self.edges == other.edges
        return NotImplemented

    def __hash__(self):
        return hash(self.edges)

    def __bool__(self):
        return bool(self.edges)

    def __len__(self):
        return len(self.edges)

    def __iter__(self):
        return iter(self.sorted_edges())

    def __repr__(self):
        return f"Digraph({self.sorted_edges()})"

    def __or__(self, other: Digraph) -> Digraph:
        return Digraph(self.edges | other.edges)

    @property
    def field(self) -> frozenset[int]:
        if self._field is None:
            self._field = frozenset(x for e in self.edges for x in e)
        return self._field

    def _build_maps(self):
        ext: dict[int, set[int]] = {k: set() for k in self.field}
        succ: dict[int, set[int]] = {k: set() for k in self.field}
        for j, k in self.edges:
            ext[k].add(j)
            succ[j].add(k)
        self._ext = {k: frozenset(v) for k, v in ext.items()}
        self._succ = {k: frozenset(v) for k, v in succ.items()}

    def extension(self, u: int) -> frozenset[int]:
        """The set of A-elements of u (its in-neighbours)."""
        if self._ext is None:
            self._build_maps()
        try:
            return self._ext[u]
        except KeyError:
            raise NodeNotInField(f"node {u} is not in the field") from None

    def successors(self, u: int) -> frozenset[int]:
        if self._succ is None:
            self._build_maps()
        try:
            return self._succ[u]
        except KeyError:
            raise NodeNotInField(f"node {u} is not in the field") from None

    def lower_cone(self, u: int) -> frozenset[int]:
        """Nodes with a finite edge chain ending at u, u included."""
        if u not in self.field:
            raise NodeNotInField(f"node {u} is not in the field")
        seen = {u}
        stack = [u]
        while stack:
            for j in self.extension(stack.pop()):
                if j not in seen:
                    seen.add(j)
                    stack.append(j)
        return frozenset(seen)

    def restrict(self, xs: Iterable[int]) -> Digraph:
        xs = set(xs)
        return Digraph((j, k) for j, k in self.edges if j in xs and k in xs)

    def find_cycle(self) -> list[int] | None:
        try:
            TopologicalSorter({k: self.extension(k) for k in self.field}).prepare()
        except CycleError as exc:
            return list(exc.args[1])
        return None

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)


EMPTY_DIGRAPH = Digraph()


@dataclass(frozen=True)
class DigraphClass:
    well_founded: bool
    extensional: bool
    has_vertex: bool
    vertex: int | None = None
    min_node: int | None = None

    @property
    def wfe(self) -> bool:
        return self.well_founded and self.extensional

    @property
    def wfev(self) -> bool:
        return self.wfe and self.has_vertex


def topological_order(A: Digraph) -> list[int] | None:
    """Nodes ordered so that elements precede what they belong to; None on a cycle."""
    if A._topo is None:
        ts = TopologicalSorter({k: sorted(A.extension(k)) for k in sorted(A.field)})
        try:
            A._topo = tuple(ts.static_order())
        except CycleError:
            A._topo = False
    return list(A._topo) if A._topo is not False else None


def validate(A: Digraph) -> DigraphClass:
    """Classify A as well-founded / extensional / vertex. Total."""
    if A._cls is None:
        A._cls = _classify(A)
    return A._cls


def _classify(A: Digraph) -> DigraphClass:
    if not A.edges:
        return DigraphClass(True, True, True)
    wf = topological_order(A) is not None
    exts = [A.extension(k) for k in A.field]
    ext = len(set(exts)) == len(exts)
    if wf:
        sinks = [k for k in A.field if not A.successors(k)]
        vertices = sinks if len(sinks) == 1 else []
    else:
        vertices = [v for v in sorted(A.field) if A.lower_cone(v) == A.field]
    vertex = vertices[0] if len(vertices) == 1 else None
    min_node = None
    if wf and ext:
        min_node = next(k for k in A.field if not A.extension(k))
    return DigraphClass(wf, ext, vertex is not None, vertex, min_node)


def require_wfe(A: Digraph) -> DigraphClass:
    cls = validate(A)
    if not cls.wfe:
        raise NotWfe("digraph is not well-founded and extensional",
                     witness=A.find_cycle() if not cls.well_founded else None)
    return cls


def require_wfev(A: Digraph) -> DigraphClass:
    cls = validate(A)
    if not cls.wfev:
        raise NotWfev("digraph is not well-founded, extensional and vertex",
                      witness=A.find_cycle() if not cls.well_founded else None)
    return cls


def vertex(A: Digraph) -> int | None:
    return validate(A).vertex


def eln(A: Digraph) -> frozenset[int]:
    """A-elements of the vertex; empty for the empty digraph."""
    if not A.edges:
        return frozenset()
    cls = require_wfev(A)
    return A.extension(cls.vertex)


def fresh_node(*fields: Iterable[int]) -> int:
    """Smallest natural outside every given node set."""
    used = set().union(*fields)
    return next(n for n in count() if n not in used)


def cone(A: Digraph, c: int) -> Digraph:
    """Cone restriction Con_A c: A restricted to the lower cone of c."""
    require_wfe(A)
    return A.restrict(A.lower_cone(c))


def multi_restrict(A: Digraph, xs: Iterable[int]) -> Digraph:
    """Union of the cones at the nodes of xs, plus an edge from each to the vertex."""
    xs = frozenset(xs)
    if not xs:
        raise EmptySelection("selection must be nonempty")
    if not A.edges:
        raise NodeNotInField("the empty digraph has no nodes")
    v = require_wfev(A).vertex
    missing = xs - A.field
    if missing:
        raise NodeNotInField(f"nodes {sorted(missing)} are not in the field")
    if v in xs:
        raise VertexInSelection(f"the vertex {v} cannot be selected")
    keep: set[int] = set()
    for j in xs:
        keep |= A.lower_cone(j)
    return A.restrict(keep) | Digraph((j, v) for j in xs)


def bij_image(A: Digraph, f: Mapping[int, int]) -> Digraph:
    """Edge-wise image f[A] under a map injective on the field."""
    missing = A.field - f.keys()
    if missing:
        raise MapDomainTooSmall(f"map undefined on nodes {sorted(missing)}")
    images = [f[k] for k in A.field]
    if len(set(images)) != len(images):
        raise NonInjectiveMap("map is not injective on the field")
    return Digraph((f[j], f[k]) for j, k in A.edges)


def slice_digraph(A: Digraph, n: int) -> Digraph:
    """The n-th slice (A)_n = {(j, k) : (<n,j>, <n,k>) in A}."""
    out = []
    for x, y in A.edges:
        nx, j = unpair_nat(x)
        ny, k = unpair_nat(y)
        if nx == n and ny == n:
            out.append((j, k))
    return Digraph(out)


def pack(As: Iterable[Digraph]) -> Digraph:
    """A single digraph whose n-th slice is the n-th input."""
    return Digraph((pair_nat(n, j), pair_nat(n, k))
                   for n, A in enumerate(As) for j, k in A.edges)


def designator(A: Digraph, S: Iterable[int], exclude: Iterable[int] = ()) -> int | None:
    """The node whose extension is exactly S, if any (unique in a WFE digraph)."""
    S = frozenset(S)
    skip = set(exclude)
    for p in sorted(A.field):
        if p not in skip and A.extension(p) == S:
            return p
    return None


def kuratowski_node(A: Digraph, j: int, k: int, exclude: Iterable[int] = ()) -> int | None:
    """Node designating the Kuratowski pair {{j}, {j, k}}, if present."""
    s1 = designator(A, {j}, exclude)
    s2 = designator(A, {j, k}, exclude)
    if s1 is None or s2 is None:
        return None
    return designator(A, {s1, s2}, exclude)


def encode_numeral(n: int) -> Digraph:
    """The digraph {(2j, 2k) : j < k <= n}, realizing the von Neumann natural n."""
    if n < 0:
        raise ValueError("numerals are naturals")
    return Digraph((2 * j, 2 * k) for k in range(n + 1) for j in range(k))


def encode_natset(xs: Iterable[int]) -> Digraph:
    """A digraph realizing the finite set of naturals xs, vertex 1.

    Numerals up to max(xs) sit on the even nodes; 1 collects the members.
    """
    xs = sorted(set(xs))
    if not xs:
        return EMPTY_DIGRAPH
    if xs[0] < 0:
        raise ValueError("natset members are naturals")
    return encode_numeral(xs[-1]) | Digraph((2 * k, 1) for k in xs)


# -- text and JSON formats ---------------------------------------------------

def parse_digraph(text: str) -> Digraph:
    """Read the line format ``j k`` (``#`` comments) or JSON ``{"edges": [[j, k], ...]}``."""
    stripped = text.strip()
    if stripped.startswith("{"):
        try:
            data = json.loads(stripped)
            return Digraph((int(j), int(k)) for j, k in data["edges"])
        except (ValueError, KeyError, TypeError) as exc:
            raise ParseError(f"bad JSON digraph: {exc}", 0) from None
    edges = []
    offset = 0
    for line in text.splitlines(keepends=True):
        body = line.split("#", 1)[0].strip()
        if body:
            parts = body.split()
            if len(parts) != 2 or not all(p.isdigit() for p in parts):
                raise ParseError(f"expected 'j k', got {body!r}", offset)
            edges.append((int(parts[0]), int(parts[1])))
        offset += len(line)
    return Digraph(edges)


def format_digraph(A: Digraph) -> str:
    return "".join(f"{j} {k}\n" for j, k in A.sorted_edges())


def digraph_to_json(A: Digraph) -> dict:
    return {"edges": [list(e) for e in A.sorted_edges()]}
