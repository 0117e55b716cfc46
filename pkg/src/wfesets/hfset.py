"""Hereditarily finite sets: hash-consed values, Mostowski collapse and its inverse."""

from __future__ import annotations

import threading
from dataclasses import dataclass
from functools import cmp_to_key
from itertools import combinations
from typing import Iterable, Mapping

from .errors import LevelTooLarge, NotWfev, ParseError, TooLarge

MAX_V_LEVEL = 5
# sets of rank <= 5 have Ackermann index below 2**16; from rank 7 on the index
# no longer fits in memory, so ordering falls back to structural comparison
INT_ORDER_RANK = 5
MAX_ACK_RANK = 6


class HfSet:
    """A hereditarily finite set, interned so that identity is extensional equality.

    ``HfSet(children)`` always returns the unique instance for that children set,
    so ``==`` and ``hash`` can stay the identity defaults.
    """

    __slots__ = ("children", "_ack", "_rank", "_desc")

    _table: dict = {}
    _lock = threading.Lock()

    def __new__(cls, children: Iterable[HfSet] = ()):
        key = frozenset(children)
        obj = cls._table.get(key)
        if obj is not None:
            return obj
        for c in key:
            if not isinstance(c, HfSet):
                raise TypeError(f"HfSet children must be HfSet, got {type(c).__name__}")
        with cls._lock:
            obj = cls._table.get(key)
            if obj is None:
                obj = object.__new__(cls)
                obj.children = key
                obj._ack = None
                obj._rank = None
                obj._desc = None
                cls._table[key] = obj
        return obj

    def __reduce__(self):
        return (HfSet, (tuple(self.children),))

    def __iter__(self):
        return iter(sorted_sets(self.children))

    def __len__(self) -> int:
        return len(self.children)

    def __contains__(self, item) -> bool:
        return item in self.children

    def __lt__(self, other: HfSet) -> bool:
        return ack_cmp(self, other) < 0

    def __repr__(self) -> str:
        return f"HfSet({format_hfset(self)})"

    def __str__(self) -> str:
        return format_hfset(self)


EMPTY = HfSet()


def ack_index(s: HfSet) -> int:
    """Ackermann index N(s) = sum of 2**N(e) over e in s.

    Raises TooLarge above rank 6, where the index has more than 2**65536 bits.
    """
    if s._ack is None:
        if rank(s) > MAX_ACK_RANK:
            raise TooLarge(f"Ackermann index of a rank {rank(s)} set is too large to represent")
        n = 0
        for e in s.children:
            n |= 1 << ack_index(e)
        s._ack = n
    return s._ack


def from_ack(n: int) -> HfSet:
    """Inverse of :func:`ack_index`."""
    if n < 0:
        raise ValueError("Ackermann indices are naturals")
    kids = []
    i = 0
    while n:
        if n & 1:
            kids.append(from_ack(i))
        n >>= 1
        i += 1
    return HfSet(kids)


def rank(s: HfSet) -> int:
    """Von Neumann rank: 0 for the empty set, else 1 + max rank of a member."""
    if s._rank is None:
        s._rank = max((rank(e) + 1 for e in s.children), default=0)
    return s._rank


def von_neumann(n: int) -> HfSet:
    out = EMPTY
    members: list[HfSet] = []
    for _ in range(n):
        members.append(out)
        out = HfSet(members)
    return out


def as_natural(s: HfSet) -> int | None:
    """The natural number s codes as a von Neumann ordinal, or None."""
    n = len(s)
    return n if von_neumann(n) is s else None


def kuratowski(a: HfSet, b: HfSet) -> HfSet:
    return HfSet([HfSet([a]), HfSet([a, b])])


def _descending(s: HfSet) -> tuple[HfSet, ...]:
    if s._desc is None:
        s._desc = tuple(reversed(sorted_sets(s.children)))
    return s._desc


def ack_cmp(a: HfSet, b: HfSet) -> int:
    """Compare Ackermann indices without computing them: the larger set is the
    one owning the largest element of the symmetric difference."""
    if a is b:
        return 0
    if rank(a) <= INT_ORDER_RANK and rank(b) <= INT_ORDER_RANK:
        return -1 if ack_index(a) < ack_index(b) else 1
    for x, y in zip(_descending(a), _descending(b)):
        if x is not y:
            return ack_cmp(x, y)
    return -1 if len(a) < len(b) else 1


def sorted_sets(xs: Iterable[HfSet]) -> list[HfSet]:
    """Sort by Ackermann index."""
    xs = list(xs)
    if all(rank(x) <= INT_ORDER_RANK for x in xs):
        return sorted(xs, key=ack_index)
    return sorted(xs, key=cmp_to_key(ack_cmp))


# -- text syntax -------------------------------------------------------------

def format_hfset(s: HfSet) -> str:
    return "{" + ",".join(format_hfset(e) for e in s) + "}"


def parse_hfset(text: str) -> HfSet:
    """Parse brace syntax such as ``{{},{{}}}``; whitespace is ignored."""
    pos = 0
    n = len(text)

    def skip():
        nonlocal pos
        while pos < n and text[pos].isspace():
            pos += 1

    def parse_one() -> HfSet:
        nonlocal pos
        skip()
        if pos >= n or text[pos] != "{":
            raise ParseError("expected '{'", pos)
        pos += 1
        kids = []
        skip()
        if pos < n and text[pos] == "}":
            pos += 1
            return EMPTY
        while True:
            kids.append(parse_one())
            skip()
            if pos < n and text[pos] == ",":
                pos += 1
            elif pos < n and text[pos] == "}":
                pos += 1
                return HfSet(kids)
            else:
                raise ParseError("expected ',' or '}'", pos)

    out = parse_one()
    skip()
    if pos != n:
        raise ParseError("trailing input", pos)
    return out


# -- set operations ----------------------------------------------------------

def transitive_closure(s: HfSet) -> frozenset[HfSet]:
    """All members of s, members of members, and so on (s itself excluded)."""
    seen: set[HfSet] = set()
    stack = list(s.children)
    while stack:
        x = stack.pop()
        if x not in seen:
            seen.add(x)
            stack.extend(x.children)
    return frozenset(seen)


def is_transitive(xs: Iterable[HfSet]) -> bool:
    xs = set(xs)
    return all(e in xs for x in xs for e in x.children)


def union_set(s: HfSet) -> HfSet:
    return HfSet(e for x in s.children for e in x.children)


def powerset(xs: Iterable[HfSet]) -> frozenset[HfSet]:
    xs = sorted_sets(xs)
    out = []
    for mask in range(1 << len(xs)):
        out.append(HfSet(x for i, x in enumerate(xs) if mask >> i & 1))
    return frozenset(out)


def pair_closure_bounded(xs: Iterable[HfSet], subset_size_limit: int, depth: int) -> frozenset[HfSet]:
    """Close under finite subsets of size <= ``subset_size_limit``, ``depth`` rounds.

    The true finite-subset closure of a nonempty set is infinite, hence the bounds.
    """
    if subset_size_limit < 0 or depth < 0:
        raise ValueError("limits must be naturals")
    cur = set(xs)
    for _ in range(depth):
        base = sorted_sets(cur)
        new = set(cur)
        for size in range(0, min(subset_size_limit, len(base)) + 1):
            for combo in combinations(base, size):
                new.add(HfSet(combo))
        if new == cur:
            break
        cur = new
    return frozenset(cur)


def v_level(n: int) -> frozenset[HfSet]:
    """V_n: V_0 is empty and V_{n+1} is the powerset of V_n."""
    if n < 0:
        raise ValueError("levels are indexed by naturals")
    if n > MAX_V_LEVEL:
        raise LevelTooLarge(f"V_{n} is too large to enumerate (limit {MAX_V_LEVEL})")
    level: frozenset[HfSet] = frozenset()
    for _ in range(n):
        level = powerset(level)
    return level


# -- Mostowski collapse ------------------------------------------------------

@dataclass(frozen=True)
class CollapseResult:
    value: HfSet
    xi: Mapping[int, HfSet]


def mostowski(A) -> dict[int, HfSet]:
    """The collapsing map of a well-founded extensional digraph (vertex not required).

    Computed bottom-up along a topological order; raises NotWfev when the
    digraph has a cycle or two nodes collapse to the same set.
    """
    from .digraph import topological_order

    order = topological_order(A)
    if order is None:
        raise NotWfev("digraph has a cycle", witness=A.find_cycle())
    xi: dict[int, HfSet] = {}
    seen: dict[HfSet, int] = {}
    for k in order:
        val = HfSet(xi[j] for j in A.extension(k))
        if val in seen:
            raise NotWfev(f"nodes {seen[val]} and {k} have equal extensions",
                          witness=(seen[val], k))
        seen[val] = k
        xi[k] = val
    return xi


def collapse(A) -> CollapseResult:
    """Realization |A| of a WFEV digraph together with the collapsing map."""
    from .digraph import validate

    if not A.edges:
        return CollapseResult(EMPTY, {})
    xi = mostowski(A)
    cls = validate(A)
    if not cls.has_vertex:
        raise NotWfev("digraph has no vertex")
    return CollapseResult(xi[cls.vertex], xi)


def encode_set(s: HfSet):
    """Canonical digraph realizing s: nodes are the elements of TC({s}) numbered
    by increasing Ackermann index, edges are true membership."""
    from .digraph import Digraph

    universe = sorted_sets(transitive_closure(s) | {s})
    num = {x: i for i, x in enumerate(universe)}
    return Digraph((num[e], num[x]) for x in universe for e in x.children)
