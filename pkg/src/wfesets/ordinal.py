"""Ordinals below epsilon_0 in Cantor normal form, plus the collapse of finite
well-orders and the explicit order types behind +, * and ^."""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import product
from typing import Iterable

from .coding import pair_nat, unpair_nat
from .digraph import Digraph
from .errors import NotLinearOrder, ParseError


@dataclass(frozen=True)
class CnfOrdinal:
    """w^e1*c1 + ... + w^ek*ck with e1 > ... > ek and every ci > 0."""

    terms: tuple = ()

    def __post_init__(self):
        for i, (e, c) in enumerate(self.terms):
            if not isinstance(e, CnfOrdinal) or not isinstance(c, int) or c <= 0:
                raise ValueError("terms must be (CnfOrdinal, positive int) pairs")
            if i and cnf_cmp(self.terms[i - 1][0], e) <= 0:
                raise ValueError("exponents must strictly decrease")

    @classmethod
    def of(cls, n: int) -> CnfOrdinal:
        if n < 0:
            raise ValueError("ordinals are nonnegative")
        return cls(((ZERO, n),)) if n else ZERO

    def is_finite(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not self.terms[0][0].terms)

    def to_int(self) -> int:
        if not self.is_finite():
            raise ValueError(f"{self} is infinite")
        return self.terms[0][1] if self.terms else 0

    def __add__(self, other):
        return cnf_arith("add", self, _coerce(other))

    def __mul__(self, other):
        return cnf_arith("mul", self, _coerce(other))

    def __pow__(self, other):
        return cnf_arith("pow", self, _coerce(other))

    def __lt__(self, other):
        return cnf_cmp(self, _coerce(other)) < 0

    def __le__(self, other):
        return cnf_cmp(self, _coerce(other)) <= 0

    def __str__(self):
        return format_ordinal(self)


ZERO = CnfOrdinal()
ONE = CnfOrdinal(((ZERO, 1),))
OMEGA = CnfOrdinal(((ONE, 1),))


def _coerce(x) -> CnfOrdinal:
    return CnfOrdinal.of(x) if isinstance(x, int) else x


def cnf_cmp(a: CnfOrdinal, b: CnfOrdinal) -> int:
    """-1, 0 or 1, comparing term lists lexicographically."""
    for (ea, ca), (eb, cb) in zip(a.terms, b.terms):
        c = cnf_cmp(ea, eb)
        if c:
            return c
        if ca != cb:
            return -1 if ca < cb else 1
    return (len(a.terms) > len(b.terms)) - (len(a.terms) < len(b.terms))


def _add(a: CnfOrdinal, b: CnfOrdinal) -> CnfOrdinal:
    if not b.terms:
        return a
    lead, lead_c = b.terms[0]
    head = []
    for e, c in a.terms:
        k = cnf_cmp(e, lead)
        if k > 0:
            head.append((e, c))
        elif k == 0:
            return CnfOrdinal(tuple(head) + ((lead, c + lead_c),) + b.terms[1:])
        else:
            break
    return CnfOrdinal(tuple(head) + b.terms)


def _mul(a: CnfOrdinal, b: CnfOrdinal) -> CnfOrdinal:
    if not a.terms or not b.terms:
        return ZERO
    e1, c1 = a.terms[0]
    out = ZERO
    for e, c in b.terms:
        if not e.terms:
            part = CnfOrdinal(((e1, c1 * c),) + a.terms[1:])
        else:
            part = CnfOrdinal(((_add(e1, e), c),))
        out = _add(out, part)
    return out


def _split_finite(b: CnfOrdinal) -> tuple[CnfOrdinal, int]:
    if b.terms and not b.terms[-1][0].terms:
        return CnfOrdinal(b.terms[:-1]), b.terms[-1][1]
    return b, 0


def _pow_nat(a: CnfOrdinal, m: int) -> CnfOrdinal:
    out, base = ONE, a
    while m:
        if m & 1:
            out = _mul(out, base)
        base = _mul(base, base)
        m >>= 1
    return out


def _pow(a: CnfOrdinal, b: CnfOrdinal) -> CnfOrdinal:
    if not b.terms:
        return ONE
    if not a.terms:
        return ZERO
    if a == ONE:
        return ONE
    limit_part, m = _split_finite(b)
    if not limit_part.terms:
        return _pow_nat(a, m)
    if a.is_finite():
        # k^(w*g) = w^g, where w^(1+e') = w^e gives e' = e - 1 for finite e
        shifted = []
        for e, c in limit_part.terms:
            shifted.append((CnfOrdinal.of(e.to_int() - 1) if e.is_finite() else e, c))
        head = CnfOrdinal(((CnfOrdinal(tuple(shifted)), 1),))
    else:
        head = CnfOrdinal(((_mul(a.terms[0][0], limit_part), 1),))
    return _mul(head, _pow_nat(a, m))


def cnf_arith(op: str, a: CnfOrdinal, b: CnfOrdinal) -> CnfOrdinal:
    if op == "add":
        return _add(a, b)
    if op == "mul":
        return _mul(a, b)
    if op == "pow":
        return _pow(a, b)
    raise ValueError(f"unknown operation {op!r}")


# -- text syntax -------------------------------------------------------------

def format_ordinal(a: CnfOrdinal) -> str:
    if not a.terms:
        return "0"
    parts = []
    for e, c in a.terms:
        if not e.terms:
            parts.append(str(c))
            continue
        if e == ONE:
            base = "w"
        elif e.is_finite():
            base = f"w^{e.to_int()}"
        else:
            base = "w^{" + format_ordinal(e) + "}"
        parts.append(base if c == 1 else f"{base}*{c}")
    return " + ".join(parts)


_TOKEN = re.compile(r"\s*(?:(\d+)|(w|ω)|(.))")


def parse_ordinal(text: str) -> CnfOrdinal:
    """Parse expressions such as ``w^2 + w*3 + 1`` or ``w^{w+1}*2``.

    Sums, products and powers are evaluated with ordinal arithmetic, so
    non-normal input like ``1 + w`` is accepted and normalized.
    """
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m.group(0).strip() == "":
            break
        num, w, sym = m.groups()
        start = m.start(m.lastindex)
        if num is not None:
            toks.append(("num", int(num), start))
        elif w is not None:
            toks.append(("w", None, start))
        elif sym in "+*^{}()":
            toks.append((sym, None, start))
        else:
            raise ParseError(f"unexpected character {sym!r}", start)
        pos = m.end()
    toks.append(("end", None, len(text)))
    i = 0

    def expect(kind):
        nonlocal i
        if toks[i][0] != kind:
            raise ParseError(f"expected {kind!r}", toks[i][2])
        i += 1

    def atom():
        nonlocal i
        kind, val, p = toks[i]
        if kind == "num":
            i += 1
            return CnfOrdinal.of(val)
        if kind == "w":
            i += 1
            return OMEGA
        if kind in "{(":
            i += 1
            out = total()
            expect("}" if kind == "{" else ")")
            return out
        raise ParseError("expected a number, 'w' or a bracket", p)

    def power():
        nonlocal i
        base = atom()
        if toks[i][0] == "^":
            i += 1
            return _pow(base, atom())
        return base

    def prod():
        nonlocal i
        out = power()
        while toks[i][0] == "*":
            i += 1
            out = _mul(out, power())
        return out

    def total():
        nonlocal i
        out = prod()
        while toks[i][0] == "+":
            i += 1
            out = _add(out, prod())
        return out

    out = total()
    if toks[i][0] != "end":
        raise ParseError("trailing input", toks[i][2])
    return out


# -- finite well-orders -------------------------------------------------------

@dataclass(frozen=True)
class FiniteOrder:
    """A strict order on an explicit carrier. The carrier matters only for the
    one-element order, whose relation has no edges at all."""

    nodes: frozenset
    relation: Digraph


def collapse_wellorder(A: Digraph | FiniteOrder, carrier: Iterable[int] = ()) -> tuple[int, dict[int, int]]:
    """Order type n of a finite strict linear order and the isomorphism onto n.

    The order, read as a digraph, is well-founded and extensional; its
    Mostowski collapse sends each node to the von Neumann natural counting its
    predecessors. ``carrier`` may add nodes without edges, which is only
    consistent when the whole order has a single element.
    """
    from .hfset import as_natural, mostowski

    if isinstance(A, FiniteOrder):
        carrier = set(carrier) | A.nodes
        A = A.relation
    for j, k in A.edges:
        if j == k:
            raise NotLinearOrder(f"node {j} precedes itself", witness=(j, k))
        if (k, j) in A.edges:
            raise NotLinearOrder(f"nodes {j} and {k} precede each other", witness=(j, k))
    nodes = sorted(A.field | set(carrier))
    for i, j in enumerate(nodes):
        for k in nodes[i + 1:]:
            if (j, k) not in A.edges and (k, j) not in A.edges:
                raise NotLinearOrder(f"nodes {j} and {k} are incomparable", witness=(j, k))
    for i, j in A.edges:
        for k in A.successors(j):
            if (i, k) not in A.edges:
                raise NotLinearOrder(f"order is not transitive at {i}, {j}, {k}", witness=(i, k))
    if not A.edges:
        return len(nodes), {k: 0 for k in nodes}
    xi = mostowski(A)
    iso = {k: as_natural(v) for k, v in xi.items()}
    return len(nodes), iso


def _order(nodes, less) -> FiniteOrder:
    nodes = list(nodes)
    rel = Digraph((x, y) for x in nodes for y in nodes if less(x, y))
    return FiniteOrder(frozenset(nodes), rel)


def sum_order(a: int, b: int) -> FiniteOrder:
    """a followed by b: node pair_nat(0, i) for the first copy, pair_nat(1, j) for the second."""
    return _order([pair_nat(0, i) for i in range(a)] + [pair_nat(1, j) for j in range(b)],
                  lambda x, y: unpair_nat(x) < unpair_nat(y))


def product_order(a: int, b: int) -> FiniteOrder:
    """Pairs (i < a, j < b) as nodes pair_nat(i, j), ordered lexicographically
    with the b-coordinate deciding first."""

    def less(x, y):
        (i, j), (k, m) = unpair_nat(x), unpair_nat(y)
        return (j, i) < (m, k)

    return _order([pair_nat(i, j) for i in range(a) for j in range(b)], less)


def power_order(a: int, b: int) -> FiniteOrder:
    """Functions b -> a ordered by comparing values at the largest argument
    where they differ. Node ids are positions in the enumeration."""
    funcs = list(product(range(a), repeat=b))

    def less(i, j):
        f, g = funcs[i], funcs[j]
        for xi in reversed(range(b)):
            if f[xi] != g[xi]:
                return f[xi] < g[xi]
        return False

    return _order(range(len(funcs)), less)
