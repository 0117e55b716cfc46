"""The definability operator Def and the finite constructible levels L_n."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Iterable, Iterator

from .errors import LevelTooLarge, TooLarge
from .formula import (
    Eq,
    Formula,
    Forall,
    Iff,
    Mem,
    Not,
    Param,
    Valuation,
    Var,
    disjunction,
)
from .hfset import HfSet, sorted_sets
from .truth import RelationalEvaluator, structure

MAX_CERTIFICATE_SIZE = 16
MAX_ENUMERATE_SIZE = 4
MAX_BUDGET = 9
MAX_L_LEVEL = 5


@dataclass(frozen=True)
class DefCertificate:
    subset: frozenset
    formula: Formula
    valuation: Valuation


@lru_cache(maxsize=None)
def enumeration_formula(k: int) -> Formula:
    """v0 = #0 | ... | v0 = #(k-1); for k = 0 the always-false !(v0 = v0)."""
    if k == 0:
        return Not(Eq(Var(0), Var(0)))
    return disjunction([Eq(Var(0), Param(i)) for i in range(k)])


def iter_def_certificates(X: Iterable[HfSet]) -> Iterator[DefCertificate]:
    """One verified certificate per subset of X, in Ackermann order of the subset."""
    X = structure(X)
    if len(X) > MAX_CERTIFICATE_SIZE:
        raise TooLarge(f"|X| = {len(X)} exceeds {MAX_CERTIFICATE_SIZE}")
    members = sorted_sets(X)
    ev = RelationalEvaluator(X)
    # bit i of the mask selects members[i]; mask order is Ackermann order of the subset
    for mask in range(1 << len(members)):
        chosen = tuple(x for i, x in enumerate(members) if mask >> i & 1)
        phi = enumeration_formula(len(chosen))
        defined = ev.satisfying_set_params(phi, chosen)
        if defined != frozenset(chosen):
            raise AssertionError(f"certificate failed for {chosen}")
        yield DefCertificate(defined, phi, Valuation(chosen, X))


def def_certificate(X: Iterable[HfSet]) -> list[DefCertificate]:
    return list(iter_def_certificates(X))


def def_of(X: Iterable[HfSet]) -> frozenset[HfSet]:
    """Def(X) as a set of HfSets, via certificates."""
    return frozenset(HfSet(c.subset) for c in iter_def_certificates(X))


def def_enumerate(X: Iterable[HfSet], symbol_budget: int) -> frozenset[frozenset]:
    """All subsets {x in X : X |= phi(x)} for formulas phi with exactly one free
    variable, parameters from X, and at most ``symbol_budget`` symbols.

    Formulas are enumerated up to renaming of variables (the free variable is
    v0 and a quantifier at nesting depth d binds v(d+1)), and merged as soon as
    they have the same free variables and the same truth table.
    """
    X = structure(X)
    if len(X) > MAX_ENUMERATE_SIZE:
        raise TooLarge(f"|X| = {len(X)} exceeds {MAX_ENUMERATE_SIZE}")
    if symbol_budget > MAX_BUDGET:
        raise TooLarge(f"budget {symbol_budget} exceeds {MAX_BUDGET}")
    members = sorted_sets(X)
    n = len(members)
    if n == 0:
        # no elements: the only definable subset is the empty one, from budget 2 (v0 = v0)
        return frozenset({frozenset()}) if symbol_budget >= 2 else frozenset()

    def full(d: int) -> int:
        return (1 << n ** (d + 1)) - 1

    @lru_cache(maxsize=None)
    def atoms(d: int) -> frozenset:
        # terms: variables v0..vd and one constant per member
        terms = [("v", i) for i in range(d + 1)] + [("c", i) for i in range(n)]
        out = set()
        assignments = list(product(range(n), repeat=d + 1))
        for a, b in product(terms, repeat=2):
            fmask = sum(1 << t[1] for t in (a, b) if t[0] == "v")
            for rel in ("in", "eq"):
                bits = 0
                for pos, asg in enumerate(assignments):
                    # itertools.product varies the last variable fastest; reverse for little-endian digits
                    x = asg[::-1]
                    va = x[a[1]] if a[0] == "v" else a[1]
                    vb = x[b[1]] if b[0] == "v" else b[1]
                    ok = (members[va] in members[vb].children) if rel == "in" else va == vb
                    if ok:
                        bits |= 1 << pos
                out.add((fmask, bits))
        return frozenset(out)

    @lru_cache(maxsize=None)
    def states(s: int, d: int) -> frozenset:
        """(free-variable mask, truth table) pairs of formulas of exactly s symbols
        at quantifier depth d; truth tables index assignments to v0..vd."""
        if s < 2:
            return frozenset()
        if s == 2:
            return atoms(d)
        out = set()
        fm = full(d)
        for f, m in states(s - 1, d):
            out.add((f, m ^ fm))
        for a in range(2, s - 2):
            b = s - 1 - a
            if b < a:
                break
            left = list(states(a, d))
            right = list(states(b, d))
            for i, (f1, m1) in enumerate(left):
                for f2, m2 in (right[i:] if a == b else right):
                    out.add((f1 | f2, m1 & m2))
        chunk = n ** (d + 1)
        low = (1 << chunk) - 1
        for f, m in states(s - 2, d + 1):
            proj = 0
            for c in range(n):
                proj |= (m >> (c * chunk)) & low
            out.add((f & ~(1 << (d + 1)), proj))
        return frozenset(out)

    found = set()
    for s in range(2, symbol_budget + 1):
        for f, m in states(s, 0):
            if f == 1:
                found.add(frozenset(members[i] for i in range(n) if m >> i & 1))
    return frozenset(found)


def l_level(n: int) -> frozenset[HfSet]:
    """L_n: L_0 is empty and L_{k+1} = Def(L_k)."""
    if n < 0:
        raise ValueError("levels are indexed by naturals")
    if n > MAX_L_LEVEL:
        raise LevelTooLarge(f"L_{n} is beyond the supported range (limit {MAX_L_LEVEL})")
    level: frozenset[HfSet] = frozenset()
    for _ in range(n):
        level = def_of(level)
    return level


def l_levels(n: int) -> list[frozenset[HfSet]]:
    """[L_0, ..., L_n]."""
    out = [frozenset()]
    for k in range(n):
        if k + 1 > MAX_L_LEVEL:
            raise LevelTooLarge(f"L_{k + 1} is beyond the supported range")
        out.append(def_of(out[-1]))
    return out


# -- parameter-free definitions, used to eliminate parameters ------------------

def element_definition(x: HfSet, var: int, fresh: int | None = None) -> Formula:
    """A formula delta(v_var) true, over any transitive structure containing x,
    of exactly one element: x itself.

    delta_x(z) := A w. (w in z <-> OR_{e in x} delta_e(w)), with the empty
    disjunction read as false.
    """
    if fresh is None:
        fresh = var + 1
    w = fresh
    if not x.children:
        return Forall(w, Not(Mem(Var(w), Var(var))))
    inner = disjunction([element_definition(e, w, w + 1) for e in sorted_sets(x.children)])
    return Forall(w, Iff(Mem(Var(w), Var(var)), inner))


def subset_definition(p: Iterable[HfSet], var: int = 0) -> Formula:
    """A parameter-free formula with only v_var free, defining the finite set p
    over any transitive structure that contains p's members."""
    p = sorted_sets(p)
    if not p:
        return Not(Eq(Var(var), Var(var)))
    return disjunction([element_definition(x, var) for x in p])


def defined_subset(X: Iterable[HfSet], phi: Formula, params=(), var: int = 0) -> frozenset[HfSet]:
    """{x in X : X |= phi(params, x)} with phi's free variable v_var."""
    return RelationalEvaluator(structure(X)).satisfying_set_params(phi, tuple(params), var)
