"""Tarski truth over finite transitive structures.

Three evaluation routes exist and are cross-checked in the tests: the truth-set
construction (:func:`build_tts`), direct recursion (:func:`holds`) and a
vectorized relational evaluator used by the definability code
(:func:`satisfying_set`). :func:`models_interp_bounded` evaluates translated
formulas over digraphs.
"""

from __future__ import annotations

import os
from itertools import product
from typing import Iterable, Sequence

import numpy as np

from .errors import NotClosed, NotTransitive, ParameterOutsideStructure, RankTooLarge
from .formula import (
    And,
    Const,
    DAnd,
    DIso,
    DMem,
    DNot,
    DParam,
    DVar,
    Eq,
    Formula,
    Mem,
    Not,
    Var,
    all_vars,
    constants,
    dfree_vars,
    free_vars,
    param_slots,
    size,
    subformulas,
    substitute_vars,
)
from .hfset import HfSet, collapse, encode_set, is_transitive, rank, sorted_sets, v_level


def structure(X: Iterable[HfSet]) -> frozenset[HfSet]:
    X = frozenset(X)
    if not is_transitive(X):
        raise NotTransitive("structure is not a transitive set")
    return X


def _check_sentence(X: frozenset, phi: Formula) -> None:
    if free_vars(phi) or param_slots(phi):
        raise NotClosed("formula has free variables or unbound parameters")
    outside = [c for c in constants(phi) if c not in X]
    if outside:
        raise ParameterOutsideStructure(f"{outside[0]} is not in the structure")


def closed_instances(X: Iterable[HfSet], phi: Formula) -> frozenset:
    """Closed members of Form_phi[X]: subformulas with every free variable
    replaced by an element of X."""
    X = sorted_sets(X)
    out = set()
    for psi in subformulas(phi):
        fv = sorted(free_vars(psi))
        for values in product(X, repeat=len(fv)):
            out.add(substitute_vars(psi, {v: Const(x) for v, x in zip(fv, values)}))
    return frozenset(out)


def _atom_value(phi) -> bool:
    a, b = phi.left.value, phi.right.value
    return a in b.children if isinstance(phi, Mem) else a is b


def _tarski_ok(X: Sequence[HfSet], psi: Formula, member, tau) -> bool:
    """Whether membership ``member`` of the closed instance psi agrees with the
    Tarski condition for psi, given the rest of tau."""
    if isinstance(psi, (Mem, Eq)):
        want = _atom_value(psi)
    elif isinstance(psi, Not):
        want = psi.body not in tau
    elif isinstance(psi, And):
        want = psi.left in tau and psi.right in tau
    else:
        want = any(substitute_vars(psi.body, {psi.var: Const(x)}) in tau for x in X)
    return member == want


def build_tts(X: Iterable[HfSet], phi: Formula) -> frozenset:
    """The unique Tarski truth set for the sentence phi over X, built by
    induction on formula length."""
    X = structure(X)
    _check_sentence(X, phi)
    xs = sorted_sets(X)
    tau: set = set()
    for psi in sorted(closed_instances(xs, phi), key=size):
        if _tarski_ok(xs, psi, True, tau):
            tau.add(psi)
    return frozenset(tau)


def check_tts(X: Iterable[HfSet], phi: Formula, tau: Iterable) -> bool:
    """Whether tau is a Tarski truth set for phi over X."""
    X = structure(X)
    _check_sentence(X, phi)
    xs = sorted_sets(X)
    tau = frozenset(tau)
    domain = closed_instances(xs, phi)
    if not tau <= domain:
        return False
    return all(_tarski_ok(xs, psi, psi in tau, tau) for psi in domain)


def count_tts(X: Iterable[HfSet], phi: Formula, limit: int = 2) -> int:
    """Count Tarski truth sets by exhaustive search over subsets of the closed
    instances, stopping at ``limit``.

    Instances are decided shortest first; both memberships are tried and a
    branch is cut as soon as the instance's own condition fails (its condition
    only mentions shorter instances, which are already decided).
    """
    X = structure(X)
    _check_sentence(X, phi)
    xs = sorted_sets(X)
    order = sorted(closed_instances(xs, phi), key=size)
    found = 0
    tau: set = set()

    def search(i: int) -> None:
        nonlocal found
        if found >= limit:
            return
        if i == len(order):
            found += 1
            return
        psi = order[i]
        for member in (False, True):
            if member:
                tau.add(psi)
            if _tarski_ok(xs, psi, member, tau):
                search(i + 1)
            tau.discard(psi)

    search(0)
    return found


def holds(X: Iterable[HfSet], phi: Formula, env: dict | None = None) -> bool:
    """Direct recursive satisfaction; env maps variable indices to sets."""
    xs = sorted_sets(X)
    env = dict(env or {})

    def val(t):
        if isinstance(t, Var):
            if t.index not in env:
                raise NotClosed(f"variable v{t.index} is unbound")
            return env[t.index]
        if isinstance(t, Const):
            return t.value
        raise NotClosed(f"parameter #{t.slot} is unbound")

    def ev(f) -> bool:
        if isinstance(f, Mem):
            return val(f.left) in val(f.right).children
        if isinstance(f, Eq):
            return val(f.left) is val(f.right)
        if isinstance(f, Not):
            return not ev(f.body)
        if isinstance(f, And):
            return ev(f.left) and ev(f.right)
        saved = env.get(f.var)
        had = f.var in env
        try:
            for x in xs:
                env[f.var] = x
                if ev(f.body):
                    return True
            return False
        finally:
            if had:
                env[f.var] = saved
            else:
                env.pop(f.var, None)

    return ev(phi)


def models(X: Iterable[HfSet], phi: Formula, route: str = "tts") -> bool:
    """X |= phi for a sentence phi with constants in X.

    ``route="tts"`` asks whether phi belongs to its truth set; ``route="direct"``
    recurses on the formula.
    """
    if route == "tts":
        return phi in build_tts(X, phi)
    if route == "direct":
        X = structure(X)
        _check_sentence(X, phi)
        return holds(X, phi)
    raise ValueError(f"unknown route {route!r}")


# -- vectorized evaluation ---------------------------------------------------

class RelationalEvaluator:
    """Evaluate formulas over a fixed finite structure as boolean arrays, one
    axis per variable index."""

    def __init__(self, X: Iterable[HfSet]):
        self.members = sorted_sets(X)
        self.index = {x: i for i, x in enumerate(self.members)}
        n = len(self.members)
        self.n = n
        self.mem = np.zeros((n, n), dtype=bool)
        for j, y in enumerate(self.members):
            for e in y.children:
                i = self.index.get(e)
                if i is not None:
                    self.mem[i, j] = True

    def relation(self, phi: Formula, nvars: int | None = None, params: Sequence = ()) -> np.ndarray:
        """Truth table of phi over assignments to v0..v(nvars-1); slot #s reads params[s]."""
        if nvars is None:
            nvars = max(all_vars(phi), default=-1) + 1
        shape = (self.n,) * nvars
        grids = np.indices(shape, sparse=True) if nvars else ()

        def term(t):
            if isinstance(t, Var):
                return grids[t.index]
            value = t.value if isinstance(t, Const) else None
            if value is None:
                if t.slot >= len(params):
                    raise NotClosed(f"parameter #{t.slot} is unbound")
                value = params[t.slot]
            if value not in self.index:
                raise ParameterOutsideStructure(f"{value} is not in the structure")
            return self.index[value]

        def ev(f) -> np.ndarray:
            if isinstance(f, Mem):
                out = self.mem[term(f.left), term(f.right)] if self.n else np.zeros(shape, bool)
            elif isinstance(f, Eq):
                out = np.equal(term(f.left), term(f.right))
            elif isinstance(f, Not):
                return ~ev(f.body)
            elif isinstance(f, And):
                return ev(f.left) & ev(f.right)
            else:
                body = ev(f.body)
                out = body.any(axis=f.var, keepdims=True)
            return np.broadcast_to(out, shape)

        return ev(phi)

    def satisfying_set(self, phi: Formula, var: int = 0) -> frozenset[HfSet]:
        """{x in X : X |= phi(x)} for phi whose only free variable is ``var``."""
        return self.satisfying_set_params(phi, (), var)

    def satisfying_set_params(self, phi: Formula, params: Sequence, var: int = 0) -> frozenset[HfSet]:
        if free_vars(phi) - {var}:
            raise NotClosed("formula must have no free variable besides the defined one")
        nvars = max(all_vars(phi) | {var}) + 1
        rel = self.relation(phi, nvars, params)
        axes = tuple(i for i in range(nvars) if i != var)
        line = rel.any(axis=axes) if axes else rel
        return frozenset(x for x, ok in zip(self.members, line) if ok)


def satisfying_set(X: Iterable[HfSet], phi: Formula, var: int = 0) -> frozenset[HfSet]:
    return RelationalEvaluator(structure(X)).satisfying_set(phi, var)


# -- bounded evaluation in the digraph interpretation -------------------------

def max_rank() -> int:
    return int(os.environ.get("WFESETS_MAX_RANK", "4"))


def models_interp_bounded(Phi, args: Sequence = (), rank_bound: int = 3, params: Sequence = ()) -> bool:
    """Evaluate a translated formula with digraph quantifiers ranging over the
    canonical encodings of V_rank_bound.

    ``args[i]`` is bound to the free variable V_i and ``params[s]`` to slot #s;
    every argument must realize a set in V_rank_bound.
    """
    from .digraph import require_wfev
    from .iso import inh, isomorphic

    if rank_bound < 0 or rank_bound > max_rank():
        raise RankTooLarge(f"rank bound {rank_bound} exceeds the cap {max_rank()}")
    for A in list(args) + list(params):
        require_wfev(A)
        if rank(collapse(A).value) >= rank_bound:
            raise RankTooLarge("argument does not realize a member of V_rank_bound")
    missing = [i for i in dfree_vars(Phi) if i >= len(args)]
    if missing:
        raise NotClosed(f"free variables {missing} have no argument")
    universe = [encode_set(s) for s in sorted_sets(v_level(rank_bound))]
    env = dict(enumerate(args))
    memo: dict = {}

    def val(t):
        if isinstance(t, DVar):
            return env[t.index]
        if isinstance(t, DParam):
            if t.slot >= len(params):
                raise NotClosed(f"parameter #{t.slot} is unbound")
            return params[t.slot]
        return t.digraph

    def rel(kind, a, b) -> bool:
        key = (kind, a, b)
        if key not in memo:
            memo[key] = inh(a, b) if kind == "in" else isomorphic(a, b)
        return memo[key]

    def ev(f) -> bool:
        if isinstance(f, DMem):
            return rel("in", val(f.left), val(f.right))
        if isinstance(f, DIso):
            return rel("iso", val(f.left), val(f.right))
        if isinstance(f, DNot):
            return not ev(f.body)
        if isinstance(f, DAnd):
            return ev(f.left) and ev(f.right)
        had, saved = f.var in env, env.get(f.var)
        try:
            for A in universe:
                env[f.var] = A
                if ev(f.body):
                    return True
            return False
        finally:
            if had:
                env[f.var] = saved
            else:
                env.pop(f.var, None)

    return ev(Phi)
