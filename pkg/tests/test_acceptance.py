"""Acceptance suite: ten criteria, each exact, each with a pinned time limit.

Run under pytest (one PASS/FAIL line per criterion is printed to the terminal)
or directly with ``python3 tests/test_acceptance.py``.

Expected values always come from an independent oracle in ``oracles.py`` or
from a property that must hold exactly; no value is hard-coded from the code
under test.
"""

from __future__ import annotations

import os
import random
import sys
import time
from dataclasses import dataclass
from itertools import combinations, product
from typing import Callable

sys.path.insert(0, os.path.dirname(__file__))

import oracles  # noqa: E402
from wfesets.assembly import assemble, func_digraph, pair  # noqa: E402
from wfesets.construct import (  # noqa: E402
    def_certificate,
    def_enumerate,
    def_of,
    defined_subset,
    l_level,
    subset_definition,
)
from wfesets.digraph import Digraph, encode_numeral, eln, validate  # noqa: E402
from wfesets.formula import (  # noqa: E402
    Const,
    Eq,
    Exists,
    Mem,
    Not,
    Var,
    eliminate_params,
    relativize,
    substitute_params,
    substitute_vars,
    translate_interp,
)
from wfesets.hfset import HfSet, collapse, encode_set, sorted_sets  # noqa: E402
from wfesets.iso import canonicalize, find_isomorphism, hom_map, inh, isomorphic  # noqa: E402
from wfesets.ordinal import ZERO, CnfOrdinal, collapse_wellorder, product_order  # noqa: E402
from wfesets.truth import count_tts, models, models_interp_bounded  # noqa: E402

SEED = 20240601

V = oracles.v_levels(5)
V3, V4, V5 = V[3], V[4], V[5]


@dataclass(frozen=True)
class Criterion:
    number: int
    title: str
    limit_s: float
    check: Callable[[], str | None]  # returns None on success, else a reason


def _value(A: Digraph) -> HfSet:
    return collapse(A).value


def _cone(A: Digraph, u: int) -> Digraph:
    return A.restrict(A.lower_cone(u))


# -- 1 ------------------------------------------------------------------------

def rigidity() -> str | None:
    rng = random.Random(SEED + 1)
    small = [oracles.relabel(oracles.membership_digraph(s), rng)
             for s in oracles.sets_with_small_closure(6)]
    if len(small) != 1328:
        return f"expected 1328 classes of <= 6 nodes, generated {len(small)}"
    sample = [oracles.random_wfev(rng, 12) for _ in range(500)]
    for A in small + sample:
        if hom_map(A, A) != {k: k for k in A.field}:
            return f"hom_map(A, A) is not the identity on {A}"
        cones = [_cone(A, u) for u in sorted(A.field)]
        for C, D in combinations(cones, 2):
            if oracles.bijection_search(C, D) is not None:
                return f"two distinct nodes of {A} have isomorphic cones"
    return None


# -- 2 ------------------------------------------------------------------------

def coherence() -> str | None:
    """Every pair of classes sharing a (nodes, edges) bucket is compared, and
    each class against a second relabelled copy of itself."""
    rng = random.Random(SEED + 2)
    buckets: dict[tuple, list] = {}
    twins = []
    for s in oracles.sets_with_small_closure(6):
        base = oracles.membership_digraph(s)
        A, B = oracles.relabel(base, rng), oracles.relabel(base, rng)
        buckets.setdefault((len(A.field), len(A.edges)), []).append(A)
        twins.append((A, B, True))
    pairs = [(A, B, False) for bucket in buckets.values() for A, B in combinations(bucket, 2)]
    canon: dict = {}

    def canonical(A):
        if A not in canon:
            canon[A] = canonicalize(A)
        return canon[A]

    for A, B, same in twins + pairs:
        truth = oracles.bijection_search(A, B) is not None
        if truth != same:
            return f"oracle disagrees with the generating sets on {A}, {B}"
        if isomorphic(A, B) != truth or (canonical(A) == canonical(B)) != truth:
            return f"canonicalize / isomorphic / bijection search disagree on {A}, {B}"
    # digraphs in different buckets are never isomorphic; check the library agrees
    keys = sorted(buckets)
    for k1, k2 in zip(keys, keys[1:]):
        A, B = buckets[k1][0], buckets[k2][0]
        if isomorphic(A, B) or canonical(A) == canonical(B):
            return f"digraphs of different size reported isomorphic: {A}, {B}"
    return None


# -- 3 ------------------------------------------------------------------------

def collapse_round_trips() -> str | None:
    rng = random.Random(SEED + 3)
    for s in V4:
        if _value(encode_set(s)) is not s:
            return f"collapse(encode_set(s)) != s for s = {s}"
    members = sorted(V5, key=oracles._key)
    for s in rng.sample(members, 1000):
        if _value(encode_set(s)) is not s:
            return f"collapse(encode_set(s)) != s for s = {s}"
    for _ in range(500):
        A = oracles.random_wfev(rng, 10)
        B = encode_set(_value(A))
        f = find_isomorphism(A, B)
        if f is None or not oracles.is_isomorphism(A, B, f):
            return f"encode_set(collapse(A)) is not isomorphic to A = {A}"
    return None


# -- 4 ------------------------------------------------------------------------

def _encodings(rng: random.Random) -> list[tuple[HfSet, Digraph]]:
    return [(s, oracles.relabel(encode_set(s), rng)) for s in sorted(V3, key=oracles._key)]


def assembly_soundness() -> str | None:
    rng = random.Random(SEED + 4)
    enc = _encodings(rng)
    for (a, A), (b, B) in product(enc, repeat=2):
        P, u, w = pair(A, B)
        if not validate(P).wfev or _value(P) is not HfSet([a, b]):
            return f"pair realizes the wrong set for {a}, {b}"
        if _value(_cone(P, u)) is not a or _value(_cone(P, w)) is not b:
            return f"pair designates the wrong nodes for {a}, {b}"
    lists = 0
    for length in range(5):
        for combo in product(enc, repeat=length):
            lists += 1
            P = assemble([A for _, A in combo])
            if _value(P) is not HfSet([s for s, _ in combo]):
                return f"assemble realizes the wrong set for {[s for s, _ in combo]}"
    if lists != 341:
        return f"expected 341 lists, tried {lists}"
    # functions between Eln-sets of size <= 3: func_digraph takes surjections
    domains = [HfSet(c) for r in range(4) for c in combinations(sorted(V3, key=oracles._key), r)]
    for x, y in product(domains, repeat=2):
        A, B = oracles.relabel(encode_set(x), rng), oracles.relabel(encode_set(y), rng)
        dom, cod = sorted(eln(A)), sorted(eln(B))
        for images in product(cod, repeat=len(dom)):
            if set(images) != set(cod):
                continue
            f = dict(zip(dom, images))
            want = HfSet(oracles.kpair(_value(_cone(A, u)), _value(_cone(B, f[u]))) for u in dom)
            if _value(func_digraph(A, B, f)) is not want:
                return f"func_digraph realizes the wrong graph for {x} -> {y}"
    return None


# -- 5 ------------------------------------------------------------------------

def truth_machinery() -> str | None:
    with_param = oracles.sentence_corpus(SEED + 5, 200, depth=3, params=(0,))
    plain = oracles.sentence_corpus(SEED + 50, 200, depth=3, params=())
    big = sorted_sets(V4)
    structures = oracles.transitive_subsets(V3)
    if len(structures) != 6:
        return f"expected 6 transitive subsets of V_3, found {len(structures)}"
    seen = set()
    for X in structures:
        xs = sorted_sets(X)
        corpus = list(plain)
        if xs:
            corpus += [substitute_params(phi, [xs[i % len(xs)]]) for i, phi in enumerate(with_param)]
        for phi in corpus:
            if count_tts(X, phi) != 1:
                return f"no unique truth set for {phi} over {xs}"
            truth = models(X, phi, "tts")
            if models(X, phi, "direct") != truth or oracles.naive_models(X, phi) != truth:
                return f"evaluation routes disagree on {phi} over {xs}"
            bounded = substitute_params(relativize(phi, 0), [HfSet(X)])
            if models(big, bounded, "direct") != truth:
                return f"relativization to {HfSet(X)} inside V_4 changes {phi}"
            seen.add(truth)
    return None if seen == {True, False} else "corpus is trivially one-sided"


# -- 6 ------------------------------------------------------------------------

def _bound_after_free(phi, shift: int, env=None):
    """Rename bound variables past the free ones (capture-free)."""
    env = env or {}

    def t(x):
        return Var(env.get(x.index, x.index)) if isinstance(x, Var) else x

    if isinstance(phi, (Mem, Eq)):
        return type(phi)(t(phi.left), t(phi.right))
    if isinstance(phi, Not):
        return Not(_bound_after_free(phi.body, shift, env))
    if isinstance(phi, Exists):
        return Exists(phi.var + shift, _bound_after_free(phi.body, shift, {**env, phi.var: phi.var + shift}))
    return type(phi)(_bound_after_free(phi.left, shift, env), _bound_after_free(phi.right, shift, env))


def interpretation_transport() -> str | None:
    rng = random.Random(SEED + 6)
    members = sorted(V3, key=oracles._key)
    seen = set()
    for _ in range(120):
        phi = _bound_after_free(oracles.random_formula(rng, 2, [], free_pool=[0, 1], var_limit=4), 2)
        args = [rng.choice(members), rng.choice(members)]
        closed = substitute_vars(phi, {i: Const(a) for i, a in enumerate(args)})
        want = oracles.naive_models(V3, closed)
        digraphs = [oracles.relabel(encode_set(a), rng) for a in args]
        if models_interp_bounded(translate_interp(phi), digraphs, 3) != want:
            return f"interpretation disagrees with V_3 on {phi} at {args}"
        seen.add(want)
    law = translate_interp(Mem(Var(0), Var(1)))
    for k, n in product(range(5), repeat=2):
        hk, hn = encode_numeral(k), encode_numeral(n)
        if inh(hk, hn) != (k < n):
            return f"numeral law fails for {k}, {n}"
        if max(k, n) < 3 and models_interp_bounded(law, [hk, hn], 3) != (k < n):
            return f"translated membership fails on numerals {k}, {n}"
    return None if seen == {True, False} else "sample is trivially one-sided"


# -- 7 ------------------------------------------------------------------------

def _powerset(X) -> set[frozenset]:
    return {frozenset(c) for c in oracles.subsets(sorted(X, key=oracles._key))}


def definability() -> str | None:
    rng = random.Random(SEED + 7)
    for X in oracles.transitive_subsets(V3):
        if {d.children for d in def_of(X)} != _powerset(X):
            return f"Def(X) != P(X) for X = {sorted_sets(X)}"
    certs = def_certificate(V4)
    if len(certs) != 2 ** 16 or {c.subset for c in certs} != _powerset(V4):
        return "certificates for V_4 do not cover P(V_4) exactly once"
    for c in rng.sample(certs, 300):
        if defined_subset(V4, c.formula, c.valuation.params) != c.subset:
            return f"certificate formula does not define {sorted_sets(c.subset)}"
    for X in oracles.transitive_subsets(V3):
        if len(X) > 2:
            continue
        got = def_enumerate(X, 9)
        if got != _powerset(X):
            return f"def_enumerate at budget 9 gives {len(got)} subsets of {sorted_sets(X)}"
    for n in range(5):
        if l_level(n) != V[n]:
            return f"L_{n} != V_{n}"
    if len(l_level(5)) != 65536:
        return "|L_5| != 65536"
    return None


# -- 8 ------------------------------------------------------------------------

def parameter_elimination() -> str | None:
    rng = random.Random(SEED + 8)
    L1, L2, L3 = l_level(1), l_level(2), l_level(3)
    sampled = set()
    params = sorted_sets(L2)
    while len(sampled) < 20:
        phi = oracles.random_formula(rng, 2, [], free_pool=[0], params=(0,))
        sampled.add((phi, params[len(sampled) % len(params)]))
    outcomes = set()
    for phi, p in sorted(sampled, key=repr):
        rewritten = eliminate_params(phi, subset_definition(p.children, 0), 1)
        before = defined_subset(L3, phi, (p,))
        after = defined_subset(L3, rewritten, (HfSet(()), HfSet(L1)))
        if before != after:
            return f"elimination changes the subset defined by {phi} with #0 = {p}"
        outcomes.add(len(before))
    return None if len(outcomes) > 1 else "all sampled definitions define sets of one size"


# -- 9 ------------------------------------------------------------------------

def _random_ordinal(rng: random.Random, depth: int = 2) -> CnfOrdinal:
    if depth == 0 or rng.random() < 0.3:
        return CnfOrdinal.of(rng.randint(0, 6))
    terms = [(_random_ordinal(rng, depth - 1), rng.randint(1, 4)) for _ in range(rng.randint(0, 3))]
    out = ZERO
    for e, c in sorted(terms, key=lambda t: t[0], reverse=True):
        out = out + CnfOrdinal(((e, c),))
    return out


def ordinal_algebra() -> str | None:
    rng = random.Random(SEED + 9)
    for _ in range(1000):
        a, b, c = (_random_ordinal(rng) for _ in range(3))
        if (a + b) + c != a + (b + c) or (a * b) * c != a * (b * c):
            return f"associativity fails on {a}, {b}, {c}"
        if a * (b + c) != a * b + a * c:
            return f"left distributivity fails on {a}, {b}, {c}"
        if a ** (b + c) != a ** b * a ** c or (a ** b) ** c != a ** (b * c):
            return f"exponent law fails on {a}, {b}, {c}"
        if not (a <= a + b) or (b > ZERO and not a < a + b):
            return f"addition is not increasing on {a}, {b}"
    for m, n in product(range(7), repeat=2):
        order_type, _ = collapse_wellorder(product_order(m, n))
        if order_type != m * n:
            return f"materialized product {m} x {n} has type {order_type}"
    return None


# -- 10 -----------------------------------------------------------------------

def cli_contract() -> str | None:
    from cli_cases import golden_path, load_cases, render
    from wfesets.cli import build_parser

    cases = load_cases()
    for case in cases:
        want = golden_path(case["name"]).read_text(encoding="utf-8")
        if render(case["args"]) != want:
            return f"golden case {case['name']} differs"
    verbs = set(next(a for a in build_parser()._actions if a.dest == "verb").choices)
    used = {t for c in cases for t in c["args"]}
    if not verbs <= used:
        return f"verbs without golden cases: {sorted(verbs - used)}"
    statuses = {render(c["args"]).rsplit("--- exit ", 1)[1].strip() for c in cases}
    if statuses != {"0", "1", "2"}:
        return f"golden cases do not cover every exit status: {sorted(statuses)}"
    src = "7 3;3 11;7 11;11 20;3 20"
    first, second = render(["canon", src]), render(["canon", src])
    if first != second:
        return "canonical output differs between runs"
    return None


CRITERIA = [
    Criterion(1, "rigidity", 10, rigidity),
    Criterion(2, "isomorphism coherence", 30, coherence),
    Criterion(3, "collapse round trips", 30, collapse_round_trips),
    Criterion(4, "pairing, assembly and functions", 60, assembly_soundness),
    Criterion(5, "truth machinery", 60, truth_machinery),
    Criterion(6, "interpretation transport", 120, interpretation_transport),
    Criterion(7, "definability and L_n", 120, definability),
    Criterion(8, "parameter elimination", 30, parameter_elimination),
    Criterion(9, "ordinal algebra", 10, ordinal_algebra),
    Criterion(10, "CLI contract", 10, cli_contract),
]


def evaluate(c: Criterion) -> tuple[bool, str]:
    start = time.perf_counter()
    try:
        reason = c.check()
    except Exception as exc:  # a crash is a failure, reported like one
        reason = f"{type(exc).__name__}: {exc}"
    elapsed = time.perf_counter() - start
    if reason is None and elapsed >= c.limit_s:
        reason = f"took {elapsed:.1f} s, limit {c.limit_s:g} s"
    ok = reason is None
    line = f"{'PASS' if ok else 'FAIL'} criterion {c.number:2d} {c.title} ({elapsed:.2f} s / {c.limit_s:g} s)"
    return ok, line if ok else f"{line}: {reason}"


import pytest  # noqa: E402


@pytest.mark.parametrize("criterion", CRITERIA, ids=[f"c{c.number}" for c in CRITERIA])
def test_criterion(criterion, capsys):
    ok, line = evaluate(criterion)
    with capsys.disabled():
        print("\n" + line)
    assert ok, line


if __name__ == "__main__":
    results = [evaluate(c) for c in CRITERIA]
    for _, line in results:
        print(line)
    sys.exit(0 if all(ok for ok, _ in results) else 1)
