"""The first-order language of membership: AST, parser, printer, Goedel
numbering and the syntactic rewrites (substitution, relativization, the digraph
interpretation, parameter elimination).

The core connectives are negation, conjunction and the existential quantifier;
everything else is sugar removed by the parser.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Mapping, Sequence, Union

from .coding import decode_list, encode_list
from .errors import (
    ArityMismatch,
    HasParameters,
    ParameterOutsideStructure,
    ParseError,
    TooLarge,
    UnboundParameter,
)
from .hfset import HfSet, format_hfset, parse_hfset


# -- terms and formulas ------------------------------------------------------

@dataclass(frozen=True)
class Var:
    index: int


@dataclass(frozen=True)
class Param:
    slot: int


@dataclass(frozen=True)
class Const:
    """A set substituted for a parameter or a free variable."""
    value: HfSet


Term = Union[Var, Param, Const]


@dataclass(frozen=True)
class Mem:
    left: Term
    right: Term


@dataclass(frozen=True)
class Eq:
    left: Term
    right: Term


@dataclass(frozen=True)
class Not:
    body: "Formula"


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Exists:
    var: int
    body: "Formula"


Formula = Union[Mem, Eq, Not, And, Exists]
Atom = (Mem, Eq)


def Or(a: Formula, b: Formula) -> Formula:
    return Not(And(Not(a), Not(b)))


def Implies(a: Formula, b: Formula) -> Formula:
    return Not(And(a, Not(b)))


def Iff(a: Formula, b: Formula) -> Formula:
    return And(Implies(a, b), Implies(b, a))


def Forall(var: int, body: Formula) -> Formula:
    return Not(Exists(var, Not(body)))


def disjunction(parts: Sequence[Formula]) -> Formula:
    out = parts[-1]
    for p in reversed(parts[:-1]):
        out = Or(p, out)
    return out


@dataclass(frozen=True)
class Valuation:
    params: tuple
    structure: frozenset

    def __post_init__(self):
        for p in self.params:
            if p not in self.structure:
                raise ParameterOutsideStructure(f"parameter {p} is not in the structure")


# -- structural queries ------------------------------------------------------

def _term_vars(t: Term) -> set[int]:
    return {t.index} if isinstance(t, Var) else set()


def free_vars(phi: Formula) -> frozenset[int]:
    if isinstance(phi, Atom):
        return frozenset(_term_vars(phi.left) | _term_vars(phi.right))
    if isinstance(phi, Not):
        return free_vars(phi.body)
    if isinstance(phi, And):
        return free_vars(phi.left) | free_vars(phi.right)
    return free_vars(phi.body) - {phi.var}


def all_vars(phi: Formula) -> frozenset[int]:
    """Every variable index occurring in phi, bound or free."""
    if isinstance(phi, Atom):
        return frozenset(_term_vars(phi.left) | _term_vars(phi.right))
    if isinstance(phi, Not):
        return all_vars(phi.body)
    if isinstance(phi, And):
        return all_vars(phi.left) | all_vars(phi.right)
    return all_vars(phi.body) | {phi.var}


def param_slots(phi: Formula) -> frozenset[int]:
    if isinstance(phi, Atom):
        return frozenset(t.slot for t in (phi.left, phi.right) if isinstance(t, Param))
    if isinstance(phi, Not):
        return param_slots(phi.body)
    if isinstance(phi, And):
        return param_slots(phi.left) | param_slots(phi.right)
    return param_slots(phi.body)


def constants(phi: Formula) -> frozenset[HfSet]:
    if isinstance(phi, Atom):
        return frozenset(t.value for t in (phi.left, phi.right) if isinstance(t, Const))
    if isinstance(phi, Not):
        return constants(phi.body)
    if isinstance(phi, And):
        return constants(phi.left) | constants(phi.right)
    return constants(phi.body)


def is_closed(phi: Formula) -> bool:
    return not free_vars(phi) and not param_slots(phi)


def size(phi: Formula) -> int:
    """Symbol count: each connective, quantifier and variable or parameter
    occurrence counts 1, so an atom has 2 symbols and ``E v.`` adds 2."""
    if isinstance(phi, Atom):
        return 2
    if isinstance(phi, Not):
        return 1 + size(phi.body)
    if isinstance(phi, And):
        return 1 + size(phi.left) + size(phi.right)
    return 2 + size(phi.body)


def depth(phi: Formula) -> int:
    if isinstance(phi, Atom):
        return 0
    if isinstance(phi, Not):
        return 1 + depth(phi.body)
    if isinstance(phi, And):
        return 1 + max(depth(phi.left), depth(phi.right))
    return 1 + depth(phi.body)


def subformulas(phi: Formula) -> frozenset:
    out = {phi}
    if isinstance(phi, Not):
        out |= subformulas(phi.body)
    elif isinstance(phi, And):
        out |= subformulas(phi.left) | subformulas(phi.right)
    elif isinstance(phi, Exists):
        out |= subformulas(phi.body)
    return frozenset(out)


# -- substitution ------------------------------------------------------------

def _map_terms(phi: Formula, f, bound: frozenset = frozenset()) -> Formula:
    if isinstance(phi, Mem):
        return Mem(f(phi.left, bound), f(phi.right, bound))
    if isinstance(phi, Eq):
        return Eq(f(phi.left, bound), f(phi.right, bound))
    if isinstance(phi, Not):
        return Not(_map_terms(phi.body, f, bound))
    if isinstance(phi, And):
        return And(_map_terms(phi.left, f, bound), _map_terms(phi.right, f, bound))
    return Exists(phi.var, _map_terms(phi.body, f, bound | {phi.var}))


def substitute_vars(phi: Formula, mapping: Mapping[int, Term]) -> Formula:
    """Replace free occurrences of variables. Variables used as replacement
    terms must not be bound anywhere in phi."""
    clash = {t.index for t in mapping.values() if isinstance(t, Var)}
    if clash & (all_vars(phi) - free_vars(phi)):
        raise ValueError("replacement variable would be captured")

    def f(t, bound):
        if isinstance(t, Var) and t.index not in bound and t.index in mapping:
            return mapping[t.index]
        return t

    return _map_terms(phi, f)


def substitute_params(phi: Formula, val: Valuation | Sequence[HfSet]) -> Formula:
    """Replace every parameter slot by the set bound to it."""
    params = val.params if isinstance(val, Valuation) else tuple(val)

    def f(t, bound):
        if isinstance(t, Param):
            if t.slot >= len(params):
                raise UnboundParameter(f"parameter #{t.slot} is not bound")
            return Const(params[t.slot])
        return t

    return _map_terms(phi, f)


def replace_param(phi: Formula, slot: int, term: Term) -> Formula:
    def f(t, bound):
        return term if isinstance(t, Param) and t.slot == slot else t

    return _map_terms(phi, f)


# -- printing and parsing ----------------------------------------------------

def term_text(t: Term) -> str:
    if isinstance(t, Var):
        return f"v{t.index}"
    if isinstance(t, Param):
        return f"#{t.slot}"
    return format_hfset(t.value)


def to_text(phi: Formula) -> str:
    if isinstance(phi, Mem):
        return f"{term_text(phi.left)} in {term_text(phi.right)}"
    if isinstance(phi, Eq):
        return f"{term_text(phi.left)} = {term_text(phi.right)}"
    if isinstance(phi, Not):
        return "!" + to_text(phi.body)
    if isinstance(phi, And):
        return f"({to_text(phi.left)} & {to_text(phi.right)})"
    return f"E v{phi.var}. {to_text(phi.body)}"


_SYMBOLS = {
    "<->": "IFF", "↔": "IFF", "->": "IMP", "→": "IMP",
    ".": ".", "!": "NOT", "¬": "NOT", "(": "(", ")": ")",
    "&": "AND", "∧": "AND", "|": "OR", "∨": "OR",
    "=": "EQ", "∈": "IN", "∃": "EX", "∀": "ALL",
}
_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_DIGITS = re.compile(r"[0-9]+")


def _tokenize(text: str) -> list[tuple[str, object, int]]:
    toks = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch == "{":
            depth_, j = 0, i
            while j < n:
                if text[j] == "{":
                    depth_ += 1
                elif text[j] == "}":
                    depth_ -= 1
                    if depth_ == 0:
                        break
                j += 1
            if j >= n:
                raise ParseError("unbalanced braces", i)
            try:
                toks.append(("CONST", parse_hfset(text[i:j + 1]), i))
            except ParseError as exc:
                raise ParseError("bad set literal", i + exc.position) from None
            i = j + 1
            continue
        if ch == "#":
            m = _DIGITS.match(text, i + 1)
            if not m:
                raise ParseError("expected digits after '#'", i + 1)
            toks.append(("PARAM", int(m.group()), i))
            i = m.end()
            continue
        for sym in ("<->", "->"):
            if text.startswith(sym, i):
                toks.append((_SYMBOLS[sym], None, i))
                i += len(sym)
                break
        else:
            if ch in _SYMBOLS:
                toks.append((_SYMBOLS[ch], None, i))
                i += 1
                continue
            m = _IDENT.match(text, i)
            if not m:
                raise ParseError(f"unexpected character {ch!r}", i)
            word = m.group()
            if word == "E":
                toks.append(("EX", None, i))
            elif word == "A":
                toks.append(("ALL", None, i))
            elif word == "in":
                toks.append(("IN", None, i))
            elif re.fullmatch(r"v[0-9]+", word):
                toks.append(("VAR", int(word[1:]), i))
            else:
                toks.append(("NAME", word, i))
            i = m.end()
    toks.append(("END", None, n))
    return toks


def parse(text: str) -> Formula:
    """Parse the concrete syntax into a core (negation/conjunction/exists) AST.

    Variables are ``v<n>``; any other lowercase name is also accepted and
    assigned the next index not used explicitly.
    """
    toks = _tokenize(text)
    explicit = {v for kind, v, _ in toks if kind == "VAR"}
    names: dict[str, int] = {}
    next_free = max(explicit, default=-1) + 1
    for idx, (kind, v, p) in enumerate(toks):
        if kind == "NAME":
            if v not in names:
                names[v] = next_free
                next_free += 1
            toks[idx] = ("VAR", names[v], p)
    pos = 0

    def peek():
        return toks[pos][0]

    def take(kind: str):
        nonlocal pos
        k, v, p = toks[pos]
        if k != kind:
            want = {"EQ": "'='", "IN": "'in'", ".": "'.'", ")": "')'"}.get(kind, kind.lower())
            raise ParseError(f"expected {want}", p)
        pos += 1
        return v

    def term() -> Term:
        nonlocal pos
        k, v, p = toks[pos]
        pos += 1
        if k == "VAR":
            return Var(v)
        if k == "PARAM":
            return Param(v)
        if k == "CONST":
            return Const(v)
        raise ParseError("expected a term", p)

    def formula() -> Formula:
        nonlocal pos
        k, _, p = toks[pos]
        if k in ("EX", "ALL"):
            pos += 1
            var = take("VAR")
            take(".")
            body = formula()
            return Exists(var, body) if k == "EX" else Forall(var, body)
        if k == "NOT":
            pos += 1
            return Not(formula())
        if k == "(":
            pos += 1
            left = formula()
            op = peek()
            if op == ")":
                pos += 1
                return left
            if op not in ("AND", "OR", "IMP", "IFF"):
                raise ParseError("expected '&', '|', '->' or ')'", toks[pos][2])
            pos += 1
            right = formula()
            take(")")
            return {"AND": And, "OR": Or, "IMP": Implies, "IFF": Iff}[op](left, right)
        left = term()
        k2, _, p2 = toks[pos]
        if k2 not in ("IN", "EQ"):
            raise ParseError("expected 'in' or '='", p2)
        pos += 1
        right = term()
        return Mem(left, right) if k2 == "IN" else Eq(left, right)

    out = formula()
    if peek() != "END":
        raise ParseError("trailing input", toks[pos][2])
    return out


# -- Goedel numbering --------------------------------------------------------

def godelize(phi: Formula) -> int:
    """Code a parameter-free formula as a natural.

    Atoms are [0,i,j] for membership and [1,i,j] for equality, negation [2,g],
    conjunction [3,g,h], existential [4,i,g]; lists are coded by
    :func:`wfesets.coding.encode_list`. A conjunction puts the code of its left
    side in an exponent, so left-nested conjunctions quickly exceed memory;
    those raise TooLarge.
    """
    try:
        return _godelize(phi)
    except OverflowError as exc:
        raise TooLarge(f"Goedel number too large to represent: {exc}") from None


def _godelize(phi: Formula) -> int:
    if isinstance(phi, Atom):
        if not (isinstance(phi.left, Var) and isinstance(phi.right, Var)):
            raise HasParameters("only parameter-free formulas have Goedel numbers")
        tag = 0 if isinstance(phi, Mem) else 1
        return encode_list([tag, phi.left.index, phi.right.index])
    if isinstance(phi, Not):
        return encode_list([2, _godelize(phi.body)])
    if isinstance(phi, And):
        return encode_list([3, _godelize(phi.left), _godelize(phi.right)])
    return encode_list([4, phi.var, _godelize(phi.body)])


def degodelize(code: int) -> Formula | None:
    if code < 0:
        return None
    xs = decode_list(code)
    if xs is None:
        return None
    tag, args = xs[0], xs[1:]
    if tag in (0, 1) and len(args) == 2:
        cls = Mem if tag == 0 else Eq
        return cls(Var(args[0]), Var(args[1]))
    if tag == 2 and len(args) == 1:
        body = degodelize(args[0])
        return None if body is None else Not(body)
    if tag == 3 and len(args) == 2:
        left, right = degodelize(args[0]), degodelize(args[1])
        return None if left is None or right is None else And(left, right)
    if tag == 4 and len(args) == 2:
        body = degodelize(args[1])
        return None if body is None else Exists(args[0], body)
    return None


# -- rewrites ----------------------------------------------------------------

def relativize(phi: Formula, bound_slot: int) -> Formula:
    """Bound every quantifier by parameter #bound_slot: E v. p becomes E v. (v in #s & p)."""
    if isinstance(phi, Atom):
        return phi
    if isinstance(phi, Not):
        return Not(relativize(phi.body, bound_slot))
    if isinstance(phi, And):
        return And(relativize(phi.left, bound_slot), relativize(phi.right, bound_slot))
    return Exists(phi.var, And(Mem(Var(phi.var), Param(bound_slot)),
                               relativize(phi.body, bound_slot)))


def eliminate_params(phi: Formula, defining: Formula, level_tag: int) -> Formula:
    """Trade the single parameter p of phi for its definition over a level.

    ``defining`` is psi(z) with exactly one free variable, defining p over the
    level bound to slot ``level_tag``. The result is

        E p. (A z. (z in p <-> (z in #level & psi(z) relativized to #level)) & phi(p, ...))

    whose parameters are those of psi together with the level.
    """
    slots = param_slots(phi)
    if not slots:
        return phi
    if len(slots) > 1:
        raise ArityMismatch(f"expected one parameter slot, found {sorted(slots)}")
    free = free_vars(defining)
    if len(free) != 1:
        raise ArityMismatch(f"defining formula needs exactly one free variable, has {sorted(free)}")
    (slot,) = slots
    (zfree,) = free
    used = all_vars(phi) | all_vars(defining)
    p = max(used, default=-1) + 1
    z = p + 1
    psi_z = substitute_vars(defining, {zfree: Var(z)})
    psi_level = And(Mem(Var(z), Param(level_tag)), relativize(psi_z, level_tag))
    extension = Forall(z, Iff(Mem(Var(z), Var(p)), psi_level))
    return Exists(p, And(extension, replace_param(phi, slot, Var(p))))


# -- the digraph interpretation ----------------------------------------------

@dataclass(frozen=True)
class DVar:
    index: int


@dataclass(frozen=True)
class DParam:
    slot: int


@dataclass(frozen=True)
class DConst:
    digraph: object


@dataclass(frozen=True)
class DMem:
    """left is isomorphic to the cone at some vertex element of right."""
    left: object
    right: object


@dataclass(frozen=True)
class DIso:
    left: object
    right: object


@dataclass(frozen=True)
class DNot:
    body: object


@dataclass(frozen=True)
class DAnd:
    left: object
    right: object


@dataclass(frozen=True)
class DExists:
    """Quantifier over WFEV digraphs."""
    var: int
    body: object


def translate_interp(phi: Formula):
    """Read = as isomorphism and membership as cone membership; quantifiers
    range over WFEV digraphs."""
    from .hfset import encode_set

    def tr(t):
        if isinstance(t, Var):
            return DVar(t.index)
        if isinstance(t, Param):
            return DParam(t.slot)
        return DConst(encode_set(t.value))

    if isinstance(phi, Mem):
        return DMem(tr(phi.left), tr(phi.right))
    if isinstance(phi, Eq):
        return DIso(tr(phi.left), tr(phi.right))
    if isinstance(phi, Not):
        return DNot(translate_interp(phi.body))
    if isinstance(phi, And):
        return DAnd(translate_interp(phi.left), translate_interp(phi.right))
    return DExists(phi.var, translate_interp(phi.body))


def _dterm_text(t) -> str:
    if isinstance(t, DVar):
        return f"V{t.index}"
    if isinstance(t, DParam):
        return f"#{t.slot}"
    return "[" + " ".join(f"{j}>{k}" for j, k in t.digraph.sorted_edges()) + "]"


def dformula_text(Phi) -> str:
    if isinstance(Phi, DMem):
        r = _dterm_text(Phi.right)
        return f"∃k∈Eln({r}). {_dterm_text(Phi.left)} ≅ Con_{{{r}}}(k)"
    if isinstance(Phi, DIso):
        return f"{_dterm_text(Phi.left)} ≅ {_dterm_text(Phi.right)}"
    if isinstance(Phi, DNot):
        return f"¬[{dformula_text(Phi.body)}]"
    if isinstance(Phi, DAnd):
        return f"({dformula_text(Phi.left)} ∧ {dformula_text(Phi.right)})"
    return f"∃V{Phi.var}∈WFEV. {dformula_text(Phi.body)}"


def dfree_vars(Phi) -> frozenset[int]:
    if isinstance(Phi, (DMem, DIso)):
        return frozenset(t.index for t in (Phi.left, Phi.right) if isinstance(t, DVar))
    if isinstance(Phi, DNot):
        return dfree_vars(Phi.body)
    if isinstance(Phi, DAnd):
        return dfree_vars(Phi.left) | dfree_vars(Phi.right)
    return dfree_vars(Phi.body) - {Phi.var}
