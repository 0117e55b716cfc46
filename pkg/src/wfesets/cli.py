"""Command-line entry point: ``wfesets VERB [args]``.

Output is one JSON object per command (``--plain`` for a readable form).
Exit status is 0 on success, 1 on a domain error (the JSON carries its code)
and 2 on a usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import shlex
import sys
from typing import Callable

from . import assembly, construct, digraph as dg, formula as fm, hfset as hf, iso, ordinal, truth
from .errors import (
    LevelTooLarge,
    NoVertex,
    NotExtensional,
    NotWf,
    RankTooLarge,
    WfesetsError,
)

EXIT_OK, EXIT_DOMAIN, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


# -- input readers ------------------------------------------------------------

def read_digraph(src: str) -> dg.Digraph:
    """A path, ``-`` for stdin, or inline text (``;`` separates edges)."""
    if src == "-":
        return dg.parse_digraph(sys.stdin.read())
    if os.path.isfile(src):
        with open(src, encoding="utf-8") as fh:
            return dg.parse_digraph(fh.read())
    text = src if src.lstrip().startswith("{") else src.replace(";", "\n")
    return dg.parse_digraph(text)


def read_set(src: str) -> hf.HfSet:
    if os.path.isfile(src):
        with open(src, encoding="utf-8") as fh:
            src = fh.read()
    return hf.parse_hfset(src)


def read_structure(src: str) -> frozenset[hf.HfSet]:
    """``V3``, ``L2`` or a brace literal whose members form the structure."""
    s = src.strip()
    if len(s) > 1 and s[0] in "VL" and s[1:].isdigit():
        n = int(s[1:])
        return hf.v_level(n) if s[0] == "V" else construct.l_level(n)
    return read_set(s).children


def read_set_or_digraph(src: str) -> dg.Digraph:
    """Brace literals are encoded; anything else is read as a digraph."""
    s = src.strip()
    if s.startswith("{") and not s.startswith('{"'):
        return hf.encode_set(read_set(s))
    return read_digraph(src)


def read_formula(src: str) -> fm.Formula:
    if os.path.isfile(src):
        with open(src, encoding="utf-8") as fh:
            src = fh.read()
    return fm.parse(src)


# -- output helpers -------------------------------------------------------------

def _edges(A: dg.Digraph) -> list[list[int]]:
    return [list(e) for e in A.sorted_edges()]


def _digraph_result(A: dg.Digraph, **extra) -> tuple[dict, str]:
    out = {"edges": _edges(A), **extra}
    plain = "".join(f"# {k} {v}\n" for k, v in extra.items()) + dg.format_digraph(A)
    return out, plain


def _set_list(xs) -> list[str]:
    return [hf.format_hfset(x) for x in hf.sorted_sets(xs)]


# -- verb handlers ------------------------------------------------------------
# each returns (json-able dict, plain text or None)

def cmd_check(a):
    A = read_digraph(a.digraph)
    cls = dg.validate(A)
    out = {
        "wf": cls.well_founded,
        "extensional": cls.extensional,
        "has_vertex": cls.has_vertex,
        "vertex": cls.vertex,
        "wfe": cls.wfe,
        "wfev": cls.wfev,
        "nodes": len(A.field),
        "edges": len(A.edges),
    }
    if a.require_wfe or a.require_wfev:
        failures = [(cls.well_founded, NotWf, "digraph has a cycle"),
                    (cls.extensional, NotExtensional, "two nodes share an extension")]
        if a.require_wfev:
            failures.append((cls.has_vertex, NoVertex, "digraph has no vertex"))
        for ok, exc, msg in failures:
            if not ok:
                raise exc(msg, witness=A.find_cycle() if exc is NotWf else None)
    return out, None


def cmd_canon(a):
    return _digraph_result(iso.canonicalize(read_digraph(a.digraph)))


def cmd_iso(a):
    A, B = read_digraph(a.left), read_digraph(a.right)
    if a.brute:
        m = iso.brute_force_isomorphism(A, B)
    else:
        dg.require_wfev(A)
        dg.require_wfev(B)
        m = iso.find_isomorphism(A, B)
    out = {"isomorphic": m is not None, "map": None if m is None else sorted([k, v] for k, v in m.items())}
    return out, None


def cmd_cone(a):
    return _digraph_result(dg.cone(read_digraph(a.digraph), a.node))


def cmd_pair(a):
    P, x, y = assembly.pair(read_digraph(a.left), read_digraph(a.right))
    return _digraph_result(P, a=x, b=y)


def cmd_assemble(a):
    return _digraph_result(assembly.assemble([read_digraph(s) for s in a.digraphs]))


def cmd_slice(a):
    return _digraph_result(dg.slice_digraph(read_digraph(a.digraph), a.n))


def cmd_close(a):
    return _digraph_result(assembly.pair_close_bounded(read_digraph(a.digraph), a.limit, a.depth))


def cmd_collapse(a):
    A = read_digraph(a.digraph)
    res = hf.collapse(A)
    out = {
        "set": hf.format_hfset(res.value),
        "ack": hf.ack_index(res.value) if hf.rank(res.value) <= hf.INT_ORDER_RANK else None,
        "rank": hf.rank(res.value),
        "xi": [[k, hf.format_hfset(v)] for k, v in sorted(res.xi.items())],
    }
    return out, hf.format_hfset(res.value) + "\n"


def cmd_encode(a):
    if a.numeral is not None:
        return _digraph_result(dg.encode_numeral(a.numeral))
    if a.natset is not None:
        xs = [int(t) for t in a.natset.split(",") if t.strip()] if a.natset.strip() else []
        return _digraph_result(dg.encode_natset(xs))
    if a.set is None:
        raise UsageError("encode: give a set literal, --numeral or --natset")
    return _digraph_result(hf.encode_set(read_set(a.set)))


def cmd_tc(a):
    s = read_set(a.set)
    tc = hf.transitive_closure(s)
    return {"tc": _set_list(tc), "size": len(tc), "transitive": hf.is_transitive(s.children)}, None


def cmd_parse(a):
    phi = read_formula(a.formula)
    out = {
        "formula": fm.to_text(phi),
        "free_vars": sorted(fm.free_vars(phi)),
        "params": sorted(fm.param_slots(phi)),
        "size": fm.size(phi),
        "depth": fm.depth(phi),
    }
    return out, fm.to_text(phi) + "\n"


def cmd_godel(a):
    if a.decode is not None:
        phi = fm.degodelize(a.decode)
        text = None if phi is None else fm.to_text(phi)
        return {"code": a.decode, "formula": text}, f"{text}\n"
    if a.formula is None:
        raise UsageError("godel: give a formula or --decode N")
    code = fm.godelize(read_formula(a.formula))
    return {"godel": code}, f"{code}\n"


def _bind_params(phi, params):
    if not params:
        return phi
    return fm.substitute_params(phi, [read_set(p) for p in params])


def cmd_eval(a):
    X = read_structure(a.structure)
    if X and max(hf.rank(x) for x in X) >= truth.max_rank():
        raise RankTooLarge(f"structure exceeds the rank cap {truth.max_rank()} (WFESETS_MAX_RANK)")
    phi = _bind_params(read_formula(a.formula), a.param)
    if a.route == "direct":
        return {"models": truth.models(X, phi, route="direct")}, None
    tau = truth.build_tts(X, phi)
    return {"models": phi in tau, "tts_size": len(tau)}, None


def cmd_translate(a):
    Phi = fm.translate_interp(read_formula(a.formula))
    text = fm.dformula_text(Phi)
    return {"translation": text}, text + "\n"


def cmd_interp_eval(a):
    Phi = fm.translate_interp(read_formula(a.formula))
    args = [read_set_or_digraph(s) for s in a.arg]
    params = [read_set_or_digraph(s) for s in a.param]
    ok = truth.models_interp_bounded(Phi, args, a.rank_bound, params)
    return {"models": ok, "rank_bound": a.rank_bound}, None


def cmd_def(a):
    X = read_structure(a.structure)
    if a.budget is not None:
        subsets = construct.def_enumerate(X, a.budget)
        found = hf.sorted_sets(hf.HfSet(s) for s in subsets)
        out = {"count": len(found), "budget": a.budget, "saturated": len(found) == 2 ** len(X)}
        if a.list:
            out["subsets"] = [hf.format_hfset(s) for s in found]
        return out, None
    if a.certificates:
        certs = [{
            "subset": hf.format_hfset(hf.HfSet(c.subset)),
            "formula": fm.to_text(c.formula),
            "params": [hf.format_hfset(p) for p in c.valuation.params],
        } for c in construct.iter_def_certificates(X)]
        return {"count": len(certs), "certificates": certs}, None
    found = construct.def_of(X)
    out = {"count": len(found)}
    if a.list:
        out["subsets"] = _set_list(found)
    return out, None


LIST_LIMIT = 4


def cmd_level(a):
    level = hf.v_level(a.n) if a.kind == "V" else construct.l_level(a.n)
    if a.count:
        return {"count": len(level)}, f"{len(level)}\n"
    out = {"level": a.n, "kind": a.kind, "count": len(level)}
    if a.list:
        if a.n > LIST_LIMIT:
            raise LevelTooLarge(f"listing is limited to n <= {LIST_LIMIT}")
        out["members"] = _set_list(level)
    return out, None


_ORD_OPS = {"+": "add", "add": "add", "*": "mul", "mul": "mul", "^": "pow", "pow": "pow", "cmp": "cmp"}


def cmd_ord(a):
    x = ordinal.parse_ordinal(a.left)
    if a.op is None:
        text = ordinal.format_ordinal(x)
        return {"result": text}, text + "\n"
    if a.right is None:
        raise UsageError("ord: an operator needs a right operand")
    op = _ORD_OPS.get(a.op)
    if op is None:
        raise UsageError(f"ord: unknown operator {a.op!r}")
    y = ordinal.parse_ordinal(a.right)
    if op == "cmp":
        word = {-1: "lt", 0: "eq", 1: "gt"}[ordinal.cnf_cmp(x, y)]
        return {"cmp": word}, word + "\n"
    text = ordinal.format_ordinal(ordinal.cnf_arith(op, x, y))
    return {"result": text}, text + "\n"


def cmd_collapse_order(a):
    carrier = [int(t) for t in a.carrier.split(",") if t.strip()] if a.carrier else []
    n, m = ordinal.collapse_wellorder(read_digraph(a.digraph), carrier)
    return {"n": n, "iso": sorted([k, v] for k, v in m.items())}, None


# -- parser ---------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--plain", action="store_true", default=argparse.SUPPRESS,
                        help="plain-text output")
    p = _Parser(prog="wfesets", description="Hereditarily finite sets as digraphs.")
    p.add_argument("--plain", action="store_true", help="plain-text output")
    p.add_argument("--batch", metavar="FILE",
                   help="run one command per line of FILE ('-' for stdin)")
    sub = p.add_subparsers(dest="verb", parser_class=_Parser)

    def verb(name: str, fn: Callable, help: str):
        sp = sub.add_parser(name, parents=[common], help=help)
        sp.set_defaults(fn=fn)
        return sp

    sp = verb("check", cmd_check, "classify a digraph")
    sp.add_argument("digraph")
    g = sp.add_mutually_exclusive_group()
    g.add_argument("--require-wfe", action="store_true")
    g.add_argument("--require-wfev", action="store_true")

    verb("canon", cmd_canon, "canonical form of a WFEV digraph").add_argument("digraph")

    sp = verb("iso", cmd_iso, "test two digraphs for isomorphism")
    sp.add_argument("left")
    sp.add_argument("right")
    sp.add_argument("--brute", action="store_true", help="search permutations (<= 8 nodes)")

    sp = verb("cone", cmd_cone, "cone restriction at a node")
    sp.add_argument("digraph")
    sp.add_argument("node", type=int)

    sp = verb("pair", cmd_pair, "digraph realizing {|A|, |B|}")
    sp.add_argument("left")
    sp.add_argument("right")

    sp = verb("assemble", cmd_assemble, "digraph realizing {|A0|, ..., |An|}")
    sp.add_argument("digraphs", nargs="*")

    sp = verb("slice", cmd_slice, "n-th slice of a packed digraph")
    sp.add_argument("digraph")
    sp.add_argument("n", type=int)

    sp = verb("close", cmd_close, "bounded pair-closure")
    sp.add_argument("digraph")
    sp.add_argument("--limit", type=int, default=2, help="largest subset size per round")
    sp.add_argument("--depth", type=int, default=1, help="number of rounds")

    verb("collapse", cmd_collapse, "Mostowski collapse").add_argument("digraph")

    sp = verb("encode", cmd_encode, "encode a set as a digraph")
    sp.add_argument("set", nargs="?")
    g = sp.add_mutually_exclusive_group()
    g.add_argument("--numeral", type=int)
    g.add_argument("--natset", help="comma-separated naturals")

    verb("tc", cmd_tc, "transitive closure of a set").add_argument("set")
    verb("parse", cmd_parse, "parse and normalize a formula").add_argument("formula")

    sp = verb("godel", cmd_godel, "Godel number of a formula, or decode one")
    sp.add_argument("formula", nargs="?")
    sp.add_argument("--decode", type=int)

    sp = verb("eval", cmd_eval, "decide a sentence over a finite transitive structure")
    sp.add_argument("formula")
    sp.add_argument("--structure", required=True, help="V<n>, L<n> or a brace literal")
    sp.add_argument("--route", choices=["tts", "direct"], default="tts")
    sp.add_argument("--param", action="append", default=[], help="value for #0, #1, ...")

    verb("translate", cmd_translate, "digraph interpretation of a formula").add_argument("formula")

    sp = verb("interp-eval", cmd_interp_eval, "evaluate a translated formula over encoded sets")
    sp.add_argument("formula")
    sp.add_argument("--arg", action="append", default=[], help="value for V0, V1, ... (set or digraph)")
    sp.add_argument("--param", action="append", default=[], help="value for #0, #1, ...")
    sp.add_argument("--rank-bound", type=int, default=3)

    sp = verb("def", cmd_def, "definable subsets of a structure")
    sp.add_argument("structure")
    sp.add_argument("--budget", type=int, help="enumerate formulas up to this many symbols")
    sp.add_argument("--certificates", action="store_true")
    sp.add_argument("--list", action="store_true")

    sp = verb("level", cmd_level, "constructible or cumulative level n")
    sp.add_argument("n", type=int)
    sp.add_argument("--kind", choices=["L", "V"], default="L")
    sp.add_argument("--count", action="store_true")
    sp.add_argument("--list", action="store_true", help=f"list members (n <= {LIST_LIMIT})")

    sp = verb("ord", cmd_ord, "Cantor normal form arithmetic")
    sp.add_argument("left")
    sp.add_argument("op", nargs="?", help="+, *, ^ or cmp")
    sp.add_argument("right", nargs="?")

    sp = verb("collapse-order", cmd_collapse_order, "order type of a finite linear order")
    sp.add_argument("digraph")
    sp.add_argument("--carrier", help="comma-separated nodes, for orders with isolated points")
    return p


def _plain(out: dict) -> str:
    lines = []
    for k, v in out.items():
        if isinstance(v, list):
            v = " ".join(json.dumps(x, ensure_ascii=False) if not isinstance(x, str) else x for x in v)
        elif isinstance(v, bool) or v is None:
            v = json.dumps(v)
        lines.append(f"{k}: {v}")
    return "\n".join(lines) + "\n"


def _emit(obj: dict, plain: str | None, as_plain: bool, stream) -> None:
    if as_plain:
        stream.write(plain if plain is not None else _plain(obj))
    else:
        stream.write(json.dumps(obj, ensure_ascii=False, default=str) + "\n")


def run(argv: list[str], stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        stderr.write(f"{exc}\n")
        return EXIT_USAGE
    if args.batch is not None:
        if args.verb is not None:
            stderr.write("wfesets: --batch takes no verb\n")
            return EXIT_USAGE
        return run_batch(args.batch, args.plain, stdout, stderr)
    if args.verb is None:
        stderr.write(parser.format_usage())
        return EXIT_USAGE
    try:
        obj, plain = args.fn(args)
    except UsageError as exc:
        stderr.write(f"wfesets {args.verb}: {exc}\n")
        return EXIT_USAGE
    except WfesetsError as exc:
        err = {"error": exc.code, "message": str(exc)}
        if exc.witness is not None:
            err["witness"] = exc.witness
        _emit(err, f"error {exc.code}: {exc}\n", args.plain, stdout)
        return EXIT_DOMAIN
    except (ValueError, OSError) as exc:
        err = {"error": "INVALID_INPUT", "message": str(exc)}
        _emit(err, f"error INVALID_INPUT: {exc}\n", args.plain, stdout)
        return EXIT_DOMAIN
    _emit(obj, plain, args.plain, stdout)
    return EXIT_OK


def run_batch(path: str, plain: bool, stdout, stderr) -> int:
    """Run each non-blank, non-comment line as a command; the exit status is the worst seen."""
    if path == "-":
        lines = sys.stdin.read().splitlines()
    else:
        with open(path, encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    worst = EXIT_OK
    for line in lines:
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        argv = shlex.split(line)
        if plain and "--plain" not in argv:
            argv.append("--plain")
        worst = max(worst, run(argv, stdout, stderr))
    return worst


def main(argv: list[str] | None = None) -> int:
    return run(sys.argv[1:] if argv is None else argv)


if __name__ == "__main__":
    sys.exit(main())
