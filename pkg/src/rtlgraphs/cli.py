"""Command-line interface.

Exit codes: 0 success, 1 parse error, 2 invariant violation or unsupported
query, 3 resource budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
import time

from . import io
from .errors import AlphabetError, BudgetExceeded, ParseError, RtlError, UnknownLabel
from .fologic import decide, free_vars, parse_formula, witness
from .fragment import GraphFragment
from .gtrs import BUILTINS as GTRS_BUILTINS
from .gtrs import decompose, explore, pos_str, size, term_str, tree_of
from .library import SYSTEMS, concurrent_builtin, regex_language
from .minsky import compile_minsky, run_minsky
from .rtl import brute_force_edges, compile_system, compiled_edges, successors
from .traces import Trace, foata_normalize, parse_steps, render_steps, trace_equiv
from .unfolding import EventStructure, unfold_rtl, unfold_rtl_rec

EXIT_PARSE, EXIT_INVARIANT, EXIT_BUDGET = 1, 2, 3


class CliError(Exception):
    def __init__(self, code, message):
        super().__init__(message)
        self.code = code


def emit(args, payload, text):
    if args.json:
        print(json.dumps(payload, indent=1, ensure_ascii=False, default=str))
    else:
        print(text)


def read_trace(alpha, text):
    """Foata notation ``{a,c}{b}`` or a plain linearization."""
    text = text.strip()
    if text.startswith("{"):
        return Trace.from_steps(alpha, parse_steps(alpha, text))
    return foata_normalize(alpha, alpha.parse_word(text))


def load_alphabet(path):
    data = io.load_json(path)
    return io.alphabet_from_json(data.get("alphabet", data) if "letters" not in data else data)


def load_rtl(arg):
    if not os.path.exists(arg) and arg in SYSTEMS:
        return SYSTEMS[arg]()
    return io.rtl_from_json(io.load_json(arg))


def load_concurrent(arg):
    if not os.path.exists(arg):
        return concurrent_builtin(arg)
    return io.concurrent_from_json(io.load_json(arg))


def load_gtrs(arg):
    if not os.path.exists(arg) and arg in GTRS_BUILTINS:
        return GTRS_BUILTINS[arg]()
    return io.gtrs_from_json(io.load_json(arg))


def load_machine(arg):
    from .library import MINSKY, minsky
    if not os.path.exists(arg) and arg in MINSKY:
        return minsky(arg)
    return io.load_minsky(arg)


def write_or_print(args, data, label):
    if getattr(args, "output", None):
        io.dump_json(data, args.output)
        emit(args, {"written": args.output}, f"wrote {label} to {args.output}")
    else:
        print(json.dumps(data, indent=1, ensure_ascii=False))


# -- commands ------------------------------------------------------------------

def cmd_foata(args):
    alpha = load_alphabet(args.alphabet)
    t = foata_normalize(alpha, alpha.parse_word(args.word))
    emit(args, {"foata": str(t), "steps": [alpha.sorted_letters(s) for s in t.steps]}, str(t))


def cmd_eq(args):
    alpha = load_alphabet(args.alphabet)
    u, v = alpha.parse_word(args.u), alpha.parse_word(args.v)
    same = trace_equiv(alpha, u, v)
    emit(args, {"equivalent": same, "u": str(foata_normalize(alpha, u)), "v": str(foata_normalize(alpha, v))},
         "equivalent" if same else "not equivalent")


def cmd_rtl_compile(args):
    sys_ = load_rtl(args.system)
    t0 = time.perf_counter()
    pres = compile_system(sys_, args.budget)
    pres.stats["seconds"] = round(time.perf_counter() - t0, 4)
    out = args.output or "presentation.bundle"
    io.save_bundle(pres, out)
    payload = {"bundle": out, "labels": pres.labels, "stats": pres.stats}
    text = f"wrote {out}"
    if args.stats:
        text += "\n" + "\n".join(f"  {lab}: {n} states" for lab, n in pres.stats["relation_states"].items())
    emit(args, payload, text)


def _edge_row(alpha, e):
    s, lab, t = e
    return [str(s), lab, str(t)]


def cmd_rtl_edges(args):
    sys_ = load_rtl(args.system)
    pres = compile_system(sys_, args.budget)
    edges = compiled_edges(pres, args.bound)
    key = lambda e: (len(e[0]), str(e[0]), e[1], len(e[2]), str(e[2]))
    rows = [_edge_row(sys_.alphabet, e) for e in sorted(edges, key=key)]
    payload = {"bound": args.bound, "edges": rows}
    lines = [f"{s} -{lab}-> {t}" for s, lab, t in rows]
    if args.oracle:
        oracle = brute_force_edges(sys_, args.bound)
        missing = sorted(oracle - edges, key=key)
        extra = sorted(edges - oracle, key=key)
        payload["oracle"] = {"missing": [_edge_row(None, e) for e in missing],
                             "extra": [_edge_row(None, e) for e in extra]}
        diff = len(missing) + len(extra)
        lines.append(f"OK: 0 differences" if diff == 0 else f"MISMATCH: {diff} differences")
        lines += [f"  missing {r}" for r in payload["oracle"]["missing"]]
        lines += [f"  extra   {r}" for r in payload["oracle"]["extra"]]
        emit(args, payload, "\n".join(lines))
        return 0 if diff == 0 else EXIT_INVARIANT
    emit(args, payload, "\n".join(lines))
    return 0


def cmd_rtl_successors(args):
    pres = io.load_bundle(args.bundle)
    alpha = pres.alphabet
    t = read_trace(alpha, args.trace)
    lang = successors(pres, t, args.label)
    samples = [render_steps(alpha, w) for w in lang.dfa.enumerate_words(args.samples)]
    payload = {"trace": str(t), "label": args.label, "finite": lang.dfa.is_finite(),
               "automaton": io.dfa_to_json(lang.dfa), "samples": samples}
    text = f"{len(samples)} sample(s){'' if lang.dfa.is_finite() else ' (infinite set)'}:\n" + "\n".join(
        f"  {s}" for s in samples)
    emit(args, payload, text)


def _formula_text(arg):
    if os.path.isfile(arg):
        with open(arg, encoding="utf-8") as fh:
            return fh.read()
    return arg


def cmd_fo_check(args):
    pres = io.load_bundle(args.bundle)
    f = parse_formula(_formula_text(args.formula))
    domain = "incident" if args.incident else None
    t0 = time.perf_counter()
    fv = free_vars(f)
    payload = {"formula": str(f)}
    if fv and not args.witness:
        raise CliError(EXIT_PARSE, f"formula has free variables {fv}; pass --witness to search for one")
    if args.witness:
        w = witness(f, pres, domain=domain, budget=args.budget)
        payload["satisfiable"] = w is not None
        payload["witness"] = None if w is None else {v: str(t) for v, t in w.items()}
        text = "false" if w is None else "true" + "".join(f"\n  {v} = {t}" for v, t in w.items())
    else:
        value = decide(f, pres, domain=domain, budget=args.budget)
        payload["value"] = value
        text = "true" if value else "false"
    payload["seconds"] = round(time.perf_counter() - t0, 4)
    emit(args, payload, text)


def cmd_unfold(args):
    aut = load_concurrent(args.automaton)
    report = aut.validate()
    if report:
        raise CliError(EXIT_INVARIANT, f"not a concurrent automaton: {report}")
    if args.rec:
        langs = [io.load_rec(p, aut.alphabet) for p in args.rec]
        sys_ = unfold_rtl_rec(aut, langs)
    else:
        sys_ = unfold_rtl(aut)
    write_or_print(args, io.rtl_to_json(sys_), "RTL system")


def cmd_es(args):
    if os.path.exists(args.language):
        rec = io.load_rec(args.language)
    else:
        rec = regex_language(args.language.split(":", 1)[-1])
    parts = args.query.split()
    if not parts:
        raise CliError(EXIT_PARSE, "empty query")
    kind, rest = parts[0], parts[1:]
    letter = None
    if kind.startswith("label"):
        kind, _, letter = kind.partition(":")
        kind = "label"
        if not letter:
            raise CliError(EXIT_PARSE, "label queries are written label:<letter> <t>")
    aliases = {"<=": "le", "≤": "le", "#": "conflict", "prime": "prime", "le": "le", "conflict": "conflict",
               "label": "label"}
    if kind not in aliases:
        raise CliError(EXIT_PARSE, f"unknown query kind {kind!r}")
    kind = aliases[kind]
    es = EventStructure(rec, budget=args.budget)
    traces = [read_trace(rec.alphabet, t) for t in rest]
    answer = es.query(kind, *traces, letter=letter)
    emit(args, {"kind": kind, "traces": [str(t) for t in traces], "letter": letter,
                "formula": str(es.formula(kind, letter)), "answer": answer},
         "true" if answer else "false")


def _term_name(t):
    return term_str(t)


def cmd_gtrs_explore(args):
    g = load_gtrs(args.gtrs)
    frag = explore(g, args.budget)
    if args.dot:
        with open(args.dot, "w", encoding="utf-8") as fh:
            fh.write(frag.to_dot(_term_name))
    data = frag.to_json(_term_name)
    if args.output:
        io.dump_json(data, args.output)
    text = (f"{len(frag.vertices)} terms, {len(frag.edges)} edges, {len(frag.frontier)} on the frontier"
            + (" (truncated)" if frag.truncated else ""))
    emit(args, data, text)


def cmd_gtrs_decompose(args):
    g = load_gtrs(args.gtrs)
    dec = decompose(g, args.n, args.budget)
    rows = []
    for c in dec.components:
        sizes = sorted({size(v) for v in c.frontier})
        rows.append({"vertices": len(c.vertices), "frontier": len(c.frontier), "frontier_sizes": sizes,
                     "signature": c.signature, "exact": c.exact, "truncated": c.truncated,
                     "smallest": term_str(c.vertices[0])})
    payload = {"n": dec.n, "delta": dec.delta, "removed_edges": len(dec.removed), "components": rows,
               "signature_counts": dec.signature_counts()}
    lines = [f"n={dec.n} delta={dec.delta}: {len(rows)} component(s), {len(dec.removed)} small edge(s) removed"]
    for r in rows:
        flag = " truncated" if r["truncated"] else ""
        lines.append(f"  {r['signature']}  |V|={r['vertices']} |Fr|={r['frontier']} "
                     f"sizes={r['frontier_sizes']} from {r['smallest']}{flag}")
    lines.append(f"complete signatures: {len(payload['signature_counts'])}")
    emit(args, payload, "\n".join(lines))


def cmd_gtrs_tree(args):
    frag = GraphFragment.from_json(io.load_json(args.graph))
    tree = tree_of(frag, args.root, args.depth)
    name = lambda v: "·".join(map(str, v))
    data = tree.to_json(name)
    if args.dot:
        with open(args.dot, "w", encoding="utf-8") as fh:
            fh.write(tree.to_dot(name))
    if args.output:
        io.dump_json(data, args.output)
    emit(args, data, f"{len(tree.vertices)} vertices, {len(tree.edges)} edges")


def cmd_minsky_compile(args):
    m = load_machine(args.machine)
    sys_, sentence = compile_minsky(m, literal=args.literal)
    if args.bundle:
        io.save_bundle(compile_system(sys_, args.budget), args.bundle)
    data = io.rtl_to_json(sys_)
    data["halting_sentence"] = str(sentence)
    write_or_print(args, data, "RTL system")


def cmd_minsky_run(args):
    m = load_machine(args.machine)
    v = run_minsky(m, args.budget, literal=args.literal)
    emit(args, {"halts": v.halts, "depth": v.depth, "explored": v.explored, "exhausted": v.exhausted,
                "verdict": str(v)}, str(v))


def cmd_export_dot(args):
    path = args.source
    if os.path.isdir(path):
        pres = io.load_bundle(path)
        edges = compiled_edges(pres, args.bound)
        verts = sorted({v for s, _, t in edges for v in (s, t)}, key=lambda t: (len(t), str(t)))
        frag = GraphFragment(verts, edges, set(), True)
        sys.stdout.write(frag.to_dot(str, highlight=()))
    else:
        frag = GraphFragment.from_json(io.load_json(path))
        sys.stdout.write(frag.to_dot(str))


def cmd_selftest(args):
    from .randomgen import random_system
    rng = random.Random(args.seed)
    failures = []
    for i in range(args.count):
        s = random_system(rng)
        got = compiled_edges(compile_system(s, args.budget), args.bound)
        want = brute_force_edges(s, args.bound)
        if got != want:
            failures.append(i)
    emit(args, {"seed": args.seed, "systems": args.count, "failures": failures},
         f"{args.count - len(failures)}/{args.count} random systems agree with the oracle")
    return EXIT_INVARIANT if failures else 0


# -- parser ----------------------------------------------------------------------

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--budget", type=int, default=None,
                        help="state/exploration budget (default from RTLGRAPHS_STATE_BUDGET)")

    p = argparse.ArgumentParser(prog="rtlgraphs", description="Trace rewriting graphs: compile, query, explore.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(parent, name, fn, help_):
        sp = parent.add_parser(name, help=help_, parents=[common])
        sp.set_defaults(func=fn)
        return sp

    sp = add(sub, "foata", cmd_foata, "Foata normal form of a word")
    sp.add_argument("alphabet")
    sp.add_argument("word")

    sp = add(sub, "eq", cmd_eq, "trace equivalence of two words")
    sp.add_argument("alphabet")
    sp.add_argument("u")
    sp.add_argument("v")

    rtl = sub.add_parser("rtl", help="RTL systems").add_subparsers(dest="rtl_command", required=True)
    sp = add(rtl, "compile", cmd_rtl_compile, "compile to a presentation bundle")
    sp.add_argument("system")
    sp.add_argument("-o", "--output")
    sp.add_argument("--stats", action="store_true")
    sp = add(rtl, "edges", cmd_rtl_edges, "list edges between small traces")
    sp.add_argument("system")
    sp.add_argument("--bound", type=int, required=True)
    sp.add_argument("--oracle", action="store_true")
    sp = add(rtl, "successors", cmd_rtl_successors, "successor set of a trace")
    sp.add_argument("bundle")
    sp.add_argument("trace")
    sp.add_argument("label")
    sp.add_argument("--samples", type=int, default=6, help="letter bound for listed samples")

    fo = sub.add_parser("fo", help="first-order model checking").add_subparsers(dest="fo_command", required=True)
    sp = add(fo, "check", cmd_fo_check, "decide a sentence on a bundle")
    sp.add_argument("bundle")
    sp.add_argument("formula", help="formula text or a file holding it")
    sp.add_argument("--witness", action="store_true")
    sp.add_argument("--incident", action="store_true", help="quantify over edge-incident vertices only")

    sp = add(sub, "unfold", cmd_unfold, "RTL system of a concurrent automaton's unfolding")
    sp.add_argument("automaton", help="JSON file or grid | grid-tree | residual:<regex>")
    sp.add_argument("--rec", nargs="*", default=[])
    sp.add_argument("-o", "--output")

    sp = add(sub, "es", cmd_es, "event-structure query")
    sp.add_argument("language", help="recognizable language JSON or residual:<regex>")
    sp.add_argument("--query", required=True, help='"prime t", "le t1 t2", "conflict t1 t2", "label:a t"')

    gt = sub.add_parser("gtrs", help="ground term rewriting").add_subparsers(dest="gtrs_command", required=True)
    sp = add(gt, "explore", cmd_gtrs_explore, "breadth-first configuration graph fragment")
    sp.add_argument("gtrs")
    sp.add_argument("--dot")
    sp.add_argument("-o", "--output")
    sp = add(gt, "decompose", cmd_gtrs_decompose, "components after removing small-term edges")
    sp.add_argument("gtrs")
    sp.add_argument("--n", type=int, required=True)
    sp = add(gt, "tree", cmd_gtrs_tree, "graph tree of a fragment")
    sp.add_argument("graph")
    sp.add_argument("--root", required=True)
    sp.add_argument("--depth", type=int, default=1)
    sp.add_argument("--dot")
    sp.add_argument("-o", "--output")

    mk = sub.add_parser("minsky", help="two-counter machines").add_subparsers(dest="minsky_command", required=True)
    sp = add(mk, "compile", cmd_minsky_compile, "RTL encoding")
    sp.add_argument("machine")
    sp.add_argument("-o", "--output")
    sp.add_argument("--bundle", help="also write the compiled presentation here")
    sp.add_argument("--literal", action="store_true", help="only a I b and A I B")
    sp = add(mk, "run", cmd_minsky_run, "bounded halting search")
    sp.add_argument("machine")
    sp.add_argument("--literal", action="store_true")

    ex = sub.add_parser("export", help="exports").add_subparsers(dest="export_command", required=True)
    sp = add(ex, "dot", cmd_export_dot, "DOT text of a bundle (small traces) or fragment")
    sp.add_argument("source")
    sp.add_argument("--bound", type=int, default=3)

    sp = add(sub, "selftest", cmd_selftest, "random oracle comparison")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--count", type=int, default=10)
    sp.add_argument("--bound", type=int, default=5)
    return p


_EXPLORATION = {"gtrs_explore": 2000, "gtrs_decompose": 2000, "minsky_run": 10_000}


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    fn = args.func
    name = fn.__name__[4:]
    if args.budget is None and name in _EXPLORATION:
        args.budget = _EXPLORATION[name]
    try:
        return fn(args) or 0
    except CliError as exc:
        _fail(args, exc.code, type(exc).__name__, str(exc))
        return exc.code
    except BudgetExceeded as exc:
        _fail(args, EXIT_BUDGET, type(exc).__name__, str(exc))
        return EXIT_BUDGET
    except (ParseError, AlphabetError, FileNotFoundError, json.JSONDecodeError) as exc:
        _fail(args, EXIT_PARSE, type(exc).__name__, str(exc))
        return EXIT_PARSE
    except (RtlError, UnknownLabel) as exc:
        msg = exc.args[0] if exc.args else str(exc)
        _fail(args, EXIT_INVARIANT, type(exc).__name__, msg)
        return EXIT_INVARIANT


def _fail(args, code, kind, message):
    if getattr(args, "json", False):
        print(json.dumps({"error": kind, "message": message, "exit_code": code}))
    else:
        print(f"error ({kind}): {message}", file=sys.stderr)


if __name__ == "__main__":
    sys.exit(main())
