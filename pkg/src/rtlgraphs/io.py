"""JSON formats for alphabets, automata, languages, systems and bundles.

Every ``*_to_json`` has a ``*_from_json`` inverse; the CLI reads and writes
only these.  A presentation bundle is a directory holding ``manifest.json``
and one automaton file per label.
"""

from __future__ import annotations

import json
import os

from .automata import PAD, Dfa, Domain
from .errors import ParseError
from .gtrs import Gtrs
from .minsky import MinskyMachine
from .rtl import AutomaticPresentation, RtlSystem
from .syncrel import SyncRelation
from .tracelang import LevelRegLang, RecTraceLang
from .traces import DependenceAlphabet, Trace, parse_steps
from .unfolding import ConcurrentAutomaton

BUNDLE_FORMAT = "rtlgraphs-bundle/1"


def load_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON ({exc})") from exc


def dump_json(data, path):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(data, fh, indent=1, ensure_ascii=False)
        fh.write("\n")


# -- alphabets -----------------------------------------------------------------

def alphabet_from_json(data):
    """``{"letters": [...], "independent": [[a, b], ...]}``; "dependent" may replace "independent"."""
    if not isinstance(data, dict) or "letters" not in data:
        raise ParseError("alphabet JSON needs a 'letters' list")
    if "dependent" in data:
        if "independent" in data:
            raise ParseError("give either 'independent' or 'dependent', not both")
        return DependenceAlphabet.from_dependence(data["letters"], [tuple(p) for p in data["dependent"]])
    return DependenceAlphabet.from_json(data)


def alphabet_to_json(alpha):
    return alpha.to_json()


# -- automata ------------------------------------------------------------------

def _sym_to_json(alpha, sym):
    if isinstance(sym, str):
        return sym
    if isinstance(sym, frozenset):
        return alpha.sorted_letters(sym)
    return [x if x == PAD else alpha.sorted_letters(x) for x in sym]


def _sym_from_json(domain, data):
    if domain.kind == "letters":
        sym = data
    elif domain.kind in ("steps", "steps-nonempty"):
        sym = frozenset(data)
    elif domain.kind == "tracks":
        sym = tuple(PAD if x == PAD else frozenset(x) for x in data)
    else:
        raise ParseError("explicit-domain automata are not serializable")
    if not domain.contains(sym):
        raise ParseError(f"symbol {data!r} is not in the {domain.kind} domain")
    return sym


def dfa_to_json(dfa):
    dom = dfa.domain
    alpha = dom.alphabet
    trans = []
    for p, row in enumerate(dfa.delta):
        for sym in sorted(row, key=lambda s: dom.symbols.index(s)):
            trans.append([p, _sym_to_json(alpha, sym), row[sym]])
    out = {"domain": dom.kind}
    if dom.kind == "tracks":
        out["tracks"] = dom.tracks
    out.update({"states": dfa.num_states, "initial": dfa.initial, "finals": sorted(dfa.finals),
                "transitions": trans})
    return out


def dfa_from_json(data, alpha):
    try:
        kind = data["domain"]
        dom = Domain("tracks", alpha, int(data["tracks"])) if kind == "tracks" else Domain(kind, alpha)
        n = int(data["states"])
        rows = [{} for _ in range(n)]
        for p, sym, q in data["transitions"]:
            if not (0 <= p < n and 0 <= q < n):
                raise ParseError(f"transition {p}->{q} outside 0..{n - 1}")
            s = _sym_from_json(dom, sym)
            if s in rows[p] and rows[p][s] != q:
                raise ParseError(f"nondeterministic transition from state {p}")
            rows[p][s] = q
        finals = set(data.get("finals", []))
        init = int(data.get("initial", 0))
        if not finals <= set(range(n)) or not 0 <= init < n:
            raise ParseError("initial/final states outside the state range")
        return Dfa(dom, rows, init, finals)
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(f"bad automaton JSON: {exc}") from exc


# -- languages -------------------------------------------------------------------

def rec_from_json(data, alpha):
    """Recognizable language: automaton, finite linearization list, regex, "full" or "epsilon"."""
    kind = data.get("kind", "recognizable")
    if kind == "recognizable":
        return RecTraceLang(alpha, dfa_from_json(data["automaton"], alpha))
    if kind == "finite":
        return RecTraceLang.from_traces(alpha, [alpha.parse_word(w) for w in data["traces"]])
    if kind == "regex":
        return RecTraceLang.from_regex(alpha, data["regex"])
    if kind == "full":
        return RecTraceLang.full(alpha)
    if kind == "epsilon":
        return RecTraceLang.epsilon(alpha)
    if kind == "level-regular":
        raise ParseError("a level-regular language cannot stand where a recognizable one is required")
    raise ParseError(f"unknown language kind {kind!r}")


def context_from_json(data, alpha):
    kind = data.get("kind")
    if kind == "level-regular":
        if "automaton" in data:
            return LevelRegLang(alpha, dfa_from_json(data["automaton"], alpha))
        if "step-regex" in data:
            return LevelRegLang.from_step_regex(alpha, data["step-regex"])
        if "foata" in data:
            return LevelRegLang.from_traces(alpha, [Trace.from_steps(alpha, parse_steps(alpha, s))
                                                 for s in data["foata"]])
        raise ParseError("level-regular context needs 'automaton', 'step-regex' or 'foata'")
    return rec_from_json(data, alpha)


def rec_to_json(lang):
    return {"kind": "recognizable", "automaton": dfa_to_json(lang.dfa)}


def level_to_json(lang):
    return {"kind": "level-regular", "automaton": dfa_to_json(lang.dfa)}


def load_rec(path, alpha=None):
    """A recognizable language file; it may carry its own "alphabet"."""
    data = load_json(path)
    if "alphabet" in data:
        alpha = alphabet_from_json(data["alphabet"])
    if alpha is None:
        raise ParseError(f"{path}: no alphabet given")
    return rec_from_json(data, alpha)


def rec_file_to_json(lang):
    out = {"alphabet": alphabet_to_json(lang.alphabet)}
    out.update(rec_to_json(lang))
    return out


# -- RTL systems -----------------------------------------------------------------

def rtl_from_json(data):
    try:
        alpha = alphabet_from_json(data["alphabet"])
        sys = RtlSystem(alpha, labels=list(data.get("labels", [])))
        for i, r in enumerate(data["rules"]):
            try:
                sys.add(context_from_json(r["context"], alpha), rec_from_json(r["lhs"], alpha),
                        rec_from_json(r["rhs"], alpha), r["label"])
            except KeyError as exc:
                raise ParseError(f"rule {i}: missing field {exc}") from exc
        return sys
    except KeyError as exc:
        raise ParseError(f"bad RTL JSON: missing {exc}") from exc


def rtl_to_json(sys):
    return {
        "alphabet": alphabet_to_json(sys.alphabet),
        "labels": list(sys.labels),
        "rules": [{"label": r.label, "context": level_to_json(r.context),
                   "lhs": rec_to_json(r.lhs), "rhs": rec_to_json(r.rhs)} for r in sys.rules],
    }


# -- concurrent automata and GTRS ------------------------------------------------------

def concurrent_from_json(data):
    try:
        alpha = alphabet_from_json(data["alphabet"])
        return ConcurrentAutomaton(alpha, data["states"], data["initial"], data.get("finals", []),
                                   [tuple(t) for t in data.get("transitions", [])])
    except (KeyError, TypeError) as exc:
        raise ParseError(f"bad concurrent automaton JSON: {exc}") from exc


def concurrent_to_json(aut):
    return {
        "alphabet": alphabet_to_json(aut.alphabet),
        "states": list(aut.states),
        "initial": aut.initial,
        "finals": sorted(aut.finals, key=str),
        "transitions": [list(t) for t in aut.transitions],
    }


def gtrs_from_json(data):
    return Gtrs.from_json(data)


def gtrs_to_json(g):
    return g.to_json()


def load_minsky(path):
    with open(path, encoding="utf-8") as fh:
        return MinskyMachine.parse(fh.read())


# -- bundles -----------------------------------------------------------------------

def _label_file(i, label):
    safe = "".join(ch if ch.isalnum() else "_" for ch in label)
    return f"rel{i:02d}_{safe}.json"


def save_bundle(pres, path):
    """Write a presentation as a directory: manifest plus one relation file per label."""
    os.makedirs(path, exist_ok=True)
    files = {}
    for i, (label, rel) in enumerate(pres.relations.items()):
        name = _label_file(i, label)
        dump_json(dfa_to_json(rel.dfa), os.path.join(path, name))
        files[label] = name
    dump_json(dfa_to_json(pres.vertex_dfa), os.path.join(path, "vertex.json"))
    stats = {k: v for k, v in pres.stats.items() if isinstance(v, (int, float, str, dict, list))}
    dump_json({"format": BUNDLE_FORMAT, "alphabet": alphabet_to_json(pres.alphabet),
               "vertex": "vertex.json", "relations": files, "stats": stats},
              os.path.join(path, "manifest.json"))
    return path


def load_bundle(path):
    manifest_path = os.path.join(path, "manifest.json")
    if not os.path.isfile(manifest_path):
        raise ParseError(f"{path}: not a bundle (no manifest.json)")
    man = load_json(manifest_path)
    if man.get("format") != BUNDLE_FORMAT:
        raise ParseError(f"{path}: unsupported bundle format {man.get('format')!r}")
    alpha = alphabet_from_json(man["alphabet"])
    rels = {}
    for label, name in man["relations"].items():
        rels[label] = SyncRelation(alpha, dfa_from_json(load_json(os.path.join(path, name)), alpha))
    return AutomaticPresentation(alpha, rels, dict(man.get("stats", {})))
