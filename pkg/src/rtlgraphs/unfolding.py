"""Concurrent automata, their trace unfoldings as RTL systems, and event structures."""

from __future__ import annotations

from dataclasses import dataclass, field

from .automata import Dfa, Domain
from .errors import InvariantViolation
from .fologic import Edge, Eq, Not, compile_formula, conj, decide, disj, exists
from .rtl import RtlSystem, compile_system
from .tracelang import (RecTraceLang, foata_encoding, is_trace_closed, residual_states)
from .traces import DependenceAlphabet, Trace


@dataclass
class ConcurrentAutomaton:
    """Finite Σ-automaton that should be deterministic and closed under independent diamonds.

    Construction does not validate; call `validate` for a report.
    """

    alphabet: DependenceAlphabet
    states: list
    initial: object
    finals: set = field(default_factory=set)
    transitions: list = field(default_factory=list)

    def __post_init__(self):
        self.states = list(self.states)
        self.finals = set(self.finals)
        self.transitions = [tuple(t) for t in self.transitions]
        known = set(self.states)
        if self.initial not in known or not self.finals <= known:
            raise InvariantViolation("initial/final states must be declared states")
        for p, a, q in self.transitions:
            if p not in known or q not in known:
                raise InvariantViolation(f"transition {p}-{a}->{q} uses an undeclared state")
            self.alphabet.check_word([a])

    def step(self, p, a):
        for s, b, t in self.transitions:
            if s == p and b == a:
                return t
        return None

    def delta(self):
        out = {}
        for p, a, q in self.transitions:
            out.setdefault((p, a), q)
        return out

    def validate(self):
        """List of violations: ("determinism", p, a) and ("diamond", p, a, b)."""
        report = []
        seen = {}
        for p, a, q in self.transitions:
            if (p, a) in seen and seen[(p, a)] != q:
                report.append(("determinism", p, a))
            seen.setdefault((p, a), q)
        d = self.delta()
        for p in self.states:
            for pair in sorted(self.alphabet.independent, key=sorted):
                a, b = sorted(pair)
                for x, y in ((a, b), (b, a)):
                    mid = d.get((p, x))
                    end = d.get((mid, y)) if mid is not None else None
                    if end is None:
                        continue
                    mid2 = d.get((p, y))
                    end2 = d.get((mid2, x)) if mid2 is not None else None
                    if end2 != end:
                        report.append(("diamond", p, x, y))
        return report

    def check(self):
        report = self.validate()
        if report:
            raise InvariantViolation(f"not a concurrent automaton: {report}")

    def reachable(self):
        d = self.delta()
        seen = [self.initial]
        for p in seen:
            for a in self.alphabet.letters:
                q = d.get((p, a))
                if q is not None and q not in seen:
                    seen.append(q)
        return seen

    def run(self, word):
        d = self.delta()
        p = self.initial
        for a in word:
            p = d.get((p, a))
            if p is None:
                return None
        return p


def state_language(aut: ConcurrentAutomaton, source, targets) -> RecTraceLang:
    """Trace language of the words labelling paths from source into targets."""
    aut.check()
    index = {s: i for i, s in enumerate(aut.states)}
    rows = [{} for _ in aut.states]
    for p, a, q in aut.transitions:
        rows[index[p]][a] = index[q]
    dfa = Dfa(Domain.letters(aut.alphabet), rows, index[source], {index[t] for t in targets})
    if not is_trace_closed(aut.alphabet, dfa):
        raise InvariantViolation("internal: path language of a concurrent automaton is not trace-closed")
    return RecTraceLang(aut.alphabet, dfa, check=False)


def residual_concurrent_automaton(rec: RecTraceLang) -> ConcurrentAutomaton:
    """States are the residuals of the language (the empty one as a sink)."""
    alpha = rec.alphabet
    order = residual_states(rec)
    name = {q: i for i, q in enumerate(order)}
    trans = []
    for q in order:
        for a in alpha.letters:
            t = None if q is None else rec.dfa.delta[q].get(a)
            trans.append((name[q], a, name[t]))
    finals = {name[q] for q in order if q is not None and q in rec.dfa.finals}
    return ConcurrentAutomaton(alpha, list(range(len(order))), 0, finals, trans)


def grid_automaton(with_c=False, finals=False):
    """One state with a, b (and c) loops, a and b independent."""
    letters = ("a", "b", "c") if with_c else ("a", "b")
    alpha = DependenceAlphabet(letters, frozenset({frozenset("ab")}))
    return ConcurrentAutomaton(alpha, ["p"], "p", {"p"} if finals else set(),
                               [("p", a, "p") for a in letters])


def unfold_rtl(aut: ConcurrentAutomaton, final_label="f", reach_label="*") -> RtlSystem:
    """RTL system whose rewriting graph is the unfolding plus its reachability edges."""
    aut.check()
    alpha = aut.alphabet
    if final_label in alpha.letters or reach_label in alpha.letters:
        raise InvariantViolation("edge labels collide with letters")
    eps = RecTraceLang.epsilon(alpha)
    sys = RtlSystem(alpha, labels=list(alpha.letters) + [final_label, reach_label])
    d = aut.delta()
    for a in alpha.letters:
        qa = {p for p in aut.states if (p, a) in d}
        ctx = foata_encoding(state_language(aut, aut.initial, qa))
        sys.add(ctx, eps, RecTraceLang.from_traces(alpha, [(a,)]), a)
    sys.add(foata_encoding(state_language(aut, aut.initial, aut.finals)), eps, eps, final_label)
    everything = set(aut.states)
    for q in aut.states:
        ctx = foata_encoding(state_language(aut, aut.initial, {q}))
        sys.add(ctx, eps, state_language(aut, q, everything), reach_label)
    return sys


def unfold_rtl_rec(aut: ConcurrentAutomaton, langs, names=None, final_label="f") -> RtlSystem:
    """As `unfold_rtl`, adding one edge family per recognizable path language."""
    sys = unfold_rtl(aut, final_label)
    names = list(names) if names is not None else [f"L{j + 1}" for j in range(len(langs))]
    everything = set(aut.states)
    for name, lang in zip(names, langs):
        sys.labels.append(name)
        for q in aut.states:
            ctx = foata_encoding(state_language(aut, aut.initial, {q}))
            sys.add(ctx, RecTraceLang.epsilon(aut.alphabet),
                    state_language(aut, q, everything).intersect(lang), name)
    return sys


# -- event structures --------------------------------------------------------

def _pred(alpha, y, x):
    return disj(*[Edge(a, y, x) for a in alpha.letters])


def prime_formula(alpha, x="x"):
    """x has exactly one immediate predecessor in the unfolding."""
    return conj(
        exists(["p1"], _pred(alpha, "p1", x)),
        Not(exists(["p1", "p2"], conj(Not(Eq("p1", "p2")), _pred(alpha, "p1", x), _pred(alpha, "p2", x)))),
    )


def es_formula(alpha, kind, x="x", y="y", letter=None):
    """FO definition of an event-structure relation over the unfolding with reachability."""
    if kind == "prime":
        return prime_formula(alpha, x)
    if kind == "le":
        return conj(prime_formula(alpha, x), prime_formula(alpha, y), Edge("*", x, y))
    if kind == "conflict":
        return conj(prime_formula(alpha, x), prime_formula(alpha, y),
                    Not(exists(["z"], conj(prime_formula(alpha, "z"), Edge("*", x, "z"), Edge("*", y, "z")))))
    if kind == "label":
        if letter is None:
            raise ValueError("label queries need a letter")
        return conj(prime_formula(alpha, x), exists(["p1"], Edge(letter, "p1", x)))
    raise ValueError(f"unknown event-structure relation {kind!r}")


class EventStructure:
    """Event structure of a recognizable language, read off the unfolding of its residual automaton.

    The vertex domain is every vertex of that unfolding; with the empty
    residual kept as a sink state this is every trace, so primes outside the
    prefix closure of the language appear too.  Pass ``trim=True`` to drop
    the sink and keep only prefixes of the language.
    """

    def __init__(self, rec: RecTraceLang, trim=False, budget=None):
        self.alphabet = rec.alphabet
        aut = residual_concurrent_automaton(rec)
        order = residual_states(rec)
        if trim and not rec.is_empty() and None in order:
            dead = order.index(None)
            aut = ConcurrentAutomaton(
                aut.alphabet, [s for s in aut.states if s != dead], aut.initial, aut.finals,
                [t for t in aut.transitions if dead not in (t[0], t[2])])
        self.automaton = aut
        self.system = unfold_rtl(aut)
        self.presentation = compile_system(self.system, budget)
        self.budget = budget
        self._compiled = {}

    def formula(self, kind, letter=None):
        return es_formula(self.alphabet, kind, letter=letter)

    def relation(self, kind, letter=None):
        """Compiled automaton of the relation, tracks (x) or (x, y)."""
        key = (kind, letter)
        if key not in self._compiled:
            order = ["x"] if kind in ("prime", "label") else ["x", "y"]
            self._compiled[key] = compile_formula(self.formula(kind, letter), self.presentation,
                                                  order, budget=self.budget)
        return self._compiled[key]

    def query(self, kind, *traces, letter=None):
        """Truth of the relation on concrete traces."""
        aut = self.relation(kind, letter)
        if len(traces) != len(aut.variables):
            raise ValueError(f"{kind} takes {len(aut.variables)} trace(s)")
        assignment = {n: t if isinstance(t, Trace) else Trace.of(self.alphabet, t)
                      for n, t in zip(aut.variables, traces)}
        return aut.accepts(assignment)

    def decide(self, sentence):
        return decide(sentence, self.presentation, budget=self.budget)


def es_query(rec: RecTraceLang, kind, *traces, letter=None, trim=False):
    """Build the event structure and answer one query; returns (formula, answer)."""
    es = EventStructure(rec, trim=trim)
    return es.formula(kind, letter), es.query(kind, *traces, letter=letter)
