"""Trace rewriting systems with level-regular contexts and their automatic presentations.

A rule ``U · (V -λ-> W)`` produces the edges ``[uv] -λ-> [uw]`` for
``[u] ∈ U``, ``[v] ∈ V``, ``[w] ∈ W``.  Compiling a system yields, for every
label, a synchronized automaton over pairs of Foata normal forms.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field

from . import _tracks
from .automata import PAD, Domain, build_nfa, word_key
from .errors import AlphabetError, BudgetExceeded, default_budget
from .fragment import GraphFragment
from .syncrel import SyncRelation, empty_relation, image
from .tracelang import LevelRegLang, RecTraceLang, foata_dfa, foata_encoding, step_saturate
from .traces import DependenceAlphabet, Step, Trace, concat, enumerate_traces

BOT = -1
_NONE = Step()


@dataclass(frozen=True)
class RtlRule:
    """``context · (lhs -label-> rhs)``.

    The context may be level-regular (or recognizable, converted to its Foata
    encoding); both sides must be recognizable.
    """

    context: LevelRegLang
    lhs: RecTraceLang
    rhs: RecTraceLang
    label: str

    def __post_init__(self):
        ctx = self.context
        if isinstance(ctx, RecTraceLang):
            object.__setattr__(self, "context", foata_encoding(ctx))
        elif not isinstance(ctx, LevelRegLang):
            raise TypeError("context must be a LevelRegLang or RecTraceLang")
        for side in (self.lhs, self.rhs):
            if not isinstance(side, RecTraceLang):
                raise TypeError("rule sides must be recognizable (RecTraceLang); "
                                "level-regular sides do not give automatic graphs in general")
        alphas = {self.context.alphabet, self.lhs.alphabet, self.rhs.alphabet}
        if len(alphas) != 1:
            raise AlphabetError("rule languages over different alphabets")

    @property
    def alphabet(self):
        return self.lhs.alphabet


@dataclass
class RtlSystem:
    alphabet: DependenceAlphabet
    rules: list = field(default_factory=list)
    labels: list = None

    def __post_init__(self):
        declared = list(self.labels) if self.labels is not None else []
        for r in self.rules:
            if r.alphabet != self.alphabet:
                raise AlphabetError("rule alphabet differs from the system alphabet")
            if r.label not in declared:
                declared.append(r.label)
        self.labels = declared

    def add(self, context, lhs, rhs, label):
        rule = RtlRule(context, lhs, rhs, label)
        if rule.alphabet != self.alphabet:
            raise AlphabetError("rule alphabet differs from the system alphabet")
        self.rules.append(rule)
        if label not in self.labels:
            self.labels.append(label)
        return rule


@dataclass
class AutomaticPresentation:
    """Foata vertex language plus one synchronized relation per label."""

    alphabet: DependenceAlphabet
    relations: dict
    stats: dict = field(default_factory=dict)

    @property
    def labels(self):
        return list(self.relations)

    @property
    def vertex_dfa(self):
        return foata_dfa(self.alphabet)

    def relation(self, label):
        return self.relations[label]


def merge_relation(context: LevelRegLang, lhs: RecTraceLang, rhs: RecTraceLang, budget=None):
    """Relation {⟨uv⟩ ⊗ ⟨uw⟩ | u ∈ context, v ∈ lhs, w ∈ rhs}.

    Three tracks run in parallel: the Foata word of u, and step encodings of
    v and w whose steps are merged into the steps of u.  A letter merged at
    level i must commute with every later step of u; the sets ``sb`` and
    ``sc`` hold the letters merged so far on each side to check this.
    """
    alpha = lhs.alphabet
    budget = default_budget() if budget is None else budget
    a1 = context.dfa
    a2 = step_saturate(lhs)
    a3 = step_saturate(rhs)
    f1, f2, f3 = a1.finals, a2.finals, a3.finals
    indep = alpha.sets_independent
    is_step = alpha.is_step
    tri = alpha.triangle

    def follows(prev, step):
        return prev is None or tri(prev, step)

    def succ(key):
        p, q, r, sb, sc, fl, fr = key
        if p != BOT:
            row2 = a2.delta[q]
            row3 = a3.delta[r]
            for a, p2 in a1.delta[p].items():
                if not (indep(a, sb) and indep(a, sc)):
                    continue
                lefts = [(a | b, b, q2) for b, q2 in row2.items()
                         if not (a & b) and is_step(a | b) and follows(fl, a | b)]
                if not lefts:
                    continue
                rights = [(a | c, c, r2) for c, r2 in row3.items()
                          if not (a & c) and is_step(a | c) and follows(fr, a | c)]
                for x, b, q2 in lefts:
                    for y, c, r2 in rights:
                        yield (x, y), (p2, q2, r2, sb | b, sc | c, x, y)
        if p == BOT or p in f1:
            lefts = [] if q == BOT else [(b, q2) for b, q2 in a2.delta[q].items() if b and follows(fl, b)]
            rights = [] if r == BOT else [(c, r2) for c, r2 in a3.delta[r].items() if c and follows(fr, c)]
            for b, q2 in lefts:
                for c, r2 in rights:
                    yield (b, c), (BOT, q2, r2, _NONE, _NONE, b, c)
            if q == BOT or q in f2:
                for c, r2 in rights:
                    yield (PAD, c), (BOT, BOT, r2, _NONE, _NONE, None, c)
            if r == BOT or r in f3:
                for b, q2 in lefts:
                    yield (b, PAD), (BOT, q2, BOT, _NONE, _NONE, b, None)

    def final(key):
        p, q, r = key[:3]
        return ((p == BOT or p in f1) and (q == BOT or q in f2) and (r == BOT or r in f3))

    init = (a1.initial, a2.initial, a3.initial, _NONE, _NONE, None, None)
    nfa = build_nfa(Domain.padded(alpha, 2), [init], succ, final, budget, "merge automaton")
    dfa = nfa.determinize(budget, "merge relation")
    return SyncRelation(alpha, dfa)


def compile_system(sys: RtlSystem, budget=None) -> AutomaticPresentation:
    """Automatic presentation of the rewriting graph: one relation per label."""
    rels = {}
    stats = {"rules": len(sys.rules), "relation_states": {}}
    for label in sys.labels:
        rel = empty_relation(sys.alphabet)
        for rule in sys.rules:
            if rule.label == label:
                rel = rel.union(merge_relation(rule.context, rule.lhs, rule.rhs, budget))
        rels[label] = rel
        stats["relation_states"][label] = rel.num_states
    return AutomaticPresentation(sys.alphabet, rels, stats)


compile = compile_system


def compiled_edges(pres: AutomaticPresentation, max_letters: int):
    """Edges of the presentation whose endpoints both have at most max_letters letters."""
    alpha = pres.alphabet
    out = set()
    for label, rel in pres.relations.items():
        for u, v in rel.pairs(max_letters):
            out.add((Trace(u, alpha), label, Trace(v, alpha)))
    return out


def brute_force_edges(sys: RtlSystem, max_letters: int, limit=12):
    """Edges [uv] -λ-> [uw] with both endpoints of at most max_letters letters.

    Works from the definition: enumerate contexts u, left sides v and right
    sides w by membership tests on all small traces.
    """
    if max_letters > limit:
        raise ValueError(f"bound {max_letters} exceeds the oracle limit {limit}")
    alpha = sys.alphabet
    by_len = defaultdict(list)
    for t in enumerate_traces(alpha, max_letters):
        by_len[len(t)].append(t)
    out = set()
    for rule in sys.rules:
        us = [(t, n) for n, ts in by_len.items() for t in ts if rule.context.contains(t)]
        vs = [(t, n) for n, ts in by_len.items() for t in ts if rule.lhs.contains(t)]
        ws = [(t, n) for n, ts in by_len.items() for t in ts if rule.rhs.contains(t)]
        for u, nu in us:
            room = max_letters - nu
            sources = [concat(u, v) for v, nv in vs if nv <= room]
            if not sources:
                continue
            targets = [concat(u, w) for w, nw in ws if nw <= room]
            for s in sources:
                for t in targets:
                    out.add((s, rule.label, t))
    return out


def successors(pres: AutomaticPresentation, t: Trace, label) -> LevelRegLang:
    """The regular set of λ-successors of t (empty for an unknown label)."""
    rel = pres.relations.get(label)
    if rel is None:
        return LevelRegLang.empty(pres.alphabet)
    return LevelRegLang(pres.alphabet, image(rel, t), check=False)


def _trace_key(t):
    return word_key(t.steps)


def bounded_bfs(pres: AutomaticPresentation, start: Trace, budget: int, labels=None,
                max_successors=1000):
    """Breadth-first exploration from ``start`` expanding at most ``budget`` vertices.

    Successor sets are enumerated in length-lexicographic order and cut at
    ``max_successors``; the fragment is marked truncated when anything was cut.
    """
    labels = list(pres.labels if labels is None else labels)
    frag_vertices = [start]
    depth = {start: 0}
    edges = set()
    queue = [start]
    expanded = set()
    cut = False
    head = 0
    while head < len(queue):
        if len(expanded) >= budget:
            cut = True
            break
        v = queue[head]
        head += 1
        expanded.add(v)
        found = []
        for lab in labels:
            succ = successors(pres, v, lab)
            words = []
            for w in succ.dfa.iter_words():
                if len(words) >= max_successors:
                    cut = True
                    break
                words.append(w)
            for w in words:
                t = Trace(w, pres.alphabet)
                edges.add((v, lab, t))
                found.append(t)
        for t in sorted(set(found), key=_trace_key):
            if t not in depth:
                depth[t] = depth[v] + 1
                frag_vertices.append(t)
                queue.append(t)
    frontier = {v for v in frag_vertices if v not in expanded}
    return GraphFragment(frag_vertices, edges, frontier, cut or bool(frontier), depth)


__all__ = [
    "RtlRule", "RtlSystem", "AutomaticPresentation", "merge_relation", "compile_system",
    "compiled_edges", "brute_force_edges", "successors", "bounded_bfs", "BudgetExceeded",
]
