"""Recognizable and level-regular trace languages.

A recognizable language is kept as a trace-closed DFA over letters (the set
of all linearizations of its traces).  A level-regular language is kept as a
DFA over nonempty steps accepting only Foata normal forms.
"""

from __future__ import annotations

from collections import deque
from functools import lru_cache

from .automata import Dfa, Domain, build_dfa, regex_dfa, retag, symbol_key
from .errors import AlphabetError, InvariantViolation
from .traces import DependenceAlphabet, Step, Trace, _remove_minimal, foata_normalize


@lru_cache(maxsize=64)
def foata_automaton(alpha: DependenceAlphabet) -> Dfa:
    """The level automaton: states ⊥ and every step, A → B when A ▷ B, all final."""
    steps = alpha.steps

    def succ(key):
        for b in steps:
            if key is None or alpha.triangle(key, b):
                yield b, b

    return build_dfa(Domain.steps(alpha, empty=False), None, succ, lambda k: True,
                     what="level automaton")


@lru_cache(maxsize=64)
def foata_dfa(alpha):
    """Minimal form of the level automaton."""
    return foata_automaton(alpha).minimize()


def is_trace_closed(alpha, dfa):
    """Diamond test on the minimal DFA: δ(q,ab) = δ(q,ba) for every independent a, b."""
    m = dfa.minimize()
    pairs = [tuple(p) for p in alpha.independent]
    for q in m.reachable():
        for a, b in pairs:
            if m.run((a, b), q) != m.run((b, a), q):
                return False
    return True


def _closure_of_traces(alpha, traces):
    """Trace-closed DFA accepting every linearization of the given traces."""
    start = frozenset(tuple(t.word()) for t in traces)

    def succ(key):
        for a in alpha.letters:
            nxt = set()
            for w in key:
                r = _remove_minimal(alpha, list(w), a)
                if r is not None:
                    nxt.add(tuple(foata_normalize(alpha, r).word()))
            if nxt:
                yield a, frozenset(nxt)

    return build_dfa(Domain.letters(alpha), start, succ, lambda k: () in k,
                     what="finite trace language").minimize()


class RecTraceLang:
    """A recognizable trace language, represented by a trace-closed word DFA."""

    def __init__(self, alpha: DependenceAlphabet, dfa: Dfa, check=True):
        if dfa.domain != Domain.letters(alpha):
            raise AlphabetError("recognizable languages need a DFA over the letters of the alphabet")
        self.alphabet = alpha
        self.dfa = dfa.minimize()
        if check and not is_trace_closed(alpha, self.dfa):
            raise InvariantViolation("automaton language is not trace-closed")

    # constructors
    @classmethod
    def from_regex(cls, alpha, text):
        """Language of a letter regex; the regex language must already be trace-closed."""
        return cls(alpha, regex_dfa(alpha, text))

    @classmethod
    def from_traces(cls, alpha, traces):
        traces = [t if isinstance(t, Trace) else Trace.of(alpha, t) for t in traces]
        return cls(alpha, _closure_of_traces(alpha, traces), check=False)

    @classmethod
    def full(cls, alpha):
        return cls(alpha, Dfa.universal(Domain.letters(alpha)), check=False)

    @classmethod
    def empty(cls, alpha):
        return cls(alpha, Dfa.empty(Domain.letters(alpha)), check=False)

    @classmethod
    def epsilon(cls, alpha):
        return cls(alpha, Dfa.epsilon(Domain.letters(alpha)), check=False)

    def contains(self, t):
        if not isinstance(t, Trace):
            t = Trace.of(self.alphabet, t)
        return self.dfa.accepts(t.word())

    __contains__ = contains

    def _same(self, other):
        if self.alphabet != other.alphabet:
            raise AlphabetError("languages over different alphabets")

    def union(self, other):
        self._same(other)
        return RecTraceLang(self.alphabet, self.dfa.union(other.dfa), check=False)

    def intersect(self, other):
        self._same(other)
        return RecTraceLang(self.alphabet, self.dfa.intersect(other.dfa), check=False)

    def complement(self):
        return RecTraceLang(self.alphabet, self.dfa.complement(), check=False)

    def is_empty(self):
        return self.dfa.is_empty()

    def __eq__(self, other):
        return (isinstance(other, RecTraceLang) and self.alphabet == other.alphabet
                and self.dfa == other.dfa)

    def __hash__(self):
        return hash(self.dfa)

    def __repr__(self):
        return f"RecTraceLang({self.dfa!r})"


class LevelRegLang:
    """A level-regular trace language: a DFA over nonempty steps inside Foata."""

    def __init__(self, alpha: DependenceAlphabet, dfa: Dfa, check=True):
        domain = Domain.steps(alpha, empty=False)
        if dfa.domain != domain:
            dfa = retag(dfa, domain)
        self.alphabet = alpha
        self.dfa = dfa.minimize()
        if check and not self.dfa.issubset(foata_dfa(alpha)):
            raise InvariantViolation("level-regular automaton accepts a non-Foata word")

    @classmethod
    def foata(cls, alpha):
        return cls(alpha, foata_dfa(alpha), check=False)

    @classmethod
    def empty(cls, alpha):
        return cls(alpha, Dfa.empty(Domain.steps(alpha, empty=False)), check=False)

    @classmethod
    def from_step_regex(cls, alpha, text):
        """Regex whose atoms are steps such as ``{a,b}``; intersected with Foata."""
        dfa = regex_dfa(alpha, text, steps=True)
        if Step() in dfa.symbols_used():
            raise InvariantViolation("the empty step cannot occur in a Foata word")
        return cls(alpha, retag(dfa, Domain.steps(alpha, empty=False)).intersect(foata_dfa(alpha)),
                   check=False)

    @classmethod
    def from_traces(cls, alpha, traces):
        traces = [t if isinstance(t, Trace) else Trace.of(alpha, t) for t in traces]
        return cls(alpha, Dfa.from_words(Domain.steps(alpha, empty=False), [t.steps for t in traces]),
                   check=False)

    def contains(self, t):
        if not isinstance(t, Trace):
            t = Trace.of(self.alphabet, t)
        return self.dfa.accepts(t.steps)

    __contains__ = contains

    def _same(self, other):
        if self.alphabet != other.alphabet:
            raise AlphabetError("languages over different alphabets")

    def union(self, other):
        self._same(other)
        return LevelRegLang(self.alphabet, self.dfa.union(other.dfa), check=False)

    def intersect(self, other):
        self._same(other)
        return LevelRegLang(self.alphabet, self.dfa.intersect(other.dfa), check=False)

    def complement_in_foata(self):
        return LevelRegLang(self.alphabet, foata_dfa(self.alphabet).difference(self.dfa), check=False)

    def is_empty(self):
        return self.dfa.is_empty()

    def traces(self, max_steps):
        return [Trace(w, self.alphabet) for w in self.dfa.iter_words(max_steps)]

    def __eq__(self, other):
        return (isinstance(other, LevelRegLang) and self.alphabet == other.alphabet
                and self.dfa == other.dfa)

    def __hash__(self):
        return hash(self.dfa)

    def __repr__(self):
        return f"LevelRegLang({self.dfa!r})"


def step_saturate(rec: RecTraceLang) -> Dfa:
    """DFA over all steps (∅ included) recognizing every step encoding of the language.

    A step moves the DFA as any linearization of it does; the diamond makes
    the choice irrelevant and two orders are compared to make sure.
    """
    alpha = rec.alphabet
    dfa = rec.dfa
    delta = []
    for q in range(dfa.num_states):
        row = {Step(): q}
        for step in alpha.steps:
            order = alpha.sorted_letters(step)
            t1 = dfa.run(order, q)
            if len(order) > 1 and dfa.run(order[::-1], q) != t1:
                raise InvariantViolation("step evaluation depends on the letter order")
            if t1 is not None:
                row[step] = t1
        delta.append(row)
    return Dfa(Domain.steps(alpha, empty=True), delta, dfa.initial, dfa.finals)


def foata_encoding(rec: RecTraceLang) -> LevelRegLang:
    """The Foata normal forms of a recognizable language."""
    sat = step_saturate(rec)
    nonempty = Dfa(Domain.steps(rec.alphabet, empty=False),
                   [{s: t for s, t in row.items() if s} for row in sat.delta],
                   sat.initial, sat.finals)
    return LevelRegLang(rec.alphabet, nonempty.intersect(foata_dfa(rec.alphabet)), check=False)


def residual(rec: RecTraceLang, t: Trace) -> RecTraceLang:
    """t⁻¹L = {s | t·s ∈ L}."""
    q = rec.dfa.run(t.word())
    if q is None:
        return RecTraceLang.empty(rec.alphabet)
    return RecTraceLang(rec.alphabet, rec.dfa.with_initial(q), check=False)


def residual_states(rec: RecTraceLang):
    """Reachable states of the minimal DFA in BFS order, plus None for the empty residual."""
    dfa = rec.dfa
    order = [dfa.initial]
    seen = {dfa.initial}
    queue = deque(order)
    has_dead = dfa.is_empty()
    while queue:
        q = queue.popleft()
        for a in rec.alphabet.letters:
            t = dfa.delta[q].get(a)
            if t is None:
                has_dead = True
            elif t not in seen:
                seen.add(t)
                order.append(t)
                queue.append(t)
    if dfa.is_empty():
        return [None]
    return order + ([None] if has_dead else [])


def residual_set(rec: RecTraceLang):
    """All distinct residuals; finite because the language is recognizable."""
    out = []
    for q in residual_states(rec):
        if q is None:
            out.append(RecTraceLang.empty(rec.alphabet))
        else:
            out.append(RecTraceLang(rec.alphabet, rec.dfa.with_initial(q), check=False))
    return out
