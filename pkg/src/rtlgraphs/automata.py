"""Explicit finite automata over pluggable symbol domains.

Automata are immutable.  States are the integers ``0..n-1``; a DFA is
partial (a missing transition goes to an implicit dead state).  Symbols are
letters (``str``), steps (``frozenset`` of letters) or padded track columns
(tuples whose entries are steps or the pad mark ``"#"``).
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from functools import cached_property

from .errors import BudgetExceeded, DomainMismatch, ParseError, default_budget
from .traces import DependenceAlphabet, Step

PAD = "#"
EPS = None

DOMAIN_KINDS = ("letters", "steps", "steps-nonempty", "tracks", "explicit")


def symbol_key(sym):
    """Total order on symbols; used for canonical numbering and length-lex order."""
    if isinstance(sym, str):
        return (2, "") if sym == PAD else (0, sym)
    if isinstance(sym, frozenset):
        return (1, len(sym), tuple(sorted(sym)))
    if isinstance(sym, tuple):
        return (3, tuple(symbol_key(x) for x in sym))
    return (4, repr(sym))


def word_key(word):
    return (len(word), tuple(symbol_key(s) for s in word))


@dataclass(frozen=True)
class Domain:
    """The symbol universe an automaton reads."""

    kind: str
    alphabet: DependenceAlphabet = None
    tracks: int = 1
    explicit: frozenset = None

    def __post_init__(self):
        if self.kind not in DOMAIN_KINDS:
            raise DomainMismatch(f"unknown domain kind {self.kind!r}")

    @classmethod
    def letters(cls, alpha):
        return cls("letters", alpha)

    @classmethod
    def steps(cls, alpha, empty=True):
        return cls("steps" if empty else "steps-nonempty", alpha)

    @classmethod
    def padded(cls, alpha, k):
        return cls("tracks", alpha, k)

    @cached_property
    def symbols(self):
        if self.kind == "letters":
            return tuple(self.alphabet.letters)
        if self.kind == "steps":
            return self.alphabet.steps_with_empty
        if self.kind == "steps-nonempty":
            return self.alphabet.steps
        if self.kind == "tracks":
            per = self.alphabet.steps + (PAD,)
            return tuple(c for c in itertools.product(per, repeat=self.tracks)
                         if any(x != PAD for x in c))
        return tuple(sorted(self.explicit, key=symbol_key))

    def contains(self, sym):
        if self.kind == "letters":
            return sym in self.alphabet.index
        if self.kind in ("steps", "steps-nonempty"):
            return (isinstance(sym, frozenset) and (sym or self.kind == "steps")
                    and sym <= set(self.alphabet.letters) and self.alphabet.is_step(sym))
        if self.kind == "tracks":
            return (isinstance(sym, tuple) and len(sym) == self.tracks
                    and any(x != PAD for x in sym)
                    and all(x == PAD or (isinstance(x, frozenset) and x and self.alphabet.is_step(x))
                            for x in sym))
        return sym in self.explicit


def _check_same(a, b):
    if a.domain != b.domain:
        raise DomainMismatch(f"domains differ: {a.domain.kind} vs {b.domain.kind}")


class _Builder:
    """Numbers implicit states discovered by a BFS; enforces a state budget."""

    def __init__(self, budget, what):
        self.ids = {}
        self.keys = []
        self.queue = deque()
        self.budget = default_budget() if budget is None else budget
        self.what = what

    def id(self, key):
        i = self.ids.get(key)
        if i is None:
            i = len(self.keys)
            if i >= self.budget:
                raise BudgetExceeded(self.what, self.budget)
            self.ids[key] = i
            self.keys.append(key)
            self.queue.append(key)
        return i

    def __iter__(self):
        while self.queue:
            yield self.queue.popleft()


def build_dfa(domain, initial_key, successors, is_final, budget=None, what="automaton"):
    """Construct a DFA from an implicit state space.

    ``successors(key)`` yields ``(symbol, key')`` pairs with distinct symbols.
    """
    b = _Builder(budget, what)
    b.id(initial_key)
    delta = []
    finals = set()
    for key in b:
        row = {}
        for sym, nxt in successors(key):
            row[sym] = b.id(nxt)
        delta.append(row)
        if is_final(key):
            finals.add(b.ids[key])
    return Dfa(domain, delta, 0, finals)


def build_nfa(domain, initial_keys, successors, is_final, budget=None, what="automaton"):
    b = _Builder(budget, what)
    initials = {b.id(k) for k in initial_keys}
    delta = []
    finals = set()
    for key in b:
        row = {}
        for sym, nxt in successors(key):
            row.setdefault(sym, set()).add(b.id(nxt))
        delta.append(row)
        if is_final(key):
            finals.add(b.ids[key])
    return Nfa(domain, delta, initials, finals)


class Dfa:
    """Partial deterministic automaton with integer states."""

    __slots__ = ("domain", "delta", "initial", "finals", "_minimal", "__weakref__")

    def __init__(self, domain, delta, initial, finals):
        self.domain = domain
        self.delta = tuple(dict(row) for row in delta)
        self.initial = initial
        self.finals = frozenset(finals)
        self._minimal = False

    # -- basics -----------------------------------------------------------
    @property
    def num_states(self):
        return len(self.delta)

    @property
    def num_transitions(self):
        return sum(len(r) for r in self.delta)

    @classmethod
    def empty(cls, domain):
        d = cls(domain, [{}], 0, ())
        d._minimal = True
        return d

    @classmethod
    def epsilon(cls, domain):
        d = cls(domain, [{}], 0, (0,))
        d._minimal = True
        return d

    @classmethod
    def universal(cls, domain):
        return cls(domain, [{s: 0 for s in domain.symbols}], 0, (0,))

    @classmethod
    def from_words(cls, domain, words):
        """Trie automaton for a finite set of words."""
        delta = [{}]
        finals = set()
        for w in words:
            q = 0
            for s in w:
                if s not in delta[q]:
                    delta.append({})
                    delta[q][s] = len(delta) - 1
                q = delta[q][s]
            finals.add(q)
        return cls(domain, delta, 0, finals).minimize()

    def run(self, word, state=None):
        q = self.initial if state is None else state
        for s in word:
            q = self.delta[q].get(s)
            if q is None:
                return None
        return q

    def accepts(self, word):
        q = self.run(word)
        return q is not None and q in self.finals

    def with_initial(self, state):
        return Dfa(self.domain, self.delta, state, self.finals)

    def with_finals(self, finals):
        return Dfa(self.domain, self.delta, self.initial, finals)

    def reachable(self):
        seen = {self.initial}
        stack = [self.initial]
        while stack:
            q = stack.pop()
            for t in self.delta[q].values():
                if t not in seen:
                    seen.add(t)
                    stack.append(t)
        return seen

    def coreachable(self):
        rev = [[] for _ in self.delta]
        for q, row in enumerate(self.delta):
            for t in row.values():
                rev[t].append(q)
        seen = set(self.finals)
        stack = list(self.finals)
        while stack:
            q = stack.pop()
            for p in rev[q]:
                if p not in seen:
                    seen.add(p)
                    stack.append(p)
        return seen

    def is_empty(self):
        return not (self.reachable() & self.finals)

    # -- minimization -----------------------------------------------------
    def minimize(self):
        """Canonical minimal partial DFA (Moore partition refinement)."""
        if self._minimal:
            return self
        useful = self.reachable() & self.coreachable()
        if self.initial not in useful:
            return Dfa.empty(self.domain)
        states = sorted(useful)
        block = {q: (1 if q in self.finals else 0) for q in states}
        count = len(set(block.values()))
        while True:
            sigs = {}
            new = {}
            for q in states:
                sig = (block[q], frozenset((s, block[t]) for s, t in self.delta[q].items() if t in useful))
                new[q] = sigs.setdefault(sig, len(sigs))
            block = new
            if len(sigs) == count:
                break
            count = len(sigs)
        rep = {}
        for q in states:
            rep.setdefault(block[q], q)
        order = {}
        delta = []
        queue = deque([block[self.initial]])
        order[block[self.initial]] = 0
        finals = set()
        while queue:
            b = queue.popleft()
            q = rep[b]
            row = {}
            for s in sorted(self.delta[q], key=symbol_key):
                t = self.delta[q][s]
                if t not in useful:
                    continue
                tb = block[t]
                if tb not in order:
                    order[tb] = len(order)
                    queue.append(tb)
                row[s] = order[tb]
            delta.append(row)
            if q in self.finals:
                finals.add(order[b])
        out = Dfa(self.domain, delta, 0, finals)
        out._minimal = True
        return out

    # -- boolean operations -----------------------------------------------
    def intersect(self, other, budget=None):
        _check_same(self, other)

        def succ(key):
            p, q = key
            row = other.delta[q]
            for s, p2 in self.delta[p].items():
                q2 = row.get(s)
                if q2 is not None:
                    yield s, (p2, q2)

        return build_dfa(self.domain, (self.initial, other.initial), succ,
                         lambda k: k[0] in self.finals and k[1] in other.finals,
                         budget, "intersection").minimize()

    def union(self, other, budget=None):
        _check_same(self, other)

        def succ(key):
            p, q = key
            rp = self.delta[p] if p is not None else {}
            rq = other.delta[q] if q is not None else {}
            for s in rp.keys() | rq.keys():
                yield s, (rp.get(s), rq.get(s))

        return build_dfa(self.domain, (self.initial, other.initial), succ,
                         lambda k: k[0] in self.finals or k[1] in other.finals,
                         budget, "union").minimize()

    def difference(self, other, budget=None):
        """Words of self not accepted by other."""
        _check_same(self, other)

        def succ(key):
            p, q = key
            rq = other.delta[q] if q is not None else {}
            for s, p2 in self.delta[p].items():
                yield s, (p2, rq.get(s))

        return build_dfa(self.domain, (self.initial, other.initial), succ,
                         lambda k: k[0] in self.finals and (k[1] is None or k[1] not in other.finals),
                         budget, "difference").minimize()

    def complement(self, universe=None, budget=None):
        """Complement w.r.t. all words over the domain, or w.r.t. ``universe``."""
        if universe is None:
            universe = Dfa.universal(self.domain)
        return universe.difference(self, budget)

    def issubset(self, other):
        return self.difference(other).is_empty()

    def equivalent(self, other):
        _check_same(self, other)
        return self.minimize() == other.minimize()

    # -- words ------------------------------------------------------------
    def shortest_word(self):
        """Length-lexicographically least accepted word, or None."""
        if self.initial in self.finals:
            return ()
        parent = {self.initial: None}
        queue = deque([self.initial])
        while queue:
            q = queue.popleft()
            for s in sorted(self.delta[q], key=symbol_key):
                t = self.delta[q][s]
                if t in parent:
                    continue
                parent[t] = (q, s)
                if t in self.finals:
                    word = []
                    while parent[t] is not None:
                        t, s = parent[t]
                        word.append(s)
                    return tuple(reversed(word))
                queue.append(t)
        return None

    def iter_words(self, max_len=None):
        """Accepted words in length-lexicographic order (possibly infinite)."""
        live = self.coreachable()
        if self.initial not in live:
            return
        layer = [((), self.initial)]
        length = 0
        while layer:
            for w, q in layer:
                if q in self.finals:
                    yield w
            if max_len is not None and length >= max_len:
                return
            nxt = []
            for w, q in layer:
                for s in sorted(self.delta[q], key=symbol_key):
                    t = self.delta[q][s]
                    if t in live:
                        nxt.append((w + (s,), t))
            layer = nxt
            length += 1

    def enumerate_words(self, bound):
        return list(self.iter_words(bound))

    def is_finite(self):
        m = self.minimize()
        color = {}

        def dfs(q):
            color[q] = 1
            for t in m.delta[q].values():
                c = color.get(t)
                if c == 1 or (c is None and not dfs(t)):
                    return False
            color[q] = 2
            return True

        return dfs(m.initial)

    # -- structure --------------------------------------------------------
    def symbols_used(self):
        return {s for row in self.delta for s in row}

    def _key(self):
        return (self.domain, self.initial, self.finals,
                tuple(frozenset(r.items()) for r in self.delta))

    def __eq__(self, other):
        return isinstance(other, Dfa) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return (f"Dfa({self.domain.kind}, states={self.num_states}, "
                f"transitions={self.num_transitions}, finals={len(self.finals)})")


class Nfa:
    """Nondeterministic automaton; the symbol ``EPS`` (None) marks ε-moves."""

    __slots__ = ("domain", "delta", "initials", "finals")

    def __init__(self, domain, delta, initials, finals):
        self.domain = domain
        self.delta = tuple({s: frozenset(ts) for s, ts in row.items()} for row in delta)
        self.initials = frozenset(initials)
        self.finals = frozenset(finals)

    @property
    def num_states(self):
        return len(self.delta)

    def closure(self, states):
        out = set(states)
        stack = list(states)
        while stack:
            q = stack.pop()
            for t in self.delta[q].get(EPS, ()):
                if t not in out:
                    out.add(t)
                    stack.append(t)
        return frozenset(out)

    def determinize(self, budget=None, what="determinization"):
        def succ(key):
            moves = {}
            for q in key:
                for s, ts in self.delta[q].items():
                    if s is not EPS:
                        moves.setdefault(s, set()).update(ts)
            for s, ts in moves.items():
                yield s, self.closure(ts)

        return build_dfa(self.domain, self.closure(self.initials), succ,
                         lambda k: bool(k & self.finals), budget, what).minimize()

    def accepts(self, word):
        cur = self.closure(self.initials)
        for s in word:
            nxt = set()
            for q in cur:
                nxt.update(self.delta[q].get(s, ()))
            cur = self.closure(nxt)
        return bool(cur & self.finals)


# -- regular expressions ---------------------------------------------------

class _RegexParser:
    """Thompson construction for  e ::= e+e | e e | e* | (e) | atom | ε.

    Atoms are single-character letters, ``<name>`` for longer letter names,
    or step literals ``{a,b}`` (``{}`` is the empty step).
    """

    def __init__(self, text, alpha, step_mode):
        self.text = text
        self.pos = 0
        self.alpha = alpha
        self.step_mode = step_mode
        self.delta = []

    def new(self):
        self.delta.append({})
        return len(self.delta) - 1

    def edge(self, p, s, q):
        self.delta[p].setdefault(s, set()).add(q)

    def peek(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1
        return self.text[self.pos] if self.pos < len(self.text) else None

    def parse(self):
        frag = self.alt()
        if self.peek() is not None:
            raise ParseError(f"unexpected {self.peek()!r} at {self.pos} in regex {self.text!r}")
        return frag

    def alt(self):
        s, e = self.seq()
        while self.peek() in ("+", "|"):
            self.pos += 1
            s2, e2 = self.seq()
            ns, ne = self.new(), self.new()
            self.edge(ns, EPS, s)
            self.edge(ns, EPS, s2)
            self.edge(e, EPS, ne)
            self.edge(e2, EPS, ne)
            s, e = ns, ne
        return s, e

    def seq(self):
        s = e = self.new()
        while self.peek() is not None and self.peek() not in "+|)":
            fs, fe = self.star()
            self.edge(e, EPS, fs)
            e = fe
        return s, e

    def star(self):
        s, e = self.atom()
        while self.peek() == "*":
            self.pos += 1
            ns, ne = self.new(), self.new()
            self.edge(ns, EPS, s)
            self.edge(ns, EPS, ne)
            self.edge(e, EPS, s)
            self.edge(e, EPS, ne)
            s, e = ns, ne
        return s, e

    def symbol(self, s):
        p, q = self.new(), self.new()
        self.edge(p, s, q)
        return p, q

    def atom(self):
        c = self.peek()
        if c == "(":
            self.pos += 1
            frag = self.alt()
            if self.peek() != ")":
                raise ParseError(f"missing ')' in regex {self.text!r}")
            self.pos += 1
            return frag
        if c == "ε":
            self.pos += 1
            p = self.new()
            return p, p
        if c == "{":
            end = self.text.find("}", self.pos)
            if end < 0:
                raise ParseError(f"unclosed step in regex {self.text!r}")
            body = self.text[self.pos + 1:end]
            self.pos = end + 1
            letters = [x.strip() for x in body.split(",") if x.strip()]
            self.alpha.check_word(letters)
            if not self.alpha.is_step(letters):
                raise ParseError(f"{{{body}}} is not a step")
            if not self.step_mode:
                # a step literal inside a letter regex denotes one linearization
                p = q = self.new()
                for a in self.alpha.sorted_letters(letters):
                    r = self.new()
                    self.edge(q, a, r)
                    q = r
                return p, q
            return self.symbol(Step(letters))
        if c == "<":
            end = self.text.find(">", self.pos)
            if end < 0:
                raise ParseError(f"unclosed letter name in regex {self.text!r}")
            name = self.text[self.pos + 1:end]
            self.pos = end + 1
        elif c is None:
            raise ParseError(f"unexpected end of regex {self.text!r}")
        else:
            name = c
            self.pos += 1
        self.alpha.check_word([name])
        if self.step_mode:
            return self.symbol(Step([name]))
        return self.symbol(name)


def regex_dfa(alpha, text, steps=False, budget=None):
    """Minimal DFA of a regular expression over letters, or over steps if ``steps``."""
    p = _RegexParser(text, alpha, steps)
    start, end = p.parse()
    domain = Domain.steps(alpha, empty=True) if steps else Domain.letters(alpha)
    return Nfa(domain, p.delta, {start}, {end}).determinize(budget, "regex")


def retag(dfa, domain):
    """Same automaton viewed over another domain (symbols must be legal there)."""
    for s in dfa.symbols_used():
        if not domain.contains(s):
            raise DomainMismatch(f"symbol {s!r} not in domain {domain.kind}")
    out = Dfa(domain, dfa.delta, dfa.initial, dfa.finals)
    out._minimal = dfa._minimal
    return out
