"""Dependence alphabets and Mazurkiewicz traces in Foata normal form.

A trace is stored as its Foata normal form: a tuple of steps (frozensets of
pairwise independent letters) where every letter of a step depends on some
letter of the previous step.  Two traces are equal iff their step tuples are.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from .errors import AlphabetError, MAX_LETTERS, ParseError

Step = frozenset


@dataclass(frozen=True)
class DependenceAlphabet:
    """Finite ordered alphabet with a reflexive symmetric dependence relation.

    Only the independent pairs are stored; every other pair (including all
    reflexive ones) is dependent.
    """

    letters: tuple
    independent: frozenset = frozenset()

    def __post_init__(self):
        letters = tuple(self.letters)
        if len(set(letters)) != len(letters):
            raise AlphabetError(f"duplicate letters in {letters}")
        for a in letters:
            if not isinstance(a, str) or not a or a == "#" or any(ch in a for ch in "{},() \t"):
                raise AlphabetError(f"illegal letter {a!r}")
        if len(letters) > MAX_LETTERS:
            raise AlphabetError(
                f"alphabet of {len(letters)} letters exceeds the cap of {MAX_LETTERS}"
            )
        pairs = set()
        for pair in self.independent:
            pair = frozenset(pair)
            if len(pair) != 2 or not pair <= set(letters):
                raise AlphabetError(f"bad independent pair {sorted(pair)}")
            pairs.add(pair)
        object.__setattr__(self, "letters", letters)
        object.__setattr__(self, "independent", frozenset(pairs))

    @classmethod
    def full_dependence(cls, letters):
        return cls(tuple(letters))

    @classmethod
    def full_independence(cls, letters):
        letters = tuple(letters)
        return cls(letters, frozenset(frozenset(p) for p in itertools.combinations(letters, 2)))

    @classmethod
    def from_dependence(cls, letters, dependent_pairs):
        """Build from the listed dependent pairs; unlisted distinct pairs commute."""
        letters = tuple(letters)
        dep = {frozenset(p) for p in dependent_pairs}
        ind = [frozenset(p) for p in itertools.combinations(letters, 2) if frozenset(p) not in dep]
        return cls(letters, frozenset(ind))

    @cached_property
    def index(self):
        return {a: i for i, a in enumerate(self.letters)}

    def dependent(self, a, b):
        return frozenset((a, b)) not in self.independent

    def indep(self, a, b):
        return a != b and frozenset((a, b)) in self.independent

    def sets_independent(self, xs, ys):
        """True iff every letter of xs is independent of every letter of ys."""
        return all(self.indep(x, y) for x in xs for y in ys)

    def is_step(self, letters):
        letters = list(letters)
        return all(self.indep(x, y) for x, y in itertools.combinations(letters, 2))

    @cached_property
    def steps(self):
        """All nonempty steps, the alphabet usually written I_D minus the empty set."""
        out = []

        def extend(current, start):
            for i in range(start, len(self.letters)):
                a = self.letters[i]
                if all(self.indep(a, b) for b in current):
                    new = current + (a,)
                    out.append(Step(new))
                    extend(new, i + 1)

        extend((), 0)
        out.sort(key=self.step_key)
        return tuple(out)

    @cached_property
    def steps_with_empty(self):
        return (Step(),) + self.steps

    def step_key(self, step):
        return (len(step), tuple(sorted(self.index[a] for a in step)))

    def sorted_letters(self, letters):
        return sorted(letters, key=self.index.__getitem__)

    def triangle(self, prev, step):
        """prev ▷ step: every letter of step depends on some letter of prev."""
        return all(any(self.dependent(a, b) for a in prev) for b in step)

    def check_word(self, word):
        for a in word:
            if a not in self.index:
                raise AlphabetError(f"unknown letter {a!r}")
        return tuple(word)

    def parse_word(self, text):
        """Split a linearization string into letters.

        Single-character alphabets read one letter per character; otherwise
        letters are separated by whitespace.
        """
        if not isinstance(text, str):
            return self.check_word(text)
        text = text.strip()
        if text in ("", "ε", "eps"):
            return ()
        if any(ch.isspace() for ch in text) or any(len(a) > 1 for a in self.letters):
            return self.check_word(text.split())
        return self.check_word(tuple(text))

    def to_json(self):
        return {
            "letters": list(self.letters),
            "independent": sorted(self.sorted_letters(p) for p in self.independent),
        }

    @classmethod
    def from_json(cls, data):
        try:
            return cls(tuple(data["letters"]), frozenset(frozenset(p) for p in data.get("independent", [])))
        except (KeyError, TypeError) as exc:
            raise ParseError(f"bad alphabet JSON: {exc}") from exc


@dataclass(frozen=True)
class Trace:
    """A trace in Foata normal form.  Build with `foata_normalize` or `Trace.of`."""

    steps: tuple
    alphabet: DependenceAlphabet = field(compare=False, repr=False)

    @classmethod
    def of(cls, alpha, word):
        return foata_normalize(alpha, alpha.parse_word(word) if isinstance(word, str) else word)

    @classmethod
    def from_steps(cls, alpha, steps):
        """Validate an explicit step sequence as a Foata normal form."""
        steps = tuple(Step(s) for s in steps)
        prev = None
        for s in steps:
            alpha.check_word(s)
            if not s or not alpha.is_step(s):
                raise AlphabetError(f"{sorted(s)} is not a step")
            if prev is not None and not alpha.triangle(prev, s):
                raise AlphabetError("step sequence is not in Foata normal form")
            prev = s
        return cls(steps, alpha)

    @classmethod
    def empty(cls, alpha):
        return cls((), alpha)

    def word(self):
        """The linearization reading each step in alphabet order."""
        return tuple(a for s in self.steps for a in self.alphabet.sorted_letters(s))

    def __len__(self):
        return sum(len(s) for s in self.steps)

    @property
    def height(self):
        return len(self.steps)

    def __mul__(self, other):
        return concat(self, other)

    def __str__(self):
        return render_steps(self.alphabet, self.steps)


def render_steps(alpha, steps):
    if not steps:
        return "ε"
    return "".join("{" + ",".join(alpha.sorted_letters(s)) + "}" for s in steps)


def parse_steps(alpha, text):
    """Parse "{a,c}{b}" into a tuple of steps (no Foata check)."""
    text = text.strip()
    if text in ("", "ε"):
        return ()
    steps = []
    pos = 0
    while pos < len(text):
        if text[pos] != "{":
            raise ParseError(f"expected '{{' at {pos} in {text!r}")
        end = text.find("}", pos)
        if end < 0:
            raise ParseError(f"unclosed '{{' at {pos} in {text!r}")
        body = text[pos + 1:end].strip()
        letters = [x.strip() for x in body.split(",")] if body else []
        steps.append(Step(alpha.check_word(letters)))
        pos = end + 1
        while pos < len(text) and text[pos].isspace():
            pos += 1
    return tuple(steps)


def foata_normalize(alpha: DependenceAlphabet, word: Sequence[str]) -> Trace:
    """Foata normal form of [word] by the level algorithm.

    Each occurrence lands one level above the highest earlier occurrence it
    depends on.
    """
    alpha.check_word(word)
    last = {}
    levels = []
    for a in word:
        level = 1 + max((lv for b, lv in last.items() if alpha.dependent(a, b)), default=0)
        last[a] = level
        if level > len(levels):
            levels.append(set())
        levels[level - 1].add(a)
    return Trace(tuple(Step(s) for s in levels), alpha)


def trace_equiv(alpha, u, v):
    return foata_normalize(alpha, u) == foata_normalize(alpha, v)


def _same_alphabet(t1, t2):
    if t1.alphabet != t2.alphabet:
        raise AlphabetError("traces over different alphabets")


def concat(t1: Trace, t2: Trace) -> Trace:
    _same_alphabet(t1, t2)
    return foata_normalize(t1.alphabet, t1.word() + t2.word())


def _remove_minimal(alpha, word, a):
    """Delete the first occurrence of a if it is a minimal letter of [word]."""
    for i, b in enumerate(word):
        if b == a:
            return word[:i] + word[i + 1:]
        if alpha.dependent(a, b):
            return None
    return None


def in_parallel(s: Trace, t: Trace, steps) -> bool:
    """Is the step word B_1..B_m in <s> ∥ t?

    With <s> = A_1..A_p: m >= p, A_i ⊆ B_i for i <= p, and the word
    (B_1∖A_1)..(B_p∖A_p) B_{p+1}..B_m spells a linearization of t.
    """
    _same_alphabet(s, t)
    a_steps = s.steps
    if len(steps) < len(a_steps):
        return False
    if any(not a <= b for a, b in zip(a_steps, steps)):
        return False
    rest = []
    for i, b in enumerate(steps):
        rest.extend(t.alphabet.sorted_letters(b - a_steps[i] if i < len(a_steps) else b))
    return foata_normalize(t.alphabet, rest) == t


def concat_conditions(s: Trace, t: Trace) -> bool:
    """Check that <st> ∈ <s> ∥ t."""
    return in_parallel(s, t, concat(s, t).steps)


def left_divide(t1: Trace, t2: Trace):
    """The unique s with t1·s = t2, or None if t1 is not a prefix of t2."""
    _same_alphabet(t1, t2)
    alpha = t1.alphabet
    rest = list(t2.word())
    for a in t1.word():
        rest = _remove_minimal(alpha, rest, a)
        if rest is None:
            return None
    return foata_normalize(alpha, rest)


def prefix_le(t1: Trace, t2: Trace) -> bool:
    return left_divide(t1, t2) is not None


def _maximal_positions(alpha, word):
    n = len(word)
    return [
        i for i in range(n)
        if not any(alpha.dependent(word[i], word[j]) for j in range(i + 1, n))
    ]


def maximal_letters(t: Trace):
    word = t.word()
    return frozenset(word[i] for i in _maximal_positions(t.alphabet, word))


def is_prime(t: Trace) -> bool:
    """Exactly one maximal occurrence in the dependence order of t."""
    return len(_maximal_positions(t.alphabet, t.word())) == 1


def enumerate_traces(alpha: DependenceAlphabet, max_letters: int):
    """All traces with at most max_letters letters, shortest first."""
    layer = [Trace.empty(alpha)]
    out = list(layer)
    for _ in range(max_letters):
        seen = {}
        for t in layer:
            word = t.word()
            for a in alpha.letters:
                s = foata_normalize(alpha, word + (a,))
                seen.setdefault(s, None)
        layer = list(seen)
        out.extend(layer)
    return out


def prefixes(t: Trace):
    """All prefixes u of t paired with the quotient u⁻¹t."""
    alpha = t.alphabet
    start = (Trace.empty(alpha), tuple(t.word()))
    out = {start[0]: foata_normalize(alpha, start[1])}
    frontier = [start]
    while frontier:
        nxt = []
        for u, rest in frontier:
            for a in set(rest):
                r = _remove_minimal(alpha, list(rest), a)
                if r is None:
                    continue
                v = foata_normalize(alpha, u.word() + (a,))
                if v not in out:
                    out[v] = foata_normalize(alpha, r)
                    nxt.append((v, tuple(r)))
        frontier = nxt
    return out
