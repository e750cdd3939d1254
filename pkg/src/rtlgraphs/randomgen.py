"""Random small alphabets, languages and RTL systems for property tests."""

from __future__ import annotations

import itertools
import random

from .automata import Dfa, Domain
from .rtl import RtlSystem
from .tracelang import LevelRegLang, RecTraceLang, foata_dfa, is_trace_closed
from .traces import DependenceAlphabet, foata_normalize

LETTERS = "abcdefgh"


def random_alphabet(rng: random.Random, max_letters=4, min_letters=1):
    n = rng.randint(min_letters, max_letters)
    letters = tuple(LETTERS[:n])
    ind = [frozenset(p) for p in itertools.combinations(letters, 2) if rng.random() < 0.5]
    return DependenceAlphabet(letters, frozenset(ind))


def random_word(rng, alpha, max_len):
    return tuple(rng.choice(alpha.letters) for _ in range(rng.randint(0, max_len)))


def random_dfa(rng, domain, max_states=4, density=0.6):
    n = rng.randint(1, max_states)
    rows = [{s: rng.randrange(n) for s in domain.symbols if rng.random() < density} for _ in range(n)]
    finals = {q for q in range(n) if rng.random() < 0.4}
    return Dfa(domain, rows, 0, finals)


def random_rec(rng, alpha, max_states=4, tries=40, max_len=3):
    """A recognizable language from a random trace-closed DFA, else a random finite set."""
    for _ in range(tries):
        dfa = random_dfa(rng, Domain.letters(alpha), max_states)
        if is_trace_closed(alpha, dfa):
            return RecTraceLang(alpha, dfa, check=False)
    words = {random_word(rng, alpha, max_len) for _ in range(rng.randint(1, 3))}
    return RecTraceLang.from_traces(alpha, [foata_normalize(alpha, w) for w in words])


def random_level(rng, alpha, max_states=4):
    """A level-regular language: a random step DFA cut down to Foata words."""
    dfa = random_dfa(rng, Domain.steps(alpha, empty=False), max_states)
    return LevelRegLang(alpha, dfa.intersect(foata_dfa(alpha)), check=False)


def random_system(rng, max_letters=4, max_states=4, max_rules=3, labels=("x", "y")):
    alpha = random_alphabet(rng, max_letters)
    sys = RtlSystem(alpha, labels=list(labels))
    for _ in range(rng.randint(1, max_rules)):
        ctx = random_rec(rng, alpha, max_states) if rng.random() < 0.5 else random_level(rng, alpha, max_states)
        sys.add(ctx, random_rec(rng, alpha, max_states), random_rec(rng, alpha, max_states),
                rng.choice(labels))
    return sys


__all__ = ["random_alphabet", "random_word", "random_dfa", "random_rec", "random_level", "random_system"]
