"""Synchronized (padded-convolution) binary relations on step words."""

from __future__ import annotations

from . import _tracks
from .automata import PAD, Dfa, Domain
from .errors import AlphabetError, DomainMismatch
from .tracelang import foata_dfa
from .traces import Trace


def convolve(u, v):
    """u ⊗ v: pair position-wise and pad the shorter word with '#'."""
    return _tracks.convolve(tuple(u), tuple(v))


class SyncRelation:
    """A regular set of padded pairs ⟨s⟩⊗⟨t⟩ over the steps of one alphabet."""

    def __init__(self, alpha, dfa):
        if dfa.domain != Domain.padded(alpha, 2):
            raise DomainMismatch("a relation is an automaton over padded step pairs")
        self.alphabet = alpha
        self.dfa = dfa.minimize()

    @property
    def num_states(self):
        return self.dfa.num_states

    def _same(self, other):
        if self.alphabet != other.alphabet:
            raise AlphabetError("relations over different alphabets")

    def contains(self, u, v):
        if isinstance(u, Trace):
            u = u.steps
        if isinstance(v, Trace):
            v = v.steps
        return self.dfa.accepts(convolve(u, v))

    def union(self, other):
        self._same(other)
        return SyncRelation(self.alphabet, self.dfa.union(other.dfa))

    def intersect(self, other):
        self._same(other)
        return SyncRelation(self.alphabet, self.dfa.intersect(other.dfa))

    def complement(self, universe=None):
        """Complement relative to all_pairs(universe); universe defaults to Foata."""
        u = all_pairs(self.alphabet, universe)
        return SyncRelation(self.alphabet, u.dfa.difference(self.dfa))

    def is_empty(self):
        return self.dfa.is_empty()

    def issubset(self, other):
        return self.dfa.issubset(other.dfa)

    def pairs(self, max_letters):
        """Accepted pairs of step words whose traces have at most max_letters letters."""
        return [tuple(p) for p in _tracks.bounded_tuples(self.dfa, max_letters)]

    def __eq__(self, other):
        return isinstance(other, SyncRelation) and self.dfa == other.dfa

    def __hash__(self):
        return hash(self.dfa)

    def __repr__(self):
        return f"SyncRelation({self.dfa!r})"


def _lang(alpha, lang):
    if lang is None:
        return foata_dfa(alpha)
    return getattr(lang, "dfa", lang)


def empty_relation(alpha):
    return SyncRelation(alpha, Dfa.empty(Domain.padded(alpha, 2)))


def all_pairs(alpha, lang=None):
    """{u ⊗ v | u, v ∈ L}; L defaults to the Foata normal forms."""
    return SyncRelation(alpha, _tracks.universe(alpha, 2, _lang(alpha, lang)))


def identity(alpha, lang=None):
    """{w ⊗ w | w ∈ L}."""
    d = _lang(alpha, lang)
    rows = [{(s, s): t for s, t in row.items()} for row in d.delta]
    return SyncRelation(alpha, Dfa(Domain.padded(alpha, 2), rows, d.initial, d.finals))


def project_left(rel):
    """Domain of the relation as a step-word DFA."""
    return _tracks.untrack(_tracks.project(rel.dfa, 1), rel.alphabet)


def project_right(rel):
    """Image of the relation as a step-word DFA."""
    return _tracks.untrack(_tracks.project(rel.dfa, 0), rel.alphabet)


def restrict_left(rel, lang):
    return SyncRelation(rel.alphabet, _tracks.restrict_track(rel.dfa, 0, _lang(rel.alphabet, lang)))


def restrict_right(rel, lang):
    return SyncRelation(rel.alphabet, _tracks.restrict_track(rel.dfa, 1, _lang(rel.alphabet, lang)))


def image(rel, word):
    """Step-word DFA of {v | word ⊗ v ∈ rel}."""
    if isinstance(word, Trace):
        word = word.steps
    single = Dfa.from_words(Domain.steps(rel.alphabet, empty=False), [tuple(word)])
    return project_right(restrict_left(rel, single))


def preimage(rel, word):
    if isinstance(word, Trace):
        word = word.steps
    single = Dfa.from_words(Domain.steps(rel.alphabet, empty=False), [tuple(word)])
    return project_left(restrict_right(rel, single))


def well_formed(alpha):
    """All well-formed padded pairs of arbitrary step words (not only Foata ones)."""
    anything = Dfa.universal(Domain.steps(alpha, empty=False))
    return all_pairs(alpha, anything)


__all__ = [
    "PAD", "SyncRelation", "convolve", "all_pairs", "identity", "project_left", "project_right",
    "restrict_left", "restrict_right", "image", "preimage", "empty_relation", "well_formed",
]
