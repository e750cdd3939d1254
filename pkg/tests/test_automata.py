import itertools
import random

import pytest

from rtlgraphs.automata import Dfa, Domain, PAD, regex_dfa, word_key
from rtlgraphs.errors import AlphabetError, BudgetExceeded, DomainMismatch, ParseError
from rtlgraphs.randomgen import random_dfa
from rtlgraphs.traces import DependenceAlphabet

AB = DependenceAlphabet.full_dependence("ab")


def words(alpha, n):
    for k in range(n + 1):
        yield from itertools.product(alpha.letters, repeat=k)


def lang(dfa, n=5):
    return {w for w in words(dfa.domain.alphabet, n) if dfa.accepts(w)}


def test_regex_basics():
    d = regex_dfa(AB, "(ab)*")
    assert d.accepts(()) and d.accepts(tuple("abab"))
    assert not d.accepts(tuple("aba"))
    assert d.num_states == 2
    assert regex_dfa(AB, "a+b").accepts(("b",))
    assert regex_dfa(AB, "a|b").equivalent(regex_dfa(AB, "a+b"))
    assert regex_dfa(AB, "(a+ε)b").accepts(("b",))


@pytest.mark.parametrize("bad", ["(ab", "a)", "<ab", "{a"])
def test_regex_errors(bad):
    with pytest.raises(ParseError):
        regex_dfa(AB, bad)


def test_regex_unknown_letter():
    with pytest.raises(AlphabetError):
        regex_dfa(AB, "ax")


def test_step_regex_and_multichar():
    alpha = DependenceAlphabet(("A", "10"), frozenset({frozenset(("A", "10"))}))
    d = regex_dfa(alpha, "<10>*A", steps=False)
    assert d.accepts(("10", "10", "A"))
    s = regex_dfa(DependenceAlphabet.full_independence("ab"), "{a,b}*", steps=True)
    assert s.accepts((frozenset("ab"),) * 3)


def test_boolean_operations_against_enumeration():
    rng = random.Random(11)
    dom = Domain.letters(AB)
    for _ in range(60):
        x, y = random_dfa(rng, dom), random_dfa(rng, dom)
        lx, ly = lang(x), lang(y)
        assert lang(x.union(y)) == lx | ly
        assert lang(x.intersect(y)) == lx & ly
        assert lang(x.difference(y)) == lx - ly
        assert lang(x.complement()) == set(words(AB, 5)) - lx
        assert lang(x.minimize()) == lx
        assert x.minimize().num_states <= x.num_states + 1
        assert x.equivalent(x.minimize())
        assert x.issubset(x.union(y))


def test_minimize_is_canonical():
    a = regex_dfa(AB, "(a+b)*a")
    b = regex_dfa(AB, "(b*a)(b*a)*")
    assert a.minimize() == b.minimize()


def test_shortest_and_iter_words_are_length_lex():
    d = regex_dfa(AB, "(a+b)(a+b)*")
    ws = d.enumerate_words(2)
    assert ws == sorted(ws, key=word_key)
    assert d.shortest_word() == ("a",)
    assert Dfa.empty(Domain.letters(AB)).shortest_word() is None
    assert regex_dfa(AB, "b*").shortest_word() == ()


def test_finiteness():
    assert regex_dfa(AB, "ab+ba").is_finite()
    assert not regex_dfa(AB, "ab*").is_finite()
    assert Dfa.from_words(Domain.letters(AB), [("a",), ("a", "b")]).is_finite()


def test_domain_mismatch():
    steps = Dfa.universal(Domain.steps(AB))
    with pytest.raises(DomainMismatch):
        steps.intersect(Dfa.universal(Domain.letters(AB)))
    with pytest.raises(DomainMismatch):
        Domain("bogus")


def test_padded_domain_symbols():
    alpha = DependenceAlphabet.full_independence("ab")
    dom = Domain.padded(alpha, 2)
    # 3 nonempty steps + pad, squared, minus the all-pad column
    assert len(dom.symbols) == 4 * 4 - 1
    assert dom.contains((frozenset("a"), PAD))
    assert not dom.contains((PAD, PAD))


def test_budget():
    with pytest.raises(BudgetExceeded) as info:
        regex_dfa(AB, "(a+b)*a(a+b)(a+b)(a+b)(a+b)", budget=5)
    assert info.value.budget == 5
