import pytest

from oracles import unfolding_oracle
from rtlgraphs import RecTraceLang, compile_system, compiled_edges, decide, witness
from rtlgraphs.errors import InvariantViolation
from rtlgraphs.library import concurrent_builtin, regex_language
from rtlgraphs.traces import DependenceAlphabet, Trace, enumerate_traces, is_prime, maximal_letters, prefix_le
from rtlgraphs.unfolding import (ConcurrentAutomaton, EventStructure, es_query, grid_automaton,
                                 residual_concurrent_automaton, state_language, unfold_rtl, unfold_rtl_rec)

IND = DependenceAlphabet.full_independence("ab")


def test_validation_reports():
    bad = ConcurrentAutomaton(IND, [0, 1], 0, [], [(0, "a", 1), (0, "b", 0), (1, "b", 0), (0, "a", 0)])
    report = bad.validate()
    assert ("determinism", 0, "a") in report
    assert any(r[0] == "diamond" for r in report)
    with pytest.raises(InvariantViolation):
        bad.check()
    with pytest.raises(InvariantViolation):
        ConcurrentAutomaton(IND, [0], 1)


def test_grid_automaton_is_concurrent():
    for name in ("grid", "grid-tree", "grid-final", "grid-tree-final"):
        assert concurrent_builtin(name).validate() == []


def test_state_language():
    aut = residual_concurrent_automaton(RecTraceLang.from_regex(IND, "(b*ab*a)*b*"))
    even = state_language(aut, aut.initial, aut.finals)
    assert even.contains("abba") and not even.contains("ab")


def test_label_collision():
    alpha = DependenceAlphabet(("a", "f"))
    aut = ConcurrentAutomaton(alpha, [0], 0, [], [(0, "a", 0), (0, "f", 0)])
    with pytest.raises(InvariantViolation):
        unfold_rtl(aut)


@pytest.mark.parametrize("name", ["residual:(ab)*", "grid-final"])
def test_unfolding_matches_direct_runs(name):
    aut = concurrent_builtin(name)
    pres = compile_system(unfold_rtl(aut))
    assert compiled_edges(pres, 6) == unfolding_oracle(aut, enumerate_traces(aut.alphabet, 6), 6)


def test_residual_unfolding_with_independence():
    aut = residual_concurrent_automaton(RecTraceLang.from_regex(IND, "(b*ab*a)*b*"))
    pres = compile_system(unfold_rtl(aut))
    assert compiled_edges(pres, 5) == unfolding_oracle(aut, enumerate_traces(IND, 5), 5)


def test_partial_automaton_prunes_unreachable_traces():
    # only prefixes of (ab)* survive once the sink is dropped
    es = EventStructure(regex_language("(ab)*"), trim=True)
    alpha = es.alphabet
    assert es.query("prime", Trace.of(alpha, "aba"))
    assert not es.query("prime", Trace.of(alpha, "b"))
    assert EventStructure(regex_language("(ab)*")).query("prime", Trace.of(alpha, "b"))


def test_unfold_with_path_languages():
    aut = grid_automaton()
    sys = unfold_rtl_rec(aut, [RecTraceLang.from_regex(IND, "a*")])
    assert sys.labels == ["a", "b", "f", "*", "L1"]
    pres = compile_system(sys)
    l1 = pres.relation("L1")
    assert l1.contains(Trace.of(IND, "b"), Trace.of(IND, "baa"))
    assert not l1.contains(Trace.of(IND, "b"), Trace.of(IND, "bb"))


GRID_TREE_SENTENCES = [
    ("A x. E y. edge(c,x,y)", True),
    ("A x. A y. A z. (edge(c,x,y) & edge(c,x,z) -> y = z)", True),
    ("E x. edge(c,x,x)", False),
    ("A x. edge(*,x,x)", True),
    ("A x. A y. A z. (edge(*,x,y) & edge(*,y,z) -> edge(*,x,z))", True),
    ("A x. A y. (edge(*,x,y) & edge(*,y,x) -> x = y)", True),
    ("A x. A y. (edge(c,x,y) -> edge(*,x,y))", True),
    ("E x. A y. edge(*,x,y)", True),
    ("A x. E y. (edge(*,x,y) & !edge(*,y,x))", True),
    ("E x. E y. (edge(a,x,y) & edge(*,y,x))", False),
    ("A x. A y. (edge(a,x,y) -> E z. (edge(b,y,z) & E w. (edge(b,x,w) & edge(a,w,z))))", True),
    ("E x. E y. (edge(c,x,y) & E z. (edge(a,z,y) | edge(b,z,y)))", False),
]


def test_reachability_sentences(grid_tree_pres):
    for text, want in GRID_TREE_SENTENCES:
        assert decide(text, grid_tree_pres) == want, text


def test_least_reachable_witness(grid_tree_pres):
    w = witness("edge(c,x,y) & edge(a,y,z)", grid_tree_pres, ["x", "y", "z"])
    assert [str(w[v]) for v in "xyz"] == ["ε", "{c}", "{c}{a}"]


def test_event_structure_relations():
    rec = regex_language("(ab)*")
    es = EventStructure(rec)
    alpha = rec.alphabet
    a, aa, b, ab = (Trace.of(alpha, w) for w in ("a", "aa", "b", "ab"))
    assert es.query("conflict", a, b)
    assert not es.query("conflict", a, aa)
    assert not es.query("conflict", a, ab)
    assert es.query("le", a, ab) and not es.query("le", ab, a)
    assert es.query("label", ab, letter="b")
    assert not es.query("label", ab, letter="a")
    with pytest.raises(ValueError):
        es.query("le", a)
    with pytest.raises(ValueError):
        es.formula("label")
    formula, answer = es_query(rec, "prime", a)
    assert answer and "edge" in str(formula)


def test_conflict_with_independence():
    rec = RecTraceLang.from_regex(IND, "(b*ab*a)*b*")
    es = EventStructure(rec)
    a, b = Trace.of(IND, "a"), Trace.of(IND, "b")
    # conflict asks for a common prime upper bound; with a I b every trace
    # holding both letters has two maximal occurrences, so none exists
    assert es.query("conflict", a, b)
    assert not es.query("conflict", a, Trace.of(IND, "aa"))
    assert not es.query("prime", Trace.of(IND, "ab"))


def test_conflict_and_labels_against_prefix_order():
    # all letters dependent: a common upper bound exists iff one is a prefix of the other
    rec = regex_language("(ab)*")
    es = EventStructure(rec)
    primes = [t for t in enumerate_traces(rec.alphabet, 4) if is_prime(t)]
    for s in primes:
        assert es.query("label", s, letter="a") == (maximal_letters(s) == {"a"})
        for t in primes:
            assert es.query("conflict", s, t) == (not prefix_le(s, t) and not prefix_le(t, s))
