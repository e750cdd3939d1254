import itertools

import pytest

from rtlgraphs import brute_force_edges, compile_system, compiled_edges, decide, successors
from rtlgraphs.errors import ParseError, ReachabilityNotAutomatic
from rtlgraphs.library import MINSKY, minsky
from rtlgraphs.minsky import Dec, Halt, Inc, MinskyMachine, compile_minsky, encode, halting_sentence, run_minsky
from rtlgraphs.traces import Trace

ZERO_TEST = "1: inc 2 2\n2: dec 1 3 3\n3: halt\n"


def test_parse_and_print():
    m = MinskyMachine.parse("# comment\n1: inc 1 2\n2: dec 1 1 3  # loop\n3: halt\n")
    assert m.instructions == (Inc(1, 2), Dec(1, 1, 3), Halt())
    assert MinskyMachine.parse(m.to_text()) == m


@pytest.mark.parametrize("text", [
    "1: inc 1 2\n",                 # no halt
    "1: inc 1 3\n2: halt\n",        # jump out of range
    "1: inc 3 2\n2: halt\n",        # bad counter
    "1: halt\n2: halt\n",           # halt not last
    "1: inc 1 2\n3: halt\n",        # gap
    "1: inc 1\n2: halt\n",          # arity
    "1: jump 2\n2: halt\n",
])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        MinskyMachine.parse(text)


def test_unknown_builtin():
    with pytest.raises(ParseError):
        minsky("nope")


def test_encoding():
    sys, _ = compile_minsky(minsky("three"))
    alpha = sys.alphabet
    assert str(encode(alpha, (2, 1, 2))) == "{A,B}{a,b}{b}{2}"
    assert sys.labels == ["R", "i", "f"]


@pytest.mark.parametrize("name", sorted(MINSKY))
def test_search_agrees_with_direct_simulation(name):
    m = minsky(name)
    v = run_minsky(m, budget=500)
    assert v.halts == (m.simulate(500) is not None)
    if v.halts:
        assert v.depth == m.simulate(500)


def test_named_verdicts():
    assert str(run_minsky(minsky("inc-halt"))) == "halts at depth 1"
    loop = run_minsky(minsky("dec-loop"), budget=10_000)
    assert not loop.halts and loop.exhausted and loop.explored == 1


@pytest.mark.parametrize("text", [MINSKY["transfer"], ZERO_TEST])
def test_rewrite_edges_are_machine_steps(text):
    m = MinskyMachine.parse(text)
    sys, _ = compile_minsky(m)
    pres = compile_system(sys)
    alpha = pres.alphabet
    for k, c1, c2 in itertools.product(range(1, m.length), range(3), range(3)):
        got = {Trace(w, alpha) for w in successors(pres, encode(alpha, (k, c1, c2)), "R").dfa.iter_words()}
        assert got == {encode(alpha, m.step((k, c1, c2)))}, (k, c1, c2)


def test_literal_independence_loses_the_zero_test():
    m = MinskyMachine.parse(ZERO_TEST)
    assert run_minsky(m).halts
    assert not run_minsky(m, budget=100, literal=True).halts


def test_halting_sentence_needs_reachability():
    sys, sentence = compile_minsky(minsky("inc-halt"))
    assert sentence == halting_sentence()
    with pytest.raises(ReachabilityNotAutomatic):
        decide(sentence, compile_system(sys))


def test_i_and_f_loops():
    sys, _ = compile_minsky(minsky("three"))
    pres = compile_system(sys)
    alpha = pres.alphabet
    start, stop = encode(alpha, (1, 0, 0)), encode(alpha, (3, 2, 1))
    assert pres.relation("i").contains(start, start)
    assert not pres.relation("i").contains(stop, stop)
    assert pres.relation("f").contains(stop, stop)
    assert not pres.relation("f").contains(start, start)


@pytest.mark.slow
def test_literal_encoding_against_oracle():
    sys, _ = compile_minsky(minsky("three"), literal=True)
    assert compiled_edges(compile_system(sys), 6) == brute_force_edges(sys, 6)
