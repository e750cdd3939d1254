import random

import pytest

from oracles import naive_eval
from rtlgraphs import (RecTraceLang, RtlSystem, compile_formula, compile_system, compiled_edges, decide,
                       holds, parse_formula, witness)
from rtlgraphs.errors import ParseError, ReachabilityNotAutomatic, UnknownLabel
from rtlgraphs.fologic import And, Edge, Eq, Not, Or, free_vars, labels_of
from rtlgraphs.traces import DependenceAlphabet, Trace, enumerate_traces

IND = DependenceAlphabet.full_independence("ab")


@pytest.mark.parametrize("text", [
    "E x. edge(a,x,x)",
    "A x. E y. (edge(a,x,y) | !(x = y))",
    "exists x y. (edge(a,x,y) -> edge(b,y,x))",
    "forall x. !E y. edge(*,x,y) & x = x",
])
def test_round_trip(text):
    f = parse_formula(text)
    assert parse_formula(str(f)) == f


@pytest.mark.parametrize("text", ["edge(a,x", "E x. ", "x = ", "edge(a,x,y) &", "E . edge(a,x,x)", "x"])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse_formula(text)


def test_parse_error_message():
    with pytest.raises(ParseError, match="expected ','"):
        parse_formula("edge(a")


def test_free_variables_and_labels():
    f = parse_formula("E x. (edge(a,x,y) & edge(f,y,z))")
    assert free_vars(f) == ["y", "z"]
    assert labels_of(f) == {"a", "f"}
    with pytest.raises(ParseError):
        decide(f, None)


def test_witness_is_length_lex_least(alexbis_pres):
    w = witness("edge(a,x,y) & edge(b,y,z)", alexbis_pres, var_order=["x", "y", "z"])
    assert {k: str(v) for k, v in w.items()} == {"x": "ε", "y": "{a}", "z": "{a,b}"}
    assert witness("edge(a,x,x)", alexbis_pres) is None


def test_holds(alexbis_pres):
    t = {"x": Trace.of(IND, "ab"), "y": Trace.of(IND, "aab")}
    assert holds("edge(a,x,y)", alexbis_pres, t)
    assert not holds("edge(b,x,y)", alexbis_pres, t)
    assert holds("E z. (edge(a,x,z) & z = y)", alexbis_pres, t)


def test_negation_stays_inside_foata(alexbis_pres):
    assert not decide("E x. !(x = x)", alexbis_pres)
    assert decide("A x. x = x", alexbis_pres)
    aut = compile_formula(parse_formula("!edge(a,x,y)"), alexbis_pres, ["x", "y"])
    a, b = frozenset("a"), frozenset("b")
    # a non-Foata step word is not an assignment at all
    assert not aut.dfa.accepts(((b, b), (a, b)))


def test_unknown_labels(alexbis_pres):
    with pytest.raises(UnknownLabel) as info:
        decide("E x. edge(zz,x,x)", alexbis_pres)
    assert "zz" in str(info.value)
    with pytest.raises(ReachabilityNotAutomatic, match="reachability relation not automatic"):
        decide("E x. E y. edge(*,x,y)", alexbis_pres)
    assert issubclass(ReachabilityNotAutomatic, KeyError)


def test_incident_domain():
    alpha = DependenceAlphabet.full_dependence("ab")
    sys = RtlSystem(alpha, labels=["p"])
    sys.add(RecTraceLang.epsilon(alpha), RecTraceLang.from_traces(alpha, ["a"]),
            RecTraceLang.from_traces(alpha, ["b"]), "p")
    pres = compile_system(sys)
    s = "A x. E y. (edge(p,x,y) | edge(p,y,x))"
    assert decide(s, pres, domain="incident")
    assert not decide(s, pres)
    assert decide("E x. A y. !edge(p,y,x)", pres, domain="incident")


def _random_qf(rng, labels, vars_, depth):
    if depth == 0 or rng.random() < 0.3:
        if rng.random() < 0.8:
            return Edge(rng.choice(labels), rng.choice(vars_), rng.choice(vars_))
        return Eq(rng.choice(vars_), rng.choice(vars_))
    kind = rng.choice("!&|")
    if kind == "!":
        return Not(_random_qf(rng, labels, vars_, depth - 1))
    sub = [_random_qf(rng, labels, vars_, depth - 1) for _ in range(2)]
    return And(*sub) if kind == "&" else Or(*sub)


def test_quantifier_free_formulas_against_edges(alexbis_pres):
    rng = random.Random(4)
    traces = enumerate_traces(IND, 3)
    edges = compiled_edges(alexbis_pres, 4)
    for _ in range(25):
        f = _random_qf(rng, ["a", "b", "f"], ["x", "y"], 3)
        aut = compile_formula(f, alexbis_pres, ["x", "y"])
        for u in traces:
            for v in traces:
                env = {"x": u, "y": v}
                assert aut.accepts(env) == naive_eval(f, [], edges, env), str(f)
