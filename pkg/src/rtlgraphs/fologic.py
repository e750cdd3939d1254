"""First-order model checking over automatic presentations.

A formula with free variables x1..xk compiles to an automaton over k-track
padded convolutions of Foata normal forms accepting exactly the satisfying
assignments.  Negation is taken relative to the k-track universe, so every
intermediate automaton only ever accepts well-formed tuples.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from . import _tracks
from .errors import (BudgetExceeded, ParseError, ReachabilityNotAutomatic, UnknownLabel,
                     default_budget)
from .syncrel import identity, project_left, project_right
from .tracelang import foata_dfa
from .traces import Trace


# -- syntax ----------------------------------------------------------------

class Formula:
    def __and__(self, other):
        return And(self, other)

    def __or__(self, other):
        return Or(self, other)

    def __invert__(self):
        return Not(self)


@dataclass(frozen=True)
class Edge(Formula):
    label: str
    x: str
    y: str

    def __str__(self):
        return f"edge({self.label},{self.x},{self.y})"


@dataclass(frozen=True)
class Eq(Formula):
    x: str
    y: str

    def __str__(self):
        return f"{self.x} = {self.y}"


@dataclass(frozen=True)
class Not(Formula):
    body: Formula

    def __str__(self):
        return f"!{_paren(self.body, 4)}"


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula

    def __str__(self):
        return f"{_paren(self.left, 3)} & {_paren(self.right, 3)}"


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula

    def __str__(self):
        return f"{_paren(self.left, 2)} | {_paren(self.right, 2)}"


@dataclass(frozen=True)
class Implies(Formula):
    left: Formula
    right: Formula

    def __str__(self):
        return f"{_paren(self.left, 2)} -> {_paren(self.right, 1)}"


@dataclass(frozen=True)
class Exists(Formula):
    var: str
    body: Formula

    def __str__(self):
        return f"E {self.var}. {self.body}"


@dataclass(frozen=True)
class Forall(Formula):
    var: str
    body: Formula

    def __str__(self):
        return f"A {self.var}. {self.body}"


def _level(f):
    if isinstance(f, (Edge, Eq, Not)):
        return 4
    if isinstance(f, And):
        return 3
    if isinstance(f, Or):
        return 2
    if isinstance(f, Implies):
        return 1
    return 0


def _paren(f, need):
    s = str(f)
    return s if _level(f) >= need else f"({s})"


def conj(*fs):
    out = fs[0]
    for f in fs[1:]:
        out = And(out, f)
    return out


def disj(*fs):
    out = fs[0]
    for f in fs[1:]:
        out = Or(out, f)
    return out


def exists(vars_, body):
    for v in reversed(vars_):
        body = Exists(v, body)
    return body


def free_vars(f):
    """Free variables in order of first occurrence."""
    out = []

    def walk(g, bound):
        if isinstance(g, Edge) or isinstance(g, Eq):
            for v in (g.x, g.y):
                if v not in bound and v not in out:
                    out.append(v)
        elif isinstance(g, Not):
            walk(g.body, bound)
        elif isinstance(g, (And, Or, Implies)):
            walk(g.left, bound)
            walk(g.right, bound)
        else:
            walk(g.body, bound | {g.var})

    walk(f, frozenset())
    return out


def labels_of(f):
    if isinstance(f, Edge):
        return {f.label}
    if isinstance(f, Eq):
        return set()
    if isinstance(f, Not) or isinstance(f, (Exists, Forall)):
        return labels_of(f.body)
    return labels_of(f.left) | labels_of(f.right)


def rename_apart(f):
    """Give every quantifier a fresh variable name distinct from the free ones."""
    used = set(free_vars(f))

    def fresh(v):
        name, i = v, 0
        while name in used:
            i += 1
            name = f"{v}_{i}"
        used.add(name)
        return name

    def go(g, env):
        if isinstance(g, Edge):
            return Edge(g.label, env.get(g.x, g.x), env.get(g.y, g.y))
        if isinstance(g, Eq):
            return Eq(env.get(g.x, g.x), env.get(g.y, g.y))
        if isinstance(g, Not):
            return Not(go(g.body, env))
        if isinstance(g, (And, Or, Implies)):
            return type(g)(go(g.left, env), go(g.right, env))
        v = fresh(g.var)
        return type(g)(v, go(g.body, {**env, g.var: v}))

    return go(f, {})


# -- parser ----------------------------------------------------------------

_TOKEN = re.compile(r"\s*(->|!=|[()!&|=,.*]|[A-Za-z0-9_⊥]+)")


def _tokenize(text):
    pos = 0
    out = []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r} at {pos}")
        out.append(m.group(1))
        pos = m.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1
    return out


class _Parser:
    def __init__(self, text):
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self, k=0):
        j = self.i + k
        return self.toks[j] if j < len(self.toks) else None

    def take(self, expect=None):
        tok = self.peek()
        if tok is None or (expect is not None and tok != expect):
            want = repr(expect) if expect else "more input"
            got = "end of input" if tok is None else repr(tok)
            raise ParseError(f"expected {want}, got {got}")
        self.i += 1
        return tok

    def var(self):
        tok = self.take()
        if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", tok):
            raise ParseError(f"bad variable {tok!r}")
        return tok

    def _binder_ahead(self):
        """A quantifier is followed by one or more variables and a dot."""
        k = 1
        while self.peek(k) is not None and re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", self.peek(k)):
            k += 1
        return k > 1 and self.peek(k) == "."

    def parse(self):
        f = self.implies()
        if self.peek() is not None:
            raise ParseError(f"trailing input at {self.peek()!r}")
        return f

    def implies(self):
        left = self.disj()
        if self.peek() == "->":
            self.take()
            return Implies(left, self.implies())
        return left

    def disj(self):
        f = self.conj()
        while self.peek() == "|":
            self.take()
            f = Or(f, self.conj())
        return f

    def conj(self):
        f = self.unary()
        while self.peek() == "&":
            self.take()
            f = And(f, self.unary())
        return f

    def unary(self):
        tok = self.peek()
        if tok == "!":
            self.take()
            return Not(self.unary())
        if tok in ("E", "A", "exists", "forall") and self._binder_ahead():
            self.take()
            vs = [self.var()]
            while self.peek() != ".":
                vs.append(self.var())
            self.take(".")
            body = self.implies()
            q = Exists if tok in ("E", "exists") else Forall
            for v in reversed(vs):
                body = q(v, body)
            return body
        if tok == "(":
            self.take()
            f = self.implies()
            self.take(")")
            return f
        if tok == "edge" and self.peek(1) == "(":
            self.take()
            self.take("(")
            label = self.take()
            if label in (",", ")", "("):
                raise ParseError("missing edge label")
            self.take(",")
            x = self.var()
            self.take(",")
            y = self.var()
            self.take(")")
            return Edge(label, x, y)
        x = self.var()
        op = self.take()
        if op == "=":
            return Eq(x, self.var())
        if op == "!=":
            return Not(Eq(x, self.var()))
        raise ParseError(f"expected '=' after variable {x!r}, got {op!r}")


def parse_formula(text) -> Formula:
    return _Parser(text).parse()


# -- compilation -----------------------------------------------------------

@dataclass
class AssignmentAutomaton:
    """Automaton over convolutions of Foata words, one track per variable."""

    variables: tuple
    dfa: object

    def accepts(self, assignment):
        words = [assignment[v].steps if isinstance(assignment[v], Trace) else tuple(assignment[v])
                 for v in self.variables]
        return self.dfa.accepts(_tracks.convolve(*words))

    def is_empty(self):
        return self.dfa.is_empty()


class _Compiler:
    def __init__(self, pres, domain, budget):
        self.pres = pres
        self.alpha = pres.alphabet
        self.track = foata_dfa(self.alpha)
        self.budget = default_budget() if budget is None else budget
        self.universes = {}
        self.domain = domain

    def universe(self, k):
        if k not in self.universes:
            self.universes[k] = _tracks.universe(self.alpha, k, self.track, self.budget)
        return self.universes[k]

    def relation(self, label):
        rel = self.pres.relations.get(label)
        if rel is None:
            if label == "*":
                raise ReachabilityNotAutomatic(
                    "reachability relation not automatic for this system: "
                    "the presentation has no '*' relation")
            raise UnknownLabel(f"unknown label {label!r}; known labels: {self.pres.labels}")
        return rel

    def lift(self, res, target):
        vars_, dfa = res
        if tuple(vars_) == tuple(target):
            return dfa
        mapping = [target.index(v) for v in vars_]
        return _tracks.cylindrify(dfa, mapping, len(target), self.track, self.budget, "cylindrification")

    def order(self, vs, global_order):
        return tuple(sorted(set(vs), key=global_order.index))

    def run(self, f, global_order):
        try:
            return self._run(f, global_order)
        except BudgetExceeded as exc:
            if exc.what.startswith("subformula"):
                raise
            raise BudgetExceeded(f"subformula `{f}` ({exc.what})", exc.budget) from exc

    def _run(self, f, go):
        if isinstance(f, Edge):
            rel = self.relation(f.label)
            if f.x == f.y:
                return (f.x,), _tracks.cylindrify(rel.dfa, [0, 0], 1, self.track, self.budget)
            target = self.order((f.x, f.y), go)
            return target, self.lift(((f.x, f.y), rel.dfa), target)
        if isinstance(f, Eq):
            if f.x == f.y:
                return (f.x,), self.universe(1)
            target = self.order((f.x, f.y), go)
            return target, identity(self.alpha, self.track).dfa
        if isinstance(f, Not):
            vs, dfa = self.run(f.body, go)
            return vs, self.universe(len(vs)).difference(dfa, self.budget)
        if isinstance(f, Implies):
            return self.run(Or(Not(f.left), f.right), go)
        if isinstance(f, (And, Or)):
            lv, ld = self.run(f.left, go)
            rv, rd = self.run(f.right, go)
            target = self.order(lv + rv, go)
            ld = self.lift((lv, ld), target)
            rd = self.lift((rv, rd), target)
            if isinstance(f, And):
                return target, ld.intersect(rd, self.budget)
            return target, ld.union(rd, self.budget)
        if isinstance(f, Forall):
            return self.run(Not(Exists(f.var, Not(f.body))), go)
        if isinstance(f, Exists):
            vs, dfa = self.run(f.body, go)
            if self.domain is not None:
                dv = (f.var,)
                target = self.order(vs + dv, go)
                dfa = self.lift((vs, dfa), target).intersect(self.lift((dv, self.domain), target))
                vs = target
            if f.var not in vs:
                return vs, dfa
            idx = vs.index(f.var)
            out = _tracks.project(dfa, idx, self.budget)
            return vs[:idx] + vs[idx + 1:], out
        raise TypeError(f"not a formula: {f!r}")


def incident_vertices(pres):
    """1-track automaton of vertices incident to at least one edge."""
    alpha = pres.alphabet
    acc = None
    for rel in pres.relations.values():
        for side in (project_left(rel), project_right(rel)):
            acc = side if acc is None else acc.union(side)
    if acc is None:
        from .automata import Dfa, Domain
        acc = Dfa.empty(Domain.steps(alpha, empty=False))
    return _tracks.track1(acc, alpha).minimize()


def compile_formula(f, pres, var_order=None, domain=None, budget=None) -> AssignmentAutomaton:
    """Automaton of satisfying assignments of the free variables of f.

    ``domain`` relativizes quantifiers: None ranges over all Foata words,
    "incident" over vertices incident to some edge.
    """
    g = rename_apart(f)
    fv = free_vars(g)
    order = list(var_order) if var_order is not None else list(fv)
    for v in fv:
        if v not in order:
            order.append(v)
    bound = []

    def collect(h):
        if isinstance(h, (Exists, Forall)):
            bound.append(h.var)
            collect(h.body)
        elif isinstance(h, Not):
            collect(h.body)
        elif isinstance(h, (And, Or, Implies)):
            collect(h.left)
            collect(h.right)

    collect(g)
    global_order = order + [v for v in bound if v not in order]
    if domain == "incident":
        domain = incident_vertices(pres)
    comp = _Compiler(pres, domain, budget)
    vs, dfa = comp.run(g, global_order)
    target = tuple(order)
    if tuple(vs) != target:
        dfa = comp.lift((vs, dfa), target)
        if domain is not None:
            for v in target:
                if v not in vs:
                    dfa = dfa.intersect(comp.lift(((v,), domain), target))
    return AssignmentAutomaton(target, dfa)


def decide(sentence, pres, domain=None, budget=None) -> bool:
    if isinstance(sentence, str):
        sentence = parse_formula(sentence)
    if free_vars(sentence):
        raise ParseError(f"not a sentence: free variables {free_vars(sentence)}")
    aut = compile_formula(sentence, pres, domain=domain, budget=budget)
    return aut.dfa.initial in aut.dfa.finals


def witness(f, pres, var_order=None, domain=None, budget=None):
    """Length-lexicographically least satisfying assignment, or None."""
    if isinstance(f, str):
        f = parse_formula(f)
    aut = compile_formula(f, pres, var_order, domain, budget)
    word = aut.dfa.shortest_word()
    if word is None:
        return None
    tracks = _tracks.deconvolve(word, len(aut.variables))
    return {v: Trace(t, pres.alphabet) for v, t in zip(aut.variables, tracks)}


def holds(f, pres, assignment, domain=None, budget=None) -> bool:
    """Evaluate f under an assignment of traces to its free variables."""
    if isinstance(f, str):
        f = parse_formula(f)
    aut = compile_formula(f, pres, list(assignment), domain, budget)
    return aut.accepts(assignment)
