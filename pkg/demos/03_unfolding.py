"""Unfolding a concurrent automaton, then reading an event structure off it.

Run: python3 demos/03_unfolding.py
"""

from rtlgraphs import DependenceAlphabet, RecTraceLang, compile_system, decide
from rtlgraphs.fologic import parse_formula
from rtlgraphs.library import concurrent_builtin
from rtlgraphs.traces import Trace
from rtlgraphs.unfolding import EventStructure, unfold_rtl

# The grid with an extra c-transition; c depends on both a and b.
aut = concurrent_builtin("grid-tree-final")
print("automaton checks:", aut.validate() or "ok")
pres = compile_system(unfold_rtl(aut))
print("labels:", pres.labels)
for text in ("A x. E y. edge(c,x,y)",
             "E x. edge(f,x,x)",
             "A x. E y. edge(*,x,y) & edge(f,y,y)",
             "E x. edge(f,x,x) & !(E y. edge(c,y,x))"):
    print(f"  {decide(parse_formula(text), pres)!s:5}  {text}")

# Event structure of the even-a language with commuting a and b.
ind = DependenceAlphabet.full_independence("ab")
es = EventStructure(RecTraceLang.from_regex(ind, "(b*ab*a)*b*"))
print("\nevent structure of (b*ab*a)*b* with a I b")
for word in ("a", "ab", "aa", "aab"):
    print(f"  prime {word:4}: {es.query('prime', word)}")
print("  a <= aa:", es.query("le", "a", "aa"))
print("  a # b  :", es.query("conflict", "a", "b"))

dep = DependenceAlphabet.full_dependence("ab")
es = EventStructure(RecTraceLang.from_regex(dep, "(ab)*"))
print("\nevent structure of (ab)* with a D b")
print("  le a ab:", es.query("le", "a", "ab"), " label b of ab:", es.query("label", "ab", letter="b"))
print("  conflict a b:", es.query("conflict", Trace.of(dep, "a"), Trace.of(dep, "b")))
