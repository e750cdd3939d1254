"""Compile an RTL system to an automatic presentation and ask first-order questions.

The system is the grid over two commuting letters: rule a appends an a,
rule b appends a b, and rule f puts a loop on every trace whose Foata form
is a run of {a,b} steps (the diagonal).

Run: python3 demos/02_rtl_and_fo.py
"""

from rtlgraphs import brute_force_edges, compile_system, compiled_edges, decide, witness
from rtlgraphs.fologic import parse_formula
from rtlgraphs.library import alexbis

system = alexbis()
pres = compile_system(system)
for label in pres.labels:
    print(f"relation {label}: {pres.relation(label).dfa.num_states} states")

# The compiled automata and a brute-force rewrite agree on small traces.
bound = 4
same = compiled_edges(pres, bound) == brute_force_edges(system, bound)
print(f"edges up to {bound} letters agree with brute force: {same}")

sentences = [
    "A x. E y. edge(a,x,y)",                      # every vertex has an a-successor
    "A x y z. edge(a,x,y) & edge(a,x,z) -> y = z",  # a is functional
    "A x. edge(f,x,x) -> E y. edge(a,x,y) & !edge(f,y,y)",
    "E x. edge(f,x,x) & E y. edge(b,y,x) & edge(f,y,y)",
]
for text in sentences:
    print(f"  {decide(parse_formula(text), pres)!s:5}  {text}")

w = witness(parse_formula("edge(a,x,y) & edge(b,y,z) & edge(f,z,z)"), pres)
print("least witness:", {k: str(v) for k, v in w.items()})
