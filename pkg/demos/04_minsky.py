"""Two-counter machines as RTL systems.

A configuration (k, c1, c2) is the trace A^c1 B^c2 a^c1 b^c2 k.  Rewriting
follows the machine, so halting is a reachability question, and that is
exactly what first-order logic over the presentation cannot express.

Run: python3 demos/04_minsky.py
"""

from rtlgraphs import ReachabilityNotAutomatic, compile_system, decide
from rtlgraphs.library import MINSKY, minsky
from rtlgraphs.minsky import compile_minsky, encode, run_minsky

for name in sorted(MINSKY):
    print(f"{name:9} {run_minsky(minsky(name), budget=2000)}")

system, sentence = compile_minsky(minsky("three"))
alpha = system.alphabet
print("\nconfiguration (2, 1, 2) is", encode(alpha, (2, 1, 2)))
print("halting sentence:", sentence)
try:
    decide(sentence, compile_system(system))
except ReachabilityNotAutomatic as exc:
    print("refused:", exc)

m = minsky("three")
print("literal independence:", run_minsky(m, budget=200, literal=True))
