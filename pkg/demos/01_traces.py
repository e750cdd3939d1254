"""Traces, Foata normal form and trace-closed languages.

Run: python3 demos/01_traces.py
"""

from rtlgraphs import DependenceAlphabet, RecTraceLang, foata_normalize, is_trace_closed, trace_equiv
from rtlgraphs.automata import regex_dfa
from rtlgraphs.library import example1_alphabet
from rtlgraphs.traces import is_prime, maximal_letters

alpha = example1_alphabet()
print("alphabet:", alpha.letters, "independent pairs:",
      sorted("".join(sorted(p)) for p in alpha.independent))

# Commuting neighbours collapse into steps; the result is the same for every linearization.
for word in ("acbdab", "cabdab", "cadbab"):
    print(f"  {word:8} -> {foata_normalize(alpha, word)}")
print("acbdab ~ cadbab:", trace_equiv(alpha, "acbdab", "cadbab"))
print("acbdab ~ acbdba:", trace_equiv(alpha, "acbdab", "acbdba"))

t = foata_normalize(alpha, "acbdab")
print(f"maximal letters of {t}: {sorted(maximal_letters(t))}, prime: {is_prime(t)}")

# A regex over independent letters need not describe a union of whole classes.
ind = DependenceAlphabet.full_independence("ab")
for regex in ("(ab+ba)*", "(b*ab*a)*b*"):
    closed = is_trace_closed(ind, regex_dfa(ind, regex))
    print(f"{regex:12} trace-closed under aIb: {closed}")
