"""Named example alphabets, systems, machines and automata."""

from __future__ import annotations

from .errors import ParseError
from .minsky import MinskyMachine
from .rtl import RtlSystem, merge_relation
from .tracelang import LevelRegLang, RecTraceLang, foata_encoding
from .traces import DependenceAlphabet
from .unfolding import grid_automaton, residual_concurrent_automaton


def example1_alphabet():
    """{a,b,c,d} with a I c, b I d, c I d."""
    return DependenceAlphabet(tuple("abcd"), frozenset(frozenset(p) for p in ("ac", "bd", "cd")))


def alexbis():
    """The grid with f-loops on its diagonal."""
    alpha = DependenceAlphabet.full_independence("ab")
    full = RecTraceLang.full(alpha)
    eps = RecTraceLang.epsilon(alpha)
    sys = RtlSystem(alpha)
    sys.add(full, eps, RecTraceLang.from_traces(alpha, ["a"]), "a")
    sys.add(full, eps, RecTraceLang.from_traces(alpha, ["b"]), "b")
    sys.add(LevelRegLang.from_step_regex(alpha, "{a,b}*"), eps, eps, "f")
    return sys


def alex():
    """Three commuting letters; contexts [(abc)*] and [(abc)*(ac)*] are level-regular only."""
    alpha = DependenceAlphabet.full_independence("abc")
    eps = RecTraceLang.epsilon(alpha)
    cone = LevelRegLang.from_step_regex(alpha, "{a,b,c}*")
    tail = LevelRegLang.from_step_regex(alpha, "{a,b,c}*{a,c}*")
    sys = RtlSystem(alpha)
    sys.add(cone, eps, RecTraceLang.from_traces(alpha, ["abc"]), "a")
    sys.add(tail, RecTraceLang.from_traces(alpha, ["b"]), eps, "b")
    sys.add(tail, RecTraceLang.from_traces(alpha, ["ac"]), eps, "c")
    return sys


def soundness_alphabet():
    """a D b, b D c, a I c."""
    return DependenceAlphabet(tuple("abc"), frozenset({frozenset("ac")}))


def soundness_relation():
    """Merge relation of [ab]·([c] -> [ε]); its left track must be exactly {a}{b}{c}."""
    alpha = soundness_alphabet()
    return merge_relation(foata_encoding(RecTraceLang.from_traces(alpha, ["ab"])),
                          RecTraceLang.from_traces(alpha, ["c"]), RecTraceLang.epsilon(alpha))


MINSKY = {
    "inc-halt": "1: inc 1 2\n2: halt\n",
    "dec-loop": "1: dec 1 1 1\n2: halt\n",
    "three": "1: inc 2 2\n2: dec 2 3 1\n3: halt\n",
    "transfer": "1: inc 1 2\n2: inc 1 3\n3: dec 1 4 5\n4: inc 2 3\n5: halt\n",
}


def minsky(name):
    try:
        return MinskyMachine.parse(MINSKY[name])
    except KeyError:
        raise ParseError(f"unknown machine {name!r}; known: {sorted(MINSKY)}") from None


SYSTEMS = {"alexbis": alexbis, "alex": alex}


def regex_language(regex):
    """Recognizable language of a regex over its own letters, all mutually dependent."""
    letters = sorted({ch for ch in regex if ch.isalnum()})
    alpha = DependenceAlphabet.full_dependence(letters)
    return RecTraceLang.from_regex(alpha, regex)


def residual_builtin(regex):
    """Residual automaton of `regex_language(regex)`."""
    return residual_concurrent_automaton(regex_language(regex))


def concurrent_builtin(name):
    """"grid", "grid-tree", "grid-final", "grid-tree-final" or "residual:<regex>"."""
    if name.startswith("residual:"):
        return residual_builtin(name.split(":", 1)[1])
    table = {
        "grid": lambda: grid_automaton(),
        "grid-final": lambda: grid_automaton(finals=True),
        "grid-tree": lambda: grid_automaton(with_c=True),
        "grid-tree-final": lambda: grid_automaton(with_c=True, finals=True),
    }
    if name not in table:
        raise ParseError(f"unknown concurrent automaton {name!r}")
    return table[name]()
