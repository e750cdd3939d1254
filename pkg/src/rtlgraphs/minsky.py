"""Two-counter Minsky machines encoded as RTL systems.

Configuration (k, c1, c2) is the trace [A B a^c1 b^c2 k], where ``A`` and
``B`` mark the bottoms of the two counters and instruction numbers are the
letters "1".."n".  Counter 1 lives on the letters {A, a}, counter 2 on
{B, b}; the two tracks commute, everything else is dependent.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import ParseError
from .fologic import Edge, conj, exists
from .rtl import RtlSystem, compile_system, successors
from .tracelang import RecTraceLang
from .traces import DependenceAlphabet, Trace

BOTTOM = {1: "A", 2: "B"}
UNIT = {1: "a", 2: "b"}


@dataclass(frozen=True)
class Inc:
    counter: int
    target: int


@dataclass(frozen=True)
class Dec:
    counter: int
    target: int
    zero_target: int


@dataclass(frozen=True)
class Halt:
    pass


@dataclass(frozen=True)
class MinskyMachine:
    """Instructions 1..n; instruction n, and only it, halts."""

    instructions: tuple

    def __post_init__(self):
        ins = tuple(self.instructions)
        object.__setattr__(self, "instructions", ins)
        n = len(ins)
        if n == 0 or not isinstance(ins[-1], Halt):
            raise ParseError("the last instruction must be halt")
        for k, op in enumerate(ins[:-1], start=1):
            if isinstance(op, Halt):
                raise ParseError(f"instruction {k}: only the last instruction may halt")
            if op.counter not in (1, 2):
                raise ParseError(f"instruction {k}: counter must be 1 or 2")
            targets = (op.target,) if isinstance(op, Inc) else (op.target, op.zero_target)
            if any(not 1 <= j <= n for j in targets):
                raise ParseError(f"instruction {k}: jump target outside 1..{n}")

    @property
    def length(self):
        return len(self.instructions)

    @classmethod
    def parse(cls, text):
        """Lines ``k: inc c j``, ``k: dec c j l``, ``n: halt``; '#' starts a comment."""
        found = {}
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            m = re.fullmatch(r"(\d+)\s*:\s*(inc|dec|halt)((?:\s+\d+)*)", line)
            if not m:
                raise ParseError(f"line {lineno}: cannot parse {raw.strip()!r}")
            k, op, args = int(m.group(1)), m.group(2), [int(x) for x in m.group(3).split()]
            want = {"inc": 2, "dec": 3, "halt": 0}[op]
            if len(args) != want:
                raise ParseError(f"line {lineno}: {op} takes {want} arguments")
            if k in found:
                raise ParseError(f"line {lineno}: instruction {k} defined twice")
            found[k] = Inc(*args) if op == "inc" else Dec(*args) if op == "dec" else Halt()
        if sorted(found) != list(range(1, len(found) + 1)):
            raise ParseError("instructions must be numbered 1..n without gaps")
        return cls(tuple(found[k] for k in sorted(found)))

    def to_text(self):
        lines = []
        for k, op in enumerate(self.instructions, start=1):
            if isinstance(op, Inc):
                lines.append(f"{k}: inc {op.counter} {op.target}")
            elif isinstance(op, Dec):
                lines.append(f"{k}: dec {op.counter} {op.target} {op.zero_target}")
            else:
                lines.append(f"{k}: halt")
        return "\n".join(lines) + "\n"

    def step(self, config):
        k, c1, c2 = config
        op = self.instructions[k - 1]
        if isinstance(op, Halt):
            return None
        counters = [c1, c2]
        if isinstance(op, Inc):
            counters[op.counter - 1] += 1
            return (op.target, *counters)
        if counters[op.counter - 1] > 0:
            counters[op.counter - 1] -= 1
            return (op.target, *counters)
        return (op.zero_target, *counters)

    def simulate(self, max_steps):
        """Direct run from (1,0,0): number of steps to halt, or None."""
        config = (1, 0, 0)
        for steps in range(max_steps + 1):
            if config[0] == self.length:
                return steps
            config = self.step(config)
        return None


def minsky_alphabet(n, literal=False):
    """Letters A, B, a, b, 1..n.

    With ``literal`` only a I b and A I B; by default the whole counter
    tracks {A, a} and {B, b} commute, which the zero tests need.
    """
    letters = ("A", "B", "a", "b") + tuple(str(k) for k in range(1, n + 1))
    if literal:
        ind = {frozenset("ab"), frozenset("AB")}
    else:
        ind = {frozenset(p) for p in (("a", "b"), ("A", "B"), ("A", "b"), ("a", "B"))}
    return DependenceAlphabet(letters, frozenset(ind))


def encode(alpha, config):
    k, c1, c2 = config
    return Trace.of(alpha, ("A", "B") + ("a",) * c1 + ("b",) * c2 + (str(k),))


def halting_sentence():
    """∃x∃y (x -i-> x ∧ y -f-> y ∧ x -*-> y)."""
    return exists(["x", "y"], conj(Edge("i", "x", "x"), Edge("f", "y", "y"), Edge("*", "x", "y")))


def compile_minsky(m: MinskyMachine, literal=False):
    """(RTL system over labels R, i, f; the halting sentence)."""
    n = m.length
    alpha = minsky_alphabet(n, literal)
    full = RecTraceLang.full(alpha)
    eps = RecTraceLang.epsilon(alpha)

    def lang(*words):
        return RecTraceLang.from_traces(alpha, [tuple(w) for w in words])

    sys = RtlSystem(alpha, labels=["R", "i", "f"])
    for k, op in enumerate(m.instructions[:-1], start=1):
        here = str(k)
        if isinstance(op, Inc):
            sys.add(full, lang([here]), lang([UNIT[op.counter], str(op.target)]), "R")
        else:
            sys.add(full, lang([UNIT[op.counter], here]), lang([str(op.target)]), "R")
            bot = BOTTOM[op.counter]
            sys.add(full, lang([bot, here]), lang([bot, str(op.zero_target)]), "R")
    sys.add(lang(["A", "B", "1"]), eps, eps, "i")
    ends_in_n = RecTraceLang.from_regex(alpha, "(" + "+".join(_atom(a) for a in alpha.letters)
                                        + ")*" + _atom(str(n)))
    sys.add(ends_in_n, eps, eps, "f")
    return sys, halting_sentence()


def _atom(letter):
    return letter if len(letter) == 1 else f"<{letter}>"


@dataclass
class HaltingVerdict:
    halts: bool
    depth: int | None
    explored: int
    exhausted: bool

    def __str__(self):
        if self.halts:
            return f"halts at depth {self.depth}"
        return "no halt within budget"


def run_minsky(m: MinskyMachine, budget=10_000, literal=False, pres=None):
    """Breadth-first search along R edges from the initial configuration.

    Stops at the first vertex carrying an f-loop.  ``exhausted`` records
    that the whole reachable part was explored before the budget ran out.
    """
    if pres is None:
        sys, _ = compile_minsky(m, literal)
        pres = compile_system(sys)
    alpha = pres.alphabet
    start = encode(alpha, (1, 0, 0))
    f_rel = pres.relations["f"]
    depth = {start: 0}
    queue = [start]
    head = 0
    while head < len(queue) and head < budget:
        v = queue[head]
        head += 1
        if f_rel.contains(v, v):
            return HaltingVerdict(True, depth[v], head, False)
        for w in successors(pres, v, "R").dfa.iter_words():
            t = Trace(w, alpha)
            if t not in depth:
                depth[t] = depth[v] + 1
                queue.append(t)
    return HaltingVerdict(False, None, head, head == len(queue))


__all__ = [
    "Inc", "Dec", "Halt", "MinskyMachine", "minsky_alphabet", "encode", "compile_minsky",
    "halting_sentence", "run_minsky", "HaltingVerdict",
]
