"""Brute-force reference implementations used by the tests.

None of these call the normal-form code they are checking: trace
equivalence goes through projections onto dependent pairs, FO goes through
explicit enumeration, reachability through plain BFS.
"""

import itertools
from collections import deque

from rtlgraphs.fologic import And, Edge, Eq, Exists, Forall, Implies, Not, Or


def projection_equivalent(alpha, u, v):
    """u ~ v iff they agree on letter counts and on every projection to a dependent pair."""
    if sorted(u) != sorted(v):
        return False
    for a, b in itertools.combinations(alpha.letters, 2):
        if alpha.dependent(a, b):
            keep = {a, b}
            if [x for x in u if x in keep] != [x for x in v if x in keep]:
                return False
    return True


def is_foata_word(alpha, steps):
    """Nonempty steps of pairwise independent letters, each letter of a step depending on the previous one."""
    for i, s in enumerate(steps):
        if not s:
            return False
        if any(not alpha.indep(x, y) for x, y in itertools.combinations(s, 2)):
            return False
        if i and not all(any(alpha.dependent(a, b) for a in steps[i - 1]) for b in s):
            return False
    return True


def linearize(steps):
    return tuple(a for s in steps for a in sorted(s))


def all_step_words(alpha, max_steps):
    for n in range(max_steps + 1):
        yield from itertools.product(alpha.steps, repeat=n)


def random_independent_swap(rng, alpha, word):
    spots = [i for i in range(len(word) - 1) if alpha.indep(word[i], word[i + 1])]
    if not spots:
        return word
    i = rng.choice(spots)
    w = list(word)
    w[i], w[i + 1] = w[i + 1], w[i]
    return tuple(w)


# -- explicit first-order evaluation -------------------------------------------------

def naive_eval(f, vertices, edges, env=None):
    """Evaluate f over an explicit graph; quantifiers range over ``vertices``."""
    env = env or {}
    if isinstance(f, Edge):
        return (env[f.x], f.label, env[f.y]) in edges
    if isinstance(f, Eq):
        return env[f.x] == env[f.y]
    if isinstance(f, Not):
        return not naive_eval(f.body, vertices, edges, env)
    if isinstance(f, And):
        return naive_eval(f.left, vertices, edges, env) and naive_eval(f.right, vertices, edges, env)
    if isinstance(f, Or):
        return naive_eval(f.left, vertices, edges, env) or naive_eval(f.right, vertices, edges, env)
    if isinstance(f, Implies):
        return (not naive_eval(f.left, vertices, edges, env)) or naive_eval(f.right, vertices, edges, env)
    if isinstance(f, Exists):
        return any(naive_eval(f.body, vertices, edges, {**env, f.var: v}) for v in vertices)
    if isinstance(f, Forall):
        return all(naive_eval(f.body, vertices, edges, {**env, f.var: v}) for v in vertices)
    raise TypeError(f)


# -- unfoldings ------------------------------------------------------------------------

def unfolding_oracle(aut, traces, max_letters):
    """Edges of the unfolding with reachability among the given traces, by direct runs."""
    from rtlgraphs.traces import Trace, concat, left_divide
    alpha = aut.alphabet
    reach = [t for t in traces if aut.run(t.word()) is not None and len(t) <= max_letters]
    reach_set = set(reach)
    out = set()
    for t in reach:
        for a in alpha.letters:
            u = concat(t, Trace.of(alpha, (a,)))
            if u in reach_set:
                out.add((t, a, u))
        if aut.run(t.word()) in aut.finals:
            out.add((t, "f", t))
        for u in reach:
            if left_divide(t, u) is not None:
                out.add((t, "*", u))
    return out


def bfs_reachability(edges, vertices):
    """Reflexive-transitive closure of the union of the edges, restricted to ``vertices``."""
    succ = {v: set() for v in vertices}
    for s, _, t in edges:
        if s in succ and t in succ:
            succ[s].add(t)
    out = set()
    for v in vertices:
        seen = {v}
        queue = deque([v])
        while queue:
            x = queue.popleft()
            for y in succ[x]:
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        out.update((v, w) for w in seen)
    return out
