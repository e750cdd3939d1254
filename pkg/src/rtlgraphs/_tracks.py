"""k-track padded convolutions of step words.

A column is a k-tuple whose entries are nonempty steps or the pad mark.
Each track pads only at its tail and the all-pad column never occurs.
"""

from __future__ import annotations

import itertools

from .automata import PAD, Dfa, Domain, Nfa, build_dfa
from .errors import DomainMismatch

PADDED = -1
_ALLPAD = object()


def convolve(*words):
    n = max((len(w) for w in words), default=0)
    return tuple(tuple(w[i] if i < len(w) else PAD for w in words) for i in range(n))


def deconvolve(word, k):
    tracks = [[] for _ in range(k)]
    for col in word:
        for j, x in enumerate(col):
            if x != PAD:
                tracks[j].append(x)
    return [tuple(t) for t in tracks]


def track1(dfa, alpha):
    """View a step-word DFA as a 1-track automaton."""
    return Dfa(Domain.padded(alpha, 1), [{(s,): t for s, t in row.items()} for row in dfa.delta],
               dfa.initial, dfa.finals)


def untrack(dfa, alpha):
    if dfa.domain.kind != "tracks" or dfa.domain.tracks != 1:
        raise DomainMismatch("expected a 1-track automaton")
    return Dfa(Domain.steps(alpha, empty=False), [{c[0]: t for c, t in row.items()} for row in dfa.delta],
               dfa.initial, dfa.finals)


def eps0(alpha, accept=True):
    dom = Domain.padded(alpha, 0)
    return Dfa.epsilon(dom) if accept else Dfa.empty(dom)


def cylindrify(aut, mapping, k, track_dfa, budget=None, what="cylindrification"):
    """Embed an m-track automaton into k tracks.

    Old track j is read from new track ``mapping[j]``; two old tracks mapped
    to the same new track are forced equal.  Every new track must spell a
    word of ``track_dfa``.
    """
    alpha = aut.domain.alphabet if aut.domain.alphabet is not None else track_dfa.domain.alphabet
    mapped = set(mapping)
    free = [p for p in range(k) if p not in mapped]
    tdelta = track_dfa.delta
    tfinal = track_dfa.finals

    def track_moves(state, v):
        if v == PAD:
            return PADDED if state == PADDED or state in tfinal else None
        if state == PADDED:
            return None
        return tdelta[state].get(v)

    def free_options(state):
        opts = []
        if state == PADDED or state in tfinal:
            opts.append((PAD, PADDED))
        if state != PADDED:
            opts.extend(tdelta[state].items())
        return opts

    def succ(key):
        q, ts = key
        cands = list(aut.delta[q].items())
        if q in aut.finals:
            cands.append((_ALLPAD, q))
        free_opts = [free_options(ts[p]) for p in free]
        for oldcol, q2 in cands:
            assign = [None] * k
            ok = True
            for j, pos in enumerate(mapping):
                v = PAD if oldcol is _ALLPAD else oldcol[j]
                if assign[pos] is not None and assign[pos] != v:
                    ok = False
                    break
                assign[pos] = v
            if not ok:
                continue
            new_ts = list(ts)
            for pos in mapped:
                nt = track_moves(ts[pos], assign[pos])
                if nt is None:
                    ok = False
                    break
                new_ts[pos] = nt
            if not ok:
                continue
            for combo in itertools.product(*free_opts):
                for (v, nt), pos in zip(combo, free):
                    assign[pos] = v
                    new_ts[pos] = nt
                if all(v == PAD for v in assign):
                    continue
                yield tuple(assign), (q2, tuple(new_ts))

    def final(key):
        q, ts = key
        return q in aut.finals and all(t == PADDED or t in tfinal for t in ts)

    init = (aut.initial, tuple(track_dfa.initial for _ in range(k)))
    return build_dfa(Domain.padded(alpha, k), init, succ, final, budget, what).minimize()


def universe(alpha, k, track_dfa, budget=None):
    return cylindrify(eps0(alpha), [], k, track_dfa, budget, "universe")


def project(aut, idx, budget=None, what="projection"):
    """Existentially drop track ``idx``; trailing columns that become all-pad are absorbed."""
    k = aut.domain.tracks
    alpha = aut.domain.alphabet
    rows = []
    tail_rev = [[] for _ in aut.delta]
    for q, row in enumerate(aut.delta):
        nrow = {}
        for col, t in row.items():
            ncol = col[:idx] + col[idx + 1:]
            if all(x == PAD for x in ncol):
                tail_rev[t].append(q)
            else:
                nrow.setdefault(ncol, set()).add(t)
        rows.append(nrow)
    finals = set(aut.finals)
    stack = list(finals)
    while stack:
        q = stack.pop()
        for p in tail_rev[q]:
            if p not in finals:
                finals.add(p)
                stack.append(p)
    nfa = Nfa(Domain.padded(alpha, k - 1), rows, {aut.initial}, finals)
    return nfa.determinize(budget, what)


def restrict_track(aut, idx, lang, budget=None):
    """Keep the words whose track ``idx`` spells a word of ``lang`` (a step DFA)."""
    ld = lang.delta

    def succ(key):
        q, l = key
        for col, q2 in aut.delta[q].items():
            v = col[idx]
            if v == PAD:
                if l == PADDED or l in lang.finals:
                    yield col, (q2, PADDED)
            elif l != PADDED:
                l2 = ld[l].get(v)
                if l2 is not None:
                    yield col, (q2, l2)

    return build_dfa(aut.domain, (aut.initial, lang.initial), succ,
                     lambda k: k[0] in aut.finals and (k[1] == PADDED or k[1] in lang.finals),
                     budget, "restriction").minimize()


def permute(aut, order):
    """Reorder tracks: new track i is old track ``order[i]``."""
    rows = [{tuple(col[j] for j in order): t for col, t in row.items()} for row in aut.delta]
    return Dfa(aut.domain, rows, aut.initial, aut.finals).minimize()


def bounded_tuples(aut, max_letters):
    """All accepted tuples whose tracks each hold at most max_letters letters."""
    k = aut.domain.tracks
    out = []
    live = aut.coreachable()

    def dfs(q, cols, counts):
        if q in aut.finals:
            out.append(deconvolve(cols, k))
        for col, t in aut.delta[q].items():
            if t not in live:
                continue
            nc = tuple(c + (len(x) if x != PAD else 0) for c, x in zip(counts, col))
            if max(nc) <= max_letters:
                cols.append(col)
                dfs(t, cols, nc)
                cols.pop()

    if aut.initial in live:
        dfs(aut.initial, [], (0,) * k)
    return out
