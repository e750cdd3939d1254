"""Ground term rewriting: configuration graphs, graph trees, decomposition by size.

Terms are nested tuples ``(symbol, child1, ..., childn)``; a constant is a
1-tuple.  Positions are tuples of 1-based child indices, the root being ().
"""

from __future__ import annotations

import hashlib
import re
from collections import defaultdict
from dataclasses import dataclass, field

import networkx as nx

from .errors import InvariantViolation, ParseError
from .fragment import GraphFragment

EXACT_LIMIT = 12


# -- terms -------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:([A-Za-z0-9_⊥₀-₉']+)|(.))")


def parse_term(text):
    """Prefix notation: ``c(bot1,s2(bot2))``."""
    toks = []
    for m in _TOKEN.finditer(text):
        if m.group(1):
            toks.append(m.group(1))
        elif m.group(2) and not m.group(2).isspace():
            toks.append(m.group(2))
    pos = 0

    def term():
        nonlocal pos
        if pos >= len(toks) or toks[pos] in "(),":
            raise ParseError(f"expected a symbol in term {text!r}")
        sym = toks[pos]
        pos += 1
        kids = []
        if pos < len(toks) and toks[pos] == "(":
            pos += 1
            kids.append(term())
            while pos < len(toks) and toks[pos] == ",":
                pos += 1
                kids.append(term())
            if pos >= len(toks) or toks[pos] != ")":
                raise ParseError(f"unbalanced parentheses in term {text!r}")
            pos += 1
        return (sym, *kids)

    t = term()
    if pos != len(toks):
        raise ParseError(f"trailing input in term {text!r}")
    return t


def term_str(t):
    if len(t) == 1:
        return t[0]
    return f"{t[0]}({','.join(term_str(k) for k in t[1:])})"


def size(t):
    return 1 + sum(size(k) for k in t[1:])


def term_key(t):
    """Length-lexicographic order on terms."""
    return (size(t), term_str(t))


def positions(t, prefix=()):
    yield prefix
    for i, k in enumerate(t[1:], start=1):
        yield from positions(k, prefix + (i,))


def subterm(t, p):
    for i in p:
        t = t[i]
    return t


def replace(t, p, s):
    if not p:
        return s
    i = p[0]
    return t[:i] + (replace(t[i], p[1:], s),) + t[i + 1:]


def is_prefix(u, v):
    return v[:len(u)] == u


def check_term(t, ranked):
    sym = t[0]
    if sym not in ranked:
        raise InvariantViolation(f"unknown symbol {sym!r}")
    if ranked[sym] != len(t) - 1:
        raise InvariantViolation(f"{sym} has arity {ranked[sym]}, used with {len(t) - 1} arguments")
    for k in t[1:]:
        check_term(k, ranked)


def pos_str(p):
    return "ε" if not p else "·".join(map(str, p))


# -- systems -----------------------------------------------------------------

@dataclass(frozen=True)
class GtrsRule:
    label: str
    lhs: tuple
    rhs: tuple


@dataclass
class Gtrs:
    ranked: dict
    labels: list
    rules: list
    initial: tuple

    def __post_init__(self):
        self.rules = [r if isinstance(r, GtrsRule) else GtrsRule(*r) for r in self.rules]
        check_term(self.initial, self.ranked)
        for r in self.rules:
            check_term(r.lhs, self.ranked)
            check_term(r.rhs, self.ranked)
            if r.lhs == r.rhs:
                raise InvariantViolation(f"rule {term_str(r.lhs)} -> itself is not allowed")
            if r.label not in self.labels:
                self.labels.append(r.label)

    @property
    def delta(self):
        """Largest size change of a single rewriting step."""
        return max((abs(size(r.rhs) - size(r.lhs)) for r in self.rules), default=0)

    def to_json(self):
        return {
            "ranked": dict(self.ranked),
            "labels": list(self.labels),
            "initial": term_str(self.initial),
            "rules": [{"label": r.label, "lhs": term_str(r.lhs), "rhs": term_str(r.rhs)} for r in self.rules],
        }

    @classmethod
    def from_json(cls, data):
        try:
            return cls(
                dict(data["ranked"]), list(data.get("labels", [])),
                [GtrsRule(r["label"], parse_term(r["lhs"]), parse_term(r["rhs"])) for r in data["rules"]],
                parse_term(data["initial"]),
            )
        except (KeyError, TypeError) as exc:
            raise ParseError(f"bad GTRS JSON: {exc}") from exc


def grid_gtrs():
    """Two unary towers under a binary root: c(s1^m(bot1), s2^n(bot2)) is (m, n)."""
    return Gtrs({"c": 2, "s1": 1, "bot1": 0, "s2": 1, "bot2": 0}, ["a", "b"],
                [GtrsRule("a", ("bot1",), ("s1", ("bot1",))), GtrsRule("b", ("bot2",), ("s2", ("bot2",)))],
                ("c", ("bot1",), ("bot2",)))


def semi_line_tree_gtrs():
    """s^n1 c s^n2 ... s^nk(x) is the vertex (n1, ..., nk) of the semi-line tree."""
    return Gtrs({"x": 0, "s": 1, "c": 1}, ["a", "c"],
                [GtrsRule("a", ("x",), ("s", ("x",))), GtrsRule("c", ("x",), ("c", ("x",)))],
                ("x",))


BUILTINS = {"grid": grid_gtrs, "semi-line-tree": semi_line_tree_gtrs}


def rewrite_edges(g: Gtrs, t):
    """All one-step rewrites of t as sorted (position, label, result) triples."""
    out = set()
    for p in positions(t):
        sub = subterm(t, p)
        for r in g.rules:
            if sub == r.lhs:
                out.add((p, r.label, replace(t, p, r.rhs)))
    return sorted(out, key=lambda e: (e[0], e[1], term_key(e[2])))


def incoming_positions(g: Gtrs, t):
    """Positions p where t|p is a right-hand side, i.e. t has an in-edge rewriting at p."""
    out = set()
    for p in positions(t):
        sub = subterm(t, p)
        for r in g.rules:
            if sub == r.rhs:
                out.add((p, r.label, replace(t, p, r.lhs)))
    return sorted(out, key=lambda e: (e[0], e[1], term_key(e[2])))


def incident_positions(g: Gtrs, t):
    """Positions at which t is incident to a rewriting, in either direction."""
    return sorted({p for p, _, _ in rewrite_edges(g, t)} | {p for p, _, _ in incoming_positions(g, t)})


def min_rewrite_position(g: Gtrs, t):
    """The incident position that is a prefix of every incident position, or None."""
    ps = incident_positions(g, t)
    for p in ps:
        if all(is_prefix(p, q) for q in ps):
            return p
    return None


def check_positions_comparable(g: Gtrs, t):
    """True when t has a least incident position (vacuously true with none)."""
    return not incident_positions(g, t) or min_rewrite_position(g, t) is not None


def explore(g: Gtrs, budget: int):
    """Breadth-first fragment of the configuration graph expanding at most ``budget`` terms.

    Each layer is processed in length-lexicographic order, so the result is
    a function of the budget alone.
    """
    if budget <= 0:
        raise ValueError("budget must be positive")
    depth = {g.initial: 0}
    order = [g.initial]
    edges = set()
    expanded = set()
    layer = [g.initial]
    while layer and len(expanded) < budget:
        found = set()
        for t in layer:
            if len(expanded) >= budget:
                break
            expanded.add(t)
            for _, lab, s in rewrite_edges(g, t):
                edges.add((t, lab, s))
                if s not in depth:
                    depth[s] = depth[t] + 1
                    found.add(s)
        layer = sorted(found, key=term_key)
        order.extend(layer)
    frontier = {t for t in order if t not in expanded}
    return GraphFragment(order, edges, frontier, bool(frontier), depth)


# -- graph trees -------------------------------------------------------------

def tree_of(graph: GraphFragment, p0, depth: int):
    """Fragment of tree(G, p0) with copies nested at most ``depth`` deep.

    Vertices are tuples of G-vertices: the last component is the position
    inside the current copy, the earlier ones name the vertices the copies
    hang from.  ``c`` must not already be an edge label of G.
    """
    if p0 not in set(graph.vertices):
        raise InvariantViolation(f"root {p0!r} is not a vertex of the graph")
    if "c" in graph.labels():
        raise InvariantViolation("label 'c' is reserved for copy edges")
    base = list(graph.vertices)
    vertices = []
    edges = set()
    frontier = set()
    level = [()]
    for k in range(depth + 1):
        nxt = []
        for u in level:
            for p in base:
                v = u + (p,)
                vertices.append(v)
                if p in graph.frontier:
                    frontier.add(v)
                if k < depth:
                    nxt.append(v)
                    edges.add((v, "c", v + (p0,)))
                else:
                    frontier.add(v)
            for s, lab, t in graph.edges:
                edges.add((u + (s,), lab, u + (t,)))
        level = nxt
    return GraphFragment(vertices, edges, frontier, bool(frontier), {v: len(v) - 1 for v in vertices})


def semi_line(n):
    """0 -a-> 1 -a-> ... -a-> n, with n unexplored."""
    return GraphFragment(list(range(n + 1)), {(i, "a", i + 1) for i in range(n)}, {n}, True)


def is_label_deterministic(frag: GraphFragment, label):
    seen = set()
    for s, lab, _ in frag.edges:
        if lab == label:
            if s in seen:
                return False
            seen.add(s)
    return True


# -- decomposition by size ---------------------------------------------------

@dataclass
class Component:
    vertices: list
    edges: set
    frontier: set
    signature: str
    exact: bool
    truncated: bool


@dataclass
class Decomposition:
    n: int
    delta: int
    removed: set
    components: list = field(default_factory=list)

    def signature_counts(self, include_truncated=False):
        counts = defaultdict(int)
        for c in self.components:
            if include_truncated or not c.truncated:
                counts[c.signature] += 1
        return dict(sorted(counts.items(), key=lambda kv: (-kv[1], kv[0])))


def _refine(nodes, colour, out_adj, in_adj):
    """Colour refinement to a stable partition; colours are canonical ints."""
    while True:
        sig = {v: (colour[v],
                   tuple(sorted((lab, colour[w]) for lab, w in out_adj[v])),
                   tuple(sorted((lab, colour[w]) for lab, w in in_adj[v])))
               for v in nodes}
        ranks = {s: i for i, s in enumerate(sorted(set(sig.values())))}
        new = {v: ranks[sig[v]] for v in nodes}
        if len(set(new.values())) == len(set(colour.values())):
            return new
        colour = new


def canonical_form(nodes, edges, marked):
    """Exact canonical encoding of a small edge-labelled digraph with marked vertices.

    Individualization-refinement without pruning: every discrete leaf is
    visited and the least encoding wins, so equal outputs mean isomorphic
    inputs.
    """
    nodes = list(nodes)
    out_adj = {v: [] for v in nodes}
    in_adj = {v: [] for v in nodes}
    for s, lab, t in edges:
        out_adj[s].append((lab, t))
        in_adj[t].append((lab, s))
    start = _refine(nodes, {v: int(v in marked) for v in nodes}, out_adj, in_adj)
    best = None

    def search(colour):
        nonlocal best
        cells = defaultdict(list)
        for v in nodes:
            cells[colour[v]].append(v)
        big = [c for c in sorted(cells) if len(cells[c]) > 1]
        if not big:
            idx = colour
            enc = (len(nodes),
                   tuple(sorted(idx[v] for v in nodes if v in marked)),
                   tuple(sorted((idx[s], lab, idx[t]) for s, lab, t in edges)))
            if best is None or enc < best:
                best = enc
            return
        cell = big[0]
        for v in cells[cell]:
            # split v off its cell, keeping the other colours' relative order
            bumped = {w: 2 * colour[w] + (1 if colour[w] == cell and w != v else 0) for w in nodes}
            search(_refine(nodes, bumped, out_adj, in_adj))

    search(start)
    return best


def signature(nodes, edges, marked):
    """("exact:<hash>", True) up to EXACT_LIMIT vertices, else a 1-WL hash and False."""
    if len(nodes) <= EXACT_LIMIT:
        enc = canonical_form(nodes, edges, marked)
        return "exact:" + hashlib.sha256(repr(enc).encode()).hexdigest()[:16], True
    labels = defaultdict(list)
    for s, lab, t in edges:
        labels[(s, t)].append(lab)
    g = nx.DiGraph()
    for v in nodes:
        g.add_node(v, fr=str(v in marked))
    for (s, t), labs in labels.items():
        g.add_edge(s, t, label=",".join(sorted(labs)))
    return "wl:" + nx.weisfeiler_lehman_graph_hash(g, node_attr="fr", edge_attr="label"), False


def decompose(g: Gtrs, n: int, budget: int, frag: GraphFragment = None):
    """Remove the edges touching terms smaller than n and split the rest into components.

    Each component carries its frontier (vertices also touched by a removed
    edge) and an isomorphism signature of the pair.  Components containing
    an unexplored vertex are flagged truncated.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    frag = explore(g, budget) if frag is None else frag
    small = {e for e in frag.edges if size(e[0]) < n or size(e[2]) < n}
    rest = frag.edges - small
    touched_small = {v for s, _, t in small for v in (s, t)}
    ug = nx.Graph()
    for s, _, t in rest:
        ug.add_edge(s, t)
    out = Decomposition(n, g.delta, small)
    comps = [sorted(c, key=term_key) for c in nx.connected_components(ug)]
    comps.sort(key=lambda c: term_key(c[0]))
    for comp in comps:
        vs = set(comp)
        es = {e for e in rest if e[0] in vs}
        fr = vs & touched_small
        sig, exact = signature(comp, es, fr)
        out.components.append(Component(comp, es, fr, sig, exact, bool(vs & frag.frontier)))
    return out


def fragment_isomorphic(f1: GraphFragment, f2: GraphFragment):
    """Labelled-digraph isomorphism of two explicit fragments (frontier ignored)."""
    def build(f):
        g = nx.MultiDiGraph()
        g.add_nodes_from(f.vertices)
        for s, lab, t in f.edges:
            g.add_edge(s, t, label=lab)
        return g
    return nx.is_isomorphic(build(f1), build(f2),
                            edge_match=nx.algorithms.isomorphism.categorical_multiedge_match("label", None))


# -- grid checks ---------------------------------------------------------------

def grid_violations(frag: GraphFragment, right="a", up="b"):
    """Ways in which the fragment fails to be a ball of the N x N grid.

    Coordinates are propagated from the first vertex; every edge must add
    one to the coordinate of its label, coordinates must be injective, and
    every expanded vertex must have exactly one out-edge per label, the
    in-degree of its grid point, and closed a/b squares.
    """
    step = {right: (1, 0), up: (0, 1)}
    out, inc = frag.adjacency()
    root = frag.vertices[0]
    coord = {root: (0, 0)}
    queue = [root]
    bad = []
    for v in queue:
        for lab, w in out[v]:
            if lab not in step:
                bad.append((v, f"label {lab}"))
                continue
            c = (coord[v][0] + step[lab][0], coord[v][1] + step[lab][1])
            if w not in coord:
                coord[w] = c
                queue.append(w)
            elif coord[w] != c:
                bad.append((w, "coordinates"))
    if len(set(coord.values())) != len(coord):
        bad.append((root, "coordinates not injective"))
    for s, _, t in frag.edges:
        if s == t:
            bad.append((s, "loop"))
    for v in frag.vertices:
        if v in frag.frontier:
            continue
        if v not in coord:
            bad.append((v, "unreachable"))
            continue
        if sorted(lab for lab, _ in out[v]) != sorted(step):
            bad.append((v, "out-degree"))
            continue
        x0, y0 = coord[v]
        if len(inc[v]) != (x0 > 0) + (y0 > 0):
            bad.append((v, "in-degree"))
        succ = dict(out[v])
        x, y = succ[right], succ[up]
        if x in frag.frontier or y in frag.frontier:
            continue
        if dict(out[x]).get(up) != dict(out[y]).get(right):
            bad.append((v, "square"))
    return bad


__all__ = [
    "parse_term", "term_str", "size", "positions", "subterm", "replace", "GtrsRule", "Gtrs",
    "grid_gtrs", "semi_line_tree_gtrs", "rewrite_edges", "incident_positions",
    "min_rewrite_position", "check_positions_comparable", "explore", "tree_of", "semi_line",
    "decompose", "Decomposition", "Component", "is_label_deterministic", "signature", "canonical_form", "grid_violations", "fragment_isomorphic",
]
