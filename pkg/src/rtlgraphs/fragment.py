"""Finite explicit pieces of infinite graphs, with DOT export."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class GraphFragment:
    """Explicit vertices and labelled edges.

    ``frontier`` holds vertices whose out-edges were not explored;
    ``truncated`` is set when exploration stopped with a nonempty frontier.
    """

    vertices: list = field(default_factory=list)
    edges: set = field(default_factory=set)
    frontier: set = field(default_factory=set)
    truncated: bool = False
    depth: dict = field(default_factory=dict)

    def __post_init__(self):
        vs = set(self.vertices)
        for s, _, t in self.edges:
            if s not in vs or t not in vs:
                raise ValueError(f"edge {s!r} -> {t!r} references an absent vertex")

    def out_edges(self, v):
        return sorted(((lab, t) for s, lab, t in self.edges if s == v), key=repr)

    def adjacency(self):
        out = {v: [] for v in self.vertices}
        inc = {v: [] for v in self.vertices}
        for s, lab, t in self.edges:
            out[s].append((lab, t))
            inc[t].append((lab, s))
        return out, inc

    def labels(self):
        return sorted({lab for _, lab, _ in self.edges})

    def to_json(self, name=str):
        return {
            "vertices": [name(v) for v in self.vertices],
            "edges": sorted([name(s), lab, name(t)] for s, lab, t in self.edges),
            "frontier": sorted(name(v) for v in self.frontier),
            "truncated": self.truncated,
        }

    @classmethod
    def from_json(cls, data):
        return cls(
            vertices=list(data["vertices"]),
            edges={(s, lab, t) for s, lab, t in data["edges"]},
            frontier=set(data.get("frontier", [])),
            truncated=bool(data.get("truncated", False)),
        )

    def to_dot(self, name=str, highlight=None):
        """DOT text; highlighted vertices (default: the frontier) are double-circled."""
        marked = self.frontier if highlight is None else set(highlight)
        ids = {v: f"n{i}" for i, v in enumerate(self.vertices)}
        lines = ["digraph G {", "  node [shape=circle];"]
        for v in self.vertices:
            shape = ' shape=doublecircle' if v in marked else ""
            label = name(v).replace('"', '\\"')
            lines.append(f'  {ids[v]} [label="{label}"{shape}];')
        for s, lab, t in sorted(self.edges, key=repr):
            lines.append(f'  {ids[s]} -> {ids[t]} [label="{lab}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"
