"""Ground term rewriting: explore a configuration graph and split it into components.

Run: python3 demos/05_gtrs.py
"""

from rtlgraphs.gtrs import decompose, explore, grid_gtrs, grid_violations, semi_line_tree_gtrs, size, term_str

grid = grid_gtrs()
frag = explore(grid, 200)
print(f"grid: {len(frag.vertices)} terms, {len(frag.edges)} edges, truncated={frag.truncated}")
print("grid law violations:", grid_violations(frag) or "none")
origin = min(frag.vertices, key=size)
print("smallest term:", term_str(origin))

tree = semi_line_tree_gtrs()
tfrag = explore(tree, 400)
for n in range(6):
    d = decompose(tree, n, 400, frag=tfrag)
    sizes = sorted(len(c.vertices) for c in d.components)
    print(f"semi-line tree, n={n}: {len(d.components):2} components, frontier bound delta={d.delta},"
          f" smallest {sizes[0]} terms")

for n in range(3):
    d = decompose(grid, n, 200, frag=frag)
    print(f"grid, n={n}: {len(d.components)} component(s), truncated={[c.truncated for c in d.components]}")
