"""
Chordality and clique separator splits
======================================

Chordal graphs always admit a perfect elimination ordering, and every
connected non-complete chordal graph splits along a complete separator.
The splitter below cuts a chordal graph down to complete pieces.
"""

from graphcoherence import is_chordal, racg
from graphcoherence.decomposition import dirac_split, enumerate_separator_splits
from graphcoherence.labeled_graph import cycle_edges, path_edges

# the diamond: a square plus one diagonal; chordal, and the diagonal
# edge is exactly the separator Dirac's argument finds
diamond = racg(
    ["n", "w", "e", "s"],
    [("n", "w"), ("n", "e"), ("w", "e"), ("w", "s"), ("e", "s")],
)
res = is_chordal(diamond)
print("diamond chordal:", bool(res), "elimination order:", res.peo)
split = dirac_split(diamond)
print("separator:", split.separator, "sides:", split.left, split.right)
print()

# a plain cycle of length 5 is the smallest non-chordal graph up to
# adding chords; the checker hands back the offending cycle
ids = [f"v{i}" for i in range(5)]
pentagon = racg(ids, cycle_edges(ids))
res = is_chordal(pentagon)
print("pentagon chordal:", bool(res), "chordless cycle:", res.cycle)

# non-chordal graphs can still split, just not over cliques; list the
# separator splits in search order instead
for split in list(enumerate_separator_splits(pentagon))[:3]:
    print("  split", split.separator, "->", split.left, "|", split.right)
print()


def split_tree(G, depth=0):
    """Recursively split until every piece is complete."""
    pad = "  " * depth
    if G.is_complete():
        print(f"{pad}complete piece {G.vertices}")
        return
    s = dirac_split(G)
    print(f"{pad}cut on {s.separator}")
    split_tree(G.induced(s.left), depth + 1)
    split_tree(G.induced(s.right), depth + 1)


# a longer chordal graph: a path of triangles
ids = [f"t{i}" for i in range(7)]
edges = path_edges(ids) + [(ids[i], ids[i + 2]) for i in range(5)]
strip = racg(ids, edges)
print("triangle strip chordal:", bool(is_chordal(strip)))
split_tree(strip)
