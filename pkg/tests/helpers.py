"""Shared oracles and graph builders for the test suite.

Everything here is deliberately independent of the package internals:
brute-force chordality, brute-force isomorphism, concrete permutation
models for reflection group orders, and random graph generators.
"""

from __future__ import annotations

import itertools
import random

from graphcoherence import (
    AbelianGroupLabel,
    LabeledGraph,
    Z,
    Z2,
    artin_graph,
    coxeter_graph,
    cyclic,
    cycle_edges,
    graph_product_graph,
    path_edges,
    raag,
    racg,
)

# ---------------------------------------------------------------------------
# brute-force chordality: scan every vertex subset of size >= 4 and check
# whether it induces a chordless cycle (2-regular and connected).


def brute_force_chordless_cycle(G: LabeledGraph) -> tuple[str, ...] | None:
    n = G.n
    for size in range(4, n + 1):
        for subset in itertools.combinations(range(n), size):
            inside = set(subset)
            degs = {}
            ok = True
            for v in subset:
                d = sum(1 for w in G.neighbors(G.vertices[v]) if G.index(w) in inside)
                if d != 2:
                    ok = False
                    break
                degs[v] = d
            if not ok:
                continue
            # 2-regular induced subgraph is a disjoint union of cycles;
            # connectivity makes it a single chordless cycle.
            start = subset[0]
            seen = {start}
            stack = [start]
            while stack:
                v = stack.pop()
                for w in G.neighbors(G.vertices[v]):
                    wi = G.index(w)
                    if wi in inside and wi not in seen:
                        seen.add(wi)
                        stack.append(wi)
            if len(seen) == size:
                order = [subset[0]]
                prev = None
                while len(order) < size:
                    cur = order[-1]
                    for w in G.neighbors(G.vertices[cur]):
                        wi = G.index(w)
                        if wi in inside and wi != prev:
                            prev = cur
                            order.append(wi)
                            break
                return tuple(G.vertices[i] for i in order)
    return None


def brute_force_is_chordal(G: LabeledGraph) -> bool:
    return brute_force_chordless_cycle(G) is None


# ---------------------------------------------------------------------------
# brute-force labeled-graph isomorphism (small n only).


def brute_force_isomorphic(G: LabeledGraph, H: LabeledGraph) -> bool:
    if G.n != H.n or G.m != H.m:
        return False
    if sorted(g.key() for g in G.groups) != sorted(h.key() for h in H.groups):
        return False
    gv, hv = G.vertices, H.vertices
    for perm in itertools.permutations(range(H.n)):
        if any(G.groups[i].key() != H.groups[perm[i]].key() for i in range(G.n)):
            continue
        good = True
        for i in range(G.n):
            for j in range(i + 1, G.n):
                a = G.edge_label(gv[i], gv[j])
                b = H.edge_label(hv[perm[i]], hv[perm[j]])
                if a != b:
                    good = False
                    break
            if not good:
                break
        if good:
            return True
    return False


# ---------------------------------------------------------------------------
# random generators (plain random module, caller passes a seeded Random).

GROUP_POOL = (Z, Z2, cyclic(3), cyclic(6), AbelianGroupLabel(rank=1, torsion=(2,)))


def random_labeled_graph(
    rng: random.Random,
    max_n: int,
    groups: tuple[AbelianGroupLabel, ...] = (Z2,),
    labels: tuple[int, ...] = (2,),
    min_n: int = 1,
) -> LabeledGraph:
    n = rng.randint(min_n, max_n)
    ids = [f"v{i}" for i in range(n)]
    verts = [(v, rng.choice(groups)) for v in ids]
    edges = []
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < 0.45:
                edges.append((ids[i], ids[j], rng.choice(labels)))
    return LabeledGraph.build(verts, edges)


def random_chordal_graph(rng: random.Random, max_n: int, min_n: int = 1) -> LabeledGraph:
    """Grow a chordal graph by repeatedly attaching a new vertex to a
    clique inside the existing neighborhood of a random vertex."""

    n = rng.randint(min_n, max_n)
    ids = [f"v{i}" for i in range(n)]
    adj: dict[str, set[str]] = {ids[0]: set()}
    for v in ids[1:]:
        anchor = rng.choice(sorted(adj))
        base = sorted(adj[anchor] | {anchor})
        k = rng.randint(0, len(base))
        clique = []
        for u in rng.sample(base, k):
            if all(x in adj[u] for x in clique):
                clique.append(u)
        if rng.random() < 0.9 and anchor not in clique:
            clique.append(anchor)
        adj[v] = set()
        for u in clique:
            adj[u].add(v)
            adj[v].add(u)
    edges = sorted(
        (u, w) for u in ids for w in adj[u] if u < w
    )
    return racg(ids, edges)


# ---------------------------------------------------------------------------
# concrete reflection-group models: orders computed by BFS closure over
# actual permutation-like elements, nothing shared with the package.


def _closure_order(generators, compose, identity) -> int:
    seen = {identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for g in frontier:
            for s in generators:
                h = compose(g, s)
                if h not in seen:
                    seen.add(h)
                    nxt.append(h)
        frontier = nxt
    return len(seen)


def symmetric_group_order(n_gens: int) -> int:
    """Order of the group generated by adjacent transpositions of
    n_gens + 1 points, acting on tuples."""

    size = n_gens + 1
    identity = tuple(range(size))

    def transposition(i):
        p = list(range(size))
        p[i], p[i + 1] = p[i + 1], p[i]
        return tuple(p)

    gens = [transposition(i) for i in range(n_gens)]
    compose = lambda a, b: tuple(a[b[i]] for i in range(size))
    return _closure_order(gens, compose, identity)


def signed_permutation_order(n: int) -> int:
    """Order of the signed permutation group on n coordinates, generated
    by adjacent swaps plus a sign flip on the last coordinate."""

    identity = tuple(range(1, n + 1))
    gens = []
    for i in range(n - 1):
        p = list(range(1, n + 1))
        p[i], p[i + 1] = p[i + 1], p[i]
        gens.append(tuple(p))
    flip = list(range(1, n + 1))
    flip[-1] = -flip[-1]
    gens.append(tuple(flip))

    def compose(a, b):
        out = []
        for i in range(n):
            v = b[i]
            w = a[abs(v) - 1]
            out.append(w if v > 0 else -w)
        return tuple(out)

    return _closure_order(gens, compose, identity)


def even_signed_permutation_order(n: int) -> int:
    """Like the signed model but the extra generator flips two signs,
    keeping the sign-change count even."""

    identity = tuple(range(1, n + 1))
    gens = []
    for i in range(n - 1):
        p = list(range(1, n + 1))
        p[i], p[i + 1] = p[i + 1], p[i]
        gens.append(tuple(p))
    extra = list(range(1, n + 1))
    extra[n - 2], extra[n - 1] = -extra[n - 1], -extra[n - 2]
    gens.append(tuple(extra))

    def compose(a, b):
        out = []
        for i in range(n):
            v = b[i]
            w = a[abs(v) - 1]
            out.append(w if v > 0 else -w)
        return tuple(out)

    return _closure_order(gens, compose, identity)


def dihedral_order(m: int) -> int:
    """Order of the group generated by two reflections of a regular
    m-gon, modeled as maps k -> (a - k) mod 2m on half-vertices."""

    # reflection through axis a: k -> (a - k) mod 2m; compose as affine maps
    identity = (1, 0)          # (sign, shift): k -> sign*k + shift mod 2m
    r1 = (-1, 0)
    r2 = (-1, 2)
    mod = 2 * m

    def compose(a, b):
        # apply b first, then a
        sa, ta = a
        sb, tb = b
        return (sa * sb, (sa * tb + ta) % mod)

    return _closure_order([r1, r2], compose, identity)


# ---------------------------------------------------------------------------
# named graphs used across test modules.


def complete_bipartite_racg() -> LabeledGraph:
    sides = ("a", "b", "c"), ("d", "e", "f")
    return racg(list(sides[0] + sides[1]), [(u, v) for u in sides[0] for v in sides[1]])


def cycle_racg(n: int) -> LabeledGraph:
    ids = [f"v{i}" for i in range(n)]
    return racg(ids, cycle_edges(ids))


def cycle_graph_product(n: int, group: AbelianGroupLabel) -> LabeledGraph:
    ids = [f"v{i}" for i in range(n)]
    return graph_product_graph([(v, group) for v in ids], cycle_edges(ids))


def heavy_square_edges() -> list[tuple[str, str, int]]:
    # complete graph on four corners, a path of label-3 edges along
    # bottom-right-top, everything else label 2
    return [
        ("bl", "br", 3),
        ("br", "tr", 3),
        ("tr", "tl", 3),
        ("bl", "tl", 2),
        ("bl", "tr", 2),
        ("br", "tl", 2),
    ]


def braid_like_artin_k4() -> LabeledGraph:
    return artin_graph(["bl", "br", "tl", "tr"], heavy_square_edges())


def symmetric_coxeter_k4() -> LabeledGraph:
    return coxeter_graph(["bl", "br", "tl", "tr"], heavy_square_edges())


def triangle_coxeter_333() -> LabeledGraph:
    return coxeter_graph(["a", "b", "c"], [("a", "b", 3), ("b", "c", 3), ("a", "c", 3)])


def prism_racg() -> LabeledGraph:
    ids = ["a1", "a2", "a3", "b1", "b2", "b3"]
    edges = [
        ("a1", "a2"), ("a2", "a3"), ("a1", "a3"),
        ("b1", "b2"), ("b2", "b3"), ("b1", "b3"),
        ("a1", "b1"), ("a2", "b2"), ("a3", "b3"),
    ]
    return racg(ids, edges)


def path_racg(n: int) -> LabeledGraph:
    ids = [f"v{i}" for i in range(n)]
    return racg(ids, path_edges(ids))


def path_raag(ids: list[str]) -> LabeledGraph:
    return raag(ids, path_edges(ids))


def diamond_racg() -> LabeledGraph:
    # complete graph on four vertices minus the bottom-top edge
    return racg(
        ["bottom", "left", "right", "top"],
        [
            ("bottom", "left"),
            ("bottom", "right"),
            ("left", "right"),
            ("left", "top"),
            ("right", "top"),
        ],
    )
