"""Independent oracles and instance factories shared by the test modules.

The oracles deliberately avoid the package's search code: they enumerate
vertex subsets or lean on networkx.
"""

from __future__ import annotations

import itertools
import random

import networkx as nx
from hypothesis import strategies as st

from oddholes.graph import Graph, bits
from oddholes.levelling import Levelling


def to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


def induces_cycle(g: Graph, mask: int) -> bool:
    """G[mask] is a single cycle: >= 3 vertices, all of degree 2, connected."""
    vs = list(bits(mask))
    if len(vs) < 3:
        return False
    if any((g.adj[v] & mask).bit_count() != 2 for v in vs):
        return False
    seen = 1 << vs[0]
    frontier = seen
    while frontier:
        nxt = 0
        for v in bits(frontier):
            nxt |= g.adj[v] & mask
        frontier = nxt & ~seen
        seen |= nxt
    return seen == mask


def oracle_cycle_sets(g: Graph) -> set[int]:
    """Vertex masks of all induced cycles, by scanning every subset."""
    return {m for m in range(1 << g.n) if induces_cycle(g, m)}


def oracle_odd_hole_number(g: Graph) -> int:
    best = 1
    for m in range(1 << g.n):
        size = m.bit_count()
        if size % 2 and size > best and induces_cycle(g, m):
            best = size
    return best


def oracle_induced_paths(g: Graph, within: int, length: int) -> set[tuple[int, ...]]:
    """All induced paths with ``length`` edges inside ``within``, as vertex sequences."""
    out = set()
    vs = list(bits(within))
    for combo in itertools.permutations(vs, length + 1):
        ok = True
        for i in range(len(combo)):
            for j in range(i + 1, len(combo)):
                if g.has_edge(combo[i], combo[j]) != (j == i + 1):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            out.add(combo)
    return out


def oracle_chi_of_mask(g: Graph, mask: int) -> int:
    """Smallest k with a proper k-colouring of g[mask], by plain product search."""
    vs = list(bits(mask))
    if not vs:
        return 0
    edges = [(i, j) for i, j in itertools.combinations(range(len(vs)), 2)
             if g.has_edge(vs[i], vs[j])]
    for k in range(1, len(vs) + 1):
        for colours in itertools.product(range(k), repeat=len(vs) - 1):
            col = (0, *colours)
            if all(col[i] != col[j] for i, j in edges):
                return k
    return len(vs)


# --------------------------------------------------------------------------
# Strategies
# --------------------------------------------------------------------------

@st.composite
def graphs(draw, min_n: int = 0, max_n: int = 8) -> Graph:
    n = draw(st.integers(min_n, max_n))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Graph.from_edges(n, chosen)


@st.composite
def triangle_free_graphs(draw, min_n: int = 0, max_n: int = 9) -> Graph:
    n = draw(st.integers(min_n, max_n))
    order = draw(st.permutations([(i, j) for i in range(n) for j in range(i + 1, n)]))
    keep = draw(st.lists(st.booleans(), min_size=len(order), max_size=len(order)))
    adj = [0] * n
    for (u, v), k in zip(order, keep):
        if k and not adj[u] & adj[v]:
            adj[u] |= 1 << v
            adj[v] |= 1 << u
    return Graph(n, tuple(adj))


# --------------------------------------------------------------------------
# Random levellings (seeded with the stdlib RNG; test fixtures only)
# --------------------------------------------------------------------------

def layered_levelling(rnd: random.Random, max_n: int = 14) -> tuple[Graph, Levelling]:
    """Random levels with 1-2 parents per vertex and random intra-level edges."""
    k = rnd.randint(2, 5)
    sizes = [1] + [rnd.randint(1, 3) for _ in range(k - 1)] + [rnd.randint(3, 7)]
    while sum(sizes) > max_n:
        sizes[rnd.randrange(1, len(sizes))] = 1
    levels = []
    v = 0
    for s in sizes:
        levels.append(list(range(v, v + s)))
        v += s
    edges = set()
    for i in range(1, len(levels)):
        for x in levels[i]:
            for p in rnd.sample(levels[i - 1], min(len(levels[i - 1]), rnd.randint(1, 2))):
                edges.add((p, x))
        inner = 0.35 if i == len(levels) - 1 else rnd.choice([0, 0, 0.2])
        for a, b in itertools.combinations(levels[i], 2):
            if rnd.random() < inner:
                edges.add((a, b))
    return Graph.from_edges(v, edges), Levelling.of(levels)


def branched_levelling(rnd: random.Random, max_n: int = 14) -> tuple[Graph, Levelling]:
    """Stable upper levels whose base hangs mostly off non-first vertices of L_(k-1)."""
    k = rnd.randint(2, 4)
    levels = [[0]]
    v = 1
    edges = set()
    for _ in range(1, k):
        level = list(range(v, v + rnd.randint(2, 3)))
        v += len(level)
        prev = levels[-1]
        for j, x in enumerate(level):
            p = prev[min(j, len(prev) - 1)] if rnd.random() < 0.7 else rnd.choice(prev)
            edges.add((p, x))
        levels.append(level)
    base = list(range(v, min(max_n, v + rnd.randint(4, 8))))
    v = base[-1] + 1
    prev = levels[-1]
    for x in base:
        edges.add((prev[0] if rnd.random() < 0.2 else rnd.choice(prev[1:]), x))
    for a, b in itertools.combinations(base, 2):
        if rnd.random() < 0.35:
            edges.add((a, b))
    levels.append(base)
    return Graph.from_edges(v, edges), Levelling.of(levels)


def host_levelling(rnd: random.Random, host: Graph) -> tuple[Graph, Levelling]:
    """BFS levelling of a host graph from a random root, restricted to the root's component."""
    from oddholes.graph import distance_layers, induced_subgraph_mask
    root = rnd.randrange(host.n)
    layers = distance_layers(host, root)
    sub, index = induced_subgraph_mask(host, sum(layers))
    where = {v: i for i, v in enumerate(index)}
    return sub, Levelling.of([[where[v] for v in bits(layer)] for layer in layers])
