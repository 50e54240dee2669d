"""Immutable simple graphs with bitset adjacency.

Vertices are the dense indices ``0..n-1``.  ``Graph.adj[v]`` is an integer
bitmask whose bit ``u`` is set iff ``u`` and ``v`` are adjacent.  Every
function that returns a vertex set returns a tuple in ascending order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from .errors import UsageError

VertexSet = tuple[int, ...]


def bits(mask: int) -> Iterator[int]:
    """Yield the indices of the set bits of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def to_mask(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def lowest(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


@dataclass(frozen=True)
class Graph:
    n: int
    adj: tuple[int, ...]
    labels: tuple[str, ...] | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if len(self.adj) != self.n:
            raise UsageError("adjacency length does not match vertex count")
        full = (1 << self.n) - 1
        for v, row in enumerate(self.adj):
            if row & ~full:
                raise UsageError(f"vertex {v} has a neighbour outside 0..{self.n - 1}")
            if row >> v & 1:
                raise UsageError(f"self-loop at vertex {v}")
            for u in bits(row):
                if not self.adj[u] >> v & 1:
                    raise UsageError(f"adjacency not symmetric on {u}-{v}")
        if self.labels is not None and len(self.labels) != self.n:
            raise UsageError("label count does not match vertex count")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]],
                   labels: Sequence[str] | None = None) -> Graph:
        if n < 0:
            raise UsageError("vertex count must be non-negative")
        rows = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise UsageError(f"edge {u}-{v} out of range for n={n}")
            if u == v:
                raise UsageError(f"self-loop at vertex {u}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, tuple(rows), tuple(labels) if labels is not None else None)

    @classmethod
    def empty(cls, n: int) -> Graph:
        return cls(n, (0,) * n)

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in bits(self.adj[u] >> (u + 1) << (u + 1))]

    @property
    def edge_count(self) -> int:
        return sum(row.bit_count() for row in self.adj) // 2

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def check_vertex(self, v: int) -> None:
        if not isinstance(v, int) or not 0 <= v < self.n:
            raise UsageError(f"vertex {v!r} out of range for a graph on {self.n} vertices")

    def mask(self, vertices: Iterable[int]) -> int:
        m = 0
        for v in vertices:
            self.check_vertex(v)
            m |= 1 << v
        return m

    def label(self, v: int) -> str:
        return self.labels[v] if self.labels else str(v)

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.edge_count})"


def neighbors(g: Graph, v: int) -> VertexSet:
    g.check_vertex(v)
    return tuple(bits(g.adj[v]))


def neighborhood_mask(g: Graph, mask: int) -> int:
    """Union of the neighbourhoods of the vertices in ``mask``."""
    out = 0
    for v in bits(mask):
        out |= g.adj[v]
    return out


def distance_layers(g: Graph, v: int, within: int | None = None) -> list[int]:
    """BFS layers from ``v`` as bitmasks; layer r holds the vertices at distance r.

    With ``within`` the search runs in the subgraph induced on that mask.
    """
    g.check_vertex(v)
    allowed = g.full_mask if within is None else within
    layers = [1 << v]
    seen = 1 << v
    frontier = 1 << v
    while True:
        nxt = neighborhood_mask(g, frontier) & allowed & ~seen
        if not nxt:
            return layers
        layers.append(nxt)
        seen |= nxt
        frontier = nxt


def nth_neighborhood_mask(g: Graph, v: int, r: int, within: int | None = None) -> int:
    layers = distance_layers(g, v, within)
    return layers[r] if r < len(layers) else 0


def nth_neighborhood(g: Graph, v: int, r: int) -> VertexSet:
    g.check_vertex(v)
    if r < 1:
        raise UsageError("r must be a positive integer")
    return tuple(bits(nth_neighborhood_mask(g, v, r)))


def distance_to_set(g: Graph, v: int, s: Iterable[int]) -> float | int:
    """Length of a shortest path from ``v`` to a member of ``s``; ``math.inf`` if none."""
    g.check_vertex(v)
    target = g.mask(s)
    if not target:
        raise UsageError("distance to an empty set is undefined")
    return mask_distance(g, v, target)


def mask_distance(g: Graph, v: int, target: int) -> float | int:
    seen = frontier = 1 << v
    d = 0
    while frontier:
        if frontier & target:
            return d
        frontier = neighborhood_mask(g, frontier) & ~seen
        seen |= frontier
        d += 1
    return math.inf


def set_distance_mask(g: Graph, source: int, target: int) -> float | int:
    """Distance between two vertex sets given as masks."""
    seen = frontier = source
    d = 0
    while frontier:
        if frontier & target:
            return d
        frontier = neighborhood_mask(g, frontier) & ~seen
        seen |= frontier
        d += 1
    return math.inf


def induced_subgraph(g: Graph, s: Iterable[int]) -> tuple[Graph, VertexSet]:
    """Return ``(g[s], index_map)`` where ``index_map[new] = old``."""
    order = tuple(bits(g.mask(s)))
    return induced_subgraph_mask(g, to_mask(order))


def induced_subgraph_mask(g: Graph, mask: int) -> tuple[Graph, VertexSet]:
    order = tuple(bits(mask))
    position = {old: new for new, old in enumerate(order)}
    rows = []
    for old in order:
        row = 0
        for u in bits(g.adj[old] & mask):
            row |= 1 << position[u]
        rows.append(row)
    labels = tuple(g.labels[v] for v in order) if g.labels else None
    return Graph(len(order), tuple(rows), labels), order


def component_masks(g: Graph, mask: int) -> list[int]:
    """Connected components of ``g[mask]`` ordered by smallest member."""
    out = []
    remaining = mask
    while remaining:
        start = remaining & -remaining
        comp = frontier = start
        while frontier:
            frontier = neighborhood_mask(g, frontier) & remaining & ~comp
            comp |= frontier
        out.append(comp)
        remaining &= ~comp
    return out


def connected_components(g: Graph, s: Iterable[int] | None = None) -> list[VertexSet]:
    mask = g.full_mask if s is None else g.mask(s)
    return [tuple(bits(c)) for c in component_masks(g, mask)]


def is_connected_mask(g: Graph, mask: int) -> bool:
    return len(component_masks(g, mask)) <= 1


def is_stable_mask(g: Graph, mask: int) -> bool:
    return all(not (g.adj[v] & mask) for v in bits(mask))


def relabel(g: Graph, perm: Sequence[int]) -> Graph:
    """Graph with vertex ``v`` renamed ``perm[v]``."""
    return Graph.from_edges(g.n, [(perm[u], perm[v]) for u, v in g.edges()])


def _iso_search(g: Graph, h: Graph, first_only: bool) -> Iterator[tuple[int, ...]]:
    n = g.n
    if n != h.n or g.edge_count != h.edge_count:
        return
    if sorted(map(g.degree, range(n))) != sorted(map(h.degree, range(n))):
        return
    # Visit g's vertices in BFS-ish order so adjacency constraints bite early.
    order: list[int] = []
    placed = 0
    while len(order) < n:
        cand = g.full_mask & ~placed
        attached = neighborhood_mask(g, placed) & cand
        pool = attached or cand
        v = max(bits(pool), key=lambda x: ((g.adj[x] & placed).bit_count(), g.degree(x), -x))
        order.append(v)
        placed |= 1 << v
    mapping = [-1] * n
    used = 0

    def extend(i: int) -> Iterator[tuple[int, ...]]:
        nonlocal used
        if i == n:
            yield tuple(mapping)
            return
        v = order[i]
        for w in range(n):
            if used >> w & 1 or h.degree(w) != g.degree(v):
                continue
            ok = True
            for u in order[:i]:
                if g.has_edge(u, v) != h.has_edge(mapping[u], w):
                    ok = False
                    break
            if not ok:
                continue
            mapping[v] = w
            used |= 1 << w
            yield from extend(i + 1)
            used &= ~(1 << w)
            mapping[v] = -1

    yield from extend(0)


def find_isomorphism(g: Graph, h: Graph) -> tuple[int, ...] | None:
    """A bijection ``phi`` with ``uv in E(g) <=> phi[u]phi[v] in E(h)``, or None."""
    return next(_iso_search(g, h, True), None)


def are_isomorphic(g: Graph, h: Graph) -> bool:
    return find_isomorphism(g, h) is not None


def automorphisms(g: Graph) -> list[tuple[int, ...]]:
    return sorted(_iso_search(g, g, False))


# --------------------------------------------------------------------------
# Text formats
# --------------------------------------------------------------------------

def _graph6_size(n: int) -> str:
    if n < 63:
        return chr(n + 63)
    if n < 258048:
        return "~" + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))
    return "~~" + "".join(chr(((n >> s) & 63) + 63) for s in (30, 24, 18, 12, 6, 0))


def to_graph6(g: Graph) -> str:
    """Standard graph6 encoding (no ``>>graph6<<`` header, no newline)."""
    out = [_graph6_size(g.n)]
    acc = 0
    nbits = 0
    for j in range(1, g.n):
        row = g.adj[j]
        for i in range(j):
            acc = (acc << 1) | (row >> i & 1)
            nbits += 1
            if nbits == 6:
                out.append(chr(acc + 63))
                acc = nbits = 0
    if nbits:
        out.append(chr((acc << (6 - nbits)) + 63))
    return "".join(out)


def from_graph6(text: str) -> Graph:
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
    if not s:
        raise UsageError("empty graph6 string")
    data = [ord(ch) - 63 for ch in s]
    if any(not 0 <= x <= 63 for x in data):
        raise UsageError(f"invalid graph6 character in {text!r}")
    if data[0] < 63:
        n, pos = data[0], 1
    elif len(data) > 1 and data[1] < 63:
        if len(data) < 4:
            raise UsageError("truncated graph6 header")
        n = (data[1] << 12) | (data[2] << 6) | data[3]
        pos = 4
    else:
        if len(data) < 8:
            raise UsageError("truncated graph6 header")
        n = 0
        for x in data[2:8]:
            n = (n << 6) | x
        pos = 8
    need = (n * (n - 1) // 2 + 5) // 6
    body = data[pos:]
    if len(body) != need:
        raise UsageError(f"graph6 body has {len(body)} bytes, expected {need} for n={n}")
    rows = [0] * n
    k = 0
    for j in range(1, n):
        for i in range(j):
            if body[k // 6] >> (5 - k % 6) & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            k += 1
    if need and body[-1] & ((1 << (6 * need - k)) - 1):
        raise UsageError("graph6 padding bits must be zero")
    return Graph(n, tuple(rows))


def to_edgelist(g: Graph) -> str:
    edges = g.edges()
    lines = [f"{g.n} {len(edges)}"] + [f"{u} {v}" for u, v in edges]
    return "\n".join(lines) + "\n"


def from_edgelist(text: str) -> Graph:
    tokens: list[list[int]] = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            tokens.append([int(x) for x in line.split()])
        except ValueError:
            raise UsageError(f"non-integer token in edge-list line {raw!r}") from None
    if not tokens:
        raise UsageError("empty edge-list input")
    header = tokens[0]
    if len(header) != 2:
        raise UsageError("edge-list header must be 'n m'")
    n, m = header
    pairs = tokens[1:]
    if len(pairs) != m or any(len(p) != 2 for p in pairs):
        raise UsageError(f"edge-list declares {m} edges but has {len(pairs)} edge lines")
    return Graph.from_edges(n, [(p[0], p[1]) for p in pairs])
