"""Exact colouring at desk scale and the neighbourhood chromatic parameters."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .errors import CapabilityError
from .graph import Graph, bits, distance_layers, induced_subgraph_mask
from .holes import is_bipartite, max_clique

DEFAULT_EXACT_LIMIT = 24
BRUTE_FORCE_LIMIT = 9
TABLE_LIMIT = 12


@dataclass(frozen=True)
class Coloring:
    assignment: tuple[int, ...]
    colour_count: int

    def classes(self) -> list[tuple[int, ...]]:
        out: list[list[int]] = [[] for _ in range(self.colour_count)]
        for v, c in enumerate(self.assignment):
            out[c].append(v)
        return [tuple(cls) for cls in out]


def verify_coloring(g: Graph, c: Coloring) -> bool:
    a = c.assignment
    if len(a) != g.n:
        return False
    if any(not isinstance(x, int) or not 0 <= x < c.colour_count for x in a):
        return False
    if set(a) != set(range(c.colour_count)):
        return False
    return all(a[u] != a[v] for u, v in g.edges())


def _greedy_dsatur(g: Graph) -> list[int]:
    n = g.n
    colors = [-1] * n
    classes: list[int] = []
    for _ in range(n):
        v = _pick(g, colors, classes, g.full_mask & ~_colored_mask(colors))
        c = _first_free(g.adj[v], classes)
        if c == len(classes):
            classes.append(0)
        classes[c] |= 1 << v
        colors[v] = c
    return colors


def _colored_mask(colors: Sequence[int]) -> int:
    return sum(1 << v for v, c in enumerate(colors) if c >= 0)


def _first_free(row: int, classes: Sequence[int]) -> int:
    for c, cls in enumerate(classes):
        if not row & cls:
            return c
    return len(classes)


def _pick(g: Graph, colors: Sequence[int], classes: Sequence[int], uncolored: int) -> int:
    """DSATUR choice: max saturation, then max uncoloured degree, then lowest index."""
    best = -1
    best_key = None
    for v in bits(uncolored):
        row = g.adj[v]
        sat = sum(1 for cls in classes if row & cls)
        key = (sat, (row & uncolored).bit_count())
        if best_key is None or key > best_key:
            best, best_key = v, key
    return best


def chromatic_number(g: Graph, limit: int = DEFAULT_EXACT_LIMIT) -> tuple[int, Coloring]:
    """Exact chromatic number with a witness colouring.

    Branch and bound over vertices in DSATUR order, seeded with a maximum clique
    (lower bound, precoloured) and the greedy DSATUR colouring (upper bound).
    """
    if g.n > limit:
        raise CapabilityError(f"exact colouring limited to {limit} vertices (graph has {g.n})")
    n = g.n
    if n == 0:
        return 0, Coloring((), 0)
    adj = g.adj
    best_colors = _greedy_dsatur(g)
    best = max(best_colors) + 1
    clique = max_clique(g)
    lower = len(clique)
    if best > lower:
        colors = [-1] * n
        classes = [0] * lower
        for c, v in enumerate(clique):
            colors[v] = c
            classes[c] = 1 << v
        uncolored = g.full_mask & ~sum(1 << v for v in clique)

        def search(uncolored: int) -> bool:
            nonlocal best, best_colors
            if not uncolored:
                best = len(classes)
                best_colors = colors.copy()
                return best == lower
            v = _pick(g, colors, classes, uncolored)
            row = adj[v]
            rest = uncolored & ~(1 << v)
            used = len(classes)
            for c in range(used):
                if not row & classes[c]:
                    classes[c] |= 1 << v
                    colors[v] = c
                    done = search(rest)
                    classes[c] &= ~(1 << v)
                    colors[v] = -1
                    if done:
                        return True
                    if used >= best:
                        return False
            if used + 1 < best:
                classes.append(1 << v)
                colors[v] = used
                done = search(rest)
                classes.pop()
                colors[v] = -1
                if done:
                    return True
            return False

        search(uncolored)
    return best, Coloring(tuple(_canonical(best_colors)), best)


def _canonical(colors: Sequence[int]) -> list[int]:
    """Renumber colours by first appearance so witnesses are reproducible."""
    rename: dict[int, int] = {}
    return [rename.setdefault(c, len(rename)) for c in colors]


@lru_cache(maxsize=65536)
def _chi_cached(adj: tuple[int, ...], limit: int) -> int:
    return chromatic_number(Graph(len(adj), adj), limit)[0]


def chi_of_mask(g: Graph, mask: int, limit: int = DEFAULT_EXACT_LIMIT) -> int:
    if not mask:
        return 0
    sub, _ = induced_subgraph_mask(g, mask)
    if sub.edge_count == 0:
        return 1
    if is_bipartite(sub):
        return 2
    if sub.n > limit:
        raise CapabilityError(f"exact colouring limited to {limit} vertices (subset has {sub.n})")
    return _chi_cached(sub.adj, limit)


def chi_of_subset(g: Graph, s: Iterable[int], limit: int = DEFAULT_EXACT_LIMIT) -> int:
    return chi_of_mask(g, g.mask(s), limit)


def brute_force_chromatic(g: Graph) -> int:
    """Smallest k admitting a proper k-colouring, by scanning every assignment.

    Vertex 0 is pinned to colour 0 (colour permutations are equivalent); all
    k**(n-1) remaining assignments are tested for each k in ascending order.
    """
    n = g.n
    if n > BRUTE_FORCE_LIMIT:
        raise CapabilityError(f"brute-force colouring limited to {BRUTE_FORCE_LIMIT} vertices")
    if n == 0:
        return 0
    edges = g.edges()
    if not edges:
        return 1
    eu = np.array([u for u, _ in edges])
    ev = np.array([v for _, v in edges])
    chunk = 1 << 18
    for k in range(1, n + 1):
        total = k ** (n - 1)
        for start in range(0, total, chunk):
            codes = np.arange(start, min(total, start + chunk), dtype=np.int64)
            digits = np.zeros((codes.size, n), dtype=np.int8)
            rest = codes
            for v in range(n - 1, 0, -1):
                rest, digits[:, v] = np.divmod(rest, k)
            ok = np.all(digits[:, eu] != digits[:, ev], axis=1)
            if ok.any():
                return k
    return n


def subset_chromatic_table(g: Graph, limit: int = TABLE_LIMIT) -> bytearray:
    """``table[mask] = chi(g[mask])`` for every vertex subset.

    chi(S) = 1 + min chi(S - I) over stable I containing the lowest vertex of S.
    """
    n = g.n
    if n > limit:
        raise CapabilityError(f"subset chromatic table limited to {limit} vertices")
    adj = g.adj
    size = 1 << n
    indep = bytearray(size)
    indep[0] = 1
    chi = bytearray(size)
    for mask in range(1, size):
        low = mask & -mask
        v = low.bit_length() - 1
        rest = mask ^ low
        indep[mask] = indep[rest] and not adj[v] & rest
        free = rest & ~adj[v]
        best = n
        sub = free
        while True:
            other = mask & ~(sub | low)
            if indep[sub]:
                val = chi[other]
                if val < best:
                    best = val
            if not sub:
                break
            sub = (sub - 1) & free
        chi[mask] = best + 1
    return chi


@dataclass(frozen=True)
class NeighborhoodChiProfile:
    kappa2: int
    kappa3: int
    kappa1: int = 0
    argmax2: int | None = None
    argmax3: int | None = None


def neighborhood_chi_profile(g: Graph, limit: int = DEFAULT_EXACT_LIMIT,
                             table: bytearray | None = None) -> NeighborhoodChiProfile:
    """Maxima over v of chi(N(v)), chi(N^2(v)), chi(N^3(v)).

    ``table`` (from :func:`subset_chromatic_table`) short-circuits every solve.
    """
    best = [0, 0, 0, 0]
    arg: list[int | None] = [None, None, None, None]
    for v in range(g.n):
        layers = distance_layers(g, v)
        for r in (1, 2, 3):
            mask = layers[r] if r < len(layers) else 0
            val = table[mask] if table is not None else chi_of_mask(g, mask, limit)
            if val > best[r]:
                best[r], arg[r] = val, v
    return NeighborhoodChiProfile(best[2], best[3], best[1], arg[2], arg[3])
