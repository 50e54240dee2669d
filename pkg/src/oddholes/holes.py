"""Induced cycles: triangles, holes, odd hole number, pentagonality."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .errors import BudgetExhausted, UsageError
from .graph import Graph, bits, lowest

PARITIES = ("any", "odd", "even")


@dataclass(frozen=True)
class InducedCycle:
    vertices: tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.vertices)

    def problems(self, g: Graph) -> list[str]:
        """Violated invariants against ``g``; empty when the cycle is a valid witness."""
        vs = self.vertices
        k = len(vs)
        if k < 3:
            return [f"length {k} < 3"]
        if len(set(vs)) != k:
            return ["repeated vertex"]
        if any(not 0 <= v < g.n for v in vs):
            return ["vertex out of range"]
        out = []
        for i in range(k):
            for j in range(i + 1, k):
                consecutive = j == i + 1 or (i == 0 and j == k - 1)
                if consecutive and not g.has_edge(vs[i], vs[j]):
                    out.append(f"missing cycle edge {vs[i]}-{vs[j]}")
                elif not consecutive and g.has_edge(vs[i], vs[j]):
                    out.append(f"chord {vs[i]}-{vs[j]}")
        return out

    def is_valid(self, g: Graph) -> bool:
        return not self.problems(g)

    def __str__(self) -> str:
        return ",".join(map(str, self.vertices))


class Budget:
    """Node-expansion counter shared by a search; ``None`` limit means unbounded."""

    def __init__(self, limit: int | None = None):
        self.limit = limit
        self.used = 0

    def spend(self, amount: int = 1) -> None:
        self.used += amount
        if self.limit is not None and self.used > self.limit:
            raise BudgetExhausted(f"node-expansion budget {self.limit} exhausted", self.used)


def _parity_ok(length: int, parity: str) -> bool:
    return parity == "any" or (length % 2 == 1) == (parity == "odd")


def iter_induced_cycles(g: Graph, min_len: int = 3, max_len: int | None = None,
                        parity: str = "any", budget: Budget | None = None,
                        within: int | None = None,
                        through: int | None = None) -> Iterator[InducedCycle]:
    """Depth-first listing of induced cycles, each exactly once.

    A cycle is reported from its smallest vertex ``a`` in the direction whose
    second vertex is smaller than its last.  Paths grow from ``a`` through larger
    vertices only and never touch a neighbour of an interior vertex, so every
    closure back to ``a`` is chordless.  ``within`` restricts to an induced
    subgraph; ``through`` keeps only cycles meeting that mask.
    """
    if max_len is None:
        max_len = g.n
    if parity not in PARITIES:
        raise UsageError(f"parity must be one of {PARITIES}")
    if min_len < 3 or max_len < min_len:
        if min_len < 3:
            raise UsageError("min_len must be at least 3")
        return
    adj = g.adj
    space = g.full_mask if within is None else within
    need = space if through is None else through & space

    for a in bits(space):
        if not need >> a:
            return
        allowed = space & ~((2 << a) - 1)
        na = adj[a]
        path = [a, -1]

        def grow(last: int, blocked: int, depth: int) -> Iterator[InducedCycle]:
            # path holds `depth` vertices ending at `last`; blocked = path plus
            # the neighbourhoods of its interior vertices
            if budget is not None:
                budget.spend()
            cand = adj[last] & allowed & ~blocked
            length = depth + 1
            if min_len <= length <= max_len and _parity_ok(length, parity):
                first = path[1]
                for y in bits(cand & na):
                    if y > first:
                        verts = (*path, y)
                        if through is None or any(need >> v & 1 for v in verts):
                            yield InducedCycle(verts)
            if depth + 2 <= max_len:
                for y in bits(cand & ~na):
                    path.append(y)
                    yield from grow(y, blocked | adj[last] | (1 << y), depth + 1)
                    path.pop()

        for x1 in bits(na & allowed):
            path[1] = x1
            yield from grow(x1, (1 << a) | (1 << x1), 2)


def enumerate_induced_cycles(g: Graph, min_len: int, max_len: int, parity: str = "any",
                             budget: int | None = None) -> Iterator[InducedCycle]:
    if min_len < 3 or max_len < min_len:
        raise UsageError("need 3 <= min_len <= max_len")
    return iter_induced_cycles(g, min_len, max_len, parity,
                               Budget(budget) if budget is not None else None)


def find_triangle(g: Graph) -> InducedCycle | None:
    """Lexicographically least triangle, if any."""
    adj = g.adj
    for i in range(g.n):
        for j in bits(adj[i] >> (i + 1) << (i + 1)):
            common = adj[i] & adj[j] & ~((2 << j) - 1)
            if common:
                return InducedCycle((i, j, lowest(common)))
    return None


def bipartition(g: Graph) -> list[int] | None:
    """A proper 2-colouring as a list of 0/1, or None when g has an odd cycle."""
    side = [-1] * g.n
    for s in range(g.n):
        if side[s] >= 0:
            continue
        side[s] = 0
        stack = [s]
        while stack:
            v = stack.pop()
            for u in bits(g.adj[v]):
                if side[u] < 0:
                    side[u] = 1 - side[v]
                    stack.append(u)
                elif side[u] == side[v]:
                    return None
    return side


def is_bipartite(g: Graph) -> bool:
    return bipartition(g) is not None


def odd_hole_number(g: Graph) -> int:
    """Longest induced odd cycle length (triangles included), or 1 if bipartite."""
    if is_bipartite(g):
        return 1
    best = 1
    for c in iter_induced_cycles(g, 3, g.n, "odd"):
        best = max(best, c.length)
    return best


def long_odd_hole(g: Graph, longer_than: int) -> InducedCycle | None:
    """First induced odd cycle of length greater than ``longer_than``."""
    lo = longer_than + 1 if longer_than % 2 == 0 else longer_than + 2
    lo = max(lo, 3)
    if lo > g.n:
        return None
    return next(iter_induced_cycles(g, lo, g.n, "odd"), None)


def pentagonal_violation(g: Graph) -> InducedCycle | None:
    """A triangle or an induced odd cycle of length >= 7, or None if pentagonal."""
    tri = find_triangle(g)
    if tri is not None:
        return tri
    if is_bipartite(g):
        return None
    return long_odd_hole(g, 5)


def is_pentagonal(g: Graph) -> bool:
    return pentagonal_violation(g) is None


def max_hole_length(g: Graph) -> int:
    best = 0
    for c in iter_induced_cycles(g, 4, g.n):
        best = max(best, c.length)
    return best


def has_k_hole(g: Graph, k: int) -> InducedCycle | None:
    if k < 4:
        raise UsageError("a hole has length at least 4")
    if k > g.n:
        return None
    return next(iter_induced_cycles(g, k, k), None)


def clique_number(g: Graph) -> int:
    return len(max_clique(g))


def max_clique(g: Graph) -> tuple[int, ...]:
    adj = g.adj
    best: list[int] = []
    current: list[int] = []

    def expand(cand: int) -> None:
        nonlocal best
        if not cand:
            if len(current) > len(best):
                best = current.copy()
            return
        while cand:
            if len(current) + cand.bit_count() <= len(best):
                return
            v = lowest(cand)
            current.append(v)
            expand(cand & adj[v])
            current.pop()
            cand &= ~(1 << v)

    expand(g.full_mask)
    return tuple(best)


@dataclass(frozen=True)
class CycleStats:
    """Summary of every induced cycle of a graph, from one enumeration pass."""
    lengths: frozenset[int]

    @property
    def triangle_free(self) -> bool:
        return 3 not in self.lengths

    @property
    def odd_hole_number(self) -> int:
        odd = [x for x in self.lengths if x % 2]
        return max(odd) if odd else 1

    @property
    def shortest_odd_cycle(self) -> int | None:
        odd = [x for x in self.lengths if x % 2]
        return min(odd) if odd else None

    @property
    def max_hole_length(self) -> int:
        holes = [x for x in self.lengths if x >= 4]
        return max(holes) if holes else 0

    def has_hole(self, k: int) -> bool:
        return k in self.lengths

    @property
    def pentagonal(self) -> bool:
        return all(x % 2 == 0 or x == 5 for x in self.lengths)


def cycle_stats(g: Graph, budget: int | None = None) -> CycleStats:
    b = Budget(budget) if budget is not None else None
    return CycleStats(frozenset(c.length for c in iter_induced_cycles(g, 3, g.n, budget=b)))
