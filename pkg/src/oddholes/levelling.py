"""Levellings, lollipops, licking and cleanliness boosting."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .coloring import DEFAULT_EXACT_LIMIT, chi_of_mask
from .errors import UsageError
from .graph import (Graph, bits, component_masks, distance_layers, is_connected_mask,
                    mask_distance, neighborhood_mask, to_mask)


@dataclass(frozen=True)
class Levelling:
    levels: tuple[tuple[int, ...], ...]

    @classmethod
    def of(cls, levels: Iterable[Iterable[int]]) -> Levelling:
        return cls(tuple(tuple(sorted(set(level))) for level in levels))

    @property
    def k(self) -> int:
        return len(self.levels) - 1

    @property
    def base(self) -> tuple[int, ...]:
        return self.levels[-1]

    @property
    def masks(self) -> list[int]:
        return [to_mask(level) for level in self.levels]

    def level_of(self, v: int) -> int | None:
        for i, level in enumerate(self.levels):
            if v in level:
                return i
        return None

    def to_json(self) -> list[list[int]]:
        return [list(level) for level in self.levels]


@dataclass(frozen=True)
class LevellingVerdict:
    ok: bool
    clause: str | None = None
    detail: tuple[int, ...] = ()

    def __bool__(self) -> bool:
        return self.ok


def validate_levelling(g: Graph, lv: Levelling, require_stable: bool = False) -> LevellingVerdict:
    """Check the levelling clauses in order; report the first violated one.

    ``detail`` names the offending vertex (a 1-tuple) or edge (a 2-tuple).
    """
    if not lv.levels:
        return LevellingVerdict(False, "empty", ())
    seen: dict[int, int] = {}
    for i, level in enumerate(lv.levels):
        for v in level:
            if not 0 <= v < g.n:
                return LevellingVerdict(False, "range", (v,))
            if v in seen:
                return LevellingVerdict(False, "disjoint", (v,))
            seen[v] = i
    if len(lv.levels[0]) != 1:
        return LevellingVerdict(False, "root", lv.levels[0])
    masks = lv.masks
    for i in range(1, len(masks)):
        for v in bits(masks[i]):
            if not g.adj[v] & masks[i - 1]:
                return LevellingVerdict(False, "parent", (v,))
    for u, v in g.edges():
        if u in seen and v in seen and abs(seen[u] - seen[v]) > 1:
            return LevellingVerdict(False, "skip-edge", (u, v))
    if require_stable:
        for i in range(len(masks) - 1):
            for v in bits(masks[i]):
                inside = g.adj[v] & masks[i]
                if inside:
                    u = (inside & -inside).bit_length() - 1
                    return LevellingVerdict(False, "unstable", tuple(sorted((u, v))))
    return LevellingVerdict(True)


def is_stable_levelling(g: Graph, lv: Levelling) -> bool:
    return validate_levelling(g, lv, require_stable=True).ok


def bfs_levelling(g: Graph, v0: int) -> Levelling:
    g.check_vertex(v0)
    return Levelling(tuple(tuple(bits(layer)) for layer in distance_layers(g, v0)))


def parents(g: Graph, lv: Levelling, v: int) -> tuple[int, ...]:
    i = lv.level_of(v)
    if i is None or i == 0:
        return ()
    return tuple(bits(g.adj[v] & to_mask(lv.levels[i - 1])))


def ancestors_descendants(g: Graph, lv: Levelling, u: int, v: int) -> bool:
    """True iff ``u`` is an ancestor of ``v``: a path u..v with one vertex per level in between."""
    i, j = lv.level_of(u), lv.level_of(v)
    if i is None or j is None:
        raise UsageError("both vertices must belong to the levelling")
    if i > j:
        raise UsageError("u must lie on a level no deeper than v")
    reach = 1 << u
    masks = lv.masks
    for step in range(i + 1, j + 1):
        reach = neighborhood_mask(g, reach) & masks[step]
    return bool(reach >> v & 1)


# --------------------------------------------------------------------------
# Lollipops
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class Lollipop:
    """Candy ``C`` (connected) and stick ``T = t_1..t_k``; ``t_1`` is the end."""
    candy: tuple[int, ...]
    stick: tuple[int, ...]

    @classmethod
    def of(cls, candy: Iterable[int], stick: Sequence[int]) -> Lollipop:
        return cls(tuple(sorted(set(candy))), tuple(stick))

    @property
    def candy_mask(self) -> int:
        return to_mask(self.candy)

    @property
    def end(self) -> int:
        return self.stick[0]


def lollipop_problems(g: Graph, lp: Lollipop) -> list[str]:
    out = []
    t = lp.stick
    if len(t) < 2:
        out.append("stick needs at least two vertices")
        return out
    if any(not 0 <= v < g.n for v in (*t, *lp.candy)):
        return ["vertex out of range"]
    if len(set(t)) != len(t):
        return ["stick repeats a vertex"]
    for i in range(len(t)):
        for j in range(i + 1, len(t)):
            if g.has_edge(t[i], t[j]) != (j == i + 1):
                out.append(f"stick is not an induced path at {t[i]}-{t[j]}")
    c = lp.candy_mask
    if not c:
        out.append("candy is empty")
        return out
    if c & to_mask(t):
        out.append("stick meets candy")
    if not is_connected_mask(g, c):
        out.append("candy is not connected")
    if not g.adj[t[-1]] & c:
        out.append("last stick vertex has no neighbour in the candy")
    for v in t[:-1]:
        if g.adj[v] & c:
            out.append(f"stick vertex {v} touches the candy")
    return out


def is_lollipop(g: Graph, lp: Lollipop) -> bool:
    return not lollipop_problems(g, lp)


def _require_lollipop(g: Graph, lp: Lollipop) -> None:
    problems = lollipop_problems(g, lp)
    if problems:
        raise UsageError("invalid lollipop: " + "; ".join(problems))


def cleanliness(g: Graph, lp: Lollipop) -> int:
    """Largest l with t_1..t_l all at distance >= 3 from the candy (0 if none)."""
    _require_lollipop(g, lp)
    return _cleanliness(g, lp.candy_mask, lp.stick)


def _cleanliness(g: Graph, candy: int, stick: Sequence[int]) -> int:
    near = candy | neighborhood_mask(g, candy)
    near |= neighborhood_mask(g, near)
    count = 0
    for v in stick:
        if near >> v & 1:
            break
        count += 1
    return count


def licking_problems(g: Graph, before: Lollipop, after: Lollipop) -> list[str]:
    """Clauses of "``after`` is a licking of ``before``" that fail."""
    out = [f"result: {p}" for p in lollipop_problems(g, after)]
    if after.candy_mask & ~before.candy_mask:
        out.append("new candy is not inside the old candy")
    if not after.stick or after.stick[0] != before.stick[0]:
        out.append("ends differ")
    k = len(before.stick)
    if tuple(after.stick[:k]) != tuple(before.stick):
        out.append("old stick is not a subpath of the new stick")
    if to_mask(after.stick) & ~(to_mask(before.stick) | before.candy_mask):
        out.append("new stick leaves V(T) u C")
    return out


def lick(g: Graph, lp: Lollipop, c_prime: Iterable[int]) -> Lollipop:
    """Shrink the candy to ``c_prime`` and extend the stick through the old candy.

    The extension is a shortest path inside ``C u {t_k}`` from ``t_k`` to a vertex
    with a neighbour in ``c_prime``; among shortest paths the lexicographically
    least one is taken.
    """
    _require_lollipop(g, lp)
    target = g.mask(c_prime)
    candy = lp.candy_mask
    if not target:
        raise UsageError("new candy must be non-empty")
    if target & ~candy:
        raise UsageError("new candy must be a subset of the old candy")
    if not is_connected_mask(g, target):
        raise UsageError("new candy must induce a connected subgraph")
    tk = lp.stick[-1]
    new = tuple(bits(target))
    if g.adj[tk] & target:
        return Lollipop(new, lp.stick)
    allowed = (candy & ~target) | (1 << tk)
    goal = neighborhood_mask(g, target) & allowed & ~(1 << tk)
    # layers from t_k and distance-to-goal, both inside `allowed`
    layers = distance_layers(g, tk, allowed)
    depth = next(d for d, layer in enumerate(layers) if layer & goal)
    to_goal = [goal]
    seen = goal
    while len(to_goal) <= depth:
        nxt = neighborhood_mask(g, to_goal[-1]) & allowed & ~seen
        to_goal.append(nxt)
        seen |= nxt
    ext = []
    cur = tk
    for step in range(1, depth + 1):
        options = g.adj[cur] & layers[step] & to_goal[depth - step]
        cur = (options & -options).bit_length() - 1
        ext.append(cur)
    return Lollipop(new, lp.stick + tuple(ext))


@dataclass(frozen=True)
class FailureWitness:
    """A vertex whose second neighbourhood has chromatic number above ``kappa``."""
    vertex: int
    ball: tuple[int, ...]
    chi: int
    kappa: int

    def verify(self, g: Graph, limit: int = DEFAULT_EXACT_LIMIT) -> bool:
        layers = distance_layers(g, self.vertex)
        n2 = layers[2] if len(layers) > 2 else 0
        return to_mask(self.ball) == n2 and chi_of_mask(g, n2, limit) > self.kappa


def best_component(g: Graph, mask: int, limit: int = DEFAULT_EXACT_LIMIT) -> tuple[int, int]:
    """Component of ``g[mask]`` of maximum chi (ties: smallest least vertex) and its chi."""
    best, best_chi = 0, -1
    for comp in component_masks(g, mask):
        chi = chi_of_mask(g, comp, limit)
        if chi > best_chi:
            best, best_chi = comp, chi
    return best, best_chi


def boost_cleanliness(g: Graph, lp: Lollipop, h: int, kappa: int,
                      limit: int = DEFAULT_EXACT_LIMIT) -> Lollipop | FailureWitness:
    """Licking with cleanliness raised by at least ``h`` and chi lost at most ``h*kappa``.

    Each of the ``h`` rounds deletes N^2(t_{c+1}) from the candy (c the current
    cleanliness), keeps a component of largest chi and licks onto it.  If that
    component has lost more than ``kappa``, N^2(t_{c+1}) itself has chi > kappa
    and is returned as a :class:`FailureWitness`.
    """
    _require_lollipop(g, lp)
    if h < 0 or kappa < 0:
        raise UsageError("h and kappa must be non-negative")
    chi = chi_of_mask(g, lp.candy_mask, limit)
    if chi <= h * kappa:
        raise UsageError(f"chi(candy) = {chi} <= h*kappa = {h * kappa}; boosting inapplicable")
    current = lp
    for _ in range(h):
        candy = current.candy_mask
        chi = chi_of_mask(g, candy, limit)
        c = _cleanliness(g, candy, current.stick)
        t = current.stick[c]
        layers = distance_layers(g, t)
        ball = layers[2] if len(layers) > 2 else 0
        comp, comp_chi = best_component(g, candy & ~ball, limit)
        if comp_chi < chi - kappa:
            return FailureWitness(t, tuple(bits(ball)), chi_of_mask(g, ball, limit), kappa)
        current = lick(g, current, bits(comp))
    return current


def distance_from_candy(g: Graph, lp: Lollipop, v: int) -> float:
    return mask_distance(g, v, lp.candy_mask) if lp.candy else math.inf
