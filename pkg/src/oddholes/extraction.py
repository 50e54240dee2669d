"""Certifying stable-levelling extraction.

:func:`extract_stable_levelling` turns any levelling of a triangle-free graph
with bounded odd hole number and bounded chi(N^2(v)) into a stable levelling
whose base keeps about half the chromatic number of the old base.  When the
input graph breaks one of those hypotheses the construction stops with a
:class:`Witness` that can be checked on its own.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .coloring import DEFAULT_EXACT_LIMIT, chi_of_mask, chromatic_number
from .errors import UsageError
from .graph import (Graph, bits, component_masks, distance_layers, induced_subgraph_mask,
                    lowest, to_mask)
from .holes import InducedCycle, find_triangle, long_odd_hole, pentagonal_violation
from .levelling import (FailureWitness, Levelling, Lollipop, best_component,
                        bfs_levelling, boost_cleanliness, lick, validate_levelling)


class ConstructionError(AssertionError):
    """An internal step contradicted what the construction guarantees (a bug)."""


@dataclass(frozen=True)
class Witness:
    kind: str  # "triangle" | "long_odd_hole" | "high_chi_ball"
    cycle: InducedCycle | None = None
    vertex: int | None = None
    ball: tuple[int, ...] = ()

    def verify(self, g: Graph, ell: int, kappa: int, limit: int = DEFAULT_EXACT_LIMIT) -> bool:
        if self.kind == "triangle":
            return self.cycle is not None and self.cycle.length == 3 and self.cycle.is_valid(g)
        if self.kind == "long_odd_hole":
            c = self.cycle
            return (c is not None and c.length % 2 == 1 and c.length > 2 * ell + 1
                    and c.is_valid(g))
        if self.kind == "high_chi_ball":
            if self.vertex is None or not 0 <= self.vertex < g.n:
                return False
            layers = distance_layers(g, self.vertex)
            n2 = layers[2] if len(layers) > 2 else 0
            return to_mask(self.ball) == n2 and chi_of_mask(g, n2, limit) > kappa
        return False

    def to_json(self) -> dict:
        out: dict = {"kind": self.kind}
        if self.cycle is not None:
            out["cycle"] = list(self.cycle.vertices)
        if self.vertex is not None:
            out["vertex"] = self.vertex
            out["ball"] = list(self.ball)
        return out


@dataclass(frozen=True)
class ExtractionTrace:
    spine: tuple[int, ...]
    alpha: int
    alpha_set: tuple[int, ...]
    j_levels: tuple[tuple[int, ...], ...]
    return_paths: dict[int, tuple[int, ...]] = field(hash=False)
    output_levels: tuple[tuple[int, ...], ...]
    boosted: Lollipop
    pruned: tuple[int, ...]

    def summary(self) -> dict:
        return {
            "spine": list(self.spine),
            "alpha": self.alpha,
            "alpha_set_size": len(self.alpha_set),
            "j_sizes": [len(j) for j in self.j_levels],
            "boosted_stick": list(self.boosted.stick),
            "boosted_candy_size": len(self.boosted.candy),
            "pruned": list(self.pruned),
        }


@dataclass(frozen=True)
class Extraction:
    levelling: Levelling
    trace: ExtractionTrace | None
    guarantee: int
    fallback: bool = False


def realized_bound(chi_base: int, ell: int, kappa: int) -> int:
    """ceil((chi_base - (2*ell - 1)*kappa) / 2), the guarantee the construction meets."""
    return -((-(chi_base - (2 * ell - 1) * kappa)) // 2)


def _hypothesis_witness(g: Graph, ell: int, index_map: tuple[int, ...] | None = None) -> Witness | None:
    """Triangle or odd hole longer than 2*ell + 1 in ``g``, translated through ``index_map``."""
    tri = find_triangle(g)
    if tri is not None:
        cyc, kind = tri, "triangle"
    else:
        cyc = long_odd_hole(g, 2 * ell + 1)
        kind = "long_odd_hole"
        if cyc is None:
            return None
    if index_map is not None:
        cyc = InducedCycle(tuple(index_map[v] for v in cyc.vertices))
    return Witness(kind, cyc)


def extract_stable_levelling(g: Graph, lv: Levelling, ell: int, kappa: int,
                             limit: int = DEFAULT_EXACT_LIMIT) -> Extraction | Witness:
    """Stable levelling with chi(base) >= ceil((chi(L_k) - (2*ell-1)*kappa)/2), or a Witness."""
    verdict = validate_levelling(g, lv)
    if not verdict:
        raise UsageError(f"invalid levelling: {verdict.clause} at {verdict.detail}")
    if ell < 1 or kappa < 0:
        raise UsageError("need ell >= 1 and kappa >= 0")
    k = lv.k
    chi_k = chi_of_mask(g, to_mask(lv.base), limit)
    guarantee = realized_bound(chi_k, ell, kappa)
    if k <= 1:
        return Extraction(lv, None, guarantee, fallback=True)
    if chi_k <= (2 * ell - 1) * kappa:
        return Extraction(Levelling(lv.levels[:2]), None, guarantee, fallback=True)

    # Work inside G[L_0 u ... u L_k] with the base cut down to a max-chi component.
    base_comp, _ = best_component(g, to_mask(lv.base), limit)
    level_masks = lv.masks[:-1] + [base_comp]
    pruned = _prune(g, level_masks)
    union = 0
    for m in level_masks:
        union |= m
    h, index_map = induced_subgraph_mask(g, union)
    position = {old: new for new, old in enumerate(index_map)}

    def local(mask: int) -> int:
        return to_mask(position[v] for v in bits(mask))

    def back(vs) -> tuple[int, ...]:
        return tuple(sorted(index_map[v] for v in vs))

    L = [local(m) for m in level_masks]
    level_of = {}
    for i, m in enumerate(L):
        for v in bits(m):
            level_of[v] = i
    adj = h.adj

    # Spine: s_i is the least vertex of L_i whose only parent is s_{i-1}.
    spine = [lowest(L[0])]
    for i in range(1, k + 1):
        prev = 1 << spine[-1]
        choice = next((v for v in bits(L[i]) if adj[v] & L[i - 1] == prev), None)
        if choice is None:
            raise ConstructionError(f"pruned levelling has no private child below level {i - 1}")
        spine.append(choice)
    S = to_mask(spine)

    boosted = boost_cleanliness(h, Lollipop.of(bits(L[k]), (spine[k - 2], spine[k - 1])),
                                2 * ell - 1, kappa, limit)
    if isinstance(boosted, FailureWitness):
        v = index_map[boosted.vertex]
        layers = distance_layers(g, v)
        return Witness("high_chi_ball", vertex=v, ball=tuple(bits(layers[2] if len(layers) > 2 else 0)))
    c_prime = boosted.candy_mask

    # Types of the vertices touching the spine.
    touching = 0
    types: dict[int, int] = {}
    for v in range(h.n):
        if S >> v & 1 or not adj[v] & S:
            continue
        touching |= 1 << v
        i = level_of[v]
        hits = adj[v] & S
        above = 1 << spine[i - 1] if i >= 1 else 0
        here = 1 << spine[i]
        if hits == above | here:
            return Witness("triangle", InducedCycle(back((v, spine[i - 1], spine[i]))))
        if hits == above:
            types[v] = 1
        elif hits == here:
            types[v] = 2
        else:
            raise ConstructionError(f"vertex {index_map[v]} meets the spine off its own levels")

    closure = {1: 0, 2: 0}
    for alpha in (1, 2):
        va = to_mask(v for v, t in types.items() if t == alpha)
        for i in range(1, k + 1):
            for v in bits(L[i] & ~S & ~touching):
                if adj[v] & L[i - 1] & va:
                    va |= 1 << v
        closure[alpha] = va

    chi_c = chi_of_mask(h, c_prime, limit)
    alpha = next((a for a in (1, 2) if 2 * chi_of_mask(h, closure[a] & c_prime, limit) >= chi_c), None)
    if alpha is None:
        raise ConstructionError("neither type keeps half of chi(C')")
    va = closure[alpha]
    cand, _ = best_component(h, va & c_prime, limit)
    final = lick(h, boosted, bits(cand))

    J = [0] * (k + 1)
    J[k] = cand
    for i in range(k - 1, 0, -1):
        need = J[i + 1] & ~touching
        pool = va & L[i]
        for w in bits(need):
            if not adj[w] & pool:
                raise ConstructionError(f"level {i + 1} vertex lacks a parent of type {alpha}")
        chosen = pool
        for x in sorted(bits(pool), reverse=True):
            trial = chosen & ~(1 << x)
            if all(adj[w] & trial for w in bits(need)):
                chosen = trial
        J[i] = chosen
    if J[1] & ~touching:
        raise ConstructionError("level-1 vertex outside N(S)")

    for i in range(1, k):
        for v in bits(J[i]):
            if adj[v] & J[i]:
                w = _hypothesis_witness(h, ell, index_map)
                if w is None:
                    raise ConstructionError(f"J_{i} is not stable yet no forbidden structure exists")
                return w

    return_paths = {}
    for i in range(1, k + 1):
        for v in bits(J[i]):
            r = [v]
            j = i
            while not touching >> r[-1] & 1:
                par = adj[r[-1]] & J[j - 1]
                r.append(lowest(par))
                j -= 1
            tail = spine[j - 1:i + 1] if alpha == 1 else spine[j:i + 1]
            route = tuple(r) + tuple(tail)
            if (len(route) - 1) % 2 != (0 if alpha == 1 else 1):
                raise ConstructionError(f"return path from {index_map[v]} has the wrong parity")
            if not _is_induced_path(h, route):
                raise ConstructionError(f"return path from {index_map[v]} is not induced")
            return_paths[index_map[v]] = tuple(index_map[x] for x in route)

    if alpha == 1:
        M = [(1 << spine[i]) | J[i] for i in range(k + 1)]
    else:
        M = [1 << spine[1]] + [(1 << spine[i + 1]) | J[i] for i in range(1, k)] + [J[k]]
    out = Levelling(tuple(back(bits(m)) for m in M))
    check = validate_levelling(g, out, require_stable=True)
    if not check:
        raise ConstructionError(f"output levelling fails {check.clause} at {check.detail}")
    if chi_of_mask(g, to_mask(out.base), limit) < guarantee:
        raise ConstructionError("output base misses the chromatic guarantee")

    trace = ExtractionTrace(
        spine=back_seq(index_map, spine),
        alpha=alpha,
        alpha_set=back(bits(va)),
        j_levels=tuple(back(bits(m)) for m in J),
        return_paths=return_paths,
        output_levels=out.levels,
        boosted=Lollipop(back(bits(final.candy_mask)), back_seq(index_map, final.stick)),
        pruned=pruned,
    )
    return Extraction(out, trace, guarantee)


def back_seq(index_map: tuple[int, ...], seq) -> tuple[int, ...]:
    return tuple(index_map[v] for v in seq)


def _is_induced_path(g: Graph, seq: tuple[int, ...]) -> bool:
    if len(set(seq)) != len(seq):
        return False
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if g.has_edge(seq[i], seq[j]) != (j == i + 1):
                return False
    return True


def _prune(g: Graph, masks: list[int]) -> tuple[int, ...]:
    """Drop vertices of L_0..L_{k-1} that are nobody's only parent, to a fixpoint.

    Mutates ``masks``; returns the removed vertices in removal order.
    """
    removed = []
    k = len(masks) - 1
    changed = True
    while changed:
        changed = False
        for i in range(k - 1, -1, -1):
            for u in bits(masks[i]):
                private = False
                for v in bits(g.adj[u] & masks[i + 1]):
                    if g.adj[v] & masks[i] == 1 << u:
                        private = True
                        break
                if not private:
                    masks[i] &= ~(1 << u)
                    removed.append(u)
                    changed = True
    return tuple(removed)


def find_stable_levelling(g: Graph, n: int, limit: int = DEFAULT_EXACT_LIMIT) -> Levelling | Witness:
    """Stable levelling with base chi >= n in a pentagonal graph with chi >= 10n - 9."""
    if n < 1:
        raise UsageError("n must be at least 1")
    bad = pentagonal_violation(g)
    if bad is not None:
        raise UsageError(f"graph is not pentagonal: odd cycle {bad}")
    chi, _ = chromatic_number(g, limit)
    if chi < 10 * n - 9:
        raise UsageError(f"chi(G) = {chi} < 10n - 9 = {10 * n - 9}")
    comps = component_masks(g, g.full_mask)
    comp = max(comps, key=lambda m: (chi_of_mask(g, m, limit), -lowest(m)))
    full = bfs_levelling(g, lowest(comp))
    level_chi = [chi_of_mask(g, to_mask(level), limit) for level in full.levels]
    k = max(range(len(level_chi)), key=lambda i: (level_chi[i], -i))
    if 2 * level_chi[k] < chi:
        raise ConstructionError("no BFS level carries half the chromatic number")
    result = extract_stable_levelling(g, Levelling(full.levels[:k + 1]), 2, n - 1, limit)
    if isinstance(result, Witness):
        if result.kind != "high_chi_ball":
            return result
        v = result.vertex
        layers = distance_layers(g, v)
        out = Levelling((
            (v,), tuple(bits(layers[1])), tuple(bits(layers[2])),
        ))
    else:
        out = result.levelling
    if not validate_levelling(g, out, require_stable=True):
        raise ConstructionError("stable levelling check failed")
    if chi_of_mask(g, to_mask(out.base), limit) < n:
        raise ConstructionError("base chromatic number below n")
    return out
