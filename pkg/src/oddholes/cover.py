"""Coverings of a graph H by stable levellings, and the Grötzsch search.

A levelling ``(L_0, ..., L_k)`` is *over* H when ``V(H)`` lies in the base.
For a cover vertex ``v`` in ``L_{k-1}``, ``H(v)`` is its set of neighbours in H;
a *dependent* of ``v`` is a member of ``H(v)`` with no other neighbour in
``L_{k-1}``.  A ``u``-``v`` *gap* is an induced path with one end in ``H(u)``,
the other in ``H(v)`` and no further vertex in ``H(u) | H(v)``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .coloring import DEFAULT_EXACT_LIMIT, chi_of_mask
from .errors import BudgetExhausted, CapabilityError, UsageError
from .graph import (Graph, automorphisms, bits, distance_layers,
                    is_stable_mask, neighborhood_mask, to_mask)
from .holes import Budget, InducedCycle, iter_induced_cycles, pentagonal_violation
from .levelling import Levelling, validate_levelling


@dataclass(frozen=True)
class CoverContext:
    host: Graph
    levelling: Levelling
    h_vertices: tuple[int, ...]

    @classmethod
    def build(cls, host: Graph, levelling: Levelling, h_vertices: Iterable[int],
              require_minimal: bool = True) -> CoverContext:
        ctx = cls(host, levelling, tuple(sorted(set(h_vertices))))
        problems = ctx.problems(require_minimal)
        if problems:
            raise UsageError("invalid cover context: " + "; ".join(problems))
        return ctx

    @property
    def h_mask(self) -> int:
        return to_mask(self.h_vertices)

    @property
    def cover_level(self) -> tuple[int, ...]:
        return self.levelling.levels[-2]

    def h_of(self, v: int) -> int:
        return self.host.adj[v] & self.h_mask

    @property
    def h_map(self) -> dict[int, tuple[int, ...]]:
        return {v: tuple(bits(self.h_of(v))) for v in self.cover_level}

    def dependents(self, v: int) -> tuple[int, ...]:
        others = 0
        for w in self.cover_level:
            if w != v:
                others |= self.h_of(w)
        return tuple(bits(self.h_of(v) & ~others))

    def problems(self, require_minimal: bool = True) -> list[str]:
        out = []
        lv = self.levelling
        verdict = validate_levelling(self.host, lv, require_stable=True)
        if not verdict:
            out.append(f"not a stable levelling ({verdict.clause} at {verdict.detail})")
            return out
        if lv.k < 1:
            out.append("levelling needs at least two levels")
            return out
        h = self.h_mask
        # every base vertex already has a parent in L_(k-1), so H is covered
        if h & ~to_mask(lv.base):
            out.append("H is not inside the base")
        if require_minimal:
            for v in self.cover_level:
                if not self.dependents(v):
                    out.append(f"cover vertex {v} has no dependent")
        return out


@dataclass(frozen=True)
class Gap:
    u: int
    v: int
    path: tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.path) - 1


def _gap_paths(g: Graph, within: int, ends_a: int, ends_b: int, length: int) -> list[tuple[int, ...]]:
    """Induced paths in ``g[within]`` of ``length`` edges from ``ends_a`` to ``ends_b``
    whose other vertices avoid ``ends_a | ends_b``."""
    adj = g.adj
    forbidden = ends_a | ends_b
    found: list[tuple[int, ...]] = []
    if length == 0:
        return [(x,) for x in bits(ends_a & ends_b & within)]

    def grow(path: list[int], blocked: int) -> None:
        last = path[-1]
        cand = adj[last] & within & ~blocked
        if len(path) == length:
            for y in bits(cand & ends_b & ~ends_a):
                found.append((*path, y))
            return
        for y in bits(cand & ~forbidden):
            path.append(y)
            grow(path, blocked | adj[last] | (1 << y))
            path.pop()

    for x in bits(ends_a & within & ~ends_b):
        grow([x], 1 << x)
    return found


def find_gaps(ctx: CoverContext, u: int, v: int, length: int) -> list[Gap]:
    """All ``u``-``v`` gaps with ``length`` edges inside the base, oriented from H(u)."""
    cover = ctx.cover_level
    if u not in cover or v not in cover:
        raise UsageError("u and v must lie in L_(k-1)")
    if length < 0:
        raise UsageError("gap length must be non-negative")
    base = to_mask(ctx.levelling.base)
    paths = _gap_paths(ctx.host, base, ctx.h_of(u), ctx.h_of(v), length)
    seen = set()
    out = []
    for p in paths:
        key = min(p, p[::-1])
        if key in seen:
            continue
        seen.add(key)
        out.append(Gap(u, v, p))
    return out


def four_path_rule(h: Graph, cover_a: int, cover_b: int) -> tuple[int, ...] | None:
    """An induced path u1-u2-u3-u4 of ``h`` with u1 in A, u4 in B, u1,u2 not in B and
    u3,u4 not in A (so it would be a gap of length three), or None."""
    for p in _gap_paths(h, h.full_mask, cover_a, cover_b, 3):
        return p
    return None


# --------------------------------------------------------------------------
# Five-hole covers and the radius-two predicates
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class PentCover:
    ok: bool
    reason: str | None = None
    S: tuple[int, ...] = ()
    a: int | None = None
    b: int | None = None
    c: int | None = None
    p: tuple[int, ...] = ()
    z: int | None = None
    has_cp3: bool = False


def _minimal_cover(g: Graph, pool: Sequence[int], targets: int) -> tuple[int, ...]:
    """Greedy-minimal subset of ``pool`` dominating ``targets`` (drop high indices first)."""
    chosen = [v for v in pool if g.adj[v] & targets]
    for v in sorted(chosen, reverse=True):
        trial = [w for w in chosen if w != v]
        if neighborhood_mask(g, to_mask(trial)) & targets == targets:
            chosen = trial
    return tuple(sorted(chosen))


def pentcover_analyze(g: Graph, lv: Levelling, p: InducedCycle | Sequence[int]) -> PentCover:
    """Check the structure of a minimal cover S of a 5-hole P in the base.

    Expected: |S| = 3, labels with edges exactly a-p1, a-p3, b-p2, b-p4, c-p5
    (plus possibly c-p3), and a vertex z of L_(k-2) adjacent to all of S.
    """
    hole = p if isinstance(p, InducedCycle) else InducedCycle(tuple(p))
    bad = pentagonal_violation(g)
    if bad is not None:
        raise UsageError(f"host is not pentagonal: odd cycle {bad}")
    verdict = validate_levelling(g, lv, require_stable=True)
    if not verdict:
        raise UsageError(f"not a stable levelling: {verdict.clause} at {verdict.detail}")
    if lv.k < 2:
        raise UsageError("need a levelling with at least three levels")
    if hole.length != 5 or not hole.is_valid(g):
        raise UsageError("p must be a 5-hole of the host")
    pmask = to_mask(hole.vertices)
    if pmask & ~to_mask(lv.base):
        raise UsageError("p must lie in the base")
    S = _minimal_cover(g, lv.levels[-2], pmask)
    if neighborhood_mask(g, to_mask(S)) & pmask != pmask:
        return PentCover(False, "some vertex of P has no neighbour in L_(k-1)", S)
    for s in S:
        if not is_stable_mask(g, g.adj[s] & pmask):
            return PentCover(False, f"neighbours of {s} on P are not stable", S)
    if len(S) != 3:
        return PentCover(False, f"|S| = {len(S)}, expected 3", S)
    vs = hole.vertices
    orders = []
    for r in range(5):
        rot = vs[r:] + vs[:r]
        orders.append(rot)
        orders.append(rot[:1] + rot[1:][::-1])
    for order in orders:
        p1, p2, p3, p4, p5 = order
        for a, b, c in itertools.permutations(S):
            need = {(a, p1), (a, p3), (b, p2), (b, p4), (c, p5)}
            actual = {(s, q) for s in S for q in order if g.has_edge(s, q)}
            extra = actual - need
            if need <= actual and extra <= {(c, p3)}:
                common = g.adj[a] & g.adj[b] & g.adj[c] & to_mask(lv.levels[-3])
                if not common:
                    return PentCover(False, "no vertex of L_(k-2) is adjacent to all of S", S,
                                     a, b, c, order)
                z = (common & -common).bit_length() - 1
                return PentCover(True, None, S, a, b, c, order, z, bool(extra))
    return PentCover(False, "edges between S and P do not match the expected pattern", S)


@dataclass(frozen=True)
class NbrzVerdict:
    ok: bool
    A: tuple[int, ...]
    chi: int
    hole: InducedCycle | None = None


def check_nbrz(ctx: CoverContext, z: int, limit: int = DEFAULT_EXACT_LIMIT) -> NbrzVerdict:
    """chi(A) <= 2 for A = {v in N^2_H(z): every L_(k-1)-neighbour of v is adjacent to z}."""
    g = ctx.host
    if z not in ctx.h_vertices:
        raise UsageError("z must be a vertex of H")
    cover = to_mask(ctx.cover_level)
    layers = distance_layers(g, z, ctx.h_mask)
    n2 = layers[2] if len(layers) > 2 else 0
    A = 0
    for v in bits(n2):
        if g.adj[v] & cover & ~g.adj[z] == 0:
            A |= 1 << v
    chi = chi_of_mask(g, A, limit)
    if chi <= 2:
        return NbrzVerdict(True, tuple(bits(A)), chi)
    hole = next(iter_induced_cycles(g, 5, 5, within=A), None)
    if hole is None:
        hole = next(iter_induced_cycles(g, 3, g.n, "odd", within=A), None)
    return NbrzVerdict(False, tuple(bits(A)), chi, hole)


@dataclass(frozen=True)
class CoverStep:
    """One link G_(i-1) -> G_i: a stable levelling of ``graph`` whose base holds
    the image of G_(i-1) under ``embedding`` (old vertex -> new vertex)."""
    graph: Graph
    levelling: Levelling
    embedding: tuple[int, ...]


@dataclass(frozen=True)
class TwoBallsVerdict:
    ok: bool
    values: dict[int, int] = field(hash=False)


def validate_chain(h: Graph, chain: Sequence[CoverStep]) -> None:
    prev = h
    for i, step in enumerate(chain, 1):
        emb = step.embedding
        g = step.graph
        if len(emb) != prev.n or len(set(emb)) != len(emb) or any(not 0 <= x < g.n for x in emb):
            raise UsageError(f"step {i}: embedding is not an injection into G_{i}")
        if not validate_levelling(g, step.levelling, require_stable=True):
            raise UsageError(f"step {i}: levelling is not a valid stable levelling")
        if to_mask(emb) & ~to_mask(step.levelling.base):
            raise UsageError(f"step {i}: G_{i - 1} is not inside the base")
        for u in range(prev.n):
            for v in range(u + 1, prev.n):
                if prev.has_edge(u, v) != g.has_edge(emb[u], emb[v]):
                    raise UsageError(f"step {i}: embedding is not induced at {u}-{v}")
        prev = g
    if pentagonal_violation(prev) is not None:
        raise UsageError("the top graph of the chain is not pentagonal")


def check_2balls_bound(h: Graph, chain: Sequence[CoverStep],
                       limit: int = DEFAULT_EXACT_LIMIT) -> TwoBallsVerdict:
    """Given a 2-covering chain over h, confirm chi(N^2_h(z)) <= 5 for every z."""
    if len(chain) != 2:
        raise UsageError("a 2-covering chain has exactly two steps")
    validate_chain(h, chain)
    values = {}
    for z in range(h.n):
        layers = distance_layers(h, z)
        values[z] = chi_of_mask(h, layers[2] if len(layers) > 2 else 0, limit)
    return TwoBallsVerdict(all(x <= 5 for x in values.values()), values)


# --------------------------------------------------------------------------
# Bounded search for a 1-covering with k = 2
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class CoverSearchResult:
    status: str  # "found" | "absent" | "budget_exhausted"
    expansions: int
    host: Graph | None = None
    levelling: Levelling | None = None
    cover_sets: tuple[tuple[int, ...], ...] = ()

    @property
    def found(self) -> bool:
        return self.status == "found"

    def to_json(self) -> dict:
        from .graph import to_graph6
        out: dict = {"status": self.status, "expansions": self.expansions}
        if self.host is not None:
            out["host_graph6"] = to_graph6(self.host)
            out["levels"] = self.levelling.to_json()
            out["cover_sets"] = [list(s) for s in self.cover_sets]
        return out


def covering_host(h: Graph, cover_sets: Sequence[int]) -> tuple[Graph, Levelling]:
    """Host on V(h) + cover vertices + apex; cover vertex i sees ``cover_sets[i]``."""
    n = h.n
    m = len(cover_sets)
    apex = n + m
    edges = list(h.edges())
    for i, s in enumerate(cover_sets):
        edges.append((apex, n + i))
        edges.extend((n + i, x) for x in bits(s))
    host = Graph.from_edges(n + m + 1, edges)
    return host, Levelling(((apex,), tuple(range(n, n + m)), tuple(range(n))))


def stable_sets(h: Graph) -> list[int]:
    """Non-empty stable sets of ``h`` as masks in ascending order."""
    return [m for m in range(1, 1 << h.n) if is_stable_mask(h, m)]


def search_one_covering(h: Graph, max_cover_size: int, k: int = 2,
                        budget: int | None = None) -> CoverSearchResult:
    """Exhaustive search for a pentagonal host with a stable levelling (z, L_1, V(h)).

    Only irredundant covers are explored (every cover vertex keeps a dependent);
    any covering contains one, so absence is exact for ``|L_1| <= max_cover_size``.
    Pairs of cover sets admitting a gap of length three are excluded up front,
    new cover vertices are rejected as soon as they close a triangle or an odd
    hole of length >= 7, and collections are enumerated up to automorphisms of h.
    """
    if k != 2:
        raise CapabilityError("only k = 2 coverings are searched")
    if max_cover_size < 1:
        raise UsageError("max_cover_size must be positive")
    bad = pentagonal_violation(h)
    if bad is not None:
        raise UsageError(f"target graph is not pentagonal: odd cycle {bad}")
    counter = Budget(budget)
    full = h.full_mask
    n = h.n
    cands = stable_sets(h)
    index = {m: i for i, m in enumerate(cands)}
    auts = automorphisms(h)

    def image(perm: tuple[int, ...], m: int) -> int:
        return to_mask(perm[x] for x in bits(m))

    orbit_min = [min(index[image(p, m)] for p in auts) for m in cands]
    compat = []
    for i, a in enumerate(cands):
        row = 0
        for j, b in enumerate(cands):
            if i != j and four_path_rule(h, a, b) is None and four_path_rule(h, b, a) is None:
                row |= 1 << j
        compat.append(row)
    all_cands = (1 << len(cands)) - 1

    chosen: list[int] = []

    def partial_host_ok() -> bool:
        host, _ = covering_host(h, [cands[i] for i in chosen])
        newest = 1 << (n + len(chosen) - 1)
        cyc = next(iter_induced_cycles(host, 7, host.n, "odd", through=newest), None)
        return cyc is None

    def irredundant(masks: list[int], covered_union: int) -> bool:
        for i, m in enumerate(masks):
            others = 0
            for j, o in enumerate(masks):
                if j != i:
                    others |= o
            if not m & ~others:
                return False
        return True

    def search(allowed: int, covered: int) -> CoverSearchResult | None:
        counter.spend()
        if covered == full:
            masks = [cands[i] for i in chosen]
            host, lv = covering_host(h, masks)
            if (validate_levelling(host, lv, require_stable=True)
                    and pentagonal_violation(host) is None):
                return CoverSearchResult("found", counter.used, host, lv,
                                         tuple(tuple(bits(m)) for m in masks))
            return None
        slots = max_cover_size - len(chosen)
        if slots == 0:
            return None
        reach = 0
        biggest = 0
        for j in bits(allowed):
            reach |= cands[j]
            biggest = max(biggest, cands[j].bit_count())
        missing = full & ~covered
        if reach & missing != missing or biggest * slots < missing.bit_count():
            return None
        for j in bits(allowed):
            m = cands[j]
            if not m & ~covered:
                continue
            if chosen and orbit_min[j] < chosen[0]:
                continue
            if not chosen and orbit_min[j] != j:
                continue
            masks = [cands[i] for i in chosen] + [m]
            if not irredundant(masks, covered | m):
                continue
            chosen.append(j)
            if partial_host_ok():
                later = allowed & compat[j] & ~((2 << j) - 1)
                res = search(later, covered | m)
                if res is not None:
                    return res
            chosen.pop()
        return None

    try:
        res = search(all_cands, 0)
    except BudgetExhausted as exc:
        return CoverSearchResult("budget_exhausted", exc.expansions)
    if res is not None:
        return res
    return CoverSearchResult("absent", counter.used)
