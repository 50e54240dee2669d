"""Named graphs, Mycielskians and reproducible graph corpora."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from .errors import CapabilityError, UsageError
from .graph import Graph, is_connected_mask

MASK64 = (1 << 64) - 1
EXHAUSTIVE_MAX_N = 8
FILTERS = ("triangle-free", "pentagonal", "connected")


class SplitMix64:
    """SplitMix64 (Steele, Lea, Flood 2014).

    state += 0x9E3779B97F4A7C15; z = state;
    z = (z ^ z>>30) * 0xBF58476D1CE4E5B9; z = (z ^ z>>27) * 0x94D049BB133111EB;
    return z ^ z>>31        (all arithmetic mod 2**64)
    """

    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def below(self, bound: int) -> int:
        """Uniform integer in ``[0, bound)`` by rejection (no modulo bias)."""
        if bound <= 0:
            raise UsageError("bound must be positive")
        limit = (1 << 64) - (1 << 64) % bound
        while True:
            x = self.next_u64()
            if x < limit:
                return x % bound

    def bernoulli(self, p: Fraction) -> bool:
        # x < p * 2**64, compared exactly
        return self.next_u64() * p.denominator < p.numerator << 64


def cycle(n: int) -> Graph:
    if n < 3:
        raise UsageError("a cycle needs at least 3 vertices")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def path(n: int) -> Graph:
    if n < 1:
        raise UsageError("a path needs at least 1 vertex")
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def complete(n: int) -> Graph:
    return Graph.from_edges(n, itertools.combinations(range(n), 2))


def star(leaves: int) -> Graph:
    return Graph.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


GROTZSCH_LABELS = ("a1", "a2", "a3", "a4", "a5", "b1", "b2", "b3", "b4", "b5", "c")


def grotzsch() -> Graph:
    """The Grötzsch graph: rim a1..a5 = 0..4, b1..b5 = 5..9, apex c = 10.

    a_i and b_i are both adjacent to a_{i-1} and a_{i+1}; c is adjacent to every b_i.
    """
    edges = []
    for i in range(5):
        edges.append((i, (i + 1) % 5))
        edges.append((5 + i, (i - 1) % 5))
        edges.append((5 + i, (i + 1) % 5))
        edges.append((10, 5 + i))
    return Graph.from_edges(11, edges, GROTZSCH_LABELS)


def mycielskian(g: Graph) -> Graph:
    """Vertices ``v`` (0..n-1), shadows ``v'`` (n..2n-1) and the hub ``w`` (2n)."""
    n = g.n
    edges = list(g.edges())
    for u, v in g.edges():
        edges.append((u + n, v))
        edges.append((v + n, u))
    edges.extend((2 * n, n + u) for u in range(n))
    return Graph.from_edges(2 * n + 1, edges)


def petersen() -> Graph:
    """Kneser graph K(5,2): 2-subsets of {0..4}, adjacent when disjoint."""
    pairs = list(itertools.combinations(range(5), 2))
    edges = [(i, j) for i, j in itertools.combinations(range(len(pairs)), 2)
             if not set(pairs[i]) & set(pairs[j])]
    return Graph.from_edges(10, edges)


def from_edge_mask(n: int, mask: int) -> Graph:
    """Graph whose edge set is the set bits of ``mask`` over pairs in lexicographic order."""
    rows = [0] * n
    e = 0
    for i in range(n):
        for j in range(i + 1, n):
            if mask >> e & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            e += 1
    return Graph(n, tuple(rows))


def erdos_renyi(n: int, p: Fraction, rng: SplitMix64) -> Graph:
    rows = [0] * n
    for i in range(n):
        for j in range(i + 1, n):
            if rng.bernoulli(p):
                rows[i] |= 1 << j
                rows[j] |= 1 << i
    return Graph(n, tuple(rows))


@dataclass(frozen=True)
class CorpusSpec:
    mode: str
    n_min: int
    n_max: int
    edge_probability: Fraction = Fraction(1, 2)
    sample_count: int = 1
    seed: int = 0
    filters: tuple[str, ...] = ()
    max_attempts_per_sample: int = 10_000

    def __post_init__(self):
        if self.mode not in ("exhaustive", "random"):
            raise UsageError(f"unknown corpus mode {self.mode!r}")
        if not 0 <= self.n_min <= self.n_max:
            raise UsageError("n range must satisfy 0 <= min <= max")
        if not 0 <= self.edge_probability <= 1:
            raise UsageError("edge probability must lie in [0, 1]")
        if self.mode == "random" and self.sample_count < 1:
            raise UsageError("random mode needs sample_count >= 1")
        unknown = set(self.filters) - set(FILTERS)
        if unknown:
            raise UsageError(f"unknown filters {sorted(unknown)}")

    @classmethod
    def parse(cls, text: str) -> CorpusSpec:
        """Parse ``mode=random n=5..9 p=3/10 count=100 seed=7 filters=triangle-free+connected``.

        Pairs may be separated by commas or whitespace.
        """
        fields: dict[str, str] = {}
        for item in text.replace(",", " ").split():
            if "=" not in item:
                raise UsageError(f"expected key=value, got {item!r}")
            key, value = item.split("=", 1)
            fields[key.strip()] = value.strip()
        known = {"mode", "n", "p", "count", "seed", "filters"}
        if set(fields) - known:
            raise UsageError(f"unknown corpus keys {sorted(set(fields) - known)}")
        if "n" not in fields:
            raise UsageError("corpus spec needs n=")
        n_text = fields["n"]
        try:
            if ".." in n_text:
                lo, hi = (int(x) for x in n_text.split(".."))
            else:
                lo = hi = int(n_text)
            p = Fraction(fields.get("p", "1/2"))
            count = int(fields.get("count", "1"))
            seed = int(fields.get("seed", "0"), 0)
        except ValueError as exc:
            raise UsageError(f"malformed corpus spec {text!r}: {exc}") from None
        filters = tuple(f for f in fields.get("filters", "").split("+") if f)
        return cls(fields.get("mode", "exhaustive"), lo, hi, p, count, seed, filters)


def passes_filters(g: Graph, filters: tuple[str, ...]) -> bool:
    from .holes import find_triangle, is_pentagonal

    for f in filters:
        if f == "connected" and not is_connected_mask(g, g.full_mask):
            return False
        if f == "triangle-free" and find_triangle(g) is not None:
            return False
        if f == "pentagonal" and not is_pentagonal(g):
            return False
    return True


def corpus_stream(spec: CorpusSpec) -> Iterator[Graph]:
    """Deterministic stream of graphs described by ``spec``.

    Exhaustive mode yields every labelled graph for each n in ascending edge-mask
    order.  Random mode yields ``sample_count`` accepted G(n, p) draws; a draw
    failing the filters is rejected and redrawn.
    """
    if spec.mode == "exhaustive":
        if spec.n_max > EXHAUSTIVE_MAX_N:
            raise CapabilityError(
                f"exhaustive enumeration is limited to n <= {EXHAUSTIVE_MAX_N}")
        for n in range(spec.n_min, spec.n_max + 1):
            for mask in range(1 << (n * (n - 1) // 2)):
                g = from_edge_mask(n, mask)
                if passes_filters(g, spec.filters):
                    yield g
        return
    rng = SplitMix64(spec.seed)
    span = spec.n_max - spec.n_min + 1
    for _ in range(spec.sample_count):
        for _attempt in range(spec.max_attempts_per_sample):
            n = spec.n_min + rng.below(span)
            g = erdos_renyi(n, spec.edge_probability, rng)
            if passes_filters(g, spec.filters):
                yield g
                break
        else:
            raise CapabilityError(
                f"no graph passed filters {spec.filters} within "
                f"{spec.max_attempts_per_sample} draws")
