"""Closed-form chromatic bounds and a hypothesis-gated checker.

Each bound is applied with the tightest parameters its hypotheses admit, so a
sweep over a corpus is as strong a test of the inequality as desk scale allows.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

from .coloring import (DEFAULT_EXACT_LIMIT, TABLE_LIMIT, chromatic_number,
                       neighborhood_chi_profile, subset_chromatic_table)
from .errors import CapabilityError, UsageError
from .graph import Graph, distance_layers, to_graph6
from .holes import clique_number, cycle_stats

PHI_BALLED_LIMIT = 10


# --------------------------------------------------------------------------
# Formulas
# --------------------------------------------------------------------------

def bound_boundedrad(ell: int, kappa2: int, kappa3: int) -> int:
    return (12 * ell - 6) * kappa2 + 4 * kappa3 + 8


def bound_2rad(ell: int, kappa2: int) -> int:
    return (40 * ell + 28) * kappa2 + 40


def pentagonal_chain() -> tuple[int, int, int]:
    """(n1, n2, n3): n1 exceeds the radius-two bound at l=2, kappa2=5; n_(i+1) = 10 n_i - 9."""
    n1 = bound_2rad(2, 5) + 1
    n2 = 10 * n1 - 9
    n3 = 10 * n2 - 9
    return n1, n2, n3


def bound_pentagonal_main() -> int:
    return pentagonal_chain()[2] - 1


def bound_longoddhole(ell: int) -> int:
    return (ell + 1) * 4 ** (ell - 1)


def bound_longoddhole2(ell: int, m: int) -> int:
    """Strict: chi is *less than* this value."""
    return (3 + 4 * ell) * 4 ** (ell - m) - 4 * ell


def bound_longholelemma(ell: int, kappa: int) -> int:
    return (2 * ell - 2) * kappa


def bound_longhole(ell: int, omega: int) -> int:
    """The sharper form (2l-2)^(2^(omega-1)-1); needs omega >= 1."""
    if omega < 1:
        raise UsageError("omega must be at least 1")
    return (2 * ell - 2) ** (2 ** (omega - 1) - 1)


def bound_longhole_weak(ell: int, omega: int) -> int:
    """The headline form (2l-2)^(2^omega)."""
    return (2 * ell - 2) ** (2 ** omega)


# --------------------------------------------------------------------------
# phi
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class PhiFunction:
    """Non-decreasing map on naturals, tabulated; beyond the table it stays at the last value."""
    values: tuple[int, ...]
    name: str = "phi"

    def __post_init__(self):
        if not self.values:
            raise UsageError("phi needs at least one tabulated value")
        if any(v < 0 for v in self.values):
            raise UsageError("phi takes non-negative values")
        if any(b < a for a, b in zip(self.values, self.values[1:])):
            raise UsageError("phi must be non-decreasing")

    @classmethod
    def from_rule(cls, rule: Callable[[int], int], name: str, upto: int = 256) -> PhiFunction:
        return cls(tuple(rule(x) for x in range(upto + 1)), name)

    @classmethod
    def constant(cls, c: int) -> PhiFunction:
        return cls((c,), f"const{c}")

    def __call__(self, x: int) -> int:
        if x < 0:
            raise UsageError("phi is defined on non-negative integers")
        return self.values[min(x, len(self.values) - 1)]


def phi_family() -> list[PhiFunction]:
    return [
        PhiFunction.constant(1), PhiFunction.constant(2), PhiFunction.constant(3),
        PhiFunction.from_rule(lambda x: x, "x"),
        PhiFunction.from_rule(lambda x: x + 1, "x+1"),
        PhiFunction.from_rule(lambda x: x + 2, "x+2"),
        PhiFunction.from_rule(lambda x: 2 * x, "2x"),
    ]


def bound_phiballs(phi: PhiFunction) -> int:
    return phi(phi(phi(2 * phi(1) + 1)))


def check_phi_balled(g: Graph, phi: PhiFunction, size_limit: int = PHI_BALLED_LIMIT,
                     table: bytearray | None = None) -> bool:
    """Every non-null induced H has v with chi(H) <= phi(chi(N^2_H(v)))."""
    if g.n > size_limit:
        raise CapabilityError(f"phi-balled check limited to {size_limit} vertices")
    if table is None:
        table = subset_chromatic_table(g, max(size_limit, TABLE_LIMIT))
    return _first_unballed(g, phi, table) is None


def _first_unballed(g: Graph, phi: PhiFunction, table: bytearray) -> int | None:
    for h in range(1, 1 << g.n):
        target = table[h]
        ok = False
        rest = h
        while rest:
            low = rest & -rest
            rest ^= low
            layers = distance_layers(g, low.bit_length() - 1, h)
            n2 = layers[2] if len(layers) > 2 else 0
            if target <= phi(table[n2]):
                ok = True
                break
        if not ok:
            return h
    return None


# --------------------------------------------------------------------------
# Profiles and reports
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class GraphProfile:
    n: int
    omega: int
    chi: int
    odd_hole_number: int
    max_hole_length: int
    has_5_hole: bool
    has_7_hole: bool
    triangle_free: bool
    kappa2: int
    kappa3: int
    kappa1: int = 0
    odd_girth: int | None = None  # shortest induced odd cycle

    @property
    def pentagonal(self) -> bool:
        return self.triangle_free and self.odd_hole_number <= 5

    def to_json(self) -> dict:
        return {k: getattr(self, k) for k in (
            "n", "omega", "chi", "odd_hole_number", "max_hole_length", "has_5_hole",
            "has_7_hole", "triangle_free", "kappa1", "kappa2", "kappa3", "odd_girth")} | {
            "pentagonal": self.pentagonal}


def profile(g: Graph, limit: int = DEFAULT_EXACT_LIMIT,
            table: bytearray | None = None) -> GraphProfile:
    if g.n > limit:
        raise CapabilityError(f"profile limited to {limit} vertices")
    if table is None and g.n <= TABLE_LIMIT:
        table = subset_chromatic_table(g)
    stats = cycle_stats(g)
    chi = table[g.full_mask] if table is not None else chromatic_number(g, limit)[0]
    nb = neighborhood_chi_profile(g, limit, table)
    return GraphProfile(
        n=g.n, omega=clique_number(g), chi=chi,
        odd_hole_number=stats.odd_hole_number, max_hole_length=stats.max_hole_length,
        has_5_hole=stats.has_hole(5), has_7_hole=stats.has_hole(7),
        triangle_free=stats.triangle_free, kappa2=nb.kappa2, kappa3=nb.kappa3,
        kappa1=nb.kappa1, odd_girth=stats.shortest_odd_cycle)


@dataclass(frozen=True)
class BoundEntry:
    theorem: str
    applicable: bool
    params: dict = field(default_factory=dict, hash=False)
    bound: int | None = None
    chi: int | None = None
    strict: bool = False
    skipped: str | None = None

    @property
    def satisfied(self) -> bool | None:
        if not self.applicable or self.bound is None:
            return None
        return self.chi < self.bound if self.strict else self.chi <= self.bound

    def to_json(self) -> dict:
        out: dict = {"theorem": self.theorem, "applicable": self.applicable}
        if self.skipped:
            out["skipped"] = self.skipped
        if self.applicable:
            out.update(params=self.params, bound=self.bound, chi=self.chi,
                       strict=self.strict, satisfied=self.satisfied)
        return out


@dataclass(frozen=True)
class BoundReport:
    graph6: str
    profile: GraphProfile | None
    entries: tuple[BoundEntry, ...]

    @property
    def violations(self) -> list[BoundEntry]:
        return [e for e in self.entries if e.satisfied is False]

    @property
    def applicable(self) -> list[str]:
        return [e.theorem for e in self.entries if e.applicable]

    def entry(self, theorem: str) -> BoundEntry:
        return next(e for e in self.entries if e.theorem == theorem)

    def to_json(self) -> dict:
        return {"graph6": self.graph6,
                "profile": self.profile.to_json() if self.profile else None,
                "entries": [e.to_json() for e in self.entries],
                "violations": len(self.violations)}


THEOREMS = ("pentagonal", "longoddhole", "longhole", "longhole_weak", "boundedrad", "2rad",
            "longoddhole2", "longholelemma")


def _least_ell(odd_hole_number: int, floor: int) -> int:
    # least l with odd hole number <= 2l + 1
    return max(floor, (odd_hole_number - 1) // 2)


def _entries_for(p: GraphProfile) -> list[BoundEntry]:
    chi = p.chi
    out = []

    def add(name: str, ok: bool, params: dict | None = None, bound: int | None = None,
            strict: bool = False) -> None:
        if ok:
            out.append(BoundEntry(name, True, params or {}, bound, chi, strict))
        else:
            out.append(BoundEntry(name, False))

    nonnull = p.n > 0
    add("pentagonal", nonnull and p.pentagonal, {}, bound_pentagonal_main())

    tf = nonnull and p.triangle_free
    ell = _least_ell(p.odd_hole_number, 2)
    add("longoddhole", tf and not p.has_5_hole, {"ell": ell}, bound_longoddhole(ell))

    ell = max(3, p.max_hole_length)
    no5 = nonnull and not p.has_5_hole
    add("longhole", no5, {"ell": ell, "omega": p.omega}, bound_longhole(ell, max(p.omega, 1)))
    add("longhole_weak", no5, {"ell": ell, "omega": p.omega},
        bound_longhole_weak(ell, p.omega))

    ell = _least_ell(p.odd_hole_number, 1)
    add("boundedrad", tf, {"ell": ell, "kappa2": p.kappa2, "kappa3": p.kappa3},
        bound_boundedrad(ell, p.kappa2, p.kappa3))
    add("2rad", tf, {"ell": ell, "kappa2": p.kappa2}, bound_2rad(ell, p.kappa2))

    ell = _least_ell(p.odd_hole_number, 2)
    if p.odd_girth is None:
        m = ell
    else:
        m = min(ell, (p.odd_girth - 3) // 2)
    add("longoddhole2", tf and m >= 2, {"ell": ell, "m": m},
        bound_longoddhole2(ell, m), strict=True)

    ell = max(3, p.max_hole_length)
    kappa = max(1, p.kappa1, p.kappa2)
    add("longholelemma", nonnull, {"ell": ell, "kappa": kappa},
        bound_longholelemma(ell, kappa))
    return out


def check_graph_against_theorems(g: Graph, phis: Sequence[PhiFunction] | None = None,
                                 phi_limit: int = PHI_BALLED_LIMIT,
                                 limit: int = DEFAULT_EXACT_LIMIT) -> BoundReport:
    """Evaluate every bound whose hypotheses hold; graphs beyond the limits get skipped entries."""
    phis = phi_family() if phis is None else list(phis)
    g6 = to_graph6(g)
    phi_names = [f"phiballs:{phi.name}" for phi in phis]
    try:
        table = subset_chromatic_table(g) if g.n <= TABLE_LIMIT else None
        p = profile(g, limit, table)
    except CapabilityError as exc:
        why = str(exc)
        return BoundReport(g6, None, tuple(BoundEntry(t, False, skipped=why)
                                           for t in (*THEOREMS, *phi_names)))
    entries = _entries_for(p)
    for phi, name in zip(phis, phi_names):
        if p.n == 0 or not p.triangle_free or p.has_7_hole:
            entries.append(BoundEntry(name, False))
        elif p.n > phi_limit:
            entries.append(BoundEntry(name, False, skipped=f"phi-balled check limited to "
                                                           f"{phi_limit} vertices"))
        else:
            if table is None:
                table = subset_chromatic_table(g, phi_limit)
            verdict = _first_unballed(g, phi, table) is None
            entries.append(BoundEntry(name, True, {}, bound_phiballs(phi), p.chi) if verdict
                           else BoundEntry(name, False, {"balled": False}))
    return BoundReport(g6, p, tuple(entries))

