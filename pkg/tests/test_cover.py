from __future__ import annotations

import itertools
import random

import pytest

from oddholes.cover import (CoverContext, CoverStep, check_2balls_bound, check_nbrz,
                            covering_host, find_gaps, four_path_rule, pentcover_analyze,
                            search_one_covering, stable_sets)
from oddholes.errors import CapabilityError, UsageError
from oddholes.generators import GROTZSCH_LABELS, complete, cycle, from_edge_mask, grotzsch, path
from oddholes.graph import Graph, to_mask
from oddholes.holes import InducedCycle, is_pentagonal, iter_induced_cycles
from oddholes.levelling import Levelling, validate_levelling

from support import oracle_induced_paths

A = {name: i for i, name in enumerate(GROTZSCH_LABELS)}


def grotzsch_context() -> CoverContext:
    h = grotzsch()
    sets = [{A["a1"]}, {A["a4"]}, {A["b1"], A["b2"], A["b3"], A["b4"], A["b5"]},
            {A["a2"], A["a5"]}, {A["a3"]}, {A["c"]}]
    host, lv = covering_host(h, [to_mask(s) for s in sets])
    return CoverContext.build(host, lv, range(h.n))


def brute_cover_exists(h: Graph, m: int) -> bool:
    sets = stable_sets(h)
    for r in range(1, m + 1):
        for combo in itertools.combinations(sets, r):
            union = 0
            for s in combo:
                union |= s
            if union == h.full_mask and is_pentagonal(covering_host(h, combo)[0]):
                return True
    return False


class TestContext:
    def test_h_map_and_dependents(self):
        ctx = grotzsch_context()
        u, v = ctx.cover_level[:2]
        assert ctx.h_map[u] == (A["a1"],)
        assert ctx.dependents(u) == (A["a1"],)
        assert all(ctx.dependents(w) for w in ctx.cover_level)

    def test_problems(self):
        h = cycle(5)
        host, lv = covering_host(h, [0b00101, 0b01010, 0b10000, 0b00001])
        ctx = CoverContext(host, lv, tuple(range(5)))
        assert ctx.problems() == ["cover vertex 8 has no dependent"]
        assert ctx.problems(require_minimal=False) == []
        with pytest.raises(UsageError):
            CoverContext.build(host, lv, range(5))
        outside = CoverContext(host, lv, (0, 1, 2, 3, 4, 5))
        assert "H is not inside the base" in outside.problems()
        unstable = Graph.from_edges(4, [(0, 1), (0, 2), (1, 2), (1, 3)])
        ctx = CoverContext(unstable, Levelling(((0,), (1, 2), (3,))), (3,))
        assert ctx.problems() == ["not a stable levelling (unstable at (1, 2))"]


class TestGaps:
    def test_grotzsch_gaps_match_brute_force(self):
        ctx = grotzsch_context()
        u, v = ctx.cover_level[:2]
        hu, hv = ctx.h_of(u), ctx.h_of(v)
        base = to_mask(ctx.levelling.base)
        for length in range(0, 6):
            ours = {min(gp.path, gp.path[::-1]) for gp in find_gaps(ctx, u, v, length)}
            expected = set()
            for p in oracle_induced_paths(ctx.host, base, length):
                ends_ok = (hu >> p[0] & 1 and not hv >> p[0] & 1
                           and hv >> p[-1] & 1 and not hu >> p[-1] & 1)
                inner_ok = all(not (hu | hv) >> x & 1 for x in p[1:-1])
                if length and ends_ok and inner_ok:
                    expected.add(min(p, p[::-1]))
            if length == 0:
                expected = {(x,) for x in range(ctx.host.n) if hu >> x & 1 and hv >> x & 1}
            assert ours == expected, length

    def test_a1_a4_has_a_two_gap(self):
        ctx = grotzsch_context()
        u, v = ctx.cover_level[:2]
        gaps = find_gaps(ctx, u, v, 2)
        assert [g.path for g in gaps] == [(A["a1"], A["a5"], A["a4"]),
                                          (A["a1"], A["b5"], A["a4"])]
        assert gaps[0].length == 2
        assert find_gaps(ctx, u, v, 3) != []

    def test_errors(self):
        ctx = grotzsch_context()
        with pytest.raises(UsageError):
            find_gaps(ctx, 0, ctx.cover_level[0], 2)
        with pytest.raises(UsageError):
            find_gaps(ctx, ctx.cover_level[0], ctx.cover_level[1], -1)

    def test_four_path_rule_is_the_gap_of_length_three(self):
        rnd = random.Random(4)
        for _ in range(200):
            n = rnd.randint(4, 7)
            h = from_edge_mask(n, rnd.getrandbits(n * (n - 1) // 2))
            sets = stable_sets(h)
            a, b = rnd.choice(sets), rnd.choice(sets)
            witness = four_path_rule(h, a, b)
            found = [p for p in oracle_induced_paths(h, h.full_mask, 3)
                     if a >> p[0] & 1 and not b >> p[0] & 1 and b >> p[3] & 1
                     and not a >> p[3] & 1 and not (a | b) >> p[1] & 1 and not (a | b) >> p[2] & 1]
            assert (witness is not None) == bool(found)
            if witness is not None:
                assert witness in found


class TestPentCover:
    def test_pentagon_covering(self):
        h = cycle(5)
        host, lv = covering_host(h, [0b00101, 0b01010, 0b10000])
        out = pentcover_analyze(host, lv, InducedCycle((0, 1, 2, 3, 4)))
        assert out.ok and len(out.S) == 3 and out.z == host.n - 1 and not out.has_cp3

    def test_optional_edge(self):
        host, lv = covering_host(cycle(5), [0b00101, 0b01010, 0b10100])
        out = pentcover_analyze(host, lv, (0, 1, 2, 3, 4))
        assert out.ok and out.has_cp3 and out.c == 7 and out.p[2] == 2

    def test_every_pentagonal_cover_of_the_pentagon_has_the_pattern(self):
        h = cycle(5)
        sets = stable_sets(h)
        checked = 0
        for r in range(1, 5):
            for combo in itertools.combinations(sets, r):
                union = 0
                for s in combo:
                    union |= s
                if union != h.full_mask:
                    continue
                host, lv = covering_host(h, combo)
                if not is_pentagonal(host):
                    continue
                for cyc in iter_induced_cycles(host, 5, 5, within=h.full_mask):
                    out = pentcover_analyze(host, lv, cyc)
                    assert out.ok, (combo, out)
                    checked += 1
        assert checked > 50

    def test_preconditions(self):
        host, lv = covering_host(cycle(5), [1, 2, 4, 8, 16])
        with pytest.raises(UsageError):  # contains a 7-hole
            pentcover_analyze(host, lv, (0, 1, 2, 3, 4))
        host, lv = covering_host(cycle(5), [0b00101, 0b01010, 0b10000])
        with pytest.raises(UsageError):
            pentcover_analyze(host, lv, (0, 1, 2, 3))
        with pytest.raises(UsageError):
            pentcover_analyze(host, Levelling(lv.levels[1:]), (0, 1, 2, 3, 4))


class TestNbrz:
    def test_pentagon_chain_contexts(self):
        first = search_one_covering(cycle(5), 3)
        second = search_one_covering(first.host, 8)
        assert second.found
        ctx = CoverContext.build(second.host, second.levelling, range(first.host.n))
        for z in range(first.host.n):
            verdict = check_nbrz(ctx, z)
            assert verdict.ok and verdict.chi <= 2

    def test_violation_returns_a_five_hole(self):
        # H = pentagon 0..4, w=5 joined to the pentagon and to z=6; every cover vertex
        # seeing the pentagon also sees z, so A is the whole pentagon
        edges = [(i, (i + 1) % 5) for i in range(5)] + [(5, i) for i in range(5)] + [(5, 6)]
        h = Graph.from_edges(7, edges)
        host, lv = covering_host(h, [to_mask([6, 0, 2]), to_mask([6, 1, 3]), to_mask([6, 4]),
                                     to_mask([5])])
        ctx = CoverContext.build(host, lv, range(7))
        verdict = check_nbrz(ctx, 6)
        assert not verdict.ok and verdict.chi == 3
        assert verdict.A == (0, 1, 2, 3, 4)
        assert verdict.hole.length == 5 and verdict.hole.is_valid(host)

    def test_z_must_be_in_h(self):
        ctx = grotzsch_context()
        with pytest.raises(UsageError):
            check_nbrz(ctx, ctx.cover_level[0])


class TestTwoBalls:
    def test_pentagon_chain(self):
        h = cycle(5)
        first = search_one_covering(h, 3)
        second = search_one_covering(first.host, 8)
        chain = [CoverStep(first.host, first.levelling, tuple(range(5))),
                 CoverStep(second.host, second.levelling, tuple(range(first.host.n)))]
        verdict = check_2balls_bound(h, chain)
        assert verdict.ok and verdict.values == {z: 2 for z in range(5)}

    def test_malformed_chains(self):
        h = cycle(5)
        first = search_one_covering(h, 3)
        good = CoverStep(first.host, first.levelling, tuple(range(5)))
        with pytest.raises(UsageError):
            check_2balls_bound(h, [good])
        bad_map = CoverStep(first.host, first.levelling, (0, 1, 2, 3, 3))
        with pytest.raises(UsageError):
            check_2balls_bound(h, [bad_map, good])
        not_induced = CoverStep(first.host, first.levelling, (0, 2, 1, 3, 4))
        with pytest.raises(UsageError):
            check_2balls_bound(h, [not_induced, good])


class TestSearch:
    def test_small_positive_controls(self):
        assert search_one_covering(complete(2), 2).cover_sets == ((0,), (1,))
        res = search_one_covering(cycle(5), 3)
        assert res.found and res.cover_sets == ((0,), (1, 3), (2, 4))
        assert validate_levelling(res.host, res.levelling, require_stable=True)
        assert is_pentagonal(res.host)

    def test_pentagon_needs_three(self):
        assert search_one_covering(cycle(5), 2).status == "absent"

    def test_grotzsch_small_covers_absent(self):
        res = search_one_covering(grotzsch(), 4)
        assert res.status == "absent"

    def test_agrees_with_brute_force(self):
        rnd = random.Random(3)
        outcomes = set()
        for _ in range(150):
            n = rnd.randint(1, 6)
            h = from_edge_mask(n, rnd.getrandbits(n * (n - 1) // 2) if n > 1 else 0)
            if not is_pentagonal(h):
                continue
            m = rnd.randint(1, 3)
            found = search_one_covering(h, m).found
            assert found == brute_cover_exists(h, m), (h.edges(), m)
            outcomes.add(found)
        assert outcomes == {True, False}

    def test_budget_and_arguments(self):
        res = search_one_covering(grotzsch(), 6, budget=5)
        assert res.status == "budget_exhausted" and res.expansions == 6
        with pytest.raises(CapabilityError):
            search_one_covering(cycle(5), 3, k=3)
        with pytest.raises(UsageError):
            search_one_covering(cycle(7), 3)
        with pytest.raises(UsageError):
            search_one_covering(path(3), 0)

    def test_json(self):
        data = search_one_covering(cycle(5), 3).to_json()
        assert data["status"] == "found" and data["levels"][0] == [8]
