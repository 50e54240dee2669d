"""Acceptance suite: nine end-to-end criteria, one PASS/FAIL line each.

Run on its own with ``pytest tests/test_acceptance.py -v`` (or ``python tests/test_acceptance.py``).
"""

from __future__ import annotations

import io
import itertools
import random
import time
from collections import Counter
from fractions import Fraction

import networkx as nx
import pytest

from oddholes.bounds import bound_2rad, bound_pentagonal_main, check_graph_against_theorems
from oddholes.cli import run
from oddholes.coloring import (brute_force_chromatic, chi_of_mask, chi_of_subset,
                               chromatic_number, subset_chromatic_table, verify_coloring)
from oddholes.cover import covering_host, pentcover_analyze, search_one_covering
from oddholes.extraction import Extraction, Witness, extract_stable_levelling, realized_bound
from oddholes.generators import (CorpusSpec, corpus_stream, cycle, from_edge_mask, grotzsch,
                                 mycielskian, petersen)
from oddholes.graph import Graph, are_isomorphic, to_graph6, to_mask
from oddholes.holes import InducedCycle, is_pentagonal, odd_hole_number
from oddholes.levelling import (FailureWitness, boost_cleanliness, cleanliness, is_lollipop,
                                lick, licking_problems, lollipop_problems, validate_levelling)

from lollipops import random_connected_subcandy, random_lollipop
from support import (branched_levelling, host_levelling, layered_levelling,
                     oracle_odd_hole_number, to_nx)


def report(capsys, number: int, ok: bool, detail: str) -> None:
    line = f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}"
    with capsys.disabled():
        print("\n" + line)
    assert ok, line


def test_criterion_1_grotzsch_facts(capsys):
    start = time.perf_counter()
    g = grotzsch()
    k, col = chromatic_number(g)
    facts = {
        "order": (g.n, g.edge_count) == (11, 20),
        "pentagonal": is_pentagonal(g),
        "chi": k == 4 and verify_coloring(g, col) and col.colour_count == 4,
        # lower bound by an independent route: the subset DP finds no 3-colouring
        "not 3-colourable": subset_chromatic_table(g)[g.full_mask] == 4,
        "mycielskian(C5)": are_isomorphic(mycielskian(cycle(5)), g)
        and nx.is_isomorphic(to_nx(mycielskian(cycle(5))), to_nx(g)),
    }
    elapsed = time.perf_counter() - start
    failed = [name for name, ok in facts.items() if not ok]
    report(capsys, 1, not failed and elapsed < 1.0,
           f"Grotzsch facts {len(facts) - len(failed)}/{len(facts)} in {elapsed:.3f}s"
           + (f" failed={failed}" if failed else ""))


def test_criterion_2_constant_chain(capsys):
    start = time.perf_counter()
    a, b = bound_2rad(2, 5), bound_pentagonal_main()
    elapsed = time.perf_counter() - start
    report(capsys, 2, a == 580 and b == 58000,
           f"bound_2rad(2,5)={a} bound_pentagonal_main()={b} in {elapsed * 1e3:.2f}ms")


def test_criterion_3_oracle_equivalence(capsys):
    start = time.perf_counter()
    mismatches = []
    graphs = [from_edge_mask(6, m) for m in range(1 << 15)]
    graphs += list(corpus_stream(CorpusSpec("random", 9, 9, Fraction(1, 2), 500, 0xACCE93)))
    for g in graphs:
        if chromatic_number(g)[0] != brute_force_chromatic(g):
            mismatches.append(("chi", to_graph6(g)))
        if odd_hole_number(g) != oracle_odd_hole_number(g):
            mismatches.append(("ohn", to_graph6(g)))
    elapsed = time.perf_counter() - start
    report(capsys, 3, len(graphs) == 32768 + 500 and not mismatches and elapsed < 300,
           f"{len(graphs)} graphs, {len(mismatches)} mismatches in {elapsed:.1f}s"
           + (f" first={mismatches[0]}" if mismatches else ""))


SWEEP_SPECS = [
    CorpusSpec("random", 1, 9, Fraction(1, 5), 2500, 0xB0D1),
    CorpusSpec("random", 1, 9, Fraction(3, 10), 2500, 0xB0D2, ("triangle-free",)),
    CorpusSpec("random", 1, 9, Fraction(1, 2), 2500, 0xB0D3),
    CorpusSpec("random", 1, 9, Fraction(7, 10), 2500, 0xB0D4),
]


def test_criterion_4_universal_bound_sweep(capsys):
    start = time.perf_counter()
    exhaustive = corpus_stream(CorpusSpec("exhaustive", 0, 6))
    randoms = itertools.chain.from_iterable(corpus_stream(s) for s in SWEEP_SPECS)
    checked = 0
    violations = []
    applicable: Counter = Counter()
    for g in itertools.chain(exhaustive, randoms):
        rep = check_graph_against_theorems(g)
        checked += 1
        applicable.update(rep.applicable)
        violations.extend((to_graph6(g), e.theorem) for e in rep.violations)
    elapsed = time.perf_counter() - start
    families = ["pentagonal", "longoddhole", "longhole", "longhole_weak", "boundedrad", "2rad",
                "longoddhole2", "longholelemma", "phiballs"]
    unexercised = [f for f in families if not any(t.split(":")[0] == f for t in applicable)]
    ok = checked == 33868 + 10_000 and not violations and not unexercised and elapsed < 900
    report(capsys, 4, ok,
           f"{checked} graphs, {len(violations)} violations, "
           f"{len(families) - len(unexercised)}/{len(families)} bound families exercised "
           f"in {elapsed:.1f}s" + (f" first={violations[0]}" if violations else ""))


def test_criterion_5_lollipop_laws(capsys):
    rnd = random.Random(0x10111)
    failures = []
    outcomes: Counter = Counter()
    start = time.perf_counter()
    for i in range(1000):
        g, lp = random_lollipop(rnd)
        if not is_lollipop(g, lp):
            failures.append((i, "generator", lollipop_problems(g, lp)))
            continue
        licked = lick(g, lp, random_connected_subcandy(rnd, g, lp))
        problems = licking_problems(g, lp, licked)
        if problems or cleanliness(g, licked) < cleanliness(g, lp):
            failures.append((i, "lick", problems))
        h = (1, 2, 3)[i % 3]
        chi = chi_of_mask(g, lp.candy_mask)
        kappa = rnd.randint(0, (chi - 1) // h)
        out = boost_cleanliness(g, lp, h, kappa)
        if isinstance(out, FailureWitness):
            outcomes["witness"] += 1
            if not (out.verify(g) and out.kappa == kappa):
                failures.append((i, "witness", out))
        else:
            outcomes["boosted"] += 1
            if (licking_problems(g, lp, out) or cleanliness(g, out) < cleanliness(g, lp) + h
                    or chi_of_mask(g, out.candy_mask) < chi - h * kappa):
                failures.append((i, "boost", out))
    elapsed = time.perf_counter() - start
    report(capsys, 5, not failures and outcomes["boosted"] and outcomes["witness"],
           f"1000 lollipops, {len(failures)} failures, boosted={outcomes['boosted']} "
           f"witnesses={outcomes['witness']} in {elapsed:.1f}s"
           + (f" first={failures[0]}" if failures else ""))


def _pentagonal_hosts() -> list[Graph]:
    hosts = [grotzsch(), petersen(), cycle(5), cycle(8), mycielskian(cycle(5))]
    spec = CorpusSpec("random", 8, 14, Fraction(1, 4), 40, 0x9E47, ("pentagonal", "connected"))
    hosts.extend(corpus_stream(spec))
    return [h for h in hosts if h.n <= 14]


def _non_pentagonal_hosts() -> list[Graph]:
    spec = CorpusSpec("random", 8, 14, Fraction(3, 10), 40, 0x7A11, ("connected",))
    return [h for h in corpus_stream(spec) if not is_pentagonal(h)] + [cycle(7), cycle(9)]


def _sound(g: Graph, lv, ell: int, kappa: int, out) -> str | None:
    if isinstance(out, Witness):
        return None if out.verify(g, ell, kappa) else "witness does not verify"
    if not isinstance(out, Extraction):
        return f"unexpected {type(out).__name__}"
    if not validate_levelling(g, out.levelling, require_stable=True):
        return "output is not a stable levelling"
    want = realized_bound(chi_of_mask(g, to_mask(lv.base)), ell, kappa)
    if out.guarantee != want or chi_of_subset(g, out.levelling.base) < want:
        return "chi guarantee missed"
    return None


def test_criterion_6_extraction_soundness(capsys):
    rnd = random.Random(0xE47)
    pent, nonpent = _pentagonal_hosts(), _non_pentagonal_hosts()
    kinds: Counter = Counter()
    unsound = []
    start = time.perf_counter()
    for i in range(500):
        source = i % 4
        if source == 0:
            g, lv = layered_levelling(rnd)
        elif source == 1:
            g, lv = branched_levelling(rnd)
        elif source == 2:
            g, lv = host_levelling(rnd, rnd.choice(pent))
        else:
            g, lv = host_levelling(rnd, rnd.choice(nonpent))
        assert g.n <= 14
        kinds["pentagonal" if is_pentagonal(g) else "non-pentagonal"] += 1
        ell, kappa = rnd.choice([1, 2]), rnd.choice([0, 1, 2])
        out = extract_stable_levelling(g, lv, ell, kappa)
        kinds[out.kind if isinstance(out, Witness) else
              ("fallback" if out.fallback else "built")] += 1
        problem = _sound(g, lv, ell, kappa, out)
        if problem:
            unsound.append((i, to_graph6(g), problem))
    elapsed = time.perf_counter() - start
    summary = " ".join(f"{k}={v}" for k, v in sorted(kinds.items()))
    mixed = kinds["pentagonal"] > 0 and kinds["non-pentagonal"] > 0
    report(capsys, 6, not unsound and mixed and kinds["built"] > 0,
           f"500 levellings, {len(unsound)} unsound ({summary}) in {elapsed:.1f}s"
           + (f" first={unsound[0]}" if unsound else ""))


def test_criterion_7_grotzsch_not_coverable(capsys):
    start = time.perf_counter()
    res = search_one_covering(grotzsch(), max_cover_size=6, k=2, budget=None)
    elapsed = time.perf_counter() - start
    report(capsys, 7, res.status == "absent" and elapsed < 1800,
           f"max_cover_size=6 status={res.status} expansions={res.expansions} "
           f"(full exhaustion, no budget) in {elapsed:.2f}s")


def test_criterion_8_pentagon_covering(capsys):
    start = time.perf_counter()
    res = search_one_covering(cycle(5), max_cover_size=3)
    ok = res.found and is_pentagonal(res.host)
    detail = f"status={res.status}"
    if ok:
        host, lv = covering_host(cycle(5), [to_mask(s) for s in res.cover_sets])
        ok = host == res.host
        pc = pentcover_analyze(res.host, res.levelling, InducedCycle((0, 1, 2, 3, 4)))
        apex = res.levelling.levels[0][0]
        ok = ok and pc.ok and len(pc.S) == 3 and pc.z == apex
        detail += f" cover_sets={res.cover_sets} |S|={len(pc.S)} z={pc.z} ok={pc.ok}"
    elapsed = time.perf_counter() - start
    report(capsys, 8, ok and elapsed < 60, detail + f" in {elapsed:.2f}s")


CLI_BATTERY = [
    (["gen", "--spec", "mode=random n=4..8 p=1/2 count=30 seed=5"], None),
    (["holes", "--min", "5"], "corpus"),
    (["holes", "--parity", "odd", "--json"], "corpus"),
    (["chi", "--witness"], "corpus"),
    (["pentagonal", "--json"], "corpus"),
    (["levelling", "--root", "0", "--check-stable"], "corpus"),
    (["extract", "--root", "0", "--ell", "1", "--kappa", "1", "--json"], "corpus"),
    (["analyze", "--json"], "corpus"),
    (["bounds-check"], "corpus"),
    (["bounds-check", "--spec", "mode=exhaustive n=0..4"], None),
    (["cover-search", "--max-cover", "3", "--json"], "pentagons"),
    (["cover-search", "--target", "grotzsch", "--max-cover", "4"], None),
]


def _run(argv: list[str], stdin: str, threads: int) -> tuple[int, str]:
    out = io.StringIO()
    code = run([*argv, "--threads", str(threads)], io.StringIO(stdin), out, io.StringIO())
    return code, out.getvalue()


def test_criterion_9_cli_determinism(capsys):
    start = time.perf_counter()
    _, corpus = _run(CLI_BATTERY[0][0], "", 1)
    pentagons = "".join(to_graph6(g) + "\n" for g in (cycle(5), cycle(4), grotzsch()))
    inputs = {None: "", "corpus": corpus, "pentagons": pentagons}
    differing = []
    for argv, source in CLI_BATTERY:
        one, eight = _run(argv, inputs[source], 1), _run(argv, inputs[source], 8)
        if one != eight or one[0] != 0:
            differing.append(" ".join(argv))
    elapsed = time.perf_counter() - start
    report(capsys, 9, not differing,
           f"{len(CLI_BATTERY)} invocations byte-identical at --threads 1 and 8 "
           f"(every CLI test also checks this) in {elapsed:.1f}s"
           + (f" differing={differing}" if differing else ""))


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-v"]))
