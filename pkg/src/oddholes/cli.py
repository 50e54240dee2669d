"""Command-line front end: ``oddholes <command> [options]``.

Every command reads a stream of graphs (graph6 lines, or concatenated edge-list
records) and handles each graph independently, so ``--threads`` only changes
who does the work, never what is printed.
"""

from __future__ import annotations

import argparse
import contextlib
import io
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from functools import partial
from typing import Callable, Sequence

from . import bounds, coloring, cover, extraction, generators, holes, levelling
from .errors import CapabilityError, UsageError
from .graph import Graph, from_edgelist, from_graph6, to_edgelist, to_graph6

SCHEMA = 1


# --------------------------------------------------------------------------
# Input and output
# --------------------------------------------------------------------------

def _content_lines(text: str) -> list[str]:
    out = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append(line)
    return out


def detect_format(text: str) -> str:
    lines = _content_lines(text)
    if not lines:
        return "graph6"
    return "edgelist" if len(lines[0].split()) >= 2 else "graph6"


def read_graphs(text: str, fmt: str = "auto") -> list[Graph]:
    if fmt == "auto":
        fmt = detect_format(text)
    if fmt == "graph6":
        out = []
        for raw in text.splitlines():
            line = raw.strip()
            if line.startswith(">>graph6<<"):
                line = line[len(">>graph6<<"):]
            if line:
                out.append(from_graph6(line))
        return out
    lines = _content_lines(text)
    graphs = []
    i = 0
    while i < len(lines):
        header = lines[i].split()
        if len(header) != 2:
            raise UsageError(f"edge-list header must be 'n m', got {lines[i]!r}")
        try:
            m = int(header[1])
        except ValueError:
            raise UsageError(f"bad edge-list header {lines[i]!r}") from None
        block = lines[i:i + m + 1]
        if len(block) != m + 1:
            raise UsageError("edge-list record is truncated")
        graphs.append(from_edgelist("\n".join(block)))
        i += m + 1
    return graphs


def write_graph(g: Graph, fmt: str) -> str:
    return to_edgelist(g) if fmt == "edgelist" else to_graph6(g) + "\n"


def dump(obj: dict) -> str:
    return json.dumps({"schema": SCHEMA, **obj}, sort_keys=True) + "\n"


def parse_vertices(text: str) -> tuple[int, ...]:
    text = text.strip()
    if not text:
        return ()
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise UsageError(f"expected comma-separated vertices, got {text!r}") from None


def parse_levels(text: str) -> levelling.Levelling:
    """``"0|1,4|2,3"`` -> levels ((0,), (1, 4), (2, 3))."""
    return levelling.Levelling(tuple(parse_vertices(part) for part in text.split("|")))


def format_levels(lv: levelling.Levelling) -> str:
    return "|".join(",".join(map(str, level)) for level in lv.levels)


def named_graph(text: str) -> Graph:
    name, _, arg = text.partition(":")
    simple = {"grotzsch": generators.grotzsch, "petersen": generators.petersen}
    sized = {"cycle": generators.cycle, "path": generators.path,
             "complete": generators.complete, "star": generators.star}
    if name in simple and not arg:
        return simple[name]()
    if name in sized:
        try:
            return sized[name](int(arg))
        except ValueError:
            raise UsageError(f"{name} needs an integer size, e.g. {name}:5") from None
    if name == "mycielskian" and arg:
        return generators.mycielskian(named_graph(arg))
    raise UsageError(f"unknown named graph {text!r}")


# --------------------------------------------------------------------------
# Per-graph workers (top level so they pickle)
# --------------------------------------------------------------------------

def _heading(args, index: int) -> str:
    return f"# graph {index}\n" if args.multi and not args.json else ""


def work_holes(args, item: tuple[int, Graph]) -> str:
    index, g = item
    if args.check is not None:
        cyc = holes.InducedCycle(parse_vertices(args.check))
        problems = cyc.problems(g)
        if args.json:
            return dump({"index": index, "valid": not problems, "problems": problems})
        return _heading(args, index) + ("valid\n" if not problems else
                                        "invalid: " + "; ".join(problems) + "\n")
    budget = holes.Budget(args.budget) if args.budget is not None else None
    max_len = args.max_len if args.max_len is not None else g.n
    found = holes.iter_induced_cycles(g, args.min_len, max_len, args.parity, budget)
    if args.witness:
        first = next(found, None)
        cycles = [first] if first is not None else []
    else:
        cycles = list(found)
    if args.json:
        data = {"index": index, "count": len(cycles)}
        if not args.count_only:
            data["cycles"] = [list(c.vertices) for c in cycles]
        return dump(data)
    if args.count_only:
        return _heading(args, index) + f"{len(cycles)}\n"
    if args.witness and not cycles:
        return _heading(args, index) + "none\n"
    return _heading(args, index) + "".join(f"{c}\n" for c in cycles)


def work_chi(args, item: tuple[int, Graph]) -> str:
    index, g = item
    if args.check_coloring is not None:
        assignment = parse_vertices(args.check_coloring)
        k = max(assignment) + 1 if assignment else 0
        ok = coloring.verify_coloring(g, coloring.Coloring(assignment, k))
        if args.json:
            return dump({"index": index, "valid": ok, "colours": k})
        return _heading(args, index) + ("valid\n" if ok else "invalid\n")
    k, col = coloring.chromatic_number(g, args.limit)
    if args.json:
        data = {"index": index, "chi": k, "coloring": list(col.assignment)}
        if args.witness:
            data["classes"] = [list(c) for c in col.classes()]
        return dump(data)
    text = f"{k}\n" + ",".join(map(str, col.assignment)) + "\n"
    if args.witness:
        text += "".join(f"class {i}: {','.join(map(str, c))}\n"
                        for i, c in enumerate(col.classes()))
    return _heading(args, index) + text


def work_pentagonal(args, item: tuple[int, Graph]) -> str:
    index, g = item
    bad = holes.pentagonal_violation(g)
    if args.json:
        return dump({"index": index, "pentagonal": bad is None,
                     "witness": list(bad.vertices) if bad else None})
    return _heading(args, index) + ("true\n" if bad is None else f"false {bad}\n")


def work_levelling(args, item: tuple[int, Graph]) -> str:
    index, g = item
    if args.check is not None:
        verdict = levelling.validate_levelling(g, parse_levels(args.check), args.check_stable)
        if args.json:
            return dump({"index": index, "valid": verdict.ok, "clause": verdict.clause,
                         "detail": list(verdict.detail)})
        text = "valid\n" if verdict.ok else f"invalid {verdict.clause} {list(verdict.detail)}\n"
        return _heading(args, index) + text
    lv = levelling.bfs_levelling(g, args.root)
    stable = levelling.is_stable_levelling(g, lv)
    if args.check_stable:
        verdict = levelling.validate_levelling(g, lv, True)
        if args.json:
            return dump({"index": index, "levels": lv.to_json(), "valid": verdict.ok,
                         "clause": verdict.clause, "detail": list(verdict.detail)})
        text = "stable\n" if verdict.ok else f"unstable {list(verdict.detail)}\n"
        return _heading(args, index) + format_levels(lv) + "\n" + text
    if args.json:
        return dump({"index": index, "levels": lv.to_json(), "stable": stable})
    return _heading(args, index) + format_levels(lv) + ("  stable\n" if stable else "\n")


def _witness_out(args, index: int, w: extraction.Witness) -> str:
    if args.json:
        return dump({"index": index, "result": "witness", "witness": w.to_json()})
    if w.cycle:
        return _heading(args, index) + f"witness {w.kind} {w.cycle}\n"
    return _heading(args, index) + f"witness {w.kind} vertex {w.vertex}\n"


def work_extract(args, item: tuple[int, Graph]) -> str:
    index, g = item
    if args.verify_witness is not None:
        data = json.loads(args.verify_witness)
        cyc = data.get("cycle")
        w = extraction.Witness(data["kind"], holes.InducedCycle(tuple(cyc)) if cyc else None,
                               data.get("vertex"), tuple(data.get("ball") or ()))
        ok = w.verify(g, args.ell, args.kappa)
        if args.json:
            return dump({"index": index, "valid": ok})
        return _heading(args, index) + ("valid\n" if ok else "invalid\n")
    if args.levels is None and args.root is None:
        out = extraction.find_stable_levelling(g, args.n)
        if isinstance(out, extraction.Witness):
            return _witness_out(args, index, out)
        if args.json:
            return dump({"index": index, "result": "levelling", "levels": out.to_json()})
        return _heading(args, index) + format_levels(out) + "\n"
    if args.levels is not None and args.root is not None:
        raise UsageError("give --levels or --root, not both")
    lv = parse_levels(args.levels) if args.levels is not None else \
        levelling.bfs_levelling(g, args.root)
    out = extraction.extract_stable_levelling(g, lv, args.ell, args.kappa)
    if isinstance(out, extraction.Witness):
        return _witness_out(args, index, out)
    if args.json:
        return dump({"index": index, "result": "levelling", "levels": out.levelling.to_json(),
                     "guarantee": out.guarantee, "fallback": out.fallback,
                     "trace": out.trace.summary() if out.trace else None})
    return (_heading(args, index) + format_levels(out.levelling)
            + f"  guarantee {out.guarantee}" + ("  fallback" if out.fallback else "") + "\n")


def work_cover(args, item: tuple[int, Graph]) -> tuple[str, str | None]:
    """The verdict is printed either way; an exhausted budget also sets exit code 1."""
    index, g = item
    res = cover.search_one_covering(g, args.max_cover, 2, args.budget)
    note = f"graph {index}: budget exhausted" if res.status == "budget_exhausted" else None
    if args.json:
        return dump({"index": index, **res.to_json()}), note
    text = f"{res.status} expansions={res.expansions}\n"
    if res.found:
        text += (f"host {to_graph6(res.host)}\nlevels {format_levels(res.levelling)}\n"
                 f"cover_sets {'|'.join(','.join(map(str, c)) for c in res.cover_sets)}\n")
    return _heading(args, index) + text, note


TARGETS = {"grotzsch": "grotzsch", "c5": "cycle:5"}


def work_bounds(args, item: tuple[int, Graph]) -> str:
    index, g = item
    rep = bounds.check_graph_against_theorems(g, phi_limit=args.phi_limit)
    return json.dumps({"index": index, **rep.to_json()}, sort_keys=True) + "\n"


def work_analyze(args, item: tuple[int, Graph]) -> str:
    index, g = item
    p = bounds.profile(g, args.limit)
    data = {"vertices": g.n, "edges": g.edge_count, "graph6": to_graph6(g), **p.to_json()}
    if args.json:
        return dump({"index": index, **data})
    return _heading(args, index) + "".join(f"{k}={json.dumps(v)}\n" for k, v in data.items())


# --------------------------------------------------------------------------
# Driver
# --------------------------------------------------------------------------

def _map(args, fn: Callable, items: list) -> list[str]:
    work = partial(fn, args)
    if args.threads <= 1 or len(items) <= 1:
        return [work(x) for x in items]
    with ProcessPoolExecutor(max_workers=args.threads) as pool:
        return list(pool.map(work, items, chunksize=max(1, len(items) // (4 * args.threads))))


def _load(args, stdin) -> list[Graph]:
    if args.input == "-":
        text = stdin.read()
    else:
        try:
            with open(args.input, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise UsageError(f"cannot read {args.input}: {exc}") from None
    return read_graphs(text, args.format)


def cmd_gen(args, stdin, out) -> None:
    fmt = "graph6" if args.format == "auto" else args.format
    if (args.named is None) == (args.spec is None):
        raise UsageError("gen needs exactly one of --named or --spec")
    if args.named is not None:
        graphs = [named_graph(args.named)]
    else:
        graphs = _corpus(args)
    for g in graphs:
        out.write(dump({"graph6": to_graph6(g)}) if args.json else write_graph(g, fmt))


def _corpus(args) -> list[Graph]:
    spec = generators.CorpusSpec.parse(args.spec)
    if args.seed is not None:
        spec = generators.CorpusSpec(spec.mode, spec.n_min, spec.n_max,
                                     spec.edge_probability, spec.sample_count, args.seed,
                                     spec.filters, spec.max_attempts_per_sample)
    return list(generators.corpus_stream(spec))


def cmd_bounds(args, stdin, out) -> None:
    if args.spec is not None:
        graphs = _corpus(args)
    else:
        graphs = _load(args, stdin)
    lines = _map(args, work_bounds, list(enumerate(graphs)))
    counts: dict[str, int] = {}
    violations = 0
    for line in lines:
        rep = json.loads(line)
        violations += rep["violations"]
        for e in rep["entries"]:
            if e["applicable"]:
                counts[e["theorem"]] = counts.get(e["theorem"], 0) + 1
        out.write(dump(rep))
    out.write(dump({"summary": {"checked": len(graphs), "violations": violations,
                                "applicable_counts": dict(sorted(counts.items()))}}))
    if violations:
        raise CapabilityError(f"{violations} bound violation(s)")


WORKERS = {"holes": work_holes, "chi": work_chi, "pentagonal": work_pentagonal,
           "levelling": work_levelling, "extract": work_extract, "cover-search": work_cover,
           "analyze": work_analyze}


def build_parser() -> argparse.ArgumentParser:
    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument("--format", choices=("auto", "edgelist", "graph6"), default="auto")
    shared.add_argument("--input", default="-", help="file to read, or - for stdin")
    shared.add_argument("--json", action="store_true")
    shared.add_argument("--seed", type=int, default=None)
    shared.add_argument("--budget", type=int, default=None, help="node-expansion cap")
    shared.add_argument("--threads", type=int, default=1)

    p = argparse.ArgumentParser(prog="oddholes", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("gen", parents=[shared], help="emit named or generated graphs")
    s.add_argument("--named", help="grotzsch, petersen, cycle:N, path:N, complete:N, star:N, "
                                   "mycielskian:<name>")
    s.add_argument("--spec", help='corpus, e.g. "mode=random n=5..9 p=1/2 count=10"')

    s = sub.add_parser("holes", parents=[shared], help="list induced cycles")
    s.add_argument("--min", "--min-len", dest="min_len", type=int, default=3)
    s.add_argument("--max", "--max-len", dest="max_len", type=int, default=None)
    s.add_argument("--parity", choices=holes.PARITIES, default="any")
    s.add_argument("--count-only", action="store_true")
    s.add_argument("--witness", action="store_true", help="stop at the first cycle found")
    s.add_argument("--check", metavar="V,V,...", help="validate an induced cycle instead")

    s = sub.add_parser("chi", parents=[shared], help="exact chromatic number")
    s.add_argument("--limit", type=int, default=coloring.DEFAULT_EXACT_LIMIT)
    s.add_argument("--witness", action="store_true", help="also print the colour classes")
    s.add_argument("--check-coloring", metavar="C,C,...", help="validate a colouring instead")

    sub.add_parser("pentagonal", parents=[shared], help="pentagonality with witness")

    s = sub.add_parser("levelling", parents=[shared], help="BFS levelling or levelling check")
    s.add_argument("--root", type=int, default=0)
    s.add_argument("--check", metavar="LEVELS", help='validate levels such as "0|1,4|2,3"')
    s.add_argument("--check-stable", "--stable", dest="check_stable", action="store_true",
                   help="require stability (of --check LEVELS, or of the BFS levelling)")

    s = sub.add_parser("extract", parents=[shared], help="extract a stable levelling")
    s.add_argument("--levels", help="input levelling; omit to search from the graph")
    s.add_argument("--root", type=int, default=None, help="use the BFS levelling from ROOT")
    s.add_argument("--ell", type=int, default=2)
    s.add_argument("--kappa", type=int, default=1)
    s.add_argument("--n", type=int, default=1, help="target for the levelling search")
    s.add_argument("--verify-witness", metavar="JSON", help="re-check a printed witness")

    s = sub.add_parser("cover-search", parents=[shared], help="search for a 1-covering")
    s.add_argument("--max-cover", type=int, default=6)
    s.add_argument("--target", choices=("grotzsch", "c5", "file"), default="file",
                   help="named target, or read graphs from --input")

    s = sub.add_parser("bounds-check", parents=[shared], help="check every applicable bound")
    s.add_argument("--spec", help="generate the corpus instead of reading input")
    s.add_argument("--phi-limit", type=int, default=bounds.PHI_BALLED_LIMIT)

    s = sub.add_parser("analyze", parents=[shared], help="profile a graph")
    s.add_argument("--limit", type=int, default=coloring.DEFAULT_EXACT_LIMIT)
    return p


def run(argv: Sequence[str] | None = None, stdin=None, stdout=None, stderr=None) -> int:
    stdin = stdin if stdin is not None else sys.stdin
    stdout = stdout if stdout is not None else sys.stdout
    stderr = stderr if stderr is not None else sys.stderr
    parser = build_parser()
    try:
        with contextlib.redirect_stderr(stderr), contextlib.redirect_stdout(stdout):
            args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.threads < 1:
        print("error: --threads must be at least 1", file=stderr)
        return 2
    buf = io.StringIO()
    try:
        if args.command == "gen":
            cmd_gen(args, stdin, buf)
        elif args.command == "bounds-check":
            cmd_bounds(args, stdin, buf)
        else:
            if args.command == "cover-search" and args.target != "file":
                graphs = [named_graph(TARGETS[args.target])]
            else:
                graphs = _load(args, stdin)
            args.multi = len(graphs) > 1
            notes = []
            for line in _map(args, WORKERS[args.command], list(enumerate(graphs))):
                if isinstance(line, tuple):
                    line, note = line
                    if note:
                        notes.append(note)
                buf.write(line)
            if notes:
                raise CapabilityError("; ".join(notes))
    except UsageError as exc:
        stdout.write(buf.getvalue())
        print(f"error: {exc}", file=stderr)
        return 2
    except CapabilityError as exc:
        stdout.write(buf.getvalue())
        print(f"error: {exc}", file=stderr)
        return 1
    stdout.write(buf.getvalue())
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
