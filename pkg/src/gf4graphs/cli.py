"""Command-line front end: ``gf4graphs <subcommand> ...``.

Machine-readable results go to stdout; ``--human`` adds readable tables on
stderr.  Exit status is 0 on success, 1 on domain errors (exceptional codes,
malformed files, exceeded budgets) and 2 on usage errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import dataclass, field

from . import canon, classify, code, constructions, graphform

LONG_CENSUS_N = 6
LONG_SEARCH_N = 15
CENSUS_CHUNK = 20000


class UsageError(Exception):
    """Bad flag combination found after argparse; exits with status 2."""


@dataclass
class CommandConfig:
    subcommand: str
    inputs: list[str] = field(default_factory=list)
    output: str | None = None
    n: int | None = None
    budget: int = code.DEFAULT_BUDGET
    long: bool = False
    human: bool = False

    def validate(self) -> None:
        if self.budget < 1:
            raise UsageError("--budget must be positive")
        for path in self.inputs:
            if not os.path.isfile(path):
                raise UsageError(f"--in: no such file {path!r}")
        if self.output:
            parent = os.path.dirname(os.path.abspath(self.output))
            if not os.path.isdir(parent):
                raise UsageError(f"--out: directory {parent!r} does not exist")


def _read_code(path: str) -> code.AdditiveCode:
    with open(path) as fh:
        return code.parse_code_text(fh.read())


def _emit(text: str, out: str | None) -> None:
    if out:
        classify.atomic_write(out, text)
    else:
        sys.stdout.write(text)


def _human(args, text: str) -> None:
    if args.human:
        sys.stderr.write(text if text.endswith("\n") else text + "\n")


# -- subcommands --------------------------------------------------------------


def cmd_convert(args) -> int:
    c = _read_code(args.inputs[0])
    res = graphform.to_graph_form(c)
    one_based = lambda s: "{" + ",".join(str(i + 1) for i in sorted(s)) + "}"
    lines = [str(res.graph), f"swaps {one_based(res.swaps)}", f"conjugations {one_based(res.conjugations)}"]
    if args.digraph6:
        lines.append(classify.to_digraph6(res.graph))
    _emit("\n".join(lines) + "\n", args.out)
    return 0


def cmd_mindist(args) -> int:
    c = _read_code(args.inputs[0])
    if args.limit is not None:
        if not c.is_graph_form:
            raise UsageError("--limit needs a code whose generators are in graph form")
        d = graphform.bounded_min_distance(graphform.graph_of_code(c), min(args.limit, c.n))
        print(d if d is not None else f">{args.limit}")
        return 0
    print(code.min_distance(c, args.budget))
    return 0


def cmd_wenum(args) -> int:
    c = _read_code(args.inputs[0])
    w = code.weight_distribution(c, args.budget)
    buf = io.StringIO()
    wr = csv.writer(buf, lineterminator="\n")
    wr.writerow(["weight", "count"])
    for i, a in enumerate(w.counts):
        wr.writerow([i, a])
    _emit(buf.getvalue(), args.out)
    _human(args, f"W(1,y) = {w}")
    return 0


def cmd_dual(args) -> int:
    c = _read_code(args.inputs[0])
    _emit(code.format_code_text(code.dual(c)), args.out)
    return 0


def cmd_equiv(args) -> int:
    c1, c2 = (_read_code(p) for p in args.inputs)
    same = c1.n == c2.n and c1.k == c2.k and canon.equivalent(c1, c2, args.budget)
    print("equivalent" if same else "inequivalent")
    return 0


def cmd_aut(args) -> int:
    c = _read_code(args.inputs[0])
    print(canon.automorphism_order(c, args.budget))
    return 0


def _census_graphs(args) -> list[graphform.Digraph]:
    if args.inputs:
        graphs = [g for g in classify.read_digraph6(args.inputs[0]) if g.n == args.n]
        keep = [g for g in graphs if graphform.is_weakly_connected(g)]
        if not keep:
            raise ValueError(f"no connected digraphs on {args.n} vertices in {args.inputs[0]}")
        return keep
    if args.n > classify.MAX_INTERNAL_N:
        raise UsageError(f"--in is required for n > {classify.MAX_INTERNAL_N}")
    return classify.enumerate_connected_digraphs(args.n)


def cmd_classify(args) -> int:
    if args.n >= LONG_CENSUS_N and not args.long:
        raise UsageError(f"--n {args.n}: censuses with n >= {LONG_CENSUS_N} need --long")
    graphs = _census_graphs(args)
    done, records = 0, []
    if args.resume and os.path.exists(args.resume):
        with open(args.resume) as fh:
            state = json.load(fh)
        if state.get("n") != args.n or state.get("total") != len(graphs):
            raise ValueError(f"checkpoint {args.resume} belongs to a different census")
        done = state["done"]
        records = [classify.CensusRecord.from_tsv(x) for x in state["records"]]
    step = CENSUS_CHUNK if args.resume else max(len(graphs), 1)
    while done < len(graphs):
        chunk = graphs[done : done + step]
        records = classify.merge_records(records, classify.classify_codes(chunk, args.workers))
        done += len(chunk)
        if args.resume:
            state = {"n": args.n, "total": len(graphs), "done": done, "records": [r.to_tsv() for r in records]}
            classify.atomic_write(args.resume, json.dumps(state) + "\n")
    classify.write_database(records, args.out)
    print(f"{args.n},{len(records)}")
    if args.human:
        for f in classify.FILTERS:
            sys.stderr.write(f"{f}:\n{classify.census_report(records, f).to_text()}")
    return 0


def cmd_report(args) -> int:
    records = classify.read_database(args.db)
    table = classify.census_report(records, args.filter)
    sys.stdout.write(table.to_csv())
    _human(args, table.to_text())
    return 0


def cmd_search(args) -> int:
    if args.n >= LONG_SEARCH_N and not args.long:
        raise UsageError(f"--n {args.n}: searches with n >= {LONG_SEARCH_N} need --long")
    kinds = tuple(x.strip() for x in args.constructions.split(",") if x.strip())
    rep = constructions.search_best(
        args.n,
        kinds,
        max_row_limit=args.max_row_limit,
        budget=args.seed_budget,
        checkpoint=args.resume,
        workers=args.workers,
    )
    buf = io.StringIO()
    wr = csv.writer(buf, lineterminator="\n")
    wr.writerow(["n", "d", "construction", "seed", "self_dual", "aut_order", "certificate"])
    wr.writerows(rep.to_csv_rows())
    if args.out:
        classify.atomic_write(args.out, buf.getvalue())
    if args.codes:
        blocks = [
            f"# {c.construction} seed={c.seed} d={rep.max_d} aut={c.automorphism_order}\n" + c.code.to_text()
            for c in rep.codes
        ]
        classify.atomic_write(args.codes, "\n".join(blocks))
    print("n,max_d,codes,self_dual,complete")
    print(f"{rep.n},{rep.max_d},{rep.count},{rep.self_dual_count},{int(rep.complete)}")
    if not rep.complete:
        sys.stderr.write(f"partial search: stopped at seed {rep.seeds_visited}; rerun with --resume to continue\n")
    _human(args, "\n".join(" ".join(r) for r in rep.to_csv_rows()))
    return 0


def cmd_qr(args) -> int:
    c = constructions.qr_code(args.p, bordered=args.bordered)
    if args.params:
        d = code.min_distance(c, args.budget)
        print("n,k,d,self_dual")
        print(f"{c.n},{c.k},{d},{int(code.is_self_dual(c))}")
    else:
        _emit(c.to_text(), args.out)
    return 0


def cmd_euler(args) -> int:
    try:
        counts = [int(x) for x in args.i.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"--i: expected comma-separated integers, got {args.i!r}") from None
    if not counts:
        raise UsageError("--i: need at least one count")
    print(",".join(map(str, classify.euler_transform(counts))))
    return 0


# -- parser -----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gf4graphs", description="Half-rate additive GF(4) codes as directed graphs.")
    p.add_argument("--human", action="store_true", help="also print readable tables on stderr")
    sub = p.add_subparsers(dest="subcommand", required=True)

    def add(name, func, help, inputs=0, out=True, budget=False):
        s = sub.add_parser(name, help=help)
        if inputs == 1:
            s.add_argument("--in", dest="inputs", nargs=1, required=True, metavar="FILE", help="generator matrix text")
        elif inputs == 2:
            s.add_argument("--in", dest="inputs", nargs=2, required=True, metavar="FILE")
        if out:
            s.add_argument("--out", metavar="FILE")
        if budget:
            s.add_argument("--budget", type=int, default=code.DEFAULT_BUDGET, help="codeword enumeration cap")
        s.set_defaults(func=func)
        return s

    s = add("convert", cmd_convert, "graph form of a code", inputs=1)
    s.add_argument("--digraph6", action="store_true", help="also print the digraph6 line")
    s = add("mindist", cmd_mindist, "minimum distance", inputs=1, out=False, budget=True)
    s.add_argument("--limit", type=int, help="bounded search over sums of at most this many rows")
    add("wenum", cmd_wenum, "weight distribution as CSV", inputs=1, budget=True)
    add("dual", cmd_dual, "dual code", inputs=1)
    add("equiv", cmd_equiv, "test two codes for equivalence", inputs=2, out=False, budget=True)
    add("aut", cmd_aut, "automorphism group order", inputs=1, out=False, budget=True)

    s = sub.add_parser("classify", help="census of codes from connected digraphs")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--in", dest="inputs", nargs="?", const=None, metavar="FILE", help="digraph6 corpus")
    s.add_argument("--out", required=True, metavar="DB")
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("--long", action="store_true")
    s.add_argument("--resume", metavar="CHECKPOINT")
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("report", help="tabulate a census database")
    s.add_argument("--db", required=True)
    s.add_argument("--filter", choices=sorted(classify.FILTERS), default="all")
    s.set_defaults(func=cmd_report)

    s = sub.add_parser("search", help="best circulant and bordered circulant codes")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--constructions", default="circulant,bordered")
    s.add_argument("--max-row-limit", type=int)
    s.add_argument("--seed-budget", type=int, help="visit at most this many seeds in this run")
    s.add_argument("--out", metavar="CSV")
    s.add_argument("--codes", metavar="FILE", help="write representatives as generator text")
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("--long", action="store_true")
    s.add_argument("--resume", metavar="CHECKPOINT")
    s.set_defaults(func=cmd_search)

    s = add("qr", cmd_qr, "quadratic residue circulant code", budget=True)
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--bordered", action="store_true")
    s.add_argument("--params", action="store_true", help="print n,k,d,self_dual instead of generators")

    s = sub.add_parser("euler", help="Euler transform of indecomposable counts")
    s.add_argument("--i", required=True, metavar="I1,I2,...")
    s.set_defaults(func=cmd_euler)
    return p


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    inputs = args.inputs if isinstance(getattr(args, "inputs", None), list) else []
    if isinstance(getattr(args, "inputs", None), str):
        inputs = [args.inputs]
    args.inputs = inputs
    cfg = CommandConfig(
        args.subcommand,
        inputs,
        getattr(args, "out", None),
        getattr(args, "n", None),
        getattr(args, "budget", code.DEFAULT_BUDGET),
        getattr(args, "long", False),
        args.human,
    )
    try:
        cfg.validate()
        if getattr(args, "db", None) and not os.path.isfile(args.db):
            raise UsageError(f"--db: no such file {args.db!r}")
        if getattr(args, "workers", 1) < 1:
            raise UsageError("--workers must be at least 1")
        return args.func(args)
    except UsageError as e:
        print(f"{parser.prog} {args.subcommand}: error: {e}", file=sys.stderr)
        return 2
    except graphform.ExceptionalCodeError as e:
        print(f"exceptional code: {e.witness}", file=sys.stderr)
        return 1
    except (ValueError, code.BudgetExceeded, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())
