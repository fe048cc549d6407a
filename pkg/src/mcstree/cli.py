"""Command-line entry point: ``mcstree {solve,verify,oracle,gen,export-dot,bench}``."""

from __future__ import annotations

import argparse
import csv
import json
import logging
import os
import sys

from .bench import CSV_FIELDS, run_scaling
from .consistency import first_inconsistent
from .dp import InternalInconsistency, solve
from .generators import COLORINGS, FAMILIES, GenSpec, InstanceTooLarge, InvalidSpec, generate
from .graph import ColoredTree, ParseError, ValidationError, parse_instance, serialize
from .oracle import DEFAULT_ORACLE_CAP, brute_force_min

EXIT_INCONSISTENT = 1
EXIT_PARSE = 2
EXIT_VALIDATION = 3
EXIT_INTERNAL = 4
EXIT_DISAGREE = 5

PALETTE = ("#e6194b", "#3cb44b", "#4363d8", "#ffe119", "#f58231",
           "#911eb4", "#46f0f0", "#f032e6", "#bcf60c", "#fabebe")


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _load(path: str) -> ColoredTree:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror}", EXIT_PARSE) from None
    try:
        return parse_instance(text)
    except ParseError as exc:
        raise CliError(f"{path}: parse error: {exc}", EXIT_PARSE) from None
    except ValidationError as exc:
        raise CliError(f"{path}: invalid instance: {exc}", EXIT_VALIDATION) from None


def _parse_subset(text: str, tree: ColoredTree) -> frozenset[int]:
    try:
        ids = [int(tok) for tok in text.replace(",", " ").split()]
    except ValueError:
        raise CliError(f"subset must be comma-separated vertex ids, got {text!r}", EXIT_PARSE) from None
    for u in ids:
        if not 1 <= u <= tree.n:
            raise CliError(f"subset vertex {u} outside 1..{tree.n}", EXIT_VALIDATION)
    return frozenset(ids)


def _report(size, vertices, algorithm, fmt, stats=None) -> str:
    if fmt == "json":
        obj = {"size": size, "vertices": list(vertices), "algorithm": algorithm}
        if stats is not None:
            obj["stats"] = stats
        return json.dumps(obj)
    lines = [f"size {size}", "vertices " + " ".join(map(str, vertices))]
    if stats is not None:
        lines.append("stats")
        lines += [f"  {key} {stats[key]}" for key in ("states_max", "states_total", "merges_total")]
    return "\n".join(lines)


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def cmd_solve(args) -> int:
    tree = _load(args.instance)
    if not 1 <= args.root <= tree.n:
        raise CliError(f"root {args.root} outside 1..{tree.n}", EXIT_VALIDATION)
    try:
        sol = solve(tree, args.root, with_stats=args.stats)
    except InternalInconsistency as exc:
        raise CliError(f"internal error: {exc}", EXIT_INTERNAL) from None
    stats = sol.stats.as_dict() if args.stats else None
    if stats is not None and args.format == "text":
        stats.pop("table_sizes")
    print(_report(sol.size, sol.vertices, "dp", args.format, stats))
    return 0


def cmd_verify(args) -> int:
    tree = _load(args.instance)
    bad = first_inconsistent(tree, _parse_subset(args.subset, tree))
    if bad is None:
        print("consistent")
        return 0
    print(f"inconsistent vertex {bad}")
    return EXIT_INCONSISTENT


def cmd_oracle(args) -> int:
    tree = _load(args.instance)
    try:
        res = brute_force_min(tree, args.cap)
    except InstanceTooLarge as exc:
        raise CliError(str(exc), EXIT_VALIDATION) from None
    print(_report(res.size, res.vertices, "oracle", args.format))
    return 0


def cmd_gen(args) -> int:
    spec = GenSpec(args.family, args.n, args.k, args.seed, args.coloring)
    try:
        tree = generate(spec)
    except InvalidSpec as exc:
        raise CliError(f"invalid generator spec: {exc}", EXIT_VALIDATION) from None
    _write(args.out, serialize(tree))
    return 0


def to_dot(tree: ColoredTree, subset=frozenset()) -> str:
    """Graphviz rendering: fill encodes color, chosen vertices are double boxes."""
    lines = ["graph mcs {", '  node [style=filled, shape=circle, fontname="Helvetica"];']
    for u in tree.vertices():
        c = tree.color(u)
        attrs = [f'fillcolor="{PALETTE[(c - 1) % len(PALETTE)]}"', f'label="{u}\\nc{c}"']
        if u in subset:
            attrs += ["shape=box", "peripheries=2"]
        lines.append(f"  {u} [{', '.join(attrs)}];")
    lines += [f"  {u} -- {v};" for u, v in tree.edges]
    lines.append("}")
    return "\n".join(lines) + "\n"


def cmd_export_dot(args) -> int:
    tree = _load(args.instance)
    subset = _parse_subset(args.subset, tree) if args.subset is not None else solve(tree).subset
    _write(args.out, to_dot(tree, subset))
    return 0


def cmd_bench(args) -> int:
    families = [f.strip() for f in args.families.split(",") if f.strip()]
    for f in families:
        if f not in FAMILIES:
            raise CliError(f"unknown family {f!r}", EXIT_VALIDATION)
    try:
        ks = [int(x) for x in str(args.k).split(",")]
    except ValueError:
        raise CliError(f"--k must be an integer list, got {args.k!r}", EXIT_PARSE) from None
    if args.nmin < 1 or args.nmax < args.nmin or args.step < 1 or args.reps < 1:
        raise CliError("need 1 <= nmin <= nmax, step >= 1, reps >= 1", EXIT_VALIDATION)

    if args.csv:
        fresh = not os.path.exists(args.csv) or os.path.getsize(args.csv) == 0
        out = open(args.csv, "a", newline="", encoding="utf-8")
    else:
        fresh, out = True, sys.stdout
    try:
        writer = csv.writer(out, lineterminator="\n")
        if fresh:
            writer.writerow(CSV_FIELDS)
        report = run_scaling(families, range(args.nmin, args.nmax + 1, args.step), ks,
                             reps=args.reps, seed=args.seed, with_oracle=args.with_oracle,
                             oracle_cap=args.oracle_cap, coloring=args.coloring,
                             on_record=lambda rec: writer.writerow(rec.csv_row()))
    except InvalidSpec as exc:
        raise CliError(f"invalid generator spec: {exc}", EXIT_VALIDATION) from None
    finally:
        if out is not sys.stdout:
            out.close()
    print(report.summary(), file=sys.stderr)
    if not report.all_agree:
        print("error: DP and oracle disagree", file=sys.stderr)
        return EXIT_DISAGREE
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="mcstree", description="Minimum consistent subsets of colored trees.")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve", help="exact optimum via dynamic programming")
    s.add_argument("instance")
    s.add_argument("--root", type=int, default=1)
    s.add_argument("--format", choices=("text", "json"), default="text")
    s.add_argument("--stats", action="store_true", help="include table counters")
    s.set_defaults(func=cmd_solve)

    s = sub.add_parser("verify", help="check whether a subset is consistent")
    s.add_argument("instance")
    s.add_argument("--subset", required=True, help='comma-separated ids, e.g. "1,2,3"')
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("oracle", help="exact optimum by exhaustive search")
    s.add_argument("instance")
    s.add_argument("--format", choices=("text", "json"), default="text")
    s.add_argument("--cap", type=int, default=DEFAULT_ORACLE_CAP)
    s.set_defaults(func=cmd_oracle)

    s = sub.add_parser("gen", help="write a generated instance")
    s.add_argument("--family", choices=FAMILIES, default="random")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--k", type=int, default=2)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--coloring", choices=COLORINGS, default="uniform-random")
    s.add_argument("--out")
    s.set_defaults(func=cmd_gen)

    s = sub.add_parser("export-dot", help="Graphviz rendering of an instance and subset")
    s.add_argument("instance")
    s.add_argument("--subset", help="defaults to the DP optimum")
    s.add_argument("--out")
    s.set_defaults(func=cmd_export_dot)

    s = sub.add_parser("bench", help="scaling run with CSV output")
    s.add_argument("--families", default="random")
    s.add_argument("--nmin", type=int, default=4)
    s.add_argument("--nmax", type=int, default=12)
    s.add_argument("--step", type=int, default=1)
    s.add_argument("--k", default="2", help="color count, or comma-separated list")
    s.add_argument("--reps", type=int, default=1)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--coloring", choices=COLORINGS, default="uniform-random")
    s.add_argument("--with-oracle", action="store_true")
    s.add_argument("--oracle-cap", type=int, default=DEFAULT_ORACLE_CAP)
    s.add_argument("--csv")
    s.set_defaults(func=cmd_bench)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
