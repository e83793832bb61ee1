"""Command-line front end: solve, gen, bench, domset."""

from __future__ import annotations

import argparse
import csv
import json
import shlex
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from . import domset as ds
from .generators import FAMILIES, generate, random_lists
from .graph import ColoringInstance, ParseError, edge_instance, format_instance, parse_instance
from .solver import BRUTE_CAP, MODES, SolveConfig, edge_coloring_regular, oracle_answer, solve

EXIT_OK, EXIT_ERROR, EXIT_PARSE, EXIT_ASSERT = 0, 1, 2, 3
BENCH_COLUMNS = ("instance", "n", "m", "domset_size", "v_prime", "evaluations", "verdict", "ms")


class InputError(Exception):
    """Bad user input that is not an instance syntax error (missing file, bad params)."""


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _emit(report: dict, fmt: str, out=None) -> None:
    out = out or sys.stdout
    if fmt == "json":
        out.write(json.dumps(report, sort_keys=True) + "\n")
    else:
        for key in sorted(report):
            out.write(f"{key}: {report[key]}\n")


def _config(args) -> SolveConfig:
    return SolveConfig(seed=args.seed, mode=args.mode, trials=args.trials, domset=args.domset,
                       jobs=args.jobs, shortcuts=not args.no_shortcuts)


def _run(inst: ColoringInstance, cfg: SolveConfig, regular: bool = False):
    if regular:
        if inst.is_list:
            raise InputError("--regular applies to plain edge-coloring instances")
        return edge_coloring_regular(inst.graph, cfg)
    return solve(inst, cfg)


# -- solve --------------------------------------------------------------------


def cmd_solve(args) -> int:
    inst = parse_instance(_read_text(args.instance))
    verdict = _run(inst, _config(args), args.regular)
    report = verdict.report()
    if args.oracle_check:
        if inst.graph.m > BRUTE_CAP:
            report["oracle_check"] = "skipped"
        else:
            truth = oracle_answer(inst)
            if truth != verdict.colorable:
                _emit(report, args.format)
                print(f"error: oracle disagrees (oracle says {'YES' if truth else 'NO'})", file=sys.stderr)
                return EXIT_ASSERT
            report["oracle_check"] = "agree"
    _emit(report, args.format)
    return EXIT_OK


# -- gen ----------------------------------------------------------------------


def _gen_instance(family: str, params: list[int], seed: int, list_k: int | None,
                  density: float) -> tuple[ColoringInstance, str]:
    try:
        g = generate(family, params, seed)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    label = " ".join(["gen", family, *map(str, params), "--seed", str(seed)])
    if list_k is None:
        return edge_instance(g), label
    if not 0.0 < density <= 1.0:
        raise InputError("--list-density must be in (0, 1]")
    label += f" --list-k {list_k} --list-density {density}"
    return random_lists(g, list_k, density, seed), label


def cmd_gen(args) -> int:
    inst, label = _gen_instance(args.family, args.params, args.seed, args.list_k, args.list_density)
    text = format_instance(inst, comment=label)
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return EXIT_OK


# -- bench --------------------------------------------------------------------


def _suite_entries(path: str) -> list[tuple[str, ColoringInstance]]:
    base = Path(path).parent if path != "-" else Path.cwd()
    entries = []
    gen_parser = argparse.ArgumentParser(prog="gen", add_help=False, exit_on_error=False)
    gen_parser.add_argument("family", choices=FAMILIES)
    gen_parser.add_argument("params", nargs="*", type=int)
    gen_parser.add_argument("--seed", type=int, default=0)
    gen_parser.add_argument("--list-k", type=int, default=None)
    gen_parser.add_argument("--list-density", type=float, default=0.6)
    for lineno, raw in enumerate(_read_text(path).splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tok = shlex.split(line)
        if tok[0] == "gen":
            try:
                ga = gen_parser.parse_args(tok[1:])
            except (argparse.ArgumentError, SystemExit):
                raise InputError(f"{path}:{lineno}: bad gen line {line!r}") from None
            inst, label = _gen_instance(ga.family, ga.params, ga.seed, ga.list_k, ga.list_density)
            entries.append((label, inst))
        else:
            p = Path(line)
            p = p if p.is_absolute() else base / p
            try:
                inst = parse_instance(_read_text(str(p)))
            except ParseError as exc:
                raise ParseError(f"{line}: {exc}") from None
            entries.append((line, inst))
    return entries


def _bench_row(name: str, inst: ColoringInstance, cfg: SolveConfig, regular: bool) -> dict:
    t0 = time.perf_counter()
    v = _run(inst, cfg, regular)
    ms = (time.perf_counter() - t0) * 1000
    trials = sum(c.trials for c in v.components)
    return {"instance": name, "n": inst.graph.n, "m": inst.graph.m, "domset_size": v.domset_size,
            "v_prime": v.v_prime, "evaluations": v.evaluations, "verdict": "YES" if v.colorable else "NO",
            "ms": f"{ms:.3f}", "_trials": trials}


def scaling_summary(rows: list[dict]) -> list[str]:
    """Ratios of evaluation counts between consecutive suite entries."""
    lines = []
    for a, b in zip(rows, rows[1:]):
        if not a["evaluations"] or not b["evaluations"]:
            lines.append(f"{a['instance']} -> {b['instance']}: n/a (no sieve evaluations)")
            continue
        ratio = b["evaluations"] / a["evaluations"]
        pa = a["evaluations"] / max(1, a["_trials"]) / (a["v_prime"] + 1)
        pb = b["evaluations"] / max(1, b["_trials"]) / (b["v_prime"] + 1)
        lines.append(f"{a['instance']} -> {b['instance']}: evaluations x{ratio:.3f}, "
                     f"per trial and sigma x{pb / pa:.3f}")
    return lines


def run_bench(entries, cfg: SolveConfig, regular: bool = False, jobs: int = 1) -> list[dict]:
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(lambda e: _bench_row(e[0], e[1], cfg, regular), entries))
    return [_bench_row(name, inst, cfg, regular) for name, inst in entries]


def cmd_bench(args) -> int:
    entries = _suite_entries(args.suite)
    cfg = _config(args)
    rows = run_bench(entries, SolveConfig(**{**cfg.__dict__, "jobs": 1}), args.regular, args.jobs)
    out = open(args.output, "w", newline="", encoding="utf-8") if args.output else sys.stdout
    try:
        w = csv.DictWriter(out, fieldnames=BENCH_COLUMNS, extrasaction="ignore", lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
    finally:
        if args.output:
            out.close()
    for line in scaling_summary(rows):
        print(line, file=sys.stderr)
    return EXIT_OK


# -- domset -------------------------------------------------------------------


def cmd_domset(args) -> int:
    g = parse_instance(_read_text(args.instance)).graph
    if args.method == "ore":
        res = ds.ore_half(g)
    elif args.method == "structured":
        res = ds.min_domset_structured(g)
    elif args.method == "exhaustive":
        res = ds.min_domset_exhaustive(g)
    else:
        res = ds.domset_for_solver(g, "auto")
    _emit(res.to_dict(), args.format)
    return EXIT_OK


# -- entry point --------------------------------------------------------------


def _solver_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--mode", choices=MODES, default="auto")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=3)
    p.add_argument("--domset", choices=("auto", "ore", "structured", "exhaustive"), default="auto")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--regular", action="store_true", help="use the minimum-dominating-set solver for d-regular input")
    p.add_argument("--no-shortcuts", action="store_true",
                   help="send every non-trivial component through the algebraic detector")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="chromsieve", description="Exact edge and list edge coloring.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="decide an instance")
    p.add_argument("instance", help="instance file, or - for stdin")
    _solver_flags(p)
    p.add_argument("--oracle-check", action="store_true", help="cross-check against brute force when small")
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("gen", help="write a generated instance")
    p.add_argument("family", choices=FAMILIES)
    p.add_argument("params", nargs="*", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--list-k", type=int, default=None, help="attach random lists over [K]")
    p.add_argument("--list-density", type=float, default=0.6)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("bench", help="run a suite and write CSV")
    p.add_argument("suite", help="file with one instance path or 'gen ...' line per row")
    _solver_flags(p)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("domset", help="dominating set of an instance graph")
    p.add_argument("instance")
    p.add_argument("--method", choices=("auto", "ore", "structured", "exhaustive"), default="auto")
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.set_defaults(func=cmd_domset)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except AssertionError as exc:
        print(f"internal assertion failed: {exc}", file=sys.stderr)
        return EXIT_ASSERT
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
