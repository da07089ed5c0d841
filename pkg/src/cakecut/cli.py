"""Command line front end.

Exit codes: 0 success (or affirmative verdict), 1 checked-negative verdict,
2 input error, 3 solver budget exceeded. Players are numbered from 1 in all
output and player-valued flags; rationals print as exact "p/q" plus an
approximate decimal column (6 significant digits, display only).
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from .documents import (
    SchemaError,
    parse_division,
    parse_instance,
    serialize_division,
    serialize_instance,
)
from .families import FAMILIES, ParamOutOfRange
from .metrics import (
    SizeMismatch,
    WelfareKind,
    envy_matrix,
    is_envy_free,
    welfare,
)
from .model import NotNormalized, OverlappingPieces, OverlappingSegments, classify
from .oracle import NoGridDivision, grid_oracle
from .rational import approx, format_rational, parse_rational
from .solver import (
    BudgetExceeded,
    Mode,
    Objective,
    SolverOptions,
    dumping_report,
    exists_strict_pareto_improvement,
    optimize,
)

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_INPUT = 2
EXIT_BUDGET = 3


class CliError(Exception):
    def __init__(self, message, code=EXIT_INPUT):
        super().__init__(message)
        self.code = code


def _read(path):
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc}") from None


def _load_instance(path):
    try:
        return parse_instance(_read(path))
    except (SchemaError, NotNormalized, OverlappingSegments) as exc:
        raise CliError(f"{path}: {exc}") from None


def _load_division(path):
    try:
        return parse_division(_read(path))
    except SchemaError as exc:
        raise CliError(f"{path}: {exc}") from None


def _rat_arg(text):
    try:
        return parse_rational(text)
    except Exception as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _result_rows(pairs):
    return [
        {"name": name, "exact": format_rational(value), "approx": approx(value)}
        for name, value in pairs
    ]


def _write_report(out_dir, command, label, options, rows, elapsed, extra_files=()):
    """Manifest JSON plus a TSV table; the JSON manifest is the contract."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    manifest = {
        "command": command,
        "instance_label": label,
        "options": options,
        "results": rows,
        "elapsed_seconds": round(elapsed, 3),
    }
    (out / "report.json").write_text(json.dumps(manifest, indent=2) + "\n")
    lines = ["name\texact\tapprox"]
    for row in rows:
        lines.append(f"{row['name']}\t{row['exact']}\t{row['approx']}")
    (out / "report.tsv").write_text("\n".join(lines) + "\n")
    for name, text in extra_files:
        (out / name).write_text(text)


def _print_rows(rows):
    width = max((len(r["name"]) for r in rows), default=0)
    for r in rows:
        print(f"  {r['name']:<{width}}  {r['exact']}  (~{r['approx']})")


def _render_with(instance, division, out_path, title):
    from .render import render_to_file

    render_to_file(instance, division, str(out_path), title)


# -- commands ---------------------------------------------------------------


def cmd_generate(args):
    family = FAMILIES.get(args.family) if args.family != "random" else None
    if args.family == "random":
        from .randgen import random_instance

        if args.seed is None:
            raise CliError("generate random requires --seed")
        instance = random_instance(args.seed, n=args.n, max_cells=args.cells or 4)
        bundle = None
    elif family is None:
        raise CliError(f"unknown family {args.family!r}")
    else:
        kwargs = {}
        if args.family == "intro":
            if args.eps is not None:
                kwargs["eps"] = args.eps
            if args.candy_width is not None:
                kwargs["candy_width"] = args.candy_width
        elif args.family == "utilitarian":
            if args.k is None or args.t is None:
                raise CliError("utilitarian family requires --k and --t")
            kwargs.update(k=args.k, t=args.t)
            if args.width is not None:
                kwargs["width"] = args.width
        elif args.family == "egalitarian":
            if args.k is None:
                raise CliError("egalitarian family requires --k")
            kwargs["k"] = args.k
            if args.eps is not None:
                kwargs["eps"] = args.eps
            if args.width is not None:
                kwargs["width"] = args.width
        elif args.family == "egalitarian-tight":
            if args.n is None:
                raise CliError("egalitarian-tight requires --n")
            kwargs["n"] = args.n
            if args.eps is not None:
                kwargs["eps"] = args.eps
        elif args.family == "pareto":
            if args.n is None:
                raise CliError("pareto family requires --n")
            kwargs["n"] = args.n
            if args.eps is not None:
                kwargs["eps"] = args.eps
        try:
            bundle = family(**kwargs)
        except ParamOutOfRange as exc:
            raise CliError(f"parameter out of range: {exc}") from None
        instance = bundle.instance

    out = Path(args.out or ".")
    out.mkdir(parents=True, exist_ok=True)
    (out / "instance.json").write_text(serialize_instance(instance))
    written = ["instance.json"]
    if bundle is not None:
        (out / "canonical_partial.json").write_text(
            serialize_division(bundle.canonical_partial)
        )
        written.append("canonical_partial.json")
        if bundle.canonical_complete is not None:
            (out / "canonical_complete.json").write_text(
                serialize_division(bundle.canonical_complete)
            )
            written.append("canonical_complete.json")
        manifest = {
            "label": instance.label,
            "family": args.family,
            "params": {k: format_rational(v) for k, v in sorted(instance.params.items())},
            "predictions": [
                {
                    "division": tag,
                    "welfare": kind,
                    "exact": format_rational(v),
                    "approx": approx(v),
                }
                for (tag, kind), v in sorted(bundle.predicted.items())
            ],
            "notes": bundle.notes,
        }
        (out / "bundle.json").write_text(json.dumps(manifest, indent=2) + "\n")
        written.append("bundle.json")
    print(f"wrote {', '.join(written)} to {out}")
    return EXIT_OK


def cmd_verify(args):
    instance = _load_instance(args.instance)
    division = _load_division(args.division)
    t0 = time.perf_counter()
    try:
        cls = classify(division)
        matrix = envy_matrix(instance, division)
    except (OverlappingPieces, SizeMismatch) as exc:
        raise CliError(str(exc)) from None
    ef, witness = is_envy_free(matrix)
    util = welfare(instance, division, WelfareKind.UTILITARIAN).value
    egal = welfare(instance, division, WelfareKind.EGALITARIAN).value

    print(f"instance: {instance.label or args.instance}  (n={instance.n})")
    print(f"division: {'complete' if cls.complete else 'partial'}", end="")
    if not cls.complete:
        gaps = ", ".join(f"({format_rational(g.left)}, {format_rational(g.right)})"
                         for g in cls.leftovers)
        print(f", leftover {gaps}", end="")
    print()
    print("envy matrix (rows: player valuing, columns: piece owner):")
    for row in matrix.entries:
        print("  " + "  ".join(f"{format_rational(v)}" for v in row))
    rows = _result_rows(
        [("utilitarian", util), ("egalitarian", egal)]
    )
    _print_rows(rows)
    if ef:
        print("envy-free: yes")
    else:
        i, j = witness
        print(f"envy-free: no (player {i + 1} prefers player {j + 1}'s piece)")
    elapsed = time.perf_counter() - t0
    if args.out:
        rows_all = rows + [
            {"name": "envy_free", "exact": "1/1" if ef else "0/1",
             "approx": "1" if ef else "0"}
        ]
        _write_report(
            args.out, "verify", instance.label, {"instance": str(args.instance)},
            rows_all, elapsed,
        )
        _render_with(instance, division, Path(args.out) / "division.svg",
                     instance.label or "division")
    return EXIT_OK if ef else EXIT_NEGATIVE


def _solve_options(args, mode, objective):
    return SolverOptions(
        mode=mode,
        objective=objective,
        time_budget=args.budget,
        workers=args.workers,
    )


def _objective_from_args(args, instance):
    if args.objective == "utilitarian":
        return Objective.utilitarian()
    if args.objective == "egalitarian":
        return Objective.egalitarian()
    if args.objective == "player":
        if args.player is None:
            raise CliError("--objective player requires --player")
        if not (1 <= args.player <= instance.n):
            raise CliError(f"--player must be in 1..{instance.n}")
        return Objective.single_player(args.player - 1)
    raise CliError(f"unknown objective {args.objective!r}")


def cmd_solve(args):
    instance = _load_instance(args.instance)
    mode = Mode.COMPLETE if args.mode == "complete" else Mode.PARTIAL
    objective = _objective_from_args(args, instance)
    t0 = time.perf_counter()
    result = optimize(instance, _solve_options(args, mode, objective))
    elapsed = time.perf_counter() - t0
    rows = _result_rows([("optimum", result.value)])
    print(f"{args.mode} optimum ({args.objective}):")
    _print_rows(rows)
    if args.out:
        extra = [("witness.json", serialize_division(result.witness))]
        _write_report(
            args.out, "solve", instance.label,
            {"mode": args.mode, "objective": args.objective}, rows, elapsed, extra,
        )
        _render_with(instance, result.witness, Path(args.out) / "witness.svg",
                     f"{instance.label}: {args.mode} {args.objective} optimum")
    return EXIT_OK


def cmd_paradox(args):
    instance = _load_instance(args.instance)
    kind = WelfareKind.UTILITARIAN if args.welfare == "utilitarian" else WelfareKind.EGALITARIAN
    t0 = time.perf_counter()
    if args.grid:
        objective = Objective.for_welfare(kind)
        try:
            com = grid_oracle(
                instance, _solve_options(args, Mode.COMPLETE, objective), args.grid
            )
            par = grid_oracle(
                instance, _solve_options(args, Mode.PARTIAL, objective), args.grid
            )
        except NoGridDivision as exc:
            print(f"oracle: {exc}")
            return EXIT_NEGATIVE
        complete_value, partial_value = com.value, par.value
        complete_witness, partial_witness = com.witness, par.witness
        ratio = None if complete_value == 0 else partial_value / complete_value
        method = f"grid oracle (resolution {args.grid}; values lower-bound the exact optima)"
    else:
        report = dumping_report(
            instance, kind, time_budget=args.budget, workers=args.workers
        )
        complete_value, partial_value = report.complete.value, report.partial.value
        complete_witness, partial_witness = report.complete.witness, report.partial.witness
        ratio = report.ratio
        method = "exact"
    elapsed = time.perf_counter() - t0

    pairs = [
        ("complete_optimum", complete_value),
        ("partial_optimum", partial_value),
    ]
    if ratio is not None:
        pairs.append(("alpha", ratio))
    rows = _result_rows(pairs)
    if ratio is None:
        rows.append({"name": "alpha", "exact": "infinite", "approx": "inf"})
    print(f"dumping report ({args.welfare}, {method}):")
    _print_rows(rows)
    if args.out:
        extra = [
            ("complete_witness.json", serialize_division(complete_witness)),
            ("partial_witness.json", serialize_division(partial_witness)),
        ]
        _write_report(
            args.out, "paradox", instance.label,
            {"welfare": args.welfare, "grid": args.grid}, rows, elapsed, extra,
        )
        _render_with(instance, complete_witness,
                     Path(args.out) / "complete_witness.svg",
                     f"{instance.label}: best complete ({args.welfare})")
        _render_with(instance, partial_witness,
                     Path(args.out) / "partial_witness.svg",
                     f"{instance.label}: best partial ({args.welfare})")
    return EXIT_OK


def cmd_pareto_check(args):
    instance = _load_instance(args.instance)
    division = _load_division(args.division)
    t0 = time.perf_counter()
    result = exists_strict_pareto_improvement(
        instance, division, time_budget=args.budget, workers=args.workers
    )
    elapsed = time.perf_counter() - t0
    if result.found:
        print("strict Pareto improvement exists "
              f"(worst player gains {format_rational(result.delta)} ~{approx(result.delta)})")
        if args.out:
            rows = _result_rows([("delta", result.delta)])
            extra = [("improvement.json", serialize_division(result.witness))]
            _write_report(args.out, "pareto-check", instance.label,
                          {"division": str(args.division)}, rows, elapsed, extra)
        return EXIT_NEGATIVE
    print("no division (partial or complete) strictly Pareto dominates this one")
    if args.out:
        _write_report(args.out, "pareto-check", instance.label,
                      {"division": str(args.division)},
                      [{"name": "delta", "exact": "0/1", "approx": "0"}], elapsed)
    return EXIT_OK


def cmd_oracle(args):
    instance = _load_instance(args.instance)
    mode = Mode.COMPLETE if args.mode == "complete" else Mode.PARTIAL
    objective = _objective_from_args(args, instance)
    t0 = time.perf_counter()
    try:
        result = grid_oracle(
            instance, _solve_options(args, mode, objective), args.resolution
        )
    except NoGridDivision as exc:
        print(f"oracle: {exc}")
        return EXIT_NEGATIVE
    elapsed = time.perf_counter() - t0
    rows = _result_rows([("oracle_value", result.value)])
    print(f"grid oracle ({args.mode}, {args.objective}, resolution {args.resolution}):")
    _print_rows(rows)
    if args.out:
        extra = [("oracle_witness.json", serialize_division(result.witness))]
        _write_report(args.out, "oracle", instance.label,
                      {"mode": args.mode, "objective": args.objective,
                       "resolution": args.resolution}, rows, elapsed, extra)
    return EXIT_OK


def cmd_render(args):
    instance = _load_instance(args.instance)
    division = _load_division(args.division) if args.division else None
    from .render import render_to_file

    render_to_file(instance, division, args.outfile, instance.label or None)
    print(f"wrote {args.outfile}")
    return EXIT_OK


# -- argument parsing ---------------------------------------------------------


def build_parser():
    parser = argparse.ArgumentParser(
        prog="cakecut",
        description="Exact envy-free connected cake division: solve, verify, construct.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--out", help="directory for report, witness and figure files")
        p.add_argument("--budget", type=float, default=600.0,
                       help="solver time budget in seconds (default 600)")
        p.add_argument("--workers", type=int, default=1,
                       help="parallel workers for the configuration scan")

    g = sub.add_parser("generate", help="write a benchmark instance family to disk")
    g.add_argument("family", choices=[*FAMILIES.keys(), "random"])
    g.add_argument("--k", type=int)
    g.add_argument("--t", type=int)
    g.add_argument("--n", type=int)
    g.add_argument("--eps", type=_rat_arg)
    g.add_argument("--candy-width", type=_rat_arg, dest="candy_width")
    g.add_argument("--width", type=_rat_arg)
    g.add_argument("--cells", type=int)
    g.add_argument("--seed", type=int)
    g.add_argument("--out")
    g.set_defaults(func=cmd_generate)

    v = sub.add_parser("verify", help="envy matrix, welfare and EF verdict for a division")
    v.add_argument("instance")
    v.add_argument("division")
    common(v)
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("solve", help="exact optimum over envy-free divisions of one mode")
    s.add_argument("instance")
    s.add_argument("--mode", choices=["complete", "partial"], required=True)
    s.add_argument("--objective", choices=["utilitarian", "egalitarian", "player"],
                   default="utilitarian")
    s.add_argument("--player", type=int, help="1-based player for --objective player")
    common(s)
    s.set_defaults(func=cmd_solve)

    d = sub.add_parser("paradox", help="complete vs partial optimum and the dumping ratio")
    d.add_argument("instance")
    d.add_argument("--welfare", choices=["utilitarian", "egalitarian"], required=True)
    d.add_argument("--grid", type=int,
                   help="use the grid oracle at this resolution instead of the exact solver")
    common(d)
    d.set_defaults(func=cmd_paradox)

    pc = sub.add_parser("pareto-check",
                        help="search for a strict Pareto improvement over a division")
    pc.add_argument("instance")
    pc.add_argument("division")
    common(pc)
    pc.set_defaults(func=cmd_pareto_check)

    o = sub.add_parser("oracle", help="brute-force grid lower bound")
    o.add_argument("instance")
    o.add_argument("--mode", choices=["complete", "partial"], required=True)
    o.add_argument("--objective", choices=["utilitarian", "egalitarian", "player"],
                   default="utilitarian")
    o.add_argument("--player", type=int)
    o.add_argument("--resolution", type=int, required=True)
    common(o)
    o.set_defaults(func=cmd_oracle)

    r = sub.add_parser("render", help="draw an instance (and optional division) to a file")
    r.add_argument("instance")
    r.add_argument("outfile")
    r.add_argument("--division")
    r.set_defaults(func=cmd_render)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (SchemaError, NotNormalized, OverlappingSegments, OverlappingPieces,
            ParamOutOfRange) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
