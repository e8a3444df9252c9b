"""Command-line front end.

    rdivision gen --grid 32x32 --weights -3..10 --seed 7 -o grid.gr
    rdivision divide grid.gr --r 64 --gamma 1/2 -o division.json
    rdivision validate grid.gr --division division.json
    rdivision separate grid.gr --separator bfs-layer
    rdivision sssp grid.gr --sources 0,5,9 [--division division.json]
    rdivision bench-schedules grid.gr --r 256 --gamma 1/2 --format csv

Every run prints a report (JSON, or CSV for record series) that echoes its
configuration. Exit status: 0 ok, 1 validation failure or negative cycle,
2 usage error, 3 unreadable input.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from datetime import datetime, timezone
from fractions import Fraction

from . import __version__
from .division import (
    Constants,
    Division,
    RefinementError,
    ScheduleConfig,
    ScheduleDomainError,
    compare_schedules,
    compute_division,
    validate_division,
    weak_division,
)
from .graph import (
    GraphError,
    GraphParseError,
    VertexWeighting,
    generate_grid,
    generate_mixed_sign_grid,
    generate_random_digraph,
    load_graph,
    save_graph,
    undirected_support,
)
from .separator import SeparatorContract, separate, validate_separation
from .sssp import NegativeCycleError, multi_source_sssp, smallest_weight_magnitude

EXIT_OK, EXIT_INVALID, EXIT_USAGE, EXIT_INPUT = 0, 1, 2, 3


class UsageError(Exception):
    pass


class InputError(Exception):
    pass


def _rational(text: str) -> float:
    try:
        return float(Fraction(text))
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def _range(text: str) -> tuple[int, int]:
    try:
        lo, hi = text.split("..")
        return int(lo), int(hi)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected LO..HI, got {text!r}") from None


def _dims(text: str) -> tuple[int, int]:
    try:
        w, h = text.lower().split("x")
        return int(w), int(h)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected WxH, got {text!r}") from None


def _sources(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated vertex ids, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "csv"], default="json")
    common.add_argument("--no-timestamp", action="store_true", help="omit the report timestamp")
    common.add_argument("-o", "--output", help="write the artifact (graph, separation, division, trees) here")

    sched = argparse.ArgumentParser(add_help=False)
    sched.add_argument("--r", type=int, required=True)
    sched.add_argument("--gamma", type=_rational, default=0.5, help="gamma target in [0, 1/2]")
    sched.add_argument("--epsilon", type=_rational, default=0.0)
    sched.add_argument("--schedule", choices=["fixed", "adaptive", "adaptive-eps"], default="adaptive")
    sched.add_argument("--r-polynomial", action="store_true",
                       help="assert r = n^Omega(1); required by adaptive-eps")

    consts = argparse.ArgumentParser(add_help=False)
    consts.add_argument("--c-bnd", type=float, default=Constants.c_bnd)
    consts.add_argument("--c-cnt", type=float, default=Constants.c_cnt)
    consts.add_argument("--c-B", dest="c_B", type=float, default=Constants.c_B)

    backend = argparse.ArgumentParser(add_help=False)
    backend.add_argument("--separator", choices=["brute", "bfs-layer"], default="bfs-layer")

    parser = argparse.ArgumentParser(prog="rdivision", description=__doc__.split("\n")[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", parents=[common], help="emit a generated graph file")
    fam = p.add_mutually_exclusive_group(required=True)
    fam.add_argument("--grid", type=_dims, metavar="WxH")
    fam.add_argument("--random", type=_dims, metavar="NxM", help="random digraph, N vertices, M arcs")
    p.add_argument("--weights", type=_range, default=(1, 1), metavar="LO..HI")
    p.add_argument("--potentials", type=_range, default=None, metavar="LO..HI",
                   help="shift weights by random vertex potentials (mixed signs, no negative cycle)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--undirected", action="store_true")

    p = sub.add_parser("separate", parents=[common, backend], help="one separation of the support")
    p.add_argument("graph")
    p.add_argument("--gamma", type=_rational, default=0.5, help="gamma' for the size budget")
    p.add_argument("--alpha", type=_rational, default=2 / 3)
    p.add_argument("--c-sep", type=float, default=4.0)

    p = sub.add_parser("divide", parents=[common, sched, consts, backend], help="full (r, p)-division")
    p.add_argument("graph")
    p.add_argument("--weak", action="store_true", help="stop after the weak division")
    p.add_argument("--c-sep", type=float, default=4.0)

    p = sub.add_parser("validate", parents=[common, consts], help="re-check a stored division")
    p.add_argument("graph")
    p.add_argument("--division", required=True)

    p = sub.add_parser("sssp", parents=[common], help="shortest path trees for k sources")
    p.add_argument("graph")
    p.add_argument("--sources", type=_sources, required=True)
    p.add_argument("--division", help="division JSON; the first source uses region relaxation")

    p = sub.add_parser("bench-schedules", parents=[common, sched, backend],
                       help="compare fixed / adaptive / adaptive-eps work")
    p.add_argument("graph")
    p.add_argument("--c-sep", type=float, default=4.0)
    return parser


def _read(path: str) -> bytes:
    try:
        if path == "-":
            return sys.stdin.buffer.read()
        with open(path, "rb") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(str(exc)) from exc


def _load(path: str):
    try:
        return load_graph(_read(path))
    except (GraphParseError, UnicodeDecodeError) as exc:
        raise InputError(f"{path}: {exc}") from exc


def _load_division(path: str) -> Division:
    try:
        return Division.from_json(json.loads(_read(path)))
    except (ValueError, KeyError, TypeError) as exc:
        raise InputError(f"{path}: not a division file ({exc})") from exc


def _write(path: str | None, data: bytes) -> None:
    if path is None:
        return
    with open(path, "wb") as fh:
        fh.write(data)


def _dump(obj) -> bytes:
    return (json.dumps(obj, indent=2) + "\n").encode()


def _config(args) -> dict:
    cfg = {k: v for k, v in vars(args).items() if k not in ("no_timestamp",)}
    return json.loads(json.dumps(cfg, default=list))


def _schedule(args) -> ScheduleConfig:
    mode = args.schedule.replace("-", "_")
    try:
        return ScheduleConfig(mode, args.gamma, args.epsilon, args.r_polynomial)
    except ScheduleDomainError as exc:
        raise UsageError(str(exc)) from exc


def _constants(args) -> Constants:
    return Constants(args.c_bnd, args.c_cnt, args.c_B)


def cmd_gen(args):
    if args.grid:
        w, h = args.grid
        if args.potentials:
            g = generate_mixed_sign_grid(w, h, args.weights, args.potentials, args.seed)
        else:
            g = generate_grid(w, h, args.weights, args.seed, directed=not args.undirected)
    else:
        n, m = args.random
        g = generate_random_digraph(n, m, args.weights, args.seed, args.potentials)
    if args.undirected and g.directed:
        g = undirected_support(g)
    cfg = json.dumps(_config(args), sort_keys=True)
    data = save_graph(g, comments=[f"rdivision {__version__} gen", f"config {cfg}"])
    if args.output:
        _write(args.output, data)
        return True, {"n": g.n, "m": g.m, "directed": g.directed, "output": args.output}
    sys.stdout.buffer.write(data)
    return True, None


def cmd_separate(args):
    g = undirected_support(_load(args.graph))
    if g.n == 0:
        raise InputError("empty graph")
    try:
        contract = SeparatorContract(args.gamma, Fraction(args.alpha).limit_denominator(1000), args.c_sep)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    vw = VertexWeighting.unit(g.n)
    sep = separate(g, vw, contract, backend=args.separator)
    rep = validate_separation(g, vw, sep, contract)
    _write(args.output, _dump(sep.to_json()))
    # an over-budget separator is reported, not failed: the budget is best effort
    hard = [f for f in rep.failures if not f.startswith("budget")]
    return not hard, {"separation": sep.to_json(), "size": len(sep.S),
                      "size_bound": contract.size_bound(g.n), "validation": rep.to_json()}


def cmd_divide(args):
    g = undirected_support(_load(args.graph))
    sched = _schedule(args)
    try:
        if args.weak:
            d, _, _ = weak_division(g, args.r, sched, args.separator, args.c_sep)
        else:
            d = compute_division(g, args.r, sched, args.separator, args.c_bnd, args.c_sep)
    except ScheduleDomainError as exc:
        raise UsageError(str(exc)) from exc
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    rep = validate_division(g, d, constants=_constants(args))
    _write(args.output, _dump(d.to_json()))
    if args.format == "csv":
        return rep.passed, ("csv", [rec.to_json() for rec in d.work_log.records])
    return rep.passed, {"division": {"kind": d.kind, "r": d.r, "p": d.p, "regions": len(d.regions),
                                     "worklog": d.work_log.totals()},
                        "validation": rep.to_json()}


def cmd_validate(args):
    g = undirected_support(_load(args.graph))
    d = _load_division(args.division)
    rep = validate_division(g, d, constants=_constants(args))
    return rep.passed, {"validation": rep.to_json()}


def cmd_sssp(args):
    g = _load(args.graph)
    if not g.directed:
        raise InputError("sssp needs a directed ('p sp') graph")
    for s in args.sources:
        if not 0 <= s < g.n:
            raise UsageError(f"source {s} outside [0, {g.n})")
    d = _load_division(args.division) if args.division else None
    result = {"L": smallest_weight_magnitude(g)}
    try:
        trees = multi_source_sssp(g, args.sources, d)
    except NegativeCycleError as exc:
        result["negative_cycle"] = exc.witness.to_json()
        result["witness_verified"] = exc.witness.verify(g)
        return False, result
    payload = [t.to_json() for t in trees]
    _write(args.output, _dump(payload))
    result["trees"] = payload if args.output is None else len(payload)
    result["tree_errors"] = sum(len(t.validate(g)) for t in trees)
    return result["tree_errors"] == 0, result


def cmd_bench(args):
    g = undirected_support(_load(args.graph))
    try:
        rep = compare_schedules(g, args.r, args.gamma, args.separator,
                                args.epsilon or None, args.r_polynomial, args.c_sep)
    except ScheduleDomainError as exc:
        raise UsageError(str(exc)) from exc
    _write(args.output, _dump(rep))
    ok = all(row["valid"] for row in rep["schedules"].values())
    if args.format == "csv":
        rows = [dict(schedule=mode, **rec) for mode, row in rep["schedules"].items()
                for rec in row["records"]]
        return ok, ("csv", rows)
    for row in rep["schedules"].values():
        row.pop("records")
    return ok, rep


COMMANDS = {
    "gen": cmd_gen,
    "separate": cmd_separate,
    "divide": cmd_divide,
    "validate": cmd_validate,
    "sssp": cmd_sssp,
    "bench-schedules": cmd_bench,
}


def _emit(args, ok: bool, result) -> None:
    header = {"tool": "rdivision", "version": __version__, "command": args.command,
              "config": _config(args)}
    if not args.no_timestamp:
        header["timestamp"] = datetime.now(timezone.utc).isoformat(timespec="seconds")
    if isinstance(result, tuple) and result[0] == "csv":
        rows = result[1]
        buf = io.StringIO()
        for key, val in header.items():
            buf.write(f"# {key}: {json.dumps(val, sort_keys=True)}\n")
        buf.write(f"# ok: {json.dumps(ok)}\n")
        if rows:
            writer = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
            writer.writeheader()
            writer.writerows(rows)
        sys.stdout.write(buf.getvalue())
        return
    header["ok"] = ok
    header["result"] = result
    sys.stdout.write(json.dumps(header, indent=2) + "\n")


def _glue_ranges(argv: list[str]) -> list[str]:
    # "--weights -3..10" would otherwise be read as an unknown option
    out = []
    it = iter(argv)
    for tok in it:
        if tok in ("--weights", "--potentials"):
            nxt = next(it, None)
            out.append(tok if nxt is None else f"{tok}={nxt}")
        else:
            out.append(tok)
    return out


def main(argv=None) -> int:
    parser = build_parser()
    argv = _glue_ranges(list(sys.argv[1:] if argv is None else argv))
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.ERROR)
    try:
        if args.format == "csv" and args.command not in ("divide", "bench-schedules"):
            raise UsageError("--format csv is only available for divide and bench-schedules")
        ok, result = COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"rdivision: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InputError as exc:
        print(f"rdivision: input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (RefinementError, GraphError) as exc:
        print(f"rdivision: {exc}", file=sys.stderr)
        return EXIT_INVALID
    if result is not None:
        _emit(args, ok, result)
    sys.stdout.flush()
    return EXIT_OK if ok else EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
