"""Command-line interface: ``pebbling family|pi|opt|certify|reproduce``.

Exit codes: 0 success, 2 usage or validation error, 3 search budget
exhausted (bounds are still printed), 4 formula/computation mismatch.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from pathlib import Path

from . import graphcore as gc
from .formulas import FormulaDomainError
from .reproduce import SECTIONS, rows_for, run, to_csv
from .solver import (DEFAULT_BUDGET, BudgetExceeded, optimal_pebbling, pebbling_number,
                     pebbling_number_rooted)
from .wfl import Strategy, StrategyError, certify_rooted, default_strategies

EXIT_OK, EXIT_USAGE, EXIT_BUDGET, EXIT_MISMATCH = 0, 2, 3, 4


class UsageError(Exception):
    pass


# --- graph input ---------------------------------------------------------------

def _read_graph(path: str) -> gc.Graph:
    data = sys.stdin.read() if path == "-" else Path(path).read_text()
    fmt = "dot" if path.endswith(".dot") or not data.lstrip().startswith("{") else "json"
    return gc.import_graph(data, fmt)


def _resolve_root(g: gc.Graph, root: str | None) -> int | None:
    if root is None:
        return None
    if root.lstrip("-").isdigit():
        r = int(root)
        if not 0 <= r < g.order:
            raise UsageError(f"root {r} is not a vertex (order {g.order})")
        return r
    hits = [v for v, lab in g.labels.items() if lab == root]
    if len(hits) != 1:
        raise UsageError(f"label {root!r} matches {len(hits)} vertices; give a vertex id")
    return hits[0]


def fingerprint(g: gc.Graph) -> str:
    return hashlib.sha256(gc.export_graph(g, "json")).hexdigest()


def _report(args, command: str, g: gc.Graph | None, results: dict, exhaustive: bool,
            started: float) -> dict:
    rep = {"command": command, "argv": args.argv, "budget": args.budget,
           "results": results, "exhaustive": exhaustive,
           "timing": round(time.perf_counter() - started, 6)}
    if g is not None:
        rep["fingerprint"] = fingerprint(g)
    return rep


def _emit(args, report: dict, human: list[str]) -> None:
    if args.json:
        print(json.dumps(report, sort_keys=True))
    else:
        print("\n".join(human))


# --- family ----------------------------------------------------------------------

_ARITY = {"cycle": 1, "path": 1, "complete": 1, "hypercube": 1, "friendship": 2,
          "tchain": 1, "sqchain": 1, "corona": 2, "qnm": 2}


def build_family(name: str, params: list[str], kind: str = "para", pendant: bool = False,
                 bridges: bool = False) -> gc.Graph:
    if name == "polymer":
        if len(params) != 1:
            raise UsageError("polymer takes one PolymerSpec JSON file")
        spec = gc.PolymerSpec.from_json(json.loads(Path(params[0]).read_text()))
        return gc.compose_polymer(spec)
    if name not in _ARITY:
        raise UsageError(f"unknown family {name!r}; choose from "
                         f"{', '.join(sorted([*_ARITY, 'polymer']))}")
    if len(params) != _ARITY[name]:
        raise UsageError(f"{name} takes {_ARITY[name]} integer parameter(s), got {len(params)}")
    try:
        p = [int(x) for x in params]
    except ValueError:
        raise UsageError(f"{name} parameters must be integers: {params}") from None
    builders = {
        "cycle": lambda: gc.make_cycle(*p),
        "path": lambda: gc.make_path(*p),
        "complete": lambda: gc.make_complete(*p),
        "hypercube": lambda: gc.make_hypercube(*p),
        "friendship": lambda: gc.make_friendship(*p),
        "tchain": lambda: gc.make_triangular_chain(p[0], pendant),
        "sqchain": lambda: gc.make_square_chain(p[0], kind, pendant, bridges),
        "corona": lambda: gc.make_corona(gc.make_complete(p[0]), gc.make_complete(p[1])),
        "qnm": lambda: gc.make_Qnm(*p),
    }
    return builders[name]()


def cmd_family(args) -> int:
    g = build_family(args.name, args.params, args.kind, args.pendant, args.bridges)
    data = gc.export_graph(g, args.format)
    if args.out:
        Path(args.out).write_bytes(data)
    else:
        sys.stdout.write(data.decode())
    return EXIT_OK


# --- pi / opt --------------------------------------------------------------------

def cmd_pi(args) -> int:
    started = time.perf_counter()
    g = _read_graph(args.graph)
    r = _resolve_root(g, args.root)
    if r is None:
        res = pebbling_number(g, args.t, budget=args.budget)
    else:
        res = pebbling_number_rooted(g, r, args.t, budget=args.budget)
    out = res.to_json()
    human = [f"pi_{args.t}{'' if r is None else f'(root {r})'} = {res.value}",
             f"witness (unsolvable, weight {res.witness.weight}): {list(res.witness)}"
             + ("" if r is not None else f" at root {res.root}"),
             f"exhaustive: {str(res.exhaustive).lower()}",
             f"budget: {args.budget} nodes, used {res.nodes}"]
    if not res.exhaustive:
        human[0] = f"pi_{args.t} in [{res.lower}, {res.upper}] (budget exhausted)"
    _emit(args, _report(args, "pi", g, out, res.exhaustive, started), human)
    return EXIT_OK if res.exhaustive else EXIT_BUDGET


def cmd_opt(args) -> int:
    started = time.perf_counter()
    g = _read_graph(args.graph)
    res = optimal_pebbling(g, args.cap, budget=args.budget)
    name = "pi*" if args.cap is None else f"pi*_{args.cap}"
    out = {"value": res.value, "witness": list(res.witness), "exhaustive": res.exhaustive}
    if res.exhaustive:
        human = [f"{name} = {res.value}", f"witness (solvable for every target): {list(res.witness)}"]
    else:
        out.update(lower=res.lower, upper=res.upper)
        human = [f"{name} >= {res.lower} (budget exhausted)"]
    human += [f"exhaustive: {str(res.exhaustive).lower()}",
              f"budget: {args.budget} nodes, used {res.nodes}"]
    _emit(args, _report(args, "opt", g, out, res.exhaustive, started), human)
    return EXIT_OK if res.exhaustive else EXIT_BUDGET


# --- certify ---------------------------------------------------------------------

def cmd_certify(args) -> int:
    started = time.perf_counter()
    g = _read_graph(args.graph)
    r = _resolve_root(g, args.root)
    if args.strategies:
        raw = json.loads(Path(args.strategies).read_text())
        if isinstance(raw, dict):
            raw = raw.get("strategies", [raw])
        strategies = [Strategy.from_json(s) for s in raw]
    else:
        found = default_strategies(g)
        if found is None:
            raise UsageError("no built-in strategies for this graph; pass --strategies")
        droot, strategies = found
        if r is None:
            r = droot
        elif r != droot:
            raise UsageError(f"built-in strategies are rooted at {droot}, not {r}")
    if r is None:
        raise UsageError("--root is required with --strategies")
    cert = certify_rooted(g, r, strategies, budget=args.budget)
    out = cert.to_json()
    if args.json:
        print(json.dumps(_report(args, "certify", g, out, cert.verdict == "exact", started),
                         sort_keys=True))
    else:
        print(json.dumps(out, indent=2))
    return EXIT_OK if cert.verdict == "exact" else EXIT_BUDGET


# --- reproduce -------------------------------------------------------------------

def cmd_reproduce(args) -> int:
    started = time.perf_counter()
    sections = SECTIONS if args.section == "all" else (args.section,)
    rows = run(rows_for(sections, args.max_n), args.budget, args.jobs)
    if args.json:
        rep = _report(args, "reproduce", None, {"rows": [r.to_json() for r in rows]},
                      all(r.method != "budget-exhausted" for r in rows), started)
        print(json.dumps(rep, sort_keys=True))
    else:
        sys.stdout.write(to_csv(rows))
    if args.out:
        Path(args.out).write_text(to_csv(rows))
    for r in rows:
        if not r.agree:
            print(f"MISMATCH: {r.note}", file=sys.stderr)
    print(f"budget: {args.budget} nodes per row", file=sys.stderr)
    if any(not r.agree and r.computed is not None for r in rows):
        return EXIT_MISMATCH
    if any(not r.agree for r in rows):
        return EXIT_BUDGET
    return EXIT_OK


# --- parser ----------------------------------------------------------------------

def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {v}")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable report")
    common.add_argument("--budget", type=_positive, default=DEFAULT_BUDGET,
                        help=f"search node budget (default {DEFAULT_BUDGET})")

    p = argparse.ArgumentParser(prog="pebbling", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    f = sub.add_parser("family", help="build a named graph family")
    f.add_argument("name")
    f.add_argument("params", nargs="*")
    f.add_argument("--kind", choices=("para", "ortho"), default="para")
    f.add_argument("--pendant", action="store_true")
    f.add_argument("--bridges", action="store_true")
    f.add_argument("--format", choices=("json", "dot"), default="json")
    f.add_argument("--out")
    f.set_defaults(func=cmd_family)

    pi = sub.add_parser("pi", parents=[common], help="(rooted) t-fold pebbling number")
    pi.add_argument("graph", help="graph file (JSON or DOT), or - for stdin")
    pi.add_argument("--root", help="vertex id or unique label")
    pi.add_argument("--t", type=_positive, default=1)
    pi.set_defaults(func=cmd_pi)

    o = sub.add_parser("opt", parents=[common], help="optimal pebbling number")
    o.add_argument("graph")
    o.add_argument("--cap", type=_positive, help="at most this many pebbles per vertex")
    o.set_defaults(func=cmd_opt)

    c = sub.add_parser("certify", parents=[common], help="LP upper bound + unsolvable witness")
    c.add_argument("graph")
    c.add_argument("--root")
    src = c.add_mutually_exclusive_group(required=True)
    src.add_argument("--strategies", help="JSON file with a list of strategies")
    src.add_argument("--family-default", action="store_true",
                     help="use the built-in square-chain strategies")
    c.set_defaults(func=cmd_certify)

    r = sub.add_parser("reproduce", parents=[common], help="formula vs computation table")
    r.add_argument("--section", choices=(*SECTIONS, "all"), default="all")
    r.add_argument("--max-n", type=_positive, default=3)
    r.add_argument("--jobs", type=_positive, default=1)
    r.add_argument("--out", help="also write the CSV here")
    r.set_defaults(func=cmd_reproduce)
    return p


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    args.argv = argv
    try:
        return args.func(args)
    except (UsageError, gc.GraphError, StrategyError, FormulaDomainError,
            ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceeded as exc:
        print(f"error: search budget exhausted ({exc})", file=sys.stderr)
        return EXIT_BUDGET


if __name__ == "__main__":
    sys.exit(main())
