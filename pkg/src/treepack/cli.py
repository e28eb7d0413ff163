"""Command-line front end: graph ingestion, dispatch, machine-readable reports.

Every subcommand prints one report to stdout (JSON by default; text and CSV
renderings are flattenings of the same structure).  Reports are
deterministic for a fixed seed apart from the ``timing`` block.  Exit codes:
0 success, 1 reference-table mismatch or validation violation, 2 usage
error, 3 malformed input.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import re
import sys
import time

from . import __version__
from .graphs import (
    Graph,
    GraphError,
    GraphFormatError,
    build_B,
    complete,
    complete_bipartite,
    fixture_h1,
    fixture_h2,
    petersen,
    read_graph,
)
from .packing import nu_f_bounds, nu_f_exact, tau, verify_decomposition
from .property_p import (
    DEFAULT_EXHAUSTIVE_BUDGET,
    PQuery,
    check_p,
)
from .spectral import spectrum, spectrum_alpha
from .theorems import (
    eval_t16,
    eval_t17,
    eval_t41,
    random_validation,
    reproduce_reference_values,
)


class UsageError(Exception):
    pass


_FIXTURE_COMPLETE = re.compile(r"^k(\d+)$")
_FIXTURE_BIPARTITE = re.compile(r"^k(\d+)x(\d+)$")
_FIXTURE_B = re.compile(r"^b(\d+),(\d+),(\d+)$")


def resolve_fixture(name: str) -> Graph:
    if name == "h1":
        return fixture_h1()
    if name == "h2":
        return fixture_h2()
    if name == "petersen":
        return petersen()
    m = _FIXTURE_BIPARTITE.match(name)
    if m:
        return complete_bipartite(int(m.group(1)), int(m.group(2)))
    m = _FIXTURE_COMPLETE.match(name)
    if m:
        return complete(int(m.group(1)))
    m = _FIXTURE_B.match(name)
    if m:
        return build_B(int(m.group(1)), int(m.group(2)), int(m.group(3)))
    raise UsageError(f"unknown fixture {name!r} (try h1, h2, petersen, k5, "
                     f"k3x3, or b11,5,1)")


def load_input_graph(args) -> tuple[Graph, str]:
    if args.fixture is not None:
        return resolve_fixture(args.fixture), f"fixture:{args.fixture}"
    if args.graph is None:
        raise UsageError("provide a graph file or --fixture NAME")
    return read_graph(args.graph), f"file:{args.graph}"


def load_vertex_list(path) -> tuple[int, ...]:
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    values = []
    for raw in text.split("\n"):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        for field in line.split():
            values.append(int(field))
    if not values:
        raise GraphFormatError(f"no vertices found in {path}")
    return tuple(sorted(set(values)))


def _flatten_pairs(obj):
    out = []

    def walk(node, path):
        if isinstance(node, dict):
            for key in sorted(node):
                walk(node[key], path + [str(key)])
        elif isinstance(node, (list, tuple)):
            out.append((".".join(path), json.dumps(node, sort_keys=True)))
        else:
            out.append((".".join(path), node))

    walk(obj, [])
    return out


def render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, sort_keys=True, indent=2) + "\n"
    pairs = _flatten_pairs(report)
    if fmt == "text":
        width = max(len(k) for k, _ in pairs)
        return "".join(f"{k.ljust(width)}  {v}\n" for k, v in pairs)
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["key", "value"])
        for k, v in pairs:
            writer.writerow([k, v])
        return buf.getvalue()
    raise UsageError(f"unknown format {fmt!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="treepack",
        description="Spanning-tree packing, graph strength, spectra, and "
                    "packing-plus-spare-forest property decisions.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, graph=True):
        if graph:
            p.add_argument("graph", nargs="?", help="edge-list file")
            p.add_argument("--fixture", help="named fixture instead of a file")
        p.add_argument("--format", choices=["json", "text", "csv"],
                       default="json")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--threads", type=int, default=1,
                       help="worker cap (results are worker-count independent)")

    p = sub.add_parser("eigen", help="adjacency or degree-weighted spectrum")
    common(p)
    p.add_argument("--alpha", type=float, default=None)
    p.add_argument("--i", type=int, default=None,
                   help="report only the i-th largest eigenvalue (1-indexed)")

    p = sub.add_parser("tau", help="spanning-tree packing number")
    common(p)

    p = sub.add_parser("nuf", help="fractional packing number")
    common(p)
    p.add_argument("--exact-limit", type=int, default=12)

    p = sub.add_parser("check-p", help="decide the packing-plus-forest property")
    common(p)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--bipartition", help="file with an explicit U vertex set")
    p.add_argument("--budget", type=int, default=DEFAULT_EXHAUSTIVE_BUDGET)

    p = sub.add_parser("theorem", help="evaluate a sufficient condition")
    common(p)
    p.add_argument("--which", choices=["t16", "t17", "t41"], required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--alpha", type=float, default=0.0)
    p.add_argument("--conclusion", choices=["auto", "always", "never"],
                   default="auto")

    p = sub.add_parser("reproduce", help="recompute the reference-value table")
    common(p, graph=False)
    p.add_argument("--budget", type=int, default=DEFAULT_EXHAUSTIVE_BUDGET)

    p = sub.add_parser("validate", help="randomized theorem validation")
    common(p, graph=False)
    p.add_argument("--config", required=True, help="JSON config file")

    return parser


def _graph_inputs(g: Graph, source: str) -> dict:
    return {"source": source, "n": g.n, "m": g.m}


def run_command(args) -> tuple[dict, dict, int]:
    """Execute one subcommand; returns (inputs, results, exit_code)."""
    cmd = args.command
    if cmd == "eigen":
        g, source = load_input_graph(args)
        if args.alpha is None:
            spec = spectrum(g)
        else:
            spec = spectrum_alpha(g, args.alpha)
        results = {
            "alpha": args.alpha,
            "values": list(spec.values),
            "residual": spec.residual,
        }
        if args.i is not None:
            results["i"] = args.i
            results["lambda_i"] = spec.lam(args.i)
        return _graph_inputs(g, source), results, 0

    if cmd == "tau":
        g, source = load_input_graph(args)
        value, dec = tau(g)
        results = {
            "tau": value,
            "trees": dec.to_json_obj(),
            "verified": verify_decomposition(g, dec, require_spanning=value),
        }
        return _graph_inputs(g, source), results, 0

    if cmd == "nuf":
        g, source = load_input_graph(args)
        if 2 <= g.n <= args.exact_limit:
            value, cert = nu_f_exact(g, args.exact_limit)
            results = {
                "mode": "exact",
                "value": {"fraction": f"{value.numerator}/{value.denominator}",
                          "decimal": float(value)},
                "certificate": cert.to_json_obj(),
            }
        else:
            lower, upper, cert = nu_f_bounds(g)
            results = {
                "mode": "bounds",
                "lower": {"fraction": f"{lower.numerator}/{lower.denominator}",
                          "decimal": float(lower)},
                "upper": {"fraction": f"{upper.numerator}/{upper.denominator}",
                          "decimal": float(upper)},
                "certificate": cert.to_json_obj(),
            }
        return _graph_inputs(g, source), results, 0

    if cmd == "check-p":
        g, source = load_input_graph(args)
        explicit_u = None
        if args.bipartition:
            explicit_u = load_vertex_list(args.bipartition)
        verdict = check_p(g, PQuery(args.k, args.d), explicit_u=explicit_u,
                          budget=args.budget)
        inputs = _graph_inputs(g, source)
        inputs.update({"k": args.k, "d": args.d, "budget": args.budget})
        if explicit_u is not None:
            inputs["bipartition"] = list(explicit_u)
        return inputs, verdict.to_json_obj(), 0

    if cmd == "theorem":
        g, source = load_input_graph(args)
        evaluate = {"auto": None, "always": True, "never": False}[args.conclusion]
        if args.which == "t16":
            report = eval_t16(g, args.k, evaluate_conclusion=evaluate)
        elif args.which == "t17":
            report = eval_t17(g, args.k, evaluate_conclusion=evaluate)
        else:
            report = eval_t41(g, args.k, args.alpha, evaluate_conclusion=evaluate)
        inputs = _graph_inputs(g, source)
        inputs.update({"which": args.which, "k": args.k, "alpha": args.alpha,
                       "conclusion": args.conclusion})
        return inputs, report.to_json_obj(), 0

    if cmd == "reproduce":
        table = reproduce_reference_values(budget=args.budget)
        return ({"budget": args.budget}, table.to_json_obj(),
                0 if table.ok else 1)

    if cmd == "validate":
        with open(args.config, "r", encoding="utf-8") as fh:
            config = json.load(fh)
        report = random_validation(config)
        return ({"config": args.config}, report.to_json_obj(),
                0 if report.ok else 1)

    raise UsageError(f"unknown command {cmd!r}")


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    started = time.perf_counter()
    try:
        inputs, results, code = run_command(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (GraphFormatError, OSError, json.JSONDecodeError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 3
    except (GraphError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    elapsed = time.perf_counter() - started
    report = {
        "command": args.command,
        "version": __version__,
        "seed": args.seed,
        "threads": args.threads,
        "inputs": inputs,
        "results": results,
        "timing": {"seconds": elapsed},
    }
    sys.stdout.write(render(report, args.format))
    return code


if __name__ == "__main__":
    sys.exit(main())
