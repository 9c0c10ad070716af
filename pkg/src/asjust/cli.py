"""Command-line interface: wfs, oracle, solve, justify, debug."""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional

from .egraph import egraph_to_dot, egraph_to_json, node_for
from .justify import (
    build_offline_justification,
    minimal_assumptions,
    tentative_assumptions,
)
from .program import GroundingError, Interpretation, ParseError, load_program
from .semantics import brute_force_answer_sets, well_founded
from .solver import solve

EXIT_OK = 0
EXIT_NO_MODEL = 10
EXIT_ERROR = 2


def _load(path: str):
    with open(path, "r", encoding="utf-8") as fh:
        return load_program(fh.read())


def _model_line(m: Interpretation) -> str:
    return " ".join(a.name for a in sorted(m.plus)) or "(empty)"


def _filter_false(models, kill_false: bool):
    if not kill_false:
        return models
    return [
        (m, tr)
        for m, tr in models
        if not any(a.name == "false" for a in m.plus)
    ]


def cmd_wfs(args) -> int:
    p = _load(args.file)
    wf, trace = well_founded(p)
    print("W+ = {" + ", ".join(a.name for a in sorted(wf.plus)) + "}")
    print("W- = {" + ", ".join(a.name for a in sorted(wf.minus)) + "}")
    if args.trace:
        rows = [
            {
                "index": ku.index,
                "K": sorted(a.name for a in ku.k),
                "U": sorted(a.name for a in ku.u),
            }
            for ku in trace
        ]
        print(json.dumps(rows, indent=2))
    return EXIT_OK


def cmd_oracle(args) -> int:
    p = _load(args.file)
    models = brute_force_answer_sets(p, atom_cap=args.cap)
    for i, m in enumerate(models, 1):
        print(f"Answer {i}: {_model_line(m)}")
    print(f"{len(models)} answer set(s)")
    return EXIT_OK if models else EXIT_NO_MODEL


def cmd_solve(args) -> int:
    p = _load(args.file)
    results = list(
        solve(p, max_models=args.max_models, sign_order=args.sign_order, trace=bool(args.trace))
    )
    results = _filter_false(results, args.kill_false)
    for i, (m, _) in enumerate(results, 1):
        print(f"Answer {i}: {_model_line(m)}")
    print(f"{len(results)} answer set(s)")
    if args.trace:
        traces = [tr.to_json() for _, tr in results]
        with open(args.trace, "w", encoding="utf-8") as fh:
            json.dump(traces, fh, indent=2)
    return EXIT_OK if results else EXIT_NO_MODEL


def cmd_justify(args) -> int:
    p = _load(args.file)
    models = _filter_false(list(solve(p)), args.kill_false)
    if not models:
        print("no answer sets", file=sys.stderr)
        return EXIT_NO_MODEL
    if not 1 <= args.model <= len(models):
        print(f"--model must be in 1..{len(models)}", file=sys.stderr)
        return EXIT_ERROR
    m, _ = models[args.model - 1]
    atom = p.try_atom(args.atom)
    if atom is None:
        print(f"unknown atom {args.atom!r}", file=sys.stderr)
        return EXIT_ERROR
    if args.assumptions == "ta":
        u = tentative_assumptions(p, m)
    else:
        u = min(
            (s.atoms for s in minimal_assumptions(p, m)),
            key=lambda s: sorted(a.id for a in s),
        )
    target = node_for(atom, args.sign)
    g = build_offline_justification(p, m, u, target)
    if args.format == "dot":
        print(egraph_to_dot(g), end="")
    else:
        print(json.dumps(egraph_to_json(g), indent=2))
    if args.render:
        from .figures import render_egraph

        render_egraph(g, args.render, title=f"{args.atom}{args.sign} w.r.t. answer {args.model}")
        print(f"figure written to {args.render}", file=sys.stderr)
    return EXIT_OK


def cmd_debug(args) -> int:
    import uvicorn

    from .debugger import SessionManager, create_app

    manager = SessionManager()
    if args.file:
        with open(args.file, "r", encoding="utf-8") as fh:
            session = manager.create(fh.read())
        print(f"preloaded session {session.id} from {args.file}", file=sys.stderr)
    app = create_app(manager, static_dir=args.static)
    print(f"debugger listening on http://{args.host}:{args.port}", file=sys.stderr)
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="asjust",
        description="Answer sets, well-founded models, and justification graphs",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_wfs = sub.add_parser("wfs", help="well-founded model of a program")
    p_wfs.add_argument("file")
    p_wfs.add_argument("--trace", action="store_true", help="print the K/U trace as JSON")
    p_wfs.set_defaults(func=cmd_wfs)

    p_oracle = sub.add_parser("oracle", help="brute-force answer-set enumeration")
    p_oracle.add_argument("file")
    p_oracle.add_argument("--cap", type=int, default=16, help="atom-count cap")
    p_oracle.set_defaults(func=cmd_oracle)

    p_solve = sub.add_parser("solve", help="enumerate answer sets")
    p_solve.add_argument("file")
    p_solve.add_argument("--max-models", type=int, default=None)
    p_solve.add_argument("--sign-order", choices=["tf", "ft"], default="tf")
    p_solve.add_argument("--trace", metavar="OUT.json", help="write computation traces")
    p_solve.add_argument("--kill-false", action="store_true",
                         help="drop models containing the atom 'false'")
    p_solve.set_defaults(func=cmd_solve)

    p_just = sub.add_parser("justify", help="off-line justification of one atom")
    p_just.add_argument("file")
    p_just.add_argument("--model", type=int, default=1, help="1-based answer-set index")
    p_just.add_argument("--atom", required=True)
    p_just.add_argument("--sign", choices=["+", "-"], default="+")
    p_just.add_argument("--assumptions", choices=["min", "ta"], default="ta")
    p_just.add_argument("--format", choices=["json", "dot"], default="json")
    p_just.add_argument("--render", metavar="OUT.png", help="also draw the graph to a file")
    p_just.add_argument("--kill-false", action="store_true")
    p_just.set_defaults(func=cmd_justify)

    p_debug = sub.add_parser("debug", help="run the interactive debugger service")
    p_debug.add_argument("file", nargs="?", help="optional program to preload")
    p_debug.add_argument("--port", type=int, default=8675)
    p_debug.add_argument("--host", default="127.0.0.1")
    p_debug.add_argument("--static", default=None, help="directory with the web client")
    p_debug.set_defaults(func=cmd_debug)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, GroundingError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
