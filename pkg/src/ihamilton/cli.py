"""Command-line interface.

Exit codes: 0 success or a positive answer, 1 a negative ("absent") answer,
2 errors (bad parameters, unsupported formats, failed re-verification input).
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import __version__
from .certify import METHODS, iso_certificate, solve, verify
from .constructive import construct_witness, excluded, hamiltonian_i_graph
from .families import IParams, XParams, all_i_params, i_graph, is_connected_i, is_proper_i, spoke_factor
from .io import (
    WITNESS_SCHEMA_TAG,
    SchemaError,
    dumps_certificate,
    graph_to_json,
    loads_certificate,
    parse_instance,
    to_dot,
    to_graph6,
)
from .oracle import brute_hamiltonian
from .quotient import blue_red_coloring, classify_transitions, contract_factor

EXIT_OK, EXIT_ABSENT, EXIT_ERROR = 0, 1, 2
SURVEY_COLUMNS = ("n", "p", "q", "connected", "proper", "hamiltonian", "method", "millis")


class CliError(Exception):
    pass


def _x_params(values: list[str]) -> XParams:
    if len(values) != 3:
        raise CliError("X-parameters are three integers s t r")
    try:
        return XParams(*(int(v) for v in values))
    except ValueError as exc:
        raise CliError(str(exc)) from exc


def _emit(obj) -> None:
    print(obj if isinstance(obj, str) else json.dumps(obj, indent=1))


def cmd_gen(args) -> int:
    spec = parse_instance(args.instance)
    g = spec.graph()
    if args.format == "json":
        _emit({"instance": spec.to_json(), "graph": graph_to_json(g)})
    elif args.format == "graph6":
        _emit(to_graph6(g))
    else:
        sys.stdout.write(to_dot(g, name=spec.family))
    return EXIT_OK


def cmd_contract(args) -> int:
    spec = parse_instance(args.instance)
    if spec.family not in ("i_graph", "gpg"):
        raise CliError("contract takes an I-graph instance (i n p q or g n k)")
    params: IParams = spec.typed()
    c = contract_factor(i_graph(params), spoke_factor(params))
    ts = classify_transitions(c)
    out = {
        "instance": spec.to_json(),
        "quotient": graph_to_json(c.quotient),
        "vertex_map": list(c.vertex_map),
        "y_edges": list(c.y_edges),
        "transitions": [[list(a), list(b)] for a, b in ts.pairs],
        "flags": list(c.flags),
    }
    try:
        out["coloring"] = ["blue" if b else "red" for b in blue_red_coloring(c).blue]
    except ValueError as exc:
        out["coloring"] = None
        out["flags"].append(str(exc))
    _emit(out)
    return EXIT_OK


def cmd_solve(args) -> int:
    spec = parse_instance(args.instance)
    cert = solve(spec, "exact" if args.exact else "constructive")
    _emit(dumps_certificate(cert))
    return EXIT_OK if cert.positive else EXIT_ABSENT


def cmd_verify(args) -> int:
    text = sys.stdin.read() if args.certificate == "-" else Path(args.certificate).read_text()
    cert = loads_certificate(text)
    ok, message = verify(cert)
    print(f"{'PASS' if ok else 'FAIL'}: {cert.kind}: {message}")
    return EXIT_OK if ok else EXIT_ABSENT


def cmd_iso(args) -> int:
    a, b = _x_params(args.a), _x_params(args.b)
    cert, info = iso_certificate(a, b, oracle=args.oracle)
    if args.oracle and info["oracle"] != info["predicate"]:
        print(f"predicate and oracle disagree on {a} vs {b}", file=sys.stderr)
    _emit({**info, "certificate": json.loads(dumps_certificate(cert))})
    return EXIT_OK if cert.positive else EXIT_ABSENT


def survey_row(params: IParams, exact: bool = False, timing: bool = True) -> tuple:
    start = time.perf_counter()
    connected = is_connected_i(params)
    proper = is_proper_i(params) if connected else ""
    if not connected:
        ham, method = False, "disconnected"
    elif exact:
        ham, method = brute_hamiltonian(i_graph(params)) is not None, "exact"
    else:
        ham, method = hamiltonian_i_graph(params) is not None, "constructive"
    millis = round((time.perf_counter() - start) * 1000) if timing else 0
    return (params.n, params.p, params.q, connected, proper, ham, method, millis)


def _survey_chunk(job: tuple[list[tuple[int, int, int]], bool, bool]) -> list[tuple]:
    triples, exact, timing = job
    return [survey_row(IParams(*t), exact, timing) for t in triples]


def cmd_survey(args) -> int:
    triples = [(p.n, p.p, p.q) for p in all_i_params(args.n_max, args.n_min)]
    size = max(1, len(triples) // (8 * max(1, args.jobs)))
    jobs = [(triples[k:k + size], args.exact, not args.no_timing) for k in range(0, len(triples), size)]
    out = open(args.output, "w", newline="") if args.output else sys.stdout
    try:
        writer = csv.writer(out)
        writer.writerow(SURVEY_COLUMNS)
        if args.jobs > 1:
            with ProcessPoolExecutor(max_workers=args.jobs) as pool:
                chunks = pool.map(_survey_chunk, jobs)
                for rows in chunks:
                    writer.writerows(_csv_row(r) for r in rows)
        else:
            for job in jobs:
                writer.writerows(_csv_row(r) for r in _survey_chunk(job))
    finally:
        if out is not sys.stdout:
            out.close()
    return EXIT_OK


def _csv_row(row: tuple) -> tuple:
    return tuple(str(v).lower() if isinstance(v, bool) else v for v in row)


def cmd_witness(args) -> int:
    if args.regenerate_bases:
        from .basetable import write_table

        write_table()
        print("base witness table regenerated", file=sys.stderr)
        if not args.x:
            return EXIT_OK
    p = _x_params(args.x)
    w = construct_witness(p)
    if w is None:
        _emit({"schema": WITNESS_SCHEMA_TAG, "params": [p.s, p.t, p.r], "absent": excluded(p) or "no witness"})
        return EXIT_ABSENT
    _emit({
        "schema": WITNESS_SCHEMA_TAG,
        "params": [p.s, p.t, p.r],
        "edges": [e for e, used in enumerate(w.edges) if used],
        "tour": [list(step) for step in w.tour.steps],
        "provenance": list(w.provenance),
    })
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ihamilton", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"ihamilton {__version__}")
    parser.add_argument("--max-ham-vertices", type=int, help="size guard for brute-force Hamiltonicity")
    parser.add_argument("--max-iso-vertices", type=int, help="size guard for brute-force isomorphism")
    sub = parser.add_subparsers(dest="command", required=True)
    family_help = "family and integers: i n p q | g n k | x s t r | sgi s t r | cir n a b | cayley m d1 a1 b1 a2 b2"

    p = sub.add_parser("gen", help="emit a graph")
    p.add_argument("instance", nargs="+", help=family_help)
    p.add_argument("--format", choices=("json", "graph6", "dot"), default="json")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("contract", help="spoke quotient, transition system and colouring of an I-graph")
    p.add_argument("instance", nargs="+", help="i n p q | g n k")
    p.set_defaults(func=cmd_contract)

    p = sub.add_parser("solve", help="decide Hamiltonicity (good-subgraph existence for x) and emit a certificate")
    p.add_argument("instance", nargs="+", help=family_help)
    group = p.add_mutually_exclusive_group()
    group.add_argument("--exact", action="store_true", help="brute-force oracle")
    group.add_argument("--constructive", action="store_true", help="grid-witness construction (default)")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", help="re-check a certificate (path or - for stdin)")
    p.add_argument("certificate")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("iso", help="isomorphism of X(s,t,r) graphs")
    p.add_argument("a", nargs=3, metavar="A")
    p.add_argument("b", nargs=3, metavar="B")
    p.add_argument("--oracle", action="store_true", help="also run the brute-force isomorphism search")
    p.set_defaults(func=cmd_iso)

    p = sub.add_parser("survey", help="run the I-graph corpus and emit CSV")
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--n-min", type=int, default=3)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--exact", action="store_true", help="decide with the brute-force oracle")
    p.add_argument("--no-timing", action="store_true", help="write 0 in the millis column")
    p.add_argument("--output", help="CSV path (default stdout)")
    p.set_defaults(func=cmd_survey)

    p = sub.add_parser("witness", help="emit a grid witness for X(s,t,r)")
    p.add_argument("x", nargs="*", metavar="S T R")
    p.add_argument("--regenerate-bases", action="store_true", help="rebuild the frozen base witness table")
    p.set_defaults(func=cmd_witness)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_ERROR
    if args.max_ham_vertices:
        os.environ["IHAMILTON_MAX_HAM_VERTICES"] = str(args.max_ham_vertices)
    if args.max_iso_vertices:
        os.environ["IHAMILTON_MAX_ISO_VERTICES"] = str(args.max_iso_vertices)
    try:
        return args.func(args)
    except (CliError, SchemaError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
