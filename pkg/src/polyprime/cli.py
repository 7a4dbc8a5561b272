"""Batch command-line surface.

Exit codes: 0 success, 2 counterexample found, 3 budget exhausted,
4 input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .classify import (
    closed_path_certificate,
    find_l_configurations,
    find_ladders,
    open_path_certificate,
    trimino_certificate,
)
from .families import (
    ConditionViolated,
    FamilySpec,
    OpenPath,
    build_psc,
    build_rectangle_linked,
    certify_family,
    check_good_l_rectangle,
    enumerate_closed_paths,
    verify_main_theorem,
)
from .grid import (
    GridParseError,
    Polyomino,
    PolyominoError,
    format_shape_json,
    holes,
    inner_intervals,
    is_simple,
    parse_grid,
    parse_shape_json,
)
from .ideals import (
    export_generators,
    inner_minors,
    toric_map_lconfig,
    toric_map_marked,
)
from .toric import (
    Budget,
    BudgetExhausted,
    CounterexampleFound,
    NotInSupportedClass,
    certify_primality,
    toric_ideal,
    vertex_ring,
)
from .zigzag import find_zigzag_walk

EXIT_OK = 0
EXIT_COUNTEREXAMPLE = 2
EXIT_BUDGET = 3
EXIT_INPUT = 4


def _read_shape(path: str, fmt: str | None) -> Polyomino:
    if path == "-":
        text = sys.stdin.read()
        name = "<stdin>"
    else:
        text = Path(path).read_text()
        name = path
    chosen = fmt
    if chosen is None:
        chosen = "json" if name.endswith(".json") or text.lstrip().startswith("{") else "grid"
    if chosen == "json":
        return parse_shape_json(text)
    return parse_grid(text)


def _budget_from_args(args: argparse.Namespace) -> Budget:
    return Budget(
        max_pairs=args.budget_pairs,
        max_degree=args.budget_degree,
        max_seconds=args.budget_seconds,
    )


def _emit(args: argparse.Namespace, human: str, payload: dict) -> None:
    if args.json:
        print(json.dumps(payload, separators=(",", ":"), sort_keys=True))
    else:
        print(human)
    if args.output:
        Path(args.output).write_text(
            json.dumps(payload, indent=2, sort_keys=True) + "\n"
        )


def _cmd_classify(args: argparse.Namespace) -> int:
    shape = _read_shape(args.shape, args.format)
    cert = closed_path_certificate(shape)
    lconfigs = find_l_configurations(shape)
    ladders = find_ladders(shape, min_steps=args.min_steps)
    open_path = open_path_certificate(shape)
    trimino = trimino_certificate(shape)
    payload = {
        "rank": shape.rank,
        "simple": is_simple(shape),
        "holes": len(holes(shape)),
        "closed_path": None if cert is None else [list(c) for c in cert.cycle],
        "l_configurations": [[list(c) for c in l.cells] for l in lconfigs],
        "ladders": [
            {
                "orientation": l.orientation,
                "blocks": [[list(c) for c in b.cells] for b in l.blocks],
                "contacts": [[list(a), list(b)] for a, b in l.contacts],
            }
            for l in ladders
        ],
        "open_path": None if open_path is None else [list(c) for c in open_path.cells],
        "trimino": None
        if trimino is None
        else {
            "cells": [list(c) for c in trimino.cells],
            "hooking_vertices": [list(v) for v in trimino.hooking_vertices],
        },
        "inner_intervals": len(inner_intervals(shape)),
    }
    shape_kind = "simple" if payload["simple"] else f"{payload['holes']} hole(s)"
    closed = "yes" if cert else "no"
    human = (
        f"rank {payload['rank']}; {shape_kind}; closed path: {closed}; "
        f"L-configurations: {len(lconfigs)}; ladders(>= {args.min_steps}): {len(ladders)}"
    )
    _emit(args, human, payload)
    return EXIT_OK


def _cmd_zigzag(args: argparse.Namespace) -> int:
    shape = _read_shape(args.shape, args.format)
    witness = find_zigzag_walk(shape)
    if witness is None:
        _emit(args, "none", {"witness": None})
    else:
        payload = json.loads(witness.to_json())
        _emit(args, f"zig-zag walk of length {witness.length}", {"witness": payload})
    return EXIT_OK


def _cmd_ideal(args: argparse.Namespace) -> int:
    shape = _read_shape(args.shape, args.format)
    minors = inner_minors(shape)
    ring = vertex_ring(shape)
    out = export_generators(ring, minors)
    if args.toric:
        lconfigs = find_l_configurations(shape)
        if args.marked == "lconfig" and lconfigs:
            phi = toric_map_lconfig(shape, lconfigs[0])
        else:
            phi = toric_map_marked(shape, ())
        budget = _budget_from_args(args)
        try:
            gb = toric_ideal(phi, budget)
        except BudgetExhausted as exc:
            print(f"budget exhausted: {exc}", file=sys.stderr)
            return EXIT_BUDGET
        out += "\n" + export_generators(gb.ring, gb.generators)
    sys.stdout.write(out)
    if args.output:
        Path(args.output).write_text(out)
    return EXIT_OK


def _cmd_certify(args: argparse.Namespace) -> int:
    shape = _read_shape(args.shape, args.format)
    budget = _budget_from_args(args)
    try:
        verdict = certify_primality(shape, budget)
    except NotInSupportedClass as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except CounterexampleFound as exc:
        print(f"counterexample: {exc}", file=sys.stderr)
        return EXIT_COUNTEREXAMPLE
    payload = verdict.to_json_dict()
    if verdict.kind == "prime":
        human = f"Prime ({verdict.proof}; equality={verdict.equality})"
    elif verdict.kind == "nonprime":
        human = f"NonPrime (zig-zag walk of length {verdict.witness.length})"
    else:
        human = f"Inconclusive ({verdict.reason})"
    _emit(args, human, payload)
    if verdict.equality == "containment-only":
        return EXIT_BUDGET
    return EXIT_OK


def _cmd_enumerate(args: argparse.Namespace) -> int:
    count = 0
    for shape in enumerate_closed_paths(args.max_rank):
        count += 1
        print(format_shape_json(shape))
    print(f"total {count}", file=sys.stderr)
    return EXIT_OK


def _cmd_verify(args: argparse.Namespace) -> int:
    budget = _budget_from_args(args)
    try:
        report = verify_main_theorem(
            args.max_rank,
            budget,
            jobs=args.jobs,
            certify=not args.no_certify,
            cache_dir=args.cache_dir,
        )
    except CounterexampleFound as exc:
        print(f"counterexample: {exc}", file=sys.stderr)
        return EXIT_COUNTEREXAMPLE
    text = report.to_json_lines()
    if args.output:
        Path(args.output).write_text(text)
    if args.json:
        sys.stdout.write(text)
    else:
        print(json.dumps(report.summary(), indent=2, sort_keys=True))
    return EXIT_OK


def _parse_family_spec(path: str) -> tuple[Polyomino, FamilySpec]:
    try:
        data = json.loads(Path(path).read_text() if path != "-" else sys.stdin.read())
    except json.JSONDecodeError as exc:
        raise GridParseError(f"invalid JSON: {exc.msg}", line=exc.lineno, column=exc.colno)
    kind = data.get("kind")
    cells = lambda key: tuple(tuple(c) for c in data[key])
    if kind == "psc":
        s = Polyomino.from_cells(cells("s"))
        c_path = OpenPath(cells("c"))
        t1 = trimino_certificate(Polyomino.from_cells(cells("t1")))
        t2 = trimino_certificate(Polyomino.from_cells(cells("t2")))
        if t1 is None or t2 is None:
            raise ConditionViolated(1, "hook part is not a trimino")
        return build_psc(s, c_path, t1, t2)
    if kind in ("rectangle-linked", "good-l-rectangle", "ladder-rectangle"):
        r = Polyomino.from_cells(cells("r"))
        s = Polyomino.from_cells(cells("s"))
        p1 = OpenPath(cells("p1"))
        p2 = OpenPath(cells("p2"))
        return build_rectangle_linked(r, p1, s, p2, kind=kind)
    raise GridParseError(f"unknown family kind {kind!r}")


def _cmd_family(args: argparse.Namespace) -> int:
    try:
        shape, spec = _parse_family_spec(args.spec)
    except (GridParseError, ConditionViolated, KeyError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    payload: dict = {
        "kind": spec.kind,
        "cells": [list(c) for c in shape.sorted_cells()],
        "holes": len(holes(shape)),
    }
    if spec.kind == "good-l-rectangle":
        payload["good"] = check_good_l_rectangle(shape, spec)
    if args.certify:
        budget = _budget_from_args(args)
        try:
            verdict = certify_family(shape, spec, budget)
        except CounterexampleFound as exc:
            print(f"counterexample: {exc}", file=sys.stderr)
            return EXIT_COUNTEREXAMPLE
        payload["verdict"] = verdict.to_json_dict()
        human = f"{spec.kind}: valid, {verdict.kind}"
        if verdict.kind == "prime":
            human += f" ({verdict.proof}; equality={verdict.equality})"
    else:
        human = f"{spec.kind}: valid, {payload['holes']} hole(s)"
    _emit(args, human, payload)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="polyprime",
        description="Classify lattice shapes and certify primality of their binomial ideals.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, shape_arg: bool = True) -> None:
        if shape_arg:
            p.add_argument("shape", help="shape file (text grid or JSON), '-' for stdin")
            p.add_argument("--format", choices=("grid", "json"), default=None)
        p.add_argument("--json", action="store_true", help="machine-readable stdout")
        p.add_argument("--output", default=None, help="also write the JSON payload here")
        p.add_argument("--budget-pairs", type=int, default=None)
        p.add_argument("--budget-degree", type=int, default=None)
        p.add_argument("--budget-seconds", type=float, default=None)

    p_classify = sub.add_parser("classify", help="structure facts for a shape")
    common(p_classify)
    p_classify.add_argument("--min-steps", type=int, default=3, help="ladder step threshold")
    p_classify.set_defaults(func=_cmd_classify)

    p_zigzag = sub.add_parser("zigzag", help="search for a zig-zag walk")
    common(p_zigzag)
    p_zigzag.set_defaults(func=_cmd_zigzag)

    p_ideal = sub.add_parser("ideal", help="export generators (and optionally the kernel basis)")
    common(p_ideal)
    p_ideal.add_argument("--toric", action="store_true", help="also compute the kernel basis")
    p_ideal.add_argument("--marked", choices=("none", "lconfig"), default="none")
    p_ideal.set_defaults(func=_cmd_ideal)

    p_certify = sub.add_parser("certify", help="primality verdict for a shape")
    common(p_certify)
    p_certify.set_defaults(func=_cmd_certify)

    p_enum = sub.add_parser("enumerate", help="stream closed paths up to a rank bound")
    common(p_enum, shape_arg=False)
    p_enum.add_argument("--max-rank", type=int, required=True)
    p_enum.set_defaults(func=_cmd_enumerate)

    p_verify = sub.add_parser("verify", help="run the exhaustive verification harness")
    common(p_verify, shape_arg=False)
    p_verify.add_argument("--max-rank", type=int, required=True)
    p_verify.add_argument("--jobs", type=int, default=1)
    p_verify.add_argument("--no-certify", action="store_true", help="structural checks only")
    p_verify.add_argument("--cache-dir", default=None, help="content-addressed result cache")
    p_verify.set_defaults(func=_cmd_verify)

    p_family = sub.add_parser("family", help="validate and certify a composite family instance")
    common(p_family, shape_arg=False)
    p_family.add_argument("spec", help="family spec JSON, '-' for stdin")
    p_family.add_argument("--certify", action="store_true")
    p_family.set_defaults(func=_cmd_family)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (GridParseError, PolyominoError, FileNotFoundError, ValueError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except BudgetExhausted as exc:
        print(f"budget exhausted: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except CounterexampleFound as exc:
        print(f"counterexample: {exc}", file=sys.stderr)
        return EXIT_COUNTEREXAMPLE


if __name__ == "__main__":
    sys.exit(main())
