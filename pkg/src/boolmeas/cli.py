#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
boolmeas command line.

    boolmeas kelley   --in instance.json
    boolmeas mix      --json '{"a": [[0, "1/2"]], "b": [[0, "1/2"]], "N": 2}'
    boolmeas center   --in weights.json --format csv
    boolmeas swap     --in pair.json
    boolmeas name     --in query.json
    boolmeas converge --json '{"sequence": {"kind": "bit-flip"}, "s": 6, "N": 10}'
    boolmeas density  --seed 42 --bits 10000

Exit status: 0 on success, 2 on invalid input, 3 when a cap is exceeded.
Reports go to standard output (or --out), diagnostics to standard error.
"""
from __future__ import annotations

import argparse
import logging
import sys
from typing import Any, Callable, Dict, List, Optional, Tuple

import pandas as pd

from . import __version__
from .core.convergence import canonical_family, nontriviality_verdict, pointwise_report
from .core.dynamics import SymmetryReport, centering_cover_report, mixing_table, swap_automorphism
from .core.kelley import MAX_MULTISET, supports_decision
from .core.names import name_at_point
from .core.sampling import BitStream
from .errors import CapExceededError, ValidationError
from .extras.density import density_demo
from .models.run_config import OUTPUT_FORMATS, PRESET_CONFIGS, RunConfig, get_preset_config
from .models import schema
from .utils import build_frame, format_rational, render_frame, save_report

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_CAP = 3

# (payload for JSON, summary lines for tables, report frame)
Report = Tuple[Dict[str, Any], List[Tuple[str, Any]], pd.DataFrame]


def _rational(q) -> List[int]:
    return schema.rational_json(q)


# ============================================================================
# COMMANDS
# ============================================================================

def run_kelley(data: Dict[str, Any], config: RunConfig) -> Report:
    inp = schema.parse_kelley(data)
    family = [inp.algebra.parse(member) for member in inp.family]
    verdict = supports_decision(
        inp.algebra,
        family,
        N=inp.N or config.multiset_cap,
        max_atoms=config.kelley_max_atoms,
        max_family=config.kelley_max_family,
    )
    payload = {"instance": {"atoms": list(inp.algebra.atom_labels), "family": inp.family},
               **verdict.to_dict()}
    summary = [
        ("value", format_rational(verdict.value)),
        ("certificate", " ".join(inp.family[i] for i in verdict.certificate)),
        ("certificate max", f"{verdict.certificate_max} of {len(verdict.certificate)}"),
        ("brute force", f"{format_rational(verdict.brute_value)} at N={verdict.brute_bound}"),
        ("agrees", verdict.agrees),
    ]
    frame = build_frame(
        ({"atom": label, "weight": w} for label, w in zip(inp.algebra.atom_labels, verdict.witness)),
        ["atom", "weight"],
    )
    return payload, summary, frame


def run_mix(data: Dict[str, Any], config: RunConfig) -> Report:
    inp = schema.parse_mix(data)
    table = mixing_table(inp.a, inp.b, inp.N)
    payload = {
        "a": inp.a.to_json(),
        "b": inp.b.to_json(),
        "rows": [[n, v.numerator, v.denominator] for n, v in enumerate(table)],
    }
    frame = build_frame(
        ({"n": n, "value": v, "num": v.numerator, "den": v.denominator} for n, v in enumerate(table)),
        ["n", "value", "num", "den"],
    )
    return payload, [("a", inp.a), ("b", inp.b)], frame


def run_center(data: Dict[str, Any], config: RunConfig) -> Report:
    inp = schema.parse_center(data)
    report = centering_cover_report(inp.algebra, inp.measure, inp.depth, N=inp.N or config.witness_cap)
    payload = {
        "depth": report.depth,
        "complete": report.complete,
        "max_witness": report.max_witness,
        "rows": [[row.atom, str(row.cylinder), row.witness] for row in report.rows],
    }
    summary = [("depth", report.depth), ("complete", report.complete), ("max witness", report.max_witness)]
    frame = build_frame(
        ({"atom": row.atom, "cylinder": row.cylinder, "witness": row.witness} for row in report.rows),
        ["atom", "cylinder", "witness"],
    )
    return payload, summary, frame


def run_swap(data: Dict[str, Any], config: RunConfig) -> Report:
    inp = schema.parse_swap(data, shift_limit=config.shift_piece_limit)
    outcome = swap_automorphism(inp.phiA, inp.phiB, inp.m)
    if isinstance(outcome, SymmetryReport):
        frame = build_frame(
            ({"A": v.first, "B": v.second, "side": v.side} for v in outcome.violations),
            ["A", "B", "side"],
        )
        summary = [("symmetric", False), ("chunk pairs checked", outcome.pairs_checked),
                   ("violations", len(outcome.violations))]
        return {"symmetric": False, "report": outcome.to_dict()}, summary, frame

    frame = build_frame(
        ({"from": outcome.atoms[s], "to": outcome.atoms[t]} for s, t in outcome.mapping.items()),
        ["from", "to"],
    )
    summary = [("symmetric", True), ("subalgebra atoms", len(outcome.keys)),
               ("identity", outcome.is_identity())]
    return {"symmetric": True, "automorphism": outcome.to_dict()}, summary, frame


def run_name(data: Dict[str, Any], config: RunConfig) -> Report:
    inp = schema.parse_name(data, shift_limit=config.shift_piece_limit, bit_cap=config.point_bit_cap)
    oracle = name_at_point(inp.hom, inp.point)
    rows = []
    for label, query in zip(inp.labels, inp.queries):
        image = inp.hom.evaluate(query)
        rows.append({"query": label, "accepted": oracle(query), "image": image})
    payload = {
        "point": inp.point.to_dict(),
        "answers": [{"query": r["query"], "accepted": r["accepted"], "image": r["image"].to_json()}
                    for r in rows],
    }
    return payload, [("point", inp.point)], build_frame(rows, ["query", "accepted", "image"])


def run_converge(data: Dict[str, Any], config: RunConfig) -> Report:
    inp = schema.parse_converge(data, shift_limit=config.shift_piece_limit)
    verdict = nontriviality_verdict(inp.sequence, inp.s, inp.N)
    rows = []
    for element in canonical_family(inp.sequence, inp.s):
        for n, d in enumerate(pointwise_report(inp.sequence, element, inp.N)):
            rows.append({"n": n, "element": element, "num": d.numerator, "den": d.denominator})
    summary = [
        ("pointwise", verdict.pointwise),
        ("uniform", verdict.uniform),
        ("nontrivial", verdict.nontrivial),
    ]
    return verdict.to_dict(), summary, build_frame(rows, ["n", "element", "num", "den"])


COMMANDS: Dict[str, Callable[[Dict[str, Any], RunConfig], Report]] = {
    "kelley": run_kelley,
    "mix": run_mix,
    "center": run_center,
    "swap": run_swap,
    "name": run_name,
    "converge": run_converge,
}


def run_density(args: argparse.Namespace, config: RunConfig) -> Report:
    if args.debug_stream == "ones":
        stream = BitStream.constant(1)
    elif args.debug_stream == "alternating":
        stream = BitStream.alternating()
    else:
        stream = BitStream.seeded(config.seed)
    n_bits = args.bits if args.bits is not None else config.density_bits
    report = density_demo(stream, n_bits)
    payload = {
        "source": report.source,
        "rows": [[k, ones, d.numerator, d.denominator] for k, ones, d in report.rows],
        "final": _rational(report.final),
    }
    summary = [("source", report.source), ("final", format_rational(report.final)),
               ("sigma", f"{report.sigma():.4f}")]
    frame = build_frame(
        ({"k": k, "ones": ones, "density": d} for k, ones, d in report.rows),
        ["k", "ones", "density"],
    )
    return payload, summary, frame


# ============================================================================
# ARGUMENTS AND CONFIGURATION
# ============================================================================

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    source = common.add_mutually_exclusive_group()
    source.add_argument("--in", dest="input_path", metavar="PATH",
                        help="JSON input file ('-' for standard input).")
    source.add_argument("--json", dest="inline_json", metavar="TEXT", help="Inline JSON input.")
    common.add_argument("--format", choices=OUTPUT_FORMATS, default=None,
                        help="Report format (default from the run configuration: table).")
    common.add_argument("--seed", type=int, default=None, help="Seed for sampled points.")
    common.add_argument("--cap", type=int, default=None,
                        help="Main cap of the command: multiset size for kelley, witness n for center.")
    common.add_argument("--config", metavar="YAML", help="RunConfig YAML file.")
    common.add_argument("--preset", choices=sorted(PRESET_CONFIGS), default="default",
                        help="Preset run configuration (default: default).")
    common.add_argument("--out", metavar="PATH", help="Also write the report to this file.")
    common.add_argument("-v", "--verbose", action="count", default=0,
                        help="Log to standard error (-v info, -vv debug).")

    parser = argparse.ArgumentParser(
        prog="boolmeas",
        description="Exact measures, names and Kelley intersection numbers on Boolean algebras.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("kelley", parents=[common], help="Kelley value by LP and brute force.")
    sub.add_parser("mix", parents=[common], help="Mixing table of the doubling map.")
    sub.add_parser("center", parents=[common], help="Centering witness table.")
    sub.add_parser("swap", parents=[common], help="Chunk symmetry and the swap automorphism.")
    sub.add_parser("name", parents=[common], help="Evaluate a name at a sample point.")
    sub.add_parser("converge", parents=[common], help="Pointwise vs uniform convergence verdict.")
    density = sub.add_parser("density", parents=[common], help="Running density of ones in a sampled point.")
    density.add_argument("--bits", type=int, default=None, help="Number of digits.")
    density.add_argument("--debug-stream", choices=("ones", "alternating"), default=None,
                         help="Replace the seeded stream by a fixed pattern.")
    return parser


def resolve_config(args: argparse.Namespace) -> RunConfig:
    """preset -> --config YAML -> explicit flags."""
    config = get_preset_config(args.preset)
    if args.config:
        overrides = RunConfig.from_yaml(args.config).to_dict()
        config = RunConfig.from_dict({**config.to_dict(), **overrides})
    config.update(seed=args.seed, output_format=args.format)
    if args.cap is not None:
        if args.command == "kelley":
            if args.cap > MAX_MULTISET:
                raise CapExceededError("multiset size", MAX_MULTISET, args.cap)
            config.update(multiset_cap=args.cap)
        elif args.command == "center":
            config.update(witness_cap=args.cap)
    return config


def read_input(args: argparse.Namespace) -> Dict[str, Any]:
    if args.inline_json is not None:
        return schema.load_document(args.inline_json)
    if args.input_path is None:
        raise ValidationError(f"{args.command} needs --in PATH or --json TEXT", pointer="/")
    if args.input_path == "-":
        return schema.load_document(sys.stdin.read())
    try:
        with open(args.input_path, "r", encoding="utf-8") as f:
            return schema.load_document(f.read())
    except OSError as exc:
        raise ValidationError(f"cannot read input: {exc.strerror}", pointer=args.input_path)


def render(command: str, report: Report, output_format: str) -> str:
    payload, summary, frame = report
    if output_format == "json":
        return schema.dump_document(schema.envelope(command, payload)) + "\n"
    if output_format == "csv":
        return render_frame(frame, "csv")
    lines = [f"{key}: {value}" for key, value in summary]
    return "\n".join(lines) + ("\n\n" if lines else "") + render_frame(frame, "table")


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    if args.verbose:
        logging.basicConfig(
            level=logging.DEBUG if args.verbose > 1 else logging.INFO,
            format="%(levelname)s %(name)s: %(message)s",
            stream=sys.stderr,
        )

    try:
        config = resolve_config(args)
        logger.info("running %s with seed %d, format %s", args.command, config.seed, config.output_format)
        if args.command == "density":
            report = run_density(args, config)
        else:
            report = COMMANDS[args.command](read_input(args), config)
        text = render(args.command, report, config.output_format)
    except CapExceededError as exc:
        print(f"boolmeas: cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    except ValueError as exc:
        # ValidationError and RunConfig's plain ValueErrors
        print(f"boolmeas: invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except OSError as exc:
        print(f"boolmeas: {exc}", file=sys.stderr)
        return EXIT_INVALID

    sys.stdout.write(text)
    if args.out:
        try:
            path = save_report(text, args.out)
        except OSError as exc:
            print(f"boolmeas: cannot write report: {exc}", file=sys.stderr)
            return EXIT_INVALID
        logger.info("report written to %s", path)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
