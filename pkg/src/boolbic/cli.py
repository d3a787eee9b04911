"""Command-line front end: mine, stats, report, verify."""

from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import dataclass
from pathlib import Path

from . import report as rpt
from .boolcore import DEFAULT_MAX_TERMS
from .datasets import BUILTIN_NAMES, builtin
from .encode import EncodingSpec, Mode, build_cnf
from .errors import BoolbicError
from .matrixio import DEFAULT_ROUND_DECIMALS, Matrix, load_matrix
from .oracle import applicable_specs, random_matrix, verify_theorems
from .patterns import mine


@dataclass
class RunConfig:
    """Parsed invocation: input handling, mode parameters, output, caps."""

    input: str | None = None
    format: str = "csv"
    has_header: bool = True
    has_row_labels: bool = True
    transpose: bool = False
    mode: Mode | None = None
    delta: float | None = None
    round_decimals: int = DEFAULT_ROUND_DECIMALS
    min_rows: int = 0
    min_cols: int = 0
    out: str | None = None
    out_format: str = "table"
    max_terms: int = DEFAULT_MAX_TERMS
    max_seconds: float | None = None

    def load(self) -> Matrix:
        if self.input is None:
            raise BoolbicError("no input file given")
        m = load_matrix(
            self.input,
            format=self.format,
            has_header=self.has_header,
            has_row_labels=self.has_row_labels,
        )
        return m.transpose() if self.transpose else m

    def spec(self) -> EncodingSpec:
        if self.mode is None:
            raise BoolbicError("no mode given")
        return EncodingSpec(mode=self.mode, delta=self.delta)


def _add_io_args(p: argparse.ArgumentParser):
    p.add_argument("--input", required=True, help="delimited matrix file")
    p.add_argument("--format", choices=("csv", "tsv"), default="csv")
    p.add_argument(
        "--no-header", action="store_true", help="file has no header row"
    )
    p.add_argument(
        "--no-row-labels", action="store_true", help="file has no row-label column"
    )
    p.add_argument(
        "--transpose", action="store_true", help="swap rows and columns after load"
    )
    p.add_argument("--round-decimals", type=int, default=DEFAULT_ROUND_DECIMALS)


def _add_mode_args(p: argparse.ArgumentParser):
    p.add_argument(
        "--mode", required=True, choices=[m.value for m in Mode], help="encoding mode"
    )
    p.add_argument(
        "--delta",
        type=float,
        default=None,
        help="tolerance (required by delta, pruned and global modes)",
    )


def _add_cap_args(p: argparse.ArgumentParser):
    p.add_argument("--max-terms", type=int, default=DEFAULT_MAX_TERMS)
    p.add_argument("--max-seconds", type=float, default=None)


def _config(args: argparse.Namespace) -> RunConfig:
    cfg = RunConfig()
    cfg.input = getattr(args, "input", None)
    cfg.format = getattr(args, "format", "csv")
    cfg.has_header = not getattr(args, "no_header", False)
    cfg.has_row_labels = not getattr(args, "no_row_labels", False)
    cfg.transpose = getattr(args, "transpose", False)
    mode = getattr(args, "mode", None)
    cfg.mode = Mode(mode) if mode else None
    cfg.delta = getattr(args, "delta", None)
    cfg.round_decimals = getattr(args, "round_decimals", DEFAULT_ROUND_DECIMALS)
    cfg.min_rows = getattr(args, "min_rows", 0)
    cfg.min_cols = getattr(args, "min_cols", 0)
    cfg.out = getattr(args, "out", None)
    cfg.out_format = getattr(args, "out_format", "table")
    cfg.max_terms = getattr(args, "max_terms", DEFAULT_MAX_TERMS)
    cfg.max_seconds = getattr(args, "max_seconds", None)
    return cfg


def _write_out(text: str, out: str | None):
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")


def cmd_mine(args) -> int:
    cfg = _config(args)
    m = cfg.load()
    spec = cfg.spec()
    if args.dump_cnf:
        cnf, _ = build_cnf(m, spec, cfg.round_decimals)
        Path(args.dump_cnf).write_text(cnf.dump() + "\n", encoding="utf-8")
    records = mine(
        m,
        spec,
        min_rows=cfg.min_rows,
        min_cols=cfg.min_cols,
        round_decimals=cfg.round_decimals,
        max_terms=cfg.max_terms,
        max_seconds=cfg.max_seconds,
    )
    summary = rpt.summarize(records)
    if cfg.out_format == "csv":
        text = rpt.records_to_csv(records, m)
    elif cfg.out_format == "json":
        text = rpt.records_to_json(records, m, summary)
    else:
        text = rpt.records_to_table(records, m)
    _write_out(text, cfg.out)
    print(rpt.summary_line(summary, spec.delta), file=sys.stderr)
    return 0


def cmd_stats(args) -> int:
    cfg = _config(args)
    m = cfg.load()
    if cfg.out_format == "csv":
        text = rpt.stats_to_csv(m, args.bin_width, cfg.round_decimals)
    elif cfg.out_format == "json":
        text = rpt.stats_to_json(m, args.bin_width, cfg.round_decimals)
    else:
        text = rpt.stats_to_table(m, args.bin_width, cfg.round_decimals)
    _write_out(text, cfg.out)
    return 0


def cmd_report(args) -> int:
    cfg = _config(args)
    m = cfg.load()
    spec = cfg.spec()
    records = mine(
        m,
        spec,
        min_rows=cfg.min_rows,
        min_cols=cfg.min_cols,
        round_decimals=cfg.round_decimals,
        max_terms=cfg.max_terms,
        max_seconds=cfg.max_seconds,
    )
    written = rpt.write_report(
        m,
        records,
        args.out_dir,
        delta=spec.delta,
        bin_width=args.bin_width,
        top_k=args.top_k,
        figures=not args.no_figures,
        round_decimals=cfg.round_decimals,
    )
    for path in written:
        print(path)
    print(rpt.summary_line(rpt.summarize(records), spec.delta), file=sys.stderr)
    return 0


def cmd_verify(args) -> int:
    cfg = _config(args)
    reports = []
    for name in args.matrices:
        m = builtin(name)
        for spec in applicable_specs(m, cfg.round_decimals):
            reports.append(
                verify_theorems(
                    m,
                    spec,
                    round_decimals=cfg.round_decimals,
                    max_terms=cfg.max_terms,
                    max_seconds=cfg.max_seconds,
                    matrix_name=name,
                )
            )
    rng = random.Random(args.seed)
    for trial in range(args.random_trials):
        m = random_matrix(rng, max_rows=args.max_rows, max_cols=args.max_cols)
        for spec in applicable_specs(m, cfg.round_decimals):
            reports.append(
                verify_theorems(
                    m,
                    spec,
                    round_decimals=cfg.round_decimals,
                    max_terms=cfg.max_terms,
                    max_seconds=cfg.max_seconds,
                    matrix_name=f"random-{trial}",
                )
            )
    failures = [r for r in reports if not r.passed]
    for r in reports:
        status = "PASS" if r.passed else "FAIL"
        delta = "" if r.delta is None else f" delta={r.delta:g}"
        print(f"{status} {r.matrix_name} {r.mode}{delta} "
              f"(primes={r.n_primes}, oracle={r.n_oracle})")
    doc = {
        "runs": len(reports),
        "failures": len(failures),
        "reports": [r.to_dict() for r in reports],
    }
    if cfg.out:
        Path(cfg.out).write_text(json.dumps(doc, indent=2) + "\n", encoding="utf-8")
    print(f"verify: {len(reports) - len(failures)}/{len(reports)} passed",
          file=sys.stderr)
    return 0 if not failures else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="boolbic",
        description=(
            "Mine all inclusion-maximal constant and shifting patterns of a "
            "real-valued matrix through monotone Boolean reasoning."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("mine", help="mine patterns and print or save them")
    _add_io_args(p)
    _add_mode_args(p)
    p.add_argument("--min-rows", type=int, default=0)
    p.add_argument("--min-cols", type=int, default=0)
    p.add_argument("--out", default=None, help="output file (default stdout)")
    p.add_argument("--out-format", choices=("table", "csv", "json"), default="table")
    p.add_argument("--dump-cnf", default=None, help="also write the encoded CNF here")
    _add_cap_args(p)
    p.set_defaults(func=cmd_mine)

    p = sub.add_parser("stats", help="difference statistics and histogram")
    _add_io_args(p)
    p.add_argument("--bin-width", type=float, default=0.1)
    p.add_argument("--out", default=None)
    p.add_argument("--out-format", choices=("table", "csv", "json"), default="table")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser(
        "report", help="write the full report bundle (CSV, JSON, figures)"
    )
    _add_io_args(p)
    _add_mode_args(p)
    p.add_argument("--min-rows", type=int, default=0)
    p.add_argument("--min-cols", type=int, default=0)
    p.add_argument("--out-dir", required=True)
    p.add_argument("--top-k", type=int, default=4)
    p.add_argument("--bin-width", type=float, default=0.1)
    p.add_argument("--no-figures", action="store_true")
    _add_cap_args(p)
    p.set_defaults(func=cmd_report)

    p = sub.add_parser(
        "verify", help="run the correspondence checks on builtin and random matrices"
    )
    p.add_argument(
        "--matrices",
        nargs="*",
        default=list(BUILTIN_NAMES),
        choices=list(BUILTIN_NAMES),
        help="builtin matrices to verify",
    )
    p.add_argument("--random-trials", type=int, default=25)
    p.add_argument("--seed", type=int, default=7)
    p.add_argument("--max-rows", type=int, default=5)
    p.add_argument("--max-cols", type=int, default=5)
    p.add_argument("--round-decimals", type=int, default=DEFAULT_ROUND_DECIMALS)
    p.add_argument("--out", default=None, help="write the JSON report here")
    _add_cap_args(p)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BoolbicError as exc:
        print(f"boolbic: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
