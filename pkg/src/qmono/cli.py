"""``qmono`` command-line entry point.

Exit codes: 0 success, 2 parse error, 3 invalid state, 4 I/O error,
5 failed acceptance check in a campaign.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from pathlib import Path

from .campaigns import (
    CAMPAIGNS,
    COMMANDS,
    FIG1_COLUMNS,
    CampaignConfig,
    analyze_state,
    run_campaign,
    run_fig1,
)
from .linalg import StateError
from .states import StateFormatError, load_state

EXIT_OK, EXIT_PARSE, EXIT_STATE, EXIT_IO, EXIT_CHECK = 0, 2, 3, 4, 5


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def fmt(x) -> str:
    """Nine significant digits; -0 prints as 0."""
    return format(float(x) + 0.0, ".9g")


def _clean(obj):
    # round floats through fmt so JSON and CSV agree digit for digit
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, float):
        return None if math.isnan(obj) else float(fmt(obj))
    if isinstance(obj, dict):
        return {k: _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if hasattr(obj, "item"):
        return _clean(obj.item())
    return obj


def to_json(obj) -> str:
    return json.dumps(_clean(obj), indent=2) + "\n"


def to_csv(rows: list[dict], columns) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for row in rows:
        w.writerow([fmt(v) if isinstance(v, float) else v for v in (row[c] for c in columns)])
    return buf.getvalue()


def _epsilons(text: str) -> tuple[float, ...]:
    try:
        vals = tuple(float(t) for t in text.split(",") if t.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid epsilon list {text!r}") from None
    if not vals or any(not 0.0 <= v <= 1.0 for v in vals):
        raise argparse.ArgumentTypeError("epsilons must be a nonempty list of values in [0, 1]")
    return vals


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="qmono",
        description="Discord, entanglement and monogamy checks for few-qubit states.",
    )
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--seed", type=int, default=0, help="master seed for campaigns")
    p.add_argument("--samples", type=int, default=0, help="campaign size (0: command default)")
    p.add_argument("--grid", type=int, default=101, help="p-axis points for fig1")
    p.add_argument("--epsilons", type=_epsilons, default=None, help="comma-separated epsilons for fig1")
    p.add_argument("--tol", type=float, default=None, help="override the campaign tolerance")
    p.add_argument("--out", default="", help="output path (default: stdout)")
    p.add_argument("--format", choices=("csv", "json"), default=None)
    p.add_argument("--state", default=None, help="state JSON file for analyze")
    return p


def _config(args) -> CampaignConfig:
    fmt_default = "csv" if args.command == "fig1" else "json"
    kwargs = dict(
        command=args.command,
        samples=args.samples,
        seed=args.seed,
        grid_points=args.grid,
        tolerance=args.tol,
        output_path=args.out,
        format=args.format or fmt_default,
    )
    if args.epsilons is not None:
        kwargs["epsilons"] = args.epsilons
    try:
        return CampaignConfig(**kwargs)
    except ValueError as exc:
        raise CliError(str(exc), EXIT_PARSE) from None


def _analyze(args, config: CampaignConfig) -> tuple[str, int]:
    if not args.state:
        raise CliError("analyze needs --state PATH", EXIT_PARSE)
    try:
        state = load_state(args.state)
    except OSError as exc:
        raise CliError(f"cannot read {args.state}: {exc}", EXIT_IO) from None
    except StateFormatError as exc:
        raise CliError(str(exc), EXIT_PARSE) from None
    except StateError as exc:
        raise CliError(f"invalid state: {exc}", EXIT_STATE) from None
    result = analyze_state(state, state_id=Path(args.state).stem)
    if config.format == "csv":
        flat = result.get("report") or {k: v for k, v in result.items() if not isinstance(v, (dict, list))}
        return to_csv([flat], list(flat)), EXIT_OK
    return to_json(result), EXIT_OK


def _run(args) -> tuple[str, int]:
    config = _config(args)
    if config.command == "analyze":
        return _analyze(args, config)
    if config.command == "fig1":
        rows = run_fig1(config)
        if config.format == "csv":
            return to_csv(rows, FIG1_COLUMNS), EXIT_OK
        return to_json({"config": config.to_dict(), "rows": rows}), EXIT_OK
    assert config.command in CAMPAIGNS
    result = run_campaign(config)
    for w in result.summary["warnings"]:
        print(f"qmono: warning: {w}", file=sys.stderr)
    if config.format == "csv":
        cols = list(result.rows[0])
        text = to_csv(result.rows, cols)
    else:
        text = to_json(result.summary)
    return text, EXIT_OK if result.passed else EXIT_CHECK


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        text, code = _run(args)
        if args.out:
            try:
                Path(args.out).write_text(text)
            except OSError as exc:
                raise CliError(f"cannot write {args.out}: {exc}", EXIT_IO) from None
        else:
            sys.stdout.write(text)
    except CliError as exc:
        print(f"qmono: error: {exc}", file=sys.stderr)
        return exc.code
    if code == EXIT_CHECK:
        print(f"qmono: {args.command} failed its acceptance check", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
