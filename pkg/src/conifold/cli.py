"""Command line entry point: ``conifold {enumerate,analyze,verify-lemma}``."""

from __future__ import annotations

import argparse
import ast
import sys

from conifold.analysis import (
    EXIT_INPUT,
    RunManifest,
    cmd_analyze,
    cmd_enumerate,
    cmd_verify_lemma,
    render_analysis_md,
    render_enumerate_md,
    render_lemma_md,
    to_json_text,
)
from conifold.config import ConfigMatrix, parse_configs
from conifold.exact import DEFAULT_PRIME, PrimeField
from conifold.multiring import AmbientSpace


class InputError(ValueError):
    pass


def parse_ambient(text: str) -> AmbientSpace:
    try:
        factors = tuple(int(x) for x in text.replace(" ", "").strip("[]()").split(","))
    except ValueError as exc:
        raise InputError(f"malformed ambient {text!r}: expected comma-separated integers") from exc
    try:
        return AmbientSpace(factors)
    except ValueError as exc:
        raise InputError(f"malformed ambient {text!r}: {exc}") from exc


def parse_window(text: str) -> tuple[int, int]:
    try:
        lo, hi = (int(x) for x in text.split(","))
    except ValueError as exc:
        raise InputError(f"malformed window {text!r}: expected 'lo,hi'") from exc
    if lo > hi:
        raise InputError(f"empty window {lo},{hi}")
    return lo, hi


def parse_matrix(text: str) -> tuple[tuple[int, ...], ...]:
    try:
        data = ast.literal_eval(text)
        return tuple(tuple(int(x) for x in row) for row in data)
    except (ValueError, SyntaxError, TypeError) as exc:
        raise InputError(f"malformed degree matrix {text!r}") from exc


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--prime", type=int, default=DEFAULT_PRIME, help="field modulus (odd prime)")
    common.add_argument("--seed", type=int, default=0, help="master seed")
    common.add_argument("--out", help="write the report here instead of stdout")
    common.add_argument("--format", choices=("json", "md"), default="json")
    common.add_argument("--window", help="degree window 'lo,hi' for Hilbert profiles")

    parser = argparse.ArgumentParser(prog="conifold", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", parents=[common], help="list configurations on an ambient")
    p.add_argument("--ambient", required=True, help="factor dimensions, e.g. 2,2")

    p = sub.add_parser("analyze", parents=[common], help="certify a conifold transition")
    p.add_argument("--ambient", help="factor dimensions, used with --D")
    p.add_argument("--D", dest="degrees", help="degree matrix, e.g. '[[3,3]]'")
    p.add_argument("--config", help="file of 'ambient = [...]' / 'D = [[...]]' entries")
    p.add_argument("--attempts", type=int, default=5, help="section draws per curve")
    p.add_argument("--no-oracle", action="store_true", help="skip the restriction-rank cross-check")

    p = sub.add_parser("verify-lemma", parents=[common], help="random test of the generic kernel profile")
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--m", dest="m_max", type=int, default=4, help="largest number of target summands")
    p.add_argument("--degree-bound", type=int, default=6)
    p.add_argument(
        "--max-source",
        type=int,
        help="also cap every source degree (default: only the lemma's own hypotheses)",
    )
    return parser


def _manifest(args) -> RunManifest:
    try:
        PrimeField(args.prime)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    man = RunManifest(
        command=args.command,
        prime=args.prime,
        seed=args.seed,
        window=parse_window(args.window) if args.window else None,
    )
    if args.command == "analyze":
        if args.attempts < 1:
            raise InputError("--attempts must be at least 1")
        man.attempts = args.attempts
        man.oracle = not args.no_oracle
        if args.config:
            try:
                with open(args.config, encoding="utf-8") as fh:
                    man.configs = parse_configs(fh.read())
            except OSError as exc:
                raise InputError(f"cannot read {args.config}: {exc}") from exc
            except ValueError as exc:
                raise InputError(f"{args.config}: {exc}") from exc
        if args.degrees or args.ambient:
            if not (args.degrees and args.ambient):
                raise InputError("--ambient and --D go together")
            amb = parse_ambient(args.ambient)
            man.configs.append(ConfigMatrix(amb, parse_matrix(args.degrees)))
        if not man.configs:
            raise InputError("nothing to analyze: give --config or --ambient with --D")
    elif args.command == "verify-lemma":
        man.trials, man.m_max, man.degree_bound = args.trials, args.m_max, args.degree_bound
        man.max_source = args.max_source
    else:
        man.ambient = parse_ambient(args.ambient)
    return man


def run(argv=None) -> tuple[str, int, str | None]:
    """Parse ``argv`` and return ``(text, exit_code, out_path)`` without printing."""
    args = build_parser().parse_args(argv)
    try:
        man = _manifest(args)
        if args.command == "enumerate":
            try:
                data, code = cmd_enumerate(man.ambient)
            except ValueError as exc:
                raise InputError(str(exc)) from exc
            text = render_enumerate_md(data) if args.format == "md" else to_json_text(data)
        elif args.command == "analyze":
            data, code = cmd_analyze(man)
            text = render_analysis_md(data) if args.format == "md" else to_json_text(data)
        else:
            data, code = cmd_verify_lemma(man)
            if "error" in data:
                raise InputError(data["error"])
            text = render_lemma_md(data) if args.format == "md" else to_json_text(data)
    except InputError as exc:
        return f"error: {exc}\n", EXIT_INPUT, None
    return text, code, args.out


def main(argv=None) -> int:
    text, code, out = run(argv)
    if code == EXIT_INPUT and text.startswith("error:"):
        sys.stderr.write(text)
        return code
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
