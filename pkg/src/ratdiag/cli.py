"""Command-line interface: end-to-end solve, series oracle, critical points.

Exit codes: 0 for success (including warnings), 2 when the minimality
algorithm reports a FAIL status or an asymptotic hypothesis fails, 1 for
parse/configuration errors.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass
from fractions import Fraction

from .asymptotics import AsymptoticsFailure, expansion, format_asymptotics
from .minimal import (
    MinimalityResult,
    approx_crit_heuristic,
    comb_extended_base,
    min_crits_comb,
    min_crits_general,
)
from .oracle import diagonal
from .poly import Direction, PolyError, infer_roster, parse_poly
from .solver import SolveOptions, solve_system, solution_in_torus


class CliError(Exception):
    """Configuration problem surfaced to the user with exit code 1."""


@dataclass
class RunConfig:
    direction: Direction
    mode: str = "general"  # comb | general | approx-crit
    seed: int = 0
    tol: float = 1e-10
    max_refine_bits: int = 4096
    start_system: str = "total-degree"
    format: str = "text"
    digits: int = 2

    def solve_options(self) -> SolveOptions:
        return SolveOptions(
            seed=self.seed,
            tol=self.tol,
            max_refine_bits=self.max_refine_bits,
            start_system=self.start_system,
        )


class _Parser(argparse.ArgumentParser):
    """argparse exits 2 on bad flags; the documented contract is exit 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        raise CliError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="ratdiag", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, with_num=True):
        if with_num:
            p.add_argument("--num", default="1", help="numerator polynomial (default 1)")
        p.add_argument("--den", required=True, help="denominator polynomial")
        p.add_argument(
            "--direction",
            default=None,
            help="comma-separated positive integers, one per variable (default all ones)",
        )
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--tol", type=float, default=1e-10)
        p.add_argument("--max-refine-bits", type=int, default=4096)
        p.add_argument(
            "--start-system",
            choices=["total-degree", "polyhedral"],
            default="total-degree",
        )
        p.add_argument("--format", choices=["text", "json"], default="text")
        p.add_argument("--digits", type=int, default=2)

    ps = sub.add_parser("solve", help="minimal critical points and asymptotics")
    common(ps)
    ps.add_argument("--comb", action="store_true", help="shortcut for --mode comb")
    ps.add_argument(
        "--mode", choices=["comb", "general", "approx-crit"], default="general"
    )

    po = sub.add_parser("oracle", help="exact diagonal coefficients")
    common(po)
    po.add_argument("--terms", type=int, default=8, help="number of diagonal terms")

    pc = sub.add_parser("critical", help="certified critical points vs solution bound")
    common(pc, with_num=False)
    return parser


def _parse_direction(text: str | None, n_vars: int) -> Direction:
    if text is None:
        return Direction((1,) * n_vars)
    try:
        entries = tuple(int(part) for part in text.split(","))
    except ValueError as exc:
        raise CliError(f"bad --direction {text!r}: {exc}") from None
    if any(e <= 0 for e in entries):
        raise CliError("--direction entries must be positive integers")
    if len(entries) != n_vars:
        raise CliError(
            f"--direction has {len(entries)} entries for {n_vars} variables"
        )
    return Direction(entries)


def _parse_input(args, with_num=True):
    try:
        roster = infer_roster(args.den)
        den = parse_poly(args.den, roster)
        num = parse_poly(getattr(args, "num", "1"), roster) if with_num else None
    except PolyError as exc:
        raise CliError(str(exc)) from None
    if den.constant_term() == 0:
        raise CliError("denominator vanishes at the origin")
    direction = _parse_direction(args.direction, len(roster))
    return roster, num, den, direction


def _config(args, direction) -> RunConfig:
    mode = getattr(args, "mode", "general")
    if getattr(args, "comb", False):
        mode = "comb"
    if args.max_refine_bits <= 0:
        raise CliError("--max-refine-bits must be positive")
    if args.tol <= 0:
        raise CliError("--tol must be positive")
    if args.digits <= 0:
        raise CliError("--digits must be positive")
    return RunConfig(
        direction=direction,
        mode=mode,
        seed=args.seed,
        tol=args.tol,
        max_refine_bits=args.max_refine_bits,
        start_system=args.start_system,
        format=args.format,
        digits=args.digits,
    )


# ---- result document -----------------------------------------------------


def _json_complex(z: complex) -> dict:
    z = complex(z)
    return {"re": z.real, "im": z.imag}


def _json_point(sol) -> list[dict]:
    return [_json_complex(v) for v in sol.approx]


def _json_fraction(f: Fraction) -> dict:
    return {"numerator": f.numerator, "denominator": f.denominator}


def _completeness(result: MinimalityResult) -> list[dict]:
    out = []
    for name, rep in result.reports.items():
        kind = "mixed_volume" if rep.mixed_volume is not None else "bezout"
        out.append(
            {
                "system": name,
                "solutions_found": len(rep.solutions),
                "bound": rep.bound,
                "bound_kind": kind,
                "complete": rep.complete,
            }
        )
    return out


def result_document(num, den, config: RunConfig, result: MinimalityResult,
                    exp=None, asym_error: str | None = None,
                    timings: dict | None = None) -> dict:
    doc = {
        "input": {
            "numerator": num.render(),
            "denominator": den.render(),
            "direction": [int(v) for v in config.direction],
            "mode": config.mode,
            "seed": config.seed,
        },
        "status": result.status,
        "heuristic": result.heuristic,
        "critical_points": [
            {
                "point": _json_point(v.point),
                "verdict": v.verdict,
                "certified": v.point.certified,
                "witness_t": list(v.witness_t) if v.witness_t else None,
            }
            for v in result.diagnostics
        ],
        "minimal_points": [_json_point(p) for p in result.minimal_points],
        "asymptotics": None,
        "completeness": _completeness(result),
        "warnings": list(result.warnings),
        "timings": timings or {},
    }
    if exp is not None:
        doc["asymptotics"] = {
            "terms": [
                {
                    "point": [_json_complex(v) for v in t.point],
                    "growth_base": _json_complex(t.growth_base),
                    "power": _json_fraction(t.power),
                    "constant": _json_complex(t.constant),
                }
                for t in exp.terms
            ],
            "formatted": format_asymptotics(exp, config.digits),
        }
        doc["warnings"] = sorted(set(doc["warnings"]) | set(exp.warnings))
    if asym_error is not None:
        doc["asymptotics"] = {"error": asym_error}
    return doc


def _print_document(doc: dict, fmt: str, out) -> None:
    if fmt == "json":
        json.dump(doc, out, indent=2)
        out.write("\n")
        return
    print(f"status: {doc['status']}", file=out)
    if doc["heuristic"]:
        print("note: minimality verdicts are heuristic (approx-crit mode)", file=out)
    print("critical points:", file=out)
    for entry in doc["critical_points"]:
        coords = ", ".join(
            f"{c['re']}{'+' if c['im'] >= 0 else '-'}{abs(c['im'])}im"
            for c in entry["point"]
        )
        line = f"  ({coords})  [{entry['verdict']}]"
        if entry["witness_t"]:
            lo, hi = entry["witness_t"]
            line += f"  witness t in [{lo}, {hi}]"
        print(line, file=out)
    print(f"minimal points: {len(doc['minimal_points'])}", file=out)
    if doc["asymptotics"] and "formatted" in doc["asymptotics"]:
        print(f"asymptotics: {doc['asymptotics']['formatted']}", file=out)
    elif doc["asymptotics"] and "error" in doc["asymptotics"]:
        print(f"asymptotics error: {doc['asymptotics']['error']}", file=out)
    for entry in doc["completeness"]:
        print(
            "  system {system}: {solutions_found} solutions vs {bound_kind} "
            "bound {bound} (complete={complete})".format(**entry),
            file=out,
        )
    for w in doc["warnings"]:
        print(f"warning: {w}", file=out)
    return


# ---- subcommands ----------------------------------------------------------


def cmd_solve(args, out=None) -> int:
    out = out if out is not None else sys.stdout
    roster, num, den, direction = _parse_input(args)
    config = _config(args, direction)
    opts = config.solve_options()
    runner = {
        "comb": min_crits_comb,
        "general": min_crits_general,
        "approx-crit": approx_crit_heuristic,
    }[config.mode]
    t0 = time.perf_counter()
    result = runner(den, direction, opts)
    t_min = time.perf_counter() - t0
    exp = None
    asym_error = None
    t1 = time.perf_counter()
    if not result.failed and result.minimal_points:
        try:
            exp = expansion(num, den, direction, result)
        except AsymptoticsFailure as exc:
            asym_error = exc.reason
    timings = {
        "minimality_s": round(t_min, 6),
        "asymptotics_s": round(time.perf_counter() - t1, 6),
    }
    doc = result_document(num, den, config, result, exp, asym_error, timings)
    _print_document(doc, config.format, out)
    if result.failed or asym_error is not None:
        return 2
    return 0


def cmd_oracle(args, out=None) -> int:
    out = out if out is not None else sys.stdout
    roster, num, den, direction = _parse_input(args)
    if args.terms <= 0:
        raise CliError("--terms must be positive")
    weight = sum(int(v) for v in direction)
    seq = diagonal(num, den, direction, (args.terms - 1) * weight)
    if getattr(args, "format", "text") == "json":
        doc = {
            "input": {
                "numerator": num.render(),
                "denominator": den.render(),
                "direction": [int(v) for v in direction],
            },
            "diagonal": [
                {"numerator": c.numerator, "denominator": c.denominator}
                for c in seq
            ],
            "ratios": [
                float(b / a) if a != 0 else None
                for a, b in zip(seq, seq[1:])
            ],
        }
        json.dump(doc, out, indent=2)
        out.write("\n")
        return 0
    print(" ".join(str(c) for c in seq), file=out)
    print("n f(n)/f(n-1)", file=out)
    for n in range(1, len(seq)):
        ratio = "undefined" if seq[n - 1] == 0 else float(seq[n] / seq[n - 1])
        print(f"{n} {ratio}", file=out)
    return 0


def cmd_critical(args, out=None) -> int:
    out = out if out is not None else sys.stdout
    roster, _, den, direction = _parse_input(args, with_num=False)
    config = _config(args, direction)
    opts = config.solve_options()
    opts.want_mixed_volume = True
    sysq = comb_extended_base(den, direction)
    report = solve_system(sysq, opts)
    d = len(roster)
    kind = "mixed_volume" if report.mixed_volume is not None else "bezout"
    if config.format == "json":
        doc = {
            "input": {
                "denominator": den.render(),
                "direction": [int(v) for v in direction],
            },
            "critical_points": [
                {
                    "point": [_json_complex(v) for v in s.approx[:d]],
                    "in_torus": solution_in_torus(s),
                }
                for s in report.solutions
            ],
            "solutions_found": len(report.solutions),
            "bound": report.bound,
            "bound_kind": kind,
            "complete": report.complete,
            "mixed_volume_error": report.mixed_volume_error,
        }
        json.dump(doc, out, indent=2)
        out.write("\n")
    else:
        for s in report.solutions:
            coords = ", ".join(
                f"{complex(v).real}{'+' if complex(v).imag >= 0 else '-'}"
                f"{abs(complex(v).imag)}im"
                for v in s.approx[:d]
            )
            print(f"({coords})", file=out)
        print(
            f"{len(report.solutions)} solutions vs {kind} bound {report.bound} "
            f"(complete={report.complete})",
            file=out,
        )
        if report.mixed_volume_error:
            print(f"warning: mixed volume failed: {report.mixed_volume_error}", file=out)
    return 0


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        handler = {
            "solve": cmd_solve,
            "oracle": cmd_oracle,
            "critical": cmd_critical,
        }[args.command]
        return handler(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except PolyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
