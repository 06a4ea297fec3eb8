"""Batch-oriented command line: compute, check, decompose, validate.

Each input is a config file in the JSON interchange format, or a directory
of them (every *.json inside, processed independently, output buffered per
file).  Exit codes: 0 all verdicts pass, 1 a verdict failed or an internal
inconsistency surfaced, 2 input error, 3 some decomposition pairs rejected;
a batch exits with the worst per-file code.

The json format is loss-free and byte-stable: keys are sorted, indentation
is fixed, timings are integer microseconds, and any integer beyond signed
64-bit range is a decimal string.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from pathlib import Path

from .engine import (
    NotPolynomial,
    check_duality,
    check_nonnegativity,
    compute,
    decompose_coefficients,
    is_polynomial,
    local_contribution,
)
from .exact_poly import StringyRational, encode_json_int
from .render import (
    polynomial_latex,
    polynomial_text,
    rational_latex,
    rational_text,
    series_latex,
    series_text,
)
from .resolution import load_config, validate
from .validation import ConfigFormatError, ConfigValidationError

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INPUT = 2
EXIT_PARTIAL = 3

_PROP_34_NOTE = ("implied Hodge dimensions assume the resolution is an isomorphism "
                 "over the smooth locus; the config format cannot express that hypothesis")


class _InputError(Exception):
    """Anything wrong with the input file; rendered to the user, exit 2."""


def _triples(poly) -> list:
    return [[i, j, encode_json_int(c)] for (i, j), c in poly.sorted_items()]


def _rational_json(x: StringyRational) -> dict:
    return {"num": _triples(x.numerator), "den": list(x.denominator.factors)}


def _series_json(series, truncated: bool) -> dict:
    return {
        "horizon": series.horizon,
        "truncated": truncated,
        "coefficients": _triples(series),
    }


def _render_rational(x: StringyRational, fmt: str) -> str:
    return rational_latex(x) if fmt == "latex" else rational_text(x)


def _render_series(series, continues: bool, fmt: str) -> str:
    return series_latex(series, continues) if fmt == "latex" else series_text(series, continues)


def _load_and_validate(path: Path, mode: str):
    try:
        cfg = load_config(path)
    except ConfigFormatError as exc:
        raise _InputError(str(exc)) from None
    except OSError as exc:
        raise _InputError(str(exc)) from None
    report = validate(cfg, mode)
    if not report.accepted:
        lines = [f.describe() for f in report.findings]
        raise _InputError("config rejected:\n  " + "\n  ".join(lines))
    return cfg, report


def _cmd_compute(path: Path, args, out: list[str]) -> tuple[int, dict]:
    mode = "strict" if args.strict else "lenient"
    cfg, report = _load_and_validate(path, mode)
    horizon = args.horizon if args.horizon is not None else 2 * cfg.dimension
    result = compute(cfg, horizon)
    polynomial = result.e_open.is_polynomial
    truncated = not polynomial or any(
        i + j > horizon for (i, j) in result.e_open.as_polynomial().support()
    )

    payload: dict = {
        "dimension": cfg.dimension,
        "agree": result.agree,
        "e_st": _rational_json(result.e_open),
        "polynomial": polynomial,
        "series": _series_json(result.series, truncated),
        "warnings": [f.describe() for f in report.warnings],
    }
    suffix = " (polynomial)" if polynomial else ""
    out.append(f"E_st = {_render_rational(result.e_open, args.format)}{suffix}")
    out.append(f"series = {_render_series(result.series, truncated, args.format)}")
    for f in report.warnings:
        out.append(f.describe())

    code = EXIT_OK
    if not result.agree:
        out.append("internal error: the open- and closed-strata formulas disagree")
        code = EXIT_FAILED

    if args.local:
        if cfg.singular_locus is None:
            raise _InputError("--local needs the config's singular_locus")
        local = local_contribution(cfg)
        payload["local_contribution"] = _rational_json(local)
        payload["singular_locus"] = _triples(cfg.singular_locus.poly)
        out.append(f"local contribution = {_render_rational(local, args.format)}")
        locus = cfg.singular_locus.poly
        out.append(f"singular locus = "
                   f"{polynomial_latex(locus) if args.format == 'latex' else polynomial_text(locus)}")
    return code, payload


def _cmd_check(path: Path, args, out: list[str]) -> tuple[int, dict]:
    mode = "strict" if args.strict else "lenient"
    cfg, _ = _load_and_validate(path, mode)
    d = cfg.dimension
    wanted = [name for name, on in
              (("duality", args.duality), ("polynomial", args.polynomial), ("nonneg", args.nonneg))
              if on]
    if not wanted:
        wanted = ["duality", "polynomial", "nonneg"]

    horizon = args.horizon if args.horizon is not None else 2 * d
    if "nonneg" in wanted:
        horizon = max(horizon, d)
    result = compute(cfg, horizon)
    if not result.agree:
        out.append("internal error: the open- and closed-strata formulas disagree")
        return EXIT_FAILED, {"dimension": d, "agree": False}

    checks: dict = {}
    all_passed = True

    if "duality" in wanted:
        outcome = check_duality(result.e_open, d)
        checks["duality"] = {
            "passed": outcome.passed,
            "witness": list(outcome.witness) if outcome.witness else None,
        }
        if outcome.passed:
            out.append("duality: PASS")
        else:
            all_passed = False
            out.append(f"duality: FAIL at ({outcome.witness[0]},{outcome.witness[1]}) "
                       f"({outcome.detail})")

    if "polynomial" in wanted:
        verdict = is_polynomial(result.e_open, d)
        if isinstance(verdict, NotPolynomial):
            all_passed = False
            checks["polynomial"] = {
                "polynomial": False,
                "witness": list(verdict.witness),
                "reason": verdict.reason,
            }
            out.append(f"polynomial: NOT POLYNOMIAL at ({verdict.witness[0]},{verdict.witness[1]}) "
                       f"({verdict.reason})")
        else:
            checks["polynomial"] = {"polynomial": True, "value": _triples(verdict.value)}
            rendered = (polynomial_latex(verdict.value) if args.format == "latex"
                        else polynomial_text(verdict.value))
            out.append(f"polynomial: POLYNOMIAL = {rendered}")

    if "nonneg" in wanted:
        report = check_nonnegativity(result.series, d)
        checks["nonneg"] = {
            "passed": report.passed,
            "violations": [[i, j, encode_json_int(b)] for i, j, b in report.violations],
            "notes": [[i, j, encode_json_int(b)] for i, j, b in report.beyond_notes],
        }
        if report.passed:
            out.append(f"nonneg: PASS (i+j <= {d})")
        else:
            all_passed = False
            out.append(f"nonneg: FAIL ({len(report.violations)} violation(s))")
            for i, j, b in report.violations:
                out.append(f"violation: b_{{{i},{j}}} = {b}")
        for i, j, b in report.beyond_notes:
            out.append(f"note: b_{{{i},{j}}} = {b} beyond range")

    payload = {"dimension": d, "agree": True, "checks": checks, "passed": all_passed}
    return (EXIT_OK if all_passed else EXIT_FAILED), payload


def _parse_pairs(raw: str) -> list[tuple[int, int]]:
    pairs = []
    for chunk in raw.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        bits = chunk.split(",")
        if len(bits) != 2:
            raise _InputError(f"--pairs entries must look like 'i,j', got {chunk!r}")
        try:
            pairs.append((int(bits[0]), int(bits[1])))
        except ValueError:
            raise _InputError(f"--pairs entries must be integers, got {chunk!r}") from None
    if not pairs:
        raise _InputError("--pairs is empty")
    return pairs


def _cmd_decompose(path: Path, args, out: list[str]) -> tuple[int, dict]:
    cfg, _ = _load_and_validate(path, "strict")
    pairs = _parse_pairs(args.pairs)
    result = decompose_coefficients(cfg, pairs)

    code = EXIT_OK
    rows_json = []
    for row in result.rows:
        rows_json.append({
            "i": row.i, "j": row.j,
            "direct": encode_json_int(row.direct),
            "c_term": encode_json_int(row.c_term),
            "alternating_sum": encode_json_int(row.alternating_sum),
            "r_term": encode_json_int(row.r_term),
            "s_term": encode_json_int(row.s_term),
            "implied_hodge_dim": encode_json_int(row.implied_hodge_dim),
            "flagged": row.flagged,
        })
        line = (f"b_{{{row.i},{row.j}}} = {row.direct} | c = {row.c_term}, "
                f"alt = {row.alternating_sum}, R = {row.r_term}, S = {row.s_term}, "
                f"implied dim = {row.implied_hodge_dim}")
        if row.flagged:
            line += " [FLAGGED: negative implied dimension]"
        out.append(line)
        if row.direct != row.decomposed:
            out.append(f"internal error: decomposition of b_{{{row.i},{row.j}}} does not "
                       f"match the direct coefficient")
            code = EXIT_FAILED
    for pair, reason in result.rejected:
        out.append(f"rejected {tuple(pair)}: {reason}")
        if code == EXIT_OK:
            code = EXIT_PARTIAL
    out.append(f"note: {_PROP_34_NOTE}")
    payload = {
        "dimension": cfg.dimension,
        "rows": rows_json,
        "rejected": [{"pair": list(pair), "reason": reason} for pair, reason in result.rejected],
        "note": _PROP_34_NOTE,
    }
    return code, payload


def _cmd_validate(path: Path, args, out: list[str]) -> tuple[int, dict]:
    mode = "strict" if args.strict else "lenient"
    try:
        cfg = load_config(path)
    except (ConfigFormatError, OSError) as exc:
        raise _InputError(str(exc)) from None
    report = validate(cfg, mode)
    for f in report.findings:
        out.append(f.describe())
    out.append(f"{'accepted' if report.accepted else 'rejected'} ({mode})")
    payload = {
        "mode": mode,
        "accepted": report.accepted,
        "findings": [
            {"severity": f.severity, "code": f.code, "message": f.message, "location": f.location}
            for f in report.findings
        ],
    }
    return (EXIT_OK if report.accepted else EXIT_INPUT), payload


_COMMANDS = {
    "compute": _cmd_compute,
    "check": _cmd_check,
    "decompose": _cmd_decompose,
    "validate": _cmd_validate,
}


def _run_one(path: Path, args) -> tuple[int, str]:
    started = time.perf_counter_ns()
    out: list[str] = []
    try:
        code, payload = _COMMANDS[args.command](path, args, out)
    except _InputError as exc:
        code, payload = EXIT_INPUT, {"error": str(exc)}
        out = [f"error: {exc}"]
    except ConfigValidationError as exc:
        code, payload = EXIT_INPUT, {"error": str(exc)}
        out = [f"error: {exc}"]
    elapsed_us = (time.perf_counter_ns() - started) // 1000

    if args.format == "json":
        report = {
            "command": args.command,
            "path": str(path),
            "sha256": _sha256(path),
            "timing_us": elapsed_us,
            "exit_code": code,
        }
        report.update(payload)
        text = json.dumps(report, sort_keys=True, indent=2) + "\n"
    else:
        text = "".join(line + "\n" for line in out)
    return code, text


def _sha256(path: Path) -> str:
    try:
        return hashlib.sha256(path.read_bytes()).hexdigest()
    except OSError:
        return ""


def _collect_inputs(raw: str) -> list[Path]:
    path = Path(raw)
    if path.is_dir():
        files = sorted(path.glob("*.json"))
        if not files:
            raise _InputError(f"no *.json config files in {path}")
        return files
    return [path]


def _build_parser() -> argparse.ArgumentParser:
    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument("path", help="config file, or a directory of *.json configs")
    shared.add_argument("--format", choices=("text", "json", "latex"), default="text")
    shared.add_argument("--horizon", type=int, default=None, metavar="N",
                        help="series horizon in total degree (default 2*dimension)")
    shared.add_argument("--strict", action="store_true",
                        help="gate on strict validation instead of lenient")

    parser = argparse.ArgumentParser(
        prog="stringy",
        description="Exact stringy E-function computations from log-resolution data.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_compute = sub.add_parser("compute", parents=[shared],
                               help="E_st in canonical form plus its series expansion")
    p_compute.add_argument("--local", action="store_true",
                           help="also report the singular locus' additive share")

    p_check = sub.add_parser("check", parents=[shared],
                             help="duality / polynomiality / nonnegativity verdicts")
    p_check.add_argument("--duality", action="store_true")
    p_check.add_argument("--polynomial", action="store_true")
    p_check.add_argument("--nonneg", action="store_true")

    p_decompose = sub.add_parser("decompose", parents=[shared],
                                 help="coefficient decomposition rows (strict inputs only)")
    p_decompose.add_argument("--pairs", required=True, metavar="I,J;I,J",
                             help="semicolon-separated exponent pairs, e.g. '1,1;2,1'")

    sub.add_parser("validate", parents=[shared], help="run validation and print findings")
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    if args.horizon is not None and args.horizon < 0:
        print("error: --horizon must be nonnegative", file=sys.stderr)
        return EXIT_INPUT
    try:
        inputs = _collect_inputs(args.path)
    except _InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT

    worst = EXIT_OK
    batch = len(inputs) > 1
    for path in inputs:
        code, text = _run_one(path, args)
        if batch and args.format != "json":
            sys.stdout.write(f"== {path} ==\n")
        sys.stdout.write(text)
        worst = max(worst, code)
    return worst


if __name__ == "__main__":
    sys.exit(main())
