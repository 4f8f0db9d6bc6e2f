"""Command-line interface.

Examples::

    classicality classicality fock 1 --method both
    classicality anticlassicality sqv --nbar 2 --variant A1
    classicality figure fig1 --out fig1.csv
    classicality golden-report --format csv

Exit status is 0 on success, 1 for invalid input and 2 when a numeric
tolerance, a truncation bound or a golden value is not met.
"""

from __future__ import annotations

import argparse
import io
import json
import sys
from typing import Sequence

from .figures import FIGURES, write_csv
from .fock import (
    Coherent,
    CoherentPhase,
    Fock,
    Gaussian,
    SqueezedVacuum,
    Thermal,
    TruncationError,
    build_state,
    state_from_dict,
    state_to_dict,
)
from .gaussian import GaussianParams
from .golden import golden_rows
from .measures import VARIANTS, anticlassicality, classicality_closed, classicality_numeric
from .optimize import NonFiniteObjective, OptimConfig
from .results import MeasureResult

__all__ = ["main", "build_parser", "argv_from_record", "AGREE_TOL"]

EXIT_OK, EXIT_INVALID, EXIT_TOLERANCE = 0, 1, 2
# Closed and numeric classicality must agree to this under --method both.
AGREE_TOL = 1e-6

RECORD_COLUMNS = (
    "measure",
    "method",
    "value",
    "argmax_eta",
    "argmax_alpha_sq",
    "argmax_n",
    "achieved_tol",
    "dim",
    "tail_bound",
    "state",
)


class _ToleranceFailure(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INVALID, f"{self.prog}: error: {message}\n")


# ---------------------------------------------------------------- parser


def _output_flags(p, default_format):
    p.add_argument("--out", help="write to this file instead of stdout")
    p.add_argument("--format", choices=("csv", "json"), default=default_format)


def _numeric_flags(p):
    p.add_argument("--dim", type=int, help="Fock truncation (default: chosen from the tail bound)")
    p.add_argument("--grid", type=int, default=OptimConfig.grid_points_per_axis, help="grid points per search axis")
    p.add_argument("--tol", type=float, default=OptimConfig.refine_tol, help="relative refinement tolerance")
    _output_flags(p, "json")


def _add_states(sub, extra):
    p = sub.add_parser("fock", help="number state |n>")
    p.add_argument("n", type=int)
    extra(p)

    p = sub.add_parser("coherent", help="coherent state |alpha>")
    p.add_argument("alpha_re", type=float)
    p.add_argument("alpha_im", type=float, nargs="?", default=0.0)
    extra(p)

    p = sub.add_parser("thermal", help="thermal state")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--nbar", type=float)
    g.add_argument("--eta", type=float)
    extra(p)

    p = sub.add_parser("sqv", help="squeezed vacuum")
    p.add_argument("--nbar", type=float, required=True)
    extra(p)

    p = sub.add_parser("phase", help="coherent phase state")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--nbar", type=float)
    g.add_argument("--eps", type=float, nargs="+", metavar=("RE", "IM"))
    extra(p)

    p = sub.add_parser("gaussian", help="general single-mode Gaussian state")
    p.add_argument("--sq", type=float, required=True, help="position variance")
    p.add_argument("--sp", type=float, required=True, help="momentum variance")
    p.add_argument("--spq", type=float, required=True, help="covariance")
    p.add_argument("--dq", type=float, default=0.0)
    p.add_argument("--dp", type=float, default=0.0)
    extra(p)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="classicality", description="Classicality and anticlassicality of bosonic states.")
    cmds = parser.add_subparsers(dest="command", required=True)

    p = cmds.add_parser("classicality", help="maximum renormalized overlap with displaced thermal states")
    states = p.add_subparsers(dest="family", required=True)

    def classicality_flags(q):
        q.add_argument("--method", choices=("closed", "numeric", "both"), default="closed")
        _numeric_flags(q)

    _add_states(states, classicality_flags)

    p = cmds.add_parser("anticlassicality", help="maximum Fock-state occupation")
    states = p.add_subparsers(dest="family", required=True)

    def anticlassicality_flags(q):
        q.add_argument("--variant", choices=tuple(VARIANTS), default="A")
        _numeric_flags(q)

    _add_states(states, anticlassicality_flags)

    p = cmds.add_parser("figure", help="tabulate the data behind a figure")
    p.add_argument("name", choices=tuple(FIGURES))
    p.add_argument("--samples", type=int, help="samples per axis")
    p.add_argument("--eta-max", type=float, help="fig1 eta range upper end")
    p.add_argument("--alpha-sq-max", type=float, help="fig1 |alpha|^2 range upper end")
    p.add_argument("--nbar-max", type=float, help="fig2/fig3 mean photon number upper end")
    _output_flags(p, "csv")

    p = cmds.add_parser("golden-report", help="compare every reference value with its recomputation")
    _output_flags(p, "json")
    return parser


def _spec_from_args(args):
    fam = args.family
    if fam == "fock":
        return Fock(args.n)
    if fam == "coherent":
        return Coherent(complex(args.alpha_re, args.alpha_im))
    if fam == "thermal":
        return Thermal.from_nbar(args.nbar) if args.nbar is not None else Thermal(args.eta)
    if fam == "sqv":
        return SqueezedVacuum(args.nbar)
    if fam == "phase":
        if args.nbar is not None:
            return CoherentPhase.from_nbar(args.nbar)
        if len(args.eps) > 2:
            raise ValueError("--eps takes RE and optionally IM")
        return CoherentPhase(complex(*args.eps))
    if fam == "gaussian":
        return Gaussian(GaussianParams(args.sq, args.sp, args.spq, args.dq, args.dp))
    raise ValueError(f"unknown state family {fam!r}")


def argv_from_record(record: dict) -> list[str]:
    """Command line that regenerates ``record`` (a classicality or
    anticlassicality record as printed by this CLI)."""
    state, opts = record["state"], record["options"]
    fam = state["family"]
    if fam == "fock":
        argv = ["fock", str(state["n"])]
    elif fam == "coherent":
        argv = ["coherent", *map(repr, state["alpha"])]
    elif fam == "thermal":
        argv = ["thermal", "--eta", repr(state["eta"])]
    elif fam == "sqv":
        argv = ["sqv", "--nbar", repr(state["nbar"])]
    elif fam == "phase":
        argv = ["phase", "--eps", *map(repr, state["eps"])]
    elif fam == "gaussian":
        argv = ["gaussian"]
        for flag, key in (("--sq", "sigma_q"), ("--sp", "sigma_p"), ("--spq", "sigma_pq"), ("--dq", "d_q"), ("--dp", "d_p")):
            argv += [flag, repr(state[key])]
    else:
        raise ValueError(f"family {fam!r} has no command-line form")
    if "variant" in opts:
        argv = ["anticlassicality", *argv, "--variant", opts["variant"]]
    else:
        argv = ["classicality", *argv, "--method", opts["method"]]
    if opts["dim"] is not None:
        argv += ["--dim", str(opts["dim"])]
    return argv + ["--grid", str(opts["grid"]), "--tol", repr(opts["tol"])]


# -------------------------------------------------------------- commands


def _record(spec, measure: str, result: MeasureResult, options: dict) -> dict:
    rec = {
        "state": state_to_dict(spec),
        "measure": measure,
        "value": result.value,
        "argmax_eta": result.argmax_eta,
        "argmax_alpha_sq": result.argmax_alpha_sq,
        "argmax_n": result.argmax_n,
        "method": result.method.value,
        "achieved_tol": result.achieved_tol,
    }
    if "dim" in result.details:
        rec["dim"] = result.details["dim"]
        rec["tail_bound"] = result.details["tail_bound"]
    rec["options"] = options
    return rec


def _options(args, **extra) -> dict:
    return {**extra, "dim": args.dim, "grid": args.grid, "tol": args.tol}


def _numeric_classicality(spec, args):
    rho = build_state(spec, args.dim)
    config = OptimConfig(grid_points_per_axis=args.grid, refine_tol=args.tol)
    if isinstance(spec, CoherentPhase):
        return classicality_numeric(rho, config, search="eta", alpha=0)
    if isinstance(spec, (Gaussian, SqueezedVacuum)):
        # Gaussian states are matched by the reference at their own displacement.
        return classicality_numeric(rho, config, search="eta")
    return classicality_numeric(rho, config)


def cmd_classicality(args):
    spec = _spec_from_args(args)
    # Coherent phase states only have the eta-reduced closed form, so both
    # paths compute that quantity for them.
    measure = "C_eta" if isinstance(spec, CoherentPhase) else "classicality"
    opts = _options(args, method=args.method)
    out = {}
    if args.method in ("closed", "both"):
        out["closed_form"] = _record(spec, measure, classicality_closed(spec), opts)
    if args.method in ("numeric", "both"):
        out["numeric"] = _record(spec, measure, _numeric_classicality(spec, args), opts)
    if args.method != "both":
        return next(iter(out.values())), False
    diff = abs(out["closed_form"]["value"] - out["numeric"]["value"])
    out["abs_diff"] = diff
    return out, diff > AGREE_TOL


def cmd_anticlassicality(args):
    spec = _spec_from_args(args)
    include_vacuum, weighted = VARIANTS[args.variant]
    target = spec if args.dim is None else build_state(spec, args.dim)
    result = anticlassicality(target, include_vacuum, weighted)
    return _record(spec, args.variant, result, _options(args, variant=args.variant)), False


def cmd_figure(args):
    kwargs = {}
    if args.samples is not None:
        kwargs["samples"] = args.samples
    ranges = {"fig1": ("eta_max", "alpha_sq_max"), "fig2": ("nbar_max",), "fig3": ("nbar_max",)}[args.name]
    for key in ("eta_max", "alpha_sq_max", "nbar_max"):
        value = getattr(args, key)
        if value is None:
            continue
        if key not in ranges:
            raise ValueError(f"--{key.replace('_', '-')} does not apply to {args.name}")
        if not value > 0:
            raise ValueError(f"--{key.replace('_', '-')} must be positive")
        kwargs[key] = value
    if "eta_max" in kwargs and not kwargs["eta_max"] < 1:
        raise ValueError("--eta-max must be below 1")
    return FIGURES[args.name](**kwargs), False


def cmd_golden_report(args):
    rows = golden_rows()
    return rows, not all(r.passed for r in rows)


# ---------------------------------------------------------------- output


def _record_row(rec, abs_diff=None):
    row = [rec.get(c) for c in RECORD_COLUMNS[:-1]]
    row.append(json.dumps(rec["state"], separators=(",", ":")))
    return row if abs_diff is None else row + [abs_diff]


def _render(command, payload, fmt) -> str:
    if command == "figure":
        if fmt == "json":
            return json.dumps({"columns": payload.columns, "rows": payload.rows}) + "\n"
        buf = io.StringIO()
        write_csv(payload.columns, payload.rows, buf)
        return buf.getvalue()
    if command == "golden-report":
        if fmt == "json":
            data = {"passed": all(r.passed for r in payload), "rows": [r.to_dict() for r in payload]}
            return json.dumps(data, indent=2) + "\n"
        cols = ("name", "reference", "closed", "numeric", "closed_diff", "numeric_diff", "passed")
        buf = io.StringIO()
        write_csv(cols, [[getattr(r, c) for c in cols] for r in payload], buf)
        return buf.getvalue()
    if fmt == "json":
        return json.dumps(payload, indent=2) + "\n"
    buf = io.StringIO()
    if "abs_diff" in payload:
        rows = [_record_row(payload[k], payload["abs_diff"]) for k in ("closed_form", "numeric")]
        write_csv(RECORD_COLUMNS + ("abs_diff",), rows, buf)
    else:
        write_csv(RECORD_COLUMNS, [_record_row(payload)], buf)
    return buf.getvalue()


COMMANDS = {
    "classicality": cmd_classicality,
    "anticlassicality": cmd_anticlassicality,
    "figure": cmd_figure,
    "golden-report": cmd_golden_report,
}


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        payload, failed = COMMANDS[args.command](args)
        text = _render(args.command, payload, args.format)
    except (TruncationError, NonFiniteObjective) as exc:
        print(f"classicality: {exc}", file=sys.stderr)
        return EXIT_TOLERANCE
    except (ValueError, TypeError) as exc:
        print(f"classicality: invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID
    if args.out:
        try:
            with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(text)
        except OSError as exc:
            print(f"classicality: cannot write {args.out}: {exc}", file=sys.stderr)
            return EXIT_INVALID
    else:
        sys.stdout.write(text)
    return EXIT_TOLERANCE if failed else EXIT_OK
