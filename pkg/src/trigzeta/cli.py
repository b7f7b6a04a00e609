"""Command-line front end.

Exit status: 0 on success, 1 on a contract or condition failure, 2 on a usage
error (argparse's own convention).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from . import conditions, extremal, zeta
from .trigpoly import InputError, TrigPoly, format_scalar, poly_from_json, poly_to_json


class Failure(Exception):
    """Contract, domain or condition failure: exit status 1."""


@dataclass(frozen=True)
class RunConfig:
    command: str
    exact: bool = False
    fmt: str = "json"
    digits: int = 15

    def num(self, v):
        """Render a scalar for JSON output."""
        if v is None or isinstance(v, (bool, str)):
            return v
        if isinstance(v, Fraction):
            if self.exact:
                return str(v)
            v = float(v)
        return float(f"{float(v):.{self.digits}g}")


def _load_poly(path: str) -> TrigPoly:
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
        return poly_from_json(json.loads(text))
    except (OSError, json.JSONDecodeError, InputError) as exc:
        raise Failure(f"cannot read polynomial from {path}: {exc}") from exc


def _exact_coeffs(poly: TrigPoly) -> list:
    return poly_to_json(poly)["coefficients"]


def _cert_json(cfg: RunConfig, cert) -> dict:
    return {
        "verdict": cert.verdict,
        "method": cert.method,
        "margin": cfg.num(cert.margin),
        "witness": None if cert.theta is None else {
            "theta": cfg.num(cert.theta), "x": cfg.num(cert.x), "value": cfg.num(cert.value)},
    }


# --- subcommands ----------------------------------------------------------------

def cmd_check(cfg: RunConfig, args) -> tuple[dict, int]:
    poly = _load_poly(args.poly)
    rep = conditions.check_conditions(poly, args.mode)
    out = {
        "coefficients": _exact_coeffs(poly),
        "degree": poly.degree,
        "mode": args.mode or ("exact" if poly.is_exact else "numeric"),
        "condI": rep.condI,
        "condII": rep.condII,
        "condIII": rep.condIII,
        "a0_positive": rep.a0_positive,
        "nonneg": _cert_json(cfg, rep.nonneg),
        "ratio": cfg.num(rep.ratio),
        "exponents": None if rep.exponents is None else [cfg.num(e) for e in rep.exponents],
        "slackII": cfg.num(rep.slackII),
        "exponent_budget": cfg.num(conditions.exponent_budget(rep)) if rep.condI else None,
        "zero_free_region": rep.zero_free_region,
        "admissible": rep.admissible,
    }
    return out, 0 if rep.admissible else 1


def cmd_optimize(cfg: RunConfig, args) -> tuple[dict, int]:
    try:
        res = extremal.maximize_a1(args.degree, grid0=args.grid0, tol=args.tol,
                                   max_rounds=args.max_rounds, enforce_iii=args.enforce_iii)
    except (extremal.NonConvergenceError, extremal.InfeasibleError) as exc:
        raise Failure(str(exc)) from exc
    if args.emit_trace:
        extremal.write_trace(res, args.emit_trace)
    chk = extremal.verify_extremal(res.poly)
    out = {
        "degree": res.N,
        "effective_degree": res.effective_degree,
        "coefficients": _exact_coeffs(res.poly),
        "objective": cfg.num(res.objective),
        "ratio": cfg.num(res.ratio),
        "r": cfg.num(res.r),
        "enforce_iii": res.enforce_iii,
        "certificate": _cert_json(cfg, res.certificate),
        "iterations": res.iterations,
        "upper_bound": cfg.num(res.upper_bound),
        "presnap": [cfg.num(float(v)) for v in res.presnap],
        "presnap_distance": cfg.num(res.presnap_distance),
        "saturationII": cfg.num(res.saturationII),
        "g_at_minus1": cfg.num(res.g_at_minus1),
        "dg_at_minus1": cfg.num(res.dg_at_minus1),
        "violations": chk.violations,
        "trace": [{"round": r.index, "grid_size": r.grid_size, "objective": cfg.num(r.objective),
                   "min_value": cfg.num(r.min_value), "cut": cfg.num(r.cut)} for r in res.trace],
    }
    return out, 0


def cmd_lemma(cfg: RunConfig, args) -> tuple[dict, int]:
    res = extremal.lemma_maximize(args.degree)
    out = {
        "degree": res.N,
        "first_index": 2,
        "coefficients": [cfg.num(a) for a in res.coefficients],
        "maximum": cfg.num(res.maximum),
        "support": list(res.support),
        "unique": res.unique,
        "constraint_value": cfg.num(res.constraint_value),
    }
    return out, 0


def _factors_json(cfg: RunConfig, factors) -> list:
    return [{"n": f.n, "exponent": cfg.num(f.exponent), "value": cfg.num(f.value),
             "radius": cfg.num(f.radius)} for f in factors]


def cmd_bound(cfg: RunConfig, args) -> tuple[dict, int]:
    poly = _load_poly(args.poly)
    b = zeta.trig_inverse_bound(poly, args.sigma, args.t)
    out = {"sigma": cfg.num(args.sigma), "t": cfg.num(args.t), "bound": cfg.num(b.bound),
           "radius": cfg.num(b.radius), "factors": _factors_json(cfg, b.factors)}
    return out, 0


def _superior(v):
    return "indeterminate" if v is None else v


def _report_json(cfg: RunConfig, rep: zeta.BoundReport) -> dict:
    return {
        "sigma": cfg.num(rep.sigma),
        "t": cfg.num(rep.t),
        "trivial_inv": cfg.num(rep.trivial_inv),
        "trivial_radius": cfg.num(rep.trivial_radius),
        "trig_inv": cfg.num(rep.trig_inv),
        "trig_radius": cfg.num(rep.trig_radius),
        "superior": _superior(rep.superior),
        "factors": _factors_json(cfg, rep.factors),
        "limit_coefficient": cfg.num(rep.limit_coefficient),
        "classical_threshold": cfg.num(rep.classical_threshold),
        "classical_factor": cfg.num(rep.classical_factor),
        "literature_1_it": cfg.num(rep.literature_1_it),
    }


def cmd_compare(cfg: RunConfig, args) -> tuple[dict, int]:
    poly = _load_poly(args.poly)
    return _report_json(cfg, zeta.compare(poly, args.sigma, args.t)), 0


def _parse_rule(text: str):
    if text in ("inv_log", "loglog_over_log"):
        return text
    if text.startswith("fixed:"):
        try:
            return float(text.split(":", 1)[1])
        except ValueError:
            pass
    raise argparse.ArgumentTypeError("delta rule is inv_log, loglog_over_log or fixed:<delta>")


def scan_csv(cfg: RunConfig, rows, literature: bool = False) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    ns = [f.n for f in rows[0].factors] if rows else []
    header = ["t", "sigma", "trivial_inv", "trig_inv", "superior"] + [f"factor_{n}" for n in ns]
    if literature:
        header.append("lit_1_it")
    w.writerow(header)
    for r in rows:
        sup = "indeterminate" if r.superior is None else str(r.superior).lower()
        line = [format_scalar(r.t, cfg.digits), format_scalar(r.sigma, cfg.digits),
                format_scalar(r.trivial_inv, cfg.digits), format_scalar(r.trig_inv, cfg.digits), sup]
        line += [format_scalar(f.value, cfg.digits) for f in r.factors]
        if literature:
            line.append("" if r.literature_1_it is None else format_scalar(r.literature_1_it, cfg.digits))
        w.writerow(line)
    return buf.getvalue()


def cmd_scan(cfg: RunConfig, args):
    poly = _load_poly(args.poly)
    ts = zeta.log_t_grid(args.t_min, args.t_max, args.points)
    rows = zeta.scan_curve(poly, ts, args.delta_rule, workers=args.workers)
    if cfg.fmt == "csv":
        return scan_csv(cfg, rows, args.literature), 0
    out = {"delta_rule": str(args.delta_rule), "rows": [_report_json(cfg, r) for r in rows]}
    return out, 0


# --- parser and driver ----------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="trigzeta", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--exact", action="store_true", help="print rationals as p/q")
    common.add_argument("--format", dest="fmt", choices=("json", "csv", "text"), default=None)
    common.add_argument("--output", "-o", help="write to this file instead of stdout")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", parents=[common], help="conditions I-III and non-negativity")
    p.add_argument("poly", help="polynomial JSON file ('-' for stdin)")
    p.add_argument("--mode", choices=("exact", "numeric"), default=None)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("optimize", parents=[common], help="maximise a1 by cutting planes")
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--enforce-iii", action="store_true")
    p.add_argument("--grid0", type=int, default=extremal.DEFAULT_GRID0)
    p.add_argument("--tol", type=float, default=extremal.DEFAULT_TOL)
    p.add_argument("--max-rounds", type=int, default=extremal.DEFAULT_MAX_ROUNDS)
    p.add_argument("--emit-trace", metavar="CSV")
    p.set_defaults(func=cmd_optimize)

    p = sub.add_parser("lemma", parents=[common], help="max sum a_n s.t. sum a_n (n^2-1) = 1")
    p.add_argument("--degree", type=int, required=True)
    p.set_defaults(func=cmd_lemma)

    for name, func, text in (("bound", cmd_bound, "cosine-polynomial bound on 1/|zeta|"),
                             ("compare", cmd_compare, "trivial vs cosine-polynomial bound")):
        p = sub.add_parser(name, parents=[common], help=text)
        p.add_argument("--poly", required=True)
        p.add_argument("--sigma", type=float, required=True)
        p.add_argument("--t", type=float, required=True)
        p.set_defaults(func=func)

    p = sub.add_parser("scan", parents=[common], help="compare bounds along sigma = 1 + delta(t)")
    p.add_argument("--poly", required=True)
    p.add_argument("--t-min", type=float, required=True)
    p.add_argument("--t-max", type=float, required=True)
    p.add_argument("--points", type=int, required=True)
    p.add_argument("--delta-rule", type=_parse_rule, default="inv_log")
    p.add_argument("--workers", type=int, default=None)
    p.add_argument("--literature", action="store_true",
                   help="add the literature bound 1.731 log t / log log t as a column")
    p.set_defaults(func=cmd_scan)
    return ap


def _text(obj, indent: int = 0) -> str:
    pad = "  " * indent
    lines = []
    for k, v in obj.items():
        if isinstance(v, dict):
            lines.append(f"{pad}{k}:")
            lines.append(_text(v, indent + 1))
        elif isinstance(v, list) and v and isinstance(v[0], dict):
            lines.append(f"{pad}{k}:")
            for item in v:
                lines.append(pad + "  - " + ", ".join(f"{a}={b}" for a, b in item.items()))
        else:
            lines.append(f"{pad}{k}: {v}")
    return "\n".join(lines)


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    fmt = args.fmt or ("csv" if args.command == "scan" else "json")
    if fmt == "csv" and args.command != "scan":
        print("trigzeta: csv output is only available for scan", file=stderr)
        return 2
    cfg = RunConfig(args.command, exact=args.exact, fmt=fmt)
    try:
        out, code = args.func(cfg, args)
    except (Failure, InputError, ValueError, ArithmeticError) as exc:
        print(f"trigzeta {args.command}: {exc}", file=stderr)
        return 1
    if isinstance(out, str):
        text = out
    elif fmt == "text":
        text = _text(out) + "\n"
    else:
        text = json.dumps(out, indent=2) + "\n"
    if args.output:
        Path(args.output).write_text(text)
    else:
        stdout.write(text)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
