"""Command-line interface: run, verify, weights, superpotential, matfact.

Exit codes: 0 on success, 1 when a verification fails, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Dict, List, Optional

from . import cases
from .blowdown import TransitionIdeal, run_case
from .ferrari import (
    Superpotential,
    field_ring,
    perturbation_from_superpotential,
    solve_weights,
    superpotential_from_geometric,
    integrate_pterm,
    parse_pterm,
    xy_swap,
)
from .matfact import FAMILIES, family_report
from .wire import ParseError, format_polynomial, parse_polynomial

CONFIG_KEYS = {"case", "k", "max-degree", "format", "weight-pick"}


class UsageError(Exception):
    pass


def read_config(path: str) -> Dict[str, str]:
    """key=value lines; blank lines and '#' comments are ignored."""
    out: Dict[str, str] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise UsageError(f"{path}:{lineno}: expected key=value")
            key, value = (s.strip() for s in line.split("=", 1))
            if key not in CONFIG_KEYS:
                raise UsageError(f"{path}:{lineno}: unknown key {key!r}")
            out[key] = value
    return out


def apply_config(args: argparse.Namespace) -> None:
    if not getattr(args, "config", None):
        return
    for key, value in read_config(args.config).items():
        attr = key.replace("-", "_")
        if key == "weight-pick":
            if not args.weight_pick:
                args.weight_pick = [v.strip() for v in value.split(";") if v.strip()]
        elif getattr(args, attr, None) is None:
            setattr(args, attr, int(value) if key in ("k", "max-degree") else value)


def parse_weight_pick(items: Optional[List[str]]):
    """Returns (params, vector): 'd=3' style parameters or a full 6-vector."""
    params: Dict[str, int] = {}
    vector = None
    for item in items or []:
        if "=" in item:
            key, value = item.split("=", 1)
            key = key.strip()
            if key not in ("d", "e"):
                raise UsageError(f"unknown weight parameter {key!r}")
            params[key] = int(value)
        else:
            vector = tuple(int(x) for x in item.split(","))
    return params, vector


def _chart_json(charts) -> Dict[str, Dict[str, str]]:
    return {c: {v: str(x) for v, x in sol.items()} for c, sol in charts.items()}


def run_report(args) -> Dict[str, object]:
    name = cases.canonical_name(args.case)
    params, vector = parse_weight_pick(args.weight_pick)
    case = cases.make_case(name, args.k, params)
    md = args.max_degree if args.max_degree is not None else cases.default_max_degree(name, args.k)
    result = run_case(case, md, weight_pick=vector)
    if name == "A_k":
        result = cases.simplify_ak(result, TransitionIdeal(case), args.k)
    status = cases.golden(name, args.k).status
    if not result.complete_charts:
        status = "partial"
    return {
        "case": case.name,
        "weights": list(result.weights),
        "max_degree": md,
        "ghfs": [
            {"name": f"y{i}", "degree": g.degree, "beta_chart": format_polynomial(g.beta), "gamma_chart": format_polynomial(g.gamma)}
            for i, g in enumerate(result.ghfs, 1)
        ],
        "relations": [format_polynomial(r) for r in result.relations],
        "charts": _chart_json(result.charts),
        "status": status,
    }


def render_run(rep: Dict[str, object]) -> str:
    lines = [f"case: {rep['case']}", f"weights: {tuple(rep['weights'])}", f"max degree: {rep['max_degree']}", "ghfs:"]
    for g in rep["ghfs"]:
        lines.append(f"  {g['name']} (degree {g['degree']})")
        lines.append(f"    beta:  {g['beta_chart']}")
        lines.append(f"    gamma: {g['gamma_chart']}")
    lines.append(f"relations ({len(rep['relations'])}):")
    lines += [f"  {r}" for r in rep["relations"]]
    for chart, sol in rep["charts"].items():
        lines.append(f"{chart} chart:")
        lines += [f"  {v} = {x}" for v, x in sol.items()]
    lines.append(f"status: {rep['status']}")
    return "\n".join(lines)


def cmd_run(args) -> int:
    rep = run_report(args)
    print(json.dumps(rep, indent=2) if args.format == "json" else render_run(rep))
    return 0


def cmd_verify(args) -> int:
    params, _ = parse_weight_pick(args.weight_pick)
    report = cases.verify_case(args.case, args.k, args.max_degree, params)
    if args.format == "json":
        print(json.dumps({
            "case": report.case,
            "pass": report.ok,
            "checks": [{"name": c.name, "pass": c.ok, "detail": c.detail} for c in report.checks],
        }, indent=2))
    else:
        for c in report.checks:
            extra = f" ({c.detail})" if c.detail else ""
            print(f"{'PASS' if c.ok else 'FAIL'}  {c.name}{extra}")
        print(f"{report.case}: {'pass' if report.ok else 'FAIL'}")
    return 0 if report.ok else 1


def cmd_weights(args) -> int:
    name = cases.canonical_name(args.case)
    case = cases.make_case(name, args.k)
    basis = solve_weights(case)
    out: Dict[str, object] = {"case": case.name, "basis": [list(b) for b in basis]}
    if name in cases.HAT_DEFAULTS:
        params = dict(cases.HAT_DEFAULTS[name])
        params.update(parse_weight_pick(args.weight_pick)[0])
        out["pick"] = list(cases.hat_weights(name, params["d"], params.get("e")))
        out["params"] = params
    if args.format == "json":
        print(json.dumps(out, indent=2))
    else:
        for b in basis:
            print(tuple(b))
        if "pick" in out:
            ps = ", ".join(f"{k}={v}" for k, v in out["params"].items())
            print(f"pick ({ps}): {tuple(out['pick'])}")
    return 0


def cmd_superpotential(args) -> int:
    if args.pterm:
        pterm = parse_pterm(args.expr)
        W = superpotential_from_geometric(integrate_pterm(pterm), args.M)
    else:
        W = Superpotential(parse_polynomial(args.expr, field_ring(args.M)), args.M)
        pterm = perturbation_from_superpotential(W)
    out = {"W": format_polynomial(W.W), "pterm": format_polynomial(pterm)}
    if args.M == 2:
        out["swap"] = format_polynomial(xy_swap(pterm))
    if args.format == "json":
        print(json.dumps(out, indent=2))
    else:
        for k, v in out.items():
            print(f"{k}: {v}")
    return 0


def cmd_matfact(args) -> int:
    rep = family_report(args.family, args.n, args.m)
    ok = all(rep.values())
    if args.format == "json":
        print(json.dumps({"family": args.family, "n": args.n, "m": args.m, "pass": ok, "checks": rep}, indent=2))
    else:
        for k, v in rep.items():
            print(f"{'PASS' if v else 'FAIL'}  {k}")
        print("pass" if ok else "FAIL")
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="adecas", description="Blow-down search and matrix factorization checks.")
    sub = ap.add_subparsers(dest="command", required=True)

    def case_flags(p):
        p.add_argument("--case", required=False, help="registry name (A_k, D_k, E6, E7, E8, Ohat, Ahat, Dhat, Ehat)")
        p.add_argument("--k", type=int, help="family index for A_k and D_k")
        p.add_argument("--max-degree", type=int, dest="max_degree")
        p.add_argument("--weight-pick", action="append", dest="weight_pick", metavar="d=INT",
                       help="hat-case weight parameter (d=..., e=...) or a full comma-separated vector")
        p.add_argument("--format", choices=("text", "json"))
        p.add_argument("--config", help="file of key=value lines mirroring the flags")

    p = sub.add_parser("run", help="search ghfs, relations and chart inversions")
    case_flags(p)
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("verify", help="compare a case with its golden data")
    case_flags(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("weights", help="weight lattice of a case")
    case_flags(p)
    p.set_defaults(func=cmd_weights)

    p = sub.add_parser("superpotential", help="convert between W(x, y) and the perturbation")
    p.add_argument("expr")
    p.add_argument("--pterm", action="store_true", help="read expr as a perturbation in g, w1 (b = 1/g)")
    p.add_argument("--M", type=int, default=2)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_superpotential)

    p = sub.add_parser("matfact", help="matrix factorization checks")
    p.add_argument("family", choices=FAMILIES)
    p.add_argument("--n", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_matfact)
    return ap


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        apply_config(args)
        if hasattr(args, "case") and args.command in ("run", "verify", "weights"):
            if args.case is None:
                raise UsageError("--case is required")
            if args.format is None:
                args.format = "text"
        return args.func(args)
    except (UsageError, ParseError, cases.UnknownCase, cases.MissingParameter, ValueError, OSError) as exc:
        msg = exc.args[0] if isinstance(exc, cases.UnknownCase) else exc
        if isinstance(exc, cases.UnknownCase):
            msg = f"unknown case {msg!r}"
        print(f"adecas: error: {msg}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
