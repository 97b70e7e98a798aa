"""Batch command-line front end.

Subcommands: constants, bounds, sandwich, sweep, thresholds, groundstate,
validate.  Output is a single JSON document by default, or CSV rows with
--format csv; numeric fields are serialized with 17 significant digits so
values round-trip losslessly.  Identical invocations with identical seeds
produce byte-identical output (pass --timing to include wall time, which
breaks that determinism).

Domain grammar: ball:R | interval:a,b | rn:L  (L = truncation half-width).
The environment variable FRASOB_THREADS caps sweep parallelism.

Exit codes: 0 success, 1 validation/check failure, 2 usage error.
"""
from __future__ import annotations

import argparse
import csv
import io
import math
import os
import sys
import time

import numpy as np

from . import __version__, bounds, constants, pde, varmin
from .constants import ConstantValue, Params
from .errors import DomainError, RegimeError
from .grids import Field, Grid
from .validate import run_validation

_CSV_COLUMNS = {
    "constants": ["which", "N", "s", "p", "q", "value", "kind", "error_estimate",
                  "provenance"],
    "bounds": ["N", "s", "p", "q", "domain", "lower", "upper", "lower_provenance",
               "upper_provenance"],
    "sandwich": ["N", "s", "p", "q", "domain", "lower", "numeric", "upper",
                 "rel_slack_lower", "rel_slack_upper", "pass", "note"],
    "sweep": ["N", "s", "p", "q", "domain", "lower", "numeric", "upper",
              "rel_slack_lower", "rel_slack_upper", "pass", "note"],
    "thresholds": ["N", "s", "q", "S", "c_star", "h_norm_threshold",
                   "lq_norm_threshold", "f3_coeff", "alpha", "lambda_lower"],
    "groundstate": ["s", "q", "I0", "residual_rel", "h_norm_sq", "h_threshold",
                    "lq_norm", "lq_threshold", "iterations", "converged"],
    "validate": ["check", "passed", "detail"],
}


def _fmt(x) -> str:
    if isinstance(x, float):
        return format(x, ".17g")
    return str(x)


def _dumps(obj, indent: int = 0) -> str:
    """JSON text with floats at 17 significant digits."""
    pad = "  " * indent
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = ",\n".join(
            f'{pad}  "{k}": {_dumps(v, indent + 1)}' for k, v in obj.items())
        return "{\n" + items + "\n" + pad + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        items = ",\n".join(f"{pad}  {_dumps(v, indent + 1)}" for v in obj)
        return "[\n" + items + "\n" + pad + "]"
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if obj is None:
        return "null"
    if isinstance(obj, float):
        if math.isinf(obj) or math.isnan(obj):
            return f'"{obj!r}"'
        return format(obj, ".17g")
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    s = str(obj).replace("\\", "\\\\").replace('"', '\\"')
    return f'"{s}"'


def _parse_domain(text: str, N: int) -> bounds.DomainSpec:
    kind, _, rest = text.partition(":")
    try:
        if kind == "ball":
            return bounds.DomainSpec.ball(float(rest), N)
        if kind == "interval":
            a, b = (float(v) for v in rest.split(","))
            return bounds.DomainSpec.interval(a, b)
        if kind == "rn":
            return bounds.DomainSpec.whole_space(float(rest) if rest else 200.0)
    except (ValueError, DomainError) as exc:
        raise argparse.ArgumentTypeError(f"bad domain {text!r}: {exc}") from exc
    raise argparse.ArgumentTypeError(
        f"bad domain {text!r}: expected ball:R | interval:a,b | rn:L")


def _parse_field(text: str, grid: Grid) -> Field:
    """Field grammar: const:c | bump:base,amp,width | well:base,depth,width."""
    kind, _, rest = text.partition(":")
    try:
        vals = [float(v) for v in rest.split(",")] if rest else []
        x = grid.x
        if kind == "const" and len(vals) == 1:
            return Field(grid, np.full(grid.points, vals[0]))
        if kind == "bump" and len(vals) == 3:
            base, amp, width = vals
            return Field(grid, base + amp * np.exp(-((x / width) ** 2)))
        if kind == "well" and len(vals) == 3:
            base, depth, width = vals
            return Field(grid, base - depth * np.exp(-((x / width) ** 2)))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad field {text!r}: {exc}") from exc
    raise argparse.ArgumentTypeError(
        f"bad field {text!r}: expected const:c | bump:base,amp,width | well:base,depth,width")


def _constant_payload(c: ConstantValue) -> dict:
    return {"value": c.value, "kind": c.kind.value, "provenance": c.provenance,
            "error_estimate": c.error_estimate}


_CONSTANT_DISPATCH = {
    "unit-ball-volume": lambda a: ConstantValue(
        constants.unit_ball_volume(a.N), constants.ConstantKind.CLOSED_FORM,
        "unit-ball-volume"),
    "classical-sobolev": lambda a: constants.classical_sobolev(a.N, a.p or 2.0),
    "isoperimetric": lambda a: constants.isoperimetric(a.N),
    "hardy-sobolev-a": lambda a: constants.hardy_sobolev_A(a.N, a.s),
    "frac-isoperimetric": lambda a: constants.frac_isoperimetric(a.N, a.s),
    "lieb": lambda a: constants.lieb_constant(a.N, a.s),
    "norm-bridge": lambda a: constants.norm_bridge(a.N, a.s),
    "hilbert-sobolev": lambda a: constants.frac_sobolev_hilbert(a.N, a.s),
    "mazya-lower": lambda a: constants.mazya_lower(a.N, a.s, a.p or 2.0),
    "lieb-loss-lower": lambda a: constants.lieb_loss_lower(a.q),
}


def _params_payload(p: Params) -> dict:
    return {"N": p.N, "s": p.s, "p": p.p, "q": p.q, "regime": p.regime().value}


def _domain_payload(d: bounds.DomainSpec) -> dict:
    out = {"kind": d.kind, "dim": d.dim}
    for name in ("radius", "a", "b", "measure", "inradius", "truncation"):
        v = getattr(d, name)
        if v is not None:
            out[name] = v
    return out


def _sandwich_payload(r: varmin.SandwichReport) -> dict:
    return {
        "lower": _constant_payload(r.lower),
        "numeric": _constant_payload(r.numeric) if r.numeric else None,
        "upper": _constant_payload(r.upper),
        "rel_slack_lower": r.rel_slack_lower,
        "rel_slack_upper": r.rel_slack_upper,
        "tol": r.tol,
        "pass": r.passed,
        "note": r.note,
    }


def _sandwich_row(reports, args) -> list[dict]:
    rows = []
    for rep in reports:
        if isinstance(rep, Exception):
            rows.append({"N": args.N, "domain": args.domain, "pass": False,
                         "note": f"error: {type(rep).__name__}: {rep}"})
            continue
        p = rep.params
        rows.append({
            "N": p.N, "s": p.s, "p": p.p, "q": p.q, "domain": args.domain,
            "lower": rep.lower.value,
            "numeric": rep.numeric.value if rep.numeric else None,
            "upper": rep.upper.value,
            "rel_slack_lower": rep.rel_slack_lower,
            "rel_slack_upper": rep.rel_slack_upper,
            "pass": rep.passed, "note": rep.note,
        })
    return rows


def _emit(args, record: dict, csv_rows: list[dict], columns: list[str]) -> None:
    if args.format == "csv":
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=columns, extrasaction="ignore",
                                lineterminator="\n")
        writer.writeheader()
        for row in csv_rows:
            writer.writerow({k: ("" if row.get(k) is None else _fmt(row.get(k)))
                             for k in columns})
        text = buf.getvalue()
    else:
        text = _dumps(record) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _warn_tm_constants(args) -> None:
    if getattr(args, "c1", 1.0) == 1.0 and getattr(args, "c2", 1.0) == 1.0:
        print("warning: Trudinger-Moser constants --c1/--c2 defaulted to 1.0; "
              "limiting-case lower bounds are normalized, not certified",
              file=sys.stderr)


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="fracsob",
        description="Fractional Sobolev embedding constants: exact values, "
                    "bounds, numeric estimates and PDE thresholds.",
        epilog="CSV columns per subcommand: "
               + "; ".join(f"{k}: {','.join(v)}" for k, v in _CSV_COLUMNS.items()))
    ap.add_argument("--version", action="version", version=f"fracsob {__version__}")
    sub = ap.add_subparsers(dest="cmd", required=True)

    def common(p, params=True, solver=False):
        p.add_argument("--format", choices=("json", "csv"), default="json")
        p.add_argument("--out", metavar="FILE", help="write output to FILE")
        p.add_argument("--timing", action="store_true",
                       help="include wall time (breaks byte-identical output)")
        if params:
            p.add_argument("--N", type=int, default=1)
            p.add_argument("--s", type=float, default=0.5)
            p.add_argument("--p", type=float, default=2.0)
            p.add_argument("--q", type=str, default="2")
        if solver:
            p.add_argument("--grid", type=int, default=4096,
                           help="grid points (power of two)")
            p.add_argument("--box", type=float, default=None,
                           help="grid half-width (default: domain-derived)")
            p.add_argument("--seed", type=int, default=0)
            p.add_argument("--max-iters", type=int, default=20000)
            p.add_argument("--tol", type=float, default=0.02,
                           help="sandwich acceptance tolerance")

    pc = sub.add_parser("constants", help="evaluate one exact constant")
    common(pc)
    pc.add_argument("--which", required=True, choices=sorted(_CONSTANT_DISPATCH))

    pb = sub.add_parser("bounds", help="lower/upper bounds at one point")
    common(pb)
    pb.add_argument("--domain", default="rn:200")
    pb.add_argument("--c1", type=float, default=1.0)
    pb.add_argument("--c2", type=float, default=1.0)

    ps = sub.add_parser("sandwich", help="bounds + numeric estimate + check")
    common(ps, solver=True)
    ps.add_argument("--domain", default="rn:200")
    ps.add_argument("--c1", type=float, default=1.0)
    ps.add_argument("--c2", type=float, default=1.0)

    pw = sub.add_parser("sweep", help="sandwich over comma-separated s/q lists")
    common(pw, solver=True)
    pw.add_argument("--domain", default="rn:200")
    pw.add_argument("--c1", type=float, default=1.0)
    pw.add_argument("--c2", type=float, default=1.0)

    pt = sub.add_parser("thresholds", help="PDE threshold constants from S")
    common(pt)
    pt.add_argument("--S", type=float, default=None,
                    help="embedding constant (default: certified lower bound)")
    pt.add_argument("--c2", type=float, default=1.0)

    pg = sub.add_parser("groundstate", help="constrained ground-state solve")
    common(pg, solver=True)
    pg.add_argument("--V", default="const:1", help="potential field")
    pg.add_argument("--Q", default="bump:1,2,1", help="weight field")

    sub.add_parser("validate", help="run the oracle cross-check suite").add_argument(
        "--format", choices=("json", "csv"), default="json")
    return ap


def run(argv: list[str] | None = None) -> int:
    ap = _build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    t0 = time.perf_counter()
    try:
        return _dispatch(args, argv if argv is not None else sys.argv[1:], t0)
    except (DomainError, RegimeError, argparse.ArgumentTypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        ap.print_usage(sys.stderr)
        return 2


def _record(args, argv, t0, params, domain, result, provenance) -> dict:
    return {
        "command": ["fracsob"] + list(argv),
        "params": params,
        "domain": domain,
        "result": result,
        "provenance": sorted(set(provenance)),
        "wall_time_s": (time.perf_counter() - t0) if args.timing else None,
    }


def _dispatch(args, argv, t0) -> int:
    if args.cmd == "validate":
        results = run_validation()
        ok = all(r.passed for r in results)
        npass = sum(r.passed for r in results)
        record = {
            "command": ["fracsob"] + list(argv),
            "checks": [{"check": r.name, "passed": r.passed, "detail": r.detail}
                       for r in results],
            "passed": npass,
            "failed": len(results) - npass,
        }
        class _A:  # minimal emit shim: validate has no --out/--timing
            format = args.format
            out = None
        _emit(_A, record, record["checks"], _CSV_COLUMNS["validate"])
        return 0 if ok else 1

    if args.cmd == "constants":
        q = float(args.q)
        c = _CONSTANT_DISPATCH[args.which](
            argparse.Namespace(N=args.N, s=args.s, p=args.p, q=q))
        record = _record(args, argv, t0,
                         {"N": args.N, "s": args.s, "p": args.p, "q": q},
                         None, _constant_payload(c), [c.provenance])
        _emit(args, record, [{"which": args.which, "N": args.N, "s": args.s,
                              "p": args.p, "q": q, "value": c.value,
                              "kind": c.kind.value,
                              "error_estimate": c.error_estimate,
                              "provenance": c.provenance}],
              _CSV_COLUMNS["constants"])
        return 0

    if args.cmd == "bounds":
        _warn_tm_constants(args)
        params = Params(args.N, args.s, args.p, float(args.q))
        domain = _parse_domain(args.domain, args.N)
        pair = bounds.bounds_for(params, domain, C1=args.c1, C2=args.c2)
        record = _record(args, argv, t0, _params_payload(params),
                         _domain_payload(domain),
                         {"lower": _constant_payload(pair.lower),
                          "upper": _constant_payload(pair.upper)},
                         [pair.lower.provenance, pair.upper.provenance])
        _emit(args, record,
              [{"N": params.N, "s": params.s, "p": params.p, "q": params.q,
                "domain": args.domain, "lower": pair.lower.value,
                "upper": pair.upper.value,
                "lower_provenance": pair.lower.provenance,
                "upper_provenance": pair.upper.provenance}],
              _CSV_COLUMNS["bounds"])
        return 0

    if args.cmd in ("sandwich", "sweep"):
        _warn_tm_constants(args)
        domain = _parse_domain(args.domain, args.N)
        box = args.box if args.box is not None else (
            domain.truncation if not domain.bounded else 8.0 * domain.inradius)
        grid = Grid(half_width=box, points=args.grid)
        cfg = varmin.SolverConfig(max_iters=args.max_iters, seed=args.seed)
        qs = [float(v) for v in str(args.q).split(",")]
        ss = [float(v) for v in str(args.s).split(",")]
        if args.cmd == "sandwich" and (len(qs) > 1 or len(ss) > 1):
            raise DomainError("sandwich takes a single (s, q); use sweep for lists")
        plist = [Params(args.N, s_, args.p, q_) for s_ in ss for q_ in qs]
        threads = max(1, int(os.environ.get("FRASOB_THREADS", "1")))
        reports = varmin.sweep(plist, domain, cfg, grid, tol=args.tol,
                               C1=args.c1, C2=args.c2, threads=threads)
        rows = _sandwich_row(reports, args)
        prov = []
        payloads = []
        for rep in reports:
            if isinstance(rep, Exception):
                payloads.append({"error": f"{type(rep).__name__}: {rep}"})
            else:
                payloads.append(dict(params=_params_payload(rep.params),
                                     **_sandwich_payload(rep)))
                prov += [rep.lower.provenance, rep.upper.provenance]
                if rep.numeric:
                    prov.append(rep.numeric.provenance)
        result = payloads[0] if args.cmd == "sandwich" else payloads
        pp = (_params_payload(plist[0]) if args.cmd == "sandwich"
              else {"N": args.N, "s": ss, "p": args.p, "q": qs})
        record = _record(args, argv, t0, pp, _domain_payload(domain), result, prov)
        _emit(args, record, rows, _CSV_COLUMNS[args.cmd])
        if args.cmd == "sandwich":
            rep = reports[0]
            if isinstance(rep, Exception):
                print(f"error: {rep}", file=sys.stderr)
                return 2
            return 0 if rep.passed else 1
        bad = any(isinstance(r, Exception) or not r.passed for r in reports)
        return 1 if bad else 0

    if args.cmd == "thresholds":
        q = float(args.q)
        params = Params(args.N, args.s, 2.0, q)
        regime = params.regime()
        S = args.S
        note = "caller-supplied S"
        if S is None:
            if regime is constants.Regime.HILBERT:
                S = bounds.hilbert_wholespace_bounds(params).lower.value
                note = "S = certified whole-space lower bound"
            elif regime is constants.Regime.LIMITING:
                _warn_tm_constants(args)
                S = bounds.limiting_wholespace_lower(q, args.c2).value
                note = "S = whole-space lower bound at supplied C2"
            else:
                raise RegimeError(f"no default S available in regime {regime.value}")
        c_star = pde.ps_level(args.s, q, S)
        hthr, lthr = pde.existence_thresholds(q, S)
        f3 = pde.growth_coefficient(q, S) if regime is constants.Regime.LIMITING else None
        alpha = lam_lo = None
        if regime is constants.Regime.HILBERT:
            alpha = pde.coupling_alpha(args.N, args.s, q, S)
            if 0.0 < alpha < 1.0:
                lam_lo = pde.coupling_lambda_interval(alpha)[0]
        rep = pde.ThresholdReport(c_star=c_star, h_norm_threshold=hthr,
                                  lq_norm_threshold=lthr, f3_coeff=f3,
                                  alpha=alpha, lambda_lower=lam_lo)
        result = {"S": S, "S_note": note, "c_star": rep.c_star,
                  "h_norm_threshold": rep.h_norm_threshold,
                  "lq_norm_threshold": rep.lq_norm_threshold,
                  "f3_coeff": rep.f3_coeff, "alpha": rep.alpha,
                  "lambda_lower": rep.lambda_lower}
        record = _record(args, argv, t0, _params_payload(params), None, result, [])
        _emit(args, record,
              [{"N": args.N, "s": args.s, "q": q, "S": S, "c_star": rep.c_star,
                "h_norm_threshold": rep.h_norm_threshold,
                "lq_norm_threshold": rep.lq_norm_threshold,
                "f3_coeff": rep.f3_coeff, "alpha": rep.alpha,
                "lambda_lower": rep.lambda_lower}],
              _CSV_COLUMNS["thresholds"])
        return 0

    if args.cmd == "groundstate":
        q = float(args.q)
        box = args.box if args.box is not None else 40.0
        grid = Grid(half_width=box, points=args.grid)
        V = _parse_field(args.V, grid)
        Q = _parse_field(args.Q, grid)
        if np.max(np.abs(Q.values - 1.0)) > 1e-12:
            pde.check_weight_hypotheses(Q)
        if np.max(np.abs(V.values - 1.0)) > 1e-12:
            pde.check_potential_hypotheses(V)
        res = varmin.minimize_quotient(grid, None, args.s, q, "whole_space",
                                       varmin.SolverConfig(max_iters=args.max_iters,
                                                           seed=args.seed))
        u0, I0, rep = pde.ground_state_solve(grid, args.s, q, V, Q,
                                             max_iters=args.max_iters,
                                             S_reference=res.estimate)
        result = {
            "I0": I0, "iterations": rep.iterations, "converged": rep.converged,
            "residual": rep.residual, "residual_rel": rep.residual_rel,
            "residual_ok": rep.residual_ok,
            "h_norm_sq": rep.h_norm_sq, "h_threshold": rep.h_threshold,
            "lq_norm": rep.lq_norm, "lq_threshold": rep.lq_threshold,
            "S_numeric": res.estimate,
            "thresholds_satisfied": bool(rep.h_norm_sq < rep.h_threshold
                                         and rep.lq_norm < rep.lq_threshold),
        }
        record = _record(args, argv, t0,
                         {"N": 1, "s": args.s, "p": 2.0, "q": q},
                         {"kind": "whole_space", "dim": 1, "truncation": box},
                         result, ["rayleigh-numeric"])
        _emit(args, record,
              [{"s": args.s, "q": q, "I0": I0, "residual_rel": rep.residual_rel,
                "h_norm_sq": rep.h_norm_sq, "h_threshold": rep.h_threshold,
                "lq_norm": rep.lq_norm, "lq_threshold": rep.lq_threshold,
                "iterations": rep.iterations, "converged": rep.converged}],
              _CSV_COLUMNS["groundstate"])
        return 0 if (rep.converged and rep.residual_ok) else 1

    raise DomainError(f"unknown subcommand {args.cmd!r}")


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
