"""Command-line front end.

Every report is JSON with rationals serialized as strings.  Exit codes: 0 on
success, 1 on a domain error (the report carries "error_kind"), 2 on
malformed input.
"""
from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from pathlib import Path

from .errors import ParaHiggsError
from .exactkernel import rat_str, to_rat
from .higgsfield import HiggsField, classify, residue_matrix, trace_residue_sum
from .hitchin import casimir_project, hitchin_map, spectral_build, spectral_smooth
from .hyperco import dimension_audit, sharp_map
from .parabolic import (
    PARABOLIC,
    STRONGLY,
    ParabolicBundle,
    global_par_end,
    is_generic_weights,
    is_stable,
    pdeg_slope,
)
from .spectralflags import coarsen, enumerate_flags

COMMANDS = ("audit", "bundle-check", "higgs-check", "spectral", "flags", "forget", "sharp")


class MalformedInput(Exception):
    pass


def _jsonable(obj):
    if isinstance(obj, Fraction):
        return rat_str(obj)
    if isinstance(obj, dict):
        return {str(rat_str(k) if isinstance(k, Fraction) else k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    return obj


def dumps(obj) -> str:
    return json.dumps(_jsonable(obj), indent=2, sort_keys=True)


def load_input(source: str):
    """Path, '-' for stdin, or inline JSON text."""
    try:
        if source == "-":
            text = sys.stdin.read()
        elif source.lstrip().startswith(("{", "[")):
            text = source
        else:
            text = Path(source).read_text()
        return json.loads(text)
    except (OSError, json.JSONDecodeError) as exc:
        raise MalformedInput(str(exc)) from exc


def _matrix(m):
    return [[rat_str(x) for x in row] for row in m]


def _parse_mults(text: str, n: int):
    if text in ("full", "minimal"):
        return text
    groups = [[int(x) for x in g.split(",")] for g in text.split(";")]
    return groups * n if len(groups) == 1 else groups


# ------------------------------------------------------------------ commands


def cmd_audit(opts: dict, data=None) -> dict:
    g, r, n = int(opts.get("g", 0)), int(opts["r"]), int(opts["n"])
    return dimension_audit(g, r, n, _parse_mults(opts.get("flags", "full"), n))


def cmd_bundle_check(opts: dict, data) -> dict:
    E = ParabolicBundle.from_json(data)
    pdeg, slope = pdeg_slope(E)
    out = {"pdeg": pdeg, "slope": slope, "rank": E.rank, "degree": E.degree}
    if E.rank <= 2:
        out["stability"] = is_stable(E).to_json()
    out["genericity"] = is_generic_weights(
        E.rank, E.degree, [fl.multiplicities for fl in E.flags],
        [fl.weights for fl in E.flags]).to_json()
    for variant, twist in ((PARABOLIC, 0), (STRONGLY, 0), (PARABOLIC, E.curve.n - 2)):
        sp = global_par_end(E, variant, twist)
        out[f"{variant}_twist_{twist}"] = {"h0": sp.h0, "h1": sp.h1, "chi": sp.chi}
    return out


def cmd_higgs_check(opts: dict, data) -> dict:
    E = ParabolicBundle.from_json(data.get("bundle") if isinstance(data, dict) else None)
    from .exactkernel import Poly

    try:
        H = [[Poly.from_json(p) for p in row] for row in data["numerator"]]
    except (KeyError, TypeError) as exc:
        raise MalformedInput(f"numerator: {exc}") from exc
    cls, detail = classify(E, H)
    out = {"class": cls}
    if detail is not None:
        out["offending"] = detail
        return out
    phi = HiggsField(E, tuple(tuple(row) for row in H))
    out["trace_residue_sum"] = trace_residue_sum(phi)
    out["residues"] = {rat_str(p): _matrix(residue_matrix(phi, p)) for p in E.curve.points}
    s = hitchin_map(phi)
    out["hitchin"] = s.to_json()
    out["casimirs"] = {rat_str(p): c.to_json() for p, c in casimir_project(s).items()}
    return out


def cmd_spectral(opts: dict, data) -> dict:
    phi = HiggsField.from_json(data)
    s = hitchin_map(phi)
    X = spectral_build(s)
    rep = spectral_smooth(X)
    out = {"F": X.F.to_string(), "infinity_chart": X.G.to_string().replace("t", "s").replace("y", "z")}
    out.update(rep.to_json())
    out["casimirs"] = {rat_str(p): c.to_json() for p, c in casimir_project(s).items()}
    return out


def cmd_flags(opts: dict, data) -> dict:
    phi = HiggsField.from_json(data)
    p = to_rat(opts["point"])
    fl = phi.bundle.flag_at(p)
    mults = opts.get("multiplicities")
    mults = [int(x) for x in mults.split(",")] if mults else list(fl.multiplicities)
    A = residue_matrix(phi, p)
    flags = enumerate_flags(A, mults)
    return {
        "point": p,
        "residue": _matrix(A),
        "count": len(flags),
        "flags": [{"grouping": [[rat_str(s) for s in g] for g in cf.grouping],
                   "frame": [[rat_str(x) for x in col] for col in zip(*cf.frame)]}
                  for cf in flags],
    }


def cmd_forget(opts: dict, data) -> dict:
    phi = HiggsField.from_json(data)
    mults = [int(x) for x in opts["to"].split(",")]
    weights = [to_rat(w) for w in opts["weights"].split(",")]
    res = coarsen(phi, mults, weights)
    return {
        "bundle": res.bundle.to_json(),
        "higgs": res.field.to_json(),
        "class_before": res.classification_before,
        "class_after": res.classification_after,
        "stability": res.stability,
    }


def cmd_sharp(opts: dict, data) -> dict:
    return sharp_map(HiggsField.from_json(data)).to_json()


HANDLERS = {
    "audit": cmd_audit,
    "bundle-check": cmd_bundle_check,
    "higgs-check": cmd_higgs_check,
    "spectral": cmd_spectral,
    "flags": cmd_flags,
    "forget": cmd_forget,
    "sharp": cmd_sharp,
}


def dispatch(command: str, opts: dict, data=None) -> tuple[int, dict]:
    """Run one job; returns (exit code, report)."""
    if command not in HANDLERS:
        return 2, {"error": f"unknown command {command!r}", "error_kind": "malformed"}
    try:
        return 0, HANDLERS[command](opts, data)
    except MalformedInput as exc:
        return 2, {"error": str(exc), "error_kind": "malformed"}
    except ParaHiggsError as exc:
        return 1, {"error": str(exc), "error_kind": exc.kind}


def _run_job(job: dict) -> tuple[int, dict]:
    try:
        data = load_input(job["input"]) if "input" in job else job.get("data")
    except MalformedInput as exc:
        return 2, {"error": str(exc), "error_kind": "malformed"}
    return dispatch(job.get("command", ""), job.get("options", {}), data)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="parahiggs", description="Exact parabolic Higgs bundle checks on P^1.")
    ap.add_argument("--output", "-o", help="write the report here instead of stdout")
    sub = ap.add_subparsers(dest="command", required=True)

    a = sub.add_parser("audit", help="dimension identity table")
    a.add_argument("--g", type=int, default=0)
    a.add_argument("--r", type=int, required=True)
    a.add_argument("--n", type=int, required=True)
    a.add_argument("--flags", default="full", help="full, minimal, or e.g. '1,1;2' per point")

    for name, text in (("bundle-check", "parabolic bundle JSON"), ("higgs-check", "Higgs JSON"),
                       ("spectral", "Higgs JSON"), ("sharp", "Higgs JSON")):
        p = sub.add_parser(name)
        p.add_argument("input", help=f"{text}: path, '-' or inline")

    f = sub.add_parser("flags", help="compatible flags at a marked point")
    f.add_argument("input")
    f.add_argument("--point", required=True)
    f.add_argument("--multiplicities")

    g = sub.add_parser("forget", help="coarsen the flags")
    g.add_argument("input")
    g.add_argument("--to", required=True, help="target multiplicities, e.g. 2")
    g.add_argument("--weights", required=True, help="target weights, e.g. 1/4")

    b = sub.add_parser("batch", help="run a JSON list of jobs")
    b.add_argument("input")
    b.add_argument("--jobs", type=int, default=1)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    opts = {k: v for k, v in vars(args).items() if k not in ("command", "input", "output") and v is not None}
    if args.command == "batch":
        try:
            jobs = load_input(args.input)
            if not isinstance(jobs, list):
                raise MalformedInput("batch input must be a JSON list")
        except MalformedInput as exc:
            code, report = 2, {"error": str(exc), "error_kind": "malformed"}
        else:
            if args.jobs > 1:
                with ProcessPoolExecutor(max_workers=args.jobs) as pool:
                    results = list(pool.map(_run_job, jobs))
            else:
                results = [_run_job(j) for j in jobs]
            code = max((c for c, _ in results), default=0)
            report = [dict(r, exit_code=c) for c, r in results]
    else:
        data = None
        code = 0
        if hasattr(args, "input"):
            try:
                data = load_input(args.input)
            except MalformedInput as exc:
                code, report = 2, {"error": str(exc), "error_kind": "malformed"}
        if code == 0:
            code, report = dispatch(args.command, opts, data)
    text = dumps(report) + "\n"
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
