"""Command-line entry point: ``clusterscat <command> ...`` or ``python3 -m clusterscat``.

Exit status is 0 on success, 1 when a verification fails and 2 for usage errors.
Relative output paths are resolved against $CLUSTERSCAT_OUT when it is set.
"""
from __future__ import annotations

import argparse
import inspect
import json
import os
import sys
from fractions import Fraction
from pathlib import Path
from typing import List, Optional, Sequence

from . import verify as _verify
from .cambrian import (
    Cambrian,
    CambrianError,
    CoxeterElement,
    NAMED_TYPES,
    build_cambscat,
    check_gregarious_shards,
    check_outgoing,
    check_star_structure,
    fan_to_json,
    named_type,
)
from .cluster import (
    ClusterError,
    Rank2Params,
    f_polynomial,
    g_vector,
    limiting_wall_function,
    narayana_series,
)
from .rootdata import RootData, RootDataError, format_matrix
from .scat import ScatError, check_consistency, complete_rank2
from .series import SeriesError
from .svg import diagram_svg
from .theta import DEFAULT_ENDPOINT, ThetaError, enumerate_broken_lines, theta_function

MAX_ORDER = 32
DEFAULT_ORDER = 10
OUT_ENV = "CLUSTERSCAT_OUT"
ROUTES = ("limit", "recursion", "closed_form", "canakci_schiffler")


class UsageError(Exception):
    pass


def _order(text: str) -> int:
    try:
        k = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"order must be an integer, got {text!r}")
    if not 1 <= k <= MAX_ORDER:
        raise argparse.ArgumentTypeError(f"order must lie in 1..{MAX_ORDER}")
    return k


def _pair(text: str):
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected two comma-separated numbers, got {text!r}")
    try:
        return tuple(Fraction(p.strip()) for p in parts)
    except ValueError:
        raise argparse.ArgumentTypeError(f"cannot parse {text!r}")


def _int_pair(text: str):
    p = _pair(text)
    if any(x.denominator != 1 for x in p):
        raise argparse.ArgumentTypeError(f"expected integers, got {text!r}")
    return tuple(int(x) for x in p)


def _word(text: str) -> CoxeterElement:
    try:
        return CoxeterElement(tuple(int(x) - 1 for x in text.split(",")))
    except (ValueError, CambrianError) as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _out_path(name: str) -> Path:
    p = Path(name)
    base = os.environ.get(OUT_ENV)
    if base and not p.is_absolute():
        p = Path(base) / p
    p.parent.mkdir(parents=True, exist_ok=True)
    return p


def _emit(args, payload: dict, text: str):
    if args.format == "json":
        sys.stdout.write(json.dumps(payload, indent=2) + "\n")
    else:
        sys.stdout.write(text.rstrip("\n") + "\n")


def _rank2_params(B) -> Rank2Params:
    if B[0][0] or B[1][1]:
        raise UsageError("diagonal of the exchange matrix must vanish")
    return Rank2Params(B[1][0], B[0][1])


# -- build ------------------------------------------------------------------

def cmd_build(args) -> int:
    data = RootData.from_string(args.b)
    K = args.order
    if data.n == 2:
        params = _rank2_params(data.B)
        d = complete_rank2(data, K)
        rep = check_consistency(d)
        payload = {"kind": "rank2-completion", **d.to_json(), "consistent": rep.consistent}
        if params.is_affine:
            f = _verify.limiting_ray_function(d, params)
            payload["limiting_ray_function"] = f.to_text()
    else:
        c = args.c
        rep = check_consistency(build_cambscat(data, c, K, merge=False))
        d = build_cambscat(data, c, K)
        payload = {"kind": "cambrian", **d.to_json(), "consistent": rep.consistent}
    payload["failures"] = rep.failures
    if args.out:
        _out_path(args.out).write_text(json.dumps(payload, indent=2) + "\n")
    if args.svg:
        if data.n != 2:
            raise UsageError("--svg needs a rank-2 exchange matrix")
        _out_path(args.svg).write_text(diagram_svg(d, title=f"B = {format_matrix(data.B)}, order {K}"))
    lines = [f"B = {format_matrix(data.B)}  order {K}  {len(d.nontrivial())} nontrivial walls"]
    for w in d.nontrivial():
        lines.append(f"  normal {w.normal}  {w.cone.kind:10s} {w.function_text()}")
    if "limiting_ray_function" in payload:
        lines.append(f"limiting ray: {payload['limiting_ray_function']}")
    lines.append("consistent" if rep.consistent else "INCONSISTENT: " + "; ".join(rep.failures))
    _emit(args, payload, "\n".join(lines))
    return 0 if rep.consistent else 1


# -- verify -----------------------------------------------------------------

def cmd_verify(args) -> int:
    names = list(_verify.CHECKS) if args.check == "all" else [args.check]
    results = []
    for name in names:
        fn = _verify.CHECKS[name]
        params = inspect.signature(fn).parameters
        kw = {}
        if args.order is not None:
            if "K" not in params:
                raise UsageError(f"check {name} takes no --order")
            kw["K"] = args.order
        if args.type is not None:
            if "types" not in params:
                raise UsageError(f"check {name} takes no --type")
            kw["types"] = (args.type,)
        results.append(fn(**kw))
    payload = {"checks": [r.to_json() for r in results], "passed": all(r.passed for r in results)}
    text = "\n".join(r.line() + "".join("\n    " + d for d in r.details) for r in results)
    _emit(args, payload, text)
    return 0 if payload["passed"] else 1


# -- theta ------------------------------------------------------------------

def cmd_theta(args) -> int:
    params = Rank2Params(args.a, args.b)
    d = complete_rank2(params.data, args.order)
    p = args.endpoint if args.endpoint is not None else DEFAULT_ENDPOINT
    th = theta_function(d, args.g, args.order, p)
    expanded = th.expand(params.data)
    monos = sorted(expanded.items(), key=lambda t: (sum(t[0][1]), t[0][1], t[0][0]))
    payload = {
        "a": args.a, "b": args.b, "lambda": list(args.g), "order": args.order,
        "endpoint": [str(x) for x in p],
        "series": th.series.to_text(),
        "monomials": [{"x": list(x), "y": list(y), "coeff": str(c)} for (x, y), c in monos],
    }
    if args.svg:
        lines = enumerate_broken_lines(d, args.g, p, args.order)
        _out_path(args.svg).write_text(
            diagram_svg(d, lines, title=f"a={args.a} b={args.b} lambda={tuple(args.g)}"))
    _emit(args, payload, f"theta_{tuple(args.g)} = {th}")
    return 0


# -- cluster ----------------------------------------------------------------

def cmd_cluster(args) -> int:
    if args.what == "f-poly":
        params = Rank2Params(args.a, args.b)
        F = f_polynomial(args.i, params, args.order)
        g = g_vector(args.i, params)
        payload = {"a": args.a, "b": args.b, "i": args.i, "order": args.order, "g_vector": list(g),
                   "F": F.to_text()}
        _emit(args, payload, f"g_{args.i} = {g}\nF_{args.i} = {F}")
        return 0
    if args.what == "limiting-wall":
        params = Rank2Params(args.a, args.b)
        f = limiting_wall_function(params, args.order)
        payload = {"a": args.a, "b": args.b, "order": args.order, "function": f.to_text()}
        _emit(args, payload, str(f))
        return 0
    routes = ROUTES if args.route == "all" else (args.route,)
    series = {r: narayana_series(r, args.order) for r in routes}
    agree = len(set(series.values())) == 1
    first = series[routes[0]]
    payload = {"order": args.order, "routes": list(routes), "agree": agree, "series": first.to_text()}
    text = f"{first}\n{'routes agree: ' if agree else 'ROUTES DISAGREE: '}{', '.join(routes)}"
    _emit(args, payload, text)
    return 0 if agree else 1


# -- cambrian ---------------------------------------------------------------

def cmd_cambrian(args) -> int:
    if (args.b is None) == (args.type is None):
        raise UsageError("give exactly one of --b and --type")
    data = named_type(args.type) if args.type else RootData.from_string(args.b)
    camb = Cambrian(data, args.c)
    payload = fan_to_json(camb)
    ok = True
    text = [f"B = {format_matrix(data.B)}  c = {' '.join(str(i + 1) for i in camb.c.word)}",
            f"{len(payload['sortable'])} sortable elements"]
    if args.check != "none":
        checks = {}
        d = build_cambscat(data, camb.c, args.order, merge=False)
        if args.check in ("all", "outgoing"):
            og = check_outgoing(d)
            checks["outgoing"] = {"ok": og.ok, "violations": og.violations}
        if args.check in ("all", "consistency"):
            cons = check_consistency(d)
            checks["consistency"] = {"ok": cons.consistent, "loops": cons.loops_checked, "failures": cons.failures}
        if args.check in ("all", "star"):
            st = check_star_structure(data, camb.c)
            checks["star"] = {"ok": st.ok, "lengths": sorted(st.lengths), "failures": st.failures}
        if args.check in ("all", "shards"):
            sh = check_gregarious_shards(data, camb.c, args.order)
            checks["shards"] = {"ok": sh.ok, "failures": sh.failures}
        payload["checks"] = checks
        for name, r in checks.items():
            ok = ok and r["ok"]
            text.append(f"{name}: {'pass' if r['ok'] else 'FAIL'}")
    if args.out:
        _out_path(args.out).write_text(json.dumps(payload, indent=2) + "\n")
    _emit(args, payload, "\n".join(text))
    return 0 if ok else 1


# -- parser -----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="clusterscat", description="Exact cluster scattering diagrams.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, order=True):
        p.add_argument("--format", choices=("text", "json"), default="text")
        if order:
            p.add_argument("--order", type=_order, default=DEFAULT_ORDER)

    p = sub.add_parser("build", help="complete a rank-2 diagram or build a Cambrian diagram")
    p.add_argument("--b", required=True, help='exchange matrix such as "0,2;-2,0"')
    p.add_argument("--c", type=_word, help="Coxeter element as a 1-based word, e.g. 1,2,3")
    p.add_argument("--svg")
    p.add_argument("--out")
    common(p)
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("verify", help="run a reproduction check")
    p.add_argument("check", choices=["all"] + list(_verify.CHECKS))
    p.add_argument("--order", type=_order)
    p.add_argument("--type", choices=sorted(NAMED_TYPES))
    common(p, order=False)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("theta", help="theta function from broken lines (rank 2)")
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--b", type=int, required=True)
    p.add_argument("--g", type=_int_pair, required=True, help='weight lambda, e.g. "-2,3"')
    p.add_argument("--endpoint", type=_pair, help='endpoint p, e.g. "7/9,3/9"')
    p.add_argument("--svg")
    common(p)
    p.set_defaults(func=cmd_theta)

    p = sub.add_parser("cluster", help="F-polynomials, limiting walls, Narayana series")
    p.add_argument("what", choices=("f-poly", "limiting-wall", "narayana"))
    p.add_argument("--a", type=int, default=-2)
    p.add_argument("--b", type=int, default=2)
    p.add_argument("--i", type=int, default=-1)
    p.add_argument("--route", choices=("all",) + ROUTES, default="all")
    common(p)
    p.set_defaults(func=cmd_cluster)

    p = sub.add_parser("cambrian", help="sortable elements and the Cambrian fan")
    p.add_argument("action", choices=("build",))
    p.add_argument("--b")
    p.add_argument("--type", choices=sorted(NAMED_TYPES))
    p.add_argument("--c", type=_word)
    p.add_argument("--check", choices=("none", "all", "outgoing", "consistency", "star", "shards"), default="none")
    p.add_argument("--out")
    common(p, order=False)
    p.add_argument("--order", type=_order, default=8)
    p.set_defaults(func=cmd_cambrian)
    return ap


DOMAIN_ERRORS = (UsageError, RootDataError, ClusterError, CambrianError, ThetaError, SeriesError, ScatError)


VALUE_FLAGS = ("--b", "--g", "--endpoint")


def _attach_values(argv: List[str]) -> List[str]:
    # "--g -2,3" would otherwise be read as an unknown option
    out: List[str] = []
    i = 0
    while i < len(argv):
        if argv[i] in VALUE_FLAGS and i + 1 < len(argv) and argv[i + 1].startswith("-"):
            out.append(f"{argv[i]}={argv[i + 1]}")
            i += 2
        else:
            out.append(argv[i])
            i += 1
    return out


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(_attach_values(argv))
    try:
        return args.func(args)
    except DOMAIN_ERRORS as exc:
        sys.stderr.write(f"clusterscat: error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
