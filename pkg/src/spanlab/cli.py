"""Command-line surface: JSON ingestion, check dispatch, report emission.

Every invocation prints one JSON report and exits 0 (verified), 1
(refuted), 2 (inconclusive / resource ceiling), or 3 (schema or usage
error).  Reports embed the bound and seed used so truncation-sensitive
claims are never unqualified; reruns with equal request and seed reproduce
the report byte-for-byte apart from the timing field.
"""
from __future__ import annotations

import argparse
import json
import random
import sys
import time
from concurrent.futures import ThreadPoolExecutor

from . import duality, lagrangian, locsys, shapes, spans
from .fincat import FinCategory, finset
from .verdict import EXIT_CODES, ResourceError, SpanlabError, Verdict

SCHEMA = "spanlab-report/1"
VERSION = "1.0.0"


def _parse_base(spec: str):
    if spec.startswith("finset:"):
        try:
            n = int(spec.split(":", 1)[1])
        except ValueError as exc:
            raise SpanlabError(f"bad base spec {spec!r}") from exc
        if n < 0:
            raise SpanlabError(f"bad base spec {spec!r}")
        return finset(n)
    try:
        with open(spec, encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise SpanlabError(f"cannot read base file {spec!r}: {exc}") from exc
    return FinCategory.from_json(data)


def _parse_object(base, label):
    if isinstance(base, FinCategory):
        for x in base.objects:
            if str(x) == str(label):
                return x
        raise SpanlabError(f"no object labeled {label!r}")
    try:
        return int(label)
    except ValueError as exc:
        raise SpanlabError(f"finite-set objects are integers, got {label!r}") from exc


def _parse_coefficients(spec: str) -> locsys.InternalCategory:
    if spec.startswith("discrete:"):
        return locsys.discrete_internal(int(spec.split(":", 1)[1]))
    if spec.startswith("cyclic:"):
        return locsys.cyclic_internal(int(spec.split(":", 1)[1]))
    if spec == "bz2":
        return locsys.cyclic_internal(2)
    if spec == "bz3":
        return locsys.cyclic_internal(3)
    if spec == "arrow":
        return locsys.walking_arrow_internal()
    try:
        with open(spec, encoding="utf-8") as fh:
            return locsys.InternalCategory.from_json(json.load(fh))
    except (OSError, json.JSONDecodeError, ValueError) as exc:
        raise SpanlabError(f"cannot read coefficients {spec!r}: {exc}") from exc


def _random_span(base, bound, rng: random.Random) -> spans.Span:
    objs = list(base.objects_within(bound))
    while True:
        X = rng.choice(objs)
        Y = rng.choice(objs)
        A = rng.choice(objs)
        lleg = base.random_hom(A, X, rng)
        rleg = base.random_hom(A, Y, rng)
        if lleg is not None and rleg is not None:
            return spans.Span(X, lleg, A, rleg, Y)


def _int_list(values):
    return tuple(int(v) for v in values)


# ---------------------------------------------------------------------------
# dispatch


def _run_shapes(args) -> tuple[Verdict, dict]:
    arities = _int_list(args.arities)
    if args.kind == "wedge":
        if len(arities) != 1:
            raise SpanlabError("wedge takes a single arity")
        return shapes.lambda_wedge_check(arities[0]), {}
    if args.kind == "sigma":
        shape = shapes.sigma_shape(arities)
    else:
        if len(arities) != 1:
            raise SpanlabError("lambda takes a single arity")
        shape = shapes.lambda_shape(arities[0])
    payload = shape.to_json()
    payload["object_count"] = len(shape.objects)
    return Verdict.verified(witness=payload), {}


def _jsonable(value):
    """Render arbitrary table data (tuple keys, morphism labels) as plain
    JSON types, stringifying anything without a native encoding."""
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, (str, int, float, bool)) or value is None:
        return value
    return repr(value)


def _run_level(args) -> tuple[Verdict, dict]:
    base = _parse_base(args.base)
    lvl = spans.span_level(base, _int_list(args.arities), bound=args.bound)
    extra = {
        "objects": len(lvl.objects),
        "morphisms": len(list(lvl.all_morphisms())),
    }
    if args.json:
        extra["groupoid"] = _jsonable(lvl.to_json())
    return Verdict.verified(witness={"objects": extra["objects"], "morphisms": extra["morphisms"]}), extra


def _run_check(args) -> tuple[Verdict, dict]:
    base = _parse_base(args.base)
    if args.which == "segal":
        return (
            spans.segal_check(
                base,
                _int_list(args.arities),
                bound=args.bound,
                seed=args.seed,
                samples=args.samples,
            ),
            {},
        )
    if args.which == "complete":
        return spans.completeness_check(base, bound=args.bound), {}
    if args.which == "invertible":
        return spans.invertible_span_check(base, bound=args.bound), {}
    if args.which == "mapping":
        X = _parse_object(base, args.X)
        Y = _parse_object(base, args.Y)
        return (
            spans.mapping_category_check(base, X, Y, arities=_int_list(args.arities), bound=args.bound),
            {},
        )
    raise SpanlabError(f"unknown check {args.which!r}")


def _run_certify(args) -> tuple[Verdict, dict]:
    base = _parse_base(args.base)
    if args.which == "dual":
        X = _parse_object(base, args.X)
        return duality.object_duality_check(base, X), {}
    if args.which == "adjoint":
        if args.span:
            try:
                with open(args.span, encoding="utf-8") as fh:
                    data = json.load(fh)
                from .fincat import FinFunction

                s = spans.Span(
                    data["left"],
                    FinFunction(data["apex"], data["left"], tuple(data["lleg"])),
                    data["apex"],
                    FinFunction(data["apex"], data["right"], tuple(data["rleg"])),
                    data["right"],
                )
            except (OSError, json.JSONDecodeError, KeyError, TypeError) as exc:
                raise SpanlabError(f"cannot read span file {args.span!r}: {exc}") from exc
            w = duality.build_adjunction(base, s)
            return duality.triangle_check(w), {"witness_data": w.to_json()}
        rng = random.Random(args.seed)
        for trial in range(args.trials):
            s = _random_span(base, args.bound, rng)
            w = duality.build_adjunction(base, s)
            v = duality.triangle_check(w)
            if not v:
                return (
                    Verdict.refuted(witness={"trial": trial, "span": repr(s), "inner": v.witness}),
                    {},
                )
        return Verdict.verified(trials=args.trials, seed=args.seed), {}
    raise SpanlabError(f"unknown certification {args.which!r}")


def _run_locsys(args) -> tuple[Verdict, dict]:
    C = _parse_coefficients(args.coeff)
    if args.kind == "axioms":
        return locsys.validate_internal(C), {}
    if args.kind == "battery":
        return locsys.locsys_battery_check(C, bound=args.bound), {}
    if args.kind == "equivalence":
        return locsys.locsys_equivalence_check(C, bound=args.bound), {}
    if args.kind == "fiber":
        xi = _int_list(args.xi) if args.xi else (0,) * args.X
        eta = _int_list(args.eta) if args.eta else (0,) * args.Y
        return (
            locsys.locsys_mapping_fiber_check(C, args.X, xi, args.Y, eta, bound=args.bound),
            {},
        )
    raise SpanlabError(f"unknown locsys check {args.kind!r}")


def _run_lag(args) -> tuple[Verdict, dict]:
    if args.kind == "pairs":
        return (
            lagrangian.random_pair_check(trials=args.trials, max_dim=args.dim, seed=args.seed),
            {},
        )
    if args.kind == "zigzag":
        return lagrangian.duality_zigzag_check(args.dim), {}
    raise SpanlabError(f"unknown lagrangian check {args.kind!r}")


_RUNNERS = {
    "shapes": _run_shapes,
    "level": _run_level,
    "check": _run_check,
    "certify": _run_certify,
    "locsys": _run_locsys,
    "lag": _run_lag,
}


# ---------------------------------------------------------------------------
# reports


def _report(check_name, request, verdict: Verdict, extra, elapsed) -> dict:
    body = verdict.to_json()
    report = {
        "schema": SCHEMA,
        "version": VERSION,
        "check": check_name,
        "request": request,
        "verdict": body["verdict"],
        "witness": body["witness"],
        "details": body["details"],
        "bound": request.get("bound"),
        "seed": request.get("seed"),
        "timing": elapsed,
    }
    report.update(extra)
    return report


def _request_echo(args) -> dict:
    skip = {"command", "out", "func", "json"}
    return {
        k: (list(v) if isinstance(v, (list, tuple)) else v)
        for k, v in sorted(vars(args).items())
        if k not in skip and v is not None
    }


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="spanlab", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("shapes", help="emit shape posets or run the wedge count check")
    sp.add_argument("kind", choices=["sigma", "lambda", "wedge"])
    sp.add_argument("arities", nargs="+")
    sp.add_argument("--out")

    lv = sub.add_parser("level", help="enumerate a level groupoid")
    lv.add_argument("--base", required=True)
    lv.add_argument("--arities", nargs="+", required=True)
    lv.add_argument("--bound", type=int, default=None)
    lv.add_argument("--json", action="store_true", help="embed the full groupoid tables")
    lv.add_argument("--out")

    ck = sub.add_parser("check", help="run a verification battery")
    ck.add_argument("which", choices=["segal", "complete", "mapping", "invertible"])
    ck.add_argument("--base", required=True)
    ck.add_argument("--arities", nargs="*", default=[])
    ck.add_argument("--bound", type=int, default=None)
    ck.add_argument("--seed", type=int, default=0)
    ck.add_argument("--samples", type=int, default=24)
    ck.add_argument("-X", default=None)
    ck.add_argument("-Y", default=None)
    ck.add_argument("--out")

    ce = sub.add_parser("certify", help="certify adjunction or duality data")
    ce.add_argument("which", choices=["adjoint", "dual"])
    ce.add_argument("--base", required=True)
    ce.add_argument("--bound", type=int, default=None)
    ce.add_argument("--seed", type=int, default=0)
    ce.add_argument("--trials", type=int, default=1)
    ce.add_argument("--span", default=None, help="JSON file with a finite-set span")
    ce.add_argument("-X", default=None)
    ce.add_argument("--out")

    lc = sub.add_parser("locsys", help="labeled-span checks")
    lc.add_argument("action", choices=["check"])
    lc.add_argument("--coeff", required=True)
    lc.add_argument("--kind", choices=["axioms", "battery", "equivalence", "fiber"], default="axioms")
    lc.add_argument("--bound", type=int, default=1)
    lc.add_argument("-X", type=int, default=1)
    lc.add_argument("-Y", type=int, default=1)
    lc.add_argument("--xi", nargs="*", default=None)
    lc.add_argument("--eta", nargs="*", default=None)
    lc.add_argument("--out")

    lg = sub.add_parser("lag", help="linear correspondence checks")
    lg.add_argument("action", choices=["check"])
    lg.add_argument("--kind", choices=["pairs", "zigzag"], default="pairs")
    lg.add_argument("--dim", type=int, default=12)
    lg.add_argument("--trials", type=int, default=100)
    lg.add_argument("--seed", type=int, default=0)
    lg.add_argument("--out")

    su = sub.add_parser("suite", help="run a config file of requests")
    su.add_argument("--config", required=True)
    su.add_argument("--out")
    return p


def run_request(argv) -> tuple[dict, int]:
    """Run one CLI-style request, returning (report, exit code); never
    raises for check-level failures."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit:
        return {"schema": SCHEMA, "verdict": "error", "witness": {"argv": list(argv)}}, 3
    if args.command == "suite":
        return _run_suite(args)
    start = time.monotonic()
    try:
        verdict, extra = _RUNNERS[args.command](args)
    except ResourceError as exc:
        verdict, extra = Verdict.inconclusive(witness={"reason": str(exc)}), {}
    except SpanlabError as exc:
        report = _report(
            args.command,
            _request_echo(args),
            Verdict("error", witness={"error": str(exc)}),
            {},
            time.monotonic() - start,
        )
        return report, 3
    report = _report(args.command, _request_echo(args), verdict, extra, time.monotonic() - start)
    return report, EXIT_CODES[verdict.status]


def _run_suite(args) -> tuple[dict, int]:
    try:
        with open(args.config, encoding="utf-8") as fh:
            config = json.load(fh)
        requests = config["requests"] if isinstance(config, dict) else config
        if not isinstance(requests, list) or not all(
            isinstance(r, list) and all(isinstance(a, str) for a in r) for r in requests
        ):
            raise SpanlabError("config must be a list of argv lists")
    except (OSError, json.JSONDecodeError, KeyError, SpanlabError) as exc:
        return {"schema": SCHEMA, "verdict": "error", "witness": {"error": str(exc)}}, 3
    if not requests:
        return {"schema": SCHEMA, "verdict": "verified", "reports": [], "worst_exit": 0}, 0
    with ThreadPoolExecutor(max_workers=min(8, len(requests))) as pool:
        results = list(pool.map(run_request, requests))
    worst = max(code for _, code in results)
    verdict = next(k for k, v in EXIT_CODES.items() if v == worst)
    summary = {
        "schema": SCHEMA,
        "version": VERSION,
        "verdict": verdict,
        "worst_exit": worst,
        "reports": [rep for rep, _ in results],
    }
    return summary, worst


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    report, code = run_request(argv)
    text = json.dumps(report, sort_keys=True, indent=2)
    out = None
    for flag in ("--out",):
        if flag in argv:
            i = argv.index(flag)
            if i + 1 < len(argv):
                out = argv[i + 1]
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
