"""
Command-line entry point.

Exit codes: 0 success or affirmative verdict, 1 negative verdict, 2 parse
error, 3 invalid tuple or indices, 4 failed precondition, 5 guard exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import bruhat, golden, linalg
from .lr import PICTURE_LIMIT, lr_coefficient, lr_via_pictures
from .partitions import PartitionError, format_partition, parse_partition
from .presentation import (
    GuardExceeded,
    InvalidTuple,
    PreconditionError,
    build_system,
    check_guard,
    check_minimality,
    format_system,
    format_variable,
    generator_set,
    make_valid_tuple,
    minimality_json,
    params_from_bigrassmannian,
    random_chooser,
    reduce_tall,
    span_certificate_json,
    tall_in_wide_span,
)

SCHEMA = 1

EXIT_OK, EXIT_NEGATIVE, EXIT_PARSE, EXIT_INVALID, EXIT_PRECONDITION, EXIT_GUARD = range(6)


class UsageError(Exception):
    pass


def _ints(text: str, count: int, what: str) -> tuple[int, ...]:
    try:
        vals = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise UsageError(f"{what} must be {count} comma-separated integers, got {text!r}")
    if len(vals) != count:
        raise UsageError(f"{what} must have {count} entries, got {len(vals)}")
    return vals


def _partition(text: str):
    try:
        return parse_partition(text)
    except PartitionError as e:
        raise UsageError(str(e))


def _permutation(text: str):
    try:
        return bruhat.parse_permutation(text)
    except ValueError as e:
        raise UsageError(str(e))


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        doc = {"schema": SCHEMA, "command": args.command}
        doc.update(payload)
        print(json.dumps(doc, indent=2, ensure_ascii=False))
    else:
        print(text)


def _warn_forced(args) -> None:
    if args.force:
        print("warning: guards disabled with --force; expect long runtimes and high memory use", file=sys.stderr)


def cmd_lr(args) -> int:
    lam, mu, nu = (_partition(x) for x in (args.lam, args.mu, args.nu))
    c = lr_coefficient(lam, mu, nu)
    payload = {"lambda": format_partition(lam), "mu": format_partition(mu), "nu": format_partition(nu), "coefficient": c}
    lines = [f"c = {c}"]
    agree = True
    if sum(mu) <= PICTURE_LIMIT:
        p = lr_via_pictures(lam, mu, nu)
        agree = p == c
        payload.update(pictures=p, models_agree=agree)
        lines.append(f"pictures = {p} ({'models agree' if agree else 'MODELS DISAGREE'})")
    else:
        lines.append("pictures: skipped (instance above the picture-search limit)")
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK if agree else EXIT_NEGATIVE


def _phi(args):
    return make_valid_tuple(*_ints(args.phi, 7, "--phi"))


def cmd_reduce(args) -> int:
    phi = _phi(args)
    nu = _partition(args.nu)
    chooser = random_chooser(args.seed) if args.order == "random" else None
    red = reduce_tall(phi, nu, chooser)
    payload = {
        "phi": list(phi.as_tuple()),
        "nu": format_partition(nu),
        "nu_B": format_partition(red.nuB),
        "steps": len(red.steps),
        "result": red.expanded.render(),
        "closed_form": red.closed_form.render(),
        "closed_form_ok": red.matches_closed_form,
    }
    lines = []
    if args.trace:
        payload["trace"] = [{"index": 0, "state": red.initial.render()}]
        lines.append(f"xi^(0) = {red.initial.render()}")
        for st in red.steps:
            lam, rights = st.chosen
            payload["trace"].append({
                "index": st.index, "eliminated": [format_partition(lam), [format_partition(m) for m in rights]],
                "gamma": st.gamma, "state": st.state.render()})
            lines.append(f"xi^({st.index}) = {st.state.render()}")
    lines.append(f"unexpanded = {red.final.render()}")
    lines.append(f"Reduce = {red.expanded.render()}")
    lines.append(f"closed form {red.closed_form.render()}: {'OK' if red.matches_closed_form else 'MISMATCH'}")
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK if red.matches_closed_form else EXIT_NEGATIVE


def cmd_system(args) -> int:
    phi = _phi(args)
    check_guard(phi.n - phi.r, phi.i, phi.j, phi.a, phi.b, args.force)
    _warn_forced(args)
    system = build_system(phi, threads=args.threads)
    idx = system.index
    payload = {
        "phi": list(phi.as_tuple()),
        "variables": [format_variable(v) for v in system.variables],
        "rows": [
            {"nu": format_partition(f.label), "kind": "tall" if f.tall else "wide",
             "entries": {str(idx[v]): c for v, c in sorted(f.coeffs.items(), key=lambda kv: idx[kv[0]])},
             "form": f.render()}
            for f in system.forms
        ],
    }
    _emit(args, payload, format_system(system))
    return EXIT_OK


def cmd_check_minimality(args) -> int:
    start = time.perf_counter()
    if args.phi:
        phi = _phi(args)
        check_guard(phi.n - phi.r, phi.i, phi.j, phi.a, phi.b, args.force)
        _warn_forced(args)
        cert = tall_in_wide_span(phi, build_system(phi, threads=args.threads))
        payload = span_certificate_json(cert)
        lines = [f"phi=({phi}): tall rows in span of wide rows: {cert.verdict}"]
        for label, res in cert.certificates.items():
            if res.in_span:
                combo = " + ".join(f"({linalg.format_rational(c)})*row{format_partition(w)}"
                                   for w, c in zip(cert.wide_labels, res.coefficients) if c)
                lines.append(f"  tall {format_partition(label)} = {combo}")
            else:
                lines.append(f"  tall {format_partition(label)}: NOT in span")
        ok = cert.verdict
    else:
        r, s, t, n = _ints(args.bigrassmannian, 4, "--bigrassmannian")
        _warn_forced(args)
        report = check_minimality(r, s, t, n, force=args.force, threads=args.threads, with_span=True)
        payload = minimality_json(report)
        i, j, a, b = report.params
        lines = [f"v_{{{r},{s},{t},{n}}}: i={i} j={j} a={a} b={b}, {len(report.generators)} generators"]
        for v in report.verdicts:
            lines.append(f"  s̄{format_partition(v.generator)}: {'essential' if v.essential else 'redundant over Q'}")
        span_ok = all(c.verdict for c in report.span_checks)
        lines.append(f"tall-in-wide-span for N=1..{a * b}: {span_ok}")
        lines.append("all generators essential" if report.all_essential else "some generator is redundant")
        ok = report.all_essential and span_ok
    if args.timing:
        payload["seconds"] = round(time.perf_counter() - start, 3)
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK if ok else EXIT_NEGATIVE


def cmd_generators(args) -> int:
    r, s, t, n = _ints(args.bigrassmannian, 4, "--bigrassmannian")
    gens = generator_set(r, s, t, n)
    i, j, a, b = params_from_bigrassmannian(r, s, t, n)
    payload = {"params": {"i": i, "j": j, "a": a, "b": b}, "count": len(gens),
               "generators": [format_partition(g) for g in gens]}
    text = f"count {len(gens)}\n" + "\n".join(format_partition(g) for g in gens)
    _emit(args, payload, text)
    return EXIT_OK


def cmd_essential_set(args) -> int:
    w = _permutation(args.w)
    ess = bruhat.essential_set(w)
    payload = {"w": bruhat.format_permutation(w), "essential_set": [bruhat.format_permutation(u) for u in ess]}
    text = "{" + ", ".join(bruhat.format_permutation(u) for u in ess) + "}" if ess else "∅"
    _emit(args, payload, text)
    return EXIT_OK


def cmd_find_w(args) -> int:
    v = _permutation(args.v)
    n = args.n if args.n is not None else len(v)
    found = bruhat.find_w_for_v(v, n)
    payload = {"v": bruhat.format_permutation(v), "n": n,
               "w": [bruhat.format_permutation(w) for w in found], "set_equality_verified": bool(found)}
    if found:
        text = "\n".join(f"{bruhat.format_permutation(w)}: {{u not<= w}} = {{u >= v}} verified" for w in found)
    else:
        text = "no w with essential set {v}"
    _emit(args, payload, text)
    return EXIT_OK if found else EXIT_NEGATIVE


def cmd_verify_anchors(args) -> int:
    results = []
    for name, fn in golden.ANCHORS:
        ok, detail = fn()
        results.append({"anchor": name, "pass": bool(ok), "detail": detail})
    text = "\n".join(f"{'PASS' if r['pass'] else 'FAIL'}  {r['anchor']}  [{r['detail']}]" for r in results)
    _emit(args, {"anchors": results}, text)
    return EXIT_OK if all(r["pass"] for r in results) else EXIT_NEGATIVE


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--force", action="store_true", help="disable the desk-scale guards")
    common.add_argument("--threads", type=int, default=1, help="parallel workers for row/generator maps")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized elimination orders")
    common.add_argument("--timing", action="store_true", help="include wall-clock timing (breaks byte-identical JSON)")

    p = _Parser(prog="schubmin", description=__doc__.split("\n\n")[0].strip())
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("lr", parents=[common], help="Littlewood-Richardson coefficient")
    s.add_argument("lam")
    s.add_argument("mu")
    s.add_argument("nu")
    s.set_defaults(func=cmd_lr)

    s = sub.add_parser("reduce", parents=[common], help="run the CP elimination on a tall partition")
    s.add_argument("--phi", required=True, help="n,r,i,j,a,b,N")
    s.add_argument("--nu", required=True, help="partition, e.g. [3,3,3,3,1]")
    s.add_argument("--trace", action="store_true", help="print every intermediate tensor")
    s.add_argument("--order", choices=["default", "random"], default="default")
    s.set_defaults(func=cmd_reduce)

    s = sub.add_parser("system", parents=[common], help="dump the decomposable equations")
    s.add_argument("--phi", required=True)
    s.set_defaults(func=cmd_system)

    s = sub.add_parser("check-minimality", parents=[common], help="certify minimality of the generators")
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--bigrassmannian", help="r,s,t,n")
    g.add_argument("--phi", help="n,r,i,j,a,b,N")
    s.set_defaults(func=cmd_check_minimality)

    s = sub.add_parser("generators", parents=[common], help="list the generating set")
    s.add_argument("--bigrassmannian", required=True, help="r,s,t,n")
    s.set_defaults(func=cmd_generators)

    s = sub.add_parser("essential-set", parents=[common], help="essential set of a permutation")
    s.add_argument("w")
    s.set_defaults(func=cmd_essential_set)

    s = sub.add_parser("find-w", parents=[common], help="find w whose essential set is {v}")
    s.add_argument("--v", required=True)
    s.add_argument("--n", type=int)
    s.set_defaults(func=cmd_find_w)

    s = sub.add_parser("verify-paper", parents=[common], help="reproduce every published reference value")
    s.set_defaults(func=cmd_verify_anchors)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except InvalidTuple as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INVALID
    except PreconditionError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PRECONDITION
    except (GuardExceeded, bruhat.BoundExceeded) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_GUARD


if __name__ == "__main__":
    sys.exit(main())
