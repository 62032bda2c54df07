"""Command-line front end.

Exit codes: 0 success, 1 mathematical refusal (ConditionViolated, NotApplicable,
Unsupported), 2 usage or parse error, 3 search guard tripped. ``bench
exhaustive`` exits 1 when the sweep records any failure.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time

from .coefficients import Spq, parse_domain
from .errors import ConditionViolated, NotApplicable, ParseError, SearchLimitExceeded, Unsupported
from .goldbach import certificate_json, goldbach_decompose
from .groups import parse_group
from .parsing import parse_expr, print_expr
from .polyexpr import FACTOR_SEARCH_LIMIT, factor_search, is_irreducible, is_monolithic, poly_sum
from .series import (
    CONSTRUCTION_DEPTH,
    SAMPLE_DEPTH,
    load_series_spec,
    prefix_sum_identity,
    validate_certificate,
    weak_goldbach_series,
)
from .spq import bounded_atom_refutation, bounded_decomposition_search, verify_identity
from .sweep import natural_instances, random_lex_instances, run_sweep

EXIT_OK, EXIT_REFUSED, EXIT_USAGE, EXIT_LIMIT = 0, 1, 2, 3


class UsageError(Exception):
    pass


def emit(out, args, doc: dict, lines: list[str]) -> None:
    if args.json:
        out.write(json.dumps(doc, indent=2, ensure_ascii=False) + "\n")
    else:
        for line in lines:
            out.write(line + "\n")


# --------------------------------------------------------------------------
# poly subcommands


def _ring(args):
    try:
        return parse_domain(args.coeff), parse_group(args.group)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _parse_all(args, texts):
    dom, grp = _ring(args)
    return [parse_expr(t, dom, grp) for t in texts]


def _irred_line(f, cert) -> str:
    if cert.reason == "common-divisor":
        return "reducible (gcd clause)"
    if cert.reason == "not-monolithic":
        p, q = cert.monolithic.witness
        return f"reducible (factors as ({p}) * ({q}))"
    if cert.reason == "monomial-composite":
        return "reducible (monomial with a composite coefficient)"
    if cert.reason == "monomial-atom":
        return "irreducible (monomial with an atom coefficient)"
    return f"irreducible (monolithic: {cert.monolithic.kind.value}; coefficient gcd is a unit)"


def cmd_poly(args, out) -> int:
    if args.op in ("add", "mul"):
        if not args.exprs:
            raise UsageError(f"poly {args.op} needs at least one expression")
        fs = _parse_all(args, args.exprs)
        if args.op == "add":
            r = poly_sum(fs, fs[0].domain, fs[0].group)
        else:
            r = fs[0]
            for g in fs[1:]:
                r = r * g
        s = print_expr(r)
        emit(out, args, {"input": args.exprs, "canonical": s}, [s])
        return EXIT_OK
    if len(args.exprs) != 1:
        raise UsageError(f"poly {args.op} takes exactly one expression")
    (text,) = args.exprs
    (f,) = _parse_all(args, [text])
    canon = print_expr(f)
    doc = {"input": text, "canonical": canon}
    if args.op == "eval":
        emit(out, args, doc, [canon])
    elif args.op == "irred":
        ok, cert = is_irreducible(f, args.limit)
        doc.update(irreducible=ok, certificates=[cert.to_json(f.domain)])
        emit(out, args, doc, [_irred_line(f, cert)])
    elif args.op == "monolithic":
        ok, cert = is_monolithic(f, args.limit)
        doc.update(monolithic=ok, certificates=[cert.to_json()])
        if ok:
            line = f"monolithic ({cert.kind.value})"
        else:
            p, q = cert.witness
            line = f"not monolithic: ({p}) * ({q})"
        emit(out, args, doc, [line])
    elif args.op == "factor":
        pairs = factor_search(f, args.limit)
        doc["factorizations"] = [[str(p), str(q)] for p, q in pairs]
        lines = [f"({p}) * ({q})" for p, q in pairs] or ["no factorization into two non-monomial factors"]
        emit(out, args, doc, lines)
    elif args.op == "goldbach":
        dec = goldbach_decompose(f, certify=True, limit=args.limit)
        doc.update(
            summands=[str(s) for s in dec.summands],
            certificates=[certificate_json(s, c) for s, c in zip(dec.summands, dec.certificates)],
            trace=dec.trace,
        )
        lines = [str(s) for s in dec.summands]
        lines.append("certificates:")
        for s, c in zip(dec.summands, dec.certificates):
            lines.append(f"  {s}: {_irred_line(s, c)}")
        emit(out, args, doc, lines)
    return EXIT_OK


# --------------------------------------------------------------------------
# series


def cmd_series(args, out) -> int:
    try:
        f = load_series_spec(args.file)
    except (OSError, KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"cannot read series spec {args.file}: {exc}") from exc
    dec = weak_goldbach_series(f, shortcut=not args.no_shortcut)
    same, cutoff = prefix_sum_identity(f, dec.summands, args.depth)
    checks = [validate_certificate(s, c, args.sample) for s, c in zip(dec.summands, dec.certificates)]
    doc = {
        "input": f.to_spec(),
        "canonical": f.fmt(args.show),
        "summands": [s.fmt(args.show) for s in dec.summands],
        "certificates": [
            dict(c.to_json(), facts=s.facts.to_json(), sampled_problems=p)
            for s, c, p in zip(dec.summands, dec.certificates, checks)
        ],
        "trace": dec.trace,
        "prefix_identity": {"holds": same, "depth": args.depth, "cutoff_exponent": cutoff},
    }
    lines = [f"f = {f.fmt(args.show)}"]
    for s, c, p in zip(dec.summands, dec.certificates, checks):
        status = "ok" if not p else "FAILED: " + "; ".join(p)
        lines.append(f"{getattr(s, 'label', 'f')} = {s.fmt(args.show)}")
        lines.append(f"  certificate {c.kind.value} (index {c.index}), sampled to depth {args.sample}: {status}")
    lines.append(f"prefix-sum identity to depth {args.depth} (exponents <= {cutoff}): {'holds' if same else 'FAILS'}")
    lines.extend(f"trace: {t}" for t in dec.trace)
    emit(out, args, doc, lines)
    return EXIT_OK if same and not any(checks) else EXIT_REFUSED


# --------------------------------------------------------------------------
# spq


def cmd_spq(args, out) -> int:
    rows = []
    ident = verify_identity(args.p, args.q)
    dom = Spq(args.p, args.q)
    rows.append(("identity B = A*B + A^2", "ok" if ident["identity"] else "FAIL"))
    rows.append((f"order A={ident['A']} < 1 < B={ident['B']}", "ok" if ident["order"] else "FAIL"))
    rng = random.Random(args.seed)
    bad = 0
    for _ in range(args.splits):
        d = {(rng.randint(0, 3), rng.randint(0, 3)): rng.randint(1, 3) for _ in range(rng.randint(1, 3))}
        elem = Spq.from_dict(d)
        a, b = dom.furstenberg_split(elem)
        if dom.value(dom.add(a, b)) != dom.value(elem) or not dom.is_additive_atom(a):
            bad += 1
    rows.append((f"{args.splits} random atom splits round-trip", "ok" if not bad else f"FAIL ({bad})"))
    anomalies = bad + (not ident["identity"]) + (not ident["order"])
    for k in range(args.kmax + 1):
        res = bounded_atom_refutation(dom, k, args.bound, args.parts)
        tag = "no split found" if not res.found else "SPLIT FOUND"
        anomalies += res.found
        rows.append((f"A^{k} (bound {args.bound}, parts {args.parts}, {res.nodes} nodes)", tag))
    ctrl = bounded_decomposition_search(dom, Spq.gen(0, 1), args.bound, args.parts)
    anomalies += not ctrl.found
    rows.append(("positive control: B splits", "found" if ctrl.found else "MISSED"))
    doc = {
        "input": {"p": args.p, "q": args.q, "kmax": args.kmax, "bound": args.bound, "parts": args.parts},
        "rows": [{"check": c, "outcome": o} for c, o in rows],
        "anomalies": anomalies,
    }
    width = max(len(c) for c, _ in rows)
    lines = [f"{c.ljust(width)}  {o}" for c, o in rows]
    lines.append(f"anomalies: {anomalies}")
    emit(out, args, doc, lines)
    return EXIT_OK if not anomalies else EXIT_REFUSED


# --------------------------------------------------------------------------
# bench


def cmd_bench(args, out) -> int:
    start = time.perf_counter()
    report = run_sweep(natural_instances(args.max_exp, args.max_coeff), cross_checks=not args.fast)
    rows = [("sweep N_0[Z]", report)]
    if args.lex:
        rows.append(("lex N_0[Z^2]", run_sweep(random_lex_instances(args.lex, seed=args.seed), cross_checks=False)))
    elapsed = time.perf_counter() - start
    doc = {"input": vars_for_json(args), "reports": {}}
    lines = []
    for name, rep in rows:
        doc["reports"][name] = dict(rep.rows())
        lines.append(name)
        lines.extend(f"  {k:<28}{v}" for k, v in rep.rows())
        for msg in (rep.failures + rep.exception_mismatches + rep.equivalence_mismatches + rep.criterion_counterexamples)[:10]:
            lines.append(f"  ! {msg}")
    if args.timing:
        lines.append(f"elapsed {elapsed:.1f}s")
    emit(out, args, doc, lines)
    return EXIT_OK if all(rep.ok for _, rep in rows) else EXIT_REFUSED


def vars_for_json(args) -> dict:
    return {k: v for k, v in sorted(vars(args).items()) if k not in ("handler", "json")}


# --------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print one JSON document")

    ap = _Parser(prog="groupsemi", description="Irreducibles and additive decompositions in S[G].")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    poly = sub.add_parser("poly", parents=[common], help="polynomial commands")
    poly.add_argument("op", choices=["eval", "add", "mul", "irred", "monolithic", "factor", "goldbach"])
    poly.add_argument("exprs", nargs="+", metavar="EXPR")
    poly.add_argument("--coeff", default="nat", help="nat | natpoly | spq:P,Q")
    poly.add_argument("--group", default="z", help="z | zvec:N")
    poly.add_argument("--limit", type=int, default=FACTOR_SEARCH_LIMIT, help="factor-search size guard")
    poly.set_defaults(handler=cmd_poly)

    series = sub.add_parser("series", parents=[common], help="series commands")
    series.add_argument("op", choices=["goldbach"])
    series.add_argument("file", help="JSON series spec")
    series.add_argument("--depth", type=int, default=CONSTRUCTION_DEPTH, help="prefix-identity depth")
    series.add_argument("--sample", type=int, default=SAMPLE_DEPTH, help="certificate sampling depth")
    series.add_argument("--show", type=int, default=8, help="terms printed per series")
    series.add_argument("--no-shortcut", action="store_true", help="run the construction even if f is irreducible")
    series.set_defaults(handler=cmd_series)

    spq = sub.add_parser("spq", parents=[common], help="bounded checks in N_0[A, B]")
    spq.add_argument("op", choices=["verify"])
    spq.add_argument("--p", type=int, required=True)
    spq.add_argument("--q", type=int, required=True)
    spq.add_argument("--kmax", type=int, default=4)
    spq.add_argument("--bound", type=int, default=4)
    spq.add_argument("--parts", type=int, default=6)
    spq.add_argument("--splits", type=int, default=50)
    spq.add_argument("--seed", type=int, default=0)
    spq.set_defaults(handler=cmd_spq)

    bench = sub.add_parser("bench", parents=[common], help="exhaustive sweeps")
    bench.add_argument("op", choices=["exhaustive"])
    bench.add_argument("--max-exp", type=int, default=5)
    bench.add_argument("--max-coeff", type=int, default=4)
    bench.add_argument("--lex", type=int, default=500, help="random Z^2 instances (0 to skip)")
    bench.add_argument("--seed", type=int, default=0)
    bench.add_argument("--fast", action="store_true", help="skip the irreducibility cross-checks")
    bench.add_argument("--timing", action="store_true", help="print elapsed time (output no longer deterministic)")
    bench.set_defaults(handler=cmd_bench)
    return ap


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    args = None
    try:
        args = build_parser().parse_args(argv)
        return args.handler(args, out)
    except UsageError as exc:
        err.write(f"usage error: {exc}\n")
        return EXIT_USAGE
    except ParseError as exc:
        err.write(f"parse error: {exc}\n")
        return EXIT_USAGE
    except (ConditionViolated, NotApplicable, Unsupported) as exc:
        if args is not None and args.json:
            given = getattr(args, "exprs", None) or getattr(args, "file", None)
            doc = {"input": given[0] if isinstance(given, list) and len(given) == 1 else given}
            doc["error"] = {"type": type(exc).__name__, "message": str(exc)}
            out.write(json.dumps(doc, indent=2, ensure_ascii=False) + "\n")
        else:
            out.write(f"refused: {type(exc).__name__}: {exc}\n")
        return EXIT_REFUSED
    except SearchLimitExceeded as exc:
        err.write(f"search limit: {exc}\n")
        return EXIT_LIMIT


if __name__ == "__main__":
    sys.exit(main())
