"""Command line front end: ``linsets <subcommand> ...``.

Exit status: 0 on success, 1 when a check fails, 2 on usage or input errors.
"""
import argparse
import csv
import io as _io
import json
import sys

from .cyclic_model import check_inclusion, check_projection, check_thm_final, decompose
from .directions import (
    check_dir_theorem, dir_set, direction_trichotomy, function_tower, line_profile,
)
from .duality import dual_subspace
from .errors import LinsetError
from .examples_bounds import (
    check_example_new, check_lemma_nw, example_new, remark_example,
)
from .field_tower import tower_for
from .fq_linalg import random_fqd_subspace, random_subspace, span
from .harness import CHECKS, CaseRunner, SweepConfig, load_config, run_sweep
from .io import format_subspace, parse_function_table, parse_subspace
from .linset_core import field_of_linearity_by_closure, linear_set


class UsageError(Exception):
    pass


def _read_text(path):
    if path in (None, "-"):
        return sys.stdin.read()
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(str(exc))


def _load_subspace(path):
    try:
        return parse_subspace(_read_text(path))
    except ValueError as exc:
        raise UsageError(f"bad subspace file: {exc}")


def _flatten(d, prefix=""):
    for k, v in d.items():
        key = f"{prefix}{k}"
        if isinstance(v, dict):
            yield from _flatten(v, key + ".")
        elif isinstance(v, list):
            yield key, " ".join(map(str, v))
        else:
            yield key, v


def _emit(args, payload):
    if args.format == "csv":
        buf = _io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["key", "value"])
        for k, v in _flatten(payload):
            w.writerow([k, v])
        text = buf.getvalue()
    else:
        text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    _write(args.out, text)


def _write(path, text):
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def analyze_payload(U):
    L = linear_set(U)
    flags = list(L.flags)
    payload = {"rank": U.fq_dim, "size": len(L),
               "spectrum": {str(w): c for w, c in sorted(L.spectrum().items())}}
    if len(L):
        fol = field_of_linearity_by_closure(U, L)
        payload["min_weight"] = L.min_weight()
        payload["field_of_linearity"] = fol.degree
        if fol.unproven_maximal:
            flags.append("unproven_maximal")
    else:
        payload["min_weight"] = None
        payload["field_of_linearity"] = None
    payload["flags"] = flags
    return payload


def cmd_gen(args):
    T = tower_for(args.q, args.n)
    if args.e == 1:
        U = random_subspace(T, args.r, args.m, args.seed)
    else:
        U = random_fqd_subspace(T, args.r, args.e, args.m, args.seed)
    _write(args.out, format_subspace(U))
    return 0


def cmd_analyze(args):
    U = _load_subspace(args.file)
    payload = analyze_payload(U)
    status = 0
    if args.check:
        runner = CaseRunner(SweepConfig(), U.tower, U.r, args.seed)
        out = runner.run(U, args.check, linear_set(U), {})
        payload["check"] = {"name": args.check, "status": out.status if out else "skipped",
                            "details": out.details if out else {}}
        status = 1 if out is not None and out.status == "fail" else 0
    _emit(args, payload)
    return status


def cmd_dual(args):
    U = _load_subspace(args.file)
    _write(args.out, format_subspace(dual_subspace(U)))
    return 0


def cmd_directions(args):
    if args.table:
        if args.p is None or args.h is None:
            raise UsageError("--table needs --p and --h")
        T = function_tower(args.p, args.h)
        try:
            table = parse_function_table(_read_text(args.table))
        except ValueError as exc:
            raise UsageError(f"bad function table: {exc}")
        res = direction_trichotomy(T, table)
        _emit(args, res.to_dict())
        return 0 if res.status == "pass" else 1
    U = _load_subspace(args.file)
    D = dir_set(U)
    prof = line_profile(U)
    payload = {"N": len(D), "line_profile": {str(k): v for k, v in prof.items()},
               "w": min(prof) if prof else None}
    status = 0
    T = U.tower
    checks = {}
    if U.fq_dim and U.fq_dim % T.n == 0:
        checks["a"] = check_dir_theorem(U, "a").status
    if T.q >= T.n:
        checks["b"] = check_dir_theorem(U, "b").status
    payload["checks"] = checks
    if "fail" in checks.values():
        status = 1
    _emit(args, payload)
    return status


def cmd_cyclic(args):
    U = _load_subspace(args.file)
    dec = decompose(U)
    checks = {"inclusion": check_inclusion(dec).status,
              "projection": check_projection(dec).status,
              "final": check_thm_final(U, dec).status}
    payload = dec.summary()
    payload["checks"] = checks
    _emit(args, payload)
    return 1 if "fail" in checks.values() else 0


def cmd_examples(args):
    if args.which == "remark":
        U = remark_example(args.q)
        L = linear_set(U)
        report = {"which": "remark", "rank": U.fq_dim, "size": len(L),
                  "min_weight": L.min_weight(),
                  "field_of_linearity": field_of_linearity_by_closure(U, L).degree,
                  "status": "pass"}
    elif args.which == "new":
        ex = example_new(args.q, args.k, args.seed)
        out = check_example_new(ex)
        U = ex.U
        report = {"which": "new", "status": out.status, **out.details}
    else:
        T = tower_for(args.q, 2 * args.k)
        U = span(T, 2, [(1, 0), (0, 1)], args.k)
        out = check_lemma_nw(U, args.k)
        report = {"which": "nw", "status": out.status, **out.details}
    _write(args.out, format_subspace(U))
    text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    if args.report:
        with open(args.report, "w") as fh:
            fh.write(text)
    else:
        sys.stderr.write(text)
    return 1 if report["status"] == "fail" else 0


def cmd_sweep(args):
    try:
        cfg = load_config(args.config, seed=args.seed, mode=args.mode, samples=args.samples,
                          workers=args.workers)
    except FileNotFoundError as exc:
        raise UsageError(str(exc))
    except (ValueError, KeyError) as exc:
        raise UsageError(f"bad config: {exc}")
    rep = run_sweep(cfg)
    _write(args.out, rep.to_csv() if args.format == "csv" else rep.to_json())
    return 0 if rep.ok else 1


def build_parser():
    ap = argparse.ArgumentParser(prog="linsets", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="cmd", required=True)

    def common(p):
        p.add_argument("--format", choices=("json", "csv"), default="json")
        p.add_argument("--out", default=None)
        return p

    g = common(sub.add_parser("gen", help="random subspace file"))
    g.add_argument("--q", type=int, required=True)
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--r", type=int, required=True)
    g.add_argument("--m", type=int, required=True, help="dimension over F_{q^e}")
    g.add_argument("--e", type=int, default=1)
    g.add_argument("--seed", type=int, default=0)
    g.set_defaults(func=cmd_gen)

    a = common(sub.add_parser("analyze", help="rank, spectrum, field of linearity"))
    a.add_argument("file", nargs="?", default="-")
    a.add_argument("--check", choices=[c for c in CHECKS if c != "trichotomy"])
    a.add_argument("--seed", type=int, default=0)
    a.set_defaults(func=cmd_analyze)

    d = common(sub.add_parser("dual", help="trace dual of a subspace"))
    d.add_argument("file", nargs="?", default="-")
    d.set_defaults(func=cmd_dual)

    r = common(sub.add_parser("directions", help="directions of a subspace or additive map"))
    r.add_argument("file", nargs="?", default="-")
    r.add_argument("--table", default=None)
    r.add_argument("--p", type=int)
    r.add_argument("--h", type=int)
    r.set_defaults(func=cmd_directions)

    c = common(sub.add_parser("cyclic", help="cyclic-model decomposition and checks"))
    c.add_argument("file", nargs="?", default="-")
    c.set_defaults(func=cmd_cyclic)

    e = common(sub.add_parser("examples", help="named constructions"))
    e.add_argument("--which", choices=("remark", "new", "nw"), required=True)
    e.add_argument("--q", type=int, required=True)
    e.add_argument("--k", type=int, default=1)
    e.add_argument("--seed", type=int, default=0)
    e.add_argument("--report", default=None)
    e.set_defaults(func=cmd_examples)

    s = common(sub.add_parser("sweep", help="run a verification sweep"))
    s.add_argument("--config", required=True)
    s.add_argument("--seed", type=int)
    s.add_argument("--mode", choices=("exhaustive", "random"))
    s.add_argument("--samples", type=int)
    s.add_argument("--workers", type=int)
    s.set_defaults(func=cmd_sweep)
    return ap


def main(argv=None):
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except LinsetError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
