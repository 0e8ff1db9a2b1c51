"""Command-line front end.

Exit codes: 0 success, 1 an identity was violated, 2 usage or data error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import tempfile
from fractions import Fraction
from pathlib import Path

from . import serialize as ser
from .bellgroup import (
    AdditiveFamily,
    GroupExponential,
    aczel_rank1,
    faa_di_bruno_check,
    group_moment,
    verify_group_binomial,
)
from .core import Measure, MultiIndex, Scalar, mi_enumerate
from .errors import HypermomentError
from .hypergroup import CATALOG, Hypergroup, catalog
from .jets import Jet
from .moments import moment_table, verify_binomial

CACHE_ENV = "HYPERMOMENT_CACHE_DIR"

EXIT_OK, EXIT_VIOLATION, EXIT_ERROR = 0, 1, 2


class UsageError(Exception):
    pass


# -- helpers ------------------------------------------------------------------
def _read_json(source):
    text = source
    if not source.lstrip().startswith(("{", "[")):
        text = Path(source).read_text()
    return json.loads(text)


def _hypergroup(args) -> Hypergroup:
    if args.spec:
        return Hypergroup(ser.spec_from_json(_read_json(args.spec)))
    return Hypergroup(catalog(args.hypergroup or "chebyshev1"))


def _cache_path(H):
    root = os.environ.get(CACHE_ENV)
    if not root:
        return None
    return Path(root) / f"{H.name}.json"


def _load_cache(H):
    path = _cache_path(H)
    if path is None or not path.exists():
        return
    try:
        doc = json.loads(path.read_text())
        entries = {}
        for key, mu in doc.get("linearizations", {}).items():
            n, m = (int(x) for x in key.split(","))
            entries[(n, m)] = ser.measure_from_json(mu)
    except (ValueError, OSError) as exc:
        print(f"warning: ignoring unreadable cache {path}: {exc}", file=sys.stderr)
        return
    H.import_linearizations(entries)


def _save_cache(H):
    path = _cache_path(H)
    if path is None:
        return
    entries = H.export_linearizations()
    doc = {
        "hypergroup": H.name,
        "linearizations": {
            f"{n},{m}": ser.measure_to_json(entries[(n, m)]) for n, m in sorted(entries)
        },
    }
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=".tmp-", suffix=".json")
    with os.fdopen(fd, "w") as fh:
        json.dump(doc, fh, indent=1)
    os.replace(tmp, path)


def _emit(args, text):
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def _csv(header, rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _measure_out(args, mu: Measure):
    if args.format == "csv":
        return _csv(["k", "weight"], [[k, str(w)] for k, w in mu.items()])
    return ser.dumps(ser.measure_to_json(mu))


def _report_out(args, report):
    if args.format == "csv":
        return _csv(
            ["alpha", "n", "m", "lhs", "rhs"],
            [[ser.mi_key(v.alpha), v.n, v.m, str(v.lhs), str(v.rhs)] for v in report.violations],
        )
    return ser.dumps(ser.report_to_json(report))


def _load_seed(args):
    if not args.seed:
        raise UsageError("--seed FILE is required")
    seed = ser.seed_from_json(_read_json(args.seed))
    if args.rank is not None and args.rank != seed.rank:
        raise UsageError(f"--rank {args.rank} disagrees with seed rank {seed.rank}")
    if args.order is not None and args.order != seed.order:
        raise UsageError(f"--order {args.order} disagrees with seed order {seed.order}")
    seed.require_complete()
    return seed


def _natural(name, value, minimum=0):
    if value is None:
        raise UsageError(f"--{name} is required")
    if value < minimum:
        raise UsageError(f"--{name} must be >= {minimum}")
    return value


# -- commands -----------------------------------------------------------------
def cmd_catalog(args):
    if args.format == "json":
        doc = {"catalog": [{"name": k, "coefficients": v[1]} for k, v in CATALOG.items()]}
        _emit(args, ser.dumps(doc))
    elif args.format == "csv":
        _emit(args, _csv(["name", "coefficients"], [[k, v[1]] for k, v in CATALOG.items()]))
    else:
        width = max(len(k) for k in CATALOG)
        _emit(args, "".join(f"{k:<{width}}  {v[1]}\n" for k, v in CATALOG.items()))
    return EXIT_OK


def cmd_linearize(args):
    H = _hypergroup(args)
    _load_cache(H)
    mu = H.linearize(_natural("n", args.n), _natural("m", args.m))
    _save_cache(H)
    _emit(args, _measure_out(args, mu))
    return EXIT_OK


def cmd_convolve(args):
    H = _hypergroup(args)
    _load_cache(H)
    if args.mu:
        mu = ser.measure_from_json(_read_json(args.mu))
    else:
        mu = Measure.point(_natural("n", args.n))
    if args.nu:
        nu = ser.measure_from_json(_read_json(args.nu))
    else:
        nu = Measure.point(_natural("m", args.m))
    out = H.convolve(mu, nu)
    _save_cache(H)
    _emit(args, _measure_out(args, out))
    return EXIT_OK


def cmd_moments(args):
    H = _hypergroup(args)
    seed = _load_seed(args)
    table = moment_table(H, seed, _natural("nmax", args.nmax))
    if args.format == "csv":
        _emit(args, ser.table_to_csv(table, approx=args.approx))
    else:
        _emit(args, ser.dumps(ser.table_to_json(table, approx=args.approx)))
    return EXIT_OK


def cmd_verify(args):
    H = _hypergroup(args)
    _load_cache(H)
    n_max = _natural("nmax", args.nmax)
    m_max = args.mmax if args.mmax is not None else n_max
    if args.seed and args.table:
        raise UsageError("give either --seed or --table, not both")
    if args.table:
        source = args.table
        if source.endswith(".csv"):
            table = ser.table_from_csv(Path(source).read_text())
        else:
            table = ser.table_from_json(_read_json(source))
    else:
        seed = _load_seed(args)
        table = moment_table(H, seed, n_max + m_max)
    report = verify_binomial(H, table, n_max, m_max)
    _save_cache(H)
    _emit(args, _report_out(args, report))
    return EXIT_OK if report.passed else EXIT_VIOLATION


def _default_family(rank, order):
    # deterministic, nonzero, sign-alternating slopes
    slopes = {}
    for i, alpha in enumerate(mi_enumerate(rank, order)[1:]):
        slopes[alpha] = Scalar(Fraction((-1) ** i * (i + 1), i + 2))
    return AdditiveFamily(rank, order, slopes)


def cmd_bell_check(args):
    if args.family:
        family = ser.family_from_json(_read_json(args.family))
    else:
        family = _default_family(args.rank or 1, args.order if args.order is not None else 3)
    bases = [Scalar.parse(args.base)] if args.base else [Scalar(1), Scalar.parse("2/3")]
    x_max = args.nmax if args.nmax is not None else 4
    H = _hypergroup(args)
    checks = []

    for q in bases:
        rep = verify_group_binomial(family, GroupExponential(q), family.order, x_max)
        entry = ser.report_to_json(rep)
        checks.append({"name": f"group-binomial base={q}", "passed": rep.passed, **entry})

    if family.rank == 1:
        bad = []
        count = 0
        one = GroupExponential(Scalar(1))
        for n in range(family.order + 1):
            for x in range(2 * x_max + 1):
                lhs = aczel_rank1(n, x, family)
                rhs = group_moment((n,), x, family, one)
                count += 1
                if lhs != rhs:
                    bad.append({"n": n, "x": x, "aczel": str(lhs), "bell": str(rhs)})
        checks.append({"name": "aczel-vs-bell", "passed": not bad, "checked": count, "violations": bad})

    # f = q + sum slope_alpha t^alpha / alpha!
    f = Jet(
        family.rank,
        family.order,
        {MultiIndex.zero(family.rank): bases[-1], **{a: s / a.factorial() for a, s in family.slopes.items()}},
    )
    bad = []
    count = 0
    for n in range(x_max + 1):
        for alpha in mi_enumerate(family.rank, family.order):
            dec, direct = faa_di_bruno_check(H, n, f, alpha)
            count += 1
            if dec != direct:
                bad.append({"n": n, "alpha": list(alpha), "decomposed": str(dec), "direct": str(direct)})
    checks.append({"name": "faa-di-bruno", "passed": not bad, "checked": count, "violations": bad})

    passed = all(c["passed"] for c in checks)
    _emit(args, ser.dumps({"passed": passed, "checks": checks}))
    return EXIT_OK if passed else EXIT_VIOLATION


# -- parser -------------------------------------------------------------------
def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hypermoment",
        description="Exact polynomial hypergroup linearization and moment function sequences.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, *, formats=("json", "csv"), default="json"):
        src = p.add_mutually_exclusive_group()
        src.add_argument("--hypergroup", metavar="NAME", help=f"catalog entry: {', '.join(CATALOG)}")
        src.add_argument("--spec", metavar="FILE", help="custom recurrence JSON")
        p.add_argument("--format", choices=formats, default=default)
        p.add_argument("--out", metavar="FILE", help="write here instead of stdout")
        p.add_argument("--n", type=int)
        p.add_argument("--m", type=int)
        p.add_argument("--nmax", type=int)
        p.add_argument("--mmax", type=int)
        p.add_argument("--rank", type=int)
        p.add_argument("--order", type=int)
        p.add_argument("--seed", metavar="FILE", help="moment seed JSON")
        p.add_argument("--approx", action="store_true", help="add a non-authoritative decimal column")
        return p

    common(sub.add_parser("catalog", help="list catalog hypergroups"), formats=("text", "json", "csv"), default="text").set_defaults(func=cmd_catalog)
    common(sub.add_parser("linearize", help="delta_n * delta_m")).set_defaults(func=cmd_linearize)
    p = common(sub.add_parser("convolve", help="convolution of two measures"))
    p.add_argument("--mu", metavar="FILE|JSON", help="left measure (default: point mass at --n)")
    p.add_argument("--nu", metavar="FILE|JSON", help="right measure (default: point mass at --m)")
    p.set_defaults(func=cmd_convolve)
    common(sub.add_parser("moments", help="generate a moment table from a seed")).set_defaults(func=cmd_moments)
    p = common(sub.add_parser("verify", help="check the binomial identity on a table"))
    p.add_argument("--table", metavar="FILE", help="moment table (JSON, or CSV by .csv suffix)")
    p.set_defaults(func=cmd_verify)
    p = common(sub.add_parser("bell-check", help="run the group-case oracle suite"))
    p.add_argument("--family", metavar="FILE", help="additive family JSON")
    p.add_argument("--base", metavar="Q", help="exponential base (default: run 1 and 2/3)")
    p.set_defaults(func=cmd_bell_check)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (HypermomentError, UsageError, ValueError, KeyError, OSError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
    return EXIT_ERROR


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
