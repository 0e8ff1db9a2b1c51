"""JSON and CSV forms of every value the CLI reads or writes.

Scalars always travel as exact strings.  Multi-indices used as JSON object
keys are written as compact arrays, e.g. ``"[1,0]"``.
"""

from __future__ import annotations

import csv
import io
import json

from .bellgroup import AdditiveFamily, GroupExponential
from .core import Measure, MultiIndex, Scalar, mi_enumerate
from .hypergroup import RecurrenceSpec
from .jets import Jet
from .moments import BinomialViolation, MomentSeed, MomentTable, VerificationReport


def mi_key(alpha) -> str:
    return json.dumps(list(alpha), separators=(",", ":"))


def parse_mi_key(text) -> MultiIndex:
    value = json.loads(text) if isinstance(text, str) else text
    if not isinstance(value, list):
        raise ValueError(f"multi-index must be a JSON array, got {text!r}")
    return MultiIndex(value)


def scalar_text(s) -> str:
    return str(Scalar.coerce(s))


def parse_scalar(value) -> Scalar:
    if isinstance(value, str):
        return Scalar.parse(value)
    if isinstance(value, int) and not isinstance(value, bool):
        return Scalar(value)
    raise ValueError(f"scalars must be exact strings such as \"1/2\", got {value!r}")


def _require(doc, *keys):
    if not isinstance(doc, dict):
        raise ValueError("expected a JSON object")
    missing = [k for k in keys if k not in doc]
    if missing:
        raise ValueError(f"missing field(s): {', '.join(missing)}")


def _indexed_values(doc, field):
    return {parse_mi_key(k): parse_scalar(v) for k, v in doc[field].items()}


# -- measures ---------------------------------------------------------------
def measure_to_json(mu: Measure) -> dict:
    return {"atoms": {str(k): scalar_text(w) for k, w in mu.items()}}


def measure_from_json(doc) -> Measure:
    _require(doc, "atoms")
    return Measure({int(k): parse_scalar(v) for k, v in doc["atoms"].items()})


# -- recurrence specs -------------------------------------------------------
def spec_to_json(spec: RecurrenceSpec) -> dict:
    if not spec.is_custom:
        raise ValueError("catalog recurrences are referenced by name, not serialized")
    return {
        "n_max": spec.n_max,
        "a": [scalar_text(x) for x in spec.a],
        "b": [scalar_text(x) for x in spec.b],
        "c": [scalar_text(x) for x in spec.c],
    }


def spec_from_json(doc) -> RecurrenceSpec:
    _require(doc, "n_max", "a", "b", "c")
    return RecurrenceSpec.from_tables(
        [parse_scalar(x) for x in doc["a"]],
        [parse_scalar(x) for x in doc["b"]],
        [parse_scalar(x) for x in doc["c"]],
        n_max=int(doc["n_max"]),
    )


# -- jets, seeds, families --------------------------------------------------
def jet_to_json(u: Jet) -> dict:
    return {
        "rank": u.rank,
        "order": u.order,
        "coeffs": {mi_key(k): scalar_text(v) for k, v in u.coeffs.items()},
    }


def jet_from_json(doc) -> Jet:
    _require(doc, "rank", "order", "coeffs")
    return Jet(int(doc["rank"]), int(doc["order"]), _indexed_values(doc, "coeffs"))


def seed_to_json(seed: MomentSeed) -> dict:
    values = {mi_key(a): scalar_text(seed.values[a]) for a in mi_enumerate(seed.rank, seed.order) if a in seed.values}
    return {"rank": seed.rank, "order": seed.order, "values": values}


def seed_from_json(doc) -> MomentSeed:
    _require(doc, "rank", "order", "values")
    return MomentSeed(int(doc["rank"]), int(doc["order"]), _indexed_values(doc, "values"))


def family_to_json(a: AdditiveFamily) -> dict:
    slopes = {mi_key(k): scalar_text(a.slopes[k]) for k in mi_enumerate(a.rank, a.order)[1:]}
    return {"rank": a.rank, "order": a.order, "slopes": slopes}


def family_from_json(doc) -> AdditiveFamily:
    _require(doc, "rank", "order", "slopes")
    return AdditiveFamily(int(doc["rank"]), int(doc["order"]), _indexed_values(doc, "slopes"))


def exponential_to_json(m: GroupExponential) -> dict:
    return {"base": scalar_text(m.base)}


def exponential_from_json(doc) -> GroupExponential:
    _require(doc, "base")
    return GroupExponential(parse_scalar(doc["base"]))


# -- tables -------------------------------------------------------------------
def table_to_json(table: MomentTable, approx: bool = False) -> dict:
    rows = []
    for alpha, n, v in table.entries():
        row = {"alpha": list(alpha), "n": n, "value": scalar_text(v)}
        if approx:
            row["approx"] = v.approx()
        rows.append(row)
    return {"rank": table.rank, "order": table.order, "n_max": table.n_max, "rows": rows}


def _table_from_rows(rows, rank=None, order=None, n_max=None) -> MomentTable:
    values = {}
    for alpha, n, v in rows:
        values[(alpha, n)] = v
    if not values:
        raise ValueError("empty moment table")
    if rank is None:
        rank = len(next(iter(values))[0])
    if order is None:
        order = max(sum(a) for a, _ in values)
    if n_max is None:
        n_max = max(n for _, n in values)
    return MomentTable(rank, order, n_max, values)


def table_from_json(doc) -> MomentTable:
    _require(doc, "rows")
    rows = [
        (MultiIndex(r["alpha"]), int(r["n"]), parse_scalar(r["value"])) for r in doc["rows"]
    ]
    return _table_from_rows(rows, doc.get("rank"), doc.get("order"), doc.get("n_max"))


def table_to_csv(table: MomentTable, approx: bool = False) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["alpha", "n", "value"] + (["approx"] if approx else []))
    for alpha, n, v in table.entries():
        w.writerow([mi_key(alpha), n, scalar_text(v)] + ([v.approx()] if approx else []))
    return buf.getvalue()


def table_from_csv(text: str) -> MomentTable:
    reader = csv.DictReader(io.StringIO(text))
    if reader.fieldnames is None or not {"alpha", "n", "value"} <= set(reader.fieldnames):
        raise ValueError("CSV moment table needs columns alpha, n, value")
    rows = [(parse_mi_key(r["alpha"]), int(r["n"]), parse_scalar(r["value"])) for r in reader]
    return _table_from_rows(rows)


# -- reports ----------------------------------------------------------------
def report_to_json(report: VerificationReport) -> dict:
    return {
        "checked": report.checked,
        "violations": [
            {
                "alpha": list(v.alpha),
                "n": v.n,
                "m": v.m,
                "lhs": scalar_text(v.lhs),
                "rhs": scalar_text(v.rhs),
            }
            for v in report.violations
        ],
    }


def report_from_json(doc) -> VerificationReport:
    _require(doc, "checked", "violations")
    return VerificationReport(
        checked=int(doc["checked"]),
        violations=[
            BinomialViolation(
                MultiIndex(v["alpha"]), int(v["n"]), int(v["m"]), parse_scalar(v["lhs"]), parse_scalar(v["rhs"])
            )
            for v in doc["violations"]
        ],
    )


def dumps(doc) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"
