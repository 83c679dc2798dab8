"""
Persistence of one-point, two-point and multipoint tables as JSON documents.

Rationals are written as ``"p/q"`` strings and every list is emitted in a fixed
order, so ``dumps(export(load(dumps(doc))))`` reproduces the original bytes.
"""
from __future__ import annotations

import json
from fractions import Fraction
from typing import Optional, Tuple

from .algebra import format_fraction, parse_fraction
from .ifunction import OnePointTable, Target, i_function_vector
from .multipoint import InvariantStore, canonical, solve_tuple
from .report import Check, Report
from .twopoint import TwoPointTable
from .verify import twopoint_suite

SCHEMA = "gwci-tables"
SCHEMA_VERSION = 1
#: Bumped whenever a sign or index convention of stored values changes.
CONVENTION_VERSION = 1
CONVENTIONS = {
    "one_point": "v(d)[j] is the coefficient of H^j t^-(df+j) in I_d",
    "two_point": "<H^a, H^b psi^k>_d with k = r + d f - 1 - a - b",
    "multipoint": "points sorted as (a, k) pairs",
}


class CacheError(ValueError):
    pass


class FingerprintMismatch(CacheError):
    pass


class SchemaVersionError(CacheError):
    pass


class MalformedRationalError(CacheError):
    pass


class ValidationError(CacheError):
    def __init__(self, report: Report):
        self.report = report
        super().__init__(f"cached table failed validation: {report.first_failure.describe()}")


def _q(text) -> Fraction:
    try:
        return parse_fraction(text)
    except ValueError as exc:
        raise MalformedRationalError(str(exc)) from None


def export_tables(target: Target, one: OnePointTable, table: TwoPointTable,
                  store: Optional[InvariantStore] = None) -> dict:
    doc = {
        "schema": SCHEMA,
        "schema_version": SCHEMA_VERSION,
        "convention_version": CONVENTION_VERSION,
        "conventions": CONVENTIONS,
        "target": target.fingerprint(),
        "one_point": [{"d": d, "v": [format_fraction(x) for x in one.v(d)]}
                      for d in one.degrees()],
        "two_point": {
            "filled": sorted(table.filled),
            "values": [{"d": d, "a": a, "b": b, "k": k, "value": format_fraction(v)}
                       for (d, a, b, k), v in sorted(table.values.items()) if v],
        },
        "multipoint": None,
    }
    if store is not None:
        doc["multipoint"] = {
            "max_points": store.max_points,
            "solved": [{"d": d, "powers": list(A)} for d, A in sorted(store._solved)],
            "values": [{"d": d, "points": [list(p) for p in key], "value": format_fraction(v)}
                       for (d, key), v in sorted(store.values.items()) if v],
        }
    return doc


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=1, sort_keys=True) + "\n"


def loads_document(text: str) -> dict:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CacheError(f"cache is not valid JSON: {exc}") from None
    if not isinstance(doc, dict) or doc.get("schema") != SCHEMA:
        raise CacheError(f"not a {SCHEMA} document")
    if doc.get("schema_version") != SCHEMA_VERSION:
        raise SchemaVersionError(
            f"schema version {doc.get('schema_version')!r} is not supported (expected {SCHEMA_VERSION})")
    if doc.get("convention_version") != CONVENTION_VERSION:
        raise SchemaVersionError(
            f"convention version {doc.get('convention_version')!r} is not supported "
            f"(expected {CONVENTION_VERSION})")
    return doc


def import_tables(doc: dict, target: Target, validate: bool = True
                  ) -> Tuple[OnePointTable, TwoPointTable, Optional[InvariantStore]]:
    """
    Rebuild the tables of ``target`` from a document.

    With ``validate`` the identities of :func:`validation_report` are re-run and
    :class:`ValidationError` is raised on the first failure.
    """
    if doc.get("target") != target.fingerprint():
        raise FingerprintMismatch(
            f"cache was written for {doc.get('target')}, requested {target.fingerprint()}")
    try:
        one = OnePointTable(target, {e["d"]: [_q(x) for x in e["v"]] for e in doc["one_point"]})
        table = TwoPointTable(target, one)
        tp = doc["two_point"]
        for e in tp["values"]:
            table.values[(e["d"], e["a"], e["b"], e["k"])] = _q(e["value"])
        table.filled = set(tp["filled"])
        store = None
        mp = doc.get("multipoint")
        if mp is not None:
            store = InvariantStore(target, max_points=mp["max_points"], one=one)
            for e in mp["values"]:
                store.values[(e["d"], canonical([tuple(p) for p in e["points"]]))] = _q(e["value"])
            store._solved = {(e["d"], tuple(e["powers"])) for e in mp["solved"]}
    except (KeyError, TypeError) as exc:
        raise CacheError(f"malformed cache document: missing or invalid field {exc}") from None
    if validate:
        rep = validation_report(target, one, table, store)
        if not rep.ok:
            raise ValidationError(rep)
    return one, table, store


def one_point_report(target: Target, one: OnePointTable) -> Report:
    rep = Report()
    for d in one.degrees():
        rep.add(Check("one-point closed form", {"target": str(target), "d": d},
                      list(one.v(d)), i_function_vector(target, d)))
    return rep


def validation_report(target: Target, one: OnePointTable, table: TwoPointTable,
                      store: Optional[InvariantStore] = None) -> Report:
    """
    One-point vectors against the closed form, the two-point identity and
    polynomiality suites, and every multipoint group re-solved from its stored
    lower-order data.
    """
    rep = one_point_report(target, one)
    if table.filled:
        rep.merge(twopoint_suite(target, table, max(table.filled)))
    if store is not None:
        for d, A in sorted(store._solved):
            fresh = solve_tuple(store, list(A[:-1]), A[-1], d)
            keys = set(fresh) | {key for (dd, key), _ in store.values.items()
                                 if dd == d and tuple(sorted(a for a, _ in key)) == A}
            for key in sorted(keys):
                rep.add(Check("multipoint re-solve", {"target": str(target), "d": d, "points": key},
                              store.values.get((d, key), Fraction(0)), fresh.get(key, Fraction(0))))
    return rep
