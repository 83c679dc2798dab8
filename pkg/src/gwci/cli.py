"""
Command-line interface.

    gwci qh --ambient 6 --degrees 5
    gwci invariant --ambient 6 --degrees 5 --two 5 5 0 3
    gwci invariant --ambient 6 --degrees 5 --npoint "1:0,2:0,4:0 1"
    gwci count --ambient 6 --degrees 5 --through-two-points 3
    gwci verify --ambient 6 --degrees 5 --multipoint
    gwci verify --grid 8
    gwci cache export --ambient 6 --degrees 5 --cache quintic.json
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import List, Optional, Sequence, TextIO, Tuple

from . import cache as cache_io
from .algebra import format_fraction
from .ifunction import OnePointTable, Target, TargetError, validate_target
from .multipoint import BoundsError, InvariantStore, UnstableError, expected_dimension
from .quantum import (QuantumRing, DimensionConditionError, render_table, table_document,
                      two_point_count)
from .report import Report
from .twopoint import TwoPointTable, psi_index
from .verify import fano_grid, full_suite, multipoint_suite

FORMATS = ("human", "machine")


class UsageError(ValueError):
    pass


def parse_degrees(text: Optional[str]) -> Tuple[int, ...]:
    if text is None or text.strip() == "":
        return ()
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise UsageError(f"--degrees expects comma-separated integers, got {text!r}") from None


def parse_npoint(text: str) -> Tuple[List[Tuple[int, int]], int]:
    """``"a1:k1,a2:k2,... d"`` -> ``([(a1, k1), ...], d)``."""
    parts = text.split()
    if len(parts) != 2:
        raise UsageError(f"--npoint expects \"a1:k1,a2:k2,... d\", got {text!r}")
    try:
        pairs = []
        for item in parts[0].split(","):
            a, sep, k = item.partition(":")
            pairs.append((int(a), int(k) if sep else 0))
        return pairs, int(parts[1])
    except ValueError:
        raise UsageError(f"--npoint expects integers, got {text!r}") from None


@dataclass
class RunConfig:
    subcommand: str
    ambient: Optional[int] = None
    degrees: Tuple[int, ...] = ()
    max_degree: Optional[int] = None
    max_points: Optional[int] = None
    format: str = "human"
    cache: Optional[str] = None
    action: Optional[str] = None
    one: Optional[Tuple[int, int, int]] = None
    two: Optional[Tuple[int, int, int, int]] = None
    npoint: Optional[str] = None
    through_two_points: Optional[int] = None
    grid: Optional[int] = None
    multipoint: bool = False
    target: Optional[Target] = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        self.degrees = tuple(self.degrees)
        for name in ("one", "two"):
            if getattr(self, name) is not None:
                setattr(self, name, tuple(getattr(self, name)))
        if self.format not in FORMATS:
            raise UsageError(f"--format must be one of {FORMATS}")
        if self.ambient is not None:
            self.target = validate_target(self.ambient, self.degrees)

    def to_json(self) -> str:
        d = asdict(self)
        d.pop("target")
        d["degrees"] = list(self.degrees)
        return json.dumps(d, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "RunConfig":
        return cls(**json.loads(text))

    def to_argv(self) -> List[str]:
        argv = [self.subcommand]
        if self.action:
            argv.append(self.action)
        if self.ambient is not None:
            argv += ["--ambient", str(self.ambient)]
        if self.degrees:
            argv += ["--degrees", ",".join(map(str, self.degrees))]
        for flag, value in (("--max-degree", self.max_degree), ("--max-points", self.max_points),
                            ("--cache", self.cache), ("--through-two-points", self.through_two_points),
                            ("--grid", self.grid), ("--npoint", self.npoint)):
            if value is not None:
                argv += [flag, str(value)]
        if self.one is not None:
            argv += ["--one", *map(str, self.one)]
        if self.two is not None:
            argv += ["--two", *map(str, self.two)]
        if self.multipoint:
            argv.append("--multipoint")
        argv += ["--format", self.format]
        return argv


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--ambient", type=int, help="dimension n of the ambient P^n")
    common.add_argument("--degrees", help="hypersurface degrees l1,l2,... (empty: P^n itself)")
    common.add_argument("--max-degree", type=int, help="largest curve degree to compute")
    common.add_argument("--max-points", type=int, help="largest number of marked points")
    common.add_argument("--format", choices=FORMATS, default="human")
    common.add_argument("--cache", help="path of a table cache (JSON)")

    parser = argparse.ArgumentParser(
        prog="gwci", description="Genus-zero Gromov-Witten invariants of Fano complete intersections")
    sub = parser.add_subparsers(dest="subcommand", required=True)
    sub.add_parser("qh", parents=[common], help="small quantum product table")
    inv = sub.add_parser("invariant", parents=[common], help="one invariant")
    g = inv.add_mutually_exclusive_group(required=True)
    g.add_argument("--one", nargs=3, type=int, metavar=("A", "C", "D"), help="<H^a psi^c>_d")
    g.add_argument("--two", nargs=4, type=int, metavar=("A", "B", "K", "D"), help="<H^a, H^b psi^k>_d")
    g.add_argument("--npoint", nargs="+", metavar='"A1:K1,A2:K2,... D"', help="<H^a1 psi^k1, ...>_d")
    cnt = sub.add_parser("count", parents=[common], help="enumerative counts")
    cnt.add_argument("--through-two-points", type=int, required=True, metavar="D",
                     help="degree-D rational curves through two general points")
    ver = sub.add_parser("verify", parents=[common], help="run the exact verification suites")
    ver.add_argument("--grid", type=int, metavar="N",
                     help="every supported target with ambient dimension <= N")
    ver.add_argument("--multipoint", action="store_true", help="include the multipoint oracle")
    cch = sub.add_parser("cache", parents=[common], help="export or import tables")
    cch.add_argument("action", choices=("export", "import"))
    return parser


def config_from_args(argv: Sequence[str]) -> RunConfig:
    ns = build_parser().parse_args(list(argv))
    return RunConfig(
        subcommand=ns.subcommand,
        ambient=ns.ambient,
        degrees=parse_degrees(ns.degrees),
        max_degree=ns.max_degree,
        max_points=ns.max_points,
        format=ns.format,
        cache=ns.cache,
        action=getattr(ns, "action", None),
        one=getattr(ns, "one", None),
        two=getattr(ns, "two", None),
        npoint=" ".join(ns.npoint) if getattr(ns, "npoint", None) else None,
        through_two_points=getattr(ns, "through_two_points", None),
        grid=getattr(ns, "grid", None),
        multipoint=getattr(ns, "multipoint", False),
    )


# --- table acquisition ---------------------------------------------------------


class Session:
    """Tables for one target, optionally loaded from a cache file."""

    def __init__(self, config: RunConfig, validate: bool = True):
        self.config = config
        X = config.target
        self.store: Optional[InvariantStore] = None
        if config.cache and Path(config.cache).exists() and config.subcommand != "cache":
            doc = cache_io.loads_document(Path(config.cache).read_text())
            self.one, self.table, self.store = cache_io.import_tables(doc, X, validate=validate)
        else:
            self.one = OnePointTable(X)
            self.table = TwoPointTable(X, self.one)
        if self.store is None:
            self.store = InvariantStore(X, max_points=config.max_points or 4, one=self.one)
        else:
            self.store.max_points = config.max_points or max(self.store.max_points, 4)
        self.store.max_degree = config.max_degree

    @property
    def target(self) -> Target:
        return self.config.target


def _require_target(config: RunConfig) -> Target:
    if config.target is None:
        raise UsageError("--ambient is required")
    return config.target


def _emit_value(config: RunConfig, out: TextIO, value: Fraction, kind: str, key: dict,
                note: Optional[str] = None):
    if config.format == "machine":
        doc = {"convention_version": cache_io.CONVENTION_VERSION,
               "target": config.target.fingerprint(), "invariant": kind, "key": key,
               "value": format_fraction(value)}
        if note:
            doc["note"] = note
        out.write(json.dumps(doc, sort_keys=True) + "\n")
    else:
        out.write(f"{value}\n")
        if note:
            sys.stderr.write(f"note: {note}\n")


def _check_degree(config: RunConfig, d: int):
    if config.max_degree is not None and d > config.max_degree:
        raise BoundsError(f"degree {d} exceeds --max-degree {config.max_degree}")
    if d < 0:
        raise UsageError("curve degree must be non-negative")


# --- subcommands -----------------------------------------------------------------


def run_qh(config: RunConfig, out: TextIO) -> int:
    _require_target(config)
    ring = QuantumRing(config.target, Session(config).table)
    if config.format == "machine":
        doc = table_document(ring)
        doc["convention_version"] = cache_io.CONVENTION_VERSION
        out.write(json.dumps(doc, indent=1, sort_keys=True) + "\n")
    else:
        out.write(render_table(ring) + "\n")
    return 0


def run_invariant(config: RunConfig, out: TextIO) -> int:
    X = _require_target(config)
    s = Session(config)
    r = X.r
    if config.one is not None:
        i, c, d = config.one
        _check_degree(config, d)
        if d < 1:
            raise UsageError("one-point invariants need d >= 1")
        if i < 0 or c < 0:
            raise UsageError("indices must be non-negative")
        note = None
        if i > r:
            note = f"H^{i} vanishes on a target of dimension {r}"
            value = Fraction(0)
        elif c != d * X.f + r - i - 2:
            note = f"dimension filter: needs c = d f + r - i - 2 = {d * X.f + r - i - 2}"
            value = Fraction(0)
        else:
            value = s.one.one_point(i, c, d)
        _emit_value(config, out, value, "one", {"a": i, "c": c, "d": d}, note)
        return 0
    if config.two is not None:
        a, b, k, d = config.two
        _check_degree(config, d)
        if min(a, b, k) < 0:
            raise UsageError("indices must be non-negative")
        note = None
        if a > r or b > r:
            note = f"H^{max(a, b)} vanishes on a target of dimension {r}"
            value = Fraction(0)
        elif d == 0:
            note = "degree-zero two-point spaces are unstable; the invariant is taken as 0"
            value = Fraction(0)
        elif k != psi_index(X, a, b, d):
            note = f"dimension filter: needs k = r + d f - 1 - a - b = {psi_index(X, a, b, d)}"
            value = Fraction(0)
        else:
            value = s.table.value(a, b, k, d)
        _emit_value(config, out, value, "two", {"a": a, "b": b, "k": k, "d": d}, note)
        return 0
    pairs, d = parse_npoint(config.npoint)
    _check_degree(config, d)
    note = None
    p = len(pairs)
    if any(a > r for a, _ in pairs):
        note = f"a class above H^{r} vanishes on this target"
    elif sum(a + k for a, k in pairs) != expected_dimension(X, d, p):
        note = f"dimension filter: needs sum(a_i + k_i) = {expected_dimension(X, d, p)}"
    value = s.store.npoint(pairs, d)
    _emit_value(config, out, value, "npoint",
                {"points": [list(x) for x in pairs], "d": d}, note)
    return 0


def run_count(config: RunConfig, out: TextIO) -> int:
    X = _require_target(config)
    d = config.through_two_points
    _check_degree(config, d)
    value = two_point_count(X, d, Session(config).table)
    _emit_value(config, out, value, "count", {"through_two_points": d})
    return 0


def _print_report(config: RunConfig, out: TextIO, rep: Report, label: str, seconds: float):
    if config.format == "machine":
        doc = {"target": label, "ok": rep.ok, "counts": rep.counts, "seconds": round(seconds, 3),
               "failures": [c.describe() for c in rep.failures[:20]]}
        out.write(json.dumps(doc, sort_keys=True) + "\n")
        return
    total = sum(rep.counts.values())
    out.write(f"{label}: {'PASS' if rep.ok else 'FAIL'} {total - len(rep.failures)}/{total} "
              f"checks ({seconds:.2f}s)\n")
    for name in sorted(rep.counts):
        bad = sum(1 for c in rep.failures if c.name == name)
        out.write(f"  {name}: {rep.counts[name] - bad}/{rep.counts[name]}\n")
    seen = set()
    for c in rep.failures:
        if c.name not in seen:
            seen.add(c.name)
            out.write(f"  first counterexample: {c.describe()}\n")


def run_verify(config: RunConfig, out: TextIO) -> int:
    if config.grid is not None:
        targets = fano_grid(config.grid)
    else:
        targets = [_require_target(config)]
    ok = True
    for X in targets:
        t0 = time.perf_counter()
        if config.grid is None:
            s = Session(config, validate=False)
            table = s.table
            rep = cache_io.one_point_report(X, s.one) if config.cache else Report()
            rep.merge(full_suite(X, table, multipoint=False, max_degree=config.max_degree))
            if config.multipoint:
                rep.merge(multipoint_suite(X, table, s.store, config.max_degree))
        else:
            rep = full_suite(X, TwoPointTable(X), multipoint=config.multipoint)
        ok &= rep.ok
        _print_report(config, out, rep, str(X), time.perf_counter() - t0)
    return 0 if ok else 1


def run_cache(config: RunConfig, out: TextIO) -> int:
    X = _require_target(config)
    if not config.cache:
        raise UsageError("cache subcommands need --cache <path>")
    path = Path(config.cache)
    if config.action == "export":
        one = OnePointTable(X)
        table = TwoPointTable(X, one)
        D = X.d_max if config.max_degree is None else config.max_degree
        table.fill(D)
        one.fill(D)
        store = InvariantStore(X, max_points=config.max_points or 3, one=one)
        for p in range(2, store.max_points + 1):
            for d in range(1, D + 1):
                store.fill(p, d)
        path.write_text(cache_io.dumps(cache_io.export_tables(X, one, table, store)))
        out.write(f"wrote {path}: {len(table.values)} two-point and "
                  f"{len(store.values)} multipoint values\n")
        return 0
    doc = cache_io.loads_document(path.read_text())
    one, table, store = cache_io.import_tables(doc, X, validate=True)
    out.write(f"{path}: valid cache for {X} ({len(table.values)} two-point, "
              f"{len(store.values) if store else 0} multipoint values)\n")
    return 0


COMMANDS = {"qh": run_qh, "invariant": run_invariant, "count": run_count,
            "verify": run_verify, "cache": run_cache}


def main(argv: Optional[Sequence[str]] = None, out: Optional[TextIO] = None) -> int:
    out = out or sys.stdout
    try:
        config = config_from_args(sys.argv[1:] if argv is None else argv)
        return COMMANDS[config.subcommand](config, out)
    except (TargetError, UsageError, BoundsError, UnstableError, DimensionConditionError,
            cache_io.CacheError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except OSError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
