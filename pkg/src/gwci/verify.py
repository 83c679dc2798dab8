"""Verification suites over one target or a grid of targets."""
from __future__ import annotations

from typing import Iterator, List, Optional

from .ifunction import Target, TargetError, validate_target
from .multipoint import InvariantStore
from .quantum import QuantumRing, algebra_suite
from .report import Check, Report
from .twopoint import TwoPointTable, equivalence_suite, identity_suite, polynomiality_witness, table_for


def fano_grid(max_ambient: int = 8) -> List[Target]:
    """
    Complete intersections ``l_i >= 2`` with ``n <= max_ambient``, index >= 2 and
    dimension >= 3, followed by the projective spaces ``P^2 .. P^max_ambient``.
    """
    out = []

    def degree_lists(budget: int, largest: int, slots: int) -> Iterator[tuple]:
        yield ()
        if slots == 0:
            return
        for l in range(min(largest, budget), 1, -1):
            for rest in degree_lists(budget - l, l, slots - 1):
                yield (l,) + rest

    for n in range(4, max_ambient + 1):
        for degs in degree_lists(n - 1, n - 1, n - 3):
            if degs:
                try:
                    out.append(validate_target(n, degs))
                except TargetError:
                    pass
    out.extend(validate_target(n) for n in range(2, max_ambient + 1))
    return out


def twopoint_suite(target: Target, table: Optional[TwoPointTable] = None,
                   max_degree: Optional[int] = None) -> Report:
    table = table or table_for(target)
    D = target.d_max if max_degree is None else max_degree
    rep = Report()
    for d in range(1, D + 1):
        rep.merge(identity_suite(target, d, table))
        for a in range(target.r + 1):
            for b in range(target.r + 1):
                rep.add(Check("polynomiality", {"target": str(target), "d": d, "a": a, "b": b},
                              polynomiality_witness(a, b, d, table), []))
    rep.merge(equivalence_suite(target, table, D))
    return rep


def multipoint_suite(target: Target, table: Optional[TwoPointTable] = None,
                     store: Optional[InvariantStore] = None,
                     max_degree: Optional[int] = None) -> Report:
    """Two-point oracle equivalence and three-point divisor consistency."""
    table = table or table_for(target)
    store = store or InvariantStore(target, max_points=3, one=table.one)
    D = target.d_max if max_degree is None else max_degree
    r = target.r
    rep = Report()
    for d in range(1, D + 1):
        table.fill(d)
        for a in range(r + 1):
            for b in range(r + 1):
                for k in range(r + d * target.f):
                    rep.add(Check("multipoint m=2 vs two-point",
                                  {"target": str(target), "d": d, "a": a, "b": b, "k": k},
                                  store.npoint([(a, 0), (b, k)], d), table.get(a, b, k, d)))
                rep.add(Check("multipoint m=3 divisor",
                              {"target": str(target), "d": d, "a": a, "b": b},
                              store.npoint([(1, 0), (a, 0), (b, 0)], d),
                              d * table.get(a, b, 0, d)))
    return rep


def full_suite(target: Target, table: Optional[TwoPointTable] = None, multipoint: bool = False,
               max_degree: Optional[int] = None) -> Report:
    table = table or table_for(target)
    rep = twopoint_suite(target, table, max_degree)
    rep.merge(algebra_suite(QuantumRing(target, table)))
    if multipoint:
        rep.merge(multipoint_suite(target, table, max_degree=max_degree))
    return rep
