"""
Mixed two-point invariants ``<H^a, H^b psi^k>_d`` of a complete intersection.

Two independent routes are implemented:

* the Laurent-series route: for every ``(a, b, d)`` the series

      sum_k t^{-(k+1)} <H^a, H^b psi^k>_d  +  tail(a, b, d)

  is a polynomial in ``t``, where the tail is built from one-point invariants
  of degree ``d`` and two-point invariants of lower degree.  Reading off the
  negative powers of ``t`` in the tail gives every invariant of degree ``d``;

* the matrix route: the same recursion written column by column with shift
  matrices ``S(d)`` and the matrices ``M(d)`` of normalized mixed invariants.

The ring index ``c`` of an entry is ``r + d f - 1 - a - b``, the psi-power
forced by the dimension of the two-pointed moduli space.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .algebra import Laurent, binomial_expansion
from .ifunction import OnePointTable, Target
from .report import Check, Report


class IncompleteTableError(RuntimeError):
    pass


class CalibrationError(RuntimeError):
    pass


def psi_index(target: Target, a: int, b: int, d: int) -> int:
    """The only psi-power ``k`` for which ``<H^a, H^b psi^k>_d`` can be nonzero."""
    return target.r + d * target.f - 1 - a - b


def descendant_package(target: Target, i: int, e: int, sign: int = -1,
                       one: Optional[OnePointTable] = None) -> Laurent:
    """
    ``sum_c sign^c t^{-(c+2)} <H^i psi^c>_e`` as a Laurent polynomial in ``t``.

    ``sign=-1`` is the one-point package evaluated at ``-t``.
    """
    if e <= 0:
        raise ValueError(f"one-point package needs degree >= 1, got {e}")
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    if i > target.r:
        return Laurent(1)
    one = one or OnePointTable(target)
    c = e * target.f + (target.r - i) - 2
    if c < 0:
        return Laurent(1)
    return Laurent(1, {(-(c + 2),): sign ** c * one.one_point(i, c, e)})


class TwoPointTable:
    """
    Memoized ``(d, a, b, k) -> <H^a, H^b psi^k>_d`` for ``d >= 1``.

    Degrees are filled in ascending order; only dimension-allowed entries are
    stored, everything else reads as zero.
    """

    def __init__(self, target: Target, one: Optional[OnePointTable] = None):
        self.target = target
        self.one = one or OnePointTable(target)
        self.values: Dict[Tuple[int, int, int, int], Fraction] = {}
        self.filled: set = set()

    def _range(self, a, b, k, d):
        r = self.target.r
        if not (0 <= a <= r and 0 <= b <= r) or k < 0 or d < 0:
            raise ValueError(f"index out of range: a={a}, b={b}, k={k}, d={d} (r={r})")

    def get(self, a: int, b: int, k: int, d: int) -> Fraction:
        """Read a stored value; the degree must already be filled."""
        if d == 0:
            return Fraction(0)
        if d not in self.filled:
            raise IncompleteTableError(f"degree {d} of the two-point table is not filled")
        return self.values.get((d, a, b, k), Fraction(0))

    def value(self, a: int, b: int, k: int, d: int) -> Fraction:
        self._range(a, b, k, d)
        if d == 0:
            return Fraction(0)
        self.fill(d)
        return self.values.get((d, a, b, k), Fraction(0))

    def fill(self, max_degree: int) -> "TwoPointTable":
        for d in range(1, max_degree + 1):
            if d not in self.filled:
                self._fill_degree(d)
        return self

    def _fill_degree(self, d: int):
        X = self.target
        for a in range(X.r + 1):
            for b in range(X.r + 1):
                tail = formula_one_tail(a, b, d, self)
                k_allowed = psi_index(X, a, b, d)
                for (s,), coeff in tail.items():
                    if s >= 0:
                        continue
                    k = -s - 1
                    if k != k_allowed:
                        raise AssertionError(
                            f"grading violated for {X}: tail({a},{b},{d}) has t^{s}")
                    self.values[(d, a, b, k)] = -coeff
        self.filled.add(d)

    def unmixed(self, a: int, b: int, d: int) -> Fraction:
        return self.value(a, b, 0, d)

    def mixed_package(self, a: int, c: int, d: int) -> Laurent:
        """``sum_k t^{-(k+1)} <H^a, H^c psi^k>_d`` from stored lower-degree data."""
        if d not in self.filled:
            raise IncompleteTableError(
                f"the tail in degree > {d} needs degree {d} of the two-point table")
        k = psi_index(self.target, a, c, d)
        if k < 0 or c > self.target.r:
            return Laurent(1)
        return Laurent(1, {(-(k + 1),): self.values.get((d, a, c, k), Fraction(0))})


def formula_one_tail(a: int, b: int, d: int, table: TwoPointTable) -> Laurent:
    """
    Everything in the polynomiality statement except the unknown two-point package:

        sum_j C(b,j) (-d t)^{b-j} A^d_{a+j}(t)
        + sum_{e<d} sum_c (1/L) B^{d-e}_{a,c}(t) sum_j C(b,j) (-e t)^{b-j} A^e_{r-c+j}(t)

    where ``A`` is the one-point package at ``-t`` and ``B`` the stored mixed package.
    """
    X = table.target
    if not (0 <= a <= X.r and 0 <= b <= X.r):
        raise ValueError(f"a, b must lie in [0, {X.r}]")
    if d < 1:
        raise ValueError("the tail is only defined for d >= 1")
    one = table.one
    total = Laurent(1)
    for j, tp, coeff in binomial_expansion(d, b):
        total = total + descendant_package(X, a + j, d, -1, one).shift((tp,)).scale(coeff)
    inv_L = Fraction(1, X.L)
    for e in range(1, d):
        for c in range(X.r + 1):
            B = table.mixed_package(a, c, d - e)
            if not B:
                continue
            inner = Laurent(1)
            for j, tp, coeff in binomial_expansion(e, b):
                inner = inner + descendant_package(X, X.r - c + j, e, -1, one).shift((tp,)).scale(coeff)
            total = total + (B * inner).scale(inv_L)
    return total


def polynomiality_witness(a: int, b: int, d: int, table: TwoPointTable) -> List[int]:
    """Negative ``t``-exponents where ``package + tail`` fails to cancel (empty when sound)."""
    series = Laurent(1)
    for (dd, aa, bb, k), v in table.values.items():
        if (dd, aa, bb) == (d, a, b):
            series = series + Laurent(1, {(-(k + 1),): v})
    total = series + formula_one_tail(a, b, d, table)
    return sorted(s for (s,) in total.support() if s < 0)


_TABLES: Dict[Target, TwoPointTable] = {}


def table_for(target: Target) -> TwoPointTable:
    if target not in _TABLES:
        _TABLES[target] = TwoPointTable(target)
    return _TABLES[target]


def two_point(target: Target, a: int, b: int, k: int, d: int) -> Fraction:
    """
    ``<H^a, H^b psi^k>_d`` for a Fano complete intersection.

    Degree zero is not a stable-map space and reads as 0 here; classical
    pairings are the quantum module's business.
    """
    return table_for(target).value(a, b, k, d)


# --- matrix route ---------------------------------------------------------


def shift_matrix(target: Target, d: int) -> List[List[int]]:
    """Multiplication by ``H + d t`` on coefficient vectors: ``d`` on the diagonal, 1 below."""
    if d < 1:
        raise ValueError("shift matrices are indexed by d >= 1")
    n = target.r + 1
    return [[d if i == j else (1 if i == j + 1 else 0) for j in range(n)] for i in range(n)]


def _matvec(M, v):
    return [sum((M[i][j] * v[j] for j in range(len(v)) if M[i][j]), Fraction(0))
            for i in range(len(M))]


@dataclass
class MixedMatrix:
    """``M(d)``: row ``r - a``, column ``b``; ``mask[i][j]`` marks dimension-forbidden cells."""

    d: int
    entries: List[List[Fraction]]
    mask: List[List[bool]]

    def entry(self, a: int, b: int) -> Fraction:
        r = len(self.entries) - 1
        return self.entries[r - a][b]


def mixed_matrix(target: Target, d: int, lower: List[MixedMatrix],
                 one: Optional[OnePointTable] = None) -> MixedMatrix:
    """
    Column recursion ``M(d)[:, b] = -S(d)^b v(d) - sum_{e<d} M(d-e) S(e)^b v(e)``
    followed by zeroing every cell whose psi-index is negative.
    """
    if d < 1:
        raise ValueError("d >= 1 required")
    if len(lower) < d - 1 or any(lower[i].d != i + 1 for i in range(d - 1)):
        raise IncompleteTableError(f"M({d}) needs M(1), ..., M({d - 1})")
    one = one or OnePointTable(target)
    r = target.r
    n = r + 1
    cols = []
    shifted = {e: list(one.v(e)) for e in range(1, d + 1)}
    S = {e: shift_matrix(target, e) for e in range(1, d + 1)}
    for b in range(n):
        col = [-x for x in shifted[d]]
        for e in range(1, d):
            w = _matvec(lower[d - e - 1].entries, shifted[e])
            col = [x - y for x, y in zip(col, w)]
        cols.append(col)
        shifted = {e: _matvec(S[e], shifted[e]) for e in shifted}
    entries = [[cols[b][row] for b in range(n)] for row in range(n)]
    mask = [[False] * n for _ in range(n)]
    for row in range(n):
        a = r - row
        for b in range(n):
            if psi_index(target, a, b, d) < 0:
                mask[row][b] = True
                entries[row][b] = Fraction(0)
    return MixedMatrix(d, entries, mask)


def mixed_matrices(target: Target, max_degree: int,
                   one: Optional[OnePointTable] = None) -> List[MixedMatrix]:
    one = one or OnePointTable(target)
    out: List[MixedMatrix] = []
    for d in range(1, max_degree + 1):
        out.append(mixed_matrix(target, d, out, one))
    return out


@dataclass
class Calibration:
    """
    Frozen map from matrix cells to invariants: ``value = sign0 * (-1)^c * L * M``.

    ``readings`` records, for each candidate psi-index convention, whether a
    single global sign fits all degree-one cells.
    """

    sign0: int
    readings: Dict[str, Optional[int]] = field(default_factory=dict)

    def value(self, target: Target, M: MixedMatrix, a: int, b: int) -> Fraction:
        c = psi_index(target, a, b, M.d)
        if c < 0:
            return Fraction(0)
        return self.sign0 * (-1) ** c * target.L * M.entry(a, b)


def _fit_sign(target, M1, table, offset):
    sign = None
    for a in range(target.r + 1):
        for b in range(target.r + 1):
            c = psi_index(target, a, b, 1) + offset
            k = psi_index(target, a, b, 1)
            if k < 0:
                continue
            m = M1.entry(a, b)
            v = table.value(a, b, k, 1)
            if m == 0 and v == 0:
                continue
            if m == 0 or v == 0:
                return None
            ratio = v / (target.L * m * (-1) ** c)
            if ratio not in (1, -1):
                return None
            if sign is None:
                sign = int(ratio)
            elif sign != ratio:
                return None
    return sign if sign is not None else 1


def calibrate(target: Target, table: TwoPointTable,
              M1: Optional[MixedMatrix] = None) -> Calibration:
    """Fix the matrix-to-invariant sign at degree one against the Laurent route."""
    M1 = M1 or mixed_matrix(target, 1, [], table.one)
    readings = {
        "dimension": _fit_sign(target, M1, table, 0),
        "printed": _fit_sign(target, M1, table, 1),
    }
    s = readings["dimension"]
    if s is None:
        raise CalibrationError(f"no global sign maps M(1) of {target} onto the two-point table")
    return Calibration(s, readings)


#: The sign fitted by :func:`calibrate` on every supported target, frozen so the
#: matrix route stays independent of the table it is compared with.
FROZEN_CALIBRATION = Calibration(-1, {"dimension": -1})


def matrix_two_point(target: Target, max_degree: Optional[int] = None,
                     table: Optional[TwoPointTable] = None,
                     calibration: Optional[Calibration] = None):
    """
    Unmixed and mixed invariants read off the matrices ``M(1..D)``.

    Returns ``(values, calibration)`` with ``values[(d, a, b, k)]`` for the
    dimension-allowed ``k``.  Without an explicit ``calibration`` the frozen
    convention is used.
    """
    table = table or table_for(target)
    D = target.d_max if max_degree is None else max_degree
    Ms = mixed_matrices(target, D, table.one)
    cal = calibration or FROZEN_CALIBRATION
    values = {}
    for M in Ms:
        for a in range(target.r + 1):
            for b in range(target.r + 1):
                k = psi_index(target, a, b, M.d)
                if k >= 0:
                    v = cal.value(target, M, a, b)
                    if v:
                        values[(M.d, a, b, k)] = v
    return values, cal


# --- identities ------------------------------------------------------------


def identity_suite(target: Target, d: int, table: Optional[TwoPointTable] = None) -> Report:
    """
    String, dilaton, divisor and the three codimension-two identities in degree
    ``d``, plus symmetry and the dimension filter of the stored values.
    """
    table = table or table_for(target)
    table.fill(d)
    X, r, L = target, target.r, target.L
    one = table.one
    rep = Report()

    def pt(i, c, e):
        return one.one_point(i, c, e) if i <= r else Fraction(0)

    def tp(a, b, k, e):
        return table.get(a, b, k, e)

    for a in range(r + 1):
        idx = {"target": str(X), "d": d, "a": a}
        rep.add(Check("string", idx, tp(a, 0, 0, d), Fraction(0)))
        rep.add(Check("dilaton", idx, tp(a, 0, 1, d), -pt(a, 0, d)))
        if r >= 1:
            rep.add(Check("divisor", idx, tp(a, 1, 0, d), d * pt(a, 0, d)))

        def conv(weight):
            s = Fraction(0)
            for e in range(1, d):
                for c in range(r + 1):
                    s += weight(e) * tp(a, c, 0, d - e) * pt(r - c, 0, e)
            return s / L

        rep.add(Check("codim2 psi^2", idx, tp(a, 0, 2, d),
                      pt(a, 1, d) - conv(lambda e: 1)))
        if r >= 1:
            rep.add(Check("codim2 H psi", idx, tp(a, 1, 1, d),
                          -pt(a + 1, 0, d) - d * pt(a, 1, d) + conv(lambda e: e)))
        if r >= 2:
            rep.add(Check("codim2 H^2", idx, tp(a, 2, 0, d),
                          2 * d * pt(a + 1, 0, d) + d * d * pt(a, 1, d) - conv(lambda e: e * e)))
        for b in range(r + 1):
            rep.add(Check("symmetry", dict(idx, b=b), tp(a, b, 0, d), tp(b, a, 0, d)))

    for (dd, a, b, k), v in table.values.items():
        if dd == d and v:
            rep.add(Check("grading", {"target": str(X), "d": d, "a": a, "b": b, "k": k},
                          Fraction(a + b + k), Fraction(r + d * X.f - 1)))
    return rep


def equivalence_suite(target: Target, table: Optional[TwoPointTable] = None,
                      max_degree: Optional[int] = None) -> Report:
    """Matrix route against the Laurent route, cell by cell, up to ``max_degree``."""
    table = table or table_for(target)
    D = target.d_max if max_degree is None else max_degree
    rep = Report()
    if D < 1:
        return rep
    table.fill(D)
    values, cal = matrix_two_point(target, D, table)
    fitted = _fit_sign(target, mixed_matrix(target, 1, [], table.one), table, 0)
    rep.add(Check("calibration", {"target": str(target)}, fitted, cal.sign0))
    keys = set(values) | {key for key in table.values if key[0] <= D}
    for key in sorted(keys):
        d, a, b, k = key
        rep.add(Check("matrix vs formula", {"target": str(target), "d": d, "a": a, "b": b, "k": k},
                      values.get(key, Fraction(0)), table.get(a, b, k, d)))
    return rep
