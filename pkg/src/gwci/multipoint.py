"""
Many-point descendant invariants with insertions from powers of ``H``.

For ``m >= 1`` marked points carrying ``H^{a_1}, ..., H^{a_m}`` and a further
point carrying ``H^b``, the expression

    t (t_1 + t) ( sum_{1 in S} sum_{e=0}^{d} J_{d-e}(t_S, t) (x)_{(H - e t)^b} J_e(-t, t_{S^c})
                  + sum_{j >= 2} J_d(t_{j^}, t_j) (x)_{H^b} J_0(-t_j, t) )

is polynomial in ``t``.  The summand with ``S = [m]`` and ``e = 0`` is the only
one containing ``(m+1)``-point invariants of degree ``d``; it equals
``(t_1 + t) sum_k t^{-(k+1)} U_k`` with ``U_k`` the generating function of
``<H^{a_1} psi^{k_1}, ..., H^{a_m} psi^{k_m}, H^b psi^k>_d`` in the ``t_i``.
Matching the coefficient of each negative power of ``t`` against the other
summands determines ``U_k`` by downward induction on ``k``.

All rational functions are expanded as series in ``t`` with coefficients
Laurent in the ``t_i`` (the region ``|t| < |t_j|``).  In that region the
``j``-sum only contributes non-negative powers of ``t`` and is never needed.

Laurent polynomials here use ``m + 1`` variables: ``t_1, ..., t_m`` then ``t``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import factorial, prod
from typing import Dict, Iterator, Optional, Sequence, Tuple

from .algebra import Laurent, binomial_expansion
from .ifunction import OnePointTable, Target

Pair = Tuple[int, int]
Key = Tuple[int, Tuple[Pair, ...]]


class BoundsError(ValueError):
    pass


class UnstableError(ValueError):
    """Degree-zero moduli with fewer than three points do not exist."""


class InconsistentSystemError(RuntimeError):
    pass


def canonical(pairs: Sequence[Pair]) -> Tuple[Pair, ...]:
    return tuple(sorted((int(a), int(k)) for a, k in pairs))


def expected_dimension(target: Target, d: int, points: int) -> int:
    return target.r + d * target.f + points - 3


def _compositions(total: int, parts: int) -> Iterator[Tuple[int, ...]]:
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


@lru_cache(maxsize=None)
def _compositions_cached(total: int, parts: int) -> Tuple[Tuple[int, ...], ...]:
    return tuple(_compositions(total, parts))


@dataclass(frozen=True)
class Slot:
    """A marked point inside a generating function: class ``H^a`` at variable ``sign * x_var``."""

    a: int
    var: int
    sign: int = 1


class InvariantStore:
    """
    Memoized ``<H^{a_1} psi^{k_1}, ..., H^{a_p} psi^{k_p}>_d``.

    Values are filled on demand in the order (points, degree); each fill
    solves every key sharing one multiset of ``H``-powers at once.

    >>> from gwci.ifunction import validate_target
    >>> S = InvariantStore(validate_target(3))
    >>> S.npoint([(2, 0)] * 4, 1)  # lines meeting four general lines in P^3
    Fraction(2, 1)
    """

    def __init__(self, target: Target, max_points: int = 4, max_degree: Optional[int] = None,
                 one: Optional[OnePointTable] = None):
        self.target = target
        self.max_points = max_points
        self.max_degree = max_degree
        self.one = one or OnePointTable(target)
        self.values: Dict[Key, Fraction] = {}
        self._solved: set = set()
        self._packages: Dict[tuple, Laurent] = {}
        self.witnesses = 0

    # -- public surface -----------------------------------------------------

    def npoint(self, pairs: Sequence[Pair], d: int) -> Fraction:
        pairs = canonical(pairs)
        p = len(pairs)
        if p < 1:
            raise BoundsError("at least one marked point is required")
        if p > self.max_points:
            raise BoundsError(f"{p} marked points exceeds the configured maximum {self.max_points}")
        if self.max_degree is not None and d > self.max_degree:
            raise BoundsError(f"degree {d} exceeds the configured maximum {self.max_degree}")
        if d < 0 or any(a < 0 or k < 0 for a, k in pairs):
            raise ValueError(f"negative index in {pairs}, d={d}")
        return self._value(pairs, d)

    def fill(self, points: int, d: int):
        """Solve every ``H``-power multiset with ``points`` marked points in degree ``d``."""
        r = self.target.r
        for A in _multisets(r, points):
            self._ensure(A, d)

    def keys(self):
        return sorted(self.values)

    # -- values -------------------------------------------------------------

    def _value(self, pairs: Tuple[Pair, ...], d: int) -> Fraction:
        X = self.target
        p = len(pairs)
        if d == 0 and p < 3:
            raise UnstableError(f"no stable maps of degree 0 with {p} marked points")
        if any(a > X.r for a, _ in pairs):
            return Fraction(0)
        if sum(a + k for a, k in pairs) != expected_dimension(X, d, p):
            return Fraction(0)
        if d == 0:
            return degree_zero(X, pairs)
        if p == 1:
            (a, k), = pairs
            return self.one.one_point(a, k, d)
        self._ensure(tuple(sorted(a for a, _ in pairs)), d)
        return self.values.get((d, pairs), Fraction(0))

    def _ensure(self, A: Tuple[int, ...], d: int):
        if (d, A) in self._solved:
            return
        if len(A) > self.max_points:
            raise BoundsError(f"{len(A)} marked points exceeds the configured maximum {self.max_points}")
        solved = solve_tuple(self, list(A[:-1]), A[-1], d)
        for key, v in solved.items():
            if v:
                self.values[(d, key)] = v
        self._solved.add((d, A))

    # -- generating functions ----------------------------------------------

    def package(self, d: int, slots: Tuple[Slot, ...], nvars: int) -> Laurent:
        """
        ``sum_k prod_i (sign_i x_i)^{-(k_i+2)} <H^{a_1} psi^{k_1}, ...>_d`` over allowed ``k``.

        Degree zero with two points is not handled here (it is not a plain
        series); with one point it is the constant ``int H^a``.
        """
        cache_key = (d, slots, nvars)
        hit = self._packages.get(cache_key)
        if hit is not None:
            return hit
        X = self.target
        p = len(slots)
        out = Laurent(nvars)
        if all(s.a <= X.r for s in slots):
            if d == 0 and p == 1:
                out = Laurent.constant(nvars, X.L) if slots[0].a == X.r else out
            elif d == 0 and p == 2:
                raise UnstableError("two-point degree-zero package has no series form here")
            else:
                K = expected_dimension(X, d, p) - sum(s.a for s in slots)
                if K >= 0:
                    terms = {}
                    for ks in _compositions_cached(K, p):
                        pairs = canonical([(s.a, k) for s, k in zip(slots, ks)])
                        v = self._value(pairs, d)
                        if not v:
                            continue
                        exp = [0] * nvars
                        sign = 1
                        for s, k in zip(slots, ks):
                            exp[s.var] = -(k + 2)
                            if s.sign < 0 and k % 2:
                                sign = -sign
                        terms[tuple(exp)] = v * sign
                    out = Laurent(nvars, terms)
        self._packages[cache_key] = out
        return out


def degree_zero(target: Target, pairs: Sequence[Pair]) -> Fraction:
    """``<H^{a_i} psi^{k_i}>_0`` for ``p >= 3`` points: ``L`` times a multinomial."""
    p = len(pairs)
    if p < 3:
        raise UnstableError("degree-zero invariants need at least three points")
    if sum(a for a, _ in pairs) != target.r or sum(k for _, k in pairs) != p - 3:
        return Fraction(0)
    return Fraction(target.L * factorial(p - 3), prod(factorial(k) for _, k in pairs))


def _multisets(r: int, size: int):
    from itertools import combinations_with_replacement
    return combinations_with_replacement(range(r + 1), size)


def _class_slots(store: InvariantStore, base: int, e: int, b: int, var: int,
                 sign: int, nvars: int):
    """``H^{base} (H - e t)^b`` at one slot, as ``(slot, t-power, coefficient)`` triples."""
    for j, tp, coeff in binomial_expansion(e, b):
        if base + j <= store.target.r:
            yield Slot(base + j, var, sign), tp, coeff


def _t_shift(nvars: int, power: int) -> Tuple[int, ...]:
    e = [0] * nvars
    e[-1] = power
    return tuple(e)


def _negative_t(p: Laurent) -> Laurent:
    return p.select(lambda e: e[-1] < 0)


def known_side(store: InvariantStore, insertions: Sequence[int], b: int, d: int) -> Laurent:
    """
    Negative-``t`` part of every summand except the unknown ``S = [m], e = 0`` one,
    after multiplying by ``t (t_1 + t)`` and pairing with ``H^{a_i}`` at ``t_i``.
    """
    X = store.target
    m = len(insertions)
    if m < 1:
        raise ValueError("at least one insertion besides H^b is required")
    if d < 1:
        raise ValueError("the recursion runs in degree >= 1")
    nv = m + 1
    T = m  # index of t
    inv_L = Fraction(1, X.L)
    pref_exp = Laurent(nv, {_t_shift(nv, 2): 1, tuple([1] + [0] * (m - 1) + [1]): 1})
    total = Laurent(nv)
    others = list(range(1, m))
    for size in range(len(others) + 1):
        for rest in combinations(others, size):
            S = (0,) + rest
            Sc = tuple(i for i in others if i not in rest)
            left_slots = tuple(Slot(insertions[i], i) for i in S)
            right_slots = tuple(Slot(insertions[i], i) for i in Sc)
            for e in range(d + 1):
                if len(Sc) == 0 and e == 0:
                    continue
                if e == d and len(S) == 1:
                    total = total + _term_tail_at_first(store, insertions[0], right_slots, b, d, nv)
                    continue
                if e == 0 and len(Sc) == 1:
                    total = total + _term_collapsed_pair(store, left_slots, Sc[0],
                                                         insertions[Sc[0]], b, d, nv)
                    continue
                acc = Laurent(nv)
                for c in range(X.r + 1):
                    right = store.package(e, (Slot(X.r - c, T, -1),) + right_slots, nv)
                    if not right:
                        continue
                    left = Laurent(nv)
                    for slot, tp, coeff in _class_slots(store, c, e, b, T, 1, nv):
                        pk = store.package(d - e, left_slots + (slot,), nv)
                        if pk:
                            left = left + pk.shift(_t_shift(nv, tp)).scale(coeff)
                    if left:
                        acc = acc + left * right
                if acc:
                    total = total + _negative_t(acc.scale(inv_L) * pref_exp)
    return _negative_t(total)


def _term_tail_at_first(store, a1, right_slots, b, d, nv):
    # J_0(t_1, t) = Delta / (t_1 t (t_1 + t)); against the prefactor only 1/t_1 survives
    T = nv - 1
    acc = Laurent(nv)
    for slot, tp, coeff in _class_slots(store, a1, d, b, T, -1, nv):
        pk = store.package(d, (slot,) + right_slots, nv)
        if pk:
            acc = acc + pk.shift(_t_shift(nv, tp)).scale(coeff)
    shift = [0] * nv
    shift[0] = -1
    return _negative_t(acc.shift(tuple(shift)))


def _term_collapsed_pair(store, left_slots, j, aj, b, d, nv):
    # J_0(-t, t_j) = Delta / ((-t) t_j (t_j - t)); with the prefactor this is
    # -(t_1 + t) / (t_j (t_j - t)) times the package with H^{a_j + b} at t
    X = store.target
    T = nv - 1
    if aj + b > X.r:
        return Laurent(nv)
    pk = store.package(d, left_slots + (Slot(aj + b, T, 1),), nv)
    if not pk:
        return Laurent(nv)
    lowest = min(e[-1] for e in pk.support())
    if lowest >= 0:
        return Laurent(nv)
    # 1/(t_j - t) = sum_s t^s t_j^{-(s+1)}; higher s only reach t^{>=0}
    geo = {}
    for s in range(-lowest):
        e = [0] * nv
        e[j] = -(s + 2)
        e[-1] = s
        geo[tuple(e)] = Fraction(-1)
    first = [0] * nv
    first[0] = 1
    factor = Laurent(nv, geo) * Laurent(nv, {tuple(first): 1, _t_shift(nv, 1): 1})
    return _negative_t(pk * factor)


def solve_tuple(store: InvariantStore, insertions: Sequence[int], b: int, d: int
                ) -> Dict[Tuple[Pair, ...], Fraction]:
    """
    All ``<H^{a_1} psi^{k_1}, ..., H^{a_m} psi^{k_m}, H^b psi^k>_d`` for the given
    ordered insertions (the first one is the distinguished point).

    Raises :class:`InconsistentSystemError` if the cancellation of negative
    powers of ``t`` is not achievable; this never happens for sound input.
    """
    X = store.target
    m = len(insertions)
    out: Dict[Tuple[Pair, ...], Fraction] = {}
    if any(a > X.r for a in insertions) or b > X.r:
        return out
    known = known_side(store, insertions, b, d)
    by_power: Dict[int, Dict[Tuple[int, ...], Fraction]] = {}
    for e, c in known.items():
        by_power.setdefault(-e[-1], {})[e[:-1]] = c
    K = expected_dimension(X, d, m + 1) - sum(insertions) - b
    for p in by_power:
        if p > K + 1:
            raise InconsistentSystemError(
                f"t^-{p} survives for insertions {list(insertions)}, b={b}, d={d} on {X}")
    U_next: Dict[Tuple[int, ...], Fraction] = {}
    for p in range(K + 1, 0, -1):
        # coefficient of t^-p in the unknown summand is t_1 U_{p-1} + U_p
        U: Dict[Tuple[int, ...], Fraction] = {}
        rhs = {e: -c for e, c in by_power.get(p, {}).items()}
        for e, c in U_next.items():
            s = rhs.get(e, Fraction(0)) - c
            if s:
                rhs[e] = s
            else:
                rhs.pop(e, None)
        for e, c in rhs.items():
            U[(e[0] - 1,) + e[1:]] = c
        k = p - 1
        for e, c in U.items():
            ks = [-x - 2 for x in e]
            if any(x < 0 for x in ks) or sum(ks) + k != K:
                raise InconsistentSystemError(
                    f"non-geometric term t^{e} at psi-power {k} for insertions "
                    f"{list(insertions)}, b={b}, d={d} on {X}")
            key = canonical([(a, ki) for a, ki in zip(insertions, ks)] + [(b, k)])
            out[key] = c
        U_next = U
    store.witnesses += 1
    return out


_STORES: Dict[Tuple[Target, int], InvariantStore] = {}


def store_for(target: Target, max_points: int = 4) -> InvariantStore:
    key = (target, max_points)
    if key not in _STORES:
        _STORES[key] = InvariantStore(target, max_points)
    return _STORES[key]


def npoint(target: Target, pairs: Sequence[Pair], d: int, max_points: int = 4) -> Fraction:
    return store_for(target, max_points).npoint(pairs, d)


def solve_degree(store: InvariantStore, points: int, d: int) -> int:
    """Fill every ``points``-point key of degree ``d``; returns the number of stored values."""
    store.fill(points, d)
    return sum(1 for (dd, key) in store.values if dd == d and len(key) == points)
