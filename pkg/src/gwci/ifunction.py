"""
Targets and their one-point descendant invariants.

For a Fano complete intersection of index at least two the one-point
generating function is the closed-form hypergeometric series

    I_d(t) = prod_i prod_{k=1}^{d l_i} (l_i H + k t) / prod_{k=1}^{d} (H + k t)^{n+1},

truncated at ``H^{r+1} = 0``.  The coefficient of ``H^j`` is a single power
``t^{-(d f + j)}``; those coefficients form the vector ``v(d)``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb, prod
from typing import Dict, List, Tuple

from .algebra import Laurent


class TargetError(ValueError):
    """The requested target is outside what this package computes."""


class UnsupportedIndexError(TargetError):
    pass


class UnsupportedDimensionError(TargetError):
    pass


@dataclass(frozen=True)
class Target:
    """
    A complete intersection of hypersurfaces of degrees ``degrees`` in ``P^n``.

    An empty ``degrees`` tuple means projective space itself.

    >>> X = Target(6, (5,))
    >>> X.r, X.f, X.L, X.d_max
    (5, 2, 5, 3)
    """

    n: int
    degrees: Tuple[int, ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "degrees", tuple(int(l) for l in self.degrees))
        if self.n < 1:
            raise UnsupportedDimensionError(f"ambient dimension must be >= 1, got {self.n}")
        if any(l < 1 for l in self.degrees):
            raise TargetError(f"hypersurface degrees must be positive, got {self.degrees}")

    @property
    def m(self) -> int:
        return len(self.degrees)

    @property
    def r(self) -> int:
        return self.n - self.m

    @property
    def f(self) -> int:
        return self.n + 1 - sum(self.degrees)

    @property
    def L(self) -> int:
        return prod(self.degrees)

    @property
    def d_max(self) -> int:
        return (self.r + 1) // self.f

    def fingerprint(self) -> dict:
        return {"ambient": self.n, "degrees": list(self.degrees)}

    def __str__(self):
        if not self.degrees:
            return f"P^{self.n}"
        return f"X_{{{','.join(map(str, self.degrees))}}} in P^{self.n}"


def validate_target(n: int, degrees=()) -> Target:
    """Build a :class:`Target`, rejecting anything outside index >= 2."""
    X = Target(int(n), tuple(degrees))
    if X.f <= 1:
        raise UnsupportedIndexError(
            f"{X} has Fano index {X.f}; only index >= 2 is supported "
            "(index <= 1 needs a mirror transformation)")
    if X.m >= 1 and X.r < 3:
        raise UnsupportedDimensionError(
            f"{X} has dimension {X.r}; complete intersections need dimension >= 3")
    if X.m == 0 and X.r < 2:
        raise UnsupportedDimensionError(f"projective space needs n >= 2, got n={X.n}")
    return X


def _truncate(p: Laurent, r: int) -> Laurent:
    return p.select(lambda e: e[0] <= r)


def _inverse_power(k: int, power: int, r: int) -> Laurent:
    # (H + k t)^{-power} = sum_i C(-power, i) H^i (k t)^{-power-i}, i <= r
    terms = {}
    for i in range(r + 1):
        terms[(i, -power - i)] = Fraction((-1) ** i * comb(power + i - 1, i), k ** (power + i))
    return Laurent(2, terms)


def i_function_series(target: Target, d: int) -> Laurent:
    """Full bivariate expansion of ``I_d`` in variables ``(H, t)``."""
    if d <= 0:
        raise ValueError(f"I-function coefficient needs d >= 1, got {d}")
    r = target.r
    series = Laurent.constant(2)
    for l in target.degrees:
        for k in range(1, d * l + 1):
            series = _truncate(series * Laurent(2, {(1, 0): l, (0, 1): k}), r)
    for k in range(1, d + 1):
        series = _truncate(series * _inverse_power(k, target.n + 1, r), r)
    return series


@lru_cache(maxsize=None)
def _vector(target: Target, d: int) -> Tuple[Fraction, ...]:
    series = i_function_series(target, d)
    df = d * target.f
    for (j, s), c in series.items():
        if s != -(df + j):
            raise AssertionError(
                f"I-function of {target} in degree {d} is not homogeneous: "
                f"H^{j} t^{s} has coefficient {c}")
    return tuple(series.coeff((j, -(df + j))) for j in range(target.r + 1))


def i_function_vector(target: Target, d: int) -> List[Fraction]:
    """
    The vector ``v(d)`` of one-point invariants.

    >>> i_function_vector(Target(4), 1)
    [Fraction(1, 1), Fraction(-5, 1), Fraction(15, 1), Fraction(-35, 1), Fraction(70, 1)]
    """
    if d <= 0:
        raise ValueError(f"v(d) needs d >= 1, got {d}")
    return list(_vector(target, d))


def one_point(target: Target, i: int, c: int, d: int) -> Fraction:
    """``<H^i psi^c>_d``; zero unless ``i + c = r + d f - 2``."""
    if d <= 0:
        raise ValueError("one-point invariants need d >= 1")
    if i < 0 or c < 0:
        raise ValueError(f"negative index in one_point(i={i}, c={c})")
    if i > target.r:
        return Fraction(0)
    if c != d * target.f + (target.r - i) - 2:
        return Fraction(0)
    return target.L * _vector(target, d)[target.r - i]


class OnePointTable:
    """Lazily filled map ``d -> v(d)`` for one target."""

    def __init__(self, target: Target, values: Dict[int, List[Fraction]] | None = None):
        self.target = target
        self._v: Dict[int, Tuple[Fraction, ...]] = {}
        for d, vec in (values or {}).items():
            if len(vec) != target.r + 1:
                raise ValueError(f"v({d}) must have {target.r + 1} entries")
            self._v[int(d)] = tuple(Fraction(x) for x in vec)

    def v(self, d: int) -> Tuple[Fraction, ...]:
        if d not in self._v:
            self._v[d] = tuple(i_function_vector(self.target, d))
        return self._v[d]

    def fill(self, max_degree: int) -> "OnePointTable":
        for d in range(1, max_degree + 1):
            self.v(d)
        return self

    def degrees(self):
        return sorted(self._v)

    def one_point(self, i: int, c: int, d: int) -> Fraction:
        X = self.target
        if d <= 0:
            raise ValueError("one-point invariants need d >= 1")
        if i > X.r or c != d * X.f + (X.r - i) - 2:
            return Fraction(0)
        return X.L * self.v(d)[X.r - i]
